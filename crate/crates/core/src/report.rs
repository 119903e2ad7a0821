//! Serializable report schema shared by the CLI and the regression corpus.
//!
//! The JSON layout is stable: `hilbert_function` (array of ints),
//! `socle_degree`, `decomposition` (array of arrays), `jordan` (array of
//! `{element, partition, sl, comparisons}`), `n_table` (array of
//! `{i, b, value}`), and `records` for search logs.

use crate::partitions::{Partition, PoCmp};
use crate::sdecomp::{NTable, SymmetricDecomposition};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Echo of the inputs that produced a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub expression: String,
    pub variables: String,
    pub field: String,
    pub convention: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NTableEntry {
    pub i: usize,
    pub b: usize,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanEntry {
    pub element: String,
    pub partition: Vec<usize>,
    pub sl: bool,
    /// Named comparisons ("vs H^v", "vs Pc(H)", …) with a verdict string.
    pub comparisons: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded_partition: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q_partitions: Option<Vec<(usize, Vec<usize>)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub input: InputEcho,
    pub socle_degree: usize,
    pub hilbert_function: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_table: Option<Vec<NTableEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jordan: Option<Vec<JordanEntry>>,
    pub timing_ms: u64,
}

/// One line of a search log; fully reproducible from `(seed, trial)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub trial: usize,
    pub seed: u64,
    pub expression: String,
    pub hilbert_function: Vec<usize>,
    pub decomposition: Vec<Vec<usize>>,
    pub generic_jordan_type: Vec<usize>,
    pub classification: String,
}

pub fn ntable_entries(t: &NTable) -> Vec<NTableEntry> {
    t.values
        .iter()
        .map(|(&(i, b), &value)| NTableEntry { i, b, value })
        .collect()
}

pub fn decomposition_rows(d: &SymmetricDecomposition) -> Vec<Vec<usize>> {
    d.rows.clone()
}

pub fn cmp_label(c: PoCmp) -> &'static str {
    match c {
        PoCmp::Less => "<",
        PoCmp::Equal => "=",
        PoCmp::Greater => ">",
        PoCmp::Incomparable => "incomparable",
    }
}

/// Comparison verdict between two partitions, tolerant of weight mismatch
/// (different modules); mismatched weights read "different weight".
pub fn compare_partitions(p: &Partition, q: &Partition) -> String {
    match crate::partitions::dominance(p, q) {
        Ok(c) => cmp_label(c).to_string(),
        Err(_) => "different weight".to_string(),
    }
}

/// Classification key used by search summaries: decomposition rows plus the
/// generic Jordan type, in a stable text form.
pub fn classification_key(rows: &[Vec<usize>], jt: &[usize]) -> String {
    let rows_s: Vec<String> = rows
        .iter()
        .map(|r| {
            let inner: Vec<String> = r.iter().map(|v| v.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let jt_s: Vec<String> = jt.iter().map(|v| v.to_string()).collect();
    format!("D={} JT=({})", rows_s.join(""), jt_s.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trip() {
        let rep = InvariantReport {
            input: InputEcho {
                expression: "X^[4]*Y + Y^[4]".into(),
                variables: "x,y".into(),
                field: "q".into(),
                convention: "divided".into(),
            },
            socle_degree: 5,
            hilbert_function: vec![1, 2, 3, 2, 2, 1],
            decomposition: Some(vec![vec![1, 2, 2, 2, 2, 1], vec![0, 0, 1, 0, 0]]),
            n_table: Some(vec![NTableEntry { i: 2, b: 3, value: 4 }]),
            jordan: Some(vec![JordanEntry {
                element: "x+y".into(),
                partition: vec![6, 4, 1],
                sl: true,
                comparisons: BTreeMap::from([("vs H^v".to_string(), "=".to_string())]),
                graded_partition: None,
                q_partitions: None,
            }]),
            timing_ms: 3,
        };
        let text = serde_json::to_string(&rep).unwrap();
        let back: InvariantReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }

    #[test]
    fn classification_is_stable() {
        let key = classification_key(&[vec![1, 2, 1], vec![0, 0]], &[3, 1]);
        assert_eq!(key, "D=(1,2,1)(0,0) JT=(3,1)");
    }
}
