//! Seeded Monte Carlo search over a prime field.
//!
//! A *shape* is a dual-generator expression containing `rand(d)` or
//! `rand(d;VARS)` markers; each trial replaces every marker with a random
//! homogeneous divided-power form of degree `d` (in the named uppercase
//! variables, default all), then computes Hilbert function, symmetric
//! decomposition, and generic Jordan type, and classifies the result.
//!
//! Every trial derives its RNG from `(seed, trial index)`, so runs are
//! reproducible and independent of how trials are scheduled across threads.

use crate::apolar::ApolarAlgebra;
use crate::dpoly::{monomials_of_degree, Poly, VariableSet};
use crate::field::{Field, Fp};
use crate::jordan::{generic_jordan_type, SampleMode};
use crate::parse::{parse_dual, Convention};
use crate::report::{classification_key, SearchRecord};
use crate::sdecomp::q_dimensions;
use num_traits::Zero;
use rand::SeedableRng;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("empty shape")]
    EmptyShape,
    #[error("bad rand marker at byte {0}: {1}")]
    BadMarker(usize, String),
    #[error("trial {0}: {1}")]
    Trial(usize, String),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub shape: String,
    pub trials: usize,
    pub seed: u64,
    pub vars: VariableSet,
    pub prime: u64,
    pub convention: Convention,
    pub jobs: usize,
    /// Samples per trial for the generic Jordan type.
    pub samples: usize,
}

/// A shape split into literal text and random-form markers.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Piece {
    Literal(String),
    Rand { degree: usize, var_indices: Vec<usize> },
}

fn parse_shape(shape: &str, vars: &VariableSet) -> Result<Vec<Piece>, SearchError> {
    if shape.trim().is_empty() {
        return Err(SearchError::EmptyShape);
    }
    let mut pieces = Vec::new();
    let mut rest = shape;
    let mut offset = 0usize;
    while let Some(pos) = rest.find("rand(") {
        if !rest[..pos].is_empty() {
            pieces.push(Piece::Literal(rest[..pos].to_string()));
        }
        let start = offset + pos;
        let after = &rest[pos + 5..];
        let close = after
            .find(')')
            .ok_or_else(|| SearchError::BadMarker(start, "missing `)`".into()))?;
        let inner = &after[..close];
        let (deg_text, var_text) = match inner.split_once(';') {
            Some((d, v)) => (d.trim(), Some(v.trim())),
            None => (inner.trim(), None),
        };
        let degree: usize = deg_text
            .parse()
            .map_err(|_| SearchError::BadMarker(start, format!("bad degree `{deg_text}`")))?;
        let var_indices = match var_text {
            None => (0..vars.count()).collect(),
            Some(names) => {
                let mut idx = Vec::new();
                for ch in names.chars().filter(|c| !c.is_whitespace() && *c != ',') {
                    let lower = ch.to_ascii_lowercase();
                    let i = vars.index_of(lower).ok_or_else(|| {
                        SearchError::BadMarker(start, format!("unknown variable `{ch}`"))
                    })?;
                    idx.push(i);
                }
                if idx.is_empty() {
                    return Err(SearchError::BadMarker(start, "no variables".into()));
                }
                idx
            }
        };
        pieces.push(Piece::Rand { degree, var_indices });
        offset += pos + 5 + close + 1;
        rest = &after[close + 1..];
    }
    if !rest.is_empty() {
        pieces.push(Piece::Literal(rest.to_string()));
    }
    Ok(pieces)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    splitmix64(seed ^ splitmix64(trial as u64))
}

/// Instantiates the shape for one trial: each marker becomes a nonzero
/// random homogeneous form, rendered as text so the record is replayable.
fn instantiate(
    pieces: &[Piece],
    vars: &VariableSet,
    prime: u64,
    rng: &mut rand_chacha::ChaCha12Rng,
) -> String {
    let mut out = String::new();
    for piece in pieces {
        match piece {
            Piece::Literal(text) => out.push_str(text),
            Piece::Rand { degree, var_indices } => {
                let mut form = Poly::<Fp>::zero();
                while form.is_zero() {
                    form = Poly::zero();
                    for m in monomials_of_degree(vars.count(), *degree) {
                        if m.exps()
                            .iter()
                            .enumerate()
                            .any(|(v, &e)| e > 0 && !var_indices.contains(&v))
                        {
                            continue;
                        }
                        let c = Fp::sample(&prime, rng).unwrap();
                        if !c.is_zero() {
                            form.add_term(m, c);
                        }
                    }
                }
                out.push('(');
                out.push_str(&form.format(vars, true));
                out.push(')');
            }
        }
    }
    out
}

fn run_trial(
    pieces: &[Piece],
    cfg: &SearchConfig,
    trial: usize,
) -> Result<SearchRecord, SearchError> {
    let ts = trial_seed(cfg.seed, trial);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(ts);
    let expression = instantiate(pieces, &cfg.vars, cfg.prime, &mut rng);
    let f = parse_dual::<Fp>(&expression, &cfg.vars, &cfg.prime, cfg.convention)
        .map_err(|e| SearchError::Trial(trial, e.to_string()))?;
    let alg = ApolarAlgebra::build(cfg.vars.clone(), f, cfg.prime)
        .map_err(|e| SearchError::Trial(trial, e.to_string()))?;
    let d = q_dimensions(&alg);
    let (jt, _) = generic_jordan_type(&alg, cfg.samples, splitmix64(ts), SampleMode::Linear)
        .map_err(|e| SearchError::Trial(trial, e.to_string()))?;
    Ok(SearchRecord {
        trial,
        seed: cfg.seed,
        expression,
        hilbert_function: alg.hilbert_function().to_vec(),
        decomposition: d.rows.clone(),
        generic_jordan_type: jt.parts().to_vec(),
        classification: classification_key(&d.rows, jt.parts()),
    })
}

/// Runs the whole search; records come back sorted by trial index
/// regardless of `jobs`.
pub fn run_search(cfg: &SearchConfig) -> Result<Vec<SearchRecord>, SearchError> {
    let pieces = parse_shape(&cfg.shape, &cfg.vars)?;
    if cfg.trials == 0 {
        return Ok(Vec::new());
    }
    let jobs = cfg.jobs.max(1).min(cfg.trials);
    if jobs == 1 {
        return (0..cfg.trials).map(|t| run_trial(&pieces, cfg, t)).collect();
    }
    let results = std::sync::Mutex::new(vec![None; cfg.trials]);
    let next = std::sync::atomic::AtomicUsize::new(0);
    let error = std::sync::Mutex::new(None);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let t = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if t >= cfg.trials || error.lock().unwrap().is_some() {
                    break;
                }
                match run_trial(&pieces, cfg, t) {
                    Ok(rec) => results.lock().unwrap()[t] = Some(rec),
                    Err(e) => *error.lock().unwrap() = Some(e),
                }
            });
        }
    });
    if let Some(e) = error.into_inner().unwrap() {
        return Err(e);
    }
    Ok(results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every trial completed"))
        .collect())
}

/// Aggregates records by classification key; counts are invariant under
/// record order.
pub fn summarize(records: &[SearchRecord]) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for r in records {
        *counts.entry(r.classification.clone()).or_insert(0) += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(shape: &str, trials: usize, jobs: usize) -> SearchConfig {
        SearchConfig {
            shape: shape.to_string(),
            trials,
            seed: 42,
            vars: VariableSet::parse("x,y,z").unwrap(),
            prime: crate::field::DEFAULT_PRIME,
            convention: Convention::Divided,
            jobs,
            samples: 3,
        }
    }

    #[test]
    fn shape_parsing() {
        let vars = VariableSet::parse("x,y,z").unwrap();
        let pieces = parse_shape("X^3*Y^3 + rand(3;Z)", &vars).unwrap();
        assert_eq!(pieces.len(), 2);
        assert!(matches!(
            pieces[1],
            Piece::Rand { degree: 3, ref var_indices } if var_indices == &[2]
        ));
        assert!(parse_shape("", &vars).is_err());
        assert!(parse_shape("rand(x)", &vars).is_err());
        assert!(parse_shape("rand(3", &vars).is_err());
        assert!(parse_shape("rand(3;W)", &vars).is_err());
    }

    #[test]
    fn deterministic_and_jobs_invariant() {
        let c1 = cfg("X^[3]*Y^[3] + rand(3)", 6, 1);
        let r1 = run_search(&c1).unwrap();
        let r2 = run_search(&c1).unwrap();
        assert_eq!(r1, r2);
        let c4 = cfg("X^[3]*Y^[3] + rand(3)", 6, 4);
        let r4 = run_search(&c4).unwrap();
        assert_eq!(r1, r4);
        assert_eq!(r1.len(), 6);
        assert!(r1.iter().enumerate().all(|(i, r)| r.trial == i));
        // Records replay: parsing the logged expression reproduces the HF.
        for r in &r1 {
            let f = parse_dual::<Fp>(&r.expression, &c1.vars, &c1.prime, c1.convention).unwrap();
            let a = ApolarAlgebra::build(c1.vars.clone(), f, c1.prime).unwrap();
            assert_eq!(a.hilbert_function(), &r.hilbert_function[..]);
        }
    }

    #[test]
    fn zero_trials() {
        let c = cfg("X^[4] + rand(2)", 0, 2);
        assert_eq!(run_search(&c).unwrap(), Vec::new());
    }
}
