//! Acceptance harness: one pass/fail line per numbered criterion.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the report.
//! Criteria 1-5 and 7-13 are backed by the named corpus entries.  Criterion 6
//! is asserted directly against its published expectation (exactly three
//! decompositions of (1,3,4^k,3,2,1) for k = 2,3,4) and is reported FAIL for
//! k >= 3: the enumerator finds a fourth candidate satisfying every published
//! necessary condition, and an explicit dual generator realizes it for k = 3,
//! so suppressing it would make the enumerator wrong.  The divergence itself
//! is pinned by `corpus::enumeration`.

use apolar::corpus::{self, extra_pattern, theorem_patterns};
use apolar::sdecomp::enumerate_candidates;

struct Line {
    number: usize,
    label: &'static str,
    passed: bool,
    note: String,
    required: bool,
}

fn corpus_criterion(
    results: &[corpus::CheckResult],
    number: usize,
    label: &'static str,
    entry: &str,
) -> Line {
    let r = results.iter().find(|r| r.name == entry).expect("missing corpus entry");
    Line {
        number,
        label,
        passed: r.passed,
        note: format!("corpus entry `{entry}`"),
        required: true,
    }
}

/// Criterion 6 exactly as published: the enumerator must return precisely the
/// three classification-theorem patterns for k = 2, 3, 4.
fn criterion_6() -> Line {
    let mut failures = Vec::new();
    for k in 2..=4usize {
        let mut h = vec![1, 3];
        h.extend(std::iter::repeat(4).take(k));
        h.extend([3, 2, 1]);
        let (found, _) = enumerate_candidates(&h);
        let mut want = theorem_patterns(k);
        want.sort_by_key(|d| d.flattened());
        if found != want {
            failures.push(k);
        }
    }
    if failures.is_empty() {
        Line { number: 6, label: "enumeration", passed: true, note: "exact".into(), required: false }
    } else {
        Line {
            number: 6,
            label: "enumeration",
            passed: false,
            note: format!(
                "k={failures:?} admit a fourth candidate beyond the published three; it passes \
                 all published necessary conditions and for k=3 is realized by \
                 F = X^[2]Y^[5] + X^[6] + Z X^[4], so it is not filtered (see corpus entry \
                 `enumeration`)"
            ),
            required: false,
        }
    }
}

#[test]
fn acceptance() {
    let started = std::time::Instant::now();
    let results = corpus::run_all();
    let elapsed = started.elapsed();

    let mut lines = vec![
        corpus_criterion(&results, 1, "hilbert functions", "hilbert-functions"),
        corpus_criterion(&results, 2, "symmetric decompositions", "symmetric-decompositions"),
        corpus_criterion(&results, 3, "jordan types", "jordan-types"),
        corpus_criterion(&results, 4, "strong-Lefschetz verdicts", "sl-verdicts"),
        corpus_criterion(&results, 5, "partition toolkit", "partitions"),
        criterion_6(),
        corpus_criterion(&results, 7, "specialization obstructions", "obstructions"),
        corpus_criterion(&results, 8, "N-table formula vs direct", "ntable-equivalence"),
        corpus_criterion(&results, 9, "closed-form counts", "closed-form-counts"),
        corpus_criterion(&results, 10, "tangent-space tables", "tangent-space-tables"),
        corpus_criterion(&results, 11, "randomized property suites", "property-suites"),
        corpus_criterion(&results, 12, "pinned errata", "errata"),
        corpus_criterion(&results, 13, "determinism", "determinism"),
    ];
    lines.sort_by_key(|l| l.number);

    let mut hard_failures = Vec::new();
    for l in &lines {
        let verdict = if l.passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {:2} — {} ({})", l.number, l.label, l.note);
        if !l.passed && l.required {
            hard_failures.push(l.number);
        }
    }
    println!("corpus wall time: {:.1?}", elapsed);

    // The known enumeration divergence must stay exactly as analyzed: four
    // candidates for k = 3 and 4, the extra one matching `extra_pattern`.
    for k in [3usize, 4] {
        let mut h = vec![1, 3];
        h.extend(std::iter::repeat(4).take(k));
        h.extend([3, 2, 1]);
        let (found, _) = enumerate_candidates(&h);
        assert_eq!(found.len(), 4, "k={k} candidate count drifted");
        assert!(found.contains(&extra_pattern(k)), "k={k} extra candidate drifted");
    }

    assert!(hard_failures.is_empty(), "criteria failed: {hard_failures:?}");
    assert!(elapsed.as_secs() < 60, "corpus exceeded the 60-second budget");
}
