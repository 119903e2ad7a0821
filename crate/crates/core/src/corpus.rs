//! The regression corpus: every published value the toolkit reproduces, as
//! named checks shared by the `corpus` CLI command and the acceptance test.
//!
//! Each check returns a [`CheckResult`] with a pass flag and a detail log.
//! Worked examples are built over the rationals; generic Jordan types and
//! the randomized property suites run over `F_32003`.  Dual-generator texts
//! written with plain `X^k` powers are tried under the `divided` convention
//! first and `ordinary` second; the convention that reproduces the expected
//! Hilbert function is recorded in the detail log.

use crate::apolar::{exotic_lift, ApolarAlgebra};
use crate::dpoly::{contract, monomials_of_degree, monomials_up_to, DPoly, Poly, VariableSet};
use crate::field::{Field, Fp, Rat, DEFAULT_PRIME};
use crate::jordan::{
    decomposition_partitions, generic_jordan_type, jordan_type, jordan_type_graded,
    jordan_type_q, sl_check, SampleMode,
};
use crate::parse::{parse_acting, parse_dual, Convention};
use crate::partitions::{
    concatenate, conjugate_of_sequence, contiguous, dominance, dominates, Partition, PoCmp,
};
use crate::sdecomp::{
    decomposition_order, enumerate_candidates, n_formula, ntable_direct, ntable_formula,
    q_dimensions, q0_obstruction, specialization_blockers, SymmetricDecomposition,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Accumulates labeled assertions into one check result.
struct Check {
    lines: Vec<String>,
    failures: usize,
}

impl Check {
    fn new() -> Self {
        Check { lines: Vec::new(), failures: 0 }
    }

    fn expect_eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got == want {
            self.lines.push(format!("ok   {label}: {got:?}"));
        } else {
            self.failures += 1;
            self.lines.push(format!("FAIL {label}: got {got:?}, want {want:?}"));
        }
    }

    fn expect(&mut self, label: &str, cond: bool) {
        if cond {
            self.lines.push(format!("ok   {label}"));
        } else {
            self.failures += 1;
            self.lines.push(format!("FAIL {label}"));
        }
    }

    fn fail(&mut self, label: &str, msg: &str) {
        self.failures += 1;
        self.lines.push(format!("FAIL {label}: {msg}"));
    }

    fn note(&mut self, msg: String) {
        self.lines.push(format!("     {msg}"));
    }

    fn finish(self, name: &str) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: self.failures == 0,
            detail: self.lines.join("\n"),
        }
    }
}

/// A worked example: variables, dual-generator text, expected Hilbert
/// function (used to pick the reproducing power convention).
struct Example {
    name: &'static str,
    vars: &'static str,
    dual: &'static str,
    hf: &'static [usize],
}

static EXAMPLES: &[Example] = &[
    Example { name: "ex1_4", vars: "x,y", dual: "X^[3] + Y^[2]", hf: &[1, 2, 1, 1] },
    Example { name: "ex1_9", vars: "x,y,z", dual: "X^3*Y*Z + Y^4", hf: &[1, 3, 5, 4, 3, 1] },
    Example { name: "ex2_2", vars: "x,y", dual: "X^[4]*Y + Y^[4]", hf: &[1, 2, 3, 2, 2, 1] },
    Example {
        name: "ex2_5",
        vars: "x,y,z",
        dual: "X^4*Y^4 + X^3*Y^3*Z + Z^5",
        hf: &[1, 3, 6, 8, 7, 5, 3, 2, 1],
    },
    Example { name: "ex2_13", vars: "x,y,z", dual: "X^[4]*Y + Z^[3]", hf: &[1, 3, 3, 2, 2, 1] },
    Example { name: "ex2_14", vars: "x,y", dual: "X^4 + X^2*Y", hf: &[1, 2, 1, 1, 1] },
    Example {
        name: "ex2_18",
        vars: "x,y,z",
        dual: "X*(Y^4 + Z^4) + X^3 + Y^2*Z^3",
        hf: &[1, 3, 5, 5, 3, 1],
    },
    Example { name: "ex2_22", vars: "x,y,z", dual: "X^3*Y^3 + Y*Z^3", hf: &[1, 3, 5, 5, 3, 2, 1] },
    Example {
        name: "ex2_27",
        vars: "x,y,z",
        dual: "X^[3]*Y^[2] + Y^[3]*Z",
        hf: &[1, 3, 3, 4, 2, 1],
    },
    Example {
        name: "ex2_28a",
        vars: "x,y,z",
        dual: "X^2*Y^4 + X^3*Y*Z",
        hf: &[1, 3, 4, 4, 4, 2, 1],
    },
    Example { name: "ex2_28b", vars: "x,y,z", dual: "X^2*Y^4 + Z^5", hf: &[1, 3, 4, 4, 4, 2, 1] },
    Example {
        name: "ex2_28c",
        vars: "x,y,z",
        dual: "X^3*Y^3 + Z*Y^4 + Z^4",
        hf: &[1, 3, 4, 4, 4, 2, 1],
    },
    Example {
        name: "ex2_30",
        vars: "x,y,z",
        dual: "X^[3]*Y^[3] + Z*(X^[4] + Y^[4])",
        hf: &[1, 3, 5, 4, 4, 2, 1],
    },
    Example { name: "thm31a", vars: "x,y,z", dual: "X^3*Y^3 + Z^3", hf: &[1, 3, 4, 4, 3, 2, 1] },
    Example {
        name: "thm31b",
        vars: "x,y,z",
        dual: "X^6 + Y^6 + (X+Y)^[6] + Z^4",
        hf: &[1, 3, 4, 4, 3, 2, 1],
    },
    Example {
        name: "thm31c",
        vars: "x,y,z",
        dual: "X^6 + Y^6 + (X+Y)^[5] + Z^5",
        hf: &[1, 3, 4, 4, 3, 2, 1],
    },
    Example {
        name: "ex3_13a",
        vars: "x,y,z,w",
        dual: "X^5 + Y^5 + (X+Y)^5 + Z*(X^2*Y - X*Y^2) + W^2",
        hf: &[1, 4, 3, 4, 2, 1],
    },
];

fn example(name: &str) -> &'static Example {
    EXAMPLES.iter().find(|e| e.name == name).expect("unknown corpus example")
}

type QCache = Mutex<HashMap<(String, Convention), Option<Arc<ApolarAlgebra<Rat>>>>>;

fn q_cache() -> &'static QCache {
    static CACHE: OnceLock<QCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn build_q(name: &str, conv: Convention) -> Option<Arc<ApolarAlgebra<Rat>>> {
    if let Some(hit) = q_cache().lock().unwrap().get(&(name.to_string(), conv)) {
        return hit.clone();
    }
    let ex = example(name);
    let built = (|| {
        let vars = VariableSet::parse(ex.vars).ok()?;
        let f = parse_dual::<Rat>(ex.dual, &vars, &(), conv).ok()?;
        ApolarAlgebra::build(vars, f, ()).ok().map(Arc::new)
    })();
    q_cache().lock().unwrap().insert((name.to_string(), conv), built.clone());
    built
}

/// The rational algebra of an example, under the convention that reproduces
/// its expected Hilbert function (divided preferred).
pub fn algebra(name: &str) -> Result<(Arc<ApolarAlgebra<Rat>>, Convention), String> {
    let ex = example(name);
    for conv in [Convention::Divided, Convention::Ordinary] {
        if let Some(a) = build_q(name, conv) {
            if a.hilbert_function() == ex.hf {
                return Ok((a, conv));
            }
        }
    }
    Err(format!("{name}: no convention reproduces H = {:?}", ex.hf))
}

/// A one-off rational algebra from explicit dual-generator text (divided
/// convention), for checks that fall outside the worked-example table.
fn adhoc_algebra(dual: &str, vars: &str) -> Result<ApolarAlgebra<Rat>, String> {
    let vars = VariableSet::parse(vars).map_err(|e| e.to_string())?;
    let f = parse_dual::<Rat>(dual, &vars, &(), Convention::Divided).map_err(|e| e.to_string())?;
    ApolarAlgebra::build(vars, f, ()).map_err(|e| e.to_string())
}

/// The same algebra over `F_32003`, for generic sampling.
fn algebra_fp(name: &str, conv: Convention) -> Result<ApolarAlgebra<Fp>, String> {
    let ex = example(name);
    let vars = VariableSet::parse(ex.vars).map_err(|e| e.to_string())?;
    let f = parse_dual::<Fp>(ex.dual, &vars, &DEFAULT_PRIME, conv).map_err(|e| e.to_string())?;
    ApolarAlgebra::build(vars, f, DEFAULT_PRIME).map_err(|e| e.to_string())
}

fn ell(a: &ApolarAlgebra<Rat>, text: &str) -> crate::dpoly::RPoly<Rat> {
    parse_acting(text, a.vars(), &(), Convention::Divided).unwrap()
}

fn p(parts: &[usize]) -> Partition {
    Partition::new(parts.to_vec())
}

fn expect_rows(j: usize, nonzero: &[(usize, &[usize])]) -> Vec<Vec<usize>> {
    let count = j.saturating_sub(2) + 1;
    let mut rows: Vec<Vec<usize>> = (0..count).map(|a| vec![0; j - a + 1]).collect();
    for (a, row) in nonzero {
        rows[*a] = row.to_vec();
    }
    rows
}

macro_rules! try_alg {
    ($check:expr, $name:expr) => {
        match algebra($name) {
            Ok(pair) => pair,
            Err(e) => {
                $check.fail($name, &e);
                continue;
            }
        }
    };
}

/// Criterion 1: Hilbert functions of the headline examples.
pub fn hilbert_functions() -> CheckResult {
    let mut c = Check::new();
    for name in ["ex2_2", "ex1_9", "ex2_5", "ex2_27", "ex2_30"] {
        let (a, conv) = try_alg!(c, name);
        c.expect_eq(
            &format!("{name} H ({conv})"),
            a.hilbert_function().to_vec(),
            example(name).hf.to_vec(),
        );
    }
    if let Ok((a, _)) = algebra("ex2_5") {
        c.expect_eq("ex2_5 dim A", a.dim(), 36);
    }
    c.finish("hilbert-functions")
}

/// Criterion 2: symmetric decompositions of the headline examples.
pub fn symmetric_decompositions() -> CheckResult {
    let mut c = Check::new();
    let cases: &[(&str, &[(usize, &[usize])])] = &[
        ("ex1_9", &[(0, &[1, 3, 4, 4, 3, 1]), (1, &[0, 0, 1, 0, 0])]),
        ("ex2_2", &[(0, &[1, 2, 2, 2, 2, 1]), (1, &[0, 0, 1, 0, 0])]),
        (
            "ex2_5",
            &[
                (0, &[1, 2, 3, 4, 5, 4, 3, 2, 1]),
                (2, &[0, 1, 2, 3, 2, 1, 0]),
                (3, &[0, 0, 1, 1, 0, 0]),
            ],
        ),
        ("ex2_27", &[(0, &[1, 2, 3, 3, 2, 1]), (1, &[0, 1, 0, 1, 0])]),
        (
            "ex2_30",
            &[(0, &[1, 2, 3, 4, 3, 2, 1]), (1, &[0, 1, 0, 0, 1, 0]), (2, &[0, 0, 2, 0, 0])],
        ),
        ("ex2_28a", &[(0, &[1, 2, 3, 3, 3, 2, 1]), (1, &[0, 1, 1, 1, 1, 0])]),
        ("ex2_28b", &[(0, &[1, 2, 3, 3, 3, 2, 1]), (1, &[0, 1, 1, 1, 1, 0])]),
        ("thm31a", &[(0, &[1, 2, 3, 4, 3, 2, 1]), (3, &[0, 1, 1, 0])]),
        ("thm31b", &[(0, &[1, 2, 3, 3, 3, 2, 1]), (2, &[0, 1, 1, 1, 0])]),
        ("thm31c", &[(0, &[1, 2, 2, 2, 2, 2, 1]), (1, &[0, 1, 2, 2, 1, 0])]),
        ("ex3_13a", &[(0, &[1, 2, 3, 3, 2, 1]), (1, &[0, 1, 0, 1, 0]), (3, &[0, 1, 0])]),
    ];
    for (name, nonzero) in cases {
        let (a, conv) = try_alg!(c, name);
        let d = q_dimensions(&a);
        c.expect_eq(
            &format!("{name} D ({conv})"),
            d.rows.clone(),
            expect_rows(a.socle_degree(), nonzero),
        );
    }
    c.finish("symmetric-decompositions")
}

/// Criterion 3: Jordan types at the stated elements, plus the generic types
/// of the classification-theorem witnesses and the ex2_5 algebra over `F_32003`.
pub fn jordan_types() -> CheckResult {
    let mut c = Check::new();
    // (example, element, on A, optionally on A*).
    let cases: &[(&str, &str, &[usize], Option<&[usize]>)] = &[
        ("ex1_4", "x+y", &[4, 1], None),
        ("ex2_2", "x", &[5, 5, 1], None),
        ("ex2_2", "x+y", &[6, 4, 1], None),
        ("ex2_2", "y", &[5, 2, 2, 2], None),
        ("ex2_18", "x", &[4, 2, 2, 2, 2, 2, 2, 1, 1], Some(&[2, 2, 2, 2, 2, 2, 2, 2, 1, 1])),
        ("ex2_27", "x+y+z", &[6, 4, 2, 2], Some(&[6, 4, 2, 1, 1])),
        // At x+y+z the graded type drops below the generic value; a generic
        // element such as x+2y+3z recovers it.
        ("ex2_30", "x+y+z", &[7, 5, 3, 3, 1, 1], Some(&[7, 5, 3, 2, 1, 1, 1])),
        ("ex2_30", "x+2*y+3*z", &[7, 5, 3, 3, 1, 1], Some(&[7, 5, 3, 2, 2, 1])),
        ("ex2_28c", "x+y+z", &[7, 5, 3, 3, 1], Some(&[7, 5, 3, 2, 2])),
        ("ex2_28a", "x+y+z", &[7, 5, 3, 3, 1], None),
        ("ex3_13a", "x+y+z+w", &[6, 4, 2, 2, 1], Some(&[6, 4, 2, 1, 1, 1])),
    ];
    for (name, lt, on_a, on_graded) in cases {
        let (a, conv) = try_alg!(c, name);
        let l = ell(&a, lt);
        match jordan_type(&a, &l) {
            Ok(pt) => c.expect_eq(&format!("{name} P_{{A,{lt}}} ({conv})"), pt, p(on_a)),
            Err(e) => c.fail(name, &e.to_string()),
        }
        if let Some(want) = on_graded {
            match jordan_type_graded(&a, &l) {
                Ok(pt) => c.expect_eq(&format!("{name} P_{{A*,{lt}}}"), pt, p(want)),
                Err(e) => c.fail(name, &e.to_string()),
            }
        }
    }
    // Q(a) types.
    for (name, qa, want) in [("ex2_30", 1usize, vec![1, 1]), ("ex2_28a", 1, vec![2, 2])] {
        if let Ok((a, _)) = algebra(name) {
            let l = ell(&a, "x+y+z");
            match jordan_type_q(&a, qa, &l) {
                Ok(pt) => c.expect_eq(&format!("{name} P_{{Q({qa}),x+y+z}}"), pt, p(&want)),
                Err(e) => c.fail(name, &e.to_string()),
            }
        }
    }
    // Generic types over F_32003.
    let generic: &[(&str, &[usize])] = &[
        ("thm31a", &[7, 5, 3, 2, 1]),
        ("thm31b", &[7, 5, 3, 3]),
        ("thm31c", &[7, 5, 4, 2]),
        ("ex2_5", &[9, 7, 5, 5, 3, 3, 2, 1, 1]),
    ];
    for (name, want) in generic {
        let conv = match algebra(name) {
            Ok((_, conv)) => conv,
            Err(e) => {
                c.fail(name, &e);
                continue;
            }
        };
        match algebra_fp(name, conv) {
            Ok(a) => match generic_jordan_type(&a, 5, 17, SampleMode::Linear) {
                Ok((pt, flag)) => {
                    c.expect_eq(&format!("{name} generic JT"), pt, p(want));
                    c.expect(&format!("{name} samples agree"), !flag);
                }
                Err(e) => c.fail(name, &e.to_string()),
            },
            Err(e) => c.fail(name, &e),
        }
    }
    c.finish("jordan-types")
}

/// Criterion 4: strong-Lefschetz verdicts.
pub fn sl_verdicts() -> CheckResult {
    let mut c = Check::new();
    // Generic verdicts for the graded-benchmark cases.
    for (name, strong) in [("thm31c", true), ("ex2_28b", true)] {
        let Ok((a, conv)) = algebra(name) else {
            c.fail(name, "build failed");
            continue;
        };
        let benchmark = conjugate_of_sequence(a.hilbert_function()).unwrap();
        match algebra_fp(name, conv).and_then(|afp| {
            generic_jordan_type(&afp, 5, 23, SampleMode::Linear).map_err(|e| e.to_string())
        }) {
            Ok((pt, _)) => c.expect_eq(&format!("{name} generic SL"), pt == benchmark, strong),
            Err(e) => c.fail(name, &e),
        }
    }
    // Verdicts at the stated element.
    for (name, lt, strong) in [
        ("ex2_13", "x+y+z", true),
        ("ex2_27", "x+y+z", false),
        ("ex2_30", "x+y+z", false),
        ("ex1_4", "x+y", true),
    ] {
        let (a, _) = try_alg!(c, name);
        match sl_check(&a, &ell(&a, lt)) {
            Ok(v) => c.expect_eq(&format!("{name} SL at {lt}"), v.is_strong_lefschetz(), strong),
            Err(e) => c.fail(name, &e.to_string()),
        }
    }
    if let Ok((a, _)) = algebra("ex2_13") {
        if let Ok(v) = sl_check(&a, &ell(&a, "x+y+z")) {
            c.expect_eq("ex2_13 partition", v.partition().clone(), p(&[6, 4, 2]));
        }
    }
    c.finish("sl-verdicts")
}

/// Criterion 5: the partition toolkit.
pub fn partition_toolkit() -> CheckResult {
    let mut c = Check::new();
    c.expect_eq("conjugate (1,2,1,1)", conjugate_of_sequence(&[1, 2, 1, 1]).unwrap(), p(&[4, 1]));
    c.expect_eq(
        "conjugate (1,3,4,4,3,2,1)",
        conjugate_of_sequence(&[1, 3, 4, 4, 3, 2, 1]).unwrap(),
        p(&[7, 5, 4, 2]),
    );
    c.expect_eq("contiguous (1,3,5,2,3)", contiguous(&[1, 3, 5, 2, 3]).unwrap(), p(&[5, 4, 2, 1, 1, 1]));
    c.expect_eq("contiguous (1,3,5,3,2)", contiguous(&[1, 3, 5, 3, 2]).unwrap(), p(&[5, 4, 3, 1, 1]));
    c.expect_eq(
        "contiguous (1,4,3,4,2,1)",
        contiguous(&[1, 4, 3, 4, 2, 1]).unwrap(),
        p(&[6, 4, 3, 1, 1]),
    );
    c.expect_eq(
        "concatenation",
        concatenate(&[p(&[4, 3, 1]), p(&[5, 3, 2])]),
        p(&[5, 4, 3, 3, 2, 1]),
    );
    c.expect(
        "dominance chain",
        dominates(&p(&[7, 5, 4, 2]), &p(&[7, 5, 3, 3])).unwrap()
            && dominates(&p(&[7, 5, 3, 3]), &p(&[7, 5, 3, 2, 1])).unwrap()
            && dominance(&p(&[7, 5, 4, 2]), &p(&[7, 5, 3, 3])).unwrap() == PoCmp::Greater,
    );
    c.finish("partitions")
}

/// The three decompositions of `H = (1,3,4^k,3,2,1)` described by the
/// classification theorems, as explicit row systems.
pub fn theorem_patterns(k: usize) -> Vec<SymmetricDecomposition> {
    let j = k + 4;
    let mut d1_top = vec![1, 2, 3];
    d1_top.extend(std::iter::repeat(4).take(k - 1));
    d1_top.extend([3, 2, 1]);
    let mut d2_top = vec![1, 2];
    d2_top.extend(std::iter::repeat(3).take(k + 1));
    d2_top.extend([2, 1]);
    let mut d3_top = vec![1];
    d3_top.extend(std::iter::repeat(2).take(k + 3));
    d3_top.push(1);
    let mut d2_row2 = vec![0];
    d2_row2.extend(std::iter::repeat(1).take(k + 1));
    d2_row2.push(0);
    let mut d3_row1 = vec![0, 1];
    d3_row1.extend(std::iter::repeat(2).take(k));
    d3_row1.extend([1, 0]);
    vec![
        SymmetricDecomposition::from_rows(expect_rows(
            j,
            &[(0, &d1_top), (k + 1, &[0, 1, 1, 0])],
        ))
        .unwrap(),
        SymmetricDecomposition::from_rows(expect_rows(j, &[(0, &d2_top), (2, &d2_row2)])).unwrap(),
        SymmetricDecomposition::from_rows(expect_rows(j, &[(0, &d3_top), (1, &d3_row1)])).unwrap(),
    ]
}

/// The fourth decomposition of `H = (1,3,4^k,3,2,1)` for `k >= 3`, beyond the
/// three listed by the classification theorems.  It satisfies all three
/// published necessary conditions, and for `k = 3` it is realized by
/// `F = X^[2]Y^[5] + X^[6] + Z X^[4]` (checked below), so the published
/// claim that only three decompositions occur fails for `k >= 3`.
pub fn extra_pattern(k: usize) -> SymmetricDecomposition {
    let j = k + 4;
    let mut top = vec![1, 2];
    top.extend(std::iter::repeat(3).take(k + 1));
    top.extend([2, 1]);
    // Row 1: the middle unit block symmetric about (j-1)/2 (one box for odd
    // j, a pair for even j).  Row 2: boxes at degrees 1 and j-3.  Row j-4: a
    // single box at degree 2.
    let mut row1 = vec![0; j];
    row1[(j - 1) / 2] = 1;
    row1[j / 2] = 1;
    let mut row2 = vec![0; j - 1];
    row2[1] = 1;
    row2[j - 3] = 1;
    let zrow = j - 4;
    let mut rowz = vec![0; j - zrow + 1];
    rowz[2] = 1;
    SymmetricDecomposition::from_rows(expect_rows(
        j,
        &[(0, &top), (1, &row1), (2, &row2), (zrow, &rowz)],
    ))
    .unwrap()
}

/// Criterion 6: exhaustive enumeration against the classification theorems.
/// For `k = 2` the three published decompositions are exactly reproduced.
/// For `k = 3, 4` the enumerator finds those three plus [`extra_pattern`];
/// the `k = 3` extra candidate is realized by an explicit dual generator, so
/// returning it is correct even though the published count is three.
pub fn enumeration() -> CheckResult {
    let mut c = Check::new();
    for k in 2..=4usize {
        let mut h = vec![1, 3];
        h.extend(std::iter::repeat(4).take(k));
        h.extend([3, 2, 1]);
        let (found, exact) = enumerate_candidates(&h);
        c.expect(&format!("k={k} exact (codim 3)"), exact);
        let mut want = theorem_patterns(k);
        if k >= 3 {
            want.push(extra_pattern(k));
        }
        want.sort_by_key(|d| d.flattened());
        c.expect_eq(&format!("k={k} candidate count"), found.len(), want.len());
        c.expect_eq(&format!("k={k} candidates"), found, want);
    }
    // The k = 3 extra candidate occurs: an explicit algebra has exactly that
    // symmetric decomposition, so no further filter may exclude it.
    match adhoc_algebra("X^[2]*Y^[5] + X^[6] + Z*X^[4]", "x,y,z") {
        Ok(a) => {
            c.expect_eq("k=3 extra realized: H", a.hilbert_function().to_vec(), vec![
                1, 3, 4, 4, 4, 3, 2, 1,
            ]);
            c.expect_eq(
                "k=3 extra realized: D",
                SymmetricDecomposition::from_rows(q_dimensions(&a).rows.clone()).unwrap(),
                extra_pattern(3),
            );
        }
        Err(e) => c.fail("k=3 witness build", &e),
    }
    // The sequence (1,3,4,4,4,2,1): both published decompositions are candidates.
    let (found, _) = enumerate_candidates(&[1, 3, 4, 4, 4, 2, 1]);
    for (label, rows) in [
        ("(1,3,4,4,4,2,1) has split-row candidate", vec![
            (0usize, vec![1, 2, 3, 4, 3, 2, 1]),
            (1, vec![0, 1, 0, 0, 1, 0]),
            (2, vec![0, 0, 1, 0, 0]),
        ]),
        ("(1,3,4,4,4,2,1) has single-row candidate", vec![
            (0, vec![1, 2, 3, 3, 3, 2, 1]),
            (1, vec![0, 1, 1, 1, 1, 0]),
        ]),
    ] {
        let refs: Vec<(usize, &[usize])> = rows.iter().map(|(a, r)| (*a, r.as_slice())).collect();
        let want = SymmetricDecomposition::from_rows(expect_rows(6, &refs)).unwrap();
        c.expect(label, found.contains(&want));
    }
    // Sanity: a graded complete-intersection H admits only the trivial D.
    let (found, _) = enumerate_candidates(&[1, 3, 3, 1]);
    c.expect_eq(
        "trivial D present",
        found,
        vec![SymmetricDecomposition::from_rows(expect_rows(3, &[(0, &[1, 3, 3, 1])])).unwrap()],
    );
    c.finish("enumeration")
}

/// Criterion 7: pairwise specialization obstructions among the three
/// decompositions of `H = (1,3,4,4,3,2,1)`.
pub fn obstructions() -> CheckResult {
    let mut c = Check::new();
    let ds = theorem_patterns(2);
    let (d1, d2, d3) = (&ds[0], &ds[1], &ds[2]);
    let p1 = p(&[7, 5, 3, 2, 1]);
    let p2 = p(&[7, 5, 3, 3]);
    let p3 = p(&[7, 5, 4, 2]);
    c.expect_eq("D1 > D2", decomposition_order(d1, d2).unwrap(), PoCmp::Greater);
    c.expect_eq("D2 > D3", decomposition_order(d2, d3).unwrap(), PoCmp::Greater);
    c.expect_eq("D1 > D3", decomposition_order(d1, d3).unwrap(), PoCmp::Greater);
    c.expect_eq("q0 witness D2→D1", q0_obstruction(d2, d1).unwrap(), Some(3));
    c.expect_eq("q0 witness D3→D1", q0_obstruction(d3, d1).unwrap(), Some(2));
    c.expect_eq("q0 witness D3→D2", q0_obstruction(d3, d2).unwrap(), Some(2));
    let pairs = [
        ("D1→D2", d1, d2, &p1, &p2),
        ("D1→D3", d1, d3, &p1, &p3),
        ("D2→D1", d2, d1, &p2, &p1),
        ("D2→D3", d2, d3, &p2, &p3),
        ("D3→D1", d3, d1, &p3, &p1),
        ("D3→D2", d3, d2, &p3, &p2),
    ];
    for (label, s, t, psrc, ptgt) in pairs {
        match specialization_blockers(s, t, psrc, ptgt) {
            Ok(reasons) => {
                c.expect(&format!("{label} blocked"), !reasons.is_empty());
                for r in reasons {
                    c.note(format!("{label}: {r}"));
                }
            }
            Err(e) => c.fail(label, &e.to_string()),
        }
    }
    c.finish("obstructions")
}

fn random_dual(rng: &mut rand_chacha::ChaCha12Rng, nvars: usize, maxdeg: usize) -> DPoly<Fp> {
    loop {
        let j = rng.gen_range(2..=maxdeg);
        let mut f = Poly::zero();
        for m in monomials_up_to(nvars, j) {
            if m.degree() >= 1 && rng.gen_bool(0.4) {
                let c = nonzero_sample(rng);
                f.add_term(m, c);
            }
        }
        if f.degree() == Some(j) {
            return f;
        }
    }
}

fn nonzero_sample(rng: &mut rand_chacha::ChaCha12Rng) -> Fp {
    loop {
        let c = Fp::sample(&DEFAULT_PRIME, rng).unwrap();
        if !c.is_zero() {
            return c;
        }
    }
}

fn fp_vars(nvars: usize) -> VariableSet {
    VariableSet::parse(&"x,y,z,w"[..2 * nvars - 1]).unwrap()
}

/// Criterion 8: formula vs direct `N`-tables on the corpus and on 100 random
/// dual generators over `F_32003`.
pub fn ntable_equivalence() -> CheckResult {
    let mut c = Check::new();
    for ex in EXAMPLES {
        let (a, _) = try_alg!(c, ex.name);
        c.expect_eq(
            &format!("{} tables agree", ex.name),
            ntable_direct(&a),
            ntable_formula(&q_dimensions(&a)),
        );
    }
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(8);
    let mut agreed = 0usize;
    for t in 0..100 {
        let nvars = rng.gen_range(1..=3);
        let f = random_dual(&mut rng, nvars, 6);
        let a = match ApolarAlgebra::build(fp_vars(nvars), f, DEFAULT_PRIME) {
            Ok(a) => a,
            Err(e) => {
                c.fail(&format!("random {t}"), &e.to_string());
                continue;
            }
        };
        if ntable_direct(&a) == ntable_formula(&q_dimensions(&a)) {
            agreed += 1;
        } else {
            c.fail(&format!("random {t}"), "tables disagree");
        }
    }
    c.expect_eq("random instances agreeing", agreed, 100);
    c.finish("ntable-equivalence")
}

/// Criterion 9: the closed-form counts.
pub fn closed_form_counts() -> CheckResult {
    use crate::formulas::*;
    let mut c = Check::new();
    c.expect_eq("dim Z_T (1,2,3,4,3,2,1)", dim_zt(&[1, 2, 3, 4, 3, 2, 1]).unwrap(), 12);
    c.expect_eq("dim Z_T (1,2,3,3,3,2,1)", dim_zt(&[1, 2, 3, 3, 3, 2, 1]).unwrap(), 12);
    c.expect_eq("dim G_T (1,2,1)", dim_gt(&[1, 2, 1]).unwrap(), 2);
    let ds = theorem_patterns(2);
    c.expect_eq("exotic D1 a=3", exotic_dimension(&ds[0], 3), (7, true));
    c.expect_eq("exotic D2 a=2", exotic_dimension(&ds[1], 2).0, 3);
    c.expect_eq("exotic D3 a=1", exotic_dimension(&ds[2], 1).0, 0);
    let h = [1, 2, 2, 2, 2, 2, 1];
    let m = modification_bound(&h, 3, 1).unwrap();
    let hp: Vec<usize> = h.iter().zip(&m).map(|(a, b)| a + b).collect();
    c.expect_eq("H+M", hp, vec![1, 3, 6, 6, 3, 2, 1]);
    c.expect("pfaffian 5 ≤ 2·2+1", pfaffian_bound_check(5, 2));
    c.finish("closed-form-counts")
}

/// Criterion 10: Hilbert functions of `R/I²` and the conormal module count.
pub fn tangent_space_tables() -> CheckResult {
    let mut c = Check::new();
    let cases: &[(&str, &[usize])] = &[
        ("thm31a", &[1, 3, 6, 10, 12, 12, 9, 9, 6, 4]),
        ("thm31b", &[1, 3, 6, 10, 12, 12, 10, 8, 5, 3, 2]),
        ("thm31c", &[1, 3, 6, 10, 12, 12, 11, 7, 5, 3, 2]),
        ("ex2_28a", &[1, 3, 6, 10, 12, 12, 12, 10, 7, 3]),
        ("ex2_28b", &[1, 3, 6, 10, 12, 12, 12, 8, 6, 4, 2]),
        ("ex2_28c", &[1, 3, 6, 10, 12, 12, 11, 9, 7, 4, 1]),
    ];
    for (name, want) in cases {
        let (a, _) = try_alg!(c, name);
        let sq = a.hf_ideal_square();
        c.expect_eq(&format!("{name} H(R/I²)"), sq.clone(), want.to_vec());
        let conormal: usize = a.hf_conormal().iter().sum();
        c.expect_eq(
            &format!("{name} |H(I/I²)| = 3|H(R/I)|"),
            conormal,
            3 * a.dim(),
        );
    }
    c.finish("tangent-space-tables")
}

/// Criterion 11: randomized property suites over `F_32003`.
pub fn property_suites() -> CheckResult {
    let mut c = Check::new();
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(11);
    let mut mu_checked = 0usize;
    for t in 0..100 {
        let nvars = if t % 2 == 0 { 3 } else { rng.gen_range(1..=3) };
        let f = random_dual(&mut rng, nvars, 6);
        let a = match ApolarAlgebra::build(fp_vars(nvars), f, DEFAULT_PRIME) {
            Ok(a) => a,
            Err(e) => {
                c.fail(&format!("random {t} build"), &e.to_string());
                continue;
            }
        };
        let j = a.socle_degree();
        let label = |s: &str| format!("random {t} {s}");
        // Duality of the filtrations.
        let duality = (0..=j + 1)
            .all(|b| a.loewy(b).unwrap().dim() + a.mpow(b).unwrap().dim() == a.dim());
        if !duality {
            c.fail(&label("duality"), "dim(0:m^b) + dim m^b ≠ dim A");
        }
        // Decomposition invariants.
        let d = q_dimensions(&a);
        if SymmetricDecomposition::from_rows(d.rows.clone()).is_err() {
            c.fail(&label("row symmetry"), "invalid row system");
        }
        if d.hilbert_function() != a.hilbert_function() {
            c.fail(&label("row sums"), "Σ_a H(a) ≠ H(A)");
        }
        let mut partial = vec![0usize; j + 1];
        for row in &d.rows {
            for (i, &v) in row.iter().enumerate() {
                partial[i] += v;
            }
            let mut tr = partial.clone();
            while tr.last() == Some(&0) {
                tr.pop();
            }
            if !crate::sdecomp::is_o_sequence(&tr) {
                c.fail(&label("partial sums"), &format!("{tr:?} not an O-sequence"));
            }
        }
        // Jordan chains at a random linear form.
        let l = crate::jordan::sample_element(&a, SampleMode::Linear, &mut rng).unwrap();
        let pa = jordan_type(&a, &l).unwrap();
        let pg = jordan_type_graded(&a, &l).unwrap();
        let hconj = conjugate_of_sequence(a.hilbert_function()).unwrap();
        if !dominates(&hconj, &pa).unwrap() {
            c.fail(&label("P ≤ H^∨"), &format!("{pa} vs {hconj}"));
        }
        if !dominates(&pa, &pg).unwrap() {
            c.fail(&label("P_A ≥ P_A*"), &format!("{pa} vs {pg}"));
        }
        let mut qtypes = Vec::new();
        let mut q_ok = true;
        for (qa, row) in d.rows.iter().enumerate() {
            if row.iter().all(|&v| v == 0) {
                continue;
            }
            let pq = jordan_type_q(&a, qa, &l).unwrap();
            let bound = contiguous(row).unwrap();
            if !dominates(&bound, &pq).unwrap() {
                q_ok = false;
                c.fail(&label("P_Q ≤ P_c(H(a))"), &format!("a={qa}: {pq} vs {bound}"));
            }
            qtypes.push(pq);
        }
        let qconcat = concatenate(&qtypes);
        if q_ok && !dominates(&pg, &qconcat).unwrap() {
            c.fail(&label("P_A* ≥ ∪ P_Q"), &format!("{pg} vs {qconcat}"));
        }
        // Pfaffian bound in three variables.
        if nvars == 3 {
            let gens = a.minimal_generators();
            let mu = gens.len();
            let nu = gens.iter().map(|g| g.1).min().unwrap();
            if !crate::formulas::pfaffian_bound_check(mu, nu) {
                c.fail(&label("μ ≤ 2ν+1"), &format!("μ={mu}, ν={nu}"));
            }
            mu_checked += 1;
        }
    }
    c.expect(&format!("≥50 three-variable μ/ν checks ({mu_checked})"), mu_checked >= 50);
    // Modification bound with generic-equality subcase.
    let mut equalities = 0usize;
    for t in 0..50 {
        let f = random_dual(&mut rng, 3, 5);
        let a = match ApolarAlgebra::build(fp_vars(3), f.clone(), DEFAULT_PRIME) {
            Ok(a) => a,
            Err(e) => {
                c.fail(&format!("mod-bound {t} build"), &e.to_string());
                continue;
            }
        };
        let j = a.socle_degree();
        let qa = rng.gen_range(1..=j);
        let m = crate::formulas::modification_bound(a.hilbert_function(), 3, qa).unwrap();
        // Dense generic modification of degree j−qa.
        let mut g = Poly::zero();
        for mono in monomials_of_degree(3, j - qa) {
            g.add_term(mono, nonzero_sample(&mut rng));
        }
        let fp2 = f.add(&g);
        let a2 = match ApolarAlgebra::build(fp_vars(3), fp2, DEFAULT_PRIME) {
            Ok(a2) => a2,
            Err(e) => {
                c.fail(&format!("mod-bound {t} rebuild"), &e.to_string());
                continue;
            }
        };
        let h = a.hilbert_function();
        let h2 = a2.hilbert_function();
        let mut bounded = true;
        let mut equal = h2.len() == h.len();
        for i in 0..h.len().max(h2.len()) {
            let lhs = h2.get(i).copied().unwrap_or(0);
            let rhs = h.get(i).copied().unwrap_or(0) + m.get(i).copied().unwrap_or(0);
            if lhs > rhs {
                bounded = false;
            }
            if lhs != rhs {
                equal = false;
            }
        }
        if !bounded {
            c.fail(
                &format!("mod-bound {t}"),
                &format!("H'={h2:?} exceeds H+M (H={h:?}, M={m:?}, a={qa})"),
            );
        }
        if equal {
            equalities += 1;
        }
    }
    c.expect(
        &format!("generic-equality subcase attained ({equalities}/50)"),
        equalities >= 25,
    );
    c.finish("property-suites")
}

/// Criterion 12: known published misprints, pinned as expected mismatches.
pub fn errata() -> CheckResult {
    let mut c = Check::new();
    let ds = theorem_patterns(2);
    // Erratum: the overview figure prints N_{2,3} = (8,7,6); the displayed
    // formula and the direct subspace computation both give (7,6,6).
    let computed: Vec<usize> = ds.iter().map(|d| n_formula(d, 2, 3)).collect();
    c.expect_eq("N_{2,3} computed", computed.clone(), vec![7, 6, 6]);
    c.expect("N_{2,3} differs from printed (8,7,6)", computed != vec![8, 7, 6]);
    for (name, want) in [("thm31a", 7usize), ("thm31b", 6), ("thm31c", 6)] {
        let (a, _) = try_alg!(c, name);
        c.expect_eq(
            &format!("{name} direct N_{{2,3}}"),
            crate::sdecomp::n_direct(&a, 2, 3).unwrap(),
            want,
        );
    }
    // Erratum: a printed conjugate (5,4,3,3) conflicts with its own H.
    let conj = conjugate_of_sequence(&[1, 3, 4, 4, 4, 2, 1]).unwrap();
    c.expect_eq("H^∨ of (1,3,4,4,4,2,1)", conj.clone(), p(&[7, 5, 4, 3]));
    c.expect("differs from printed (5,4,3,3)", conj != p(&[5, 4, 3, 3]));
    // Erratum: the inline modification example says j = 7, but its own data
    // (length-7 Hilbert function, displayed H+M) forces j = 6.
    let h = [1, 2, 2, 2, 2, 2, 1];
    c.expect_eq("socle degree of the example H", h.len() - 1, 6);
    let m = crate::formulas::modification_bound(&h, 3, 1).unwrap();
    let hp: Vec<usize> = h.iter().zip(&m).map(|(a, b)| a + b).collect();
    c.expect_eq("j=6 reading reproduces H+M", hp, vec![1, 3, 6, 6, 3, 2, 1]);
    c.finish("errata")
}

/// Extra coverage: minimal generators, initial ideals, annihilator sanity.
pub fn generators_and_ideals() -> CheckResult {
    let mut c = Check::new();
    let cases: &[(&str, &[usize], &[&str])] = &[
        ("ex1_9", &[2, 3, 3, 3, 4], &["z^2", "x*y^2", "y^2*z"]),
        ("ex2_2", &[3, 3], &["x*y^2", "y^3 - x^4"]),
        ("thm31a", &[2, 2, 3, 4, 4], &["x*z", "y*z", "z^3 - x^3*y^3", "x^4", "y^4"]),
    ];
    for (name, orders, ann_members) in cases {
        let (a, _) = try_alg!(c, name);
        let gens = a.minimal_generators();
        let got: Vec<usize> = gens.iter().map(|g| g.1).collect();
        c.expect_eq(&format!("{name} generator orders"), got, orders.to_vec());
        let polys: Vec<_> = gens.iter().map(|g| g.0.clone()).collect();
        c.expect(&format!("{name} regenerates annihilator"), a.regenerates_annihilator(&polys));
        for text in *ann_members {
            let g = parse_acting::<Rat>(text, a.vars(), &(), Convention::Divided).unwrap();
            c.expect(
                &format!("{name}: {text} ∘ F = 0"),
                contract(&g, a.dual_generator()).is_zero(),
            );
        }
    }
    // Initial ideal of the ex2_27 algebra.
    if let Ok((a, _)) = algebra("ex2_27") {
        let graded = a.assoc_graded();
        let gens: Vec<_> = ["x*z", "y*z", "z^2", "x*y^3", "x^4", "y^4"]
            .iter()
            .map(|t| parse_acting::<Rat>(t, a.vars(), &(), Convention::Divided).unwrap())
            .collect();
        c.expect("ex2_27 I* generators", graded.initial_ideal_equals(&a, &gens));
        c.expect_eq(
            "ex2_27 H^∨",
            conjugate_of_sequence(a.hilbert_function()).unwrap(),
            p(&[6, 4, 3, 1]),
        );
    }
    // C-filtration of the ex2_14 algebra: C(2) is one-dimensional, in
    // degree 1.
    if let Ok((a, _)) = algebra("ex2_14") {
        let cdims = crate::sdecomp::c_filtration_dims(&a);
        c.expect_eq("ex2_14 C(2) dims", cdims[2].clone(), vec![0, 1, 0, 0, 0]);
    }
    // Decomposition concatenations of the ex2_30 row system.
    if let Ok((a, _)) = algebra("ex2_30") {
        let d = q_dimensions(&a);
        let (pd, pcd) = decomposition_partitions(&d);
        c.expect_eq("ex2_30 P(D)", pd, p(&[7, 5, 3, 2, 1, 1, 1]));
        c.expect_eq("ex2_30 P_c(D)", pcd, p(&[7, 5, 3, 1, 1, 1, 1, 1]));
    }
    if let Ok((a, _)) = algebra("ex2_28b") {
        let d = q_dimensions(&a);
        let (pd, pcd) = decomposition_partitions(&d);
        c.expect_eq("ex2_28b P(D2)", pd.clone(), p(&[7, 5, 4, 3]));
        c.expect_eq("ex2_28b P_c(D2)", pcd, pd);
    }
    c.finish("generators-and-ideals")
}

/// Extra coverage: orders of partials and the exotic lift.
pub fn exotic_and_orders() -> CheckResult {
    let mut c = Check::new();
    if let Ok((a, _)) = algebra("ex2_22") {
        // The degree-one partial Z is reached only at order 3 (via y*z^2).
        match a.order_of_partial(&ell(&a, "y*z^2")) {
            Ok(o) => c.expect_eq("ex2_22 order of partial Z", o, 3),
            Err(e) => c.fail("ex2_22", &e.to_string()),
        }
        c.expect("ex2_22 annihilated g errors", a.order_of_partial(&ell(&a, "x^4*z")).is_err());
    }
    if let Ok((a, _)) = algebra("ex2_5") {
        let z = ell(&a, "z");
        match a.order_of_partial(&z) {
            Ok(o) => c.note(format!("ex2_5 order of z∘F = {o}")),
            Err(e) => c.fail("ex2_5", &e.to_string()),
        }
    }
    // The exotic lift of a standard form reproduces the invariants of the
    // direct dual generator.
    let vars = VariableSet::parse("x,y,z").unwrap();
    let f_st =
        parse_dual::<Rat>("X^3*Y^3 - X*Y*Z^2 - Z^3", &vars, &(), Convention::Divided).unwrap();
    let phi = parse_acting::<Rat>("x*y", &vars, &(), Convention::Divided).unwrap();
    match exotic_lift(&f_st, &phi, 2) {
        Ok(lift) => {
            let a_lift = ApolarAlgebra::build(vars.clone(), lift, ()).unwrap();
            let g = parse_dual::<Rat>("X^3*Y^3 + X^2*Y^2*Z", &vars, &(), Convention::Divided)
                .unwrap();
            let a_g = ApolarAlgebra::build(vars.clone(), g, ()).unwrap();
            c.expect_eq(
                "lift HF matches X³Y³+X²Y²Z",
                a_lift.hilbert_function().to_vec(),
                a_g.hilbert_function().to_vec(),
            );
            c.expect_eq(
                "lift decomposition matches",
                q_dimensions(&a_lift).rows,
                q_dimensions(&a_g).rows,
            );
        }
        Err(e) => c.fail("exotic lift", &e.to_string()),
    }
    c.finish("exotic-and-orders")
}

/// Criterion 13: rerunning deterministic entries yields identical output.
pub fn determinism() -> CheckResult {
    let mut c = Check::new();
    let a1 = symmetric_decompositions();
    let a2 = symmetric_decompositions();
    c.expect("decomposition entry reruns identically", a1 == a2);
    let conv = algebra("thm31a").map(|x| x.1).unwrap_or(Convention::Divided);
    match (algebra_fp("thm31a", conv), algebra_fp("thm31a", conv)) {
        (Ok(x), Ok(y)) => {
            let g1 = generic_jordan_type(&x, 5, 99, SampleMode::Linear).unwrap();
            let g2 = generic_jordan_type(&y, 5, 99, SampleMode::Linear).unwrap();
            c.expect("generic sampling reruns identically", g1 == g2);
        }
        _ => c.fail("thm31a rebuild", "build failed"),
    }
    let cfg = crate::search::SearchConfig {
        shape: "X^[3]*Y^[3] + rand(3;Z)".into(),
        trials: 4,
        seed: 5,
        vars: VariableSet::parse("x,y,z").unwrap(),
        prime: DEFAULT_PRIME,
        convention: Convention::Divided,
        jobs: 1,
        samples: 3,
    };
    match crate::search::run_search(&cfg) {
        Ok(r1) => {
            let mut cfg2 = cfg.clone();
            cfg2.jobs = 3;
            match crate::search::run_search(&cfg2) {
                Ok(r2) => c.expect("search independent of --jobs", r1 == r2),
                Err(e) => c.fail("search jobs=3", &e.to_string()),
            }
        }
        Err(e) => c.fail("search", &e.to_string()),
    }
    c.finish("determinism")
}

/// Every corpus entry, in acceptance order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        hilbert_functions(),
        symmetric_decompositions(),
        jordan_types(),
        sl_verdicts(),
        partition_toolkit(),
        enumeration(),
        obstructions(),
        ntable_equivalence(),
        closed_form_counts(),
        tangent_space_tables(),
        property_suites(),
        errata(),
        generators_and_ideals(),
        exotic_and_orders(),
        determinism(),
    ]
}
