//! Closed-form counts and admissibility criteria:
//!
//! - codimension-two Gorenstein test and the `Z_T`/`G_T` parameter-space
//!   dimensions,
//! - the exotic-summand parameter count for a decomposition,
//! - the modification bound `M(H, r, a)` on Hilbert-function growth,
//! - the Pfaffian generator bound `μ ≤ 2ν + 1`,
//! - structural non-realizability tests for decompositions with a single
//!   two-entry second row.

use crate::sdecomp::SymmetricDecomposition;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormulaError {
    #[error("not a codimension-≤2 profile: {0}")]
    NotCodimTwo(String),
    #[error("modification index a={0} out of range 1..={1}")]
    BadModificationIndex(usize, usize),
    #[error("empty Hilbert function")]
    Empty,
}

/// Shape data of a codimension-≤2 Hilbert sequence `T`: the order `d`
/// (first `i` with `T_i < i+1`), the drops `e_i = t_{i−1} − t_i` for
/// `i ≥ d`, and the total length `n = |T|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTwoProfile {
    pub t: Vec<usize>,
    pub d: usize,
    pub e: Vec<usize>,
    pub n: usize,
}

impl CodimTwoProfile {
    pub fn new(t: &[usize]) -> Result<Self, FormulaError> {
        if t.is_empty() || t[0] != 1 {
            return Err(FormulaError::NotCodimTwo(format!("{t:?}")));
        }
        // Order d: T_i = i+1 strictly before it, T_d < d+1.
        let mut d = t.len();
        for (i, &v) in t.iter().enumerate() {
            if v < i + 1 {
                d = i;
                break;
            }
            if v > i + 1 {
                return Err(FormulaError::NotCodimTwo(format!(
                    "entry {v} at index {i} exceeds i+1"
                )));
            }
        }
        // Past the order the sequence must be nonincreasing, ending at 0.
        let mut e = Vec::new();
        for i in d..t.len() + 1 {
            let prev = if i == 0 { 1 } else { t.get(i - 1).copied().unwrap_or(0) };
            let cur = t.get(i).copied().unwrap_or(0);
            if cur > prev {
                return Err(FormulaError::NotCodimTwo(format!(
                    "increase after the order at index {i}"
                )));
            }
            e.push(prev - cur);
        }
        Ok(CodimTwoProfile { t: t.to_vec(), d, e, n: t.iter().sum() })
    }
}

/// Whether `T` is the Hilbert function of some graded Artinian Gorenstein
/// quotient in two variables: every drop past the order is at most 1.
pub fn codim2_gorenstein_ok(t: &[usize]) -> Result<bool, FormulaError> {
    let p = CodimTwoProfile::new(t)?;
    Ok(p.e.iter().all(|&e| e <= 1))
}

/// `dim Z_T = n − d − Σ_{i≥d} e_i(e_i−1)/2`.
pub fn dim_zt(t: &[usize]) -> Result<usize, FormulaError> {
    let p = CodimTwoProfile::new(t)?;
    let corr: usize = p.e.iter().map(|&e| e * e.saturating_sub(1) / 2).sum();
    Ok(p.n - p.d - corr)
}

/// The equivalent form `n − Σ_{i≥d} e_i(e_i+1)/2` (the drops past the order
/// sum to `d`, so the two expressions agree).
pub fn dim_zt_alt(t: &[usize]) -> Result<usize, FormulaError> {
    let p = CodimTwoProfile::new(t)?;
    let corr: usize = p.e.iter().map(|&e| e * (e + 1) / 2).sum();
    Ok(p.n - corr)
}

/// `dim G_T = Σ_{i≥d} (e_i + 1)·e_{i+1}`.
pub fn dim_gt(t: &[usize]) -> Result<usize, FormulaError> {
    let p = CodimTwoProfile::new(t)?;
    let mut total = 0usize;
    for k in 0..p.e.len() {
        let next = p.e.get(k + 1).copied().unwrap_or(0);
        total += (p.e[k] + 1) * next;
    }
    Ok(total)
}

/// Parameter count for the exotic summands of a decomposition at level `a`:
/// `Σ_{b=0}^{a−1} Σ_{u=j−a}^{j−b−2} H(b)_u`.  The boolean reports whether
/// the count's hypotheses `n_{a−1} = 2, n_a = 3` hold, where
/// `n_i = Σ_{u≤i} H(u)_1`; the sum is evaluated either way.
pub fn exotic_dimension(d: &SymmetricDecomposition, a: usize) -> (usize, bool) {
    let j = d.j;
    let mut total = 0usize;
    for b in 0..a {
        if j < a {
            continue;
        }
        let lo = j - a;
        let Some(hi) = (j - b).checked_sub(2) else { continue };
        for u in lo..=hi {
            total += d.rows.get(b).and_then(|row| row.get(u)).copied().unwrap_or(0);
        }
    }
    let n_at = |i: usize| -> usize {
        (0..=i)
            .map(|u| d.rows.get(u).and_then(|row| row.get(1)).copied().unwrap_or(0))
            .sum()
    };
    let hypotheses = a >= 1 && n_at(a - 1) == 2 && n_at(a) == 3;
    (total, hypotheses)
}

/// The symmetrized growth bound for an `a`-modification of a dual generator
/// with Hilbert function `H` in `r` variables: `M_i = r_i − h_i` for
/// `i ≤ (j−a)/2`, mirrored about `(j−a)/2`, zero beyond `j−a`, where `r_i`
/// counts monomials of degree `i`.
pub fn modification_bound(h: &[usize], r: usize, a: usize) -> Result<Vec<usize>, FormulaError> {
    if h.is_empty() {
        return Err(FormulaError::Empty);
    }
    let j = h.len() - 1;
    if a < 1 || a > j {
        return Err(FormulaError::BadModificationIndex(a, j));
    }
    let center2 = j - a; // twice the center of symmetry
    let ri = |i: usize| crate::dpoly::monomials_of_degree(r, i).len();
    let mut m = vec![0usize; j + 1];
    for i in 0..=j {
        if i > center2 {
            break;
        }
        if 2 * i <= center2 {
            m[i] = ri(i).saturating_sub(h[i]);
        } else {
            m[i] = m[center2 - i];
        }
    }
    Ok(m)
}

/// The Pfaffian structure bound for codimension-3 Gorenstein ideals:
/// `μ(I) ≤ 2ν(I) + 1`.
pub fn pfaffian_bound_check(mu: usize, nu: usize) -> bool {
    mu <= 2 * nu + 1
}

/// Verdict of the structural non-realizability tests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Realizability {
    NotRealizable { reason: String },
    Silent,
}

/// Non-realizability tests for decompositions whose only nonzero row past
/// `H(0)` is `H(1) = (0,1,0,…,0,1,0)`: the general degree bound (socle
/// degree ≥ 5 with all generator degrees ≤ j−3), the codimension-2
/// two-generator case `(a,b)`, `a+b = j+2`, `5 ≤ a ≤ b`, and the
/// codimension-3 high-order case `ν ≥ 5`.  `Silent` is not a realizability
/// proof.
pub fn nonrealizable_thm39(
    h0: &[usize],
    j: usize,
    max_gen_degree: usize,
    codim: usize,
    order_nu: usize,
) -> Realizability {
    if j >= 5 && max_gen_degree <= j - 3 {
        return Realizability::NotRealizable {
            reason: format!(
                "socle degree {j} ≥ 5 with all generator degrees ≤ {} = j−3",
                j - 3
            ),
        };
    }
    if codim == 2 && j >= 8 {
        // Two generators of degrees (a,b), a+b = j+2; the criterion fires
        // when 5 ≤ a ≤ b, i.e. the smaller degree is at least 5.
        let a = order_nu;
        let b = (j + 2).saturating_sub(a);
        if a >= 5 && a <= b {
            return Realizability::NotRealizable {
                reason: format!("codim 2 base with generator degrees ({a},{b}), both ≥ 5"),
            };
        }
    }
    if codim == 3 && order_nu >= 5 {
        return Realizability::NotRealizable {
            reason: format!("codim 3 base of order ν = {order_nu} ≥ 5"),
        };
    }
    let _ = h0;
    Realizability::Silent
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codim2_criterion() {
        assert!(codim2_gorenstein_ok(&[1, 2, 3, 4, 3, 2, 1]).unwrap());
        assert!(codim2_gorenstein_ok(&[1, 2, 2, 1]).unwrap());
        assert!(!codim2_gorenstein_ok(&[1, 2, 3, 1]).unwrap());
        assert!(codim2_gorenstein_ok(&[1, 2, 2, 2, 2, 2, 1]).unwrap());
        assert!(CodimTwoProfile::new(&[1, 3, 1]).is_err());
        assert!(CodimTwoProfile::new(&[1, 2, 1, 2]).is_err());
    }

    #[test]
    fn zt_dimensions() {
        assert_eq!(dim_zt(&[1, 2, 3, 4, 3, 2, 1]).unwrap(), 12);
        assert_eq!(dim_zt(&[1, 2, 3, 3, 3, 2, 1]).unwrap(), 12);
        // The two displayed expressions agree on every small profile.
        for t in [
            vec![1, 2, 3, 4, 3, 2, 1],
            vec![1, 2, 3, 3, 3, 2, 1],
            vec![1, 2, 2, 2, 2, 2, 1],
            vec![1, 2, 1],
            vec![1, 1, 1, 1],
            vec![1, 2, 3, 2, 1],
            vec![1, 2, 2, 1],
        ] {
            assert_eq!(dim_zt(&t).unwrap(), dim_zt_alt(&t).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn gt_dimension() {
        assert_eq!(dim_gt(&[1, 2, 1]).unwrap(), 2);
    }

    #[test]
    fn exotic_counts() {
        let d1 = SymmetricDecomposition::from_rows(vec![
            vec![1, 2, 3, 4, 3, 2, 1],
            vec![0, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 1, 0],
            vec![0, 0, 0],
        ])
        .unwrap();
        let d2 = SymmetricDecomposition::from_rows(vec![
            vec![1, 2, 3, 3, 3, 2, 1],
            vec![0, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 1, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0],
        ])
        .unwrap();
        let d3 = SymmetricDecomposition::from_rows(vec![
            vec![1, 2, 2, 2, 2, 2, 1],
            vec![0, 1, 2, 2, 1, 0],
            vec![0, 0, 0, 0, 0],
            vec![0, 0, 0, 0],
            vec![0, 0, 0],
        ])
        .unwrap();
        assert_eq!(exotic_dimension(&d1, 3).0, 7);
        assert_eq!(exotic_dimension(&d2, 2).0, 3);
        assert_eq!(exotic_dimension(&d3, 1).0, 0);
    }

    #[test]
    fn modification_bounds() {
        let h = [1, 2, 2, 2, 2, 2, 1];
        let m = modification_bound(&h, 3, 1).unwrap();
        assert_eq!(m, vec![0, 1, 4, 4, 1, 0, 0]);
        let hp: Vec<usize> = h.iter().zip(&m).map(|(a, b)| a + b).collect();
        assert_eq!(hp, vec![1, 3, 6, 6, 3, 2, 1]);
        // a = j: only index 0 survives and r_0 − h_0 = 0.
        assert_eq!(modification_bound(&h, 3, 6).unwrap(), vec![0; 7]);
        // Compressed up to the center: no room to grow.
        assert_eq!(
            modification_bound(&[1, 3, 6, 6, 3, 1], 3, 1).unwrap()[..3],
            [0, 0, 0]
        );
        assert!(modification_bound(&h, 3, 0).is_err());
        assert!(modification_bound(&h, 3, 7).is_err());
    }

    #[test]
    fn pfaffian_bound() {
        assert!(pfaffian_bound_check(5, 2));
        assert!(pfaffian_bound_check(1, 1));
        assert!(!pfaffian_bound_check(6, 2));
    }

    #[test]
    fn thm39_verdicts() {
        assert_eq!(
            nonrealizable_thm39(&[1, 2, 2, 2, 2, 1], 5, 2, 2, 2),
            Realizability::NotRealizable {
                reason: "socle degree 5 ≥ 5 with all generator degrees ≤ 2 = j−3".into()
            }
        );
        assert!(matches!(
            nonrealizable_thm39(&[1, 2, 3, 4, 5, 4, 3, 2, 1], 8, 7, 2, 5),
            Realizability::NotRealizable { .. }
        ));
        assert_eq!(nonrealizable_thm39(&[1, 2, 2, 1], 4, 3, 2, 2), Realizability::Silent);
        assert!(matches!(
            nonrealizable_thm39(&[1, 3, 3, 3, 3, 3, 1], 6, 6, 3, 5),
            Realizability::NotRealizable { .. }
        ));
    }
}
