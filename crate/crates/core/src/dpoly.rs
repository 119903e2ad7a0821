//! Sparse exact-coefficient polynomials for the two rings in play:
//!
//! - the divided-power dual ring `S = k_DP[X1..Xr]`, whose monomial basis is
//!   `X^[α]` and on which the acting ring operates by contraction, and
//! - the acting ring `R = k{x1..xr}` of (truncated) power series.
//!
//! Both rings share the representation [`Poly`]; which ring a value lives in
//! is a matter of interpretation, fixed by the operation used on it
//! (`ordinary_mul` for `R`, `dp_mul`/`contract` for `S`).  The canonical term
//! order everywhere is graded lexicographic by variable index.

use crate::field::Field;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Hard cap on a single exponent; far above any example in scope.
pub const MAX_EXPONENT: u32 = 64;

/// The ordered set of acting variables; dual variables are the uppercase
/// counterparts at the same indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableSet {
    names: Vec<char>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VarError {
    #[error("variable count must be between 1 and 8, got {0}")]
    BadCount(usize),
    #[error("variable names must be distinct lowercase letters")]
    BadNames,
}

impl VariableSet {
    pub fn new(names: Vec<char>) -> Result<Self, VarError> {
        if names.is_empty() || names.len() > 8 {
            return Err(VarError::BadCount(names.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for &c in &names {
            if !c.is_ascii_lowercase() || !seen.insert(c) {
                return Err(VarError::BadNames);
            }
        }
        Ok(VariableSet { names })
    }

    /// Comma-separated or contiguous spec, e.g. `"x,y,z"` or `"xyz"`.
    pub fn parse(spec: &str) -> Result<Self, VarError> {
        let names: Vec<char> = spec.chars().filter(|c| *c != ',' && !c.is_whitespace()).collect();
        VariableSet::new(names)
    }

    pub fn count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, i: usize) -> char {
        self.names[i]
    }

    pub fn dual_name(&self, i: usize) -> char {
        self.names[i].to_ascii_uppercase()
    }

    /// Index of a lowercase (acting) or uppercase (dual) letter.
    pub fn index_of(&self, c: char) -> Option<usize> {
        let lower = c.to_ascii_lowercase();
        self.names.iter().position(|&n| n == lower)
    }
}

/// Exponent vector; `Ord` is the canonical graded-lex order (degree first,
/// then earlier variables with higher exponent come first).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m
    }

    /// Componentwise difference `self − other` when defined.
    pub fn checked_sub(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.checked_sub(self).is_some()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {
                // Within a degree: lexicographic with x1 > x2 > …, so the
                // monomial with the larger exponent on the earliest differing
                // variable sorts first.
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    match b.cmp(a) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `nvars` variables of total degree exactly `d`, in
/// canonical order.
pub fn monomials_of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
    fn rec(nvars: usize, d: usize, pos: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == nvars {
            cur.push(d as u32);
            out.push(Monomial::new(cur.clone()));
            cur.pop();
            return;
        }
        for e in (0..=d).rev() {
            cur.push(e as u32);
            rec(nvars, d - e, pos + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, d, 0, &mut Vec::new(), &mut out);
    out
}

/// All monomials of degree `0..=d`, degree-ascending canonical order.
pub fn monomials_up_to(nvars: usize, d: usize) -> Vec<Monomial> {
    (0..=d).flat_map(|k| monomials_of_degree(nvars, k)).collect()
}

/// Sparse polynomial over `F`; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

/// Dual-ring reading of [`Poly`]: coefficients of divided-power monomials `X^[α]`.
pub type DPoly<F> = Poly<F>;
/// Acting-ring reading of [`Poly`]: ordinary monomials `x^α`.
pub type RPoly<F> = Poly<F>;

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn monomial(m: Monomial, c: F) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(Monomial::var(nvars, i), F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Poly::monomial(Monomial::one(nvars), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Max term degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Min term degree; `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    e.insert(v);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), -a.clone())).collect(),
        }
    }

    /// Degree-`d` homogeneous summand.
    pub fn degree_component(&self, d: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Ordinary commutative product (the acting ring `R`): exponent addition,
    /// coefficient product, no binomial factors.
    pub fn ordinary_mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Divided-power ring product: `X^[a]·X^[b] = C(a+b,a)·X^[a+b]` per
    /// variable, extended bilinearly.
    pub fn dp_mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut coeff = c1.clone() * c2.clone();
                for (a, b) in m1.exps().iter().zip(m2.exps()) {
                    if *a > 0 && *b > 0 {
                        coeff = coeff * F::from_int(binomial((*a + *b) as i64, *a as i64));
                    }
                }
                out.add_term(m1.mul(m2), coeff);
            }
        }
        out
    }

    /// Truncation to degree ≤ `d`.
    pub fn truncate(&self, d: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coordinates with respect to an indexed monomial list.
    pub fn to_vec(&self, index: &std::collections::HashMap<Monomial, usize>, dim: usize) -> Vec<F> {
        let mut v = vec![F::zero(); dim];
        for (m, c) in &self.terms {
            v[*index.get(m).expect("monomial outside coordinate range")] = c.clone();
        }
        v
    }

    pub fn from_vec(coords: &[F], monos: &[Monomial]) -> Self {
        let mut p = Poly::zero();
        for (c, m) in coords.iter().zip(monos) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// Renders the polynomial in the expression grammar; `dual` selects
    /// uppercase names and `^[k]` powers.  Deterministic graded-lex term order.
    pub fn format(&self, vars: &VariableSet, dual: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // Display order: degree descending, canonical order within a degree.
        let mut items: Vec<(&Monomial, &F)> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| {
            b.degree().cmp(&a.degree()).then_with(|| a.cmp(b))
        });
        let mut out = String::new();
        for (i, (m, c)) in items.into_iter().enumerate() {
            let mut factors: Vec<String> = Vec::new();
            let coeff = format!("{c}");
            let negated = coeff.strip_prefix('-');
            let body = negated.unwrap_or(&coeff);
            if i == 0 {
                if negated.is_some() {
                    out.push('-');
                }
            } else {
                out.push_str(if negated.is_some() { " - " } else { " + " });
            }
            if body != "1" || m.degree() == 0 {
                factors.push(body.to_string());
            }
            for (vi, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if dual { vars.dual_name(vi) } else { vars.name(vi) };
                match (e, dual) {
                    (1, _) => factors.push(name.to_string()),
                    (_, true) => factors.push(format!("{name}^[{e}]")),
                    (_, false) => factors.push(format!("{name}^{e}")),
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

/// Contraction action of `R` on `S`: on monomials,
/// `x^β ∘ X^[α] = X^[α−β]` when `α ≥ β` componentwise and `0` otherwise,
/// extended bilinearly.  Coefficient-free and characteristic-free.
pub fn contract<F: Field>(h: &RPoly<F>, f: &DPoly<F>) -> DPoly<F> {
    let mut out = Poly::zero();
    for (mh, ch) in h.terms() {
        for (mf, cf) in f.terms() {
            if let Some(diff) = mf.checked_sub(mh) {
                out.add_term(diff, ch.clone() * cf.clone());
            }
        }
    }
    out
}

/// `(Σ c_i X_i)^[k] = Σ_{|α|=k} (Π c_i^{α_i}) X^[α]` — the divided power of a
/// linear form carries no multinomial coefficients.
pub fn dp_power_of_linear<F: Field>(coeffs: &[F], k: usize) -> DPoly<F> {
    let nvars = coeffs.len();
    let mut out = Poly::zero();
    for m in monomials_of_degree(nvars, k) {
        let mut c = F::one();
        let mut nonzero = true;
        for (ci, &e) in coeffs.iter().zip(m.exps()) {
            for _ in 0..e {
                c = c * ci.clone();
            }
            if e > 0 && ci.is_zero() {
                nonzero = false;
                break;
            }
        }
        if nonzero {
            out.add_term(m, c);
        }
    }
    out
}

/// Exact binomial coefficient (fits easily in `i64` at the degrees in scope).
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * ((n - i) as i128) / ((i + 1) as i128);
    }
    i64::try_from(acc).expect("binomial overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rat};

    fn vars3() -> VariableSet {
        VariableSet::parse("x,y,z").unwrap()
    }

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn monomial_order_graded_lex() {
        // degree ascending; within a degree x² < xy < y².
        let x2 = mono(&[2, 0]);
        let xy = mono(&[1, 1]);
        let y2 = mono(&[0, 2]);
        let x = mono(&[1, 0]);
        assert!(x < x2 && x2 < xy && xy < y2);
        assert_eq!(monomials_of_degree(2, 2), vec![x2, xy, y2]);
        assert_eq!(monomials_up_to(2, 1).len(), 3);
    }

    #[test]
    fn contraction_rule() {
        // z² ∘ (X³Y³ + Z³) = Z, coefficient-free.
        let f: DPoly<Rat> = Poly::monomial(mono(&[3, 3, 0]), rat(1))
            .add(&Poly::monomial(mono(&[0, 0, 3]), rat(1)));
        let h = Poly::monomial(mono(&[0, 0, 2]), rat(1));
        assert_eq!(contract(&h, &f), Poly::monomial(mono(&[0, 0, 1]), rat(1)));
        // 1 ∘ F = F.
        let one = Poly::constant(3, rat(1));
        assert_eq!(contract(&one, &f), f);
    }

    #[test]
    fn contraction_multiplicative() {
        // (y³ − x⁴) ∘ (X^[4]Y + Y^[4]) = 0.
        let f: DPoly<Rat> = Poly::monomial(mono(&[4, 1]), rat(1))
            .add(&Poly::monomial(mono(&[0, 4]), rat(1)));
        let h = Poly::monomial(mono(&[0, 3]), rat(1))
            .add(&Poly::monomial(mono(&[4, 0]), rat(-1)));
        assert!(contract(&h, &f).is_zero());
    }

    #[test]
    fn ordinary_product() {
        let x: RPoly<Rat> = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        assert_eq!(x.ordinary_mul(&y), Poly::monomial(mono(&[1, 1]), rat(1)));
        let s = x.add(&y);
        let sq = s.ordinary_mul(&s);
        assert_eq!(sq.coeff(&mono(&[1, 1])), rat(2));
        assert_eq!(sq.coeff(&mono(&[2, 0])), rat(1));
    }

    #[test]
    fn dp_product_binomials() {
        let x2: DPoly<Rat> = Poly::monomial(mono(&[2]), rat(1));
        let prod = x2.dp_mul(&x2);
        assert_eq!(prod, Poly::monomial(mono(&[4]), rat(6)));
    }

    #[test]
    fn dp_power_of_linear_cases() {
        let l = [rat(1), rat(1)];
        let p2 = dp_power_of_linear(&l, 2);
        // (X+Y)^[2] = X^[2] + XY + Y^[2].
        assert_eq!(p2.num_terms(), 3);
        assert!(p2.terms().all(|(_, c)| *c == rat(1)));
        // x ∘ (X+Y)^[5] = (X+Y)^[4].
        let p5 = dp_power_of_linear(&l, 5);
        let x = Poly::var(2, 0);
        assert_eq!(contract(&x, &p5), dp_power_of_linear(&l, 4));
        assert_eq!(dp_power_of_linear(&[rat(1)], 3), Poly::monomial(mono(&[3]), rat(1)));
    }

    #[test]
    fn degree_components() {
        let f: DPoly<Rat> = Poly::monomial(mono(&[4, 4, 0]), rat(1))
            .add(&Poly::monomial(mono(&[3, 3, 1]), rat(1)))
            .add(&Poly::monomial(mono(&[0, 0, 5]), rat(1)));
        let degs: Vec<usize> = (0..=8).filter(|&d| !f.degree_component(d).is_zero()).collect();
        assert_eq!(degs, vec![5, 7, 8]);
        assert!(f.degree_component(6).is_zero());
        assert_eq!(f.degree_component(8), Poly::monomial(mono(&[4, 4, 0]), rat(1)));
    }

    #[test]
    fn format_round_readable() {
        let vars = vars3();
        let f: DPoly<Rat> = Poly::monomial(mono(&[4, 1, 0]), rat(1))
            .add(&Poly::monomial(mono(&[0, 4, 0]), rat(-1)));
        assert_eq!(f.format(&vars, true), "X^[4]*Y - Y^[4]");
        let h: RPoly<Rat> = Poly::monomial(mono(&[0, 3, 0]), rat(1))
            .add(&Poly::monomial(mono(&[4, 0, 0]), rat(-1)));
        assert_eq!(h.format(&vars, false), "-x^4 + y^3");
        assert_eq!(Poly::<Rat>::zero().format(&vars, true), "0");
    }
}
