//! Exact dense linear algebra: matrices, reduced row-echelon subspaces, and
//! the sum/intersection/kernel toolkit behind every filtration computation.
//!
//! - [`DenseMatrix`] — row-major matrix over any [`Field`].
//! - [`Subspace`] — a subspace of `F^n` held in canonical RREF form.
//! - [`RowSpace`] — an incremental sparse echelon accumulator for large,
//!   mostly-redundant spanning sets (used by the `I²` computation).

use crate::field::{Field, FieldError};
use rand::Rng;
use std::fmt::Debug;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("matrix shape mismatch")]
    ShapeMismatch,
    #[error("quotient_dim: second space is not contained in the first")]
    NotContained,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix<F> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<F>,
}

impl<F: Field> DenseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r);
        }
        DenseMatrix { rows: n, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for j in 0..self.cols {
                    if !v[j].is_zero() && !self.get(i, j).is_zero() {
                        acc = acc + self.get(i, j).clone() * v[j].clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.clone() + b.clone())
            .collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F) -> Self {
        let data = self.data.iter().map(|a| a.clone() * c.clone()).collect();
        DenseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn rank(&self) -> usize {
        rref(self).0.dim()
    }
}

/// In-place Gauss–Jordan elimination; returns the pivot columns.
/// Pivot choice is the first nonzero entry in column order, which is exact
/// and deterministic.
fn echelonize<F: Field>(rows: &mut Vec<Vec<F>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero entry must be invertible");
        for e in rows[r].iter_mut() {
            *e = e.clone() * inv.clone();
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..cols {
                    let v = rows[i][j].clone() - f.clone() * rows[r][j].clone();
                    rows[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A subspace of `F^ambient` in canonical reduced row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: DenseMatrix::<F>::identity(ambient).row_vecs(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<F>>) -> Self {
        let mut rows = vectors;
        for v in &rows {
            assert_eq!(v.len(), ambient);
        }
        let pivots = echelonize(&mut rows, ambient);
        Subspace { ambient, basis: rows, pivots }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo this subspace: pivot
    /// coordinates are eliminated, leaving support on non-pivot columns only.
    pub fn reduce(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for j in p..self.ambient {
                    if !row[j].is_zero() {
                        w[j] = w[j].clone() - f.clone() * row[j].clone();
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.reduce(v).iter().all(|e| e.is_zero())
    }

    pub fn contains_space(&self, other: &Subspace<F>) -> bool {
        other.basis.iter().all(|r| self.contains(r))
    }
}

/// Row space of `m` in canonical echelon form, with its rank.
pub fn rref<F: Field>(m: &DenseMatrix<F>) -> (Subspace<F>, usize) {
    let s = Subspace::from_vectors(m.cols, m.row_vecs());
    let rank = s.dim();
    (s, rank)
}

/// Smallest subspace containing both arguments.
pub fn sum<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    if u.ambient != v.ambient {
        return Err(LinalgError::AmbientMismatch(u.ambient, v.ambient));
    }
    let mut rows = u.basis.clone();
    rows.extend(v.basis.clone());
    Ok(Subspace::from_vectors(u.ambient, rows))
}

/// Intersection via the Zassenhaus double-width echelon: rows `(u|u)` for a
/// basis of `u` and `(v|0)` for a basis of `v`; after elimination the right
/// halves of rows whose left half vanished span `u ∩ v`.
pub fn intersect<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    if u.ambient != v.ambient {
        return Err(LinalgError::AmbientMismatch(u.ambient, v.ambient));
    }
    let n = u.ambient;
    let mut rows: Vec<Vec<F>> = Vec::with_capacity(u.dim() + v.dim());
    for r in &u.basis {
        let mut w = r.clone();
        w.extend(r.clone());
        rows.push(w);
    }
    for r in &v.basis {
        let mut w = r.clone();
        w.extend(vec![F::zero(); n]);
        rows.push(w);
    }
    echelonize(&mut rows, 2 * n);
    let inter: Vec<Vec<F>> = rows
        .into_iter()
        .filter(|r| r[..n].iter().all(|e| e.is_zero()))
        .map(|r| r[n..].to_vec())
        .collect();
    Ok(Subspace::from_vectors(n, inter))
}

/// `dim u − dim v`, insisting that `v ⊆ u`.
pub fn quotient_dim<F: Field>(u: &Subspace<F>, v: &Subspace<F>) -> Result<usize, LinalgError> {
    if u.ambient != v.ambient {
        return Err(LinalgError::AmbientMismatch(u.ambient, v.ambient));
    }
    if !u.contains_space(v) {
        return Err(LinalgError::NotContained);
    }
    Ok(u.dim() - v.dim())
}

/// Null space `{x : Mx = 0}`.
pub fn kernel<F: Field>(m: &DenseMatrix<F>) -> Subspace<F> {
    let mut rows = m.row_vecs();
    let pivots = echelonize(&mut rows, m.cols);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![F::zero(); m.cols];
        v[free] = F::one();
        for (row, &p) in rows.iter().zip(&pivots) {
            if !row[free].is_zero() {
                v[p] = -row[free].clone();
            }
        }
        basis.push(v);
    }
    Subspace::from_vectors(m.cols, basis)
}

/// One exact solution of `Mx = b`, or `None` when `b` is outside the column
/// space.
pub fn solve<F: Field>(m: &DenseMatrix<F>, b: &[F]) -> Option<Vec<F>> {
    assert_eq!(b.len(), m.rows);
    let mut rows: Vec<Vec<F>> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i).to_vec();
            r.push(b[i].clone());
            r
        })
        .collect();
    let pivots = echelonize(&mut rows, m.cols + 1);
    if pivots.contains(&m.cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![F::zero(); m.cols];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[m.cols].clone();
    }
    Some(x)
}

/// A vector with entries drawn uniformly from a finite field.
pub fn random_vector<F: Field, R: Rng + ?Sized>(
    ctx: &F::Ctx,
    dim: usize,
    rng: &mut R,
) -> Result<Vec<F>, FieldError> {
    (0..dim).map(|_| F::sample(ctx, rng)).collect()
}

/// Incremental sparse row-echelon accumulator.
///
/// Rows are stored sparsely, keyed by pivot column, each normalized to pivot
/// coefficient 1 but *not* back-substituted against each other.  Suited to
/// feeding in thousands of mostly-dependent spanning vectors where only the
/// pivot-column profile (and the dimension) is needed afterwards.
#[derive(Debug, Clone)]
pub struct RowSpace<F> {
    ambient: usize,
    rows: std::collections::BTreeMap<usize, Vec<(usize, F)>>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(ambient: usize) -> Self {
        RowSpace { ambient, rows: Default::default() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Reduces `v` (sparse, sorted by column) against the accumulated rows and
    /// inserts the remainder if nonzero.  Returns `true` when the dimension
    /// grew.
    pub fn insert(&mut self, v: Vec<(usize, F)>) -> bool {
        let mut v = v;
        loop {
            v.retain(|(_, c)| !c.is_zero());
            let Some(&(lead, ref coeff)) = v.first() else {
                return false;
            };
            debug_assert!(lead < self.ambient);
            match self.rows.get(&lead) {
                None => {
                    let inv = coeff.inv().expect("nonzero leading coefficient");
                    for (_, c) in v.iter_mut() {
                        *c = c.clone() * inv.clone();
                    }
                    self.rows.insert(lead, v);
                    return true;
                }
                Some(row) => {
                    let f = coeff.clone();
                    v = sparse_axpy(&v, row, &f);
                }
            }
        }
    }

    pub fn contains(&self, v: &[(usize, F)]) -> bool {
        let mut v: Vec<(usize, F)> = v.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
        loop {
            let Some(&(lead, ref coeff)) = v.first() else {
                return true;
            };
            match self.rows.get(&lead) {
                None => return false,
                Some(row) => {
                    let f = coeff.clone();
                    v = sparse_axpy(&v, row, &f);
                }
            }
        }
    }
}

/// `v − f·row` on sparse sorted vectors, dropping zeros.
fn sparse_axpy<F: Field>(v: &[(usize, F)], row: &[(usize, F)], f: &F) -> Vec<(usize, F)> {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut i, mut k) = (0, 0);
    while i < v.len() || k < row.len() {
        let next = match (v.get(i), row.get(k)) {
            (Some(&(ci, ref a)), Some(&(ck, ref b))) => {
                if ci < ck {
                    i += 1;
                    (ci, a.clone())
                } else if ck < ci {
                    k += 1;
                    (ck, -(f.clone() * b.clone()))
                } else {
                    i += 1;
                    k += 1;
                    (ci, a.clone() - f.clone() * b.clone())
                }
            }
            (Some(&(ci, ref a)), None) => {
                i += 1;
                (ci, a.clone())
            }
            (None, Some(&(ck, ref b))) => {
                k += 1;
                (ck, -(f.clone() * b.clone()))
            }
            (None, None) => break,
        };
        if !next.1.is_zero() {
            out.push(next);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::field::{rat, Fp, Rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn qmat(rows: Vec<Vec<i64>>, cols: usize) -> DenseMatrix<Rat> {
        DenseMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn rref_identity_full_rank() {
        let (s, rank) = rref(&qmat(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], 3));
        assert_eq!(rank, 3);
        assert_eq!(s, Subspace::full(3));
    }

    #[test]
    fn rref_zero_matrix() {
        let (s, rank) = rref(&DenseMatrix::<Rat>::zero(2, 4));
        assert_eq!(rank, 0);
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn rref_dependent_rows() {
        let (s, rank) = rref(&qmat(vec![vec![1, 2], vec![2, 4]], 2));
        assert_eq!(rank, 1);
        assert_eq!(s.basis(), &[vec![rat(1), rat(2)]]);
    }

    #[test]
    fn rref_idempotent() {
        let m = qmat(vec![vec![2, 4, 1], vec![1, 3, 0], vec![3, 7, 1]], 3);
        let (s1, _) = rref(&m);
        let again = Subspace::from_vectors(3, s1.basis().to_vec());
        assert_eq!(s1, again);
    }

    #[test]
    fn sum_and_intersect_hand_cases() {
        let u = Subspace::from_vectors(3, vec![vec![rat(1), rat(1), rat(0)]]);
        let v = Subspace::from_vectors(3, vec![vec![rat(1), rat(-1), rat(0)]]);
        let s = sum(&u, &v).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[rat(1), rat(0), rat(0)]));
        assert!(s.contains(&[rat(0), rat(1), rat(0)]));

        let a = Subspace::from_vectors(2, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
        let b = Subspace::from_vectors(2, vec![vec![rat(1), rat(1)]]);
        let i = intersect(&a, &b).unwrap();
        assert_eq!(i.basis(), &[vec![rat(1), rat(1)]]);

        let e1 = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)]]);
        let e2 = Subspace::from_vectors(3, vec![vec![rat(0), rat(1), rat(0)]]);
        assert_eq!(intersect(&e1, &e2).unwrap().dim(), 0);
        assert_eq!(sum(&e1, &Subspace::zero(3)).unwrap(), e1);
    }

    #[test]
    fn kernel_cases() {
        assert_eq!(kernel(&DenseMatrix::<Rat>::identity(4)).dim(), 0);
        let k = kernel(&qmat(vec![vec![1, 1], vec![1, 1]], 2));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[rat(1), rat(-1)]));
    }

    #[test]
    fn solve_exact_or_none() {
        let m = qmat(vec![vec![1, 2], vec![3, 4]], 2);
        let x = solve(&m, &[rat(5), rat(11)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(5), rat(11)]);
        let sing = qmat(vec![vec![1, 1], vec![1, 1]], 2);
        assert!(solve(&sing, &[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn quotient_dim_checks_containment() {
        let u = Subspace::from_vectors(3, vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]]);
        let v = Subspace::from_vectors(3, vec![vec![rat(1), rat(1), rat(0)]]);
        assert_eq!(quotient_dim(&u, &v).unwrap(), 1);
        assert_eq!(quotient_dim(&u, &u).unwrap(), 0);
        let w = Subspace::from_vectors(3, vec![vec![rat(0), rat(0), rat(1)]]);
        assert_eq!(quotient_dim(&u, &w), Err(LinalgError::NotContained));
    }

    #[test]
    fn modular_law_random_subspaces_both_fields() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        // Prime field: random subspaces of F_p^6.
        for _ in 0..200 {
            let vecs: Vec<Vec<Fp>> = (0..3)
                .map(|_| random_vector::<Fp, _>(&101, 6, &mut rng).unwrap())
                .collect();
            let u = Subspace::from_vectors(6, vecs[..2].to_vec());
            let v = Subspace::from_vectors(6, vecs[1..].to_vec());
            let s = sum(&u, &v).unwrap();
            let i = intersect(&u, &v).unwrap();
            assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        }
        // Rationals: small random integer entries.
        for _ in 0..200 {
            let vecs: Vec<Vec<Rat>> = (0..4)
                .map(|_| (0..5).map(|_| rat(rng.gen_range(-3i64..=3))).collect())
                .collect();
            let u = Subspace::from_vectors(5, vecs[..2].to_vec());
            let v = Subspace::from_vectors(5, vecs[2..].to_vec());
            let s = sum(&u, &v).unwrap();
            let i = intersect(&u, &v).unwrap();
            assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        }
    }

    #[test]
    fn random_vector_determinism_and_uniformity() {
        let mut r1 = ChaCha12Rng::seed_from_u64(42);
        let mut r2 = ChaCha12Rng::seed_from_u64(42);
        let a = random_vector::<Fp, _>(&32003, 8, &mut r1).unwrap();
        let b = random_vector::<Fp, _>(&32003, 8, &mut r2).unwrap();
        assert_eq!(a, b);
        assert!(random_vector::<Rat, _>(&(), 3, &mut r1).is_err());
        assert!(random_vector::<Fp, _>(&32003, 0, &mut r1).unwrap().is_empty());

        // Chi-square-ish sanity: each residue of F_5 within 5σ of 2000.
        let mut counts = [0usize; 5];
        for _ in 0..10000 {
            let v = random_vector::<Fp, _>(&5, 1, &mut r1).unwrap();
            counts[v[0].value() as usize] += 1;
        }
        let sigma = (10000.0f64 * 0.2 * 0.8).sqrt();
        for &c in &counts {
            assert!((c as f64 - 2000.0).abs() < 5.0 * sigma, "counts {counts:?}");
        }
    }

    #[test]
    fn rowspace_matches_dense_rank() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..50 {
            let vecs: Vec<Vec<Fp>> = (0..6)
                .map(|_| random_vector::<Fp, _>(&101, 5, &mut rng).unwrap())
                .collect();
            let dense = Subspace::from_vectors(5, vecs.clone());
            let mut rs = RowSpace::new(5);
            for v in &vecs {
                let sv: Vec<(usize, Fp)> =
                    v.iter().cloned().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                rs.insert(sv);
            }
            assert_eq!(rs.dim(), dense.dim());
            assert_eq!(rs.pivots(), dense.pivot_cols());
        }
    }

    use rand::Rng;
}
