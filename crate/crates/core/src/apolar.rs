//! The finite-dimensional algebra `A = R/Ann F` attached to a dual generator.
//!
//! `Ann F` is the kernel of `h ↦ h∘F` on `R_{≤j+1}` (`j = deg F`), which
//! together with `m^{j+2}` generates the full annihilator ideal.  The algebra
//! is modeled by a monomial basis (the non-pivot complement of the
//! annihilator under graded-lex order) plus one multiplication matrix per
//! variable, so that membership in `m^i` and in `(0:m^b)` both reduce to
//! subspace arithmetic in a single coordinate system.  Filtration caches are
//! populated at build time; a built algebra is immutable.

use crate::dpoly::{contract, monomials_of_degree, monomials_up_to, DPoly, Monomial, Poly, RPoly, VariableSet};
use crate::field::Field;
use crate::linalg::{kernel, rref, sum, DenseMatrix, LinalgError, RowSpace, Subspace};
use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApolarError {
    #[error("the zero polynomial has no apolar algebra")]
    ZeroGenerator,
    #[error("field characteristic must exceed twice the socle degree")]
    CharacteristicTooSmall,
    #[error("filtration index {0} out of range (max {1})")]
    IndexOutOfRange(usize, usize),
    #[error("multiplication element has a nonzero constant term")]
    ConstantTerm,
    #[error("g∘F = 0: not a partial")]
    NotAPartial,
    #[error("exotic lift: {0}")]
    BadExoticInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `A = R/Ann F` with basis, multiplication matrices, and filtration caches.
#[derive(Debug, Clone)]
pub struct ApolarAlgebra<F: Field> {
    vars: VariableSet,
    ctx: F::Ctx,
    f: DPoly<F>,
    j: usize,
    /// Monomials of `R` of degree ≤ j+1: the ambient coordinates in which the
    /// annihilator lives.
    rmonos: Vec<Monomial>,
    rindex: HashMap<Monomial, usize>,
    ann: Subspace<F>,
    basis: Vec<Monomial>,
    mult: Vec<DenseMatrix<F>>,
    hf: Vec<usize>,
    mpow_cache: Vec<Subspace<F>>,
    loewy_cache: Vec<Subspace<F>>,
}

impl<F: Field> ApolarAlgebra<F> {
    pub fn build(vars: VariableSet, f: DPoly<F>, ctx: F::Ctx) -> Result<Self, ApolarError> {
        if f.is_zero() {
            return Err(ApolarError::ZeroGenerator);
        }
        // Normalize coefficients through the context (constructions that used
        // context-free literals would otherwise escape modular reduction).
        let one = F::from_ratio(&ctx, 1, 1).map_err(LinalgError::Field)?;
        let f = f.scale(&one);
        if f.is_zero() {
            return Err(ApolarError::ZeroGenerator);
        }
        let j = f.degree().unwrap();
        // Characteristic check: p > 2j, probed through bound field elements.
        {
            let mut acc = one.clone();
            for _ in 1..=2 * j {
                acc = acc + one.clone();
                if acc.is_zero() {
                    return Err(ApolarError::CharacteristicTooSmall);
                }
            }
        }
        let r = vars.count();
        let rmonos = monomials_up_to(r, j + 1);
        let rindex: HashMap<Monomial, usize> =
            rmonos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let smonos = monomials_up_to(r, j);
        let sindex: HashMap<Monomial, usize> =
            smonos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        // Ann F ∩ R_{≤j+1} = left kernel of the contraction matrix.
        let rows: Vec<Vec<F>> = rmonos
            .iter()
            .map(|m| {
                let h = Poly::monomial(m.clone(), F::one());
                contract(&h, &f).to_vec(&sindex, smonos.len())
            })
            .collect();
        let contraction = DenseMatrix::from_rows(rows, smonos.len());
        let ann = kernel(&contraction.transpose());

        let pivot_set: std::collections::HashSet<usize> = ann.pivot_cols().iter().copied().collect();
        let basis: Vec<Monomial> = (0..rmonos.len())
            .filter(|i| !pivot_set.contains(i))
            .map(|i| rmonos[i].clone())
            .collect();
        let dim = basis.len();

        let mut alg = ApolarAlgebra {
            vars,
            ctx,
            f,
            j,
            rmonos,
            rindex,
            ann,
            basis,
            mult: Vec::new(),
            hf: Vec::new(),
            mpow_cache: Vec::new(),
            loewy_cache: Vec::new(),
        };

        // Cross-check: dim A = dim(R∘F), the rank of the contraction map.
        debug_assert_eq!(dim, rref(&contraction).1);

        // Multiplication matrices.
        for v in 0..r {
            let mut m = DenseMatrix::zero(dim, dim);
            for (b, mono) in alg.basis.iter().enumerate() {
                let col = alg.reduce_monomial(&mono.mul_var(v));
                for (i, c) in col.into_iter().enumerate() {
                    if !c.is_zero() {
                        m.set(i, b, c);
                    }
                }
            }
            alg.mult.push(m);
        }

        // m-adic chain, descending.
        let mut mpow_cache = vec![Subspace::zero(dim); j + 3];
        for i in (0..=j).rev() {
            let mut rows = mpow_cache[i + 1].basis().to_vec();
            for w in monomials_of_degree(r, i) {
                rows.push(alg.reduce_monomial(&w));
            }
            mpow_cache[i] = Subspace::from_vectors(dim, rows);
        }
        alg.mpow_cache = mpow_cache;

        // Loewy chain (0:m^b): common kernel of all degree-b monomial actions.
        let mut loewy_cache = vec![Subspace::zero(dim)];
        let mut deg_mats: HashMap<Monomial, DenseMatrix<F>> = HashMap::new();
        deg_mats.insert(Monomial::one(r), DenseMatrix::identity(dim));
        for b in 1..=j + 1 {
            let mut next: HashMap<Monomial, DenseMatrix<F>> = HashMap::new();
            for w in monomials_of_degree(r, b) {
                let v = w.exps().iter().position(|&e| e > 0).unwrap();
                let mut parent = w.clone();
                parent = parent.checked_sub(&Monomial::var(r, v)).unwrap();
                let mat = alg.mult[v].mat_mul(&deg_mats[&parent]);
                next.insert(w, mat);
            }
            let mut stacked: Vec<Vec<F>> = Vec::new();
            let mut words: Vec<&Monomial> = next.keys().collect();
            words.sort();
            for w in words {
                stacked.extend(next[w].row_vecs());
            }
            let stacked = DenseMatrix::from_rows(stacked, dim);
            loewy_cache.push(kernel(&stacked));
            deg_mats = next;
        }
        alg.loewy_cache = loewy_cache;

        alg.hf = (0..=j)
            .map(|i| alg.mpow_cache[i].dim() - alg.mpow_cache[i + 1].dim())
            .collect();
        debug_assert_eq!(alg.hf[0], 1);
        debug_assert_eq!(alg.hf.iter().sum::<usize>(), dim);
        Ok(alg)
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn dual_generator(&self) -> &DPoly<F> {
        &self.f
    }

    pub fn socle_degree(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn hilbert_function(&self) -> &[usize] {
        &self.hf
    }

    /// The annihilator `Ann F ∩ R_{≤j+1}` as a subspace of the monomial
    /// coordinates of `R_{≤j+1}`.
    pub fn ann_subspace(&self) -> &Subspace<F> {
        &self.ann
    }

    pub fn ambient_monomials(&self) -> &[Monomial] {
        &self.rmonos
    }

    /// Coordinates in the algebra basis of (the class of) a monomial.
    pub fn reduce_monomial(&self, m: &Monomial) -> Vec<F> {
        let dim = self.basis.len();
        if m.degree() > self.j + 1 {
            return vec![F::zero(); dim];
        }
        let mut amb = vec![F::zero(); self.rmonos.len()];
        amb[self.rindex[m]] = F::one();
        self.project(&self.ann.reduce(&amb))
    }

    /// Coordinates of the class of an acting-ring polynomial.
    pub fn reduce_rpoly(&self, h: &RPoly<F>) -> Vec<F> {
        let mut amb = vec![F::zero(); self.rmonos.len()];
        for (m, c) in h.terms() {
            if m.degree() <= self.j + 1 {
                amb[self.rindex[m]] = c.clone();
            }
        }
        self.project(&self.ann.reduce(&amb))
    }

    /// Extracts basis coordinates from an ambient vector supported on
    /// non-pivot columns.
    fn project(&self, reduced: &[F]) -> Vec<F> {
        self.basis
            .iter()
            .map(|m| reduced[self.rindex[m]].clone())
            .collect()
    }

    /// `m^i · A` as a subspace of `A`.
    pub fn mpow(&self, i: usize) -> Result<&Subspace<F>, ApolarError> {
        self.mpow_cache
            .get(i)
            .ok_or(ApolarError::IndexOutOfRange(i, self.j + 2))
    }

    /// `(0 : m^b)` as a subspace of `A`.
    pub fn loewy(&self, b: usize) -> Result<&Subspace<F>, ApolarError> {
        self.loewy_cache
            .get(b)
            .ok_or(ApolarError::IndexOutOfRange(b, self.j + 1))
    }

    /// `(0 : m^b)` with the index clamped into `[0, j+1]` (negative values
    /// mean the zero ideal); used by the `Q(a)` subquotient arithmetic where
    /// the index `j+1−a−i` can run off both ends.
    pub fn loewy_clamped(&self, b: isize) -> &Subspace<F> {
        let b = b.clamp(0, (self.j + 1) as isize) as usize;
        &self.loewy_cache[b]
    }

    /// `m^i · A` with the index clamped into `[0, j+2]`.
    pub fn mpow_clamped(&self, i: isize) -> &Subspace<F> {
        let i = i.clamp(0, (self.j + 2) as isize) as usize;
        &self.mpow_cache[i]
    }

    /// Matrix of multiplication by `ℓ ∈ m` on the basis of `A`.
    pub fn element_matrix(&self, l: &RPoly<F>) -> Result<DenseMatrix<F>, ApolarError> {
        let r = self.vars.count();
        if !l.coeff(&Monomial::one(r)).is_zero() {
            return Err(ApolarError::ConstantTerm);
        }
        let dim = self.dim();
        let mut out = DenseMatrix::zero(dim, dim);
        for (m, c) in l.terms() {
            if m.degree() > self.j + 1 {
                continue;
            }
            let mat = self.monomial_matrix(m);
            out = out.add(&mat.scale(c));
        }
        Ok(out)
    }

    /// Matrix of multiplication by a monomial, as a product of the per-variable
    /// matrices.
    pub fn monomial_matrix(&self, m: &Monomial) -> DenseMatrix<F> {
        let mut out = DenseMatrix::identity(self.dim());
        for (v, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                out = self.mult[v].mat_mul(&out);
            }
        }
        out
    }

    pub fn variable_matrix(&self, v: usize) -> &DenseMatrix<F> {
        &self.mult[v]
    }

    /// Polynomials (echelon basis) spanning `Ann F ∩ R_{≤j+1}`.
    pub fn ann_basis_polys(&self) -> Vec<RPoly<F>> {
        self.ann
            .basis()
            .iter()
            .map(|row| Poly::from_vec(row, &self.rmonos))
            .collect()
    }

    /// A minimal generating set of `I = Ann F`, with the order (initial
    /// degree) of each generator: an echelon basis of `I/mI` inside
    /// `R/m^{j+2}`.
    pub fn minimal_generators(&self) -> Vec<(RPoly<F>, usize)> {
        let nr = self.rmonos.len();
        // mI mod m^{j+2}: shifts of the annihilator basis by each variable.
        let mut mi_rows: Vec<Vec<F>> = Vec::new();
        for row in self.ann.basis() {
            for v in 0..self.vars.count() {
                let mut shifted = vec![F::zero(); nr];
                for (i, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let m = self.rmonos[i].mul_var(v);
                    if m.degree() <= self.j + 1 {
                        shifted[self.rindex[&m]] = c.clone();
                    }
                }
                mi_rows.push(shifted);
            }
        }
        let mut acc = RowSpace::new(nr);
        for row in &mi_rows {
            acc.insert(dense_to_sparse(row));
        }
        // Complete mI to I, taking annihilator rows by descending pivot
        // degree; a row first needed at pivot degree o is a generator of
        // order o (ambient columns are graded-ascending, so echelon rows with
        // pivot degree ≥ o span exactly I ∩ m^o).
        let mut rows_by_degree: Vec<(usize, &Vec<F>)> = self
            .ann
            .basis()
            .iter()
            .zip(self.ann.pivot_cols())
            .map(|(row, &p)| (self.rmonos[p].degree(), row))
            .collect();
        rows_by_degree.sort_by(|a, b| b.0.cmp(&a.0));
        let mut gens = Vec::new();
        for (order, row) in rows_by_degree {
            if acc.insert(dense_to_sparse(row)) {
                gens.push((Poly::from_vec(row, &self.rmonos), order));
            }
        }
        gens.sort_by(|a, b| a.1.cmp(&b.1));
        gens
    }

    /// Checks that the ideal generated by `gens` (plus `m^{j+2}`) recovers
    /// the annihilator.
    pub fn regenerates_annihilator(&self, gens: &[RPoly<F>]) -> bool {
        let nr = self.rmonos.len();
        let mut rs = RowSpace::new(nr);
        for g in gens {
            let Some(ord) = g.order() else { continue };
            for u in monomials_up_to(self.vars.count(), self.j + 1 - ord.min(self.j + 1)) {
                let p = Poly::monomial(u, F::one()).ordinary_mul(g).truncate(self.j + 1);
                rs.insert(self.sparse_coords(&p));
            }
        }
        // m^{j+2} is zero here, so equality of spans is equality of ideals.
        rs.dim() == self.ann.dim()
            && self.ann.basis().iter().all(|row| rs.contains(&dense_to_sparse(row)))
    }

    fn sparse_coords(&self, p: &RPoly<F>) -> Vec<(usize, F)> {
        p.terms()
            .filter(|(m, _)| m.degree() <= self.j + 1)
            .map(|(m, c)| (self.rindex[m], c.clone()))
            .collect()
    }

    /// Local Hilbert function of `R/I²`, computed inside `R/m^{2j+2}`
    /// (legitimate because `I ⊇ m^{j+1}` forces `I² ⊇ m^{2j+2}`).
    pub fn hf_ideal_square(&self) -> Vec<usize> {
        let r = self.vars.count();
        let bound = 2 * self.j + 1;
        let monos = monomials_up_to(r, bound);
        let index: HashMap<Monomial, usize> =
            monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let sparse = |p: &RPoly<F>| -> Vec<(usize, F)> {
            p.terms().map(|(m, c)| (index[m], c.clone())).collect()
        };
        let gens = self.minimal_generators();
        let mut rs = RowSpace::new(monos.len());
        // I² = G² + G·m^{j+1} + m^{2j+2} for G the minimal generators.
        for (s, (gs, _)) in gens.iter().enumerate() {
            for (gt, _) in gens.iter().take(s + 1) {
                let p = gs.ordinary_mul(gt).truncate(bound);
                let Some(ord) = p.order() else { continue };
                for u in monomials_up_to(r, bound - ord) {
                    let up = Poly::monomial(u, F::one()).ordinary_mul(&p).truncate(bound);
                    rs.insert(sparse(&up));
                }
            }
        }
        for (g, _) in &gens {
            let ord = g.order().unwrap();
            if ord + self.j + 1 > bound {
                continue;
            }
            for d in self.j + 1..=bound - ord {
                for u in monomials_of_degree(r, d) {
                    let up = Poly::monomial(u, F::one()).ordinary_mul(g).truncate(bound);
                    rs.insert(sparse(&up));
                }
            }
        }
        // With graded-ascending columns, H(R/I²)_i = (#monomials of degree i)
        // − (#pivots of degree i).
        let mut pivot_deg = vec![0usize; bound + 1];
        for p in rs.pivots() {
            pivot_deg[monos[p].degree()] += 1;
        }
        let mut h: Vec<usize> = (0..=bound)
            .map(|d| monomials_of_degree(r, d).len() - pivot_deg[d])
            .collect();
        while h.last() == Some(&0) {
            h.pop();
        }
        h
    }

    /// `H(I/I²) = H(R/I²) − H(R/I)` termwise (with zero padding).
    pub fn hf_conormal(&self) -> Vec<usize> {
        let sq = self.hf_ideal_square();
        sq.iter()
            .enumerate()
            .map(|(i, &v)| v - self.hf.get(i).copied().unwrap_or(0))
            .collect()
    }

    /// The order `𝔬(g∘F)`: the largest `o` with `g∘F ∈ m^o∘F`.
    pub fn order_of_partial(&self, g: &RPoly<F>) -> Result<usize, ApolarError> {
        let target = contract(g, &self.f);
        if target.is_zero() {
            return Err(ApolarError::NotAPartial);
        }
        let r = self.vars.count();
        let smonos = monomials_up_to(r, self.j);
        let sindex: HashMap<Monomial, usize> =
            smonos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let tv = target.to_vec(&sindex, smonos.len());
        let mut span = Subspace::zero(smonos.len());
        let mut best = 0;
        for o in (0..=self.j).rev() {
            let mut rows = span.basis().to_vec();
            for u in monomials_of_degree(r, o) {
                let h = Poly::monomial(u, F::one());
                rows.push(contract(&h, &self.f).to_vec(&sindex, smonos.len()));
            }
            span = Subspace::from_vectors(smonos.len(), rows);
            if span.contains(&tv) {
                best = o;
                break;
            }
        }
        Ok(best)
    }

    /// The associated graded algebra `A* = Gr_m(A)`.
    pub fn assoc_graded(&self) -> GradedAlgebra<F> {
        let dim = self.dim();
        let mut comps = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for d in 0..=self.j {
            let den = self.mpow_cache[d + 1].clone();
            let mut filled = den.clone();
            let mut coset = Vec::new();
            for row in self.mpow_cache[d].basis() {
                if !filled.contains(row) {
                    coset.push(row.clone());
                    let mut rows = filled.basis().to_vec();
                    rows.push(row.clone());
                    filled = Subspace::from_vectors(dim, rows);
                }
            }
            debug_assert_eq!(coset.len(), self.hf[d]);
            offsets.push(total);
            total += coset.len();
            comps.push(QuotientComp::new(dim, coset, den));
        }
        debug_assert_eq!(total, dim);
        GradedAlgebra { hf: self.hf.clone(), offsets, comps }
    }

    /// The subquotient module `Q(a)` with its per-degree coset bases.
    pub fn q_module(&self, a: usize) -> QModule<F> {
        let dim = self.dim();
        let j = self.j as isize;
        let a_i = a as isize;
        let mut comps = Vec::new();
        let mut dims = Vec::new();
        let mut offsets = Vec::new();
        let mut total = 0;
        for i in 0..=(self.j - a) {
            let ii = i as isize;
            let l_cur = self.loewy_clamped(j + 1 - a_i - ii);
            let l_prev = self.loewy_clamped(j - a_i - ii);
            let num = crate::linalg::intersect(&self.mpow_cache[i], l_cur).unwrap();
            let den = sum(
                &crate::linalg::intersect(&self.mpow_cache[i], l_prev).unwrap(),
                &crate::linalg::intersect(&self.mpow_cache[i + 1], l_cur).unwrap(),
            )
            .unwrap();
            let mut filled = den.clone();
            let mut coset = Vec::new();
            for row in num.basis() {
                if !filled.contains(row) {
                    coset.push(row.clone());
                    let mut rows = filled.basis().to_vec();
                    rows.push(row.clone());
                    filled = Subspace::from_vectors(dim, rows);
                }
            }
            dims.push(coset.len());
            offsets.push(total);
            total += coset.len();
            comps.push(QuotientComp::new(dim, coset, den));
        }
        QModule { a, dims, offsets, comps }
    }
}

fn dense_to_sparse<F: Field>(row: &[F]) -> Vec<(usize, F)> {
    row.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// A quotient `U/W` of subspaces of `A`, held as chosen coset representatives
/// plus the denominator basis, so that projecting an element of `U` onto the
/// coset coordinates is a linear solve.
#[derive(Debug, Clone)]
pub struct QuotientComp<F: Field> {
    ambient: usize,
    coset: Vec<Vec<F>>,
    den: Subspace<F>,
    solver: DenseMatrix<F>,
}

impl<F: Field> QuotientComp<F> {
    fn new(ambient: usize, coset: Vec<Vec<F>>, den: Subspace<F>) -> Self {
        let mut cols: Vec<Vec<F>> = coset.clone();
        cols.extend(den.basis().to_vec());
        // Columns of the solver are the coset and denominator vectors.
        let solver = DenseMatrix::from_rows(cols, ambient).transpose();
        QuotientComp { ambient, coset, den, solver }
    }

    pub fn dim(&self) -> usize {
        self.coset.len()
    }

    pub fn coset_reps(&self) -> &[Vec<F>] {
        &self.coset
    }

    /// Coset coordinates of `v` (which must lie in the numerator space).
    pub fn project(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ambient);
        let x = crate::linalg::solve(&self.solver, v)
            .expect("vector outside the numerator space");
        x[..self.coset.len()].to_vec()
    }

    /// Whether `v` lies in the denominator space.
    pub fn in_denominator(&self, v: &[F]) -> bool {
        self.den.contains(v)
    }
}

/// `A* = ⊕_d m^d/m^{d+1}` with block coordinates.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    pub hf: Vec<usize>,
    offsets: Vec<usize>,
    comps: Vec<QuotientComp<F>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn dim(&self) -> usize {
        self.hf.iter().sum()
    }

    pub fn component(&self, d: usize) -> &QuotientComp<F> {
        &self.comps[d]
    }

    /// Matrix of multiplication by (the initial form of) `ℓ` on the graded
    /// module, in block coordinates.
    pub fn element_matrix(
        &self,
        a: &ApolarAlgebra<F>,
        l: &RPoly<F>,
    ) -> Result<DenseMatrix<F>, ApolarError> {
        let r = a.vars().count();
        if !l.coeff(&Monomial::one(r)).is_zero() {
            return Err(ApolarError::ConstantTerm);
        }
        let dim = self.dim();
        let mut out = DenseMatrix::zero(dim, dim);
        let Some(e) = l.order() else {
            return Ok(out);
        };
        let init = l.degree_component(e);
        let mat = a.element_matrix(&init)?;
        let top = self.hf.len() - 1;
        for d in 0..=top {
            if d + e > top {
                continue;
            }
            for (k, rep) in self.comps[d].coset_reps().iter().enumerate() {
                let w = mat.mul_vec(rep);
                let coords = self.comps[d + e].project(&w);
                for (i, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.set(self.offsets[d + e] + i, self.offsets[d] + k, c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Degree-`d` component of the initial ideal `I*`, as a subspace of the
    /// degree-`d` monomial coordinates of `R`.  For `d > j` this is all of
    /// `R_d`.
    pub fn initial_ideal_component(&self, a: &ApolarAlgebra<F>, d: usize) -> Subspace<F> {
        let r = a.vars().count();
        let monos = monomials_of_degree(r, d);
        if d > a.socle_degree() {
            return Subspace::full(monos.len());
        }
        let rows: Vec<Vec<F>> = monos
            .iter()
            .map(|w| self.comps[d].project(&a.reduce_monomial(w)))
            .collect();
        // Kernel of R_d → A*_d.
        kernel(&DenseMatrix::from_rows(rows, self.comps[d].dim()).transpose())
    }

    /// Checks that the graded ideal generated by `gens` equals `I*` in every
    /// degree up to `j+1`.
    pub fn initial_ideal_equals(&self, a: &ApolarAlgebra<F>, gens: &[RPoly<F>]) -> bool {
        let r = a.vars().count();
        for d in 0..=a.socle_degree() + 1 {
            let monos = monomials_of_degree(r, d);
            let index: HashMap<Monomial, usize> =
                monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            let mut rows = Vec::new();
            for g in gens {
                let Some(gd) = g.degree() else { continue };
                if gd > d || g.order() != Some(gd) {
                    // Generators of I* must be homogeneous.
                    if g.order() != g.degree() {
                        return false;
                    }
                    continue;
                }
                for u in monomials_of_degree(r, d - gd) {
                    let p = Poly::monomial(u, F::one()).ordinary_mul(g);
                    rows.push(p.to_vec(&index, monos.len()));
                }
            }
            let span = Subspace::from_vectors(monos.len(), rows);
            if span != self.initial_ideal_component(a, d) {
                return false;
            }
        }
        true
    }
}

/// The subquotient `Q(a) = ⊕_i Q(a)_i` with block coordinates and the
/// induced `ℓ`-action.
#[derive(Debug, Clone)]
pub struct QModule<F: Field> {
    pub a: usize,
    pub dims: Vec<usize>,
    offsets: Vec<usize>,
    comps: Vec<QuotientComp<F>>,
}

impl<F: Field> QModule<F> {
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn component(&self, i: usize) -> &QuotientComp<F> {
        &self.comps[i]
    }

    /// Matrix of the induced action of `ℓ ∈ m` on `⊕_i Q(a)_i` (each block
    /// maps to the next; higher-order parts of `ℓ` land in the denominator
    /// and vanish).
    pub fn element_matrix(
        &self,
        alg: &ApolarAlgebra<F>,
        l: &RPoly<F>,
    ) -> Result<DenseMatrix<F>, ApolarError> {
        let r = alg.vars().count();
        if !l.coeff(&Monomial::one(r)).is_zero() {
            return Err(ApolarError::ConstantTerm);
        }
        let dim = self.dim();
        let mut out = DenseMatrix::zero(dim, dim);
        let linear = l.degree_component(1);
        if linear.is_zero() {
            return Ok(out);
        }
        let mat = alg.element_matrix(&linear)?;
        for i in 0..self.comps.len().saturating_sub(1) {
            for (k, rep) in self.comps[i].coset_reps().iter().enumerate() {
                let w = mat.mul_vec(rep);
                let coords = self.comps[i + 1].project(&w);
                for (t, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.set(self.offsets[i + 1] + t, self.offsets[i] + k, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

/// The exotic lift `f_st + Z·φ(f_st) + Z^[2]·φ²(f_st) + ⋯` (contraction by
/// `φ` at each step, divided-power product with `Z^[k]`).  The series
/// terminates because `φ` has order ≥ 2 and lowers degree accordingly.
pub fn exotic_lift<F: Field>(
    f_st: &DPoly<F>,
    phi: &RPoly<F>,
    zvar: usize,
) -> Result<DPoly<F>, ApolarError> {
    let Some(nvars) = f_st.terms().next().map(|(m, _)| m.nvars()) else {
        return Err(ApolarError::ZeroGenerator);
    };
    if let Some(o) = phi.order() {
        if o < 2 {
            return Err(ApolarError::BadExoticInput(
                "φ must have zero constant and linear parts".into(),
            ));
        }
    }
    if phi.terms().any(|(m, _)| m.exps()[zvar] > 0) {
        return Err(ApolarError::BadExoticInput(
            "φ must not involve the lift variable".into(),
        ));
    }
    let mut result = f_st.clone();
    let mut cur = f_st.clone();
    let mut k = 0u32;
    loop {
        cur = contract(phi, &cur);
        k += 1;
        if cur.is_zero() {
            break;
        }
        let mut exps = vec![0u32; nvars];
        exps[zvar] = k;
        let zk = Poly::monomial(Monomial::new(exps), F::one());
        result = result.add(&zk.dp_mul(&cur));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;
    use crate::parse::{parse_acting, parse_dual, Convention};

    fn qalg(vars: &str, f: &str) -> ApolarAlgebra<Rat> {
        let vs = VariableSet::parse(vars).unwrap();
        let f = parse_dual::<Rat>(f, &vs, &(), Convention::Divided).unwrap();
        ApolarAlgebra::build(vs, f, ()).unwrap()
    }

    #[test]
    fn one_variable_truncation() {
        let a = qalg("x", "X^[5]");
        assert_eq!(a.dim(), 6);
        assert_eq!(a.hilbert_function(), &[1, 1, 1, 1, 1, 1]);
        let gens = a.minimal_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].1, 6);
    }

    #[test]
    fn two_variable_example_dim_and_hf() {
        // F = X^[4]Y + Y^[4]: Ann = (xy², y³−x⁴), dim A = 11.
        let a = qalg("x,y", "X^[4]*Y + Y^[4]");
        assert_eq!(a.dim(), 11);
        assert_eq!(a.hilbert_function(), &[1, 2, 3, 2, 2, 1]);
        let gens = a.minimal_generators();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens.iter().map(|g| g.1).collect::<Vec<_>>(), vec![3, 3]);
        let polys: Vec<_> = gens.iter().map(|g| g.0.clone()).collect();
        assert!(a.regenerates_annihilator(&polys));
        // The stated generators annihilate F.
        let vs = a.vars().clone();
        for g in ["x*y^2", "y^3 - x^4"] {
            let g = parse_acting::<Rat>(g, &vs, &(), Convention::Divided).unwrap();
            assert!(contract(&g, a.dual_generator()).is_zero());
        }
    }

    #[test]
    fn duality_and_commutation() {
        let a = qalg("x,y,z", "X^[3]*Y^[3] + Z^[3]");
        for b in 0..=a.socle_degree() + 1 {
            assert_eq!(
                a.loewy(b).unwrap().dim() + a.mpow(b).unwrap().dim(),
                a.dim()
            );
        }
        for v in 0..3 {
            for w in 0..3 {
                assert_eq!(
                    a.variable_matrix(v).mat_mul(a.variable_matrix(w)),
                    a.variable_matrix(w).mat_mul(a.variable_matrix(v))
                );
            }
        }
    }

    #[test]
    fn graded_hf_matches() {
        let a = qalg("x,y", "X^[4]*Y + Y^[4]");
        let g = a.assoc_graded();
        assert_eq!(g.hf, a.hilbert_function());
        // Homogeneous case: graded nilpotent structure mirrors A itself.
        let b = qalg("x,y,z", "X^[3]*Y^[3] + Z^[3]");
        let gb = b.assoc_graded();
        let l = parse_acting::<Rat>("x+y+z", b.vars(), &(), Convention::Divided).unwrap();
        let m1 = b.element_matrix(&l).unwrap();
        let m2 = gb.element_matrix(&b, &l).unwrap();
        assert_eq!(m1.rank(), m2.rank());
    }

    #[test]
    fn exotic_lift_identity() {
        // Z-free standard part: (z−φ)∘lift = 0 exactly.
        let vs = VariableSet::parse("x,y,z").unwrap();
        let f_st = parse_dual::<Rat>("X^[3]*Y^[3]", &vs, &(), Convention::Divided).unwrap();
        let phi = parse_acting::<Rat>("x*y", &vs, &(), Convention::Divided).unwrap();
        let lift = exotic_lift(&f_st, &phi, 2).unwrap();
        let z = parse_acting::<Rat>("z", &vs, &(), Convention::Divided).unwrap();
        let zmphi = z.sub(&phi);
        assert!(contract(&zmphi, &lift).is_zero());
        // φ = 0 leaves the input unchanged.
        assert_eq!(exotic_lift(&f_st, &Poly::zero(), 2).unwrap(), f_st);
    }
}
