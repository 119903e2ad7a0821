//! Exact-arithmetic toolkit for local Artinian Gorenstein algebras presented
//! by a Macaulay dual generator.
//!
//! Given `F` in the divided-power ring `S`, the toolkit builds the finite
//! algebra `A = R/Ann F`, and computes the invariant suite around it:
//!
//! - Hilbert function, m-adic and Loewy filtrations;
//! - the symmetric decomposition `D(A) = (H(0), …, H(j−2))` and `N_{i,b}`
//!   obstruction tables, in both the subspace ("direct") and closed-form
//!   ("formula") versions;
//! - Jordan types of multiplication by elements of the maximal ideal, on
//!   `A`, its associated graded algebra, and each decomposition subquotient
//!   `Q(a)`, plus strong Lefschetz verdicts;
//! - closed-form dimension/admissibility formulas and non-realizability
//!   tests;
//! - seeded Monte Carlo search over prime fields.
//!
//! Everything is generic over an exact scalar [`field::Field`]; the two
//! concrete fields are re-exported at the crate root as [`Rat`] (unbounded
//! rationals) and [`Fp`] (a runtime prime field).

pub mod apolar;
pub mod corpus;
pub mod dpoly;
pub mod field;
pub mod formulas;
pub mod jordan;
pub mod linalg;
pub mod parse;
pub mod partitions;
pub mod report;
pub mod sdecomp;
pub mod search;

pub use field::{Fp, Rat, DEFAULT_PRIME};

/// Dual-generator polynomial over the rationals.
pub type QDPoly = dpoly::DPoly<Rat>;
/// Acting-ring polynomial over the rationals.
pub type QRPoly = dpoly::RPoly<Rat>;
/// Algebra model over the rationals.
pub type QAlgebra = apolar::ApolarAlgebra<Rat>;
/// Algebra model over a prime field.
pub type FpAlgebra = apolar::ApolarAlgebra<Fp>;
/// Subspace over the rationals.
pub type QSubspace = linalg::Subspace<Rat>;
/// Dense matrix over the rationals.
pub type QMatrix = linalg::DenseMatrix<Rat>;
