//! Exact field arithmetic: unbounded-precision rationals and prime fields.
//!
//! Every other module is generic over [`Field`]; the two concrete scalars are
//! [`Rat`] (arbitrary-precision `num_rational` values) and [`Fp`] (residues
//! modulo a runtime prime).  A field "context" ([`Field::Ctx`]) carries the
//! information needed to construct elements from scratch — the prime for
//! `Fp`, nothing for `Rat`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("values from different prime fields (p = {0} vs p = {1})")]
    MixedFields(u64, u64),
    #[error("modulus {0} is not an odd prime")]
    BadModulus(u64),
    #[error("uniform sampling is only available over a prime field")]
    SamplingUnsupported,
}

/// An exact field, as used by the linear-algebra and polynomial layers.
///
/// `from_int` embeds small integers without a context (used for binomial
/// coefficients and signs); `from_ratio` builds arbitrary parsed coefficients
/// and needs the context.  `sample` draws a uniform element when the field is
/// finite and errors otherwise.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Debug
    + Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + Debug;

    fn from_ratio(ctx: &Self::Ctx, num: i64, den: i64) -> Result<Self, FieldError>;
    fn from_int(n: i64) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn sample<R: Rng + ?Sized>(ctx: &Self::Ctx, rng: &mut R) -> Result<Self, FieldError>;
}

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

impl Field for BigRational {
    type Ctx = ();

    fn from_ratio(_ctx: &(), num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sample<R: Rng + ?Sized>(_ctx: &(), _rng: &mut R) -> Result<Self, FieldError> {
        Err(FieldError::SamplingUnsupported)
    }
}

/// Convenience: a rational from an integer.
pub fn rat(n: i64) -> Rat {
    <Rat as Field>::from_int(n)
}

/// The conventional "large random characteristic" used for sampling.
pub const DEFAULT_PRIME: u64 = 32003;

/// A residue modulo a prime `p` chosen at runtime.
///
/// The modulus travels with the value.  Elements produced by `from_int`
/// (integer embeds with no context at hand) carry the placeholder modulus 0
/// and adopt the modulus of the first bound value they interact with; mixing
/// two *different* bound moduli panics, matching the "mixed-field arithmetic
/// is rejected" contract.
#[derive(Clone, Copy)]
pub struct Fp {
    /// Canonical residue in `[0, p)` once bound (`p > 0`); a raw signed
    /// integer while unbound (`p == 0`).
    v: i64,
    p: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Self {
        assert!(p >= 2 && p < (1 << 31), "modulus out of range");
        Fp { v: v.rem_euclid(p as i64), p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> i64 {
        self.v
    }

    fn unify(a: Self, b: Self) -> (i64, i64, u64) {
        let p = match (a.p, b.p) {
            (0, q) => q,
            (q, 0) => q,
            (q, r) if q == r => q,
            (q, r) => panic!("{}", FieldError::MixedFields(q, r)),
        };
        if p == 0 {
            (a.v, b.v, 0)
        } else {
            (a.v.rem_euclid(p as i64), b.v.rem_euclid(p as i64), p)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = Fp::unify(*self, *other);
        a == b
    }
}

impl Eq for Fp {}

impl Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

impl Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        let s = a + b;
        Fp { v: if p == 0 { s } else { s.rem_euclid(p as i64) }, p }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        let s = a - b;
        Fp { v: if p == 0 { s } else { s.rem_euclid(p as i64) }, p }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, p) = Fp::unify(self, rhs);
        let prod = (a as i128) * (b as i128);
        let v = if p == 0 {
            i64::try_from(prod).expect("unbound integer overflow")
        } else {
            (prod.rem_euclid(p as i128)) as i64
        };
        Fp { v, p }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.p == 0 {
            Fp { v: -self.v, p: 0 }
        } else {
            Fp { v: (-self.v).rem_euclid(self.p as i64), p: self.p }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp { v: 0, p: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp { v: 1, p: 0 }
    }
}

impl Field for Fp {
    /// The prime modulus.
    type Ctx = u64;

    fn from_ratio(p: &u64, num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let d = Fp::new(den, *p);
        let n = Fp::new(num, *p);
        match d.inv() {
            Some(di) => Ok(n * di),
            None => Err(FieldError::DivisionByZero),
        }
    }

    fn from_int(n: i64) -> Self {
        Fp { v: n, p: 0 }
    }

    fn inv(&self) -> Option<Self> {
        if self.p == 0 {
            // Unbound integers: only the units of Z are invertible.
            return match self.v {
                1 => Some(*self),
                -1 => Some(*self),
                _ => None,
            };
        }
        if self.v == 0 {
            return None;
        }
        // Extended Euclid on (v, p).
        let (mut r0, mut r1) = (self.v, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 && r0 != -1 {
            return None; // modulus not prime and v not a unit
        }
        Some(Fp { v: (s0 * r0.signum()).rem_euclid(self.p as i64), p: self.p })
    }

    fn sample<R: Rng + ?Sized>(p: &u64, rng: &mut R) -> Result<Self, FieldError> {
        Ok(Fp { v: rng.gen_range(0..*p) as i64, p: *p })
    }
}

/// Checks that `p` is an odd prime small enough for `i128`-safe products.
pub fn check_prime(p: u64) -> Result<(), FieldError> {
    if p < 3 || p >= (1 << 31) {
        return Err(FieldError::BadModulus(p));
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return Err(FieldError::BadModulus(p));
        }
        d += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        let half = <Rat as Field>::from_ratio(&(), 1, 2).unwrap();
        assert_eq!(half.clone() + half.clone(), rat(1));
        assert_eq!(half.inv().unwrap(), rat(2));
        assert!(rat(0).inv().is_none());
    }

    #[test]
    fn fp_arithmetic_and_inverse() {
        let p = 32003u64;
        for v in [1i64, 2, 7, 32002, 12345] {
            let x = Fp::new(v, p);
            let xi = x.inv().unwrap();
            assert_eq!(x * xi, Fp::new(1, p));
        }
        assert!(Fp::new(0, p).inv().is_none());
        assert_eq!(Fp::new(-1, p), Fp::new(32002, p));
    }

    #[test]
    fn fp_unbound_literals_adopt_modulus() {
        let x = Fp::new(5, 7);
        let three = <Fp as Field>::from_int(10); // unbound; reduces to 3 on contact
        assert_eq!(x + three, Fp::new(1, 7));
        assert_eq!(three * x, Fp::new(1, 7));
    }

    #[test]
    #[should_panic(expected = "different prime fields")]
    fn fp_mixed_moduli_rejected() {
        let _ = Fp::new(1, 7) + Fp::new(1, 11);
    }

    #[test]
    fn prime_check() {
        assert!(check_prime(32003).is_ok());
        assert!(check_prime(32001).is_err());
        assert!(check_prime(2).is_err());
    }
}
