//! Exact scalars and dense exact linear algebra.
//!
//! Arithmetic goes through context objects: a [`Ring`] or [`Field`] value
//! owns the modulus (or nothing, for ℚ(√2)) and elements are plain values.
//! Generic code therefore never has to carry a modulus inside every scalar.

mod echelon;
mod integers;
mod matrix;
mod prime;
mod quad;
mod reconstruct;
mod reduced;
mod zsqrt2;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde_json::Value;

pub use echelon::{EchelonBasis, ReduceOutcome};
pub use integers::Integers;
pub use matrix::{ExactMatrix, MatrixJson};
pub use prime::{is_prime, sqrt2_residue, sqrt_mod, PrimeField, RootChoice};
pub use quad::{QSqrt2, QuadSqrt2};
pub use reconstruct::{rational_reconstruct, rational_reconstruct_i64, reconstruction_bound};
pub use reduced::{sparsify, ReducedBasis, SparseVec};
pub use zsqrt2::{ZSqrt2, Z2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^31")]
    PrimeTooLarge(u64),
    #[error("2 is a quadratic non-residue modulo {0}; choose another prime")]
    NoSqrt2(u64),
    #[error("{root} is not a square root of 2 modulo {p}")]
    BadSqrt2 { p: u64, root: u64 },
    #[error("field {0} has no square root of 2 configured")]
    MissingSqrt2(String),
    #[error("no rational a/b with |a|, b <= {bound} is congruent to {residue} mod {p}")]
    Reconstruction { residue: u64, p: u64, bound: u64 },
    #[error("invalid field descriptor {0:?}")]
    BadSpec(String),
    #[error("malformed scalar: {0}")]
    BadScalar(String),
    #[error("field mismatch: expected {expected}, found {found}")]
    Mismatch { expected: String, found: String },
}

/// Commutative ring with identity, used as an arithmetic context.
pub trait Ring: Clone + Send + Sync + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn elem_to_json(&self, a: &Self::Elem) -> Value;
    fn elem_from_json(&self, v: &Value) -> Result<Self::Elem, FieldError>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `acc += a * b`
    fn mul_add_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        let p = self.mul(a, b);
        self.add_assign(acc, &p);
    }

    fn scale_sign(&self, a: &Self::Elem, sign: i8) -> Self::Elem {
        if sign < 0 {
            self.neg(a)
        } else {
            a.clone()
        }
    }
}

/// A field context. Kernels (`dot`, `axpy`, `lincomb`) have portable default
/// implementations; [`PrimeField`] overrides them with lazy reduction.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem, FieldError>;
    /// The distinguished square root of 2.
    fn sqrt2(&self) -> Result<Self::Elem, FieldError>;
    fn descriptor(&self) -> FieldDescriptor;
    /// Uniform residue over GF(p); integer in [-99, 99] over ℚ(√2).
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_ratio(&self, num: i64, den: i64) -> Result<Self::Elem, FieldError> {
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    fn dot(&self, a: &[Self::Elem], b: &[Self::Elem]) -> Self::Elem {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b) {
            if !self.is_zero(x) && !self.is_zero(y) {
                self.mul_add_assign(&mut acc, x, y);
            }
        }
        acc
    }

    /// `y += alpha * x`
    fn axpy(&self, y: &mut [Self::Elem], alpha: &Self::Elem, x: &[Self::Elem]) {
        debug_assert_eq!(y.len(), x.len());
        if self.is_zero(alpha) {
            return;
        }
        for (yi, xi) in y.iter_mut().zip(x) {
            if !self.is_zero(xi) {
                self.mul_add_assign(yi, alpha, xi);
            }
        }
    }

    /// `out = sum_i coeffs[i] * rows[i]`, where `rows` holds `coeffs.len()`
    /// consecutive rows of length `out.len()`.
    fn lincomb(&self, out: &mut [Self::Elem], coeffs: &[Self::Elem], rows: &[Self::Elem]) {
        let w = out.len();
        debug_assert_eq!(rows.len(), coeffs.len() * w);
        for o in out.iter_mut() {
            *o = self.zero();
        }
        for (c, row) in coeffs.iter().zip(rows.chunks_exact(w.max(1))) {
            self.axpy(out, c, row);
        }
    }
}

/// Textual field identity: `gfp:103`, `gfp:103:sqrt2=38` or `q-sqrt2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime { p: u32, sqrt2: Option<u32> },
    QSqrt2,
}

impl FieldDescriptor {
    /// Short form without the chosen root, as used in matrix files.
    pub fn short(&self) -> String {
        match self {
            FieldDescriptor::Prime { p, .. } => format!("gfp:{p}"),
            FieldDescriptor::QSqrt2 => "q-sqrt2".to_string(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FieldDescriptor::QSqrt2)
    }

    /// Builds the prime field, selecting the smaller root when none is given.
    pub fn prime_field(&self) -> Result<PrimeField, FieldError> {
        match *self {
            FieldDescriptor::Prime { p, sqrt2: Some(r) } => PrimeField::with_sqrt2(p, r),
            FieldDescriptor::Prime { p, sqrt2: None } => PrimeField::new_with_sqrt2(p),
            FieldDescriptor::QSqrt2 => Err(FieldError::Mismatch {
                expected: "gfp".into(),
                found: "q-sqrt2".into(),
            }),
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime { p, sqrt2: Some(r) } => write!(f, "gfp:{p}:sqrt2={r}"),
            FieldDescriptor::Prime { p, sqrt2: None } => write!(f, "gfp:{p}"),
            FieldDescriptor::QSqrt2 => write!(f, "q-sqrt2"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let bad = || FieldError::BadSpec(s.to_string());
        let s = s.trim();
        if s == "q-sqrt2" {
            return Ok(FieldDescriptor::QSqrt2);
        }
        let rest = s.strip_prefix("gfp:").ok_or_else(bad)?;
        let mut parts = rest.split(':');
        let p: u32 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
        let sqrt2 = match parts.next() {
            None => None,
            Some(r) => Some(
                r.strip_prefix("sqrt2=")
                    .ok_or_else(bad)?
                    .parse::<u32>()
                    .map_err(|_| bad())?,
            ),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(FieldDescriptor::Prime { p, sqrt2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        for s in ["gfp:103", "gfp:103:sqrt2=38", "q-sqrt2", "gfp:100049:sqrt2=10948"] {
            let d: FieldDescriptor = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
        }
        assert!("gfp:".parse::<FieldDescriptor>().is_err());
        assert!("gfp:103:root=38".parse::<FieldDescriptor>().is_err());
        assert!("q".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn descriptor_builds_field() {
        let f = "gfp:103".parse::<FieldDescriptor>().unwrap().prime_field().unwrap();
        assert_eq!(f.sqrt2().unwrap(), 38);
        let g = "gfp:103:sqrt2=65".parse::<FieldDescriptor>().unwrap().prime_field().unwrap();
        assert_eq!(g.sqrt2().unwrap(), 65);
        assert!("gfp:103:sqrt2=37".parse::<FieldDescriptor>().unwrap().prime_field().is_err());
        assert!("gfp:3".parse::<FieldDescriptor>().unwrap().prime_field().is_err());
    }
}
