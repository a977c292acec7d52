//! ℤ[√2] in fixed-width arithmetic, for fast exact evaluation.
//!
//! Results that do not fit in `i128` saturate and raise a sticky flag on
//! the context; callers check [`ZSqrt2::overflowed`] and fall back to
//! [`QuadSqrt2`](super::QuadSqrt2) when it is set. A flagged computation is
//! never trusted.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::{FieldError, QSqrt2, Ring};

/// `a + b√2` with `i128` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Z2 {
    pub a: i128,
    pub b: i128,
}

impl Z2 {
    pub fn to_qsqrt2(self) -> QSqrt2 {
        use num_rational::BigRational;
        QSqrt2::new(BigRational::from_integer(self.a.into()), BigRational::from_integer(self.b.into()))
    }
}

#[derive(Debug, Clone, Default)]
pub struct ZSqrt2 {
    overflow: Arc<AtomicBool>,
}

impl ZSqrt2 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn overflowed(&self) -> bool {
        self.overflow.load(Ordering::Relaxed)
    }

    fn flag(&self) -> i128 {
        self.overflow.store(true, Ordering::Relaxed);
        0
    }

    #[inline]
    fn add_i(&self, x: i128, y: i128) -> i128 {
        x.checked_add(y).unwrap_or_else(|| self.flag())
    }

    #[inline]
    fn mul_i(&self, x: i128, y: i128) -> i128 {
        x.checked_mul(y).unwrap_or_else(|| self.flag())
    }

    /// Exact embedding of an element whose rational parts are integers.
    pub fn from_qsqrt2(&self, x: &QSqrt2) -> Option<Z2> {
        if !x.a.is_integer() || !x.b.is_integer() {
            return None;
        }
        Some(Z2 { a: x.a.to_integer().to_i128()?, b: x.b.to_integer().to_i128()? })
    }
}

impl Ring for ZSqrt2 {
    type Elem = Z2;

    fn zero(&self) -> Z2 {
        Z2::default()
    }
    fn one(&self) -> Z2 {
        Z2 { a: 1, b: 0 }
    }
    #[inline]
    fn is_zero(&self, x: &Z2) -> bool {
        x.a == 0 && x.b == 0
    }
    #[inline]
    fn add(&self, x: &Z2, y: &Z2) -> Z2 {
        Z2 { a: self.add_i(x.a, y.a), b: self.add_i(x.b, y.b) }
    }
    fn sub(&self, x: &Z2, y: &Z2) -> Z2 {
        self.add(x, &self.neg(y))
    }
    fn neg(&self, x: &Z2) -> Z2 {
        Z2 { a: x.a.checked_neg().unwrap_or_else(|| self.flag()), b: x.b.checked_neg().unwrap_or_else(|| self.flag()) }
    }
    #[inline]
    fn mul(&self, x: &Z2, y: &Z2) -> Z2 {
        if x.b == 0 && y.b == 0 {
            return Z2 { a: self.mul_i(x.a, y.a), b: 0 };
        }
        let bb = self.mul_i(self.mul_i(x.b, y.b), 2);
        Z2 {
            a: self.add_i(self.mul_i(x.a, y.a), bb),
            b: self.add_i(self.mul_i(x.a, y.b), self.mul_i(x.b, y.a)),
        }
    }
    fn from_i64(&self, n: i64) -> Z2 {
        Z2 { a: n.into(), b: 0 }
    }
    fn from_bigint(&self, n: &BigInt) -> Z2 {
        Z2 { a: n.to_i128().unwrap_or_else(|| self.flag()), b: 0 }
    }
    fn fmt_elem(&self, x: &Z2) -> String {
        x.to_qsqrt2().to_string()
    }
    fn elem_to_json(&self, x: &Z2) -> Value {
        json!({ "a": x.a.to_string(), "b": x.b.to_string() })
    }
    fn elem_from_json(&self, v: &Value) -> Result<Z2, FieldError> {
        let part = |k: &str| -> Result<i128, FieldError> {
            match v.get(k) {
                None => Ok(0),
                Some(Value::String(s)) => s.trim().parse().map_err(|_| FieldError::BadScalar(s.clone())),
                Some(Value::Number(n)) => n.as_i64().map(i128::from).ok_or_else(|| FieldError::BadScalar(n.to_string())),
                Some(other) => Err(FieldError::BadScalar(other.to_string())),
            }
        };
        Ok(Z2 { a: part("a")?, b: part("b")? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::QuadSqrt2;

    #[test]
    fn agrees_with_rational_arithmetic() {
        let z = ZSqrt2::new();
        let q = QuadSqrt2;
        let xs = [Z2 { a: 3, b: -2 }, Z2 { a: -7, b: 5 }, Z2 { a: 0, b: 1 }];
        for x in &xs {
            for y in &xs {
                assert_eq!(z.mul(x, y).to_qsqrt2(), q.mul(&x.to_qsqrt2(), &y.to_qsqrt2()));
                assert_eq!(z.add(x, y).to_qsqrt2(), q.add(&x.to_qsqrt2(), &y.to_qsqrt2()));
            }
        }
        assert!(!z.overflowed());
    }

    #[test]
    fn overflow_is_sticky() {
        let z = ZSqrt2::new();
        let big = Z2 { a: i128::MAX / 2, b: 0 };
        let _ = z.mul(&big, &big);
        assert!(z.overflowed());
        let _ = z.add(&Z2::default(), &Z2::default());
        assert!(z.overflowed());
    }
}
