use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use super::{FieldError, Ring};

/// The integers, used for reconstructed and catalog coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn fmt_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    /// Numbers when they fit in `i64`, decimal strings otherwise.
    fn elem_to_json(&self, a: &BigInt) -> Value {
        match a.to_i64() {
            Some(n) => Value::from(n),
            None => Value::from(a.to_string()),
        }
    }
    fn elem_from_json(&self, v: &Value) -> Result<BigInt, FieldError> {
        if let Some(n) = v.as_i64() {
            return Ok(BigInt::from(n));
        }
        v.as_str()
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| FieldError::BadScalar(v.to_string()))
    }
}
