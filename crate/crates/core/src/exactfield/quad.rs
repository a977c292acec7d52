use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use super::{Field, FieldDescriptor, FieldError, Ring};

/// `a + b√2` with arbitrary-precision rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QSqrt2 {
    pub a: BigRational,
    pub b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        QSqrt2 { a, b: BigRational::zero() }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QSqrt2 { a: BigRational::from_integer(a.into()), b: BigRational::from_integer(b.into()) }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Field norm `a^2 - 2 b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt2", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{}-{}*sqrt2", self.a, -&self.b)
                } else {
                    write!(f, "{}+{}*sqrt2", self.a, self.b)
                }
            }
        }
    }
}

fn ratio_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_ratio(s: &str) -> Result<BigRational, FieldError> {
    let bad = || FieldError::BadScalar(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// The field ℚ(√2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QuadSqrt2;

impl Ring for QuadSqrt2 {
    type Elem = QSqrt2;

    fn zero(&self) -> QSqrt2 {
        QSqrt2::default()
    }
    fn one(&self) -> QSqrt2 {
        QSqrt2::rational(BigRational::one())
    }
    fn is_zero(&self, a: &QSqrt2) -> bool {
        a.is_zero()
    }
    fn add(&self, x: &QSqrt2, y: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: &x.a + &y.a, b: &x.b + &y.b }
    }
    fn sub(&self, x: &QSqrt2, y: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: &x.a - &y.a, b: &x.b - &y.b }
    }
    fn neg(&self, x: &QSqrt2) -> QSqrt2 {
        QSqrt2 { a: -&x.a, b: -&x.b }
    }
    fn mul(&self, x: &QSqrt2, y: &QSqrt2) -> QSqrt2 {
        if x.b.is_zero() && y.b.is_zero() {
            return QSqrt2::rational(&x.a * &y.a);
        }
        let two = BigRational::from_integer(2.into());
        QSqrt2 {
            a: &x.a * &y.a + two * &x.b * &y.b,
            b: &x.a * &y.b + &x.b * &y.a,
        }
    }
    fn from_i64(&self, n: i64) -> QSqrt2 {
        QSqrt2::from_ints(n, 0)
    }
    fn from_bigint(&self, n: &BigInt) -> QSqrt2 {
        QSqrt2::rational(BigRational::from_integer(n.clone()))
    }
    fn fmt_elem(&self, a: &QSqrt2) -> String {
        a.to_string()
    }
    fn add_assign(&self, a: &mut QSqrt2, b: &QSqrt2) {
        a.a += &b.a;
        a.b += &b.b;
    }

    fn elem_to_json(&self, x: &QSqrt2) -> Value {
        json!({ "a": ratio_str(&x.a), "b": ratio_str(&x.b) })
    }

    fn elem_from_json(&self, v: &Value) -> Result<QSqrt2, FieldError> {
        let part_of = |x: &Value| -> Result<BigRational, FieldError> {
            match x {
                Value::String(s) => parse_ratio(s),
                Value::Number(n) => n
                    .as_i64()
                    .map(|i| BigRational::from_integer(i.into()))
                    .ok_or_else(|| FieldError::BadScalar(n.to_string())),
                other => Err(FieldError::BadScalar(other.to_string())),
            }
        };
        let part = |k: &str| v.get(k).map_or_else(|| Ok(BigRational::zero()), part_of);
        match v {
            // a bare number or ratio string is rational
            Value::Number(_) | Value::String(_) => {
                let a = part_of(v)?;
                Ok(QSqrt2::rational(a))
            }
            Value::Object(_) => Ok(QSqrt2 { a: part("a")?, b: part("b")? }),
            _ => Err(FieldError::BadScalar(v.to_string())),
        }
    }
}

impl Field for QuadSqrt2 {
    fn inv(&self, x: &QSqrt2) -> Result<QSqrt2, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        // 1/(a+b√2) = (a-b√2)/(a²-2b²); the norm is nonzero since √2 ∉ ℚ
        let n = x.norm();
        Ok(QSqrt2 { a: &x.a / &n, b: -&x.b / &n })
    }

    fn from_rational(&self, r: &BigRational) -> Result<QSqrt2, FieldError> {
        Ok(QSqrt2::rational(r.clone()))
    }

    fn sqrt2(&self) -> Result<QSqrt2, FieldError> {
        Ok(QSqrt2::from_ints(0, 1))
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::QSqrt2
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> QSqrt2 {
        QSqrt2::from_ints(rng.gen_range(-99..=99), 0)
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QSqrt2 {
        QSqrt2::from_ints(a, b)
    }

    #[test]
    fn norm_identity() {
        let f = QuadSqrt2;
        assert_eq!(f.mul(&q(1, 1), &q(1, -1)), q(-1, 0));
        let s = f.sqrt2().unwrap();
        assert_eq!(f.mul(&s, &s), q(2, 0));
    }

    #[test]
    fn inverse() {
        let f = QuadSqrt2;
        for (a, b) in [(1, 1), (3, -2), (0, 5), (7, 0), (-4, 9)] {
            let x = q(a, b);
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = QuadSqrt2;
        let x = QSqrt2::new(BigRational::new(3.into(), 4.into()), BigRational::new((-1).into(), 2.into()));
        let v = f.elem_to_json(&x);
        assert_eq!(v, json!({"a": "3/4", "b": "-1/2"}));
        assert_eq!(f.elem_from_json(&v).unwrap(), x);
        assert!(f.elem_from_json(&json!({"a": "1/0"})).is_err());
        assert_eq!(f.elem_from_json(&json!(3)).unwrap(), QSqrt2::rational(BigRational::from_integer(3.into())));
        assert!(f.elem_from_json(&json!([3])).is_err());
    }
}
