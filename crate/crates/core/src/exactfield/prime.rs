use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde_json::Value;

use super::{Field, FieldDescriptor, FieldError, Ring};

/// Primes are kept below 2^31 so that sums of two residues fit in `u32` and
/// several products fit in a `u64` accumulator.
pub const MAX_PRIME: u64 = 1 << 31;

/// GF(p) with an optional distinguished square root of 2. Elements are `u32`
/// residues in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
    sqrt2: Option<u32>,
}

/// Which square root of 2 to pick.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootChoice {
    Smaller,
    Larger,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Tonelli-Shanks. Returns one root of `a` modulo the odd prime `p`, or
/// `None` for a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = t2 * t2 % p;
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    Some(r)
}

/// A square root of 2 modulo `p`, choosing between the two canonical
/// representatives.
pub fn sqrt2_residue(p: u64, choice: RootChoice) -> Result<u64, FieldError> {
    if p < 3 || !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let r = sqrt_mod(2, p).ok_or(FieldError::NoSqrt2(p))?;
    let (lo, hi) = if r <= p - r { (r, p - r) } else { (p - r, r) };
    Ok(match choice {
        RootChoice::Smaller => lo,
        RootChoice::Larger => hi,
    })
}

impl PrimeField {
    /// GF(p) without a square root of 2.
    pub fn new(p: u32) -> Result<Self, FieldError> {
        let p64 = u64::from(p);
        if p64 >= MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p64));
        }
        if p < 3 || !is_prime(p64) {
            return Err(FieldError::NotPrime(p64));
        }
        Ok(PrimeField { p, sqrt2: None })
    }

    /// GF(p) with the smaller square root of 2.
    pub fn new_with_sqrt2(p: u32) -> Result<Self, FieldError> {
        let f = Self::new(p)?;
        let r = sqrt2_residue(u64::from(p), RootChoice::Smaller)? as u32;
        Ok(PrimeField { sqrt2: Some(r), ..f })
    }

    /// GF(p) with an explicitly requested square root of 2.
    pub fn with_sqrt2(p: u32, root: u32) -> Result<Self, FieldError> {
        let f = Self::new(p)?;
        let r64 = u64::from(root);
        if root >= p || r64 * r64 % u64::from(p) != 2 {
            return Err(FieldError::BadSqrt2 { p: u64::from(p), root: r64 });
        }
        Ok(PrimeField { sqrt2: Some(root), ..f })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn sqrt2_residue(&self) -> Option<u32> {
        self.sqrt2
    }

    #[inline]
    pub fn reduce_u64(&self, x: u64) -> u32 {
        (x % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.p)) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn symmetric(&self, a: u32) -> i64 {
        let a = i64::from(a);
        let p = i64::from(self.p);
        if a > p / 2 {
            a - p
        } else {
            a
        }
    }

    /// How many products `(p-1)^2` may be added to a value `< p` in a `u64`
    /// before it has to be reduced.
    #[inline]
    pub fn lazy_budget(&self) -> u64 {
        let q = u64::from(self.p - 1);
        (u64::MAX - u64::from(self.p)) / (q * q).max(1)
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        pow_mod(u64::from(a), e, u64::from(self.p)) as u32
    }
}

impl Ring for PrimeField {
    type Elem = u32;

    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (u64::from(*a) * u64::from(*b) % u64::from(self.p)) as u32
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u32().expect("residue fits")
    }
    fn fmt_elem(&self, a: &u32) -> String {
        a.to_string()
    }

    fn elem_to_json(&self, a: &u32) -> Value {
        Value::from(*a)
    }

    fn elem_from_json(&self, v: &Value) -> Result<u32, FieldError> {
        if let Some(n) = v.as_i64() {
            return Ok(self.reduce_i64(n));
        }
        if let Some(s) = v.as_str() {
            let n: BigInt = s.trim().parse().map_err(|_| FieldError::BadScalar(s.into()))?;
            return Ok(self.from_bigint(&n));
        }
        Err(FieldError::BadScalar(v.to_string()))
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u32) -> Result<u32, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(*a));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i64(t0))
    }

    fn from_rational(&self, r: &BigRational) -> Result<u32, FieldError> {
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        self.div(&n, &d)
    }

    fn sqrt2(&self) -> Result<u32, FieldError> {
        self.sqrt2
            .ok_or_else(|| FieldError::MissingSqrt2(self.descriptor().to_string()))
    }

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime { p: self.p, sqrt2: self.sqrt2 }
    }

    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }

    fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        debug_assert_eq!(a.len(), b.len());
        let budget = self.lazy_budget() as usize;
        let p = u64::from(self.p);
        let mut acc = 0u64;
        for (ca, cb) in a.chunks(budget.max(1)).zip(b.chunks(budget.max(1))) {
            for (x, y) in ca.iter().zip(cb) {
                acc += u64::from(*x) * u64::from(*y);
            }
            acc %= p;
        }
        acc as u32
    }

    fn axpy(&self, y: &mut [u32], alpha: &u32, x: &[u32]) {
        if *alpha == 0 {
            return;
        }
        let p = u64::from(self.p);
        let a = u64::from(*alpha);
        for (yi, xi) in y.iter_mut().zip(x) {
            *yi = ((u64::from(*yi) + a * u64::from(*xi)) % p) as u32;
        }
    }

    fn lincomb(&self, out: &mut [u32], coeffs: &[u32], rows: &[u32]) {
        let w = out.len();
        debug_assert_eq!(rows.len(), coeffs.len() * w);
        let p = u64::from(self.p);
        let budget = self.lazy_budget();
        let mut acc = vec![0u64; w];
        let mut pending = 0u64;
        for (c, row) in coeffs.iter().zip(rows.chunks_exact(w.max(1))) {
            if *c == 0 {
                continue;
            }
            if pending == budget {
                for v in acc.iter_mut() {
                    *v %= p;
                }
                pending = 0;
            }
            let c = u64::from(*c);
            for (v, r) in acc.iter_mut().zip(row) {
                *v += c * u64::from(*r);
            }
            pending += 1;
        }
        for (o, v) in out.iter_mut().zip(acc) {
            *o = (v % p) as u32;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt2_known_primes() {
        assert_eq!(sqrt2_residue(103, RootChoice::Smaller).unwrap(), 38);
        assert_eq!(sqrt2_residue(103, RootChoice::Larger).unwrap(), 65);
        assert_eq!(sqrt2_residue(100049, RootChoice::Smaller).unwrap(), 10948);
        assert_eq!(sqrt2_residue(3, RootChoice::Smaller), Err(FieldError::NoSqrt2(3)));
        assert_eq!(sqrt2_residue(15, RootChoice::Smaller), Err(FieldError::NotPrime(15)));
    }

    #[test]
    fn sqrt_mod_matches_brute_force() {
        for p in [7u64, 17, 23, 41, 97, 103, 113, 257, 7681] {
            for a in 0..p.min(200) {
                let brute = (0..p).find(|x| x * x % p == a);
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!(brute.is_none(), "p={p} a={a}"),
                }
            }
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = PrimeField::new(103).unwrap();
        assert_eq!(f.mul(&38, &38), 2);
        for a in 1..103u32 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
            assert_eq!(f.add(&a, &f.neg(&a)), 0);
        }
        assert_eq!(f.inv(&0), Err(FieldError::DivisionByZero));
        let g = PrimeField::new(100049).unwrap();
        assert_eq!(g.mul(&10948, &10948), 2);
    }

    #[test]
    fn kernels_match_naive() {
        let f = PrimeField::new(100049).unwrap();
        let a: Vec<u32> = (0..50).map(|i| (i * 7919 + 13) % 100049).collect();
        let b: Vec<u32> = (0..50).map(|i| (i * 104729 + 5) % 100049).collect();
        let naive = a.iter().zip(&b).fold(0u32, |s, (x, y)| f.add(&s, &f.mul(x, y)));
        assert_eq!(f.dot(&a, &b), naive);
        let mut out = vec![0u32; 10];
        f.lincomb(&mut out, &a[..5], &b);
        for (j, o) in out.iter().enumerate() {
            let mut s = 0;
            for i in 0..5 {
                s = f.add(&s, &f.mul(&a[i], &b[i * 10 + j]));
            }
            assert_eq!(*o, s);
        }
    }

    #[test]
    fn lazy_budget_forces_reduction_for_large_primes() {
        let f = PrimeField::new(2147483647).unwrap();
        assert!(f.lazy_budget() >= 3);
        let a = vec![f.modulus() - 1; 40];
        let naive = a.iter().fold(0u32, |s, x| f.add(&s, &f.mul(x, x)));
        assert_eq!(f.dot(&a, &a), naive);
        let mut out = vec![0u32; 1];
        f.lincomb(&mut out, &a, &a);
        assert_eq!(out[0], naive);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::with_sqrt2(103, 37).is_err());
        assert!(PrimeField::new_with_sqrt2(5).is_err());
    }
}
