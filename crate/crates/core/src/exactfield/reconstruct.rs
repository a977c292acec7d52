use num_rational::BigRational;

use super::FieldError;

/// `floor(sqrt(p / 2))`, the bound on both |numerator| and denominator.
pub fn reconstruction_bound(p: u64) -> u64 {
    let half = p / 2;
    let mut b = (half as f64).sqrt() as u64;
    while b * b > half {
        b -= 1;
    }
    while (b + 1) * (b + 1) <= half {
        b += 1;
    }
    b
}

/// Half-extended Euclid. Returns `(a, b)` with `b > 0`, `gcd(a, b) = 1`,
/// `a ≡ r b (mod p)` and `|a|, b <= floor(sqrt(p/2))`.
pub fn rational_reconstruct_i64(r: u64, p: u64) -> Result<(i64, i64), FieldError> {
    let bound = reconstruction_bound(p) as i64;
    let fail = || FieldError::Reconstruction { residue: r, p, bound: bound as u64 };
    let r = r % p;
    if r == 0 {
        return Ok((0, 1));
    }
    let (mut r0, mut r1) = (p as i64, r as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 > bound {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    let (mut a, mut b) = (r1, t1);
    if b < 0 {
        a = -a;
        b = -b;
    }
    if b == 0 || b > bound || a.abs() > bound || num_integer::gcd(a, b) != 1 {
        return Err(fail());
    }
    Ok((a, b))
}

pub fn rational_reconstruct(r: u64, p: u64) -> Result<BigRational, FieldError> {
    let (a, b) = rational_reconstruct_i64(r, p)?;
    Ok(BigRational::new(a.into(), b.into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(rational_reconstruct_i64(102, 103).unwrap(), (-1, 1));
        assert_eq!(rational_reconstruct_i64(0, 103).unwrap(), (0, 1));
        assert_eq!(rational_reconstruct_i64(52, 103).unwrap(), (1, 2));
        assert_eq!(reconstruction_bound(103), 7);
        assert_eq!(reconstruction_bound(100049), 223);
    }

    #[test]
    fn out_of_bound_fails() {
        // 104/3 needs a larger prime
        let p = 103u64;
        let r = 104 * 69 % p; // 69 = 3^{-1} mod 103
        assert_eq!(3 * 69 % p, 1);
        assert!(rational_reconstruct_i64(r, p).map(|x| x != (104, 3)).unwrap_or(true));
        let p = 100049u64;
        let inv3 = (1..p).find(|x| 3 * x % p == 1).unwrap();
        assert_eq!(rational_reconstruct_i64(104 * inv3 % p, p).unwrap(), (104, 3));
    }
}
