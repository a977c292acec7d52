//! From residues mod p back to integer identities.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::IdError;
use crate::exactfield::{rational_reconstruct_i64, Integers, PrimeField, SparseVec};
use crate::freeops::{IntPoly, MonomialBasis, MultilinearPoly};

/// Integer coefficients `(column, value)` of a residue vector: each
/// coefficient is reconstructed as a rational, the vector is multiplied by
/// the lcm of the denominators and divided by the gcd of the results.
pub fn reconstruct_sparse(v: &[(u32, u32)], p: u32) -> Result<Vec<(u32, BigInt)>, IdError> {
    let mut fracs = Vec::with_capacity(v.len());
    let mut lcm = BigInt::one();
    for &(c, r) in v {
        let (a, b) = rational_reconstruct_i64(u64::from(r), u64::from(p))
            .map_err(|_| IdError::Reconstruction { column: c as usize, residue: r, p })?;
        lcm = lcm.lcm(&BigInt::from(b));
        fracs.push((c, a, b));
    }
    let ints: Vec<(u32, BigInt)> = fracs.into_iter().map(|(c, a, b)| (c, BigInt::from(a) * (&lcm / b))).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return Ok(ints.into_iter().filter(|(_, x)| !x.is_zero()).collect());
    }
    Ok(ints.into_iter().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x / &g)).collect())
}

/// [`reconstruct_sparse`] for a polynomial with residue coefficients.
pub fn reconstruct_identity(f: &MultilinearPoly<PrimeField>) -> Result<IntPoly, IdError> {
    let p = f.ring().modulus();
    let mut out = IntPoly::zero(Integers, f.ops().clone(), f.degree());
    let terms: Vec<_> = f.terms().map(|(m, c)| (*m, *c)).collect();
    let v: SparseVec = terms.iter().enumerate().map(|(i, (_, c))| (i as u32, *c)).collect();
    for (i, x) in reconstruct_sparse(&v, p)? {
        out.add_term(terms[i as usize].0, &x, 1);
    }
    Ok(out)
}

/// The integer polynomial with coefficients `v` over `basis`.
pub fn integer_poly(v: &[(u32, BigInt)], basis: &MonomialBasis, ops: &std::sync::Arc<crate::freeops::OpSet>) -> IntPoly {
    let mut out = IntPoly::zero(Integers, ops.clone(), basis.degree());
    for (c, x) in v {
        out.add_term(*basis.get(*c as usize), x, 1);
    }
    out
}

/// Squared Euclidean length of integer coefficients.
pub(crate) fn squared_length(v: &[(u32, BigInt)]) -> BigInt {
    v.iter().map(|(_, x)| x * x).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_the_degree_three_identity() {
        let v: SparseVec = [1, 102, 1, 1, 102, 1].iter().enumerate().map(|(i, &x)| (i as u32, x)).collect();
        let r = reconstruct_sparse(&v, 103).unwrap();
        let ints: Vec<i64> = r.iter().map(|(_, x)| x.try_into().unwrap()).collect();
        assert_eq!(ints, vec![1, -1, 1, 1, -1, 1]);
        assert!(reconstruct_sparse(&[], 103).unwrap().is_empty());
    }

    #[test]
    fn clears_denominators_and_content() {
        // 1/2, 3/2 -> 1, 3 ; 52 = 1/2 mod 103, 53 = 3/2 mod 103
        let r = reconstruct_sparse(&[(0, 52), (4, 53)], 103).unwrap();
        assert_eq!(r, vec![(0, BigInt::from(1)), (4, BigInt::from(3))]);
        let r = reconstruct_sparse(&[(0, 2), (1, 4)], 103).unwrap();
        assert_eq!(r, vec![(0, BigInt::from(1)), (1, BigInt::from(2))]);
        assert!(matches!(reconstruct_sparse(&[(3, 8)], 103), Err(IdError::Reconstruction { column: 3, .. })));
    }
}
