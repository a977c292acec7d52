//! Rewriting of Lie-Yamaguti polynomials in Lie-Jordan-Yamaguti operations.
//!
//! In the algebras built from a reductive decomposition the Lie-Yamaguti
//! triple is recovered from the Lie-Jordan-Yamaguti operations as
//! `(x,y,z) = {x,y,z} - {y,x,z} - [[x,y],z]`. Substituting this into every
//! triple maps each Lie-Yamaguti identity to an identity of the
//! corresponding Lie-Jordan-Yamaguti algebra.

use std::sync::Arc;

use super::{FreeError, MultilinearPoly, OpSet, RawTree};
use crate::exactfield::Ring;

const BRACKET: usize = 0;
const TERNARY: usize = 1;

fn expand(t: &RawTree) -> Vec<(i64, RawTree)> {
    let RawTree::Node(k, ch) = t else {
        return vec![(1, t.clone())];
    };
    // all products of the children's expansions
    let mut combos: Vec<(i64, Vec<RawTree>)> = vec![(1, Vec::new())];
    for c in ch {
        let e = expand(c);
        combos = combos
            .iter()
            .flat_map(|(s, prefix)| {
                e.iter().map(move |(u, x)| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    (s * u, p)
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for (s, c) in combos {
        if *k == BRACKET {
            out.push((s, RawTree::Node(BRACKET, c)));
            continue;
        }
        let [a, b, z] = <[RawTree; 3]>::try_from(c).expect("ternary node");
        out.push((s, RawTree::Node(TERNARY, vec![a.clone(), b.clone(), z.clone()])));
        out.push((-s, RawTree::Node(TERNARY, vec![b.clone(), a.clone(), z.clone()])));
        out.push((-s, RawTree::Node(BRACKET, vec![RawTree::Node(BRACKET, vec![a, b]), z])));
    }
    out
}

/// The image of a polynomial over [`OpSet::ly`] in the operations of
/// [`OpSet::ljy`].
pub fn ly_to_ljy<R: Ring>(f: &MultilinearPoly<R>) -> Result<MultilinearPoly<R>, FreeError> {
    if **f.ops() != *OpSet::ly() {
        return Err(FreeError::OpsMismatch);
    }
    let ring = f.ring();
    let target: Arc<OpSet> = OpSet::ljy();
    let mut out = MultilinearPoly::zero(ring.clone(), target, f.degree());
    for (m, c) in f.terms() {
        for (s, t) in expand(&f.ops().to_raw(m)) {
            out.add_raw(&t, &ring.mul(c, &ring.from_i64(s)))?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeops::{catalog_identity, parse_poly};

    #[test]
    fn triple_becomes_three_terms() {
        let f = parse_poly(&OpSet::ly(), "(a,b,c)").unwrap();
        let g = ly_to_ljy(&f).unwrap();
        let want = parse_poly(&OpSet::ljy(), "{a,b,c} - {b,a,c} - [[a,b],c]").unwrap();
        assert_eq!(g, want);
    }

    #[test]
    fn skew_symmetry_of_the_image() {
        // (a,b,c) + (b,a,c) = 0 maps to zero
        let f = parse_poly(&OpSet::ly(), "(a,b,c) + (b,a,c)").unwrap();
        assert!(f.is_zero());
        let g = ly_to_ljy(&parse_poly(&OpSet::ly(), "(a,b,c)").unwrap()).unwrap();
        let h = ly_to_ljy(&parse_poly(&OpSet::ly(), "(b,a,c)").unwrap()).unwrap();
        assert_eq!(g, h.neg());
    }

    #[test]
    fn rejects_other_operation_sets() {
        let f = catalog_identity("LJY3-deg5-1").unwrap();
        assert_eq!(ly_to_ljy(&f), Err(FreeError::OpsMismatch));
    }
}
