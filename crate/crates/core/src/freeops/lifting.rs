//! Liftings: the consequences of an identity one operation higher.
//!
//! For an operation `w` of arity `r` and `f(x1..xd)`, one step produces the
//! `d` substitutions `f(.., w(xi, new..), ..)` followed by the `r`
//! embeddings `w(.., f, ..)` with new variables in the other slots. Modulo
//! the symmetric-group action this is everything: the order of the new
//! variables and the slot of `xi` inside `w` are reached by permuting.

use super::monomial::RawTree;
use super::poly::MultilinearPoly;
use super::FreeError;
use crate::exactfield::Ring;

fn new_vars(d: usize, count: usize) -> impl Iterator<Item = RawTree> {
    (d..d + count).map(|x| RawTree::Leaf(x as u8))
}

/// Single-step liftings through operation `k`, in the fixed order.
pub fn lift_through<R: Ring>(f: &MultilinearPoly<R>, k: usize) -> Result<Vec<MultilinearPoly<R>>, FreeError> {
    let ops = f.ops().clone();
    let d = f.degree();
    let r = ops.op(k).arity;
    let target = d + r - 1;
    if target > ops.max_degree() {
        return Err(FreeError::DegreeTooLarge(target));
    }
    let mut out = Vec::with_capacity(d + r);
    for i in 0..d {
        let mut subs: Vec<RawTree> = (0..d).map(|x| RawTree::Leaf(x as u8)).collect();
        subs[i] = RawTree::Node(k, std::iter::once(RawTree::Leaf(i as u8)).chain(new_vars(d, r - 1)).collect());
        out.push(f.substitute(&subs)?);
    }
    for j in 0..r {
        let mut g = MultilinearPoly::zero(f.ring().clone(), ops.clone(), target);
        for (m, c) in f.terms() {
            let mut extra = new_vars(d, r - 1);
            let args: Vec<RawTree> =
                (0..r).map(|s| if s == j { ops.to_raw(m) } else { extra.next().expect("r-1 new variables") }).collect();
            g.add_raw(&RawTree::Node(k, args), c)?;
        }
        out.push(g);
    }
    Ok(out)
}

/// All single-step liftings, operation by operation.
pub fn lift_once<R: Ring>(f: &MultilinearPoly<R>) -> Result<Vec<MultilinearPoly<R>>, FreeError> {
    let mut out = Vec::new();
    for k in 0..f.ops().ops().len() {
        if f.degree() + f.ops().op(k).arity - 1 <= f.ops().max_degree() {
            out.extend(lift_through(f, k)?);
        }
    }
    Ok(out)
}

/// Every composite lifting of `f` that lands exactly in degree `target`,
/// deduplicated up to sign.
pub fn liftings<R: Ring>(f: &MultilinearPoly<R>, target: usize) -> Result<Vec<MultilinearPoly<R>>, FreeError> {
    if target > f.ops().max_degree() {
        return Err(FreeError::DegreeTooLarge(target));
    }
    let mut out = Vec::new();
    collect(f, target, &mut out)?;
    Ok(dedup_up_to_sign(out))
}

fn collect<R: Ring>(f: &MultilinearPoly<R>, target: usize, out: &mut Vec<MultilinearPoly<R>>) -> Result<(), FreeError> {
    if f.degree() == target {
        out.push(f.clone());
        return Ok(());
    }
    for k in 0..f.ops().ops().len() {
        let next = f.degree() + f.ops().op(k).arity - 1;
        if next <= target {
            for g in lift_through(f, k)? {
                collect(&g, target, out)?;
            }
        }
    }
    Ok(())
}

/// Keeps the first of any group of polynomials equal up to sign.
pub fn dedup_up_to_sign<R: Ring>(polys: Vec<MultilinearPoly<R>>) -> Vec<MultilinearPoly<R>> {
    let mut seen: std::collections::HashMap<Vec<super::Monomial>, Vec<usize>> = Default::default();
    let mut out: Vec<MultilinearPoly<R>> = Vec::new();
    for p in polys {
        let key: Vec<super::Monomial> = p.terms().map(|(m, _)| *m).collect();
        let bucket = seen.entry(key).or_default();
        let neg = p.neg();
        if bucket.iter().any(|&i| out[i] == p || out[i] == neg) {
            continue;
        }
        bucket.push(out.len());
        out.push(p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freeops::{parse_poly, OpSet};

    #[test]
    fn single_step_shape() {
        let ly = OpSet::ly();
        let ly3 = parse_poly(&ly, "[[a,b],c]+[[b,c],a]+[[c,a],b]+(a,b,c)+(b,c,a)+(c,a,b)").unwrap();
        let l = lift_through(&ly3, 0).unwrap();
        assert_eq!(l.len(), 5);
        let first = parse_poly(&ly, "[[[a,d],b],c]+[[b,c],[a,d]]+[[c,[a,d]],b]+([a,d],b,c)+(b,c,[a,d])+(c,[a,d],b)").unwrap();
        assert_eq!(l[0], first);
        let emb = parse_poly(&ly, "[[[a,b],c],d]+[[[b,c],a],d]+[[[c,a],b],d]+[(a,b,c),d]+[(b,c,a),d]+[(c,a,b),d]").unwrap();
        assert_eq!(l[3], emb);
        // the two embeddings of a skew bracket differ by sign only
        assert_eq!(l[4], emb.neg());
        assert_eq!(liftings(&ly3, 4).unwrap().len(), 4);
    }

    #[test]
    fn multi_step_counts() {
        let ly = OpSet::ly();
        let f = parse_poly(&ly, "[a,b]").unwrap();
        // degree 3: [[a,c],b] [a,[b,c]] [[a,b],c] (twice up to sign)
        assert_eq!(liftings(&f, 3).unwrap().len(), 3);
        assert!(liftings(&f, 9).is_err());
    }
}
