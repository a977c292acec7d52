//! Multilinear monomials in normal form.
//!
//! A monomial is a canonical association type plus the variable sitting at
//! each leaf, read left to right. Within a canonical type the remaining
//! freedom is to rearrange children with equal types; the normal form puts
//! the child holding the smallest variable first (more precisely: it picks
//! the rearrangement whose tuple of child minima is least).

use std::cmp::Ordering;
use std::fmt;

use super::opset::OpSet;
use super::{FreeError, MAX_DEGREE};

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    ty: u32,
    deg: u8,
    labels: [u8; MAX_DEGREE],
}

impl Monomial {
    /// Caller guarantees that `labels` is a normal labelling of `ty`.
    pub(crate) fn from_parts(ty: u32, labels: &[u8]) -> Self {
        let mut l = [0u8; MAX_DEGREE];
        l[..labels.len()].copy_from_slice(labels);
        Monomial { ty, deg: labels.len() as u8, labels: l }
    }

    pub fn type_id(&self) -> u32 {
        self.ty
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    /// Variable index (0-based) at each leaf in left-to-right order.
    pub fn labels(&self) -> &[u8] {
        &self.labels[..self.deg as usize]
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ty, self.labels()).cmp(&(other.ty, other.labels()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial(type {}, {:?})", self.ty, self.labels())
    }
}

/// An unnormalised tree over an operation set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawTree {
    Leaf(u8),
    Node(usize, Vec<RawTree>),
}

impl RawTree {
    pub fn leaves(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect(&self, out: &mut Vec<u8>) {
        match self {
            RawTree::Leaf(x) => out.push(*x),
            RawTree::Node(_, ch) => ch.iter().for_each(|c| c.collect(out)),
        }
    }

    pub fn relabel(&self, f: &dyn Fn(u8) -> u8) -> RawTree {
        match self {
            RawTree::Leaf(x) => RawTree::Leaf(f(*x)),
            RawTree::Node(k, ch) => RawTree::Node(*k, ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Replaces leaf `x` by `sub`.
    pub fn substitute(&self, x: u8, sub: &RawTree) -> RawTree {
        match self {
            RawTree::Leaf(y) if *y == x => sub.clone(),
            RawTree::Leaf(_) => self.clone(),
            RawTree::Node(k, ch) => RawTree::Node(*k, ch.iter().map(|c| c.substitute(x, sub)).collect()),
        }
    }
}

/// Letter for variable `i`: `a`, `b`, ... then `x27`, `x28`, ...
pub fn var_name(i: u8) -> String {
    if i < 26 {
        ((b'a' + i) as char).to_string()
    } else {
        format!("x{}", i as usize + 1)
    }
}

struct Canon {
    ty: u32,
    labels: Vec<u8>,
    min: u8,
    sign: i8,
}

impl OpSet {
    /// Normal form of an arbitrary tree together with the sign picked up by
    /// the slot swaps. The tree must be multilinear in `0..degree`.
    pub fn canonicalize(&self, raw: &RawTree) -> Result<(Monomial, i8), FreeError> {
        let leaves = raw.leaves();
        let d = leaves.len();
        if d > self.max_degree() {
            return Err(FreeError::DegreeTooLarge(d));
        }
        let mut seen = vec![false; d];
        for &x in &leaves {
            if (x as usize) >= d || std::mem::replace(&mut seen[x as usize], true) {
                return Err(FreeError::NotMultilinear(format!("leaf variables {leaves:?}")));
            }
        }
        let c = self.canon_rec(raw)?;
        Ok((Monomial::from_parts(c.ty, &c.labels), c.sign))
    }

    fn canon_rec(&self, raw: &RawTree) -> Result<Canon, FreeError> {
        match raw {
            RawTree::Leaf(x) => Ok(Canon { ty: 0, labels: vec![*x], min: *x, sign: 1 }),
            RawTree::Node(k, ch) => {
                let op = self.ops().get(*k).ok_or_else(|| FreeError::Signature(format!("no operation {k}")))?;
                if ch.len() != op.arity {
                    return Err(FreeError::Signature(format!("{} takes {} arguments", op.name, op.arity)));
                }
                let kids: Vec<Canon> = ch.iter().map(|c| self.canon_rec(c)).collect::<Result<_, _>>()?;
                // maximise child types, then minimise child minima
                let rank = |a: &[u8]| -> (Vec<std::cmp::Reverse<u32>>, Vec<u8>) {
                    (
                        a.iter().map(|&s| std::cmp::Reverse(kids[s as usize].ty)).collect(),
                        a.iter().map(|&s| kids[s as usize].min).collect(),
                    )
                };
                let best = self
                    .group(*k)
                    .iter()
                    .min_by(|x, y| rank(&x.perm).cmp(&rank(&y.perm)))
                    .expect("group contains the identity");
                let child_types: Vec<u32> = best.perm.iter().map(|&s| kids[s as usize].ty).collect();
                let ty = self
                    .types()
                    .find(*k, &child_types)
                    .ok_or_else(|| FreeError::DegreeTooLarge(kids.iter().map(|c| c.labels.len()).sum()))?;
                let mut labels = Vec::new();
                let mut sign = best.sign;
                for &s in &best.perm {
                    let c = &kids[s as usize];
                    labels.extend_from_slice(&c.labels);
                    sign *= c.sign;
                }
                let min = kids.iter().map(|c| c.min).min().unwrap_or(0);
                Ok(Canon { ty, labels, min, sign })
            }
        }
    }

    /// Rebuilds the tree of a monomial.
    pub fn to_raw(&self, m: &Monomial) -> RawTree {
        let mut pos = 0;
        self.raw_rec(m.ty, m.labels(), &mut pos)
    }

    fn raw_rec(&self, ty: u32, labels: &[u8], pos: &mut usize) -> RawTree {
        let t = self.types().get(ty);
        match t.op {
            None => {
                *pos += 1;
                RawTree::Leaf(labels[*pos - 1])
            }
            Some(k) => RawTree::Node(k, t.children.iter().map(|&c| self.raw_rec(c, labels, pos)).collect()),
        }
    }

    /// Brings a labelling of type `ty` into normal form in place and returns
    /// the sign. Only swaps between equal-type children are needed since the
    /// type itself is already canonical.
    pub(crate) fn normalize_labels(&self, ty: u32, labels: &mut [u8]) -> i8 {
        let mut sign = 1i8;
        let mut scratch = [0u8; MAX_DEGREE];
        let mut mins = [0u8; 8];
        for node in &self.types().program(ty).nodes {
            for (s, span) in node.spans.iter().enumerate() {
                mins[s] = *labels[span.clone()].iter().min().expect("nonempty span");
            }
            let less = |x: &[u8], y: &[u8]| {
                x.iter().map(|&s| mins[s as usize]).lt(y.iter().map(|&s| mins[s as usize]))
            };
            let mut best = &node.stab[0];
            for a in &node.stab[1..] {
                if less(&a.perm, &best.perm) {
                    best = a;
                }
            }
            if best.is_identity() {
                continue;
            }
            let mut off = node.start;
            for &s in &best.perm {
                let span = &node.spans[s as usize];
                let len = span.len();
                scratch[off..off + len].copy_from_slice(&labels[span.clone()]);
                off += len;
            }
            labels[node.start..off].copy_from_slice(&scratch[node.start..off]);
            sign *= best.sign;
        }
        sign
    }

    /// Acts by `sigma` (variable `i` becomes `sigma[i]`) and renormalises.
    pub fn permute_monomial(&self, m: &Monomial, sigma: &[u8]) -> (Monomial, i8) {
        let mut out = *m;
        let d = m.degree();
        for x in &mut out.labels[..d] {
            *x = sigma[*x as usize];
        }
        let sign = self.normalize_labels(m.ty, &mut out.labels[..d]);
        (out, sign)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        self.fmt_raw(&self.to_raw(m), &mut s);
        s
    }

    pub fn fmt_raw(&self, raw: &RawTree, out: &mut String) {
        match raw {
            RawTree::Leaf(x) => out.push_str(&var_name(*x)),
            RawTree::Node(k, ch) => {
                let op = self.op(*k);
                out.push(op.open());
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.fmt_raw(c, out);
                }
                out.push(op.close());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use RawTree::{Leaf, Node};

    fn b(x: RawTree, y: RawTree) -> RawTree {
        Node(0, vec![x, y])
    }
    fn t(x: RawTree, y: RawTree, z: RawTree) -> RawTree {
        Node(1, vec![x, y, z])
    }

    #[test]
    fn documented_examples() {
        let ly = OpSet::ly();
        let (m, s) = ly.canonicalize(&b(b(Leaf(1), Leaf(0)), Leaf(2))).unwrap();
        assert_eq!((ly.fmt_monomial(&m).as_str(), s), ("[[a,b],c]", -1));
        let (m, s) = ly.canonicalize(&t(Leaf(1), Leaf(0), b(Leaf(3), Leaf(2)))).unwrap();
        assert_eq!((ly.fmt_monomial(&m).as_str(), s), ("(a,b,[c,d])", 1));
        let (m, s) = ly.canonicalize(&b(Leaf(0), b(Leaf(1), Leaf(2)))).unwrap();
        assert_eq!((ly.fmt_monomial(&m).as_str(), s), ("[[b,c],a]", -1));
    }

    #[test]
    fn ljy_outer_symmetry() {
        let ljy = OpSet::ljy();
        let (m, s) = ljy.canonicalize(&t(Leaf(2), Leaf(1), Leaf(0))).unwrap();
        assert_eq!((ljy.fmt_monomial(&m).as_str(), s), ("{a,b,c}", 1));
        let (m, s) = ljy.canonicalize(&t(Leaf(3), b(Leaf(1), Leaf(0)), Leaf(2))).unwrap();
        assert_eq!((ljy.fmt_monomial(&m).as_str(), s), ("{c,[a,b],d}", -1));
    }

    #[test]
    fn rejects_non_multilinear() {
        let ly = OpSet::ly();
        assert!(ly.canonicalize(&b(Leaf(0), Leaf(0))).is_err());
        assert!(ly.canonicalize(&b(Leaf(0), Leaf(2))).is_err());
    }

    #[test]
    fn fast_path_matches_general() {
        let ly = OpSet::ly();
        let raw = t(b(Leaf(0), Leaf(1)), b(Leaf(2), Leaf(3)), b(Leaf(4), Leaf(5)));
        let (m, s0) = ly.canonicalize(&raw).unwrap();
        for sigma in super::super::perm::all_permutations(6) {
            let (fast, s1) = ly.permute_monomial(&m, &sigma);
            let (slow, s2) = ly.canonicalize(&raw.relabel(&|x| sigma[x as usize])).unwrap();
            assert_eq!(fast, slow);
            assert_eq!(s0 * s1, s2);
        }
    }
}
