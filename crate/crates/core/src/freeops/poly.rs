//! Multilinear polynomials: sparse maps from normal monomials to scalars.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::basis::MonomialBasis;
use super::monomial::{Monomial, RawTree};
use super::opset::OpSet;
use super::FreeError;
use crate::exactfield::{Integers, Ring};

#[derive(Clone)]
pub struct MultilinearPoly<R: Ring> {
    ring: R,
    ops: Arc<OpSet>,
    degree: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: Ring> MultilinearPoly<R> {
    pub fn zero(ring: R, ops: Arc<OpSet>, degree: usize) -> Self {
        MultilinearPoly { ring, ops, degree, terms: BTreeMap::new() }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn ops(&self) -> &Arc<OpSet> {
        &self.ops
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Adds `sign * c * m`; `m` must already be normal.
    pub fn add_term(&mut self, m: Monomial, c: &R::Elem, sign: i8) {
        debug_assert_eq!(m.degree(), self.degree);
        if self.ring.is_zero(c) {
            return;
        }
        let c = self.ring.scale_sign(c, sign);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.ring.add(e.get(), &c);
                if self.ring.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Normalises `raw` and adds `c` times it.
    pub fn add_raw(&mut self, raw: &RawTree, c: &R::Elem) -> Result<(), FreeError> {
        let (m, s) = self.ops.canonicalize(raw)?;
        if m.degree() != self.degree {
            return Err(FreeError::DegreeMismatch { expected: self.degree, found: m.degree() });
        }
        self.add_term(m, c, s);
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<(), FreeError> {
        if *self.ops != *other.ops {
            return Err(FreeError::OpsMismatch);
        }
        if self.degree != other.degree {
            return Err(FreeError::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Self, c: &R::Elem) -> Result<(), FreeError> {
        self.check_compatible(other)?;
        for (m, a) in &other.terms {
            let t = self.ring.mul(a, c);
            self.add_term(*m, &t, 1);
        }
        Ok(())
    }

    pub fn scaled(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(self.ring.clone(), self.ops.clone(), self.degree);
        for (m, a) in &self.terms {
            out.add_term(*m, &self.ring.mul(a, c), 1);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&self.ring.from_i64(-1))
    }

    /// Relabels variable `i` as `sigma[i]` in every term and renormalises.
    pub fn apply_permutation(&self, sigma: &[u8]) -> Self {
        assert_eq!(sigma.len(), self.degree, "permutation degree");
        let mut out = Self::zero(self.ring.clone(), self.ops.clone(), self.degree);
        for (m, c) in &self.terms {
            let (m2, s) = self.ops.permute_monomial(m, sigma);
            out.add_term(m2, c, s);
        }
        out
    }

    /// Substitutes, for each variable `i`, the tree `subs[i]`; the result is
    /// normalised in the degree given by the total leaf count.
    pub fn substitute(&self, subs: &[RawTree]) -> Result<Self, FreeError> {
        let degree: usize = subs.iter().map(|t| t.leaves().len()).sum();
        let mut out = Self::zero(self.ring.clone(), self.ops.clone(), degree);
        for (m, c) in &self.terms {
            let raw = self.ops.to_raw(m);
            out.add_raw(&substitute_all(&raw, subs), c)?;
        }
        Ok(out)
    }

    /// Reinterprets the coefficients in another ring.
    pub fn map_ring<S: Ring>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> MultilinearPoly<S> {
        let mut out = MultilinearPoly::zero(target, self.ops.clone(), self.degree);
        for (m, c) in &self.terms {
            let v = f(c);
            out.add_term(*m, &v, 1);
        }
        out
    }

    /// Coefficient vector over `basis`; fails if a term lies outside it.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Result<Vec<R::Elem>, FreeError> {
        if basis.degree() != self.degree {
            return Err(FreeError::DegreeMismatch { expected: basis.degree(), found: self.degree });
        }
        let mut v = vec![self.ring.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.index_of(m).ok_or_else(|| FreeError::OutsideBasis(self.ops.fmt_monomial(m)))?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense(ring: R, ops: Arc<OpSet>, basis: &MonomialBasis, v: &[R::Elem]) -> Self {
        assert_eq!(v.len(), basis.len(), "vector length");
        let mut out = Self::zero(ring, ops, basis.degree());
        for (m, c) in basis.monomials().iter().zip(v) {
            out.add_term(*m, c, 1);
        }
        out
    }

    /// Ops in use, as a mask over operation indices.
    pub fn ops_mask(&self) -> u32 {
        self.terms.keys().fold(0, |m, t| m | self.ops.types().get(t.type_id()).ops_mask)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let perm: Vec<usize> = m.labels().iter().map(|&x| x as usize + 1).collect();
                json!({ "type": self.ops.shape(m.type_id()), "perm": perm, "coeff": self.ring.elem_to_json(c) })
            })
            .collect();
        json!({ "degree": self.degree, "ops": self.ops.to_json(), "terms": terms })
    }

    pub fn from_json(ring: R, v: &Value) -> Result<Self, FreeError> {
        let bad = |msg: &str| FreeError::Parse { pos: 0, msg: msg.to_string() };
        let ops = OpSet::from_json(v.get("ops").ok_or_else(|| bad("missing ops"))?)?;
        let degree = v.get("degree").and_then(Value::as_u64).ok_or_else(|| bad("missing degree"))? as usize;
        if degree == 0 || degree > ops.max_degree() {
            return Err(FreeError::DegreeTooLarge(degree));
        }
        let mut out = Self::zero(ring, ops, degree);
        for t in v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))? {
            let shape = t.get("type").and_then(Value::as_str).ok_or_else(|| bad("term without type"))?;
            let perm: Vec<u8> = t
                .get("perm")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without perm"))?
                .iter()
                .map(|x| x.as_u64().filter(|&i| i >= 1 && i <= degree as u64).map(|i| (i - 1) as u8))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("perm entries must lie in 1..=degree"))?;
            let c = out.ring.elem_from_json(t.get("coeff").ok_or_else(|| bad("term without coeff"))?)?;
            let raw = super::parse::parse_shape(&out.ops, shape, &perm)?;
            out.add_raw(&raw, &c)?;
        }
        Ok(out)
    }

    pub fn fmt_with(&self, coeff: impl Fn(&R::Elem) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mut c = coeff(c);
            let neg = c.starts_with('-');
            if neg {
                c.remove(0);
            }
            if neg {
                s.push('-');
            } else if i > 0 {
                s.push('+');
            }
            if c != "1" {
                s.push_str(&c);
            }
            s.push_str(&self.ops.fmt_monomial(m));
        }
        s
    }
}

fn substitute_all(raw: &RawTree, subs: &[RawTree]) -> RawTree {
    match raw {
        RawTree::Leaf(x) => subs[*x as usize].clone(),
        RawTree::Node(k, ch) => RawTree::Node(*k, ch.iter().map(|c| substitute_all(c, subs)).collect()),
    }
}

impl<R: Ring> PartialEq for MultilinearPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && *self.ops == *other.ops && self.terms == other.terms
    }
}

impl<R: Ring> fmt::Debug for MultilinearPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultilinearPoly(deg {}, {})", self.degree, self)
    }
}

impl<R: Ring> fmt::Display for MultilinearPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(|c| self.ring.fmt_elem(c)))
    }
}

/// Integer polynomials: the form in which identities are reported.
pub type IntPoly = MultilinearPoly<Integers>;

impl MultilinearPoly<Integers> {
    /// Sum of squared coefficients.
    pub fn squared_length(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }

    /// Divides by the gcd of the coefficients and makes the first one positive.
    pub fn primitive(&self) -> Self {
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c));
        if g.is_zero() {
            return self.clone();
        }
        let first_neg = self.terms.values().next().map(|c| c.is_negative()).unwrap_or(false);
        let g = if first_neg { -g } else { g };
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = &*c / &g;
        }
        out
    }

    /// Distinct absolute values of the coefficients.
    pub fn coefficient_set(&self) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = self.terms.values().cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;
    use crate::freeops::perm::all_permutations;
    use crate::freeops::OpSelection;

    fn ly3() -> IntPoly {
        super::super::parse::parse_poly(&OpSet::ly(), "[[a,b],c]+[[b,c],a]+[[c,a],b]+(a,b,c)+(b,c,a)+(c,a,b)").unwrap()
    }

    #[test]
    fn ly3_normal_form() {
        assert_eq!(ly3().to_string(), "[[a,b],c]-[[a,c],b]+[[b,c],a]+(a,b,c)-(a,c,b)+(b,c,a)");
    }

    #[test]
    fn permutation_action() {
        let f = ly3();
        assert_eq!(f.apply_permutation(&[0, 1, 2]), f);
        assert_eq!(f.apply_permutation(&[1, 2, 0]), f);
        let g = super::super::parse::parse_poly(&OpSet::ly(), "[[a,b],c]").unwrap();
        assert_eq!(g.apply_permutation(&[1, 0, 2]), g.neg());
    }

    #[test]
    fn action_is_coherent() {
        let f = super::super::parse::parse_poly(&OpSet::ly(), "([a,b],c,d)+2[(a,c,d),b]-[[c,a],[d,b]]").unwrap();
        let perms = all_permutations(4);
        for s in &perms {
            for t in perms.iter().step_by(3) {
                let lhs = f.apply_permutation(s).apply_permutation(t);
                let rhs = f.apply_permutation(&crate::freeops::perm::compose(t, s));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dense_and_json_round_trip() {
        let f = ly3();
        let b = OpSet::ly().basis(3, OpSelection::Mixed).unwrap();
        let v = f.to_dense(&b).unwrap();
        let ints: Vec<i64> = v.iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(ints, vec![1, -1, 1, 1, -1, 1]);
        assert_eq!(IntPoly::from_dense(Integers, OpSet::ly(), &b, &v), f);
        let j = f.to_json();
        assert_eq!(j["terms"][0]["type"], "[[--]-]");
        assert_eq!(IntPoly::from_json(Integers, &j).unwrap(), f);
        let fp = PrimeField::new(103).unwrap();
        let g = f.map_ring(fp, |c| fp.from_bigint(c));
        let dense: Vec<u32> = g.to_dense(&b).unwrap();
        assert_eq!(dense, vec![1, 102, 1, 1, 102, 1]);
    }

    #[test]
    fn primitive_part() {
        let f = super::super::parse::parse_poly(&OpSet::ly(), "-4[[a,b],c]+6(a,b,c)").unwrap();
        assert_eq!(f.primitive().to_string(), "2[[a,b],c]-3(a,b,c)");
        assert_eq!(f.squared_length(), BigInt::from(52));
    }
}
