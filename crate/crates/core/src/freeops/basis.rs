//! Ordered bases of normal monomials; the column labels of every matrix.

use std::collections::{BTreeSet, HashMap};

use super::monomial::Monomial;
use super::opset::OpSet;
use super::perm::{all_permutations, factorial, lehmer_rank};

const ABSENT: u32 = u32::MAX;

/// All normal monomials of one degree over a subset of the operations,
/// grouped by type in registry order and lexicographic within a type.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    degree: usize,
    mask: u32,
    monomials: Vec<Monomial>,
    types: Vec<u32>,
    type_start: Vec<usize>,
    type_slot: HashMap<u32, usize>,
    /// `columns[slot * d! + lehmer(labels)]`
    columns: Vec<u32>,
}

impl MonomialBasis {
    pub(crate) fn build(ops: &OpSet, d: usize, mask: u32) -> Self {
        let types: Vec<u32> = ops.types_in(d, mask).iter().map(|t| t.id).collect();
        let perms = all_permutations(d);
        let per_type: Vec<Vec<Vec<u8>>> = crate::par::map(&types, true, |&ty| {
            let mut seen = BTreeSet::new();
            for p in &perms {
                let mut l = p.clone();
                ops.normalize_labels(ty, &mut l);
                seen.insert(l);
            }
            seen.into_iter().collect()
        });
        let fact = factorial(d);
        let mut monomials = Vec::new();
        let mut type_start = Vec::with_capacity(types.len() + 1);
        let mut columns = vec![ABSENT; types.len() * fact];
        for (slot, (&ty, labs)) in types.iter().zip(&per_type).enumerate() {
            type_start.push(monomials.len());
            for l in labs {
                columns[slot * fact + lehmer_rank(l)] = monomials.len() as u32;
                monomials.push(Monomial::from_parts(ty, l));
            }
        }
        type_start.push(monomials.len());
        let type_slot = types.iter().enumerate().map(|(s, &t)| (t, s)).collect();
        MonomialBasis { degree: d, mask, monomials, types, type_start, type_slot, columns }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, col: usize) -> &Monomial {
        &self.monomials[col]
    }

    pub fn type_ids(&self) -> &[u32] {
        &self.types
    }

    /// Number of monomials of each type, in type order.
    pub fn counts_per_type(&self) -> Vec<usize> {
        self.type_start.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        if m.degree() != self.degree {
            return None;
        }
        let slot = *self.type_slot.get(&m.type_id())?;
        let c = self.columns[slot * factorial(self.degree) + lehmer_rank(m.labels())];
        (c != ABSENT).then_some(c as usize)
    }

    /// Column and sign of `sigma` applied to the monomial in column `col`.
    pub fn permute_column(&self, ops: &OpSet, col: usize, sigma: &[u8]) -> (usize, i8) {
        let (m, s) = ops.permute_monomial(&self.monomials[col], sigma);
        (self.index_of(&m).expect("permutation preserves the basis"), s)
    }

    /// Position of each of our columns inside a larger basis of the same degree.
    pub fn embedding_into(&self, larger: &MonomialBasis) -> Option<Vec<usize>> {
        self.monomials.iter().map(|m| larger.index_of(m)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::opset::OpSelection;
    use super::*;

    #[test]
    fn monomial_counts() {
        let ly = OpSet::ly();
        let b4 = ly.basis(4, OpSelection::Mixed).unwrap();
        assert_eq!(b4.counts_per_type(), vec![12, 12, 3, 12, 6]);
        assert_eq!(b4.len(), 45);
        assert_eq!(ly.basis(4, OpSelection::Binary).unwrap().len(), 15);
        assert_eq!(ly.basis(5, OpSelection::Binary).unwrap().len(), 105);
        assert_eq!(ly.basis(5, OpSelection::Ternary).unwrap().len(), 90);
        assert_eq!(ly.basis(5, OpSelection::Mixed).unwrap().len(), 510);
    }

    #[test]
    fn degree_three_order() {
        let ly = OpSet::ly();
        let b3 = ly.basis(3, OpSelection::Mixed).unwrap();
        let names: Vec<String> = b3.monomials().iter().map(|m| ly.fmt_monomial(m)).collect();
        assert_eq!(names, ["[[a,b],c]", "[[a,c],b]", "[[b,c],a]", "(a,b,c)", "(a,c,b)", "(b,c,a)"]);
    }

    #[test]
    fn lookup_and_embedding() {
        let ly = OpSet::ly();
        let mixed = ly.basis(5, OpSelection::Mixed).unwrap();
        for (i, m) in mixed.monomials().iter().enumerate() {
            assert_eq!(mixed.index_of(m), Some(i));
        }
        let tern = ly.basis(5, OpSelection::Ternary).unwrap();
        let emb = tern.embedding_into(&mixed).unwrap();
        assert!(emb.windows(2).all(|w| w[0] < w[1]));
        assert!(tern.embedding_into(&ly.basis(4, OpSelection::Mixed).unwrap()).is_none());
    }
}
