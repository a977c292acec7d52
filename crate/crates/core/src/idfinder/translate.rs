//! Lie-Jordan-Yamaguti identities that come from Lie-Yamaguti ones.
//!
//! Both algebras on the complement `M` share the bracket, and for matrices
//! `p_M(ABC+CBA-BAC-CAB) = p_M([[A,B],C])` splits as the Lie-Yamaguti
//! triple plus `[[A,B],C]`. Every identity of the Lie-Yamaguti algebra
//! therefore rewrites, via [`ly_to_ljy`], into an identity of the
//! Lie-Jordan-Yamaguti algebra on the same space.

use super::fill::fill_and_reduce;
use super::{IdError, SearchConfig};
use crate::algebras::StructureConstantAlgebra;
use crate::exactfield::{PrimeField, SparseVec};
use crate::freeops::{ly_to_ljy, MultilinearPoly, OpSelection, OpSet};

/// The degree-`d` identities of the Lie-Yamaguti algebra `ly`, found by
/// fill-and-reduce over the mixed basis and rewritten as residue vectors
/// over the mixed Lie-Jordan-Yamaguti basis. They span an `S_d`-invariant
/// subspace since the rewriting commutes with relabelling.
pub fn translated_ly_identities(ly: &StructureConstantAlgebra<PrimeField>, cfg: &SearchConfig) -> Result<Vec<SparseVec>, IdError> {
    if **ly.ops() != *OpSet::ly() {
        return Err(crate::freeops::FreeError::OpsMismatch.into());
    }
    let cfg = SearchConfig { ops: OpSelection::Mixed, ..cfg.clone() };
    let fill = fill_and_reduce(ly, &cfg)?;
    let f = *ly.field();
    let target = OpSet::ljy().basis(cfg.degree, OpSelection::Mixed)?;
    fill.nullspace
        .iter()
        .map(|v| {
            let g = ly_to_ljy(&MultilinearPoly::from_dense(f, OpSet::ly(), &fill.basis, v))?;
            let mut out: SparseVec = Vec::with_capacity(g.len());
            for (m, c) in g.terms() {
                let col = target.index_of(m).ok_or_else(|| crate::freeops::FreeError::OutsideBasis(g.ops().fmt_monomial(m)))?;
                out.push((col as u32, *c));
            }
            out.sort_unstable();
            Ok(out)
        })
        .collect()
}
