//! The Jordan algebra `H` of symmetric `n x n` matrices with the operations
//! `a ∘ b = ab + ba` and `{a, b, c} = abc + cba`, on the basis orthonormal
//! for `tr(ab)`.

use std::sync::{Arc, OnceLock};

use super::matrix_model::{lincomb, matmul, symmetric_orthonormal, trace_form};
use super::table::StructureConstantAlgebra;
use super::AlgebraError;
use crate::exactfield::Field;
use crate::freeops::{OperationSignature, OpSet};

/// Symmetric binary `<a,b>` and ternary `{a,b,c}` symmetric in its outer slots.
pub fn jordan_ops() -> Arc<OpSet> {
    static OPS: OnceLock<Arc<OpSet>> = OnceLock::new();
    OPS.get_or_init(|| {
        let circ = OperationSignature::new("circ", 2, &[(1, 2, 1)], "<>");
        let triple = OperationSignature::new("jordan", 3, &[(1, 3, 1)], "{}");
        Arc::new(OpSet::new("jordan", vec![circ, triple]).expect("valid signature"))
    })
    .clone()
}

pub fn build_jordan_h<F: Field>(n: usize, field: F) -> Result<StructureConstantAlgebra<F>, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::BadModel("n must be positive".into()));
    }
    let f = &field;
    let basis = symmetric_orthonormal(f, n)?;
    let dim = basis.len();
    // orthonormality makes coordinates traces against the basis
    let coords = |x: &super::matrix_model::Square<F::Elem>| basis.iter().map(|b| trace_form(f, b, x)).collect::<Vec<_>>();
    StructureConstantAlgebra::from_fn(&format!("jordan-h{n}"), Some(n), field.clone(), jordan_ops(), dim, |k, t| {
        let one = f.one();
        let out = if k == 0 {
            let (a, b) = (&basis[t[0]], &basis[t[1]]);
            lincomb(f, &matmul(f, a, b), &one, &matmul(f, b, a))
        } else {
            let (a, b, c) = (&basis[t[0]], &basis[t[1]], &basis[t[2]]);
            lincomb(f, &matmul(f, &matmul(f, a, b), c), &one, &matmul(f, &matmul(f, c, b), a))
        };
        Ok(coords(&out))
    })
}
