//! Lie-Yamaguti and Lie-Jordan-Yamaguti products on `M`.
//!
//! Both share the bilinear product `[A,B] = p_M([A,B]_U)`. The LY ternary
//! product is `p_M([p_L([A,B]_U), C]_U)`, which equals `[p_L([A,B]), C]`
//! since `[L, M] ⊆ M`, and factors through `L`: with `τ(A,B)` the
//! `L`-coordinates of `[A,B]` and `ρ_s(C) = [ℓ_s, C]` it is
//! `sum_s τ_s(A,B) ρ_s(C)`. The LJY ternary product is `p_M(ABC + CBA)`.

use super::matrix_model::{commutator, matmul, lincomb, MatrixModel, Square};
use super::table::{Factorization, SparseRow, StructureConstantAlgebra};
use super::AlgebraError;
use crate::exactfield::Field;
use crate::freeops::OpSet;
use crate::par;

fn sparse<F: Field>(f: &F, v: &[F::Elem]) -> SparseRow<F::Elem> {
    v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i as u32, c.clone())).collect()
}

/// Bracket coordinates `p_M([M_i, M_j])` and `τ(M_i, M_j)` for `i < j`,
/// stored at `i * m + j`.
fn bracket_data<F: Field>(model: &MatrixModel<F>) -> Vec<Option<(Vec<F::Elem>, Vec<F::Elem>)>> {
    let f = model.field();
    let b = model.m_basis();
    let m = b.len();
    par::map_range(m * m, true, |idx| {
        let (i, j) = (idx / m, idx % m);
        (i < j).then(|| {
            let c = commutator(f, &b[i], &b[j]);
            (model.m_coords(&c), model.l_coords(&c))
        })
    })
}

fn binary_row<F: Field>(f: &F, data: &[Option<(Vec<F::Elem>, Vec<F::Elem>)>], m: usize, t: &[usize]) -> Vec<F::Elem> {
    match &data[t[0] * m + t[1]] {
        Some((coords, _)) => coords.clone(),
        None => vec![f.zero(); m],
    }
}

/// The Lie-Yamaguti algebra on `M` for `so(n) ⊂ so(N-1)`.
pub fn build_ly<F: Field>(n: usize, field: F) -> Result<StructureConstantAlgebra<F>, AlgebraError> {
    let model = MatrixModel::build(n, field.clone())?;
    let f = &field;
    let m = model.dim_m();
    let r = model.dim_l();
    let data = bracket_data(&model);
    // rho[s * m + k] = [ℓ_s, M_k], already in M
    let rho: Vec<Vec<F::Elem>> = par::map_range(r * m, true, |idx| {
        let (s, k) = (idx / m, idx % m);
        model.m_coords(&commutator(f, &model.l_image()[s], &model.m_basis()[k]))
    });
    let mut left = vec![Vec::new(); m * m];
    for i in 0..m {
        for j in i + 1..m {
            let tau = &data[i * m + j].as_ref().expect("upper pair").1;
            left[i * m + j] = sparse(f, tau);
            left[j * m + i] = left[i * m + j].iter().map(|(s, c)| (*s, f.neg(c))).collect();
        }
    }
    let right: Vec<SparseRow<F::Elem>> = rho.iter().map(|v| sparse(f, v)).collect();
    let alg = StructureConstantAlgebra::from_fn(&format!("ly-n{n}"), Some(n), field.clone(), OpSet::ly(), m, |k, t| {
        if k == 0 {
            return Ok(binary_row(f, &data, m, t));
        }
        let mut out = vec![f.zero(); m];
        for (s, c) in &left[t[0] * m + t[1]] {
            for (o, v) in &right[*s as usize * m + t[2]] {
                f.mul_add_assign(&mut out[*o as usize], c, v);
            }
        }
        Ok(out)
    })?;
    alg.with_factors(1, Factorization { rank: r, left, right })
}

/// The Lie-Jordan-Yamaguti algebra: same bracket, ternary `p_M(ABC + CBA)`.
pub fn build_ljy<F: Field>(n: usize, field: F) -> Result<StructureConstantAlgebra<F>, AlgebraError> {
    let model = MatrixModel::build(n, field.clone())?;
    let f = &field;
    let m = model.dim_m();
    let b = model.m_basis();
    let data = bracket_data(&model);
    let products: Vec<Square<F::Elem>> = par::map_range(m * m, true, |idx| matmul(f, &b[idx / m], &b[idx % m]));
    StructureConstantAlgebra::from_fn(&format!("ljy-n{n}"), Some(n), field.clone(), OpSet::ljy(), m, |k, t| {
        if k == 0 {
            return Ok(binary_row(f, &data, m, t));
        }
        let (i, j, l) = (t[0], t[1], t[2]);
        let abc = matmul(f, &products[i * m + j], &b[l]);
        let cba = matmul(f, &products[l * m + j], &b[i]);
        Ok(model.m_coords(&lincomb(f, &abc, &f.one(), &cba)))
    })
}
