//! The reductive pair `so(N-1) = so(n) ⊕ M` and the products it induces.
//!
//! `so(n)` acts on the symmetric matrices `H` by commutators. In the basis
//! `E_ii`, `(E_ij + E_ji)/√2` of `H`, orthonormal for `tr(ab)`, the action
//! is by skew `N x N` matrices that kill the coordinate vector `v` of the
//! identity. The algebra `U ≅ so(N-1)` is realized as all skew `N x N`
//! matrices `X` with `Xv = 0`, i.e. the skew endomorphisms of `v^⊥ = H⁰`
//! extended by zero. This needs no orthonormal basis of the traceless
//! diagonal, so every entry lies in ℚ(√2).
//!
//! Elements of `U` are parametrized by their strictly upper triangle. `M`
//! is the solution space of `Xv = 0` together with `tr(X ℓ) = 0` for every
//! `ℓ` in the image of `so(n)`; its basis vectors are unit vectors on the
//! free columns of that linear system, so the `M`-coordinates of an element
//! of `M` are its entries at those columns.

use super::AlgebraError;
use crate::exactfield::{ExactMatrix, Field};

/// Square matrices stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Square<E> {
    pub n: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Square<E> {
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }
}

pub(crate) fn zeros<F: Field>(f: &F, n: usize) -> Square<F::Elem> {
    Square { n, data: vec![f.zero(); n * n] }
}

pub(crate) fn matmul<F: Field>(f: &F, a: &Square<F::Elem>, b: &Square<F::Elem>) -> Square<F::Elem> {
    let n = a.n;
    let mut out = zeros(f, n);
    for i in 0..n {
        for k in 0..n {
            let x = &a.data[i * n + k];
            if f.is_zero(x) {
                continue;
            }
            f.axpy(&mut out.data[i * n..(i + 1) * n], x, &b.data[k * n..(k + 1) * n]);
        }
    }
    out
}

pub(crate) fn lincomb<F: Field>(f: &F, a: &Square<F::Elem>, x: &F::Elem, b: &Square<F::Elem>) -> Square<F::Elem> {
    let mut out = a.clone();
    f.axpy(&mut out.data, x, &b.data);
    out
}

pub(crate) fn commutator<F: Field>(f: &F, a: &Square<F::Elem>, b: &Square<F::Elem>) -> Square<F::Elem> {
    lincomb(f, &matmul(f, a, b), &f.neg(&f.one()), &matmul(f, b, a))
}

/// `tr(ab)`
pub(crate) fn trace_form<F: Field>(f: &F, a: &Square<F::Elem>, b: &Square<F::Elem>) -> F::Elem {
    let n = a.n;
    let mut acc = f.zero();
    for i in 0..n {
        for k in 0..n {
            let x = &a.data[i * n + k];
            if !f.is_zero(x) {
                f.mul_add_assign(&mut acc, x, &b.data[k * n + i]);
            }
        }
    }
    acc
}

pub(crate) fn is_skew<F: Field>(f: &F, a: &Square<F::Elem>) -> bool {
    let n = a.n;
    (0..n).all(|i| (0..n).all(|j| f.is_zero(&f.add(a.get(i, j), a.get(j, i)))))
}

/// `E_ij - E_ji` for `i < j` in lexicographic order.
pub(crate) fn skew_units<F: Field>(f: &F, n: usize) -> Vec<Square<F::Elem>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut a = zeros(f, n);
            a.data[i * n + j] = f.one();
            a.data[j * n + i] = f.neg(&f.one());
            out.push(a);
        }
    }
    out
}

/// `E_ii`, then `(E_ij + E_ji)/√2` for `i < j`: orthonormal under `tr(ab)`.
pub(crate) fn symmetric_orthonormal<F: Field>(f: &F, n: usize) -> Result<Vec<Square<F::Elem>>, AlgebraError> {
    let r = f.inv(&f.sqrt2()?)?;
    let mut out = Vec::new();
    for i in 0..n {
        let mut a = zeros(f, n);
        a.data[i * n + i] = f.one();
        out.push(a);
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut a = zeros(f, n);
            a.data[i * n + j] = r.clone();
            a.data[j * n + i] = r.clone();
            out.push(a);
        }
    }
    Ok(out)
}

/// Matrix of `S ↦ ℓS - Sℓ` on the orthonormal basis of `H`, for each `ℓ`.
fn action_on_h<F: Field>(f: &F, l_basis: &[Square<F::Elem>], h_basis: &[Square<F::Elem>]) -> Vec<Square<F::Elem>> {
    let big_n = h_basis.len();
    l_basis
        .iter()
        .map(|l| {
            let mut img = zeros(f, big_n);
            for (b, hb) in h_basis.iter().enumerate() {
                let act = commutator(f, l, hb);
                for (a, ha) in h_basis.iter().enumerate() {
                    img.data[a * big_n + b] = trace_form(f, ha, &act);
                }
            }
            img
        })
        .collect()
}

/// `dim M = (n-2)(n-1)(n+1)(n+4)/8`.
pub fn expected_dim_m(n: usize) -> usize {
    (n - 2) * (n - 1) * (n + 1) * (n + 4) / 8
}

#[derive(Debug, Clone)]
pub struct MatrixModel<F: Field> {
    field: F,
    n: usize,
    big_n: usize,
    l_basis: Vec<Square<F::Elem>>,
    h_basis: Vec<Square<F::Elem>>,
    /// Image of each `l_basis` element acting on `H`.
    l_image: Vec<Square<F::Elem>>,
    /// Strictly upper positions `(a, b)` parametrizing skew `N x N` matrices.
    pairs: Vec<(usize, usize)>,
    /// Positions (into `pairs`) at which `M`-coordinates are read.
    m_free: Vec<usize>,
    m_basis: Vec<Square<F::Elem>>,
    /// Inverse Gram matrix of `l_image` under `tr(ab)`.
    gram_inv: ExactMatrix<F>,
}

impl<F: Field> MatrixModel<F> {
    pub fn build(n: usize, field: F) -> Result<Self, AlgebraError> {
        if n < 3 {
            return Err(AlgebraError::BadModel(format!("n = {n}: the matrix model needs n >= 3")));
        }
        let f = &field;
        let big_n = n * (n + 1) / 2;
        let l_basis = skew_units(f, n);
        let h_basis = symmetric_orthonormal(f, n)?;
        let l_image = action_on_h(f, &l_basis, &h_basis);
        let pairs: Vec<(usize, usize)> = (0..big_n).flat_map(|a| (a + 1..big_n).map(move |b| (a, b))).collect();
        let system = Self::constraints(f, n, big_n, &pairs, &l_image);
        let (m_free, kernel) = system.nullspace_at_free_columns();
        let m_basis = kernel.iter().map(|v| Self::skew_from_pairs(f, big_n, &pairs, v)).collect();
        let dim_l = l_image.len();
        let mut gram = ExactMatrix::zeros(f.clone(), dim_l, dim_l);
        for i in 0..dim_l {
            for j in 0..dim_l {
                gram.set(i, j, trace_form(f, &l_image[i], &l_image[j]));
            }
        }
        let gram_inv = gram.inverse().ok_or_else(|| AlgebraError::BadModel("degenerate trace form on so(n)".into()))?;
        Ok(MatrixModel { field, n, big_n, l_basis, h_basis, l_image, pairs, m_free, m_basis, gram_inv })
    }

    /// Rows: `(Xv)_a = 0` for each `a`, then `sum_{a<b} X_ab ℓ_ab = 0`
    /// (which is `-tr(Xℓ)/2`) for each `ℓ` in the image of `so(n)`.
    fn constraints(f: &F, n: usize, big_n: usize, pairs: &[(usize, usize)], l_image: &[Square<F::Elem>]) -> ExactMatrix<F> {
        let cols = pairs.len();
        let mut rows = Vec::new();
        // v = coordinates of the identity: 1 on the E_ii, 0 elsewhere
        let v = |a: usize| a < n;
        for a in 0..big_n {
            let mut row = vec![f.zero(); cols];
            for (c, &(x, y)) in pairs.iter().enumerate() {
                if x == a && v(y) {
                    row[c] = f.one();
                } else if y == a && v(x) {
                    row[c] = f.neg(&f.one());
                }
            }
            rows.push(row);
        }
        for l in l_image {
            rows.push(pairs.iter().map(|&(a, b)| l.get(a, b).clone()).collect());
        }
        ExactMatrix::from_rows(f.clone(), cols, rows)
    }

    fn skew_from_pairs(f: &F, big_n: usize, pairs: &[(usize, usize)], v: &[F::Elem]) -> Square<F::Elem> {
        let mut x = zeros(f, big_n);
        for (c, &(a, b)) in pairs.iter().enumerate() {
            x.data[a * big_n + b] = v[c].clone();
            x.data[b * big_n + a] = f.neg(&v[c]);
        }
        x
    }

    /// `dim M` alone: the number of unknowns minus the rank of the system.
    pub fn dim_m_only(n: usize, field: F) -> Result<usize, AlgebraError> {
        if n < 3 {
            return Err(AlgebraError::BadModel(format!("n = {n}: the matrix model needs n >= 3")));
        }
        let f = &field;
        let big_n = n * (n + 1) / 2;
        let l_basis = skew_units(f, n);
        let h_basis = symmetric_orthonormal(f, n)?;
        let pairs: Vec<(usize, usize)> = (0..big_n).flat_map(|a| (a + 1..big_n).map(move |b| (a, b))).collect();
        let l_image = action_on_h(f, &l_basis, &h_basis);
        let system = Self::constraints(f, n, big_n, &pairs, &l_image);
        Ok(pairs.len() - system.rank())
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.n
    }
    /// `N = n(n+1)/2`, the dimension of `H`.
    pub fn big_n(&self) -> usize {
        self.big_n
    }
    pub fn dim_l(&self) -> usize {
        self.l_basis.len()
    }
    /// `dim U = C(N-1, 2)`.
    pub fn dim_u(&self) -> usize {
        (self.big_n - 1) * (self.big_n - 2) / 2
    }
    pub fn dim_m(&self) -> usize {
        self.m_basis.len()
    }
    pub fn l_basis(&self) -> &[Square<F::Elem>] {
        &self.l_basis
    }
    pub fn h_basis(&self) -> &[Square<F::Elem>] {
        &self.h_basis
    }
    pub fn l_image(&self) -> &[Square<F::Elem>] {
        &self.l_image
    }
    pub fn m_basis(&self) -> &[Square<F::Elem>] {
        &self.m_basis
    }

    /// Whether `X` is skew and kills the identity, i.e. lies in `U`.
    pub fn in_u(&self, x: &Square<F::Elem>) -> bool {
        let f = &self.field;
        is_skew(f, x)
            && (0..self.big_n).all(|a| {
                let mut s = f.zero();
                for b in 0..self.n {
                    s = f.add(&s, x.get(a, b));
                }
                f.is_zero(&s)
            })
    }

    /// Coordinates of `p_L(X)` on the image of the `so(n)` basis.
    pub fn l_coords(&self, x: &Square<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        let rhs: Vec<F::Elem> = self.l_image.iter().map(|l| trace_form(f, x, l)).collect();
        self.gram_inv.mul_vec(&rhs)
    }

    /// Coordinates of `p_M(X)` on the `M` basis, for `X` in `U`.
    pub fn m_coords(&self, x: &Square<F::Elem>) -> Vec<F::Elem> {
        let f = &self.field;
        let c = self.l_coords(x);
        self.m_free
            .iter()
            .map(|&t| {
                let (a, b) = self.pairs[t];
                let mut v = x.get(a, b).clone();
                for (cs, l) in c.iter().zip(&self.l_image) {
                    if !f.is_zero(cs) {
                        v = f.sub(&v, &f.mul(cs, l.get(a, b)));
                    }
                }
                v
            })
            .collect()
    }

    /// `p_L(X)` as a matrix.
    pub fn p_l(&self, x: &Square<F::Elem>) -> Square<F::Elem> {
        let f = &self.field;
        let mut out = zeros(f, self.big_n);
        for (c, l) in self.l_coords(x).iter().zip(&self.l_image) {
            f.axpy(&mut out.data, c, &l.data);
        }
        out
    }

    /// `p_M(X) = X - p_L(X)` as a matrix.
    pub fn p_m(&self, x: &Square<F::Elem>) -> Square<F::Elem> {
        let f = &self.field;
        lincomb(f, x, &f.neg(&f.one()), &self.p_l(x))
    }

    /// The element of `M` with the given coordinates.
    pub fn from_m_coords(&self, c: &[F::Elem]) -> Square<F::Elem> {
        let f = &self.field;
        let mut out = zeros(f, self.big_n);
        for (ci, b) in c.iter().zip(&self.m_basis) {
            f.axpy(&mut out.data, ci, &b.data);
        }
        out
    }
}
