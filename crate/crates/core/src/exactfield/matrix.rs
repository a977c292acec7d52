use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Field, FieldDescriptor, FieldError};
use crate::par;

/// Dense row-major matrix over a field context.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

/// On-disk form: `{field, rows, cols, entries}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Value>>,
}

impl<F: Field> ExactMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        ExactMatrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        ExactMatrix { field, rows: n, cols, data }
    }

    pub fn from_i64(field: F, rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        let data = vals.iter().map(|&v| field.from_i64(v)).collect();
        ExactMatrix { field, rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| self.field.dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &ExactMatrix<F>) -> ExactMatrix<F> {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zeros(self.field.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                self.field.axpy(dst, &self.data[i * self.cols + k], other.row(k));
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix<F> {
        let mut out = ExactMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j].clone();
            }
        }
        out
    }

    /// Gauss-Jordan elimination: leftmost pivot column, first nonzero row at
    /// or below the current pivot row. Returns the rank; `self` becomes the
    /// reduced row echelon form with the same row count.
    pub fn rref_in_place(&mut self, parallel: bool) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let f = self.field.clone();
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(piv) = (rank..rows).find(|&r| !f.is_zero(&self.data[r * cols + c])) else {
                continue;
            };
            if piv != rank {
                for j in 0..cols {
                    self.data.swap(piv * cols + j, rank * cols + j);
                }
            }
            let inv = f.inv(&self.data[rank * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(&self.data[rank * cols + j], &inv);
                self.data[rank * cols + j] = v;
            }
            let pivot_row: Vec<F::Elem> = self.data[rank * cols..(rank + 1) * cols].to_vec();
            let pr = rank;
            par::for_each_chunk_mut(&mut self.data, cols, parallel, |r, row| {
                if r == pr || f.is_zero(&row[c]) {
                    return;
                }
                let factor = f.neg(&row[c]);
                f.axpy(&mut row[c..], &factor, &pivot_row[c..]);
            });
            rank += 1;
        }
        rank
    }

    pub fn rref(&self) -> (usize, ExactMatrix<F>) {
        let mut r = self.clone();
        let rank = r.rref_in_place(false);
        (rank, r)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Column indices of the leading ones of an RREF matrix.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            match self.row(i).iter().position(|x| !self.field.is_zero(x)) {
                Some(c) => out.push(c),
                None => break,
            }
        }
        out
    }

    /// Canonical nullspace basis: free variables set to unit vectors, leading
    /// variables solved, then the resulting basis brought to RREF.
    pub fn nullspace_basis(&self) -> Vec<Vec<F::Elem>> {
        let (rank, r) = self.rref();
        let pivots = r.pivot_columns();
        debug_assert_eq!(pivots.len(), rank);
        let basis = nullspace_from_rref(&r, &pivots);
        if basis.is_empty() {
            return basis;
        }
        let m = ExactMatrix::from_rows(self.field.clone(), self.cols, basis);
        let (k, red) = m.rref();
        debug_assert_eq!(k, m.rows);
        red.row_vecs()
    }

    /// Nullspace basis indexed by the free columns of the RREF: vector `t`
    /// is 1 at `free[t]` and 0 at every other free column, so coordinates of
    /// a kernel element are read off at the free columns.
    pub fn nullspace_at_free_columns(&self) -> (Vec<usize>, Vec<Vec<F::Elem>>) {
        let (_, r) = self.rref();
        let pivots = r.pivot_columns();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        (free, nullspace_from_rref(&r, &pivots))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix<F>> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let f = &self.field;
        let mut aug = ExactMatrix::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.data[i * n + j].clone();
            }
            aug.data[i * 2 * n + n + i] = f.one();
        }
        if aug.rref_in_place(false) != n || aug.pivot_columns().iter().any(|&c| c >= n) {
            return None;
        }
        let data = (0..n).flat_map(|i| aug.data[i * 2 * n + n..(i + 1) * 2 * n].to_vec()).collect();
        Some(ExactMatrix { field: f.clone(), rows: n, cols: n, data })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            field: self.field.descriptor().short(),
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().map(|x| self.field.elem_to_json(x)).collect())
                .collect(),
        }
    }

    pub fn from_json(field: F, j: &MatrixJson) -> Result<Self, FieldError> {
        let want = field.descriptor().short();
        let found: FieldDescriptor = j.field.parse()?;
        if found.short() != want {
            return Err(FieldError::Mismatch { expected: want, found: j.field.clone() });
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(FieldError::BadScalar("entry grid does not match rows/cols".into()));
        }
        let mut data = Vec::with_capacity(j.rows * j.cols);
        for row in &j.entries {
            for v in row {
                data.push(field.elem_from_json(v)?);
            }
        }
        Ok(ExactMatrix { field, rows: j.rows, cols: j.cols, data })
    }
}

/// Nullspace vectors read off an RREF matrix with the given pivot columns,
/// one per free column in increasing order.
pub(crate) fn nullspace_from_rref<F: Field>(r: &ExactMatrix<F>, pivots: &[usize]) -> Vec<Vec<F::Elem>> {
    let f = r.field();
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, QuadSqrt2, Ring};

    fn gf103() -> PrimeField {
        PrimeField::new(103).unwrap()
    }

    #[test]
    fn inverse_and_free_column_kernel() {
        let f = gf103();
        let a = ExactMatrix::from_i64(f, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ExactMatrix::identity(f, 2));
        assert!(ExactMatrix::from_i64(f, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let b = ExactMatrix::from_i64(f, 1, 3, &[1, 1, 1]);
        let (free, ker) = b.nullspace_at_free_columns();
        assert_eq!(free, vec![1, 2]);
        assert_eq!(ker[0], vec![102, 1, 0]);
    }

    #[test]
    fn identity_and_zero() {
        let f = gf103();
        let i = ExactMatrix::identity(f, 5);
        let (rank, r) = i.rref();
        assert_eq!(rank, 5);
        assert_eq!(r, i);
        assert!(i.nullspace_basis().is_empty());
        let z = ExactMatrix::zeros(f, 3, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(z.nullspace_basis().len(), 4);
    }

    #[test]
    fn displayed_rref_nullspace() {
        let f = gf103();
        #[rustfmt::skip]
        let m = ExactMatrix::from_i64(f, 5, 6, &[
            1, 0, 0, 0, 0, 102,
            0, 1, 0, 0, 0, 1,
            0, 0, 1, 0, 0, 102,
            0, 0, 0, 1, 0, 102,
            0, 0, 0, 0, 1, 1,
        ]);
        assert_eq!(m.nullspace_basis(), vec![vec![1, 102, 1, 1, 102, 1]]);
    }

    #[test]
    fn rref_is_idempotent_and_parallel_agrees() {
        let f = gf103();
        let vals: Vec<i64> = (0..48).map(|i| (i * i * 37 + 11 * i + 5) % 103).collect();
        let m = ExactMatrix::from_i64(f, 6, 8, &vals);
        let (_, r) = m.rref();
        assert_eq!(r.rref().1, r);
        let mut p = m.clone();
        p.rref_in_place(true);
        assert_eq!(p, r);
    }

    #[test]
    fn works_over_qsqrt2() {
        let f = QuadSqrt2;
        let s = f.sqrt2().unwrap();
        let one = f.one();
        // rows (1, √2) and (√2, 2) are dependent
        let m = ExactMatrix::from_rows(f, 2, vec![vec![one.clone(), s.clone()], vec![s.clone(), f.from_i64(2)]]);
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace_basis();
        assert_eq!(ns.len(), 1);
        let v = m.mul_vec(&ns[0]);
        assert!(v.iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn json_round_trip() {
        let f = gf103();
        let m = ExactMatrix::from_i64(f, 2, 3, &[1, 2, 3, 4, 5, 102]);
        let j = m.to_json();
        assert_eq!(j.field, "gfp:103");
        let back = ExactMatrix::from_json(f, &j).unwrap();
        assert_eq!(back, m);
        let q = ExactMatrix::from_i64(QuadSqrt2, 1, 1, &[3]);
        assert!(ExactMatrix::from_json(f, &q.to_json()).is_err());
    }
}
