//! Incremental reduced row echelon basis over GF(p).
//!
//! Every stored row has a leading 1 at its pivot and is zero at every other
//! pivot column. Reducing a vector is then a single pass: subtract
//! `v[c] * row(c)` for each pivot `c` in the support of `v`, touching only
//! the free columns. Inserting a row eliminates its pivot from all stored
//! rows, which is the expensive step and runs in parallel.

use super::{Field, PrimeField};
use crate::par;

const NONE: u32 = u32::MAX;

/// Sparse vector: `(column, nonzero residue)` pairs.
pub type SparseVec = Vec<(u32, u32)>;

#[derive(Debug, Clone)]
pub struct ReducedBasis {
    field: PrimeField,
    ncols: usize,
    /// Row-major, `ncols` entries per row, in insertion order.
    rows: Vec<u32>,
    pivots: Vec<u32>,
    row_of_col: Vec<u32>,
    /// Non-pivot columns, increasing.
    free: Vec<u32>,
}

impl ReducedBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        ReducedBasis {
            field,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_col: vec![NONE; ncols],
            free: (0..ncols as u32).collect(),
        }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
    pub fn is_full(&self) -> bool {
        self.rank() == self.ncols
    }

    /// Pivot columns in insertion order.
    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.ncols..(i + 1) * self.ncols]
    }

    /// Subtracts the rows for the pivots `(row index, coefficient)` from `acc`.
    fn subtract(&self, acc: &mut [u64], hits: &[(usize, u32)]) {
        let p = u64::from(self.field.modulus());
        let budget = self.field.lazy_budget().max(1);
        let mut pending = 0;
        for &(i, x) in hits {
            if pending == budget {
                self.free.iter().for_each(|&j| acc[j as usize] %= p);
                pending = 0;
            }
            let f = p - u64::from(x);
            let row = self.row(i);
            for &j in &self.free {
                acc[j as usize] += f * u64::from(row[j as usize]);
            }
            acc[self.pivots[i] as usize] = 0;
            pending += 1;
        }
    }

    fn finish(&self, acc: Vec<u64>) -> Vec<u32> {
        let p = u64::from(self.field.modulus());
        acc.into_iter().map(|a| (a % p) as u32).collect()
    }

    /// Residual of a dense vector (entries below p).
    pub fn reduce_dense(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let hits: Vec<(usize, u32)> = self
            .pivots
            .iter()
            .enumerate()
            .filter(|&(_i, &c)| v[c as usize] != 0).map(|(i, &c)| (i, v[c as usize]))
            .collect();
        let mut acc: Vec<u64> = v.iter().map(|&x| u64::from(x)).collect();
        self.subtract(&mut acc, &hits);
        self.finish(acc)
    }

    /// Residual of a sparse vector, densified.
    pub fn reduce_sparse(&self, v: &[(u32, u32)]) -> Vec<u32> {
        let mut acc = vec![0u64; self.ncols];
        let mut hits = Vec::new();
        for &(c, x) in v {
            let c = c as usize;
            acc[c] += u64::from(x);
            let r = self.row_of_col[c];
            if r != NONE && x != 0 {
                hits.push((r as usize, x));
            }
        }
        self.subtract(&mut acc, &hits);
        self.finish(acc)
    }

    /// Brings a residual computed when the rank was `mark` up to date.
    pub fn update_residual(&self, res: &mut [u32], mark: usize) {
        let hits: Vec<(usize, u32)> = (mark..self.rank())
            .filter_map(|i| {
                let x = res[self.pivots[i] as usize];
                (x != 0).then_some((i, x))
            })
            .collect();
        if hits.is_empty() {
            return;
        }
        let mut acc: Vec<u64> = res.iter().map(|&x| u64::from(x)).collect();
        self.subtract(&mut acc, &hits);
        let p = u64::from(self.field.modulus());
        for (r, a) in res.iter_mut().zip(acc) {
            *r = (a % p) as u32;
        }
    }

    /// Inserts a fully reduced residual; `false` if it is zero.
    pub fn insert_residual(&mut self, mut res: Vec<u32>, parallel: bool) -> bool {
        debug_assert!(self.pivots.iter().all(|&c| res[c as usize] == 0), "residual not reduced");
        let Some(c) = res.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(&res[c]).expect("nonzero");
        let p = u64::from(f.modulus());
        for x in res.iter_mut() {
            *x = (u64::from(*x) * u64::from(inv) % p) as u32;
        }
        let support: Vec<u32> = res.iter().enumerate().filter(|(j, &x)| x != 0 && *j != c).map(|(j, _)| j as u32).collect();
        let n = self.ncols;
        par::for_each_chunk_mut(&mut self.rows, n, parallel, |_, row| {
            let x = row[c];
            if x == 0 {
                return;
            }
            let m = p - u64::from(x);
            for &j in &support {
                let j = j as usize;
                row[j] = ((u64::from(row[j]) + m * u64::from(res[j])) % p) as u32;
            }
            row[c] = 0;
        });
        self.rows.extend_from_slice(&res);
        self.row_of_col[c] = self.pivots.len() as u32;
        self.pivots.push(c as u32);
        let pos = self.free.binary_search(&(c as u32)).expect("pivot was free");
        self.free.remove(pos);
        true
    }

    pub fn absorb_dense(&mut self, v: &[u32], parallel: bool) -> bool {
        let r = self.reduce_dense(v);
        self.insert_residual(r, parallel)
    }

    pub fn absorb_sparse(&mut self, v: &[(u32, u32)], parallel: bool) -> bool {
        let r = self.reduce_sparse(v);
        self.insert_residual(r, parallel)
    }

    pub fn contains_sparse(&self, v: &[(u32, u32)]) -> bool {
        self.reduce_sparse(v).iter().all(|&x| x == 0)
    }

    /// Absorbs a batch in order: residuals are computed in parallel against
    /// the current rows, then updated and inserted one by one. Entry `i`
    /// tells whether vector `i` increased the rank.
    pub fn absorb_batch(&mut self, vs: &[SparseVec], parallel: bool) -> Vec<bool> {
        let mark = self.rank();
        let residuals = par::map(vs, parallel, |v| self.reduce_sparse(v));
        let mut out = Vec::with_capacity(vs.len());
        for mut res in residuals {
            if self.is_full() {
                out.push(false);
                continue;
            }
            self.update_residual(&mut res, mark);
            out.push(self.insert_residual(res, parallel));
        }
        out
    }

    /// Rows sorted by pivot column: the reduced row echelon form.
    pub fn rref_rows(&self) -> Vec<Vec<u32>> {
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.into_iter().map(|i| self.row(i).to_vec()).collect()
    }
}

/// Dense to sparse.
pub fn sparsify(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(j, &x)| (j as u32, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::EchelonBasis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn agrees_with_the_echelon_basis() {
        let f = PrimeField::new(103).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 24;
        // rank-deficient family: 30 combinations of 15 random vectors
        let gens: Vec<Vec<u32>> = (0..15).map(|_| (0..n).map(|_| rng.gen_range(0..103)).collect()).collect();
        let vs: Vec<Vec<u32>> = (0..30)
            .map(|_| {
                let mut v = vec![0u32; n];
                for g in &gens {
                    let c: u32 = rng.gen_range(0..103);
                    for (a, &x) in v.iter_mut().zip(g) {
                        *a = (*a + c * x) % 103;
                    }
                }
                v
            })
            .collect();
        let mut e = EchelonBasis::new(f, n);
        let want = e.absorb(&vs, false);
        let mut r = ReducedBasis::new(f, n);
        let sparse: Vec<SparseVec> = vs.iter().map(|v| sparsify(v)).collect();
        assert_eq!(r.absorb_batch(&sparse[..7], true), want[..7]);
        let rest: Vec<bool> = vs[7..].iter().map(|v| r.absorb_dense(v, false)).collect();
        assert_eq!(rest, want[7..]);
        assert_eq!(r.rank(), 15);
        assert_eq!(r.rref_rows(), e.to_rref(false).rows());
        for v in &vs {
            assert!(r.reduce_dense(v).iter().all(|&x| x == 0));
        }
    }
}
