//! Incremental row echelon basis over GF(p).
//!
//! Rows are kept in (non-reduced) echelon form: each stored row is
//! normalized to a leading 1 at its pivot and is zero before it. Reducing a
//! vector against the pivots in increasing column order therefore leaves it
//! zero at every pivot. Accumulation is done in `u64` with reduction deferred
//! until the per-vector budget of additions is exhausted, and incoming rows
//! are processed in small batches so each stored row is streamed once per
//! batch. The reduced row echelon form is produced on demand by a blocked
//! back-substitution restricted to the free columns.

use super::{Field, PrimeField, Ring};
use crate::par;

const BATCH: usize = 32;
const BACKSUB_BLOCK: usize = 64;

#[derive(Debug, Clone)]
struct Row {
    pivot: usize,
    /// Entries from the pivot column onward; `data[0] == 1`.
    data: Box<[u32]>,
}

/// Whether an absorbed vector increased the rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReduceOutcome {
    Independent,
    InSpan,
}

#[derive(Debug, Clone)]
pub struct EchelonBasis {
    field: PrimeField,
    ncols: usize,
    rows: Vec<Row>,
    /// Indices into `rows`, sorted by pivot column.
    order: Vec<usize>,
    pivot_of_col: Vec<bool>,
}

/// Reduced row echelon form, stored as pivot columns plus the free-column
/// part of each row (pivot columns form an identity block).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    pub pivots: Vec<usize>,
    pub free: Vec<usize>,
    pub free_part: Vec<Vec<u32>>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn row(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.ncols];
        v[self.pivots[i]] = 1;
        for (t, &c) in self.free.iter().enumerate() {
            v[c] = self.free_part[i][t];
        }
        v
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.rank()).map(|i| self.row(i)).collect()
    }

    /// One kernel vector per free column: the free variable is 1, the
    /// other free variables 0, leading variables solved.
    pub fn kernel_vectors(&self, field: &PrimeField) -> Vec<Vec<u32>> {
        (0..self.free.len())
            .map(|t| {
                let mut v = vec![0u32; self.ncols];
                v[self.free[t]] = 1;
                for (i, &c) in self.pivots.iter().enumerate() {
                    v[c] = field.neg(&self.free_part[i][t]);
                }
                v
            })
            .collect()
    }
}

impl EchelonBasis {
    pub fn new(field: PrimeField, ncols: usize) -> Self {
        EchelonBasis { field, ncols, rows: Vec::new(), order: Vec::new(), pivot_of_col: vec![false; ncols] }
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    fn reduce_full(&self, acc: &mut [u64]) {
        let p = u64::from(self.field.modulus());
        for a in acc.iter_mut() {
            *a %= p;
        }
    }

    /// Reduces every vector of `accs` (each `ncols` long, entries < p)
    /// against the rows listed in `order`.
    fn reduce_against(&self, accs: &mut [u64], order: &[usize], parallel: bool) {
        let n = self.ncols;
        if n == 0 || accs.is_empty() || order.is_empty() {
            return;
        }
        let p = u64::from(self.field.modulus());
        let budget = self.field.lazy_budget().max(1);
        let nvec = accs.len() / n;
        let group = nvec.div_ceil(par::threads().max(1)).max(1);
        par::for_each_group_mut(accs, n, group, parallel, |_, chunk| {
            let k = chunk.len() / n;
            let mut pending = vec![0u64; k];
            for &ri in order {
                let row = &self.rows[ri];
                let c = row.pivot;
                let tail = &row.data[1..];
                for (b, acc) in chunk.chunks_exact_mut(n).enumerate() {
                    let x = acc[c] % p;
                    acc[c] = 0;
                    if x == 0 {
                        continue;
                    }
                    if pending[b] == budget {
                        for a in acc[c + 1..].iter_mut() {
                            *a %= p;
                        }
                        pending[b] = 0;
                    }
                    let f = p - x;
                    for (a, &r) in acc[c + 1..].iter_mut().zip(tail) {
                        *a += f * u64::from(r);
                    }
                    pending[b] += 1;
                }
            }
            for a in chunk.iter_mut() {
                *a %= p;
            }
        });
    }

    fn insert(&mut self, acc: &[u64]) -> bool {
        let Some(c) = acc.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(&(acc[c] as u32)).expect("nonzero");
        let inv = u64::from(inv);
        let p = u64::from(self.field.modulus());
        let data: Box<[u32]> = acc[c..].iter().map(|&x| (x * inv % p) as u32).collect();
        let idx = self.rows.len();
        self.rows.push(Row { pivot: c, data });
        let pos = self.order.partition_point(|&r| self.rows[r].pivot < c);
        self.order.insert(pos, idx);
        self.pivot_of_col[c] = true;
        true
    }

    /// Absorbs vectors in order; entry `i` of the result tells whether
    /// vector `i` increased the rank.
    pub fn absorb(&mut self, vectors: &[Vec<u32>], parallel: bool) -> Vec<bool> {
        let mut out = Vec::with_capacity(vectors.len());
        for chunk in vectors.chunks(BATCH) {
            let mut accs: Vec<u64> = Vec::with_capacity(chunk.len() * self.ncols);
            for v in chunk {
                assert_eq!(v.len(), self.ncols, "vector length mismatch");
                accs.extend(v.iter().map(|&x| u64::from(x)));
            }
            self.absorb_accs(&mut accs, parallel, &mut out);
        }
        out
    }

    /// Same as [`absorb`](Self::absorb) for a flat `k * ncols` buffer.
    pub fn absorb_flat(&mut self, flat: &[u32], parallel: bool) -> Vec<bool> {
        let n = self.ncols;
        let mut out = Vec::with_capacity(flat.len() / n.max(1));
        if n == 0 {
            return out;
        }
        for chunk in flat.chunks(BATCH * n) {
            let mut accs: Vec<u64> = chunk.iter().map(|&x| u64::from(x)).collect();
            self.absorb_accs(&mut accs, parallel, &mut out);
        }
        out
    }

    fn absorb_accs(&mut self, accs: &mut [u64], parallel: bool, out: &mut Vec<bool>) {
        let n = self.ncols;
        if self.is_full() {
            out.extend(std::iter::repeat_n(false, accs.len() / n));
            return;
        }
        let order = std::mem::take(&mut self.order);
        self.reduce_against(accs, &order, parallel);
        self.order = order;
        let first_new = self.rows.len();
        for acc in accs.chunks_exact_mut(n) {
            let mut fresh: Vec<usize> = (first_new..self.rows.len()).collect();
            fresh.sort_by_key(|&r| self.rows[r].pivot);
            self.reduce_against(acc, &fresh, false);
            out.push(self.insert(acc));
        }
    }

    pub fn absorb_one(&mut self, v: &[u32]) -> ReduceOutcome {
        let mut acc: Vec<u64> = v.iter().map(|&x| u64::from(x)).collect();
        let mut out = Vec::with_capacity(1);
        self.absorb_accs(&mut acc, false, &mut out);
        if out[0] {
            ReduceOutcome::Independent
        } else {
            ReduceOutcome::InSpan
        }
    }

    /// Residual of `v` after reduction against the basis.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let mut acc: Vec<u64> = v.iter().map(|&x| u64::from(x)).collect();
        self.reduce_against(&mut acc, &self.order, false);
        self.reduce_full(&mut acc);
        acc.into_iter().map(|x| x as u32).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        self.order.iter().map(|&r| self.rows[r].pivot).collect()
    }

    /// Reduced row echelon form via back-substitution on the free columns.
    pub fn to_rref(&self, parallel: bool) -> Rref {
        let n = self.ncols;
        let p = u64::from(self.field.modulus());
        let budget = self.field.lazy_budget().max(1);
        let pivots = self.pivots();
        let free: Vec<usize> = (0..n).filter(|&c| !self.pivot_of_col[c]).collect();
        let r = pivots.len();
        let nf = free.len();
        let sorted: Vec<&Row> = self.order.iter().map(|&i| &self.rows[i]).collect();
        let entry = |row: &Row, col: usize| -> u32 {
            if col < row.pivot {
                0
            } else {
                row.data[col - row.pivot]
            }
        };
        let mut fin: Vec<Vec<u32>> = vec![Vec::new(); r];
        let mut hi = r;
        while hi > 0 {
            let lo = hi.saturating_sub(BACKSUB_BLOCK);
            let mut accs: Vec<u64> = Vec::with_capacity((hi - lo) * nf);
            for row in &sorted[lo..hi] {
                accs.extend(free.iter().map(|&c| u64::from(entry(row, c))));
            }
            {
                let done = &fin[hi..];
                let group = (hi - lo).div_ceil(par::threads().max(1)).max(1);
                par::for_each_group_mut(&mut accs, nf.max(1), group, parallel, |g, chunk| {
                    let base = lo + g * group;
                    let k = chunk.len() / nf.max(1);
                    let mut pending = vec![0u64; k];
                    for (off, fj) in done.iter().enumerate() {
                        let cj = pivots[hi + off];
                        for b in 0..k {
                            let x = u64::from(entry(sorted[base + b], cj));
                            if x == 0 {
                                continue;
                            }
                            let acc = &mut chunk[b * nf..(b + 1) * nf];
                            if pending[b] == budget {
                                acc.iter_mut().for_each(|a| *a %= p);
                                pending[b] = 0;
                            }
                            let f = p - x;
                            for (a, &v) in acc.iter_mut().zip(fj.iter()) {
                                *a += f * u64::from(v);
                            }
                            pending[b] += 1;
                        }
                    }
                    chunk.iter_mut().for_each(|a| *a %= p);
                });
            }
            for i in (lo..hi).rev() {
                let ci = pivots[i];
                let row_i: Vec<u32> = accs[(i - lo) * nf..(i - lo + 1) * nf].iter().map(|&a| (a % p) as u32).collect();
                for k in lo..i {
                    let x = u64::from(entry(sorted[k], ci));
                    if x == 0 {
                        continue;
                    }
                    let f = p - x;
                    let acc = &mut accs[(k - lo) * nf..(k - lo + 1) * nf];
                    for (a, &v) in acc.iter_mut().zip(&row_i) {
                        *a = (*a + f * u64::from(v)) % p;
                    }
                }
                fin[i] = row_i;
            }
            hi = lo;
        }
        Rref { ncols: n, pivots, free, free_part: fin }
    }

    /// The canonical nullspace basis of the stored rows: kernel vectors from
    /// the free columns, then brought to reduced row echelon form.
    pub fn nullspace(&self, parallel: bool) -> Vec<Vec<u32>> {
        let rref = self.to_rref(parallel);
        let kernel = rref.kernel_vectors(&self.field);
        if kernel.is_empty() {
            return kernel;
        }
        let mut nb = EchelonBasis::new(self.field, self.ncols);
        nb.absorb(&kernel, parallel);
        nb.to_rref(parallel).rows()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::ExactMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_rows(p: u32, rows: usize, cols: usize, rank: usize, seed: u64) -> Vec<Vec<u32>> {
        let f = PrimeField::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<Vec<u32>> = (0..rows).map(|_| (0..rank).map(|_| rng.gen_range(0..p)).collect()).collect();
        let b: Vec<Vec<u32>> = (0..rank).map(|_| (0..cols).map(|_| rng.gen_range(0..p)).collect()).collect();
        (0..rows)
            .map(|i| {
                (0..cols)
                    .map(|j| (0..rank).fold(0u32, |s, k| f.add(&s, &f.mul(&a[i][k], &b[k][j]))))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn matches_dense_rref() {
        for (p, rows, cols, rank, seed) in [(103, 40, 30, 17, 1), (100049, 70, 50, 50, 2), (7, 20, 25, 9, 3)] {
            let f = PrimeField::new(p).unwrap();
            let data = random_rows(p, rows, cols, rank, seed);
            let dense = ExactMatrix::from_rows(f, cols, data.clone());
            let (rk, r) = dense.rref();
            let mut eb = EchelonBasis::new(f, cols);
            let grew = eb.absorb(&data, true);
            assert_eq!(eb.rank(), rk);
            assert_eq!(grew.iter().filter(|&&g| g).count(), rk);
            let rref = eb.to_rref(true);
            assert_eq!(rref.rows(), r.row_vecs()[..rk].to_vec());
            assert_eq!(eb.nullspace(false), dense.nullspace_basis());
            for v in &data {
                assert!(eb.contains(v));
            }
        }
    }

    #[test]
    fn large_prime_budget() {
        let p = 2147483647u32;
        let f = PrimeField::new(p).unwrap();
        let data = random_rows(p, 30, 24, 12, 9);
        let dense = ExactMatrix::from_rows(f, 24, data.clone());
        let mut eb = EchelonBasis::new(f, 24);
        eb.absorb(&data, false);
        assert_eq!(eb.rank(), 12);
        assert_eq!(eb.nullspace(false), dense.nullspace_basis());
    }

    #[test]
    fn incremental_equals_one_shot() {
        let f = PrimeField::new(103).unwrap();
        let data = random_rows(103, 60, 45, 26, 5);
        let mut a = EchelonBasis::new(f, 45);
        for v in &data {
            a.absorb_one(v);
        }
        let mut b = EchelonBasis::new(f, 45);
        b.absorb(&data, true);
        assert_eq!(a.to_rref(false), b.to_rref(true));
    }
}
