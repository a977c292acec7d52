//! `S_d`-modules of multilinear identities.
//!
//! A [`SymmetricModule`] holds the span of all permuted images of the
//! polynomials absorbed so far, so it is invariant under `S_d` after every
//! call. Membership of one polynomial therefore decides membership of its
//! whole orbit, and a candidate is a new generator exactly when it is not
//! already contained.
//!
//! Two strategies produce the same span. `Full` absorbs all `d!` images of
//! each new polynomial, streamed in blocks of at most 720. `Spin` absorbs
//! the polynomial and then, for every image that increased the rank, its
//! images under the two generators `(0 1)` and `i -> i+1 mod d` of `S_d`:
//! the vectors that increased the rank span a subspace mapped into itself
//! by both generators, hence by `S_d`.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::IdError;
use crate::exactfield::{PrimeField, ReducedBasis, Ring, SparseVec};
use crate::freeops::perm::{all_permutations, coxeter_generators};
use crate::freeops::{liftings, IntPoly, MonomialBasis, OpSelection, OpSet};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitStrategy {
    Full,
    Spin,
    /// `Full` below degree 6, `Spin` from degree 6 on.
    Auto,
}

impl OrbitStrategy {
    pub fn resolve(self, d: usize) -> Self {
        match self {
            OrbitStrategy::Auto if d >= 6 => OrbitStrategy::Spin,
            OrbitStrategy::Auto => OrbitStrategy::Full,
            s => s,
        }
    }
}

const BLOCK: usize = 720;
const SCAN_BATCH: usize = 64;

/// Coefficients of an integer polynomial over `basis`, reduced mod p.
pub fn to_sparse(poly: &IntPoly, basis: &MonomialBasis, f: &PrimeField) -> Result<SparseVec, IdError> {
    let mut out: SparseVec = Vec::with_capacity(poly.len());
    for (m, c) in poly.terms() {
        let col = basis
            .index_of(m)
            .ok_or_else(|| crate::freeops::FreeError::OutsideBasis(poly.ops().fmt_monomial(m)))?;
        let x = f.from_bigint(c);
        if x != 0 {
            out.push((col as u32, x));
        }
    }
    out.sort_unstable();
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SymmetricModule {
    ops: Arc<OpSet>,
    basis: Arc<MonomialBasis>,
    rows: ReducedBasis,
    strategy: OrbitStrategy,
    /// Column maps of the two generators, used by `Spin`.
    gen_tables: Vec<Vec<(u32, bool)>>,
    parallel: bool,
}

impl SymmetricModule {
    /// The zero module in degree `d` over all operations of `ops`.
    pub fn new(ops: &Arc<OpSet>, d: usize, field: PrimeField, strategy: OrbitStrategy, parallel: bool) -> Result<Self, IdError> {
        let basis = ops.basis(d, OpSelection::Mixed)?;
        let strategy = strategy.resolve(d);
        let gen_tables = if strategy == OrbitStrategy::Spin {
            coxeter_generators(d)
                .iter()
                .map(|g| {
                    par::map_range(basis.len(), parallel, |c| {
                        let (col, s) = basis.permute_column(ops, c, g);
                        (col as u32, s < 0)
                    })
                })
                .collect()
        } else {
            Vec::new()
        };
        let q = basis.len();
        Ok(SymmetricModule { ops: ops.clone(), basis, rows: ReducedBasis::new(field, q), strategy, gen_tables, parallel })
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }
    pub fn field(&self) -> &PrimeField {
        self.rows.field()
    }
    pub fn degree(&self) -> usize {
        self.basis.degree()
    }
    pub fn dim(&self) -> usize {
        self.rows.rank()
    }
    pub fn strategy(&self) -> OrbitStrategy {
        self.strategy
    }

    pub fn sparse(&self, poly: &IntPoly) -> Result<SparseVec, IdError> {
        if poly.degree() != self.degree() {
            return Err(crate::freeops::FreeError::DegreeMismatch { expected: self.degree(), found: poly.degree() }.into());
        }
        to_sparse(poly, &self.basis, self.field())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.rows.contains_sparse(v)
    }

    fn negate(&self, x: u32) -> u32 {
        self.field().neg(&x)
    }

    fn image(&self, v: &SparseVec, sigma: &[u8]) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .map(|&(c, x)| {
                let (col, s) = self.basis.permute_column(&self.ops, c as usize, sigma);
                (col as u32, if s < 0 { self.negate(x) } else { x })
            })
            .collect();
        out.sort_unstable();
        out
    }

    fn image_by_table(&self, v: &SparseVec, table: &[(u32, bool)]) -> SparseVec {
        let mut out: SparseVec = v
            .iter()
            .map(|&(c, x)| {
                let (col, neg) = table[c as usize];
                (col, if neg { self.negate(x) } else { x })
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Absorbs the orbit of `v`; returns the increase in dimension.
    pub fn absorb(&mut self, v: &SparseVec) -> usize {
        let before = self.dim();
        if self.rows.is_full() || self.contains(v) {
            return 0;
        }
        match self.strategy {
            OrbitStrategy::Spin => self.spin(v.clone()),
            _ => self.full_orbit(v),
        }
        self.dim() - before
    }

    fn full_orbit(&mut self, v: &SparseVec) {
        let perms = all_permutations(self.degree());
        for block in perms.chunks(BLOCK) {
            let images = par::map(block, self.parallel, |s| self.image(v, s));
            self.rows.absorb_batch(&images, self.parallel);
            if self.rows.is_full() {
                return;
            }
        }
    }

    fn spin(&mut self, v: SparseVec) {
        let mut queue = VecDeque::from([v]);
        while !queue.is_empty() && !self.rows.is_full() {
            let n = queue.len().min(BLOCK);
            let batch: Vec<SparseVec> = queue.drain(..n).collect();
            let grew = self.rows.absorb_batch(&batch, self.parallel);
            for (w, g) in batch.iter().zip(grew) {
                if g {
                    for t in &self.gen_tables {
                        queue.push_back(self.image_by_table(w, t));
                    }
                }
            }
        }
    }

    /// Scans `candidates` in order and absorbs each one not yet contained;
    /// returns `(candidate index, dimension after)` for those that grew the
    /// module. Stops once the dimension reaches `stop_at`.
    pub fn scan(&mut self, candidates: &[SparseVec], stop_at: Option<usize>) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let done = |m: &Self| m.rows.is_full() || stop_at.is_some_and(|s| m.dim() >= s);
        for (b, chunk) in candidates.chunks(SCAN_BATCH).enumerate() {
            if done(self) {
                break;
            }
            let mark = self.rows.rank();
            let mut residuals = par::map(chunk, self.parallel, |v| self.rows.reduce_sparse(v));
            for (i, res) in residuals.iter_mut().enumerate() {
                if done(self) {
                    break;
                }
                self.rows.update_residual(res, mark);
                if res.iter().all(|&x| x == 0) {
                    continue;
                }
                let idx = b * SCAN_BATCH + i;
                if self.absorb(&candidates[idx]) > 0 {
                    out.push((idx, self.dim()));
                }
            }
        }
        out
    }
}

/// Result of a generator scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleGenerators {
    /// Indices into the candidate list, in scan order.
    pub generators: Vec<usize>,
    /// Module dimension after each generator.
    pub dims: Vec<usize>,
    pub seed_dim: usize,
    pub dim: usize,
}

/// The generators among `candidates` of the module they span together with
/// `seeds`, recorded greedily in order.
pub fn module_generators(
    ops: &Arc<OpSet>,
    d: usize,
    field: PrimeField,
    candidates: &[IntPoly],
    seeds: &[IntPoly],
    strategy: OrbitStrategy,
    parallel: bool,
) -> Result<ModuleGenerators, IdError> {
    let mut module = SymmetricModule::new(ops, d, field, strategy, parallel)?;
    for s in seeds {
        let v = module.sparse(s)?;
        module.absorb(&v);
    }
    let seed_dim = module.dim();
    let cands: Vec<SparseVec> = candidates.iter().map(|c| module.sparse(c)).collect::<Result<_, _>>()?;
    let found = module.scan(&cands, None);
    Ok(ModuleGenerators {
        generators: found.iter().map(|g| g.0).collect(),
        dims: found.iter().map(|g| g.1).collect(),
        seed_dim,
        dim: module.dim(),
    })
}

/// The module of consequences in degree `d` of identities of lower degree.
#[derive(Debug, Clone)]
pub struct LiftedModule {
    pub module: SymmetricModule,
    /// Number of liftings scanned.
    pub liftings: usize,
    /// Liftings recorded as generators.
    pub generators: Vec<IntPoly>,
}

impl LiftedModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }
}

pub fn lifted_module(
    known: &[IntPoly],
    d: usize,
    ops: &Arc<OpSet>,
    field: PrimeField,
    strategy: OrbitStrategy,
    parallel: bool,
) -> Result<LiftedModule, IdError> {
    let mut module = SymmetricModule::new(ops, d, field, strategy, parallel)?;
    let mut all = Vec::new();
    for k in known {
        if k.degree() >= d {
            return Err(IdError::Config(format!("known identity of degree {} is not below {d}", k.degree())));
        }
        if **k.ops() != **ops {
            return Err(crate::freeops::FreeError::OpsMismatch.into());
        }
        all.extend(liftings(k, d)?);
    }
    let sparse: Vec<SparseVec> = all.iter().map(|p| module.sparse(p)).collect::<Result<_, _>>()?;
    let found = module.scan(&sparse, None);
    let generators = found.iter().map(|&(i, _)| all[i].clone()).collect();
    Ok(LiftedModule { module, liftings: all.len(), generators })
}

/// Whether `base + a` and `base + b` are the same module: adding either
/// family to the other does not increase the dimension.
pub fn same_module_over(base: &SymmetricModule, a: &[SparseVec], b: &[SparseVec]) -> bool {
    let covers = |x: &[SparseVec], y: &[SparseVec]| {
        let mut m = base.clone();
        x.iter().for_each(|v| {
            m.absorb(v);
        });
        y.iter().all(|v| m.contains(v))
    };
    covers(a, b) && covers(b, a)
}
