//! Fill-and-reduce: rows of evaluations at random points, absorbed until
//! the rank has not moved for `s` consecutive iterations.
//!
//! Iteration `t` substitutes the vectors of `random_inputs(seed, t)`, so
//! trials evaluated ahead in parallel are absorbed in the same order as a
//! sequential run and the result does not depend on the thread count.

use std::sync::Arc;
use std::time::Instant;

use super::{IdError, SearchConfig};
use crate::algebras::{random_inputs, EvalPlan, PrimeEvaluator, RingTables, StructureConstantAlgebra};
use crate::exactfield::{EchelonBasis, PrimeField};
use crate::freeops::MonomialBasis;
use crate::par;

#[derive(Debug, Clone)]
pub struct FillResult {
    pub basis: Arc<MonomialBasis>,
    pub rank: usize,
    /// Iteration after which the final rank was first reached.
    pub reached_at: usize,
    pub iterations: usize,
    /// Rank after each iteration.
    pub rank_history: Vec<usize>,
    /// Canonical nullspace basis, one dense residue vector per identity.
    pub nullspace: Vec<Vec<u32>>,
    pub millis: u128,
}

impl FillResult {
    pub fn q(&self) -> usize {
        self.basis.len()
    }
}

pub fn fill_and_reduce(alg: &StructureConstantAlgebra<PrimeField>, cfg: &SearchConfig) -> Result<FillResult, IdError> {
    let start = Instant::now();
    let f = *alg.field();
    if f.modulus() != cfg.prime {
        return Err(IdError::Config(format!("algebra is over GF({}), search over GF({})", f.modulus(), cfg.prime)));
    }
    let d = cfg.degree;
    let ops = alg.ops();
    let basis = ops.basis(d, cfg.ops)?;
    let q = basis.len();
    let m = alg.dim();
    let plan = EvalPlan::new(ops, d, basis.monomials())?;
    let ev = PrimeEvaluator(RingTables::from_algebra(alg));
    let cap = cfg.cap_for(q, m);
    let mut echelon = EchelonBasis::new(f, q);
    let batch = if cfg.parallel { par::threads().max(1) } else { 1 };
    let mut history = Vec::new();
    let (mut stable, mut reached_at) = (0, 0);
    let mut t = 0;
    'outer: while t < cap {
        let n = batch.min(cap - t);
        let blocks = par::map_range(n, cfg.parallel, |i| {
            let inputs = random_inputs(&f, m, d, cfg.seed, t + i);
            let flat = ev.0.evaluate_flat(&plan, &inputs);
            // root-major to coordinate-major: one row per coordinate
            let mut rows = vec![0u32; m * q];
            for (col, vals) in flat.chunks_exact(m.max(1)).enumerate() {
                for (j, &x) in vals.iter().enumerate() {
                    rows[j * q + col] = x;
                }
            }
            rows
        });
        for rows in blocks {
            let before = echelon.rank();
            echelon.absorb_flat(&rows, cfg.parallel);
            t += 1;
            history.push(echelon.rank());
            if echelon.rank() > before {
                stable = 0;
                reached_at = t;
            } else {
                stable += 1;
            }
            if stable >= cfg.stabilize || echelon.is_full() {
                break 'outer;
            }
        }
    }
    if stable < cfg.stabilize && !echelon.is_full() {
        return Err(IdError::CapExceeded { cap, rank: echelon.rank() });
    }
    let nullspace = echelon.nullspace(cfg.parallel);
    Ok(FillResult {
        basis,
        rank: echelon.rank(),
        reached_at,
        iterations: t,
        rank_history: history,
        nullspace,
        millis: start.elapsed().as_millis(),
    })
}
