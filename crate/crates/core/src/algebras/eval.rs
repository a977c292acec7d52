//! Evaluation of multilinear monomials in a structure-constant algebra.
//!
//! An [`EvalPlan`] is the DAG of all distinct submonomials of a list of
//! monomials, keyed by (type, leaf labels); children precede parents, so a
//! single forward pass evaluates everything. [`RingTables`] holds the
//! product tables over any [`Ring`]; an `r`-ary product contracts the last
//! `r - 1` arguments into a weight tensor first and the first argument last.
//! Over GF(p) the same contraction runs on `u64` accumulators reduced lazily.
//! Over ℚ(√2) the tables are cleared of denominators and evaluated in
//! `i128`-backed ℤ[√2]; an overflow falls back to exact rationals.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::table::{Factorization, SparseRow, StructureConstantAlgebra};
use super::AlgebraError;
use crate::exactfield::{Field, PrimeField, QSqrt2, QuadSqrt2, Ring, ZSqrt2, Z2};
use crate::freeops::{Monomial, OpSet};

#[derive(Debug, Clone)]
enum PlanNode {
    Leaf(u8),
    Op(usize, Vec<u32>),
}

/// Shared evaluation DAG for a list of monomials of one degree.
#[derive(Debug, Clone)]
pub struct EvalPlan {
    ops: Arc<OpSet>,
    degree: usize,
    nodes: Vec<PlanNode>,
    roots: Vec<u32>,
}

impl EvalPlan {
    pub fn new(ops: &Arc<OpSet>, degree: usize, monomials: &[Monomial]) -> Result<Self, AlgebraError> {
        let mut plan = EvalPlan { ops: ops.clone(), degree, nodes: Vec::new(), roots: Vec::new() };
        let mut index: HashMap<(u32, Vec<u8>), u32> = HashMap::new();
        for x in 0..degree {
            plan.nodes.push(PlanNode::Leaf(x as u8));
            index.insert((0, vec![x as u8]), x as u32);
        }
        for m in monomials {
            if m.degree() != degree {
                return Err(AlgebraError::DimensionMismatch { expected: degree, found: m.degree() });
            }
            let root = plan.insert(&mut index, m.type_id(), m.labels());
            plan.roots.push(root);
        }
        Ok(plan)
    }

    fn insert(&mut self, index: &mut HashMap<(u32, Vec<u8>), u32>, ty: u32, labels: &[u8]) -> u32 {
        if let Some(&id) = index.get(&(ty, labels.to_vec())) {
            return id;
        }
        let t = self.ops.types().get(ty).clone();
        let k = t.op.expect("leaves are preinserted");
        let mut children = Vec::with_capacity(t.children.len());
        let mut off = 0;
        for &c in &t.children {
            let d = self.ops.types().get(c).degree;
            children.push(self.insert(index, c, &labels[off..off + d]));
            off += d;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(PlanNode::Op(k, children));
        index.insert((ty, labels.to_vec()), id);
        id
    }

    pub fn ops(&self) -> &Arc<OpSet> {
        &self.ops
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of DAG nodes, leaves included.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn roots(&self) -> &[u32] {
        &self.roots
    }
}

/// Product tables over an arbitrary ring.
#[derive(Debug, Clone)]
pub struct RingTables<R: Ring> {
    ring: R,
    dim: usize,
    arity: Vec<usize>,
    tables: Vec<Vec<SparseRow<R::Elem>>>,
    factors: Vec<Option<Factorization<R::Elem>>>,
}

fn map_rows<R: Ring, S: Ring>(
    rows: &[SparseRow<R::Elem>],
    f: &impl Fn(&R::Elem) -> Option<S::Elem>,
) -> Option<Vec<SparseRow<S::Elem>>> {
    rows.iter().map(|row| row.iter().map(|(i, c)| f(c).map(|v| (*i, v))).collect()).collect()
}

impl<F: Field> RingTables<F> {
    pub fn from_algebra(alg: &StructureConstantAlgebra<F>) -> Self {
        let n_ops = alg.ops().ops().len();
        RingTables {
            ring: alg.field().clone(),
            dim: alg.dim(),
            arity: alg.ops().ops().iter().map(|o| o.arity).collect(),
            tables: (0..n_ops).map(|k| alg.table(k).to_vec()).collect(),
            factors: (0..n_ops).map(|k| alg.factors(k).cloned()).collect(),
        }
    }
}

impl<R: Ring> RingTables<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Converts every entry with `f(e, c)`; `None` if some entry has no
    /// image. `e` is the power of the scale owed by that entry: `r - 1` in
    /// an `r`-ary table, `1` in a left factor and `r - 2` in a right one.
    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(usize, &R::Elem) -> Option<S::Elem>) -> Option<RingTables<S>> {
        let mut tables = Vec::with_capacity(self.tables.len());
        let mut factors = Vec::with_capacity(self.tables.len());
        for k in 0..self.tables.len() {
            let r = self.arity[k];
            tables.push(map_rows::<R, S>(&self.tables[k], &|c| f(r - 1, c))?);
            factors.push(match &self.factors[k] {
                None => None,
                Some(fa) => Some(Factorization {
                    rank: fa.rank,
                    left: map_rows::<R, S>(&fa.left, &|c| f(1, c))?,
                    right: map_rows::<R, S>(&fa.right, &|c| f(r.saturating_sub(2), c))?,
                }),
            });
        }
        Some(RingTables { ring, dim: self.dim, arity: self.arity.clone(), tables, factors })
    }

    /// Tensor of the products of `args`, indexed mixed-radix by tuples.
    fn weights(&self, r: &R, args: &[&[R::Elem]]) -> Vec<R::Elem> {
        let mut w = vec![r.one()];
        for a in args {
            let mut next = Vec::with_capacity(w.len() * self.dim);
            for x in &w {
                for y in a.iter() {
                    next.push(if r.is_zero(x) || r.is_zero(y) { r.zero() } else { r.mul(x, y) });
                }
            }
            w = next;
        }
        w
    }

    /// `w_k(args)` on dense coordinate vectors.
    pub fn apply(&self, k: usize, args: &[&[R::Elem]], out: &mut [R::Elem]) {
        self.apply_in(&self.ring, k, args, out)
    }

    /// [`apply`](Self::apply) with arithmetic from `r`, a context of the
    /// same ring (used to give each call its own overflow flag).
    fn apply_in(&self, r: &R, k: usize, args: &[&[R::Elem]], out: &mut [R::Elem]) {
        let m = self.dim;
        for o in out.iter_mut() {
            *o = r.zero();
        }
        let arity = self.arity[k];
        if let Some(fa) = &self.factors[k] {
            let head = self.weights(r, &args[..arity - 1]);
            let mut u = vec![r.zero(); fa.rank];
            for (t, w) in head.iter().enumerate() {
                if !r.is_zero(w) {
                    for (s, c) in &fa.left[t] {
                        r.mul_add_assign(&mut u[*s as usize], w, c);
                    }
                }
            }
            let last = args[arity - 1];
            for (s, us) in u.iter().enumerate() {
                if r.is_zero(us) {
                    continue;
                }
                for (j, z) in last.iter().enumerate() {
                    if r.is_zero(z) {
                        continue;
                    }
                    let c = r.mul(us, z);
                    for (o, v) in &fa.right[s * m + j] {
                        r.mul_add_assign(&mut out[*o as usize], &c, v);
                    }
                }
            }
            return;
        }
        let tail = self.weights(r, &args[1..]);
        let stride = tail.len();
        let table = &self.tables[k];
        let mut inner = vec![r.zero(); m];
        for (i, x) in args[0].iter().enumerate() {
            if r.is_zero(x) {
                continue;
            }
            for v in inner.iter_mut() {
                *v = r.zero();
            }
            for (t, w) in tail.iter().enumerate() {
                if r.is_zero(w) {
                    continue;
                }
                for (o, c) in &table[i * stride + t] {
                    r.mul_add_assign(&mut inner[*o as usize], w, c);
                }
            }
            for (o, v) in inner.iter().enumerate() {
                if !r.is_zero(v) {
                    r.mul_add_assign(&mut out[o], x, v);
                }
            }
        }
    }

    /// Values of every node; `inputs[x]` is the vector substituted for `x`.
    fn eval_nodes(&self, r: &R, plan: &EvalPlan, inputs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        let mut vals: Vec<Vec<R::Elem>> = Vec::with_capacity(plan.nodes.len());
        for node in &plan.nodes {
            let v = match node {
                PlanNode::Leaf(x) => inputs[*x as usize].clone(),
                PlanNode::Op(k, ch) => {
                    let args: Vec<&[R::Elem]> = ch.iter().map(|&c| vals[c as usize].as_slice()).collect();
                    let mut out = vec![r.zero(); self.dim];
                    self.apply_in(r, *k, &args, &mut out);
                    out
                }
            };
            vals.push(v);
        }
        vals
    }

    /// Value of every root of `plan`.
    pub fn evaluate(&self, plan: &EvalPlan, inputs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        self.evaluate_in(&self.ring, plan, inputs)
    }

    fn evaluate_in(&self, r: &R, plan: &EvalPlan, inputs: &[Vec<R::Elem>]) -> Vec<Vec<R::Elem>> {
        let mut vals = self.eval_nodes(r, plan, inputs);
        plan.roots.iter().map(|&r| std::mem::take(&mut vals[r as usize])).collect()
    }
}

/// Lazy `u64` accumulator for GF(p): entries stay below `u64::MAX - p^2`.
struct Acc {
    v: Vec<u64>,
    p: u64,
    limit: u64,
}

impl Acc {
    fn new(p: u64, len: usize) -> Self {
        Acc { v: vec![0; len], p, limit: u64::MAX - p * p }
    }

    fn clear(&mut self) {
        self.v.iter_mut().for_each(|x| *x = 0);
    }

    /// Adds `w < p^2`.
    #[inline]
    fn add(&mut self, o: usize, w: u64) {
        let x = self.v[o] + w;
        self.v[o] = if x >= self.limit { x % self.p } else { x };
    }

    fn reduced(&self, o: usize) -> u64 {
        self.v[o] % self.p
    }
}

impl RingTables<PrimeField> {
    fn weights_u64(&self, args: &[&[u32]]) -> Vec<u64> {
        let p = u64::from(self.ring.modulus());
        let mut w = vec![1u64];
        for a in args {
            let mut next = Vec::with_capacity(w.len() * self.dim);
            for &x in &w {
                for &y in a.iter() {
                    next.push(x * u64::from(y) % p);
                }
            }
            w = next;
        }
        w
    }

    /// [`apply`](RingTables::apply) with lazy reduction.
    pub fn apply_fast(&self, k: usize, args: &[&[u32]], out: &mut [u32]) {
        let p = u64::from(self.ring.modulus());
        let m = self.dim;
        let arity = self.arity[k];
        let mut acc = Acc::new(p, m);
        if let Some(fa) = &self.factors[k] {
            let head = self.weights_u64(&args[..arity - 1]);
            let mut u = Acc::new(p, fa.rank);
            for (t, &w) in head.iter().enumerate() {
                if w != 0 {
                    for (s, c) in &fa.left[t] {
                        u.add(*s as usize, w * u64::from(*c));
                    }
                }
            }
            let last = args[arity - 1];
            let mut inner = Acc::new(p, m);
            for s in 0..fa.rank {
                let us = u.reduced(s);
                if us == 0 {
                    continue;
                }
                inner.clear();
                for (j, &z) in last.iter().enumerate() {
                    if z != 0 {
                        for (o, v) in &fa.right[s * m + j] {
                            inner.add(*o as usize, u64::from(z) * u64::from(*v));
                        }
                    }
                }
                for o in 0..m {
                    acc.add(o, us * inner.reduced(o));
                }
            }
        } else {
            let tail = self.weights_u64(&args[1..]);
            let stride = tail.len();
            let table = &self.tables[k];
            let mut inner = Acc::new(p, m);
            for (i, &x) in args[0].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                inner.clear();
                for (t, &w) in tail.iter().enumerate() {
                    if w != 0 {
                        for (o, c) in &table[i * stride + t] {
                            inner.add(*o as usize, w * u64::from(*c));
                        }
                    }
                }
                for o in 0..m {
                    acc.add(o, u64::from(x) * inner.reduced(o));
                }
            }
        }
        for (o, slot) in out.iter_mut().enumerate() {
            *slot = acc.reduced(o) as u32;
        }
    }

    /// Root values as one flat vector, `dim` entries per root.
    pub fn evaluate_flat(&self, plan: &EvalPlan, inputs: &[Vec<u32>]) -> Vec<u32> {
        let m = self.dim;
        let mut vals = vec![0u32; plan.nodes.len() * m];
        for (id, node) in plan.nodes.iter().enumerate() {
            let (done, rest) = vals.split_at_mut(id * m);
            let out = &mut rest[..m];
            match node {
                PlanNode::Leaf(x) => out.copy_from_slice(&inputs[*x as usize]),
                PlanNode::Op(k, ch) => {
                    let args: Vec<&[u32]> = ch.iter().map(|&c| &done[c as usize * m..(c as usize + 1) * m]).collect();
                    self.apply_fast(*k, &args, out);
                }
            }
        }
        let mut out = Vec::with_capacity(plan.roots.len() * m);
        for &r in &plan.roots {
            out.extend_from_slice(&vals[r as usize * m..(r as usize + 1) * m]);
        }
        out
    }
}

/// Tables of an algebra prepared for repeated evaluation.
pub trait Evaluator: Send + Sync {
    type Field: Field;
    fn field(&self) -> &Self::Field;
    fn dim(&self) -> usize;
    /// Value of every root of `plan` at `inputs`.
    fn evaluate(&self, plan: &EvalPlan, inputs: &[Vec<<Self::Field as Ring>::Elem>]) -> Vec<Vec<<Self::Field as Ring>::Elem>>;
}

/// Fields with a preferred evaluation backend.
pub trait FastEval: Field {
    type Prepared: Evaluator<Field = Self>;
    fn prepare(alg: &StructureConstantAlgebra<Self>) -> Self::Prepared;
}

/// Plain evaluation with the field's own arithmetic.
#[derive(Debug, Clone)]
pub struct GenericEvaluator<F: Field>(pub RingTables<F>);

impl<F: Field> Evaluator for GenericEvaluator<F> {
    type Field = F;
    fn field(&self) -> &F {
        &self.0.ring
    }
    fn dim(&self) -> usize {
        self.0.dim
    }
    fn evaluate(&self, plan: &EvalPlan, inputs: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
        self.0.evaluate(plan, inputs)
    }
}

#[derive(Debug, Clone)]
pub struct PrimeEvaluator(pub RingTables<PrimeField>);

impl Evaluator for PrimeEvaluator {
    type Field = PrimeField;
    fn field(&self) -> &PrimeField {
        &self.0.ring
    }
    fn dim(&self) -> usize {
        self.0.dim
    }
    fn evaluate(&self, plan: &EvalPlan, inputs: &[Vec<u32>]) -> Vec<Vec<u32>> {
        let flat = self.0.evaluate_flat(plan, inputs);
        flat.chunks(self.0.dim.max(1)).take(plan.roots.len()).map(<[u32]>::to_vec).collect()
    }
}

impl FastEval for PrimeField {
    type Prepared = PrimeEvaluator;
    fn prepare(alg: &StructureConstantAlgebra<Self>) -> PrimeEvaluator {
        PrimeEvaluator(RingTables::from_algebra(alg))
    }
}

/// ℚ(√2) evaluation through ℤ[√2] tables scaled by the common denominator
/// `D`: an `r`-ary table is multiplied by `D^(r-1)`, so a monomial of
/// degree `d` comes out multiplied by `D^(d-1)` whatever its type.
#[derive(Debug, Clone)]
pub struct ExactEvaluator {
    exact: RingTables<QuadSqrt2>,
    scaled: Option<RingTables<ZSqrt2>>,
    denom: BigInt,
}

impl ExactEvaluator {
    pub fn new(alg: &StructureConstantAlgebra<QuadSqrt2>) -> Self {
        let exact = RingTables::from_algebra(alg);
        let mut denom = BigInt::one();
        let mut absorb = |c: &QSqrt2| {
            denom = denom.lcm(c.a.denom()).lcm(c.b.denom());
        };
        for t in &exact.tables {
            t.iter().flatten().for_each(|(_, c)| absorb(c));
        }
        for f in exact.factors.iter().flatten() {
            f.left.iter().chain(&f.right).flatten().for_each(|(_, c)| absorb(c));
        }
        let z = ZSqrt2::new();
        let d = BigRational::from_integer(denom.clone());
        let scaled = exact.map(z.clone(), |e, c| {
            let scale = num_traits::pow(d.clone(), e);
            z.from_qsqrt2(&QSqrt2::new(&c.a * &scale, &c.b * &scale))
        });
        ExactEvaluator { exact, scaled, denom }
    }

    /// Whether the fast path is available at all.
    pub fn has_fast_path(&self) -> bool {
        self.scaled.is_some()
    }

    fn try_fast(&self, plan: &EvalPlan, inputs: &[Vec<QSqrt2>]) -> Option<Vec<Vec<QSqrt2>>> {
        let base = self.scaled.as_ref()?;
        // a fresh overflow flag per call keeps concurrent calls independent
        let ring = ZSqrt2::new();
        let zin: Vec<Vec<Z2>> =
            inputs.iter().map(|v| v.iter().map(|x| ring.from_qsqrt2(x)).collect::<Option<Vec<_>>>()).collect::<Option<_>>()?;
        let vals = base.evaluate_in(&ring, plan, &zin);
        if ring.overflowed() {
            return None;
        }
        let scale = num_traits::pow(BigRational::from_integer(self.denom.clone()), plan.degree.saturating_sub(1));
        let inv = scale.recip();
        Some(
            vals.into_iter()
                .map(|v| {
                    v.into_iter()
                        .map(|x| {
                            let q = x.to_qsqrt2();
                            QSqrt2::new(&q.a * &inv, &q.b * &inv)
                        })
                        .collect()
                })
                .collect(),
        )
    }
}

impl Evaluator for ExactEvaluator {
    type Field = QuadSqrt2;
    fn field(&self) -> &QuadSqrt2 {
        &self.exact.ring
    }
    fn dim(&self) -> usize {
        self.exact.dim
    }
    fn evaluate(&self, plan: &EvalPlan, inputs: &[Vec<QSqrt2>]) -> Vec<Vec<QSqrt2>> {
        self.try_fast(plan, inputs).unwrap_or_else(|| self.exact.evaluate(plan, inputs))
    }
}

impl FastEval for QuadSqrt2 {
    type Prepared = ExactEvaluator;
    fn prepare(alg: &StructureConstantAlgebra<Self>) -> ExactEvaluator {
        ExactEvaluator::new(alg)
    }
}

/// `sum_j coeffs[j] * roots[j]`.
pub fn combine<F: Field>(field: &F, roots: &[Vec<F::Elem>], coeffs: &[F::Elem], dim: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); dim];
    for (v, c) in roots.iter().zip(coeffs) {
        field.axpy(&mut out, c, v);
    }
    out
}
