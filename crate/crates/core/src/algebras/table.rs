//! Structure-constant algebras: sparse product tables over an exact field.
//!
//! Row `t` of the table of an `r`-ary operation holds the coordinates of
//! the product of basis vectors `e_t0, .., e_t(r-1)`; rows are indexed by
//! the mixed-radix number `t0 m^(r-1) + .. + t(r-1)`. Every row is stored,
//! but only the rows of canonical tuples are ever computed or serialized;
//! the others follow from the operation's signed slot symmetries.

use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use super::AlgebraError;
use crate::exactfield::{Field, FieldDescriptor, FieldError, PrimeField, QSqrt2, QuadSqrt2, Ring};
use crate::freeops::{OpSet, SignedArrangement};
use crate::par;

pub type SparseRow<E> = Vec<(u32, E)>;

/// Dense row storage is `dim^arity` entries; larger tables are refused.
pub const MAX_TABLE_ROWS: usize = 1 << 25;

/// A factorization `w(x1..xr) = sum_s left_s(x1..x(r-1)) * right_s(xr)` of
/// one operation; for the products of a reductive pair the inner index runs
/// over a basis of the subalgebra and the sum is short.
#[derive(Debug, Clone)]
pub struct Factorization<E> {
    pub rank: usize,
    /// Indexed by the tuple of the first `r-1` slots; entries `(s, coeff)`.
    pub left: Vec<SparseRow<E>>,
    /// Indexed by `s * m + k`; entries `(output coordinate, coeff)`.
    pub right: Vec<SparseRow<E>>,
}

#[derive(Debug, Clone)]
pub struct StructureConstantAlgebra<F: Field> {
    name: String,
    n: Option<usize>,
    dim: usize,
    field: F,
    ops: Arc<OpSet>,
    tables: Vec<Vec<SparseRow<F::Elem>>>,
    factors: Vec<Option<Factorization<F::Elem>>>,
}

pub(crate) fn tuple_index(t: &[usize], m: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * m + x)
}

pub(crate) fn index_tuple(mut idx: usize, m: usize, r: usize) -> Vec<usize> {
    let mut t = vec![0; r];
    for s in (0..r).rev() {
        t[s] = idx % m;
        idx /= m;
    }
    t
}

fn image(t: &[usize], a: &SignedArrangement) -> Vec<usize> {
    a.perm.iter().map(|&s| t[s as usize]).collect()
}

/// Whether `t` is the least tuple of its orbit and not forced to vanish.
fn is_canonical(t: &[usize], group: &[SignedArrangement]) -> bool {
    group.iter().all(|a| {
        let u = image(t, a);
        u.as_slice() > t || (u == t && a.sign == 1)
    })
}

fn sparse<F: Field>(field: &F, dense: Vec<F::Elem>) -> SparseRow<F::Elem> {
    dense.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).map(|(i, c)| (i as u32, c)).collect()
}

impl<F: Field> StructureConstantAlgebra<F> {
    /// Builds every table from `row(op, tuple)`, a dense coordinate vector,
    /// evaluated on canonical tuples only.
    pub fn from_fn<G>(name: &str, n: Option<usize>, field: F, ops: Arc<OpSet>, dim: usize, row: G) -> Result<Self, AlgebraError>
    where
        G: Fn(usize, &[usize]) -> Result<Vec<F::Elem>, AlgebraError> + Sync + Send,
    {
        let mut tables = Vec::with_capacity(ops.ops().len());
        for k in 0..ops.ops().len() {
            let r = ops.op(k).arity;
            let group = ops.group(k);
            let count = dim.checked_pow(r as u32).filter(|&c| c <= MAX_TABLE_ROWS).ok_or(AlgebraError::TooLarge(dim))?;
            let canon: Vec<Vec<usize>> =
                (0..count).map(|i| index_tuple(i, dim, r)).filter(|t| is_canonical(t, group)).collect();
            let rows = par::map(&canon, true, |t| -> Result<_, AlgebraError> {
                let v = row(k, t)?;
                if v.len() != dim {
                    return Err(AlgebraError::DimensionMismatch { expected: dim, found: v.len() });
                }
                Ok(sparse(&field, v))
            });
            let mut table = vec![Vec::new(); count];
            for (t, r) in canon.iter().zip(rows) {
                Self::spread(&field, &mut table, dim, group, t, r?);
            }
            tables.push(table);
        }
        let factors = vec![None; tables.len()];
        Ok(StructureConstantAlgebra { name: name.to_string(), n, dim, field, ops, tables, factors })
    }

    /// Writes the row of a canonical tuple and all its signed images.
    fn spread(field: &F, table: &mut [SparseRow<F::Elem>], m: usize, group: &[SignedArrangement], t: &[usize], row: SparseRow<F::Elem>) {
        for a in group {
            let u = tuple_index(&image(t, a), m);
            table[u] = if a.sign == 1 { row.clone() } else { row.iter().map(|(i, c)| (*i, field.neg(c))).collect() };
        }
    }

    /// The algebra with all products zero.
    pub fn zero(name: &str, field: F, ops: Arc<OpSet>, dim: usize) -> Result<Self, AlgebraError> {
        let z = field.zero();
        Self::from_fn(name, None, field, ops, dim, |_, _| Ok(vec![z.clone(); dim]))
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn n(&self) -> Option<usize> {
        self.n
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ops(&self) -> &Arc<OpSet> {
        &self.ops
    }
    pub fn table(&self, k: usize) -> &[SparseRow<F::Elem>] {
        &self.tables[k]
    }
    pub fn factors(&self, k: usize) -> Option<&Factorization<F::Elem>> {
        self.factors[k].as_ref()
    }

    pub fn row(&self, k: usize, t: &[usize]) -> &SparseRow<F::Elem> {
        &self.tables[k][tuple_index(t, self.dim)]
    }

    /// Attaches a factorization of operation `k`. Only the shape is checked
    /// here; [`factor_violation`](Self::factor_violation) checks the values.
    pub fn with_factors(mut self, k: usize, f: Factorization<F::Elem>) -> Result<Self, AlgebraError> {
        let r = self.ops.op(k).arity;
        let m = self.dim;
        let in_range = f.left.iter().flatten().all(|(s, _)| (*s as usize) < f.rank)
            && f.right.iter().flatten().all(|(o, _)| (*o as usize) < m);
        if f.left.len() != m.pow(r as u32 - 1) || f.right.len() != f.rank * m || !in_range {
            return Err(AlgebraError::BadModel("factorization has the wrong shape".into()));
        }
        self.factors[k] = Some(f);
        Ok(self)
    }

    /// First tuple whose table row differs from the attached factorization.
    pub fn factor_violation(&self, k: usize) -> Option<Vec<usize>> {
        let f = self.factors[k].as_ref()?;
        let m = self.dim;
        (0..self.tables[k].len()).find_map(|idx| {
            let mut dense = vec![self.field.zero(); m];
            let (head, last) = (idx / m, idx % m);
            for (s, a) in &f.left[head] {
                for (o, b) in &f.right[*s as usize * m + last] {
                    self.field.mul_add_assign(&mut dense[*o as usize], a, b);
                }
            }
            (sparse(&self.field, dense) != self.tables[k][idx]).then(|| index_tuple(idx, m, self.ops.op(k).arity))
        })
    }

    pub fn rename(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Number of stored nonzero structure constants of operation `k`.
    pub fn nnz(&self, k: usize) -> usize {
        self.tables[k].iter().map(Vec::len).sum()
    }

    /// The product `w_k(args)` on coordinate vectors.
    pub fn product(&self, k: usize, args: &[&[F::Elem]]) -> Result<Vec<F::Elem>, AlgebraError> {
        let r = self.ops.op(k).arity;
        if args.len() != r {
            return Err(AlgebraError::DimensionMismatch { expected: r, found: args.len() });
        }
        if let Some(a) = args.iter().find(|a| a.len() != self.dim) {
            return Err(AlgebraError::DimensionMismatch { expected: self.dim, found: a.len() });
        }
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim];
        // odometer over the nonzero coordinates of each argument
        let supports: Vec<Vec<usize>> = args.iter().map(|a| (0..a.len()).filter(|&i| !f.is_zero(&a[i])).collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return Ok(out);
        }
        let mut pos = vec![0usize; r];
        loop {
            let t: Vec<usize> = (0..r).map(|s| supports[s][pos[s]]).collect();
            let row = self.row(k, &t);
            if !row.is_empty() {
                let mut c = args[0][t[0]].clone();
                for s in 1..r {
                    c = f.mul(&c, &args[s][t[s]]);
                }
                for (o, v) in row {
                    f.mul_add_assign(&mut out[*o as usize], &c, v);
                }
            }
            let mut s = r;
            loop {
                if s == 0 {
                    return Ok(out);
                }
                s -= 1;
                pos[s] += 1;
                if pos[s] < supports[s].len() {
                    break;
                }
                pos[s] = 0;
            }
        }
    }

    /// First tuple at which the table breaks the declared symmetry of `k`.
    pub fn symmetry_violation(&self, k: usize) -> Option<Vec<usize>> {
        self.violation_of(k, self.ops.group(k))
    }

    fn violation_of(&self, k: usize, group: &[SignedArrangement]) -> Option<Vec<usize>> {
        let r = self.ops.op(k).arity;
        let table = &self.tables[k];
        (0..table.len()).find_map(|idx| {
            let t = index_tuple(idx, self.dim, r);
            group
                .iter()
                .any(|a| {
                    let u = &table[tuple_index(&image(&t, a), self.dim)];
                    let want: SparseRow<F::Elem> =
                        table[idx].iter().map(|(i, c)| (*i, self.field.scale_sign(c, a.sign))).collect();
                    *u != want
                })
                .then_some(t)
        })
    }

    /// Every signed slot rearrangement of operation `k` that leaves its
    /// table invariant: `w(x) = sign * w(x permuted)`.
    pub fn detect_symmetries(&self, k: usize) -> Vec<SignedArrangement> {
        let r = self.ops.op(k).arity;
        crate::freeops::perm::all_permutations(r)
            .into_iter()
            .flat_map(|perm| [1i8, -1].map(|sign| SignedArrangement { perm: perm.clone(), sign }))
            .filter(|a| self.violation_of(k, std::slice::from_ref(a)).is_none())
            .collect()
    }

    /// [`detect_symmetries`](Self::detect_symmetries) for the unique
    /// ternary operation.
    pub fn detect_ternary_symmetry(&self) -> Result<Vec<SignedArrangement>, AlgebraError> {
        let k = self.ops.unique_of_arity(3).ok_or_else(|| AlgebraError::Unsupported("no unique ternary operation".into()))?;
        Ok(self.detect_symmetries(k))
    }

    /// Converts every structure constant with `f`.
    pub fn map_field<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, FieldError> + Sync + Send,
    ) -> Result<StructureConstantAlgebra<G>, AlgebraError> {
        let map_rows = |rows: &[SparseRow<F::Elem>]| -> Result<Vec<SparseRow<G::Elem>>, FieldError> {
            rows.iter()
                .map(|row| {
                    let mut out = Vec::with_capacity(row.len());
                    for (i, c) in row {
                        let v = f(c)?;
                        if !target.is_zero(&v) {
                            out.push((*i, v));
                        }
                    }
                    Ok(out)
                })
                .collect()
        };
        let tables = self.tables.iter().map(|t| map_rows(t)).collect::<Result<_, _>>()?;
        let factors = self
            .factors
            .iter()
            .map(|f| -> Result<_, FieldError> {
                f.as_ref()
                    .map(|f| Ok(Factorization { rank: f.rank, left: map_rows(&f.left)?, right: map_rows(&f.right)? }))
                    .transpose()
            })
            .collect::<Result<_, _>>()?;
        Ok(StructureConstantAlgebra {
            name: self.name.clone(),
            n: self.n,
            dim: self.dim,
            field: target,
            ops: self.ops.clone(),
            tables,
            factors,
        })
    }

    /// Same tables, reinterpreted over another operation set with identical
    /// signatures (for example a preset rebuilt from JSON).
    pub fn with_ops(mut self, ops: Arc<OpSet>) -> Result<Self, AlgebraError> {
        if *ops != *self.ops {
            return Err(AlgebraError::Free(crate::freeops::FreeError::OpsMismatch));
        }
        self.ops = ops;
        Ok(self)
    }

    fn table_key(&self, k: usize) -> String {
        let op = self.ops.op(k);
        match (self.ops.unique_of_arity(op.arity) == Some(k), op.arity) {
            (true, 2) => "binary".into(),
            (true, 3) => "ternary".into(),
            _ => op.name.clone(),
        }
    }

    /// `{name, n, dim, field, signatures, binary: [[i, j, [coeffs]], ..],
    /// ternary: [[i, j, k, [coeffs]], ..]}` with canonical tuples only.
    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("name".into(), json!(self.name));
        obj.insert("n".into(), json!(self.n));
        obj.insert("dim".into(), json!(self.dim));
        obj.insert("field".into(), json!(self.field.descriptor().to_string()));
        obj.insert("signatures".into(), self.ops.to_json());
        for k in 0..self.tables.len() {
            let r = self.ops.op(k).arity;
            let group = self.ops.group(k);
            let mut entries = Vec::new();
            for (idx, row) in self.tables[k].iter().enumerate() {
                let t = index_tuple(idx, self.dim, r);
                if row.is_empty() || !is_canonical(&t, group) {
                    continue;
                }
                let mut dense = vec![Value::from(0); self.dim];
                for (o, c) in row {
                    dense[*o as usize] = self.field.elem_to_json(c);
                }
                let mut e: Vec<Value> = t.iter().map(|&x| json!(x)).collect();
                e.push(Value::Array(dense));
                entries.push(Value::Array(e));
            }
            obj.insert(self.table_key(k), Value::Array(entries));
        }
        Value::Object(obj)
    }

    /// Reads the JSON form; `field` must match the recorded field.
    pub fn from_json(field: F, v: &Value) -> Result<Self, AlgebraError> {
        let bad = |m: &str| AlgebraError::Json(m.to_string());
        let recorded: FieldDescriptor =
            v.get("field").and_then(Value::as_str).ok_or_else(|| bad("missing field"))?.parse()?;
        let ours = field.descriptor();
        let roots_clash = matches!(
            (recorded, ours),
            (FieldDescriptor::Prime { sqrt2: Some(a), .. }, FieldDescriptor::Prime { sqrt2: Some(b), .. }) if a != b
        );
        if recorded.short() != ours.short() || roots_clash {
            return Err(FieldError::Mismatch { expected: ours.to_string(), found: recorded.to_string() }.into());
        }
        let ops = OpSet::from_json(v.get("signatures").ok_or_else(|| bad("missing signatures"))?)?;
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing dim"))? as usize;
        let name = v.get("name").and_then(Value::as_str).unwrap_or("algebra").to_string();
        let n = v.get("n").and_then(Value::as_u64).map(|x| x as usize);
        let mut alg = Self::zero(&name, field, ops, dim)?;
        alg.n = n;
        for k in 0..alg.tables.len() {
            let r = alg.ops.op(k).arity;
            let key = alg.table_key(k);
            let Some(entries) = v.get(&key) else { continue };
            let entries = entries.as_array().ok_or_else(|| bad("table is not a list"))?;
            for e in entries {
                let e = e.as_array().filter(|e| e.len() == r + 1).ok_or_else(|| bad("malformed table entry"))?;
                let t: Vec<usize> = e[..r]
                    .iter()
                    .map(|x| x.as_u64().map(|x| x as usize).filter(|&x| x < dim))
                    .collect::<Option<_>>()
                    .ok_or_else(|| bad("index out of range"))?;
                let coeffs = e[r].as_array().filter(|c| c.len() == dim).ok_or_else(|| bad("coefficient vector length"))?;
                let dense = coeffs.iter().map(|c| alg.field.elem_from_json(c)).collect::<Result<Vec<_>, _>>()?;
                let group = alg.ops.group(k).to_vec();
                let row = sparse(&alg.field, dense);
                Self::spread(&alg.field, &mut alg.tables[k], dim, &group, &t, row);
            }
            if let Some(t) = alg.symmetry_violation(k) {
                return Err(AlgebraError::BadModel(format!("table {key} breaks its symmetry at {t:?}")));
            }
        }
        Ok(alg)
    }
}

/// `a + b√2` modulo `p` under the field's chosen root.
pub fn reduce_qsqrt2(x: &QSqrt2, pf: &PrimeField) -> Result<u32, FieldError> {
    let a = pf.from_rational(&x.a)?;
    if x.b.is_zero() {
        return Ok(a);
    }
    let b = pf.from_rational(&x.b)?;
    Ok(pf.add(&a, &pf.mul(&b, &pf.sqrt2()?)))
}

impl StructureConstantAlgebra<QuadSqrt2> {
    /// Reduction modulo `p` under `√2 ↦` the field's chosen root.
    pub fn reduce_mod(&self, pf: &PrimeField) -> Result<StructureConstantAlgebra<PrimeField>, AlgebraError> {
        pf.sqrt2()?;
        self.map_field(*pf, |x| reduce_qsqrt2(x, pf))
    }
}

/// An algebra over either supported field, as read from a file.
#[derive(Debug, Clone)]
pub enum AnyAlgebra {
    Prime(StructureConstantAlgebra<PrimeField>),
    Exact(StructureConstantAlgebra<QuadSqrt2>),
}

impl AnyAlgebra {
    pub fn from_json(v: &Value) -> Result<Self, AlgebraError> {
        let d: FieldDescriptor = v
            .get("field")
            .and_then(Value::as_str)
            .ok_or_else(|| AlgebraError::Json("missing field".into()))?
            .parse()?;
        match d {
            FieldDescriptor::QSqrt2 => Ok(AnyAlgebra::Exact(StructureConstantAlgebra::from_json(QuadSqrt2, v)?)),
            FieldDescriptor::Prime { .. } => Ok(AnyAlgebra::Prime(StructureConstantAlgebra::from_json(d.prime_field()?, v)?)),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyAlgebra::Prime(a) => a.to_json(),
            AnyAlgebra::Exact(a) => a.to_json(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            AnyAlgebra::Prime(a) => a.name(),
            AnyAlgebra::Exact(a) => a.name(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Prime(a) => a.dim(),
            AnyAlgebra::Exact(a) => a.dim(),
        }
    }

    pub fn ops(&self) -> &Arc<OpSet> {
        match self {
            AnyAlgebra::Prime(a) => a.ops(),
            AnyAlgebra::Exact(a) => a.ops(),
        }
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        match self {
            AnyAlgebra::Prime(a) => a.field().descriptor(),
            AnyAlgebra::Exact(a) => a.field().descriptor(),
        }
    }
}
