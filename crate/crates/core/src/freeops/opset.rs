use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::Value;

use super::basis::MonomialBasis;
use super::signature::{OperationSignature, SignedArrangement};
use super::types::{AssociationType, TypeRegistry};
use super::{FreeError, MAX_DEGREE};

/// Which operations a search may use, as a bit mask over operation indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpSelection {
    Binary,
    Ternary,
    Mixed,
}

impl OpSelection {
    pub fn mask(self, ops: &OpSet) -> u32 {
        ops.ops
            .iter()
            .enumerate()
            .filter(|(_, o)| match self {
                OpSelection::Binary => o.arity == 2,
                OpSelection::Ternary => o.arity == 3,
                OpSelection::Mixed => true,
            })
            .fold(0, |m, (k, _)| m | (1 << k))
    }

    pub fn name(self) -> &'static str {
        match self {
            OpSelection::Binary => "binary",
            OpSelection::Ternary => "ternary",
            OpSelection::Mixed => "mixed",
        }
    }
}

impl fmt::Display for OpSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for OpSelection {
    type Err = FreeError;
    fn from_str(s: &str) -> Result<Self, FreeError> {
        match s {
            "binary" => Ok(OpSelection::Binary),
            "ternary" => Ok(OpSelection::Ternary),
            "mixed" => Ok(OpSelection::Mixed),
            _ => Err(FreeError::Signature(format!("unknown operation selection {s:?}"))),
        }
    }
}

/// A family of operations together with its association types and cached
/// monomial bases. Shared behind `Arc`; polynomials keep a handle to it.
pub struct OpSet {
    name: String,
    ops: Vec<OperationSignature>,
    groups: Vec<Vec<SignedArrangement>>,
    types: TypeRegistry,
    bases: Mutex<HashMap<(usize, u32), Arc<MonomialBasis>>>,
}

impl fmt::Debug for OpSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpSet").field("name", &self.name).field("ops", &self.ops).finish()
    }
}

impl PartialEq for OpSet {
    fn eq(&self, other: &Self) -> bool {
        self.ops == other.ops
    }
}

fn bracket() -> OperationSignature {
    OperationSignature::new("bracket", 2, &[(1, 2, -1)], "[]")
}

impl OpSet {
    pub fn new(name: &str, ops: Vec<OperationSignature>) -> Result<Self, FreeError> {
        Self::with_max_degree(name, ops, MAX_DEGREE)
    }

    pub fn with_max_degree(name: &str, ops: Vec<OperationSignature>, max_degree: usize) -> Result<Self, FreeError> {
        if ops.is_empty() || ops.len() > 16 {
            return Err(FreeError::Signature("between 1 and 16 operations are supported".into()));
        }
        if max_degree > MAX_DEGREE {
            return Err(FreeError::DegreeTooLarge(max_degree));
        }
        let mut groups = Vec::with_capacity(ops.len());
        for op in &ops {
            op.validate()?;
            groups.push(op.group()?);
        }
        let types = TypeRegistry::build(&ops, &groups, max_degree);
        Ok(OpSet { name: name.to_string(), ops, groups, types, bases: Mutex::new(HashMap::new()) })
    }

    /// Skew bracket `[x,y]` and ternary `(x,y,z)` skew in its first two slots.
    pub fn ly() -> Arc<OpSet> {
        static LY: OnceLock<Arc<OpSet>> = OnceLock::new();
        LY.get_or_init(|| {
            let t = OperationSignature::new("triple", 3, &[(1, 2, -1)], "()");
            Arc::new(OpSet::new("ly", vec![bracket(), t]).expect("valid signature"))
        })
        .clone()
    }

    /// Skew bracket and ternary `{x,y,z}` symmetric in its outer slots.
    pub fn ljy() -> Arc<OpSet> {
        static LJY: OnceLock<Arc<OpSet>> = OnceLock::new();
        LJY.get_or_init(|| {
            let t = OperationSignature::new("jordan", 3, &[(1, 3, 1)], "{}");
            Arc::new(OpSet::new("ljy", vec![bracket(), t]).expect("valid signature"))
        })
        .clone()
    }

    /// Skew bracket and a totally symmetric ternary operation.
    pub fn ljy_full() -> Arc<OpSet> {
        static FULL: OnceLock<Arc<OpSet>> = OnceLock::new();
        FULL.get_or_init(|| {
            let t = OperationSignature::new("jordan", 3, &[(1, 2, 1), (2, 3, 1)], "{}");
            Arc::new(OpSet::new("ljy-full", vec![bracket(), t]).expect("valid signature"))
        })
        .clone()
    }

    pub fn preset(name: &str) -> Result<Arc<OpSet>, FreeError> {
        match name {
            "ly" => Ok(Self::ly()),
            "ljy" => Ok(Self::ljy()),
            "ljy-full" => Ok(Self::ljy_full()),
            _ => Err(FreeError::Signature(format!("unknown operation set {name:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ops(&self) -> &[OperationSignature] {
        &self.ops
    }

    pub fn op(&self, k: usize) -> &OperationSignature {
        &self.ops[k]
    }

    pub fn group(&self, k: usize) -> &[SignedArrangement] {
        &self.groups[k]
    }

    pub fn types(&self) -> &TypeRegistry {
        &self.types
    }

    pub fn max_degree(&self) -> usize {
        self.types.max_degree()
    }

    /// The unique operation of the given arity, if there is exactly one.
    pub fn unique_of_arity(&self, arity: usize) -> Option<usize> {
        let mut it = self.ops.iter().enumerate().filter(|(_, o)| o.arity == arity).map(|(k, _)| k);
        let first = it.next()?;
        it.next().is_none().then_some(first)
    }

    /// Types of degree `d` whose operations all lie in `mask`.
    pub fn types_in(&self, d: usize, mask: u32) -> Vec<&AssociationType> {
        self.types.of_degree(d).iter().filter(|t| t.ops_mask & !mask == 0).collect()
    }

    /// Brackets used in preorder shape strings: `[` `]` for the binary and
    /// `(` `)` for the ternary operation when each arity occurs once.
    pub fn shape_delims(&self, k: usize) -> (char, char) {
        let op = &self.ops[k];
        if self.unique_of_arity(op.arity) == Some(k) {
            match op.arity {
                2 => return ('[', ']'),
                3 => return ('(', ')'),
                _ => {}
            }
        }
        (op.open(), op.close())
    }

    pub fn shape(&self, ty: u32) -> String {
        self.types.shape_with(ty, &|k| self.shape_delims(k))
    }

    /// Monomial basis of degree `d` restricted to the selected operations.
    pub fn basis(&self, d: usize, sel: OpSelection) -> Result<Arc<MonomialBasis>, FreeError> {
        self.basis_masked(d, sel.mask(self))
    }

    pub fn basis_masked(&self, d: usize, mask: u32) -> Result<Arc<MonomialBasis>, FreeError> {
        if d == 0 || d > self.max_degree() {
            return Err(FreeError::DegreeTooLarge(d));
        }
        if let Some(b) = self.bases.lock().expect("basis cache").get(&(d, mask)) {
            return Ok(b.clone());
        }
        // built outside the lock; a racing duplicate is identical and harmless
        let b = Arc::new(MonomialBasis::build(self, d, mask));
        Ok(self.bases.lock().expect("basis cache").entry((d, mask)).or_insert(b).clone())
    }

    /// JSON form: a preset name or the full signature list.
    pub fn to_json(&self) -> Value {
        match self.name.as_str() {
            "ly" | "ljy" | "ljy-full" if Self::preset(&self.name).map(|p| *p == *self).unwrap_or(false) => {
                Value::from(self.name.clone())
            }
            _ => serde_json::to_value(&self.ops).expect("signatures serialize"),
        }
    }

    pub fn from_json(v: &Value) -> Result<Arc<OpSet>, FreeError> {
        match v {
            Value::String(s) => Self::preset(s),
            Value::Array(_) => {
                let ops: Vec<OperationSignature> =
                    serde_json::from_value(v.clone()).map_err(|e| FreeError::Signature(e.to_string()))?;
                Ok(Arc::new(OpSet::new("custom", ops)?))
            }
            _ => Err(FreeError::Signature(format!("bad operation set {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(ops: &OpSet, mask: u32, degrees: impl Iterator<Item = usize>) -> Vec<usize> {
        degrees.map(|d| ops.types_in(d, mask).len()).collect()
    }

    #[test]
    fn type_counts() {
        let ly = OpSet::ly();
        let bin = OpSelection::Binary.mask(&ly);
        let ter = OpSelection::Ternary.mask(&ly);
        let all = OpSelection::Mixed.mask(&ly);
        let big = OpSet::with_max_degree("ly", ly.ops().to_vec(), 7).unwrap();
        assert_eq!(counts(&big, bin, 1..=7), vec![1, 1, 1, 2, 3, 6, 11]);
        assert_eq!(counts(&big, ter, [1, 3, 5, 7].into_iter()), vec![1, 1, 2, 6]);
        assert_eq!(counts(&big, all, 1..=7), vec![1, 1, 2, 5, 13, 38, 113]);
        let ljy = OpSet::ljy();
        assert_eq!(counts(&ljy, all, 1..=6), vec![1, 1, 2, 5, 13, 38]);
    }

    #[test]
    fn shapes() {
        let ly = OpSet::ly();
        let shapes: Vec<String> = ly.types().ids_of_degree(4).map(|t| ly.shape(t)).collect();
        assert_eq!(shapes, ["[[[--]-]-]", "[(---)-]", "[[--][--]]", "([--]--)", "(--[--])"]);
        let ljy = OpSet::ljy();
        let shapes: Vec<String> = ljy.types().ids_of_degree(4).map(|t| ljy.shape(t)).collect();
        assert_eq!(shapes, ["[[[--]-]-]", "[(---)-]", "[[--][--]]", "([--]--)", "(-[--]-)"]);
    }

    #[test]
    fn json_round_trip() {
        assert_eq!(OpSet::ly().to_json(), Value::from("ly"));
        let custom = OpSet::new("custom", vec![bracket()]).unwrap();
        let back = OpSet::from_json(&custom.to_json()).unwrap();
        assert_eq!(*back, custom);
        assert!(OpSet::from_json(&Value::from("nope")).is_err());
    }
}
