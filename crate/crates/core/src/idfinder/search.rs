//! The full degree-`d` search and its report.

use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use super::fill::fill_and_reduce;
use super::module::lifted_module;
use super::reconstruct::{integer_poly, reconstruct_sparse, squared_length};
use super::{IdError, SearchConfig};
use crate::algebras::{verify_axioms, AxiomResult, StructureConstantAlgebra, VerifyMode};
use crate::exactfield::{PrimeField, QuadSqrt2, SparseVec};
use crate::freeops::{catalog_identity_in, IntPoly, OpSelection, OpSet};

/// A named identity assumed to hold.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownIdentity {
    pub name: String,
    pub poly: IntPoly,
}

impl KnownIdentity {
    pub fn catalog(name: &str, ops: &std::sync::Arc<OpSet>) -> Result<Self, IdError> {
        Ok(KnownIdentity { name: name.to_string(), poly: catalog_identity_in(name, ops)? })
    }
}

/// Catalog identities used as prior knowledge for a degree-`d` search:
/// those of lower degree, plus the binary Malcev-algebra identities at
/// their own degree since they are not about the ternary operation.
/// Only identities that vanish on `alg` (10 random trials) are kept.
pub fn default_known(alg: &StructureConstantAlgebra<PrimeField>, d: usize, seed: u64) -> Result<Vec<KnownIdentity>, IdError> {
    let ops = alg.ops();
    let (names, own_degree): (&[&str], &[&str]) = if **ops == *OpSet::ly() {
        (&["LY3", "LY4", "LY5", "LY6"], &[])
    } else if **ops == *OpSet::ljy() {
        (
            &["Malcev", "FilippovH", "LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3", "LJY3-deg6-1", "LJY3-deg6-2", "LJY3-deg6-3"],
            &["Malcev", "FilippovH"],
        )
    } else {
        (&[], &[])
    };
    let mut out = Vec::new();
    for &n in names {
        let k = KnownIdentity::catalog(n, ops)?;
        let deg = k.poly.degree();
        if deg < d || (deg == d && own_degree.contains(&n)) {
            let r = verify_axioms(alg, &[(k.name.clone(), k.poly.clone())], VerifyMode::Random { trials: 10, seed }, true)?;
            if r[0].holds {
                out.push(k);
            }
        }
    }
    Ok(out)
}

/// Evaluates `f` on `trials` random elements with integer coordinates in
/// `[-99, 99]`; holds iff every value is exactly zero.
pub fn verify_char0(
    f: &IntPoly,
    alg: &StructureConstantAlgebra<QuadSqrt2>,
    trials: usize,
    seed: u64,
) -> Result<AxiomResult, IdError> {
    let r = verify_axioms(alg, &[("candidate".to_string(), f.clone())], VerifyMode::Random { trials, seed }, true)?;
    Ok(r.into_iter().next().expect("one identity"))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub fill_ms: u128,
    pub lifted_ms: u128,
    pub generators_ms: u128,
    pub char0_ms: u128,
    pub total_ms: u128,
}

/// A nullspace vector that enlarged the module.
#[derive(Debug, Clone, PartialEq)]
pub struct NewGenerator {
    /// Row of the canonical nullspace basis.
    pub nullspace_row: usize,
    pub terms: usize,
    pub residues: SparseVec,
    /// Integer form, when every coefficient reconstructs.
    pub poly: Option<IntPoly>,
    pub squared_length: Option<BigInt>,
    pub reconstruction_error: Option<String>,
    /// Module dimension once this generator is added.
    pub module_dim: usize,
    pub char0: Option<AxiomResult>,
}

impl NewGenerator {
    fn to_json(&self) -> Value {
        json!({
            "nullspace_row": self.nullspace_row,
            "terms": self.terms,
            "squared_length": self.squared_length.as_ref().map(|x| x.to_string()),
            "coefficients": self.poly.as_ref().map(|p| p.to_json()),
            "coefficient_set": self.poly.as_ref().map(|p| p.coefficient_set().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "reconstruction_error": self.reconstruction_error,
            "module_dim": self.module_dim,
            "char0": self.char0,
        })
    }
}

/// Above this many stored residues the JSON omits the nullspace basis.
pub const NULLSPACE_JSON_LIMIT: usize = 2_000_000;

#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub algebra: String,
    pub degree: usize,
    pub ops: OpSelection,
    pub config: SearchConfig,
    pub monomials: usize,
    pub rank: usize,
    pub reached_at: usize,
    pub iterations: usize,
    pub rank_history: Vec<usize>,
    pub nullspace_dim: usize,
    /// Canonical nullspace basis, columns of the mixed monomial basis.
    pub nullspace_basis: Vec<SparseVec>,
    pub known: Vec<String>,
    /// Liftings of the lower-degree known identities.
    pub liftings: usize,
    pub lifted_dim: usize,
    pub lifted_generators: usize,
    /// After adding the known identities of degree `d` itself.
    pub known_dim: usize,
    /// After adding caller-supplied degree-`d` vectors, if any.
    pub extra_dim: Option<usize>,
    pub new_generators: Vec<NewGenerator>,
    pub final_dim: usize,
    /// Nullspace rows whose coefficients did not all reconstruct.
    pub unreconstructed: usize,
    /// Known identities in degree `d` do not exceed the nullspace.
    pub consistent: bool,
    pub timings: Timings,
}

impl IdentityReport {
    pub fn reconstruction_failed(&self) -> bool {
        self.new_generators.iter().any(|g| g.poly.is_none())
    }

    pub fn char0_failed(&self) -> bool {
        self.new_generators.iter().any(|g| g.char0.as_ref().is_some_and(|r| !r.holds))
    }

    pub fn to_json(&self) -> Value {
        let stored: usize = self.nullspace_basis.iter().map(Vec::len).sum();
        let basis = (stored <= NULLSPACE_JSON_LIMIT).then(|| {
            self.nullspace_basis.iter().map(|v| v.iter().map(|&(c, x)| json!([c, x])).collect::<Vec<_>>()).collect::<Vec<_>>()
        });
        json!({
            "algebra": self.algebra,
            "degree": self.degree,
            "ops": self.ops.name(),
            "config": self.config,
            "primes": [self.config.prime],
            "seeds": [self.config.seed],
            "monomials": self.monomials,
            "rank": self.rank,
            "reached_at": self.reached_at,
            "iterations": self.iterations,
            "rank_history": self.rank_history,
            "nullspace_dim": self.nullspace_dim,
            "nullspace_basis": basis,
            "nullspace_basis_omitted": basis_omitted(stored),
            "known": self.known,
            "liftings": self.liftings,
            "lifted_dim": self.lifted_dim,
            "lifted_generators": self.lifted_generators,
            "known_dim": self.known_dim,
            "extra_dim": self.extra_dim,
            "new_generators": self.new_generators.iter().map(NewGenerator::to_json).collect::<Vec<_>>(),
            "final_dim": self.final_dim,
            "unreconstructed": self.unreconstructed,
            "consistent": self.consistent,
            "timings": self.timings,
        })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{} degree {} {}: {} monomials\nrank reaches {} after {} iterations; nullspace dimension {}; {} new generators\n",
            self.algebra,
            self.degree,
            self.ops,
            self.monomials,
            self.rank,
            self.reached_at,
            self.nullspace_dim,
            self.new_generators.len()
        );
        s += &format!(
            "lifted module dimension {} from {} liftings ({} generators); with known identities of degree {}: {}\n",
            self.lifted_dim, self.liftings, self.lifted_generators, self.degree, self.known_dim
        );
        if let Some(e) = self.extra_dim {
            s += &format!("with the supplied degree-{} identities: {e}\n", self.degree);
        }
        for (i, g) in self.new_generators.iter().enumerate() {
            let len = g.squared_length.as_ref().map_or("?".to_string(), |x| x.to_string());
            s += &format!("  generator {}: {} terms, squared length {}, module dimension {}", i + 1, g.terms, len, g.module_dim);
            if let Some(e) = &g.reconstruction_error {
                s += &format!(", {e}");
            }
            if let Some(c) = &g.char0 {
                s += if c.holds { ", vanishes in characteristic 0" } else { ", FAILS in characteristic 0" };
            }
            s.push('\n');
        }
        s += &format!("final module dimension {}\n", self.final_dim);
        if !self.consistent {
            s += "warning: the known identities span more than the nullspace\n";
        }
        s
    }
}

fn basis_omitted(stored: usize) -> bool {
    stored > NULLSPACE_JSON_LIMIT
}

/// Fill-and-reduce, the module of known consequences, then the nullspace
/// rows that enlarge it, scanned by increasing squared length of their
/// integer form (rows that do not reconstruct last, ties by row order).
pub fn new_identities(
    alg: &StructureConstantAlgebra<PrimeField>,
    exact: Option<&StructureConstantAlgebra<QuadSqrt2>>,
    known: &[KnownIdentity],
    cfg: &SearchConfig,
) -> Result<IdentityReport, IdError> {
    new_identities_with(alg, exact, known, None, cfg)
}

/// [`new_identities`] with further degree-`d` identities, given as residue
/// vectors over the mixed monomial basis, added to the module before the
/// scan.
pub fn new_identities_with(
    alg: &StructureConstantAlgebra<PrimeField>,
    exact: Option<&StructureConstantAlgebra<QuadSqrt2>>,
    known: &[KnownIdentity],
    extra: Option<&[SparseVec]>,
    cfg: &SearchConfig,
) -> Result<IdentityReport, IdError> {
    let start = Instant::now();
    let d = cfg.degree;
    let f = cfg.field()?;
    let ops = alg.ops();
    let fill = fill_and_reduce(alg, cfg)?;

    let t = Instant::now();
    let lower: Vec<IntPoly> = known.iter().filter(|k| k.poly.degree() < d).map(|k| k.poly.clone()).collect();
    let lifted = lifted_module(&lower, d, ops, f, cfg.orbit, cfg.parallel)?;
    let lifted_dim = lifted.dim();
    let lifted_generators = lifted.generators.len();
    let liftings = lifted.liftings;
    let mut module = lifted.module;
    for k in known.iter().filter(|k| k.poly.degree() == d) {
        let v = module.sparse(&k.poly)?;
        module.absorb(&v);
    }
    let known_dim = module.dim();
    let extra_dim = extra.map(|vs| {
        vs.iter().for_each(|v| {
            module.absorb(v);
        });
        module.dim()
    });
    let lifted_ms = t.elapsed().as_millis();

    let t = Instant::now();
    let full = module.basis().clone();
    let embed = fill.basis.embedding_into(&full).expect("restricted basis embeds in the mixed one");
    let p = f.modulus();
    let rows: Vec<SparseVec> = fill
        .nullspace
        .iter()
        .map(|v| v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (embed[c] as u32, x)).collect())
        .collect();
    let recon: Vec<Result<Vec<(u32, BigInt)>, IdError>> = crate::par::map(&rows, cfg.parallel, |v| reconstruct_sparse(v, p));
    let unreconstructed = recon.iter().filter(|r| r.is_err()).count();
    let mut order: Vec<usize> = (0..rows.len()).collect();
    let key = |i: usize| match &recon[i] {
        Ok(c) => (false, squared_length(c)),
        Err(_) => (true, BigInt::from(0)),
    };
    let keys: Vec<(bool, BigInt)> = order.iter().map(|&i| key(i)).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    let candidates: Vec<SparseVec> = order.iter().map(|&i| rows[i].clone()).collect();
    let stop_at = (cfg.ops == OpSelection::Mixed).then_some(fill.nullspace.len());
    let found = module.scan(&candidates, stop_at);
    let generators_ms = t.elapsed().as_millis();

    let t = Instant::now();
    let mut new_generators = Vec::with_capacity(found.len());
    for (ci, dim) in found {
        let row = order[ci];
        let (poly, squared, err) = match &recon[row] {
            Ok(c) => (Some(integer_poly(c, &full, ops)), Some(squared_length(c)), None),
            Err(e) => (None, None, Some(e.to_string())),
        };
        let char0 = match (&poly, exact) {
            (Some(poly), Some(ex)) => Some(verify_char0(poly, ex, 10, cfg.seed)?),
            _ => None,
        };
        new_generators.push(NewGenerator {
            nullspace_row: row,
            terms: rows[row].len(),
            residues: rows[row].clone(),
            poly,
            squared_length: squared,
            reconstruction_error: err,
            module_dim: dim,
            char0,
        });
    }
    let char0_ms = t.elapsed().as_millis();
    let consistent = cfg.ops != OpSelection::Mixed || extra_dim.unwrap_or(known_dim) <= fill.nullspace.len();
    Ok(IdentityReport {
        algebra: alg.name().to_string(),
        degree: d,
        ops: cfg.ops,
        config: cfg.clone(),
        monomials: fill.q(),
        rank: fill.rank,
        reached_at: fill.reached_at,
        iterations: fill.iterations,
        rank_history: fill.rank_history,
        nullspace_dim: fill.nullspace.len(),
        nullspace_basis: rows,
        known: known.iter().map(|k| k.name.clone()).collect(),
        liftings,
        lifted_dim,
        lifted_generators,
        known_dim,
        extra_dim,
        final_dim: module.dim(),
        new_generators,
        unreconstructed,
        consistent,
        timings: Timings { fill_ms: fill.millis, lifted_ms, generators_ms, char0_ms, total_ms: start.elapsed().as_millis() },
    })
}
