//! Scripted reproduction of the reference numbers: each check records the
//! expected value, the computed value and whether they agree.
//!
//! Checks are grouped by acceptance criterion. Informational checks are
//! reported but never decide a criterion.

use std::sync::Arc;
use std::time::Instant;

use anyhow::{Context, Result};
use idforge::algebras::{
    build_ljy, build_ly, build_ly3_transvection, build_ly4_tensor, verify_axioms, MatrixModel, StructureConstantAlgebra,
    VerifyMode,
};
use idforge::exactfield::{PrimeField, QuadSqrt2, SparseVec};
use idforge::freeops::{catalog_identity_in, IntPoly, OpSelection, OpSet};
use idforge::idfinder::{
    default_known, lifted_module, new_identities, new_identities_with, same_module_over, translated_ly_identities,
    verify_char0, IdentityReport, KnownIdentity, SearchConfig, SymmetricModule,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::properties;

/// The default small prime and its chosen square root of 2.
pub const P_SMALL: (u32, u32) = (103, 38);
/// The larger prime used where coefficients outgrow GF(103).
pub const P_LARGE: (u32, u32) = (100049, 10948);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub what: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub informational: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Include the slower optional runs: LJY4 in degree 6, LJY3 in degree 6
    /// at p = 103 and the degree-6 rewriting diagnostic.
    pub extended: bool,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { extended: false, seed: 1, parallel: true }
    }
}

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Dimensions, axiom suites and the Lie-Yamaguti searches.
    Ly4,
    /// The Lie-Jordan-Yamaguti searches.
    Ljy,
    /// The property spot checks.
    Properties,
    All,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ly4" => Ok(Suite::Ly4),
            "ljy" => Ok(Suite::Ljy),
            "properties" => Ok(Suite::Properties),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite {s:?}; expected ly4, ljy, properties or all")),
        }
    }
}

/// Collected checks plus the full search reports behind them.
#[derive(Debug, Default)]
pub struct Reproduction {
    pub checks: Vec<Check>,
    pub reports: Vec<(String, Value)>,
    pub millis: Vec<(u8, u128)>,
}

impl Reproduction {
    fn check(&mut self, criterion: u8, what: &str, expected: impl ToString, computed: impl ToString, pass: bool) {
        self.checks.push(Check {
            criterion,
            what: what.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            informational: false,
        });
    }

    fn equal<T: PartialEq + ToString>(&mut self, criterion: u8, what: &str, expected: T, computed: T) {
        let pass = expected == computed;
        self.check(criterion, what, expected, computed, pass);
    }

    fn info(&mut self, criterion: u8, what: &str, expected: impl ToString, computed: impl ToString) {
        self.checks.push(Check {
            criterion,
            what: what.to_string(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass: true,
            informational: true,
        });
    }

    fn keep(&mut self, name: &str, r: &IdentityReport) {
        self.reports.push((name.to_string(), r.to_json()));
    }

    /// Criteria that have at least one check, in order.
    pub fn criteria(&self) -> Vec<u8> {
        let mut c: Vec<u8> = self.checks.iter().map(|c| c.criterion).collect();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// A criterion passes when all of its non-informational checks pass.
    pub fn passed(&self, criterion: u8) -> bool {
        self.checks.iter().filter(|c| c.criterion == criterion && !c.informational).all(|c| c.pass)
    }

    pub fn all_passed(&self) -> bool {
        self.criteria().iter().all(|&c| self.passed(c))
    }

    /// Aligned table of every check.
    pub fn table(&self) -> String {
        let w = |f: &dyn Fn(&Check) -> usize| self.checks.iter().map(f).max().unwrap_or(0);
        let (ww, we) = (w(&|c| c.what.len()), w(&|c| c.expected.len()).max(8));
        let mut s = format!("{:>2}  {:<ww$}  {:<we$}  {}\n", "#", "check", "expected", "computed");
        for c in &self.checks {
            let mark = if c.informational {
                "info"
            } else if c.pass {
                "ok"
            } else {
                "MISMATCH"
            };
            s += &format!("{:>2}  {:<ww$}  {:<we$}  {}  [{mark}]\n", c.criterion, c.what, c.expected, c.computed);
        }
        s
    }

    /// One `PASS`/`FAIL` line per criterion.
    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in self.criteria() {
            let ms = self.millis.iter().filter(|m| m.0 == c).map(|m| m.1).sum::<u128>();
            let fails: Vec<&str> =
                self.checks.iter().filter(|k| k.criterion == c && !k.informational && !k.pass).map(|k| k.what.as_str()).collect();
            let verdict = if fails.is_empty() { "PASS" } else { "FAIL" };
            s += &format!("criterion {c:>2}: {verdict} ({ms} ms)");
            if !fails.is_empty() {
                s += &format!(" mismatched: {}", fails.join("; "));
            }
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "checks": self.checks,
            "criteria": self.criteria().iter().map(|&c| json!({"criterion": c, "pass": self.passed(c)})).collect::<Vec<_>>(),
            "millis": self.millis.iter().map(|(c, ms)| json!({"criterion": c, "ms": ms})).collect::<Vec<_>>(),
        })
    }
}

pub fn field(p: (u32, u32)) -> Result<PrimeField> {
    Ok(PrimeField::with_sqrt2(p.0, p.1)?)
}

fn cfg(d: usize, ops: OpSelection, p: (u32, u32), o: &Options) -> SearchConfig {
    let c = SearchConfig::new(d, ops).with_prime(p.0, p.1).with_seed(o.seed);
    if o.parallel {
        c
    } else {
        c.sequential()
    }
}

fn known(alg: &StructureConstantAlgebra<PrimeField>, d: usize, o: &Options) -> Result<Vec<KnownIdentity>> {
    Ok(default_known(alg, d, o.seed)?)
}

fn names(k: &[KnownIdentity]) -> String {
    k.iter().map(|k| k.name.as_str()).collect::<Vec<_>>().join(",")
}

fn catalog(name: &str, ops: &Arc<OpSet>) -> Result<IntPoly> {
    catalog_identity_in(name, ops).with_context(|| format!("catalog identity {name}"))
}

fn timed(r: &mut Reproduction, criterion: u8, f: impl FnOnce(&mut Reproduction) -> Result<()>) -> Result<()> {
    let t = Instant::now();
    let out = f(r);
    r.millis.push((criterion, t.elapsed().as_millis()));
    out
}

pub fn run(suite: Suite, o: &Options) -> Result<Reproduction> {
    let mut r = Reproduction::default();
    if matches!(suite, Suite::Ly4 | Suite::All) {
        timed(&mut r, 1, dimensions)?;
        timed(&mut r, 2, |r| axioms(r, o))?;
        timed(&mut r, 3, |r| ly4_degree3(r, o))?;
        timed(&mut r, 4, |r| ly4_degree4(r, o))?;
        timed(&mut r, 5, |r| ly4_degree5(r, o))?;
        timed(&mut r, 6, |r| ly4_degree6(r, o))?;
    }
    if matches!(suite, Suite::Ljy | Suite::All) {
        timed(&mut r, 7, |r| ljy3_degree5(r, o))?;
        timed(&mut r, 8, |r| ljy3_degree6(r, o))?;
        timed(&mut r, 9, |r| ljy4(r, o))?;
    }
    if matches!(suite, Suite::Properties | Suite::All) {
        timed(&mut r, 10, |r| {
            for (what, outcome) in properties::run_all(o.seed) {
                r.check(10, &what, "holds", outcome.as_deref().unwrap_or("holds"), outcome.is_none());
            }
            Ok(())
        })?;
    }
    Ok(r)
}

/// The reference dimensions of the complement `M`.
pub const DIM_M: [(usize, usize); 7] = [(3, 7), (4, 30), (5, 81), (6, 175), (7, 330), (8, 567), (9, 910)];

fn dimensions(r: &mut Reproduction) -> Result<()> {
    let t = Instant::now();
    for (n, want) in DIM_M {
        let got = MatrixModel::dim_m_only(n, QuadSqrt2)?;
        r.equal(1, &format!("dim M for n = {n}"), want, got);
    }
    let secs = t.elapsed().as_secs_f64();
    r.check(1, "dimension table time", "< 60 s", format!("{secs:.1} s"), secs < 60.0);
    Ok(())
}

fn axioms(r: &mut Reproduction, o: &Options) -> Result<()> {
    let ly = OpSet::ly();
    let ly_models: Vec<(&str, StructureConstantAlgebra<QuadSqrt2>)> = vec![
        ("LY4 matrix model", build_ly(4, QuadSqrt2)?),
        ("LY4 tensor model", build_ly4_tensor(QuadSqrt2)?),
        ("LY3 matrix model", build_ly(3, QuadSqrt2)?),
        ("LY3 transvection model", build_ly3_transvection(QuadSqrt2)?),
    ];
    let suite: Vec<(String, IntPoly)> =
        ["LY3", "LY4", "LY5", "LY6"].iter().map(|n| Ok((n.to_string(), catalog(n, &ly)?))).collect::<Result<_>>()?;
    for (label, alg) in &ly_models {
        let skew = alg.symmetry_violation(0).is_none() && alg.symmetry_violation(1).is_none();
        r.check(2, &format!("{label}: LY1, LY2 (operation symmetries)"), "hold", if skew { "hold" } else { "fail" }, skew);
        for (name, poly) in &suite {
            let mode = mode_for(poly.degree(), o);
            let res = verify_axioms(alg, &[(name.clone(), poly.clone())], mode, o.parallel)?;
            let holds = res[0].holds;
            r.check(2, &format!("{label}: {name}"), "holds", if holds { "holds" } else { "fails" }, holds);
        }
    }
    let ljy3 = build_ljy(3, QuadSqrt2)?;
    let lj = OpSet::ljy();
    for (name, want) in [("Malcev", true), ("FilippovH", true), ("LieJordan-linking", false)] {
        let poly = catalog(name, &lj)?;
        let res = verify_axioms(&ljy3, &[(name.to_string(), poly.clone())], mode_for(poly.degree(), o), o.parallel)?;
        let word = |b: bool| if b { "holds" } else { "fails" };
        let got = match (&res[0].witness, res[0].holds) {
            (Some(w), false) => format!("fails at {w:?}"),
            (_, h) => word(h).to_string(),
        };
        r.check(2, &format!("LJY3: {name}"), word(want), got, res[0].holds == want);
    }
    Ok(())
}

/// Exhaustive up to degree 3, otherwise 50 seeded random trials.
fn mode_for(d: usize, o: &Options) -> VerifyMode {
    if d <= 3 {
        VerifyMode::Exhaustive
    } else {
        VerifyMode::Random { trials: 50, seed: o.seed }
    }
}

struct Pair {
    exact: StructureConstantAlgebra<QuadSqrt2>,
    prime: StructureConstantAlgebra<PrimeField>,
}

fn pair(exact: StructureConstantAlgebra<QuadSqrt2>, p: (u32, u32)) -> Result<Pair> {
    let prime = exact.reduce_mod(&field(p)?)?;
    Ok(Pair { exact, prime })
}

fn search(a: &Pair, d: usize, ops: OpSelection, known: &[KnownIdentity], p: (u32, u32), o: &Options) -> Result<IdentityReport> {
    Ok(new_identities(&a.prime, Some(&a.exact), known, &cfg(d, ops, p, o))?)
}

fn module_dim_of(ops: &Arc<OpSet>, d: usize, f: PrimeField, polys: &[&IntPoly], o: &Options) -> Result<(SymmetricModule, usize)> {
    let mut m = SymmetricModule::new(ops, d, f, idforge::idfinder::OrbitStrategy::Auto, o.parallel)?;
    for p in polys {
        let v = m.sparse(p)?;
        m.absorb(&v);
    }
    let dim = m.dim();
    Ok((m, dim))
}

fn ly4_degree3(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ly(4, QuadSqrt2)?, P_SMALL)?;
    let k = known(&a.prime, 3, o)?;
    let rep = search(&a, 3, OpSelection::Mixed, &k, P_SMALL, o)?;
    r.equal(3, "degree 3 mixed monomials", 6, rep.monomials);
    r.equal(3, "degree 3 rank", 5, rep.rank);
    r.equal(3, "degree 3 nullspace dimension", 1, rep.nullspace_dim);
    let residues: Vec<u32> = rep.nullspace_basis.first().map(|v| v.iter().map(|x| x.1).collect()).unwrap_or_default();
    r.equal(3, "nullspace vector mod 103", "[1, 102, 1, 1, 102, 1]".to_string(), format!("{residues:?}"));
    let ops = a.prime.ops().clone();
    let basis = ops.basis(3, OpSelection::Mixed)?;
    let f = field(P_SMALL)?;
    let ly3 = catalog("LY3", &ops)?;
    let (coeffs, same) = match rep.new_generators.first().and_then(|g| g.poly.as_ref()) {
        Some(g) => {
            let dense: Vec<i64> = g.to_dense(&basis)?.iter().map(|x| i64::try_from(x).unwrap_or(i64::MAX)).collect();
            let (m, _) = module_dim_of(&ops, 3, f, &[g], o)?;
            let v = m.sparse(&ly3)?;
            let (m2, _) = module_dim_of(&ops, 3, f, &[&ly3], o)?;
            let w = m2.sparse(g)?;
            (format!("{dense:?}"), m.contains(&v) && m2.contains(&w))
        }
        None => ("none".to_string(), false),
    };
    let sign_ok = coeffs == "[1, -1, 1, 1, -1, 1]" || coeffs == "[-1, 1, -1, -1, 1, -1]";
    r.check(3, "reconstructed identity", "±[1, -1, 1, 1, -1, 1]", &coeffs, sign_ok);
    r.check(3, "identity generates the module of LY3", "same module", if same { "same module" } else { "different" }, same);
    r.keep("ly4-degree3-mixed", &rep);
    Ok(())
}

fn ly4_degree4(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ly(4, QuadSqrt2)?, P_SMALL)?;
    let k = known(&a.prime, 4, o)?;
    let bin = search(&a, 4, OpSelection::Binary, &k, P_SMALL, o)?;
    r.equal(4, "degree 4 binary rank", 15, bin.rank);
    r.equal(4, "degree 4 binary nullspace", 0, bin.nullspace_dim);
    let rep = search(&a, 4, OpSelection::Mixed, &k, P_SMALL, o)?;
    r.equal(4, "degree 4 mixed monomials", 45, rep.monomials);
    r.equal(4, "degree 4 mixed rank", 26, rep.rank);
    r.equal(4, "degree 4 nullspace dimension", 19, rep.nullspace_dim);
    r.equal(4, "degree 4 lifted module", 10, rep.lifted_dim);
    r.equal(4, "degree 4 new generators", 2, rep.new_generators.len());
    r.equal(4, "degree 4 final module", 19, rep.final_dim);
    let ops = a.prime.ops().clone();
    let f = field(P_SMALL)?;
    let lower: Vec<IntPoly> = k.iter().filter(|k| k.poly.degree() < 4).map(|k| k.poly.clone()).collect();
    let lifted = lifted_module(&lower, 4, &ops, f, idforge::idfinder::OrbitStrategy::Auto, o.parallel)?;
    let axioms: Vec<SparseVec> = ["LY4", "LY5"].iter().map(|n| Ok(lifted.module.sparse(&catalog(n, &ops)?)?)).collect::<Result<_>>()?;
    let found: Vec<SparseVec> = rep.new_generators.iter().map(|g| g.residues.clone()).collect();
    let mut with_axioms = lifted.module.clone();
    axioms.iter().for_each(|v| {
        with_axioms.absorb(v);
    });
    r.equal(4, "lifted module + LY4 + LY5", 19, with_axioms.dim());
    let same = same_module_over(&lifted.module, &axioms, &found);
    r.check(4, "new generators equivalent to LY4, LY5", "same module", if same { "same module" } else { "different" }, same);
    r.info(4, "new generator term counts", "-", format!("{:?}", rep.new_generators.iter().map(|g| g.terms).collect::<Vec<_>>()));
    r.keep("ly4-degree4-mixed", &rep);
    Ok(())
}

fn ly4_degree5(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ly(4, QuadSqrt2)?, P_SMALL)?;
    let ops = a.prime.ops().clone();
    let k = known(&a.prime, 5, o)?;
    let bin = search(&a, 5, OpSelection::Binary, &k, P_SMALL, o)?;
    r.equal(5, "degree 5 binary rank", 105, bin.rank);
    r.equal(5, "degree 5 binary nullspace", 0, bin.nullspace_dim);
    let ter = search(&a, 5, OpSelection::Ternary, &k, P_SMALL, o)?;
    r.equal(5, "degree 5 ternary monomials", 90, ter.monomials);
    r.equal(5, "degree 5 ternary rank", 60, ter.rank);
    r.equal(5, "degree 5 ternary nullspace", 30, ter.nullspace_dim);
    r.equal(5, "degree 5 lifted module", 280, ter.lifted_dim);
    r.info(5, "lifted module generators", 11, ter.lifted_generators);
    r.equal(5, "ternary nullspace generators over the lifted module", 1, ter.new_generators.len());
    r.equal(5, "lifted module + ternary identities", 296, ter.final_dim);
    let (_, with_ly6) = {
        let f = field(P_SMALL)?;
        let lower: Vec<IntPoly> = k.iter().map(|k| k.poly.clone()).collect();
        let mut m = lifted_module(&lower, 5, &ops, f, idforge::idfinder::OrbitStrategy::Auto, o.parallel)?.module;
        let v = m.sparse(&catalog("LY6", &ops)?)?;
        m.absorb(&v);
        let d = m.dim();
        (m, d)
    };
    r.equal(5, "lifted module + LY6", 296, with_ly6);
    let mut k6 = k.clone();
    k6.push(KnownIdentity::catalog("LY6", &ops)?);
    let mixed = search(&a, 5, OpSelection::Mixed, &k6, P_SMALL, o)?;
    r.equal(5, "degree 5 mixed monomials", 510, mixed.monomials);
    r.equal(5, "degree 5 mixed rank", 214, mixed.rank);
    r.equal(5, "degree 5 mixed nullspace", 296, mixed.nullspace_dim);
    r.equal(5, &format!("degree 5 new identities beyond {}", names(&k6)), 0, mixed.new_generators.len());
    r.keep("ly4-degree5-ternary", &ter);
    r.keep("ly4-degree5-mixed", &mixed);
    Ok(())
}

fn ly4_degree6(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ly(4, QuadSqrt2)?, P_SMALL)?;
    let k = known(&a.prime, 6, o)?;
    let rep = search(&a, 6, OpSelection::Mixed, &k, P_SMALL, o)?;
    r.equal(6, "degree 6 mixed monomials", 7245, rep.monomials);
    r.equal(6, "degree 6 lifted module", 5151, rep.lifted_dim);
    r.equal(6, "degree 6 rank", 2094, rep.rank);
    r.equal(6, "degree 6 new identities", 0, rep.new_generators.len());
    r.keep("ly4-degree6-mixed", &rep);
    Ok(())
}

/// Module dimension of the identities that are rewritten Lie-Yamaguti
/// identities of `LY_n`, together with the known ones.
fn translation_diagnostic(r: &mut Reproduction, criterion: u8, n: usize, a: &Pair, d: usize, k: &[KnownIdentity], p: (u32, u32), o: &Options) -> Result<IdentityReport> {
    let ly = build_ly(n, QuadSqrt2)?.reduce_mod(&field(p)?)?;
    let c = cfg(d, OpSelection::Mixed, p, o);
    let extra = translated_ly_identities(&ly, &c)?;
    let rep = new_identities_with(&a.prime, Some(&a.exact), k, Some(&extra), &c)?;
    r.info(
        criterion,
        &format!("LJY{n} degree {d}: module of known + rewritten LY{n} identities"),
        "-",
        format!("{} of nullspace {}", rep.extra_dim.unwrap_or(0), rep.nullspace_dim),
    );
    r.info(criterion, &format!("LJY{n} degree {d}: new generators beyond rewritten LY{n} identities"), "-", rep.new_generators.len());
    Ok(rep)
}

fn ljy3_degree5(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ljy(3, QuadSqrt2)?, P_LARGE)?;
    let ops = a.prime.ops().clone();
    let k: Vec<KnownIdentity> = known(&a.prime, 5, o)?;
    let rep = search(&a, 5, OpSelection::Mixed, &k, P_LARGE, o)?;
    r.info(7, "known identities", "-", names(&k));
    r.info(7, "degree 5 rank / nullspace", "-", format!("{} / {}", rep.rank, rep.nullspace_dim));
    r.info(7, "lifted module", "-", rep.lifted_dim);
    r.equal(7, "degree 5 new generators", 3, rep.new_generators.len());
    let printed: Vec<IntPoly> = ["LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3"].iter().map(|n| catalog(n, &ops)).collect::<Result<_>>()?;
    for (i, p) in printed.iter().enumerate() {
        let v = verify_char0(p, &a.exact, 10, o.seed)?;
        r.check(7, &format!("printed degree 5 identity {} vanishes", i + 1), "holds", if v.holds { "holds" } else { "fails" }, v.holds);
    }
    let f = field(P_LARGE)?;
    let lower: Vec<IntPoly> = k.iter().filter(|k| k.poly.degree() < 5).map(|k| k.poly.clone()).collect();
    let mut m = lifted_module(&lower, 5, &ops, f, idforge::idfinder::OrbitStrategy::Auto, o.parallel)?.module;
    for kp in k.iter().filter(|k| k.poly.degree() == 5).map(|k| &k.poly).chain(printed.iter()) {
        let v = m.sparse(kp)?;
        m.absorb(&v);
    }
    r.equal(7, "lifted module + printed identities spans the nullspace", rep.nullspace_dim, m.dim());
    translation_diagnostic(r, 7, 3, &a, 5, &k, P_LARGE, o)?;
    r.keep("ljy3-degree5-mixed", &rep);
    Ok(())
}

fn ljy3_degree6(r: &mut Reproduction, o: &Options) -> Result<()> {
    let t = Instant::now();
    let a = pair(build_ljy(3, QuadSqrt2)?, P_LARGE)?;
    let ops = a.prime.ops().clone();
    for name in ["LJY3-deg6-1", "LJY3-deg6-2", "LJY3-deg6-3"] {
        let p = catalog(name, &ops)?;
        let v = verify_char0(&p, &a.exact, 10, o.seed)?;
        r.check(8, &format!("{name} ({} terms) vanishes", p.len()), "holds", if v.holds { "holds" } else { "fails" }, v.holds);
    }
    let k = known(&a.prime, 6, o)?;
    r.info(8, "known identities", "-", names(&k));
    let rep = search(&a, 6, OpSelection::Mixed, &k, P_LARGE, o)?;
    r.info(8, "degree 6 rank / nullspace", "-", format!("{} / {}", rep.rank, rep.nullspace_dim));
    r.info(8, "lifted module (below 2632)", "< 2632", rep.lifted_dim);
    let dims: Vec<usize> = rep.new_generators.iter().map(|g| g.module_dim).collect();
    r.equal(8, "module dimension after each new generator", "[2632, 2647, 2701, 2732, 2733]".to_string(), abbreviate(&dims));
    r.equal(8, "final module dimension", 2733, rep.final_dim);
    r.info(8, "generator term counts", "[30, 18, 58, 333, 635]", abbreviate(&rep.new_generators.iter().map(|g| g.terms).collect::<Vec<_>>()));
    let failed = rep.new_generators.iter().filter(|g| g.poly.is_none()).count();
    r.check(8, "reconstruction at p = 100049", "all succeed", format!("{failed} of {} fail", rep.new_generators.len()), failed == 0);
    let secs = t.elapsed().as_secs_f64();
    r.check(8, "degree 6 time", "< 600 s", format!("{secs:.0} s"), secs < 600.0);
    if o.extended {
        let small = pair(build_ljy(3, QuadSqrt2)?, P_SMALL)?;
        let k = known(&small.prime, 6, o)?;
        let rep103 = search(&small, 6, OpSelection::Mixed, &k, P_SMALL, o)?;
        r.info(8, "reconstruction at p = 103 (may fail)", "-", format!("{} of {} fail", rep103.new_generators.iter().filter(|g| g.poly.is_none()).count(), rep103.new_generators.len()));
        translation_diagnostic(r, 8, 3, &a, 6, &k, P_LARGE, o)?;
    }
    r.keep("ljy3-degree6-mixed", &rep);
    Ok(())
}

/// `[a, b, ..]`, eliding the middle of long lists.
fn abbreviate(v: &[usize]) -> String {
    if v.len() <= 8 {
        return format!("{v:?}");
    }
    let head: Vec<String> = v[..4].iter().map(|x| x.to_string()).collect();
    let tail: Vec<String> = v[v.len() - 2..].iter().map(|x| x.to_string()).collect();
    format!("[{}, .. ({} entries) .., {}]", head.join(", "), v.len(), tail.join(", "))
}

fn ljy4(r: &mut Reproduction, o: &Options) -> Result<()> {
    let a = pair(build_ljy(4, QuadSqrt2)?, P_LARGE)?;
    let top = if o.extended { 6 } else { 5 };
    for d in 3..=top {
        let rep = search(&a, d, OpSelection::Mixed, &[], P_LARGE, o)?;
        r.equal(9, &format!("LJY4 degree {d} nullspace ({} monomials)", rep.monomials), 0, rep.nullspace_dim);
        if rep.nullspace_dim > 0 {
            let diag = translation_diagnostic(r, 9, 4, &a, d, &[], P_LARGE, o)?;
            let char0 = rep.new_generators.iter().filter(|g| g.char0.as_ref().is_some_and(|c| c.holds)).count();
            r.info(9, &format!("LJY4 degree {d}: generators verified in characteristic 0"), "-", format!("{char0} of {}", rep.new_generators.len()));
            r.keep(&format!("ljy4-degree{d}-translated"), &diag);
        }
        r.keep(&format!("ljy4-degree{d}-mixed"), &rep);
    }
    Ok(())
}
