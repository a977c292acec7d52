use std::sync::Arc;

use idforge::algebras::{build_ljy, build_ly, evaluate, random_inputs, StructureConstantAlgebra};
use idforge::exactfield::{ExactMatrix, Field, Integers, PrimeField, QuadSqrt2, Ring};
use idforge::freeops::{catalog_identity, catalog_identity_in, IntPoly, MultilinearPoly, OpSelection, OpSet};
use idforge::idfinder::{
    default_known, fill_and_reduce, lifted_module, new_identities, new_identities_with, reconstruct_sparse, same_module_over,
    translated_ly_identities, verify_char0, IdentityReport, KnownIdentity, OrbitStrategy, SearchConfig, SymmetricModule,
};

const P_LARGE: (u32, u32) = (100049, 10948);

fn gf(p: (u32, u32)) -> PrimeField {
    PrimeField::with_sqrt2(p.0, p.1).unwrap()
}

fn pair(exact: StructureConstantAlgebra<QuadSqrt2>, p: (u32, u32)) -> (StructureConstantAlgebra<QuadSqrt2>, StructureConstantAlgebra<PrimeField>) {
    let prime = exact.reduce_mod(&gf(p)).unwrap();
    (exact, prime)
}

fn ly4() -> (StructureConstantAlgebra<QuadSqrt2>, StructureConstantAlgebra<PrimeField>) {
    pair(build_ly(4, QuadSqrt2).unwrap(), (103, 38))
}

fn search(alg: &(StructureConstantAlgebra<QuadSqrt2>, StructureConstantAlgebra<PrimeField>), cfg: &SearchConfig) -> IdentityReport {
    let known = default_known(&alg.1, cfg.degree, cfg.seed).unwrap();
    new_identities(&alg.1, Some(&alg.0), &known, cfg).unwrap()
}

/// Rank of the evaluation map computed one monomial at a time on
/// `trials` random tuples, with a dense elimination.
fn rank_by_evaluation(alg: &StructureConstantAlgebra<PrimeField>, d: usize, sel: OpSelection, trials: usize) -> usize {
    let ops = alg.ops().clone();
    let basis = ops.basis(d, sel).unwrap();
    let f = *alg.field();
    let q = basis.len();
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for t in 0..trials {
        let inputs = random_inputs(&f, alg.dim(), d, 77, t);
        let cols: Vec<Vec<u32>> = (0..q)
            .map(|c| {
                let mut unit = vec![Integers.zero(); q];
                unit[c] = Integers.one();
                let mono: IntPoly = MultilinearPoly::from_dense(Integers, ops.clone(), &basis, &unit);
                evaluate(alg, &mono, &inputs).unwrap()
            })
            .collect();
        for k in 0..alg.dim() {
            rows.push((0..q).map(|c| cols[c][k]).collect());
        }
    }
    ExactMatrix::from_rows(f, q, rows).rank()
}

#[test]
fn ly4_degree_three_and_four_ranks_match_direct_evaluation() {
    let a = ly4();
    for (d, sel) in [(3, OpSelection::Mixed), (4, OpSelection::Binary), (4, OpSelection::Mixed)] {
        let rep = search(&a, &SearchConfig::new(d, sel));
        assert_eq!(rep.rank, rank_by_evaluation(&a.1, d, sel, 8), "degree {d} {sel}");
        assert_eq!(rep.rank + rep.nullspace_dim, rep.monomials);
    }
}

#[test]
fn ly4_degree_three_identity_generates_ly3() {
    let a = ly4();
    let rep = search(&a, &SearchConfig::new(3, OpSelection::Mixed));
    assert_eq!((rep.monomials, rep.rank, rep.nullspace_dim), (6, 5, 1));
    let g = rep.new_generators[0].poly.clone().expect("reconstructs");
    let ops = a.1.ops().clone();
    let f = gf((103, 38));
    let base = SymmetricModule::new(&ops, 3, f, OrbitStrategy::Full, false).unwrap();
    let ly3 = base.sparse(&catalog_identity("LY3").unwrap()).unwrap();
    assert!(same_module_over(&base, &[ly3], &[base.sparse(&g).unwrap()]));
    assert!(verify_char0(&g, &a.0, 5, 3).unwrap().holds);
}

#[test]
fn ly4_degree_four_new_generators_are_equivalent_to_ly4_and_ly5() {
    let a = ly4();
    let rep = search(&a, &SearchConfig::new(4, OpSelection::Mixed));
    assert_eq!((rep.monomials, rep.rank, rep.nullspace_dim, rep.lifted_dim), (45, 26, 19, 10));
    assert_eq!(rep.new_generators.len(), 2);
    assert_eq!(rep.final_dim, rep.nullspace_dim);
    let ops = a.1.ops().clone();
    let lifted = lifted_module(&[catalog_identity("LY3").unwrap()], 4, &ops, gf((103, 38)), OrbitStrategy::Auto, true).unwrap();
    let axioms: Vec<_> = ["LY4", "LY5"].iter().map(|n| lifted.module.sparse(&catalog_identity(n).unwrap()).unwrap()).collect();
    let found: Vec<_> = rep.new_generators.iter().map(|g| g.residues.clone()).collect();
    assert!(same_module_over(&lifted.module, &axioms, &found));
    for g in &rep.new_generators {
        assert!(g.char0.as_ref().is_some_and(|r| r.holds));
    }
}

#[test]
fn ly4_degree_five_ternary_part_is_explained_by_ly6() {
    let a = ly4();
    let ter = search(&a, &SearchConfig::new(5, OpSelection::Ternary));
    assert_eq!((ter.monomials, ter.rank, ter.nullspace_dim), (90, 60, 30));
    assert_eq!(ter.rank, rank_by_evaluation(&a.1, 5, OpSelection::Ternary, 4));
    assert_eq!(ter.final_dim, 296);
    let ops = a.1.ops().clone();
    let mut k6 = default_known(&a.1, 5, 1).unwrap();
    k6.push(KnownIdentity::catalog("LY6", &ops).unwrap());
    let mixed = new_identities(&a.1, Some(&a.0), &k6, &SearchConfig::new(5, OpSelection::Mixed)).unwrap();
    assert_eq!((mixed.monomials, mixed.nullspace_dim), (510, 296));
    assert!(mixed.new_generators.is_empty());
}

#[test]
fn reports_are_deterministic_and_seed_independent() {
    let a = ly4();
    let cfg = SearchConfig::new(4, OpSelection::Mixed);
    let strip = |r: &IdentityReport| {
        let mut v = r.to_json();
        v.as_object_mut().unwrap().remove("timings");
        v
    };
    let one = search(&a, &cfg);
    assert_eq!(strip(&one), strip(&search(&a, &cfg)));
    assert_eq!(strip(&one), strip(&search(&a, &cfg.clone().sequential())));
    let other = search(&a, &cfg.clone().with_seed(9));
    assert_eq!(one.nullspace_basis, other.nullspace_basis);
    assert_eq!(one.rank, other.rank);
    let polys = |r: &IdentityReport| r.new_generators.iter().map(|g| g.poly.clone()).collect::<Vec<_>>();
    assert_eq!(polys(&one), polys(&other));
}

#[test]
fn full_and_spin_orbits_span_the_same_module() {
    let ops = OpSet::ly();
    let f = gf((103, 38));
    let known: Vec<IntPoly> = ["LY3", "LY4", "LY5"].iter().map(|n| catalog_identity(n).unwrap()).collect();
    let full = lifted_module(&known[..1], 5, &ops, f, OrbitStrategy::Full, false).unwrap();
    let spin = lifted_module(&known[..1], 5, &ops, f, OrbitStrategy::Spin, true).unwrap();
    assert_eq!(full.dim(), spin.dim());
    let mut a = full.module.clone();
    let mut b = spin.module.clone();
    for p in &known[1..] {
        for l in idforge::freeops::liftings(p, 5).unwrap() {
            a.absorb(&a.sparse(&l).unwrap());
            b.absorb(&b.sparse(&l).unwrap());
        }
    }
    assert_eq!(a.dim(), b.dim());
    assert_eq!(a.dim(), 280);
}

#[test]
fn a_non_identity_fails_in_characteristic_zero() {
    let (exact, _) = ly4();
    let ops: Arc<OpSet> = OpSet::ly();
    let comm = idforge::freeops::parse_poly(&ops, "[[x1,x2],x3]").unwrap();
    let r = verify_char0(&comm, &exact, 5, 1).unwrap();
    assert!(!r.holds);
    assert!(r.witness.is_some());
}

#[test]
fn reconstruction_recovers_small_fractions_and_rejects_others() {
    let p = 100049u32;
    let f = PrimeField::new(p).unwrap();
    let fracs = [(3i64, 7i64), (-5, 11), (1, 1), (0, 1), (-100, 3)];
    let v: Vec<(u32, u32)> = fracs.iter().enumerate().map(|(i, &(a, b))| (i as u32, f.div(&f.from_i64(a), &f.from_i64(b)).unwrap())).collect();
    // rows are rescaled so the coefficients become coprime integers
    let out = reconstruct_sparse(&v, p).unwrap();
    let ints: Vec<i64> = out.iter().map(|(_, x)| i64::try_from(x).unwrap()).collect();
    let lcm = 3 * 7 * 11;
    let want: Vec<i64> = fracs.iter().map(|&(a, b)| a * lcm / b).filter(|x| *x != 0).collect();
    assert!(ints == want || ints.iter().map(|x| -x).collect::<Vec<_>>() == want, "{ints:?}");
    // a residue whose smallest fraction exceeds the bound
    assert!(reconstruct_sparse(&[(0, 1), (1, 50137)], p).is_err());
}

#[test]
fn printed_ljy3_identities_vanish_on_ljy3() {
    let alg = build_ljy(3, QuadSqrt2).unwrap();
    let ops = alg.ops().clone();
    for name in ["Malcev", "FilippovH", "LJY3-deg5-1", "LJY3-deg5-2", "LJY3-deg5-3", "LJY3-deg6-1", "LJY3-deg6-2", "LJY3-deg6-3"] {
        let f = catalog_identity_in(name, &ops).unwrap();
        assert!(verify_char0(&f, &alg, 3, 2).unwrap().holds, "{name}");
    }
}

#[test]
fn rewritten_ly4_identities_vanish_on_ljy4() {
    let ljy = build_ljy(4, QuadSqrt2).unwrap();
    for name in ["LY3", "LY4", "LY5", "LY6"] {
        let f = idforge::freeops::ly_to_ljy(&catalog_identity(name).unwrap()).unwrap();
        assert!(verify_char0(&f, &ljy, 3, 5).unwrap().holds, "{name}");
    }
}

#[test]
fn rewritten_ly4_identities_explain_ljy4_in_degree_four() {
    let (exact, prime) = pair(build_ljy(4, QuadSqrt2).unwrap(), P_LARGE);
    let cfg = SearchConfig::new(4, OpSelection::Mixed).with_prime(P_LARGE.0, P_LARGE.1);
    let known = default_known(&prime, 4, 1).unwrap();
    let plain = new_identities(&prime, Some(&exact), &known, &cfg).unwrap();
    assert_eq!(plain.nullspace_dim, 9);
    assert_eq!(plain.rank, rank_by_evaluation(&prime, 4, OpSelection::Mixed, 8));
    let ly = build_ly(4, QuadSqrt2).unwrap().reduce_mod(&gf(P_LARGE)).unwrap();
    let extra = translated_ly_identities(&ly, &cfg).unwrap();
    let rep = new_identities_with(&prime, Some(&exact), &known, Some(&extra), &cfg).unwrap();
    assert_eq!(rep.extra_dim, Some(9));
    assert!(rep.new_generators.is_empty());
}

#[test]
fn fill_stops_once_rank_is_stable() {
    let (_, prime) = ly4();
    let cfg = SearchConfig::new(4, OpSelection::Mixed);
    let r = fill_and_reduce(&prime, &cfg).unwrap();
    assert_eq!(r.rank, 26);
    assert_eq!(r.rank_history.len(), r.iterations);
    assert!(r.rank_history.windows(2).all(|w| w[0] <= w[1]));
    assert!(r.iterations >= r.reached_at);
    assert!(r.iterations <= cfg.cap_for(r.q(), prime.dim()));
    let capped = SearchConfig { cap: Some(1), ..cfg };
    assert!(fill_and_reduce(&prime, &capped).is_err());
}
