use idforge::algebras::{
    build_jordan_h, build_ljy, build_ly, build_ly3_transvection, build_ly4_tensor, evaluate, expected_dim_m,
    random_inputs, verify_axioms, AnyAlgebra, MatrixModel, StructureConstantAlgebra, VerifyMode,
};
use idforge::exactfield::{PrimeField, QuadSqrt2, Ring};
use idforge::freeops::{catalog_identity, catalog_identity_in, IntPoly, OpSet, SignedArrangement};

fn gf() -> PrimeField {
    PrimeField::with_sqrt2(103, 38).unwrap()
}

fn ids(names: &[&str], ops: &std::sync::Arc<OpSet>) -> Vec<(String, IntPoly)> {
    names.iter().map(|n| (n.to_string(), catalog_identity_in(n, ops).unwrap())).collect()
}

/// Exhaustive for degree <= 3, 50 random trials above.
fn check_suite<F: idforge::algebras::FastEval>(alg: &StructureConstantAlgebra<F>, names: &[&str]) -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for (name, poly) in ids(names, alg.ops()) {
        let mode = if poly.degree() <= 3 { VerifyMode::Exhaustive } else { VerifyMode::Random { trials: 50, seed: 1 } };
        let r = verify_axioms(alg, &[(name.clone(), poly)], mode, true).unwrap();
        out.push((name, r[0].holds));
    }
    out
}

fn assert_ly(alg_name: &str, results: Vec<(String, bool)>) {
    for (name, holds) in results {
        assert!(holds, "{alg_name} fails {name}");
    }
}

#[test]
fn dim_m_matches_closed_form() {
    for n in 3..=6 {
        let d = MatrixModel::dim_m_only(n, gf()).unwrap();
        assert_eq!(d, expected_dim_m(n), "n = {n}");
    }
    assert_eq!((3..=9).map(expected_dim_m).collect::<Vec<_>>(), vec![7, 30, 81, 175, 330, 567, 910]);
}

#[test]
fn matrix_model_is_reductive() {
    let model = MatrixModel::build(4, gf()).unwrap();
    let f = *model.field();
    assert_eq!(model.dim_l(), 6);
    assert_eq!(model.dim_m(), 30);
    assert_eq!(model.dim_u(), 36);
    for x in model.m_basis() {
        assert!(model.in_u(x));
        let l = model.p_l(x);
        assert!(l.data.iter().all(|c| f.is_zero(c)), "p_L vanishes on M");
    }
    for l in model.l_image() {
        let p = model.p_l(l);
        assert_eq!(&p, l, "p_L fixes L");
    }
}

#[test]
fn too_small_n_is_rejected() {
    assert!(MatrixModel::build(2, gf()).is_err());
    assert!(build_ly(2, gf()).is_err());
}

const LY: [&str; 4] = ["LY3", "LY4", "LY5", "LY6"];

#[test]
fn ly_models_satisfy_the_axioms() {
    let models = [
        build_ly(3, gf()).unwrap(),
        build_ly(4, gf()).unwrap(),
        build_ly3_transvection(gf()).unwrap(),
        build_ly4_tensor(gf()).unwrap(),
    ];
    for alg in &models {
        assert!(alg.symmetry_violation(0).is_none() && alg.symmetry_violation(1).is_none());
        assert_ly(alg.name(), check_suite(alg, &LY));
    }
}

#[test]
fn exact_ly3_satisfies_the_axioms() {
    let alg = build_ly(3, QuadSqrt2).unwrap();
    assert_eq!(alg.dim(), 7);
    assert_ly(alg.name(), check_suite(&alg, &LY));
    assert!(alg.factor_violation(1).is_none());
}

#[test]
fn prime_tables_are_reductions_of_exact_ones() {
    let exact = build_ly(3, QuadSqrt2).unwrap().reduce_mod(&gf()).unwrap();
    let direct = build_ly(3, gf()).unwrap();
    for k in 0..2 {
        assert_eq!(exact.table(k), direct.table(k));
    }
    let exact = build_ljy(3, QuadSqrt2).unwrap().reduce_mod(&gf()).unwrap();
    let direct = build_ljy(3, gf()).unwrap();
    for k in 0..2 {
        assert_eq!(exact.table(k), direct.table(k));
    }
}

#[test]
fn ljy3_bilinear_part_is_malcev_but_not_linked() {
    let alg = build_ljy(3, gf()).unwrap();
    assert_eq!(alg.dim(), 7);
    let r = check_suite(&alg, &["Malcev", "FilippovH", "LieJordan-linking"]);
    assert_eq!(r, vec![("Malcev".into(), true), ("FilippovH".into(), true), ("LieJordan-linking".into(), false)]);
}

#[test]
fn ljy_ternary_symmetry_is_detected() {
    let alg = build_ljy(3, gf()).unwrap();
    let syms = alg.detect_ternary_symmetry().unwrap();
    let swap13 = SignedArrangement { perm: vec![2, 1, 0], sign: 1 };
    assert!(syms.contains(&swap13));
    assert_eq!(syms.len(), 2);
    let ly = build_ly(3, gf()).unwrap();
    let syms = ly.detect_ternary_symmetry().unwrap();
    assert!(syms.contains(&SignedArrangement { perm: vec![1, 0, 2], sign: -1 }));
}

#[test]
fn json_round_trip() {
    for alg in [build_ly(3, gf()).unwrap(), build_ljy(3, gf()).unwrap()] {
        let j = alg.to_json();
        assert_eq!(j["dim"], 7);
        let back = AnyAlgebra::from_json(&j).unwrap();
        let AnyAlgebra::Prime(b) = back else { panic!("prime field expected") };
        assert_eq!(b.to_json(), j);
        for k in 0..2 {
            assert_eq!(b.table(k), alg.table(k));
        }
    }
    let exact = build_ly3_transvection(QuadSqrt2).unwrap();
    let back = AnyAlgebra::from_json(&exact.to_json()).unwrap();
    assert_eq!(back.to_json(), exact.to_json());
}

#[test]
fn jordan_h_identities() {
    let f = gf();
    let alg = build_jordan_h(3, f).unwrap();
    assert_eq!(alg.dim(), 6);
    let x = random_inputs(&f, 6, 4, 9, 0);
    // identity matrix in the orthonormal basis: E_ii coordinates 1
    let mut id = vec![0u32; 6];
    id[..3].iter_mut().for_each(|c| *c = 1);
    let circ = |a: &[u32], b: &[u32]| alg.product(0, &[a, b]).unwrap();
    let trip = |a: &[u32], b: &[u32], c: &[u32]| alg.product(1, &[a, b, c]).unwrap();
    let two_a: Vec<u32> = x[0].iter().map(|c| f.add(c, c)).collect();
    assert_eq!(circ(&id, &x[0]), two_a);
    let tr = |a: &[u32]| a[..3].iter().fold(0, |s, c| f.add(&s, c));
    // T(a∘b, c) = T(a, b∘c) with T(a,b) = tr(a∘b)/2 up to scale
    assert_eq!(tr(&circ(&circ(&x[0], &x[1]), &x[2])), tr(&circ(&x[0], &circ(&x[1], &x[2]))));
    // d_{a,b}(c) = {a,b,c} - {b,a,c} is a derivation of ∘
    let d = |c: &[u32]| {
        let (u, v) = (trip(&x[0], &x[1], c), trip(&x[1], &x[0], c));
        u.iter().zip(&v).map(|(p, q)| f.sub(p, q)).collect::<Vec<u32>>()
    };
    let lhs = d(&circ(&x[2], &x[3]));
    let r1 = circ(&d(&x[2]), &x[3]);
    let r2 = circ(&x[2], &d(&x[3]));
    let rhs: Vec<u32> = r1.iter().zip(&r2).map(|(p, q)| f.add(p, q)).collect();
    assert_eq!(lhs, rhs);
    // d kills the identity and T is d-invariant
    assert!(d(&id).iter().all(|c| *c == 0));
    let t = |a: &[u32], b: &[u32]| tr(&circ(a, b));
    assert_eq!(f.add(&t(&d(&x[2]), &x[3]), &t(&x[2], &d(&x[3]))), 0);
}

#[test]
fn exact_evaluation_matches_prime_reduction() {
    let exact = build_ly(3, QuadSqrt2).unwrap();
    let prime = exact.reduce_mod(&gf()).unwrap();
    let poly = catalog_identity("LY4").unwrap();
    // a nonidentity: drop one term
    let (m, c) = poly.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
    let mut broken = poly.clone();
    broken.add_term(m, &idforge::exactfield::Integers.neg(&c), 1);
    let q = QuadSqrt2;
    let xs: Vec<Vec<_>> = random_inputs(&q, 7, 4, 3, 0);
    let v = evaluate(&exact, &broken, &xs).unwrap();
    let vr: Vec<u32> = v.iter().map(|c| idforge::algebras::reduce_qsqrt2(c, &gf()).unwrap()).collect();
    let xp: Vec<Vec<u32>> =
        xs.iter().map(|x| x.iter().map(|c| idforge::algebras::reduce_qsqrt2(c, &gf()).unwrap()).collect()).collect();
    assert_eq!(evaluate(&prime, &broken, &xp).unwrap(), vr);
    assert!(v.iter().any(|c| !q.is_zero(c)));
}
