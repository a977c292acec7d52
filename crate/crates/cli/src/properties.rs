//! Property spot checks that need no reference numbers. Each returns
//! `None` when the property holds and a description of the first
//! counterexample otherwise.

use std::collections::BTreeSet;
use std::sync::Arc;

use idforge::algebras::{build_ly, verify_axioms, VerifyMode};
use idforge::exactfield::{rational_reconstruct_i64, reconstruction_bound, ExactMatrix, Field, PrimeField, QuadSqrt2, Ring};
use idforge::freeops::perm::{all_permutations, inverse};
use idforge::freeops::{catalog_identity, liftings, Monomial, OpSelection, OpSet, RawTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Unwraps, turning an error into a reported failure.
macro_rules! ok {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Some(e.to_string()),
        }
    };
}

pub fn run_all(seed: u64) -> Vec<(String, Option<String>)> {
    let mut out = Vec::new();
    for ops in [OpSet::ly(), OpSet::ljy()] {
        out.push((format!("{} canonicalization retracts with coherent signs (d <= 4)", ops.name()), canonical_retraction(&ops, 4)));
        out.push((format!("{} monomial counts equal brute force (d <= 4)", ops.name()), monomial_counts(&ops, 4)));
    }
    out.push(("rank and nullspace agree with minors (<= 6x6, GF(103))".into(), rref_against_minors(seed, 200)));
    out.push(("reconstruction round trip for every fraction within bound (p = 103)".into(), reconstruction_round_trip(103)));
    out.push(("liftings of LY3, LY4, LY5 vanish on LY4 (degree 5)".into(), lifted_identities_vanish(seed)));
    out
}

/// For every normal monomial of degree `<= max_d` and every `sigma`,
/// relabelling by `sigma` then by its inverse returns the monomial with
/// total sign `+1`.
pub fn canonical_retraction(ops: &Arc<OpSet>, max_d: usize) -> Option<String> {
    for d in 1..=max_d {
        let basis = ok!(ops.basis(d, OpSelection::Mixed));
        for sigma in all_permutations(d) {
            let back = inverse(&sigma);
            for m in basis.monomials() {
                let (m1, s1) = ops.permute_monomial(m, &sigma);
                let (m2, s2) = ops.permute_monomial(&m1, &back);
                if m2 != *m || s1 * s2 != 1 {
                    return Some(format!("{} under {sigma:?}", ops.fmt_monomial(m)));
                }
                // the raw tree of a normal monomial is already normal
                match ops.canonicalize(&ops.to_raw(m)) {
                    Ok((c, 1)) if c == *m => {}
                    _ => return Some(format!("{} is not a fixed point", ops.fmt_monomial(m))),
                }
            }
        }
    }
    None
}

/// All trees on the variables in `vars`, every operation, every ordered
/// split of the variables among the children.
fn all_trees(ops: &OpSet, vars: &[u8]) -> Vec<RawTree> {
    if vars.len() == 1 {
        return vec![RawTree::Leaf(vars[0])];
    }
    let mut out = Vec::new();
    for (k, op) in ops.ops().iter().enumerate() {
        for parts in ordered_partitions(vars, op.arity) {
            let mut prods: Vec<Vec<RawTree>> = vec![Vec::new()];
            for part in &parts {
                let sub = all_trees(ops, part);
                prods = prods.iter().flat_map(|p| sub.iter().map(move |t| [p.clone(), vec![t.clone()]].concat())).collect();
            }
            out.extend(prods.into_iter().map(|ch| RawTree::Node(k, ch)));
        }
    }
    out
}

/// Assignments of `vars` to `k` labelled nonempty blocks.
fn ordered_partitions(vars: &[u8], k: usize) -> Vec<Vec<Vec<u8>>> {
    let n = vars.len();
    let mut out = Vec::new();
    let total = k.pow(n as u32);
    for code in 0..total {
        let mut blocks = vec![Vec::new(); k];
        let mut c = code;
        for &v in vars {
            blocks[c % k].push(v);
            c /= k;
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
    }
    out
}

/// Normal monomials counted by canonicalizing every tree, against the
/// enumerated basis.
pub fn monomial_counts(ops: &Arc<OpSet>, max_d: usize) -> Option<String> {
    for d in 1..=max_d {
        let vars: Vec<u8> = (0..d as u8).collect();
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        for t in all_trees(ops, &vars) {
            match ops.canonicalize(&t) {
                Ok((m, s)) if s != 0 => {
                    seen.insert(m);
                }
                Ok(_) => {}
                Err(e) => return Some(format!("degree {d}: {e}")),
            }
        }
        let basis = ok!(ops.basis(d, OpSelection::Mixed));
        if seen.len() != basis.len() || !basis.monomials().iter().all(|m| seen.contains(m)) {
            return Some(format!("degree {d}: brute force {} vs basis {}", seen.len(), basis.len()));
        }
    }
    None
}

fn det(f: &PrimeField, m: &[Vec<u32>]) -> u32 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<u32>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
        let term = f.mul(&m[0][j], &det(f, &minor));
        acc = if j % 2 == 0 { f.add(&acc, &term) } else { f.sub(&acc, &term) };
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|&i| s >> i & 1 == 1).collect()).collect()
}

/// Rank as the size of the largest nonzero minor.
fn rank_by_minors(f: &PrimeField, m: &[Vec<u32>], cols: usize) -> usize {
    let rows = m.len();
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<u32>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                if det(f, &sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// Random low-rank matrices up to 6x6: rank, nullspace size and
/// `M v = 0` for every nullspace vector.
pub fn rref_against_minors(seed: u64, cases: usize) -> Option<String> {
    let f = ok!(PrimeField::new(103));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let (rows, cols) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        // small entries and a chance of repeated rows keep ranks varied
        let mut m: Vec<Vec<u32>> = (0..rows).map(|_| (0..cols).map(|_| f.reduce_i64(rng.gen_range(-2..=2))).collect()).collect();
        if rows > 1 && rng.gen_bool(0.4) {
            let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
            let c = f.reduce_i64(rng.gen_range(-3..=3));
            m[a] = m[b].iter().map(|x| f.mul(x, &c)).collect();
        }
        let mat = ExactMatrix::from_rows(f, cols, m.clone());
        let want = rank_by_minors(&f, &m, cols);
        let got = mat.rank();
        let null = mat.nullspace_basis();
        if got != want || null.len() != cols - want {
            return Some(format!("case {case}: rank {got} vs minors {want}, nullity {}", null.len()));
        }
        for v in &null {
            if mat.mul_vec(v).iter().any(|x| *x != 0) || v.iter().all(|x| *x == 0) {
                return Some(format!("case {case}: bad nullspace vector {v:?}"));
            }
        }
    }
    None
}

/// Every reduced `a/b` with `|a|, b <= bound` maps to a residue that
/// reconstructs to itself.
pub fn reconstruction_round_trip(p: u32) -> Option<String> {
    let f = ok!(PrimeField::new(p));
    let bound = reconstruction_bound(u64::from(p)) as i64;
    for b in 1..=bound {
        for a in -bound..=bound {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            let r = ok!(f.div(&f.from_i64(a), &f.from_i64(b)));
            match rational_reconstruct_i64(u64::from(r), u64::from(p)) {
                Ok(x) if x == (a, b) => {}
                other => return Some(format!("{a}/{b} -> {r} -> {other:?}")),
            }
        }
    }
    None
}

/// Consequences of identities of an algebra are identities of it.
pub fn lifted_identities_vanish(seed: u64) -> Option<String> {
    let alg = ok!(build_ly(4, QuadSqrt2));
    for name in ["LY3", "LY4", "LY5"] {
        let f = ok!(catalog_identity(name));
        let lifts = ok!(liftings(&f, 5));
        let named: Vec<_> = lifts.into_iter().enumerate().map(|(i, p)| (format!("{name} lifting {}", i + 1), p)).collect();
        let res = ok!(verify_axioms(&alg, &named, VerifyMode::Random { trials: 2, seed }, true));
        if let Some(bad) = res.iter().find(|r| !r.holds) {
            return Some(bad.name.clone());
        }
    }
    None
}
