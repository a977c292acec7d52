//! Parallel against sequential paths of the search kernels. Both paths
//! produce identical results; only wall time differs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use idforge::algebras::build_ly;
use idforge::exactfield::{PrimeField, QuadSqrt2, ReducedBasis, SparseVec};
use idforge::freeops::{catalog_identity, OpSelection, OpSet};
use idforge::idfinder::{fill_and_reduce, lifted_module, OrbitStrategy, SearchConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field() -> PrimeField {
    PrimeField::with_sqrt2(103, 38).unwrap()
}

fn paths() -> [(&'static str, bool); 2] {
    [("sequential", false), ("parallel", true)]
}

fn fill(c: &mut Criterion) {
    let alg = build_ly(4, QuadSqrt2).unwrap().reduce_mod(&field()).unwrap();
    let mut g = c.benchmark_group("fill_and_reduce_ly4");
    g.sample_size(10);
    for d in [4, 5] {
        for (name, parallel) in paths() {
            let mut cfg = SearchConfig::new(d, OpSelection::Mixed);
            cfg.parallel = parallel;
            g.bench_with_input(BenchmarkId::new(name, d), &cfg, |b, cfg| b.iter(|| fill_and_reduce(&alg, cfg).unwrap().rank));
        }
    }
    g.finish();
}

fn absorb(c: &mut Criterion) {
    let f = field();
    let (cols, rows) = (2000, 600);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // sparse rows of moderate density, as produced by monomial evaluation
    let vs: Vec<SparseVec> = (0..rows)
        .map(|_| {
            let mut v = Vec::new();
            for c in 0..cols as u32 {
                if rng.gen_bool(0.05) {
                    v.push((c, rng.gen_range(1..103)));
                }
            }
            v
        })
        .collect();
    let mut g = c.benchmark_group("reduced_basis_absorb");
    g.sample_size(10);
    for (name, parallel) in paths() {
        g.bench_function(name, |b| {
            b.iter(|| {
                let mut basis = ReducedBasis::new(f, cols);
                basis.absorb_batch(&vs, parallel);
                basis.rank()
            })
        });
    }
    g.finish();
}

fn module_scan(c: &mut Criterion) {
    let ops = OpSet::ly();
    let known = vec![catalog_identity("LY3").unwrap(), catalog_identity("LY4").unwrap()];
    let mut g = c.benchmark_group("lifted_module_ly_degree5");
    g.sample_size(10);
    for strategy in [OrbitStrategy::Full, OrbitStrategy::Spin] {
        for (name, parallel) in paths() {
            g.bench_function(BenchmarkId::new(name, format!("{strategy:?}")), |b| {
                b.iter(|| lifted_module(&known, 5, &ops, field(), strategy, parallel).unwrap().dim())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, fill, absorb, module_scan);
criterion_main!(benches);
