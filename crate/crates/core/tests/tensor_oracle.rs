//! The 30-dimensional tensor model against the reductive pair
//! `so(9) = (so3 ⊗ I + I ⊗ so3) ⊕ m` realized by Kronecker products.

use idforge::algebras::build_ly4_tensor;
use idforge::exactfield::{ExactMatrix, PrimeField, Ring};

type M = Vec<u32>;

fn f() -> PrimeField {
    PrimeField::new(103).unwrap()
}

fn mat3(entries: &[(usize, usize, i64)]) -> M {
    let mut a = vec![0; 9];
    for &(i, j, v) in entries {
        a[i * 3 + j] = f().from_i64(v);
    }
    a
}

fn kron(a: &M, b: &M) -> M {
    let mut out = vec![0; 81];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out[(i * 3 + k) * 9 + j * 3 + l] = f().mul(&a[i * 3 + j], &b[k * 3 + l]);
                }
            }
        }
    }
    out
}

fn mul(a: &M, b: &M, n: usize) -> M {
    let f = f();
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                f.mul_add_assign(&mut out[i * n + j], &a[i * n + k], &b[k * n + j]);
            }
        }
    }
    out
}

fn bracket(a: &M, b: &M) -> M {
    let (x, y) = (mul(a, b, 9), mul(b, a, 9));
    x.iter().zip(&y).map(|(p, q)| f().sub(p, q)).collect()
}

fn upper(a: &M) -> Vec<u32> {
    (0..9).flat_map(|i| (i + 1..9).map(move |j| (i, j))).map(|(i, j)| a[i * 9 + j]).collect()
}

#[test]
fn tensor_products_match_the_kronecker_model() {
    let f = f();
    let so = [mat3(&[(0, 1, 1), (1, 0, -1)]), mat3(&[(0, 2, 1), (2, 0, -1)]), mat3(&[(1, 2, 1), (2, 1, -1)])];
    let sym = [
        mat3(&[(0, 0, 1), (1, 1, -1)]),
        mat3(&[(1, 1, 1), (2, 2, -1)]),
        mat3(&[(0, 1, 1), (1, 0, 1)]),
        mat3(&[(0, 2, 1), (2, 0, 1)]),
        mat3(&[(1, 2, 1), (2, 1, 1)]),
    ];
    let id = mat3(&[(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
    // columns: h (6), then U at 5p+q, then U' at 15+3q+p
    let mut basis: Vec<M> = so.iter().map(|a| kron(a, &id)).chain(so.iter().map(|a| kron(&id, a))).collect();
    let mut m_basis = vec![Vec::new(); 30];
    for p in 0..3 {
        for q in 0..5 {
            m_basis[5 * p + q] = kron(&so[p], &sym[q]);
            m_basis[15 + 3 * q + p] = kron(&sym[q], &so[p]);
        }
    }
    basis.extend(m_basis.iter().cloned());
    let cols: Vec<Vec<u32>> = basis.iter().map(upper).collect();
    let b = ExactMatrix::from_rows(f, 36, (0..36).map(|r| cols.iter().map(|c| c[r]).collect()).collect());
    let binv = b.inverse().expect("so(9) basis");
    let coords = |x: &M| binv.mul_vec(&upper(x));
    let alg = build_ly4_tensor(f).unwrap();
    for i in 0..30 {
        for j in 0..30 {
            let c = coords(&bracket(&m_basis[i], &m_basis[j]));
            let want: Vec<u32> = c[6..].to_vec();
            let got = alg.product(0, &[&unit(i), &unit(j)]).unwrap();
            assert_eq!(got, want, "binary ({i},{j})");
            // h part of [X, Y], bracketed with Z
            let h: M = (0..6).fold(vec![0; 81], |acc, s| {
                acc.iter().zip(&basis[s]).map(|(a, e)| f.add(a, &f.mul(&c[s], e))).collect()
            });
            for k in (0..30).step_by(7) {
                let want: Vec<u32> = coords(&bracket(&h, &m_basis[k]))[6..].to_vec();
                let got = alg.product(1, &[&unit(i), &unit(j), &unit(k)]).unwrap();
                assert_eq!(got, want, "ternary ({i},{j},{k})");
            }
        }
    }
}

fn unit(i: usize) -> Vec<u32> {
    let mut v = vec![0; 30];
    v[i] = 1;
    v
}
