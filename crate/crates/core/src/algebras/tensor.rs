//! The 30-dimensional LY algebra `U ⊕ U'` with `U = so3 ⊗ Sym0(3)` and
//! `U' = Sym0(3) ⊗ so3`, from the displayed product families.
//!
//! Basis of `so3`: `E12-E21, E13-E31, E23-E32`. Basis of `Sym0(3)`:
//! `E11-E22, E22-E33, E12+E21, E13+E31, E23+E32`. `U` uses index `5p + q`
//! for `a_p ⊗ s_q`, `U'` uses `15 + 3q + p` for `s_q ⊗ a_p`.

use super::matrix_model::{matmul, Square};
use super::table::StructureConstantAlgebra;
use super::AlgebraError;
use crate::exactfield::Field;
use crate::freeops::OpSet;

type Mat<E> = Square<E>;

struct Ctx<'a, F: Field> {
    f: &'a F,
    so: Vec<Mat<F::Elem>>,
    sym: Vec<Mat<F::Elem>>,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn new(f: &'a F) -> Self {
        let m = |entries: &[(usize, usize, i64)]| {
            let mut a = Square { n: 3, data: vec![f.zero(); 9] };
            for &(i, j, v) in entries {
                a.data[i * 3 + j] = f.from_i64(v);
            }
            a
        };
        let so = vec![m(&[(0, 1, 1), (1, 0, -1)]), m(&[(0, 2, 1), (2, 0, -1)]), m(&[(1, 2, 1), (2, 1, -1)])];
        let sym = vec![
            m(&[(0, 0, 1), (1, 1, -1)]),
            m(&[(1, 1, 1), (2, 2, -1)]),
            m(&[(0, 1, 1), (1, 0, 1)]),
            m(&[(0, 2, 1), (2, 0, 1)]),
            m(&[(1, 2, 1), (2, 1, 1)]),
        ];
        Ctx { f, so, sym }
    }

    fn mul(&self, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
        matmul(self.f, a, b)
    }

    fn comb(&self, terms: &[(&Mat<F::Elem>, F::Elem)]) -> Mat<F::Elem> {
        let mut out = Square { n: 3, data: vec![self.f.zero(); 9] };
        for (m, c) in terms {
            self.f.axpy(&mut out.data, c, &m.data);
        }
        out
    }

    fn one(&self) -> F::Elem {
        self.f.one()
    }

    fn neg_one(&self) -> F::Elem {
        self.f.neg(&self.f.one())
    }

    fn bracket(&self, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
        self.comb(&[(&self.mul(a, b), self.one()), (&self.mul(b, a), self.neg_one())])
    }

    fn anti(&self, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Mat<F::Elem> {
        self.comb(&[(&self.mul(a, b), self.one()), (&self.mul(b, a), self.one())])
    }

    fn trace(&self, a: &Mat<F::Elem>) -> F::Elem {
        let f = self.f;
        f.add(&f.add(a.get(0, 0), a.get(1, 1)), a.get(2, 2))
    }

    fn tr_prod(&self, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> F::Elem {
        self.trace(&self.mul(a, b))
    }

    /// `ab + ba - (2/3) tr(ab) I`
    fn anti0(&self, a: &Mat<F::Elem>, b: &Mat<F::Elem>) -> Result<Mat<F::Elem>, AlgebraError> {
        let f = self.f;
        let mut out = self.anti(a, b);
        let c = f.mul(&f.from_ratio(2, 3)?, &self.tr_prod(a, b));
        for i in 0..3 {
            out.data[i * 4] = f.sub(&out.data[i * 4], &c);
        }
        Ok(out)
    }

    fn so_coords(&self, a: &Mat<F::Elem>) -> [F::Elem; 3] {
        [a.get(0, 1).clone(), a.get(0, 2).clone(), a.get(1, 2).clone()]
    }

    /// Coordinates on the `Sym0` basis; `d1 (E11-E22) + (d1+d2) (E22-E33)`.
    fn sym_coords(&self, a: &Mat<F::Elem>) -> [F::Elem; 5] {
        let f = self.f;
        [
            a.get(0, 0).clone(),
            f.add(a.get(0, 0), a.get(1, 1)),
            a.get(0, 1).clone(),
            a.get(0, 2).clone(),
            a.get(1, 2).clone(),
        ]
    }

    /// Adds `c · x ⊗ y` where `x ⊗ y` lies in `U` (`first_skew`) or `U'`.
    fn add_simple(&self, out: &mut [F::Elem], first_skew: bool, x: &Mat<F::Elem>, y: &Mat<F::Elem>, c: &F::Elem) {
        let f = self.f;
        if first_skew {
            let (xs, ys) = (self.so_coords(x), self.sym_coords(y));
            for (p, xp) in xs.iter().enumerate() {
                for (q, yq) in ys.iter().enumerate() {
                    f.mul_add_assign(&mut out[5 * p + q], c, &f.mul(xp, yq));
                }
            }
        } else {
            let (xs, ys) = (self.sym_coords(x), self.so_coords(y));
            for (q, xq) in xs.iter().enumerate() {
                for (p, yp) in ys.iter().enumerate() {
                    f.mul_add_assign(&mut out[15 + 3 * q + p], c, &f.mul(xq, yp));
                }
            }
        }
    }

    /// Basis vector `i` as `(in U, first factor, second factor)`.
    fn factor(&self, i: usize) -> (bool, &Mat<F::Elem>, &Mat<F::Elem>) {
        if i < 15 {
            (true, &self.so[i / 5], &self.sym[i % 5])
        } else {
            let j = i - 15;
            (false, &self.sym[j / 3], &self.so[j % 3])
        }
    }

    fn binary(&self, i: usize, j: usize) -> Result<Vec<F::Elem>, AlgebraError> {
        let f = self.f;
        let half = f.from_ratio(1, 2)?;
        let mut out = vec![f.zero(); 30];
        let (ui, x1, y1) = self.factor(i);
        let (uj, x2, y2) = self.factor(j);
        match (ui, uj) {
            // (a⊗s)·(b⊗t) and (s'⊗a')·(t'⊗b') share one shape: the bracket
            // of the first factors pairs with the traceless anticommutator
            (true, true) | (false, false) => {
                self.add_simple(&mut out, true, &self.bracket(x1, x2), &self.anti0(y1, y2)?, &half);
                self.add_simple(&mut out, false, &self.anti0(x1, x2)?, &self.bracket(y1, y2), &half);
            }
            (true, false) => {
                // (a⊗s)·(s'⊗a') = ½(as'+s'a)⊗[s,a'] + ½[a,s']⊗(sa'+a's)
                self.add_simple(&mut out, true, &self.anti(x1, x2), &self.bracket(y1, y2), &half);
                self.add_simple(&mut out, false, &self.bracket(x1, x2), &self.anti(y1, y2), &half);
            }
            (false, true) => {
                let v = self.binary(j, i)?;
                out = v.iter().map(|c| f.neg(c)).collect();
            }
        }
        Ok(out)
    }

    fn ternary(&self, i: usize, j: usize, k: usize) -> Result<Vec<F::Elem>, AlgebraError> {
        let f = self.f;
        let third = f.from_ratio(1, 3)?;
        let mut out = vec![f.zero(); 30];
        let (ui, x1, y1) = self.factor(i);
        let (uj, x2, y2) = self.factor(j);
        let (uk, x3, y3) = self.factor(k);
        if ui != uj {
            return Ok(out);
        }
        // both in U: ⅓tr(st)[[a,b],z1]⊗z2 + ⅓tr(ab) z1⊗[[s,t],z2] with z = x3⊗y3;
        // both in U' the roles of the factors swap
        let c1 = f.mul(&third, &self.tr_prod(y1, y2));
        let c2 = f.mul(&third, &self.tr_prod(x1, x2));
        let left = self.bracket(&self.bracket(x1, x2), x3);
        let right = self.bracket(&self.bracket(y1, y2), y3);
        self.add_simple(&mut out, uk, &left, y3, &c1);
        self.add_simple(&mut out, uk, x3, &right, &c2);
        Ok(out)
    }
}

pub fn build_ly4_tensor<F: Field>(field: F) -> Result<StructureConstantAlgebra<F>, AlgebraError> {
    let ctx = Ctx::new(&field);
    StructureConstantAlgebra::from_fn("ly4-tensor", Some(4), field.clone(), OpSet::ly(), 30, |k, t| {
        if k == 0 {
            ctx.binary(t[0], t[1])
        } else {
            ctx.ternary(t[0], t[1], t[2])
        }
    })
}
