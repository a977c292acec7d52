//! The 7-dimensional LY algebra on binary sextics via transvections.
//!
//! `P(k)` is the space of forms of degree `k` in `x, y`, stored as the
//! coefficients of `x^(k-i) y^i`. The products on `P(6)` are
//! `m1 · m2 = 10 (m1 m2)_3` and `{m1, m2, m3} = c ((m1 m2)_5, m3)_1` with
//! `(f, g)_r` the unnormalized transvectant below.
//!
//! Rescaling `m ↦ s m` sends the pair of coefficients `(10, c)` to
//! `(10 s, c s^2)`, so only `c / 100` matters. It is fixed by the cyclic
//! identity `Σ [[a,b],c] + Σ {a,b,c} = 0`: on `(xy^5, x^4y^2, x^2y^4)` the
//! unscaled cyclic sums are `-2073600 x^5 y` and `69120 x^5 y`, so
//! `c = 100 * 2073600 / 69120 = 3000`.

use super::table::StructureConstantAlgebra;
use super::AlgebraError;
use crate::exactfield::Field;
use crate::freeops::OpSet;

/// A binary form with integer coefficients; `c[i]` multiplies `x^(k-i) y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub c: Vec<i64>,
}

fn falling(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    (n - k + 1..=n).map(|x| x as i64).product()
}

fn binom(n: usize, k: usize) -> i64 {
    falling(n, k) / falling(k, k)
}

impl Form {
    pub fn monomial(k: usize, i: usize) -> Form {
        let mut c = vec![0; k + 1];
        c[i] = 1;
        Form { c }
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    /// `∂^(a+b) / ∂x^a ∂y^b`
    pub fn derivative(&self, a: usize, b: usize) -> Form {
        let k = self.degree();
        if a + b > k {
            return Form { c: vec![0] };
        }
        let mut out = vec![0; k - a - b + 1];
        for (i, &ci) in self.c.iter().enumerate() {
            if ci == 0 || i < b || k - i < a {
                continue;
            }
            out[i - b] += ci * falling(k - i, a) * falling(i, b);
        }
        Form { c: out }
    }

    pub fn mul(&self, other: &Form) -> Form {
        let mut out = vec![0; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Form { c: out }
    }

    fn add_scaled(&mut self, other: &Form, s: i64) {
        for (a, b) in self.c.iter_mut().zip(&other.c) {
            *a += s * b;
        }
    }
}

/// `(f g)_r = sum_i (-1)^i C(r,i) ∂^r f/∂x^(r-i)∂y^i · ∂^r g/∂x^i∂y^(r-i)`.
pub fn transvectant(f: &Form, g: &Form, r: usize) -> Form {
    let deg = (f.degree() + g.degree()).checked_sub(2 * r).expect("transvectant order too large");
    let mut out = Form { c: vec![0; deg + 1] };
    for i in 0..=r {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let term = f.derivative(r - i, i).mul(&g.derivative(i, r - i));
        out.add_scaled(&term, sign * binom(r, i));
    }
    out
}

/// Coefficient of the ternary product; see the module notes.
pub const TERNARY_SCALE: i64 = 3000;

pub fn build_ly3_transvection<F: Field>(field: F) -> Result<StructureConstantAlgebra<F>, AlgebraError> {
    let basis: Vec<Form> = (0..=6).map(|i| Form::monomial(6, i)).collect();
    let f = &field;
    let ternary_scale = f.from_i64(TERNARY_SCALE);
    StructureConstantAlgebra::from_fn("ly3-transvection", Some(3), field.clone(), OpSet::ly(), 7, |k, t| {
        let out = if k == 0 {
            let p = transvectant(&basis[t[0]], &basis[t[1]], 3);
            p.c.iter().map(|&c| f.from_i64(10 * c)).collect()
        } else {
            let l = transvectant(&basis[t[0]], &basis[t[1]], 5);
            let p = transvectant(&l, &basis[t[2]], 1);
            p.c.iter().map(|&c| f.mul(&ternary_scale, &f.from_i64(c))).collect()
        };
        Ok(out)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvectant_oracles() {
        let x6 = Form::monomial(6, 0);
        let y6 = Form::monomial(6, 6);
        // only the i = 0 term survives: ∂^5 x^6 / ∂x^5 = 720 x
        assert_eq!(transvectant(&x6, &y6, 5).c, vec![0, 518400, 0]);
        assert_eq!(transvectant(&x6, &y6, 3).c, vec![0, 0, 0, 14400, 0, 0, 0]);
        let m = Form { c: vec![3, -1, 4, 1, -5, 9, 2] };
        assert!(transvectant(&m, &m, 5).c.iter().all(|&c| c == 0));
        assert!(transvectant(&m, &m, 3).c.iter().all(|&c| c == 0));
    }

    #[test]
    fn cyclic_sums_fix_the_ternary_scale() {
        let m: Vec<Form> = (0..7).map(|i| Form::monomial(6, i)).collect();
        let (a, b, c) = (&m[1], &m[2], &m[4]);
        let br = |f: &Form, g: &Form| transvectant(f, g, 3);
        let tr = |f: &Form, g: &Form, h: &Form| transvectant(&transvectant(f, g, 5), h, 1);
        let mut jac = br(&br(a, b), c);
        jac.add_scaled(&br(&br(b, c), a), 1);
        jac.add_scaled(&br(&br(c, a), b), 1);
        let mut t = tr(a, b, c);
        t.add_scaled(&tr(b, c, a), 1);
        t.add_scaled(&tr(c, a, b), 1);
        assert_eq!(jac.c, vec![0, -2073600, 0, 0, 0, 0, 0]);
        assert_eq!(t.c, vec![0, 69120, 0, 0, 0, 0, 0]);
        assert_eq!(100 * 2073600 / 69120, TERNARY_SCALE);
    }

    #[test]
    fn derivative_of_monomial() {
        // ∂^2/∂x∂y of x^4 y^2 = 8 x^3 y
        let f = Form::monomial(6, 2);
        assert_eq!(f.derivative(1, 1).c, vec![0, 8, 0, 0, 0]);
    }
}
