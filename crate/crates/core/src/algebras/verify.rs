//! Checking polynomial identities in a concrete algebra.
//!
//! Exhaustive mode substitutes basis vectors in every slot, repetitions
//! included, so a pass proves the identity. Random mode substitutes
//! `trials` independent random vectors; trial `i` draws from the ChaCha
//! stream `i` of the seed, so a failing trial is reproducible on its own.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eval::{combine, EvalPlan, Evaluator, FastEval};
use super::table::{index_tuple, StructureConstantAlgebra};
use super::AlgebraError;
use crate::exactfield::Field;
use crate::freeops::{FreeError, IntPoly, Monomial};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum VerifyMode {
    Exhaustive,
    Random { trials: usize, seed: u64 },
}

/// Where an identity failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Witness {
    /// Basis indices substituted for the variables.
    Basis(Vec<usize>),
    /// Index of the random trial.
    Trial(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: String,
    pub degree: usize,
    pub holds: bool,
    /// Substitutions evaluated.
    pub checked: usize,
    pub witness: Option<Witness>,
    /// The nonzero value at the witness, as text.
    pub value: Option<String>,
}

struct Prepared<F: FastEval> {
    plan: EvalPlan,
    coeffs: Vec<F::Elem>,
}

fn prepare_poly<F: FastEval>(alg: &StructureConstantAlgebra<F>, poly: &IntPoly) -> Result<Prepared<F>, AlgebraError> {
    if **poly.ops() != **alg.ops() {
        return Err(FreeError::OpsMismatch.into());
    }
    let f = alg.field();
    let (monos, coeffs): (Vec<Monomial>, Vec<F::Elem>) = poly.terms().map(|(m, c)| (*m, f.from_bigint(c))).unzip();
    Ok(Prepared { plan: EvalPlan::new(alg.ops(), poly.degree(), &monos)?, coeffs })
}

fn value_at<F: FastEval>(ev: &F::Prepared, p: &Prepared<F>, inputs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    combine(ev.field(), &ev.evaluate(&p.plan, inputs), &p.coeffs, ev.dim())
}

/// The value of `poly` at `inputs`, one coordinate vector per variable.
pub fn evaluate<F: FastEval>(
    alg: &StructureConstantAlgebra<F>,
    poly: &IntPoly,
    inputs: &[Vec<F::Elem>],
) -> Result<Vec<F::Elem>, AlgebraError> {
    if inputs.len() != poly.degree() {
        return Err(AlgebraError::DimensionMismatch { expected: poly.degree(), found: inputs.len() });
    }
    if let Some(v) = inputs.iter().find(|v| v.len() != alg.dim()) {
        return Err(AlgebraError::DimensionMismatch { expected: alg.dim(), found: v.len() });
    }
    let p = prepare_poly(alg, poly)?;
    Ok(value_at(&F::prepare(alg), &p, inputs))
}

/// Random vectors for trial `trial` of `seed`.
pub fn random_inputs<F: Field>(field: &F, dim: usize, degree: usize, seed: u64, trial: usize) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    (0..degree).map(|_| (0..dim).map(|_| field.random_elem(&mut rng)).collect()).collect()
}

fn fmt_vec<F: Field>(f: &F, v: &[F::Elem]) -> String {
    let parts: Vec<String> = v.iter().map(|x| f.fmt_elem(x)).collect();
    format!("[{}]", parts.join(", "))
}

const CHUNK: usize = 1024;

fn check_one<F: FastEval>(
    alg: &StructureConstantAlgebra<F>,
    ev: &F::Prepared,
    name: &str,
    poly: &IntPoly,
    mode: VerifyMode,
    parallel: bool,
) -> Result<AxiomResult, AlgebraError> {
    let f = alg.field();
    let m = alg.dim();
    let d = poly.degree();
    let p = prepare_poly(alg, poly)?;
    let (total, inputs_for): (usize, Box<dyn Fn(usize) -> Vec<Vec<F::Elem>> + Sync>) = match mode {
        VerifyMode::Exhaustive => {
            let total = m.checked_pow(d as u32).ok_or(AlgebraError::TooLarge(m))?;
            let unit = move |i: usize| {
                let mut v = vec![f.zero(); m];
                v[i] = f.one();
                v
            };
            (total, Box::new(move |idx| index_tuple(idx, m, d).into_iter().map(unit).collect()))
        }
        VerifyMode::Random { trials, seed } => (trials, Box::new(move |t| random_inputs(f, m, d, seed, t))),
    };
    let mut start = 0;
    while start < total {
        let len = CHUNK.min(total - start);
        let found = par::map_range(len, parallel, |i| {
            let v = value_at(ev, &p, &inputs_for(start + i));
            v.iter().any(|x| !f.is_zero(x)).then_some(v)
        });
        if let Some((i, v)) = found.into_iter().enumerate().find_map(|(i, v)| v.map(|v| (i, v))) {
            let idx = start + i;
            let witness = match mode {
                VerifyMode::Exhaustive => Witness::Basis(index_tuple(idx, m, d)),
                VerifyMode::Random { .. } => Witness::Trial(idx),
            };
            return Ok(AxiomResult {
                name: name.to_string(),
                degree: d,
                holds: false,
                checked: idx + 1,
                witness: Some(witness),
                value: Some(fmt_vec(f, &v)),
            });
        }
        start += len;
    }
    Ok(AxiomResult { name: name.to_string(), degree: d, holds: true, checked: total, witness: None, value: None })
}

/// Checks each named identity and reports the first failing substitution.
pub fn verify_axioms<F: FastEval>(
    alg: &StructureConstantAlgebra<F>,
    identities: &[(String, IntPoly)],
    mode: VerifyMode,
    parallel: bool,
) -> Result<Vec<AxiomResult>, AlgebraError> {
    let ev = F::prepare(alg);
    identities.iter().map(|(name, poly)| check_one(alg, &ev, name, poly, mode, parallel)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::PrimeField;
    use crate::freeops::{catalog_identity, OpSet};

    #[test]
    fn zero_algebra_satisfies_everything() {
        let f = PrimeField::new(103).unwrap();
        let alg = StructureConstantAlgebra::zero("zero", f, OpSet::ly(), 3).unwrap();
        let ids: Vec<(String, IntPoly)> =
            ["LY3", "LY4", "LY6"].iter().map(|n| (n.to_string(), catalog_identity(n).unwrap())).collect();
        for r in verify_axioms(&alg, &ids, VerifyMode::Exhaustive, true).unwrap() {
            assert!(r.holds, "{}", r.name);
        }
    }

    #[test]
    fn random_inputs_are_reproducible_per_trial() {
        let f = PrimeField::new(103).unwrap();
        assert_eq!(random_inputs(&f, 5, 3, 7, 4), random_inputs(&f, 5, 3, 7, 4));
        assert_ne!(random_inputs(&f, 5, 3, 7, 4), random_inputs(&f, 5, 3, 7, 5));
    }
}
