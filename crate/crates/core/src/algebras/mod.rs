//! Concrete algebras as structure constants over an exact field: the
//! reductive matrix models, the small explicit constructions, evaluation
//! of free monomials and identity checking.

mod eval;
mod jordan;
pub mod matrix_model;
mod reductive;
mod table;
mod tensor;
mod transvection;
mod verify;

pub use eval::{
    combine, EvalPlan, Evaluator, ExactEvaluator, FastEval, GenericEvaluator, PrimeEvaluator, RingTables,
};
pub use jordan::{build_jordan_h, jordan_ops};
pub use matrix_model::{expected_dim_m, MatrixModel, Square};
pub use reductive::{build_ljy, build_ly};
pub use table::{reduce_qsqrt2, AnyAlgebra, Factorization, SparseRow, StructureConstantAlgebra, MAX_TABLE_ROWS};
pub use tensor::build_ly4_tensor;
pub use transvection::{build_ly3_transvection, transvectant, Form};
pub use verify::{evaluate, random_inputs, verify_axioms, AxiomResult, VerifyMode, Witness};

use crate::exactfield::FieldError;
use crate::freeops::FreeError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error("invalid model: {0}")]
    BadModel(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a table of dimension {0} is too large to store")]
    TooLarge(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed algebra JSON: {0}")]
    Json(String),
}
