//! Free multioperator algebras: association types, normal monomials,
//! multilinear polynomials, the symmetric-group action, liftings, shuffle
//! sums and a catalog of named identities.

mod basis;
pub mod catalog;
mod lifting;
mod monomial;
mod opset;
mod parse;
pub mod perm;
mod poly;
mod shuffle;
mod signature;
mod translate;
mod types;

pub use basis::MonomialBasis;
pub use catalog::{catalog_identity, catalog_identity_in};
pub use lifting::{dedup_up_to_sign, lift_once, lift_through, liftings};
pub use monomial::{var_name, Monomial, RawTree};
pub use opset::{OpSelection, OpSet};
pub use parse::{parse_poly, parse_shape, parse_tree};
pub use poly::{IntPoly, MultilinearPoly};
pub use shuffle::{shuffle_sum, shuffles};
pub use signature::{OperationSignature, SignedArrangement, SlotSwap};
pub use translate::ly_to_ljy;
pub use types::{AssociationType, TypeRegistry};

use crate::exactfield::FieldError;

/// Largest supported degree; monomial labels live in a fixed array.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error("invalid signature: {0}")]
    Signature(String),
    #[error("degree {0} is outside the supported range 1..={MAX_DEGREE}")]
    DegreeTooLarge(usize),
    #[error("not multilinear: {0}")]
    NotMultilinear(String),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),
    #[error("monomial {0} is outside the basis")]
    OutsideBasis(String),
    #[error("operation sets differ")]
    OpsMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}
