//! Discovery of polynomial identities: fill-and-reduce over GF(p), the
//! symmetric-group module generated by known identities, extraction of new
//! module generators, and rational reconstruction with a characteristic-0
//! check.

mod fill;
mod module;
mod reconstruct;
mod search;
mod translate;

pub use fill::{fill_and_reduce, FillResult};
pub use module::{lifted_module, module_generators, same_module_over, to_sparse, LiftedModule, ModuleGenerators, OrbitStrategy, SymmetricModule};
pub use reconstruct::{reconstruct_identity, reconstruct_sparse, integer_poly};
pub use search::{
    default_known, new_identities, new_identities_with, verify_char0, IdentityReport, KnownIdentity, NewGenerator, Timings,
};
pub use translate::translated_ly_identities;

use serde::{Deserialize, Serialize};

use crate::algebras::AlgebraError;
use crate::exactfield::{FieldError, PrimeField};
use crate::freeops::{FreeError, OpSelection};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IdError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Free(#[from] FreeError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("rank {rank} still changing after the cap of {cap} iterations")]
    CapExceeded { cap: usize, rank: usize },
    #[error("coefficient of column {column} ({residue} mod {p}) has no rational reconstruction; rerun with a larger prime")]
    Reconstruction { column: usize, residue: u32, p: u32 },
    #[error("invalid configuration: {0}")]
    Config(String),
}

/// Parameters of one degree-`d` search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub prime: u32,
    pub sqrt2: u32,
    pub seed: u64,
    /// Consecutive iterations without rank change that end the fill.
    pub stabilize: usize,
    pub degree: usize,
    #[serde(with = "selection")]
    pub ops: OpSelection,
    /// Iteration cap; `None` means `max(200, 2 ceil(q/m) + s)`.
    pub cap: Option<usize>,
    pub orbit: OrbitStrategy,
    #[serde(skip, default = "yes")]
    pub parallel: bool,
}

fn yes() -> bool {
    true
}

mod selection {
    use super::OpSelection;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: &OpSelection, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(s.name())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<OpSelection, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl SearchConfig {
    /// Defaults: p = 103 with √2 ≡ 38, seed 1, s = 10.
    pub fn new(degree: usize, ops: OpSelection) -> Self {
        SearchConfig {
            prime: 103,
            sqrt2: 38,
            seed: 1,
            stabilize: 10,
            degree,
            ops,
            cap: None,
            orbit: OrbitStrategy::Auto,
            parallel: true,
        }
    }

    pub fn with_prime(mut self, prime: u32, sqrt2: u32) -> Self {
        self.prime = prime;
        self.sqrt2 = sqrt2;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }

    pub fn field(&self) -> Result<PrimeField, IdError> {
        Ok(PrimeField::with_sqrt2(self.prime, self.sqrt2)?)
    }

    /// The cap for `q` columns and `m` rows per iteration.
    pub fn cap_for(&self, q: usize, m: usize) -> usize {
        self.cap.unwrap_or_else(|| 200.max(2 * q.div_ceil(m.max(1)) + self.stabilize))
    }
}
