//! Small exhaustive and seeded generators of nets, proofs and reduction
//! paths.

mod paths;
mod proofs;
mod testable;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use paths::{random_formula, random_interaction, sample_paths, SampledPath};
pub use proofs::{daimon_leaves, enum_proofs, literals};
pub use testable::{bell, enum_testable, groupings, Groupings};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("sequent has {leaves} leaves, the bound is {max}")]
    TooManyLeaves { leaves: usize, max: usize },
    #[error("the sequent is empty")]
    EmptySequent,
    #[error("bounds must be positive")]
    ZeroBound,
}

/// Bounds for the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub max_leaves: usize,
    pub max_rules: usize,
    pub max_daimon_arity: usize,
    pub seed: u64,
}

impl Default for EnumSpec {
    fn default() -> EnumSpec {
        EnumSpec {
            max_leaves: 8,
            max_rules: 6,
            max_daimon_arity: 2,
            seed: 0,
        }
    }
}

impl EnumSpec {
    pub fn validate(&self) -> Result<(), EnumError> {
        if self.max_leaves == 0 || self.max_rules == 0 || self.max_daimon_arity == 0 {
            return Err(EnumError::ZeroBound);
        }
        Ok(())
    }
}
