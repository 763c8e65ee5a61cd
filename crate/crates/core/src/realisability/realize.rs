//! Checking a net against a finite opponent set.

use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::basis::Basis;
use super::opponents::{opponents_for, Opponent, OpponentMode, Provenance};
use crate::correctness::{classify_failure, FailureClass};
use crate::logic::Sequent;
use crate::net::Net;
use crate::rewrite::{interaction, orthogonal, redexes, step, BudgetExceeded, SearchConfig, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("net has {net} conclusions but the sequent has {sequent} formulas")]
    Arity { net: usize, sequent: usize },
    #[error("the sequent is empty")]
    EmptySequent,
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum OpponentVerdict {
    Orthogonal {
        witness: Witness,
    },
    NotOrthogonal {
        /// A normal form reached by always reducing the first redex.
        normal_form: String,
        class: Option<FailureClass>,
    },
    Indeterminate {
        budget: BudgetExceeded,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpponentResult {
    pub provenance: Provenance,
    pub opponent: String,
    #[serde(flatten)]
    pub verdict: OpponentVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeReport {
    pub sequent: String,
    pub basis: String,
    pub mode: OpponentMode,
    /// `Some(true)` when the net passes all finite opponents, `Some(false)`
    /// when some opponent is not orthogonal, `None` when undecided.
    pub passes_all_finite_opponents: Option<bool>,
    pub results: Vec<OpponentResult>,
}

/// The normal form reached by always reducing the first available redex.
pub fn first_normal_form(net: &Net, cfg: &SearchConfig) -> Net {
    let mut n = net.clone();
    while let Some(c) = redexes(&n, cfg.split_mode).into_iter().next() {
        n = step(&n, &c).expect("redexes are legal");
    }
    n
}

fn check_args(s: &Net, gamma: &Sequent) -> Result<(), RealizeError> {
    if gamma.is_empty() {
        return Err(RealizeError::EmptySequent);
    }
    if s.arity() != gamma.len() {
        return Err(RealizeError::Arity {
            net: s.arity(),
            sequent: gamma.len(),
        });
    }
    Ok(())
}

/// Judges `s` against every opponent, in parallel.
pub fn against(s: &Net, opponents: &[Opponent], cfg: &SearchConfig) -> Vec<OpponentResult> {
    opponents
        .par_iter()
        .map(|o| OpponentResult {
            provenance: o.provenance,
            opponent: o.net.to_string(),
            verdict: match orthogonal(s, &o.net, cfg) {
                Verdict::Orthogonal(witness) => OpponentVerdict::Orthogonal { witness },
                Verdict::NotOrthogonal => {
                    let nf = first_normal_form(&interaction(s, &o.net), cfg);
                    OpponentVerdict::NotOrthogonal {
                        class: classify_failure(&nf),
                        normal_form: nf.to_string(),
                    }
                }
                Verdict::Indeterminate(budget) => OpponentVerdict::Indeterminate { budget },
            },
        })
        .collect()
}

/// Full per-opponent report for `s` against the opponents of `gamma`.
pub fn realize_report(
    s: &Net,
    gamma: &Sequent,
    basis: &Basis,
    mode: OpponentMode,
    cfg: &SearchConfig,
) -> Result<RealizeReport, RealizeError> {
    check_args(s, gamma)?;
    let results = against(s, &opponents_for(gamma, basis, mode), cfg);
    let passes = if results
        .iter()
        .any(|r| matches!(r.verdict, OpponentVerdict::NotOrthogonal { .. }))
    {
        Some(false)
    } else if results
        .iter()
        .any(|r| matches!(r.verdict, OpponentVerdict::Indeterminate { .. }))
    {
        None
    } else {
        Some(true)
    };
    Ok(RealizeReport {
        sequent: gamma.to_string(),
        basis: basis.name.clone(),
        mode,
        passes_all_finite_opponents: passes,
        results,
    })
}

/// True when `s` is orthogonal to every opponent of `gamma`. An undecided
/// opponent is an error unless another opponent already fails.
pub fn realizes(
    s: &Net,
    gamma: &Sequent,
    basis: &Basis,
    mode: OpponentMode,
    cfg: &SearchConfig,
) -> Result<bool, RealizeError> {
    check_args(s, gamma)?;
    passes_all(s, &opponents_for(gamma, basis, mode), cfg)
}

/// True when `s` is orthogonal to every net of `opponents`. Stops as soon
/// as one opponent is found not orthogonal.
pub fn passes_all(s: &Net, opponents: &[Opponent], cfg: &SearchConfig) -> Result<bool, RealizeError> {
    let undecided: Mutex<Option<BudgetExceeded>> = Mutex::new(None);
    let failed = opponents
        .par_iter()
        .find_any(|o| match orthogonal(s, &o.net, cfg) {
            Verdict::Indeterminate(b) => {
                undecided.lock().expect("not poisoned").get_or_insert(b);
                false
            }
            v => !v.is_orthogonal(),
        })
        .is_some();
    if failed {
        return Ok(false);
    }
    match undecided.into_inner().expect("not poisoned") {
        Some(b) => Err(b.into()),
        None => Ok(true),
    }
}
