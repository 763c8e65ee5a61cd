//! Experiment drivers comparing realisability with provability.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::basis::{basis_one, basis_par_with, Basis};
use super::opponents::OpponentMode;
use super::realize::{realizes, RealizeError};
use crate::correctness::{dr_check, sequentialize};
use crate::logic::{testable, Formula, Proof, ProofMode, Sequent};
use crate::net::{LinkId, LinkLabel, Net};
use crate::rewrite::{interaction, reach, BudgetExceeded, Outcome, SearchConfig, Strategy};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("basis {0} is not approximable")]
    NotApproximable(String),
    #[error("link {0} is not a daimon of the net")]
    NotDaimon(LinkId),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyFailure {
    pub item: String,
    pub sequent: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdequacyReport {
    pub checked: usize,
    /// Items with an empty conclusion, which have no opponents.
    pub skipped: usize,
    pub failures: Vec<AdequacyFailure>,
}

/// Checks that each net realises its sequent, itemizing failures.
pub fn adequacy_on_nets(
    items: &[(String, Net, Sequent)],
    basis: &Basis,
    mode: OpponentMode,
    cfg: &SearchConfig,
) -> AdequacyReport {
    let mut report = AdequacyReport::default();
    for (item, net, gamma) in items {
        if gamma.is_empty() {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let reason = match realizes(net, gamma, basis, mode, cfg) {
            Ok(true) => continue,
            Ok(false) => "an opponent is not orthogonal".to_string(),
            Err(e) => e.to_string(),
        };
        report.failures.push(AdequacyFailure {
            item: item.clone(),
            sequent: gamma.to_string(),
            reason,
        });
    }
    report
}

/// Every proof's net realises the proof's conclusion. The basis must be
/// approximable.
pub fn adequacy_experiment(
    proofs: &[Proof],
    basis: &Basis,
    mode: OpponentMode,
    cfg: &SearchConfig,
) -> Result<AdequacyReport, ExperimentError> {
    if !basis.is_approximable() {
        return Err(ExperimentError::NotApproximable(basis.name.clone()));
    }
    let mut items = Vec::new();
    let mut invalid = Vec::new();
    for p in proofs {
        match p.conclusion(ProofMode::MllDaimon) {
            Ok(g) => items.push((p.to_string(), p.desequentialize(), g)),
            Err(e) => invalid.push(AdequacyFailure {
                item: p.to_string(),
                sequent: String::new(),
                reason: e.to_string(),
            }),
        }
    }
    let mut report = adequacy_on_nets(&items, basis, mode, cfg);
    report.checked += invalid.len();
    report.failures.extend(invalid);
    Ok(report)
}

/// Variables occurring in a sequent.
pub fn variables(gamma: &Sequent) -> BTreeSet<String> {
    gamma
        .0
        .iter()
        .flat_map(|f| f.literals())
        .filter_map(|l| match l {
            Formula::Var { name, .. } => Some(name.to_string()),
            _ => None,
        })
        .collect()
}

/// Realises `gamma` under the unary-daimon basis with both opponent kinds,
/// and under the disconnected-par basis for every choice of variable
/// polarities.
pub fn mll_realizes(net: &Net, gamma: &Sequent, cfg: &SearchConfig) -> Result<bool, RealizeError> {
    if !realizes(net, gamma, &basis_one(), OpponentMode::Both, cfg)? {
        return Ok(false);
    }
    let vars: Vec<String> = variables(gamma).into_iter().collect();
    for mask in 0u32..(1 << vars.len()) {
        let flipped: BTreeSet<String> = vars
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, v)| v.clone())
            .collect();
        if !realizes(net, gamma, &basis_par_with(&flipped), OpponentMode::Basis, cfg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every daimon leaf of the proof is an axiom on a literal and its dual.
pub fn has_axiom_shape(p: &Proof) -> bool {
    match p {
        Proof::Daimon(g) => g.len() == 2 && g.0[0].is_var() && g.0[1] == g.0[0].dual(),
        Proof::Ax(a) => a.is_var(),
        _ => p.children().into_iter().all(has_axiom_shape),
    }
}

/// `net` sequentializes against `gamma` into a proof whose leaves are all
/// atomic axioms.
pub fn mll_provable(net: &Net, gamma: &Sequent) -> bool {
    sequentialize(net, gamma).is_some_and(|p| has_axiom_shape(&p))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub checked: usize,
    pub realized: usize,
    pub correct: usize,
    /// Realise the sequent without being testable and correct.
    pub forward_counterexamples: Vec<String>,
    /// Testable and correct without realising the sequent.
    pub converse_counterexamples: Vec<String>,
    pub binary_checked: usize,
    pub mll_provable: usize,
    /// Binary-daimon nets where the two discriminations disagree.
    pub mll_disagreements: Vec<String>,
}

impl CompletenessReport {
    pub fn counterexamples(&self) -> usize {
        self.forward_counterexamples.len()
            + self.converse_counterexamples.len()
            + self.mll_disagreements.len()
    }
}

/// Compares realisation under the unary-daimon basis with testability and
/// correctness on cut-free nets and, for nets whose daimons are all binary,
/// the combined basis check with atomic-axiom provability.
pub fn completeness_experiment(
    corpus: &[(Net, Sequent)],
    cfg: &SearchConfig,
) -> Result<CompletenessReport, ExperimentError> {
    let mut r = CompletenessReport::default();
    for (net, gamma) in corpus {
        let describe = || format!("{} against {gamma}", net.to_string().trim_end().replace('\n', "; "));
        r.checked += 1;
        let real = realizes(net, gamma, &basis_one(), OpponentMode::Both, cfg)?;
        let correct = matches!(testable(net, gamma, false), Ok(Some(_))) && dr_check(net).correct;
        r.realized += real as usize;
        r.correct += correct as usize;
        if real && !correct {
            r.forward_counterexamples.push(describe());
        }
        if correct && !real {
            r.converse_counterexamples.push(describe());
        }
        let binary = net.is_cut_free()
            && net.daimons().all(|d| d.targets().len() == 2)
            && net.count(LinkLabel::Daimon) > 0;
        if binary {
            r.binary_checked += 1;
            let proved = mll_provable(net, gamma);
            r.mll_provable += proved as usize;
            if mll_realizes(net, gamma, cfg)? != proved {
                r.mll_disagreements.push(describe());
            }
        }
    }
    Ok(r)
}

fn exhaustive(cfg: &SearchConfig) -> SearchConfig {
    SearchConfig {
        strategy: Strategy::Exhaustive,
        ..*cfg
    }
}

fn reaches_daimon(net: &Net, n: usize, cfg: &SearchConfig) -> Result<bool, BudgetExceeded> {
    let goal = |m: &Net| m.is_single_daimon() && m.arity() == n;
    Ok(matches!(reach(net, &exhaustive(cfg), goal)?, Outcome::Found { .. }))
}

/// For `s` orthogonal to `t`: merging daimon `d` of `s` with a fresh `n`-ary
/// daimon gives a net whose interaction with `t` reaches the `n`-ary daimon.
pub fn merge_compute_check(
    s: &Net,
    t: &Net,
    d: LinkId,
    n: usize,
    cfg: &SearchConfig,
) -> Result<bool, ExperimentError> {
    let m = s
        .merge(d, &Net::daimon(n), LinkId(0))
        .map_err(|_| ExperimentError::NotDaimon(d))?;
    Ok(reaches_daimon(&interaction(&m, t), n, cfg)?)
}

/// The daimon with `k + 2` conclusions, its first two cut against `s` and
/// `sbar`, reaches the daimon with `k` conclusions.
pub fn local_duality_check(s: &Net, sbar: &Net, k: usize, cfg: &SearchConfig) -> Result<bool, BudgetExceeded> {
    let i = interaction(&Net::daimon(k + 2), &s.parallel(sbar));
    reaches_daimon(&i, k, cfg)
}
