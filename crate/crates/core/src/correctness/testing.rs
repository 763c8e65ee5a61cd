//! Tests of formulas, correctness by orthogonality to tests, and the shape
//! of failed interactions.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::switching::{all_switchings, up_initial, NaturalPartition};
use crate::logic::{syntax_forest, testable, Formula, Sequent};
use crate::net::{canonical_key, CanonMode, Net};
use crate::rewrite::{cuts, orthogonal, BudgetExceeded, CutKind, SearchConfig, Verdict};

/// The tests of `a`: syntax forests of `a⊥` whose daimon partition is the
/// partition induced by a switching of a witness of `a`. Sorted and free of
/// duplicates.
pub fn tests(a: &Formula) -> Vec<Net> {
    let n = a.leaves();
    let witness = syntax_forest(std::slice::from_ref(a), &[(0..n).collect()], "p");
    tests_from_witness(a, &witness)
}

/// Tests of `a` computed from a given net atomically testable by `a`.
pub fn tests_from_witness(a: &Formula, witness: &Net) -> Vec<Net> {
    let partitions: BTreeSet<NaturalPartition> = all_switchings(witness)
        .iter()
        .map(|sw| up_initial(witness, sw).expect("witness is a forest"))
        .collect();
    let dual = [a.dual()];
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for p in partitions {
        let grouping: Vec<Vec<usize>> = p
            .classes()
            .iter()
            .map(|c| c.iter().map(|x| x - 1).collect())
            .collect();
        let t = syntax_forest(&dual, &grouping, "q");
        if seen.insert(canonical_key(&t, CanonMode::Exact)) {
            out.push(t);
        }
    }
    out
}

/// Outcome of checking a net against all tuples of tests.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub passed: bool,
    /// Number of test tuples tried.
    pub tuples: usize,
    /// Index, per formula, of the first failing tuple.
    pub counterexample: Option<Vec<usize>>,
}

/// Orthogonality of `net` to every parallel tuple of tests of the formulas
/// of `gamma`. Nets that are not atomically testable by `gamma` fail
/// without interaction.
pub fn test_check(net: &Net, gamma: &Sequent, cfg: &SearchConfig) -> Result<TestOutcome, BudgetExceeded> {
    let atomic = net.is_cut_free() && matches!(testable(net, gamma, true), Ok(Some(_)));
    if !atomic || gamma.is_empty() {
        return Ok(TestOutcome {
            passed: false,
            tuples: 0,
            counterexample: None,
        });
    }
    let per: Vec<Vec<Net>> = gamma.0.iter().map(tests).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for ts in &per {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..ts.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    let verdicts: Vec<Verdict> = tuples
        .par_iter()
        .map(|idx| {
            let t = Net::parallel_all(idx.iter().zip(&per).map(|(i, ts)| &ts[*i])).expect("non-empty");
            orthogonal(net, &t, cfg)
        })
        .collect();
    for (idx, v) in tuples.iter().zip(&verdicts) {
        match v {
            Verdict::Indeterminate(b) => return Err(*b),
            Verdict::NotOrthogonal => {
                return Ok(TestOutcome {
                    passed: false,
                    tuples: tuples.len(),
                    counterexample: Some(idx.clone()),
                })
            }
            Verdict::Orthogonal(_) => {}
        }
    }
    Ok(TestOutcome {
        passed: true,
        tuples: tuples.len(),
        counterexample: None,
    })
}

/// Shapes of normal forms of interactions between a net and tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FailureClass {
    SingleDaimonZero,
    MultipleZeroDaimons(usize),
    CyclicCutStuck,
    ClashStuck,
}

/// Classifies a normal form; `None` when it has none of the expected shapes.
pub fn classify_failure(nf: &Net) -> Option<FailureClass> {
    if nf.is_daimon_zero() {
        return Some(FailureClass::SingleDaimonZero);
    }
    let k = nf.links().len();
    if k >= 2 && nf.daimons().count() == k && nf.daimons().all(|d| d.targets().is_empty()) {
        return Some(FailureClass::MultipleZeroDaimons(k));
    }
    let kinds: Vec<CutKind> = cuts(nf).into_iter().map(|(_, k)| k).collect();
    if kinds.contains(&CutKind::Glueing { cyclic: true }) {
        return Some(FailureClass::CyclicCutStuck);
    }
    if kinds.contains(&CutKind::Clash) {
        return Some(FailureClass::ClashStuck);
    }
    None
}
