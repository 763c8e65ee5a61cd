//! Finite opponent sets for formulas and sequents.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::basis::Basis;
use crate::correctness::tests;
use crate::logic::{Formula, Sequent};
use crate::net::{canonical_key, CanonKey, CanonMode, LinkLabel, Net};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpponentMode {
    Tests,
    Basis,
    Both,
}

impl std::str::FromStr for OpponentMode {
    type Err = String;

    fn from_str(s: &str) -> Result<OpponentMode, String> {
        match s {
            "tests" => Ok(OpponentMode::Tests),
            "basis" => Ok(OpponentMode::Basis),
            "both" => Ok(OpponentMode::Both),
            _ => Err(format!("unknown mode `{s}`, expected tests, basis or both")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Test,
    Basis,
    User,
}

#[derive(Clone, Debug)]
pub struct Opponent {
    pub net: Net,
    pub provenance: Provenance,
}

fn dedup(nets: impl IntoIterator<Item = Net>) -> Vec<Net> {
    let mut seen: BTreeMap<CanonKey, Net> = BTreeMap::new();
    for n in nets {
        seen.entry(canonical_key(&n, CanonMode::Exact)).or_insert(n);
    }
    seen.into_values().collect()
}

/// Tensor link over the two conclusions of `n`.
fn join(n: &Net, label: LinkLabel) -> Net {
    let c = n.arrangement();
    n.with_link(label, vec![c[0], c[1]], |o| vec![o.expect("connective output")])
}

/// One-conclusion opponents of `a` built from the basis: literals take the
/// basis opponents, `A % B` a tensor over an opponent of each side, and
/// `A * B` a par over a merge of an opponent of each side.
pub fn formula_opponents(a: &Formula, basis: &Basis) -> Vec<Net> {
    match a {
        Formula::Var { name, positive } => dedup(basis.literal_opponents(name, *positive)),
        Formula::Par(l, r) => {
            let (ls, rs) = (formula_opponents(l, basis), formula_opponents(r, basis));
            dedup(
                ls.iter()
                    .flat_map(|x| rs.iter().map(move |y| join(&x.parallel(y), LinkLabel::Tensor))),
            )
        }
        Formula::Tensor(l, r) => {
            let (ls, rs) = (formula_opponents(l, basis), formula_opponents(r, basis));
            let mut out = Vec::new();
            for x in &ls {
                for y in &rs {
                    for d1 in x.daimons() {
                        for d2 in y.daimons() {
                            let m = x.merge(d1.id(), y, d2.id()).expect("daimons of the nets");
                            out.push(join(&m, LinkLabel::Par));
                        }
                    }
                }
            }
            dedup(out)
        }
    }
}

/// Parallel compositions of one opponent per formula.
fn tuples(per_formula: &[Vec<Net>]) -> Vec<Net> {
    let mut acc: Vec<Net> = vec![];
    for (i, set) in per_formula.iter().enumerate() {
        acc = if i == 0 {
            set.clone()
        } else {
            acc.iter().flat_map(|a| set.iter().map(move |b| a.parallel(b))).collect()
        };
    }
    acc
}

/// Opponents of the sequent `gamma`, sorted by canonical key. An opponent
/// found by both routes is tagged as a test.
pub fn opponents_for(gamma: &Sequent, basis: &Basis, mode: OpponentMode) -> Vec<Opponent> {
    let mut out: BTreeMap<CanonKey, Opponent> = BTreeMap::new();
    let mut add = |nets: Vec<Net>, provenance| {
        for net in nets {
            out.entry(canonical_key(&net, CanonMode::Exact))
                .or_insert(Opponent { net, provenance });
        }
    };
    if matches!(mode, OpponentMode::Tests | OpponentMode::Both) {
        let per: Vec<Vec<Net>> = gamma.0.iter().map(tests).collect();
        add(tuples(&per), Provenance::Test);
    }
    if matches!(mode, OpponentMode::Basis | OpponentMode::Both) {
        let per: Vec<Vec<Net>> = gamma.0.iter().map(|a| formula_opponents(a, basis)).collect();
        add(tuples(&per), Provenance::Basis);
    }
    out.into_values().collect()
}
