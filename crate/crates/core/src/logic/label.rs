//! Formula labellings of cut-free nets.

use std::collections::BTreeMap;

use thiserror::Error;

use super::formula::{Formula, Sequent, PATTERN_VAR};
use crate::net::{extract_daimons, Link, LinkId, LinkLabel, Net, NetError, Pos};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("net has {net} conclusions but the sequent has {sequent} formulas")]
    Arity { net: usize, sequent: usize },
    #[error("labelling needs a cut-free net")]
    CutsPresent,
}

/// A formula for every position of a cut-free net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labelling(pub BTreeMap<Pos, Formula>);

impl Labelling {
    pub fn get(&self, p: Pos) -> Option<&Formula> {
        self.0.get(&p)
    }

    /// True when every daimon target is labelled by a variable.
    pub fn is_atomic(&self, net: &Net) -> bool {
        net.daimons()
            .flat_map(|d| d.targets())
            .all(|p| self.0.get(p).is_some_and(Formula::is_var))
    }
}

/// The labelling of `net` sending its conclusions to `gamma`, if any.
/// Labels are forced from the conclusions upwards, so the labelling is
/// unique when it exists. With `atomic`, daimon targets must receive
/// variables.
pub fn testable(net: &Net, gamma: &Sequent, atomic: bool) -> Result<Option<Labelling>, LabelError> {
    if !net.is_cut_free() {
        return Err(LabelError::CutsPresent);
    }
    if net.arity() != gamma.len() {
        return Err(LabelError::Arity {
            net: net.arity(),
            sequent: gamma.len(),
        });
    }
    let idx = net.index();
    let mut tau: BTreeMap<Pos, Formula> = BTreeMap::new();
    let mut stack: Vec<(Pos, Formula)> = net
        .arrangement()
        .iter()
        .copied()
        .zip(gamma.0.iter().cloned())
        .collect();
    while let Some((p, a)) = stack.pop() {
        if tau.insert(p, a.clone()).is_some() {
            return Ok(None);
        }
        let link = &net.links()[idx.producer[&p].0];
        let s = link.sources();
        match (link.label(), &a) {
            (LinkLabel::Daimon, _) => {
                if atomic && !a.is_var() {
                    return Ok(None);
                }
            }
            (LinkLabel::Tensor, Formula::Tensor(l, r)) | (LinkLabel::Par, Formula::Par(l, r)) => {
                stack.push((s[0], (**l).clone()));
                stack.push((s[1], (**r).clone()));
            }
            _ => return Ok(None),
        }
    }
    // Positions not above any conclusion lie on a cycle of connectives,
    // which no finite formula can label.
    if tau.len() != net.positions().len() {
        return Ok(None);
    }
    Ok(Some(Labelling(tau)))
}

/// The daimon part of a cut-free net and the formula pattern, over the
/// reserved variable, of the connective tree above each conclusion.
pub fn decompose(net: &Net) -> Result<(Net, Vec<Formula>), NetError> {
    let daimons = extract_daimons(net)?;
    let idx = net.index();
    fn pattern(net: &Net, idx: &crate::net::NetIndex, p: Pos) -> Formula {
        let link = &net.links()[idx.producer[&p].0];
        let s = link.sources();
        match link.label() {
            LinkLabel::Tensor => Formula::tensor(pattern(net, idx, s[0]), pattern(net, idx, s[1])),
            LinkLabel::Par => Formula::par(pattern(net, idx, s[0]), pattern(net, idx, s[1])),
            _ => Formula::var(PATTERN_VAR),
        }
    }
    let patterns = net.arrangement().iter().map(|&c| pattern(net, &idx, c)).collect();
    Ok((daimons, patterns))
}

/// The syntax forest of `formulas` with its leaves, numbered from 0 in
/// natural order (conclusion, then left before right), grouped into one
/// daimon per class of `grouping`. Positions are named `{prefix}1, ...`.
pub fn syntax_forest(formulas: &[Formula], grouping: &[Vec<usize>], prefix: &str) -> Net {
    struct Build {
        links: Vec<Link>,
        leaves: Vec<Pos>,
        next: u32,
    }
    impl Build {
        fn fresh(&mut self) -> Pos {
            self.next += 1;
            Pos(self.next - 1)
        }
        fn tree(&mut self, f: &Formula) -> Pos {
            match f {
                Formula::Var { .. } => {
                    let p = self.fresh();
                    self.leaves.push(p);
                    p
                }
                Formula::Tensor(a, b) | Formula::Par(a, b) => {
                    let l = self.tree(a);
                    let r = self.tree(b);
                    let p = self.fresh();
                    let label = if matches!(f, Formula::Tensor(..)) {
                        LinkLabel::Tensor
                    } else {
                        LinkLabel::Par
                    };
                    let id = LinkId(self.links.len() as u32);
                    self.links.push(Link::raw(id, label, vec![l, r], vec![p]));
                    p
                }
            }
        }
    }
    let mut b = Build {
        links: Vec::new(),
        leaves: Vec::new(),
        next: 0,
    };
    let roots: Vec<Pos> = formulas.iter().map(|f| b.tree(f)).collect();
    let mut links: Vec<Link> = grouping
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let targets = class.iter().map(|&k| b.leaves[k]).collect();
            Link::raw(LinkId(i as u32), LinkLabel::Daimon, vec![], targets)
        })
        .collect();
    let offset = links.len() as u32;
    links.extend(b.links.into_iter().map(|l| {
        Link::raw(
            LinkId(l.id().0 + offset),
            l.label(),
            l.sources().to_vec(),
            l.targets().to_vec(),
        )
    }));
    Net::from_parts(links, roots, Default::default()).with_generated_names(prefix)
}

/// Number of variable occurrences in a sequent.
pub fn leaf_count(gamma: &Sequent) -> usize {
    gamma.0.iter().map(Formula::leaves).sum()
}
