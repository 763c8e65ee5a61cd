//! Cut typing and single-step cut elimination.
//!
//! Every step preserves the conclusions and the arrangement of the net.
//! Fresh positions created by a step get the next free identifier and a
//! name derived from the position they replace.

pub mod oracles;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net::{Link, LinkId, LinkLabel, Net, Pos};

pub use search::{
    explore, normal_forms, orthogonal, reach, replay, BudgetExceeded, Node, Outcome,
    ReductionGraph, SearchConfig, Strategy, Verdict, Witness, WitnessStep,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CutKind {
    /// ⅋ against ⊗.
    Multiplicative,
    /// ⊗ against ⊗ or ⅋ against ⅋.
    Clash,
    /// Daimon against daimon; cyclic when both sides come from one daimon.
    Glueing { cyclic: bool },
    /// ⊗ against a daimon.
    Reversible,
    /// ⅋ against a daimon.
    Irreversible,
}

impl CutKind {
    pub fn is_reducible(self) -> bool {
        !matches!(self, CutKind::Clash | CutKind::Glueing { cyclic: true })
    }

    pub fn name(self) -> &'static str {
        match self {
            CutKind::Multiplicative => "multiplicative",
            CutKind::Clash => "clash",
            CutKind::Glueing { cyclic: false } => "glueing",
            CutKind::Glueing { cyclic: true } => "cyclic-glueing",
            CutKind::Reversible => "reversible",
            CutKind::Irreversible => "irreversible",
        }
    }
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("no link {0} in this net")]
    UnknownLink(LinkId),
    #[error("link {0} is not a cut")]
    NotACut(LinkId),
    #[error("{kind} cut {cut} cannot be reduced")]
    Stuck { cut: LinkId, kind: CutKind },
    #[error("irreversible cut {0} needs a split")]
    SplitRequired(LinkId),
    #[error("cut {0} is not irreversible and takes no split")]
    UnexpectedSplit(LinkId),
    #[error("invalid split: {0}")]
    BadSplit(String),
}

/// How the remaining targets of a daimon are shared between the two
/// daimons created by an irreversible step. Each list gives the targets of
/// one new daimon, excluding the fresh cut position, in the order they take.
/// The fresh position is placed after the targets that preceded the cut
/// position in the original daimon.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub first: Vec<Pos>,
    pub second: Vec<Pos>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductionChoice {
    pub cut: LinkId,
    pub split: Option<Split>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitMode {
    /// Each class keeps the original relative order: 2^m splits.
    #[default]
    OrderPreserving,
    /// Each class in every order compatible with the rule.
    AllPermutations,
}

fn cut_link(net: &Net, cut: LinkId) -> Result<&Link, RewriteError> {
    let link = net.link(cut).ok_or(RewriteError::UnknownLink(cut))?;
    if link.label() != LinkLabel::Cut {
        return Err(RewriteError::NotACut(cut));
    }
    Ok(link)
}

/// Index of the link producing `p`, found by scanning.
fn producer(net: &Net, p: Pos) -> usize {
    net.links()
        .iter()
        .position(|l| l.targets().contains(&p))
        .expect("nets are target-surjective")
}

pub fn cut_kind(net: &Net, cut: LinkId) -> Result<CutKind, RewriteError> {
    let link = cut_link(net, cut)?;
    let (a, b) = (producer(net, link.sources()[0]), producer(net, link.sources()[1]));
    Ok(kind_of(net.links()[a].label(), net.links()[b].label(), a == b))
}

fn kind_of(x: LinkLabel, y: LinkLabel, same: bool) -> CutKind {
    use LinkLabel::*;
    match (x, y) {
        (Par, Tensor) | (Tensor, Par) => CutKind::Multiplicative,
        (Par, Par) | (Tensor, Tensor) => CutKind::Clash,
        (Daimon, Daimon) => CutKind::Glueing { cyclic: same },
        (Tensor, Daimon) | (Daimon, Tensor) => CutKind::Reversible,
        (Par, Daimon) | (Daimon, Par) => CutKind::Irreversible,
        (Cut, _) | (_, Cut) => unreachable!("cuts have no targets"),
    }
}

/// Every cut link with its kind, in link order.
pub fn cuts(net: &Net) -> Vec<(LinkId, CutKind)> {
    net.links()
        .iter()
        .filter(|l| l.label() == LinkLabel::Cut)
        .map(|l| {
            let (a, b) = (producer(net, l.sources()[0]), producer(net, l.sources()[1]));
            (l.id(), kind_of(net.links()[a].label(), net.links()[b].label(), a == b))
        })
        .collect()
}

/// All legal steps of the net.
pub fn redexes(net: &Net, mode: SplitMode) -> Vec<ReductionChoice> {
    let mut out = Vec::new();
    for (cut, kind) in cuts(net) {
        match kind {
            CutKind::Irreversible => {
                for split in splits(net, cut, mode) {
                    out.push(ReductionChoice {
                        cut,
                        split: Some(split),
                    });
                }
            }
            k if k.is_reducible() => out.push(ReductionChoice { cut, split: None }),
            _ => {}
        }
    }
    out
}

/// The daimon side of an irreversible cut: (daimon link index, slot of the
/// cut position), and the par side (link index).
fn irreversible_sides(net: &Net, cut: &Link) -> ((usize, usize), usize) {
    let a = producer(net, cut.sources()[0]);
    let b = producer(net, cut.sources()[1]);
    let (d, p, par) = if net.links()[a].label() == LinkLabel::Daimon {
        (a, cut.sources()[0], b)
    } else {
        (b, cut.sources()[1], a)
    };
    let slot = net.links()[d].targets().iter().position(|x| *x == p).expect("target");
    ((d, slot), par)
}

/// The splits available for an irreversible cut.
pub fn splits(net: &Net, cut: LinkId, mode: SplitMode) -> Vec<Split> {
    let Ok(link) = cut_link(net, cut) else {
        return Vec::new();
    };
    let ((d, slot), _) = irreversible_sides(net, link);
    let targets = net.links()[d].targets();
    let before: Vec<Pos> = targets[..slot].to_vec();
    let after: Vec<Pos> = targets[slot + 1..].to_vec();
    let others: Vec<Pos> = before.iter().chain(&after).copied().collect();
    let m = others.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << m) {
        let pick = |want: bool, part: &[Pos], offset: usize| -> Vec<Pos> {
            part.iter()
                .enumerate()
                .filter(|(i, _)| ((mask >> (i + offset)) & 1 == 1) == want)
                .map(|(_, p)| *p)
                .collect()
        };
        let (fb, fa) = (pick(false, &before, 0), pick(false, &after, before.len()));
        let (sb, sa) = (pick(true, &before, 0), pick(true, &after, before.len()));
        match mode {
            SplitMode::OrderPreserving => out.push(Split {
                first: [fb, fa].concat(),
                second: [sb, sa].concat(),
            }),
            SplitMode::AllPermutations => {
                for f1 in permutations(&fb) {
                    for f2 in permutations(&fa) {
                        for s1 in permutations(&sb) {
                            for s2 in permutations(&sa) {
                                out.push(Split {
                                    first: [f1.clone(), f2.clone()].concat(),
                                    second: [s1.clone(), s2].concat(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn permutations(xs: &[Pos]) -> Vec<Vec<Pos>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// Working copy of a net for building the result of one step.
struct Builder {
    links: Vec<Option<Link>>,
    names: std::collections::BTreeMap<Pos, Arc<str>>,
    taken: BTreeSet<Arc<str>>,
    next_pos: u32,
    next_link: u32,
    arrangement: Vec<Pos>,
}

impl Builder {
    fn new(net: &Net) -> Builder {
        Builder {
            links: net.links().iter().cloned().map(Some).collect(),
            names: net.names().clone(),
            taken: net.names().values().cloned().collect(),
            next_pos: net.next_pos(),
            next_link: net.next_link(),
            arrangement: net.arrangement().to_vec(),
        }
    }

    fn fresh_pos(&mut self, parent: Pos, suffix: &str) -> Pos {
        let p = Pos(self.next_pos);
        self.next_pos += 1;
        if let Some(base) = self.names.get(&parent) {
            let name = crate::net::unique_name(&format!("{base}{suffix}"), &mut self.taken);
            self.names.insert(p, name);
        }
        p
    }

    fn fresh_link(&mut self) -> LinkId {
        self.next_link += 1;
        LinkId(self.next_link - 1)
    }

    fn forget(&mut self, p: Pos) {
        if let Some(n) = self.names.remove(&p) {
            self.taken.remove(&n);
        }
    }

    fn set(&mut self, i: usize, link: Link) {
        self.links[i] = Some(link);
    }

    fn remove(&mut self, i: usize) {
        self.links[i] = None;
    }

    fn push(&mut self, link: Link) {
        self.links.push(Some(link));
    }

    fn finish(self) -> Net {
        Net::from_parts(self.links.into_iter().flatten().collect(), self.arrangement, self.names)
    }
}

/// Performs one reduction step.
pub fn step(net: &Net, choice: &ReductionChoice) -> Result<Net, RewriteError> {
    let ci = net
        .link_index(choice.cut)
        .ok_or(RewriteError::UnknownLink(choice.cut))?;
    let cut = cut_link(net, choice.cut)?.clone();
    let kind = cut_kind(net, choice.cut)?;
    if !kind.is_reducible() {
        return Err(RewriteError::Stuck {
            cut: choice.cut,
            kind,
        });
    }
    match (kind, &choice.split) {
        (CutKind::Irreversible, None) => return Err(RewriteError::SplitRequired(choice.cut)),
        (CutKind::Irreversible, Some(_)) => {}
        (_, Some(_)) => return Err(RewriteError::UnexpectedSplit(choice.cut)),
        _ => {}
    }
    let (x, y) = (cut.sources()[0], cut.sources()[1]);
    let (lx, ly) = (producer(net, x), producer(net, y));
    let mut b = Builder::new(net);
    match kind {
        CutKind::Multiplicative => {
            let (xs, ys) = (net.links()[lx].sources().to_vec(), net.links()[ly].sources().to_vec());
            let c1 = Link::raw(choice.cut, LinkLabel::Cut, vec![xs[0], ys[0]], vec![]);
            let c2 = Link::raw(b.fresh_link(), LinkLabel::Cut, vec![xs[1], ys[1]], vec![]);
            b.set(ci, c1);
            b.push(c2);
            b.remove(lx);
            b.remove(ly);
        }
        CutKind::Glueing { .. } => {
            let d1 = &net.links()[lx];
            let d2 = &net.links()[ly];
            let targets: Vec<Pos> = d1
                .targets()
                .iter()
                .filter(|p| **p != x)
                .chain(d2.targets().iter().filter(|p| **p != y))
                .copied()
                .collect();
            b.set(lx, Link::raw(d1.id(), LinkLabel::Daimon, vec![], targets));
            b.remove(ly);
            b.remove(ci);
        }
        CutKind::Reversible => {
            let x_is_tensor = net.links()[lx].label() == LinkLabel::Tensor;
            let (ti, di, q) = if x_is_tensor { (lx, ly, y) } else { (ly, lx, x) };
            let ps = net.links()[ti].sources().to_vec();
            let q1 = b.fresh_pos(q, "1");
            let q2 = b.fresh_pos(q, "2");
            let d = &net.links()[di];
            let targets: Vec<Pos> = d
                .targets()
                .iter()
                .flat_map(|t| if *t == q { vec![q1, q2] } else { vec![*t] })
                .collect();
            b.set(di, Link::raw(d.id(), LinkLabel::Daimon, vec![], targets));
            let pair = |a: Pos, c: Pos| if x_is_tensor { vec![a, c] } else { vec![c, a] };
            b.set(ci, Link::raw(choice.cut, LinkLabel::Cut, pair(ps[0], q1), vec![]));
            let id = b.fresh_link();
            b.push(Link::raw(id, LinkLabel::Cut, pair(ps[1], q2), vec![]));
            b.remove(ti);
        }
        CutKind::Irreversible => {
            let ((di, slot), pi) = irreversible_sides(net, &cut);
            let split = choice.split.as_ref().expect("checked above");
            let d = &net.links()[di];
            let p = d.targets()[slot];
            let before: BTreeSet<Pos> = d.targets()[..slot].iter().copied().collect();
            let after: BTreeSet<Pos> = d.targets()[slot + 1..].iter().copied().collect();
            check_split(split, &before, &after)?;
            let qs = net.links()[pi].sources().to_vec();
            let p1 = b.fresh_pos(p, "1");
            let p2 = b.fresh_pos(p, "2");
            let place = |class: &[Pos], fresh: Pos| -> Vec<Pos> {
                let k = class.iter().take_while(|t| before.contains(t)).count();
                let mut v = class[..k].to_vec();
                v.push(fresh);
                v.extend_from_slice(&class[k..]);
                v
            };
            let par_first = pi == lx;
            let pair = |q: Pos, a: Pos| if par_first { vec![q, a] } else { vec![a, q] };
            b.set(di, Link::raw(d.id(), LinkLabel::Daimon, vec![], place(&split.first, p1)));
            let d2 = b.fresh_link();
            b.push(Link::raw(d2, LinkLabel::Daimon, vec![], place(&split.second, p2)));
            b.set(ci, Link::raw(choice.cut, LinkLabel::Cut, pair(qs[0], p1), vec![]));
            let c2 = b.fresh_link();
            b.push(Link::raw(c2, LinkLabel::Cut, pair(qs[1], p2), vec![]));
            b.remove(pi);
        }
        CutKind::Clash => unreachable!("checked reducible"),
    }
    b.forget(x);
    b.forget(y);
    Ok(b.finish())
}

fn check_split(split: &Split, before: &BTreeSet<Pos>, after: &BTreeSet<Pos>) -> Result<(), RewriteError> {
    let mut seen = BTreeSet::new();
    for p in split.first.iter().chain(&split.second) {
        if !(before.contains(p) || after.contains(p)) {
            return Err(RewriteError::BadSplit(format!("{p} is not another target of the daimon")));
        }
        if !seen.insert(*p) {
            return Err(RewriteError::BadSplit(format!("{p} occurs twice")));
        }
    }
    if seen.len() != before.len() + after.len() {
        return Err(RewriteError::BadSplit("some target is not assigned".into()));
    }
    for class in [&split.first, &split.second] {
        let k = class.iter().take_while(|t| before.contains(t)).count();
        if class[k..].iter().any(|t| before.contains(t)) {
            return Err(RewriteError::BadSplit(
                "targets preceding the cut position must stay before it".into(),
            ));
        }
    }
    Ok(())
}

/// The termination measure: (number of ⊗/⅋ links, number of cuts).
pub fn sn_measure(net: &Net) -> (usize, usize) {
    (
        net.count(LinkLabel::Tensor) + net.count(LinkLabel::Par),
        net.count(LinkLabel::Cut),
    )
}

/// S::T: both nets side by side with their first min(#S, #T) conclusions
/// cut pairwise. The remaining conclusions of the longer net stay, in order.
pub fn interaction(s: &Net, t: &Net) -> Net {
    let mut taken: BTreeSet<Arc<str>> = s.names().values().cloned().collect();
    let right = t.shifted(s.next_pos(), s.next_link(), &mut taken);
    let k = s.arity().min(t.arity());
    let mut links: Vec<Link> = s.links().to_vec();
    links.extend(right.links().iter().cloned());
    let mut next = right.next_link().max(s.next_link());
    for i in 0..k {
        links.push(Link::raw(
            LinkId(next),
            LinkLabel::Cut,
            vec![s.arrangement()[i], right.arrangement()[i]],
            vec![],
        ));
        next += 1;
    }
    let arrangement = if s.arity() > k {
        s.arrangement()[k..].to_vec()
    } else {
        right.arrangement()[k..].to_vec()
    };
    let mut names = s.names().clone();
    names.extend(right.names().iter().map(|(p, n)| (*p, n.clone())));
    Net::from_parts(links, arrangement, names)
}

/// Human-readable description of a choice, using position names.
pub fn describe(net: &Net, choice: &ReductionChoice) -> String {
    let Some(cut) = net.link(choice.cut) else {
        return format!("{}", choice.cut);
    };
    let mut s = format!(
        "cut({},{})",
        net.display(cut.sources()[0]),
        net.display(cut.sources()[1])
    );
    if let Some(split) = &choice.split {
        let show = |v: &[Pos]| v.iter().map(|p| net.display(*p)).collect::<Vec<_>>().join(",");
        s.push_str(&format!(" split [{}] | [{}]", show(&split.first), show(&split.second)));
    }
    s
}
