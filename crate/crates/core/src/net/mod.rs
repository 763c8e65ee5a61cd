//! Directed hypergraphs, multiplicative modules and nets.
//!
//! A [`Net`] is an immutable value: a list of links over positions together
//! with an arrangement (total order) of its conclusions. Position and link
//! identifiers are small integers local to a value; operations that combine
//! values (parallel composition, interaction, merge) shift identifiers apart
//! so that results never alias.

mod address;
mod canon;
mod dot;
mod text;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use address::{
    daimon_part, extract_daimons, initial_addresses, natural_order, resolve_address, Address, Dir,
};
pub use canon::{canonical_key, canonical_key_marked, CanonKey, CanonMode};
pub use dot::to_dot;
pub use text::{parse_net, ParseError};

/// A position of a hypergraph. Equality is by identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pos(pub u32);

/// Identifier of a link inside one hypergraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LinkId(pub u32);

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum LinkLabel {
    Daimon,
    Tensor,
    Par,
    Cut,
}

impl LinkLabel {
    pub fn is_connective(self) -> bool {
        matches!(self, LinkLabel::Tensor | LinkLabel::Par)
    }

    /// ASCII keyword used by the net text format.
    pub fn keyword(self) -> &'static str {
        match self {
            LinkLabel::Daimon => "dai",
            LinkLabel::Tensor => "tensor",
            LinkLabel::Par => "par",
            LinkLabel::Cut => "cut",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            LinkLabel::Daimon => "⨯",
            LinkLabel::Tensor => "⊗",
            LinkLabel::Par => "⅋",
            LinkLabel::Cut => "cut",
        }
    }

    fn check_arity(self, sources: usize, targets: usize) -> bool {
        match self {
            LinkLabel::Daimon => sources == 0,
            LinkLabel::Cut => sources == 2 && targets == 0,
            LinkLabel::Tensor | LinkLabel::Par => sources == 2 && targets == 1,
        }
    }
}

impl fmt::Display for LinkLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NetError {
    #[error("{label:?} link cannot have {sources} sources and {targets} targets")]
    Arity {
        label: LinkLabel,
        sources: usize,
        targets: usize,
    },
    #[error("link {0} is a loop: a position occurs twice in its domain")]
    Loop(LinkId),
    #[error("position {0} is the source of two links")]
    SharedSource(String),
    #[error("position {0} is the target of two links")]
    SharedTarget(String),
    #[error("position {0} is the target of no link")]
    Untargeted(String),
    #[error("position {0} is not part of the hypergraph")]
    UnknownPosition(String),
    #[error("duplicate link identifier {0}")]
    DuplicateLink(LinkId),
    #[error("arrangement is not a bijection onto the conclusions: {0}")]
    Arrangement(String),
    #[error("no link {0} in this net")]
    UnknownLink(LinkId),
    #[error("link {0} is not a daimon link")]
    NotDaimon(LinkId),
    #[error("operation requires a cut-free net")]
    CutsPresent,
    #[error("position {0} is not above any conclusion")]
    Unreachable(String),
    #[error("address step {step} is undefined from conclusion {conclusion}")]
    UndefinedAddress { conclusion: usize, step: usize },
    #[error("conclusion index {0} out of range")]
    ConclusionIndex(usize),
    #[error("a generalised connective needs at least two inputs, got {0}")]
    TooFewInputs(usize),
    #[error("label {0:?} is not a connective")]
    NotConnective(LinkLabel),
}

/// A labelled hyperedge with ordered sources and targets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Link {
    id: LinkId,
    label: LinkLabel,
    sources: Vec<Pos>,
    targets: Vec<Pos>,
}

impl Link {
    pub fn new(
        id: LinkId,
        label: LinkLabel,
        sources: Vec<Pos>,
        targets: Vec<Pos>,
    ) -> Result<Link, NetError> {
        if !label.check_arity(sources.len(), targets.len()) {
            return Err(NetError::Arity {
                label,
                sources: sources.len(),
                targets: targets.len(),
            });
        }
        let mut seen = BTreeSet::new();
        if !sources.iter().chain(&targets).all(|p| seen.insert(*p)) {
            return Err(NetError::Loop(id));
        }
        Ok(Link {
            id,
            label,
            sources,
            targets,
        })
    }

    pub(crate) fn raw(id: LinkId, label: LinkLabel, sources: Vec<Pos>, targets: Vec<Pos>) -> Link {
        debug_assert!(label.check_arity(sources.len(), targets.len()));
        Link {
            id,
            label,
            sources,
            targets,
        }
    }

    pub fn id(&self) -> LinkId {
        self.id
    }

    pub fn label(&self) -> LinkLabel {
        self.label
    }

    pub fn sources(&self) -> &[Pos] {
        &self.sources
    }

    pub fn targets(&self) -> &[Pos] {
        &self.targets
    }

    pub fn domain(&self) -> impl Iterator<Item = Pos> + '_ {
        self.sources.iter().chain(&self.targets).copied()
    }

    fn shifted(&self, pos_offset: u32, link_offset: u32) -> Link {
        Link {
            id: LinkId(self.id.0 + link_offset),
            label: self.label,
            sources: self.sources.iter().map(|p| Pos(p.0 + pos_offset)).collect(),
            targets: self.targets.iter().map(|p| Pos(p.0 + pos_offset)).collect(),
        }
    }
}

/// A finite directed hypergraph whose links come from the fixed family
/// (daimon, tensor, par, cut). Positions may be shared between the operands
/// of [`Hypergraph::sum`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Hypergraph {
    positions: BTreeSet<Pos>,
    links: Vec<Link>,
    names: BTreeMap<Pos, Arc<str>>,
}

impl Hypergraph {
    pub fn empty() -> Hypergraph {
        Hypergraph::default()
    }

    /// Adds a position, possibly isolated.
    pub fn with_position(mut self, pos: Pos) -> Hypergraph {
        self.positions.insert(pos);
        self
    }

    pub fn with_name(mut self, pos: Pos, name: &str) -> Hypergraph {
        self.names.insert(pos, Arc::from(name));
        self
    }

    pub fn positions(&self) -> &BTreeSet<Pos> {
        &self.positions
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn name(&self, pos: Pos) -> Option<&str> {
        self.names.get(&pos).map(|s| &**s)
    }

    fn sources_set(&self) -> BTreeSet<Pos> {
        self.links.iter().flat_map(|l| l.sources.iter().copied()).collect()
    }

    fn targets_set(&self) -> BTreeSet<Pos> {
        self.links.iter().flat_map(|l| l.targets.iter().copied()).collect()
    }

    /// Positions that are the source of no link.
    pub fn conclusions(&self) -> BTreeSet<Pos> {
        let s = self.sources_set();
        self.positions.iter().filter(|p| !s.contains(p)).copied().collect()
    }

    /// Positions that are the target of no link.
    pub fn premises(&self) -> BTreeSet<Pos> {
        let t = self.targets_set();
        self.positions.iter().filter(|p| !t.contains(p)).copied().collect()
    }

    pub fn isolated(&self) -> BTreeSet<Pos> {
        let s = self.sources_set();
        let t = self.targets_set();
        self.positions
            .iter()
            .filter(|p| !s.contains(p) && !t.contains(p))
            .copied()
            .collect()
    }

    /// Union of positions and disjoint union of links. Link identifiers of
    /// `other` that clash with ours are renamed.
    pub fn sum(&self, other: &Hypergraph) -> Hypergraph {
        let mut out = self.clone();
        let mut used: BTreeSet<LinkId> = self.links.iter().map(|l| l.id).collect();
        let mut next = used.iter().next_back().map_or(0, |l| l.0 + 1);
        for link in &other.links {
            let mut link = link.clone();
            if used.contains(&link.id) {
                while used.contains(&LinkId(next)) {
                    next += 1;
                }
                link.id = LinkId(next);
            }
            used.insert(link.id);
            out.links.push(link);
        }
        out.positions.extend(other.positions.iter().copied());
        for (p, n) in &other.names {
            out.names.entry(*p).or_insert_with(|| n.clone());
        }
        out
    }

    /// Checks the module conditions: loop-free, source-disjoint and
    /// target-disjoint, every incidence inside `positions`.
    pub fn check_module(&self) -> Result<(), NetError> {
        let mut ids = BTreeSet::new();
        let mut sources = BTreeSet::new();
        let mut targets = BTreeSet::new();
        for link in &self.links {
            if !ids.insert(link.id) {
                return Err(NetError::DuplicateLink(link.id));
            }
            let mut dom = BTreeSet::new();
            for p in link.domain() {
                if !dom.insert(p) {
                    return Err(NetError::Loop(link.id));
                }
                if !self.positions.contains(&p) {
                    return Err(NetError::UnknownPosition(self.display(p)));
                }
            }
            for p in &link.sources {
                if !sources.insert(*p) {
                    return Err(NetError::SharedSource(self.display(*p)));
                }
            }
            for p in &link.targets {
                if !targets.insert(*p) {
                    return Err(NetError::SharedTarget(self.display(*p)));
                }
            }
        }
        Ok(())
    }

    fn display(&self, p: Pos) -> String {
        self.name(p).map_or_else(|| p.to_string(), str::to_string)
    }
}

/// Builds the hypergraph made of a single link.
pub fn mk_link(label: LinkLabel, sources: &[Pos], targets: &[Pos]) -> Result<Hypergraph, NetError> {
    let link = Link::new(LinkId(0), label, sources.to_vec(), targets.to_vec())?;
    Ok(Hypergraph {
        positions: link.domain().collect(),
        links: vec![link],
        names: BTreeMap::new(),
    })
}

/// An ordered hypergraph satisfying the module conditions but not
/// necessarily target-surjective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    body: Hypergraph,
    arrangement: Vec<Pos>,
}

impl Module {
    pub fn new(body: Hypergraph, arrangement: Vec<Pos>) -> Result<Module, NetError> {
        body.check_module()?;
        check_arrangement(&body, &arrangement)?;
        Ok(Module { body, arrangement })
    }

    pub fn body(&self) -> &Hypergraph {
        &self.body
    }

    pub fn arrangement(&self) -> &[Pos] {
        &self.arrangement
    }
}

fn check_arrangement(body: &Hypergraph, arrangement: &[Pos]) -> Result<(), NetError> {
    let conclusions = body.conclusions();
    let listed: BTreeSet<Pos> = arrangement.iter().copied().collect();
    if listed.len() != arrangement.len() {
        return Err(NetError::Arrangement("a conclusion is listed twice".into()));
    }
    if let Some(p) = listed.difference(&conclusions).next() {
        return Err(NetError::Arrangement(format!(
            "{} is not a conclusion",
            body.display(*p)
        )));
    }
    if let Some(p) = conclusions.difference(&listed).next() {
        return Err(NetError::Arrangement(format!(
            "conclusion {} is missing",
            body.display(*p)
        )));
    }
    Ok(())
}

/// Lookup tables from positions to the links producing and consuming them.
#[derive(Debug, Clone, Default)]
pub struct NetIndex {
    /// position -> (link index, target slot)
    pub producer: HashMap<Pos, (usize, usize)>,
    /// position -> (link index, source slot)
    pub consumer: HashMap<Pos, (usize, usize)>,
}

/// A multiplicative net: a target-surjective module with an arrangement of
/// its conclusions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Net {
    links: Vec<Link>,
    arrangement: Vec<Pos>,
    names: BTreeMap<Pos, Arc<str>>,
}

impl Net {
    pub fn new(body: Hypergraph, arrangement: Vec<Pos>) -> Result<Net, NetError> {
        body.check_module()?;
        let targets = body.targets_set();
        if let Some(p) = body.positions.iter().find(|p| !targets.contains(p)) {
            return Err(NetError::Untargeted(body.display(*p)));
        }
        check_arrangement(&body, &arrangement)?;
        Ok(Net {
            links: body.links,
            arrangement,
            names: body.names,
        })
    }

    pub(crate) fn from_parts(
        links: Vec<Link>,
        arrangement: Vec<Pos>,
        names: BTreeMap<Pos, Arc<str>>,
    ) -> Net {
        let net = Net {
            links,
            arrangement,
            names,
        };
        debug_assert!(net.body().check_module().is_ok(), "{net}");
        net
    }

    /// The daimon link with `n` fresh conclusions, named `d1..dn`.
    pub fn daimon(n: usize) -> Net {
        let targets: Vec<Pos> = (0..n as u32).map(Pos).collect();
        let names = targets
            .iter()
            .map(|p| (*p, Arc::from(format!("d{}", p.0 + 1))))
            .collect();
        Net {
            links: vec![Link::raw(LinkId(0), LinkLabel::Daimon, vec![], targets.clone())],
            arrangement: targets,
            names,
        }
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn link(&self, id: LinkId) -> Option<&Link> {
        self.links.iter().find(|l| l.id == id)
    }

    pub fn link_index(&self, id: LinkId) -> Option<usize> {
        self.links.iter().position(|l| l.id == id)
    }

    pub fn arrangement(&self) -> &[Pos] {
        &self.arrangement
    }

    /// Number of conclusions (`#S`).
    pub fn arity(&self) -> usize {
        self.arrangement.len()
    }

    /// The `i`-th conclusion, 0-based.
    pub fn conclusion(&self, i: usize) -> Option<Pos> {
        self.arrangement.get(i).copied()
    }

    pub fn positions(&self) -> BTreeSet<Pos> {
        self.links.iter().flat_map(Link::domain).collect()
    }

    pub fn name(&self, pos: Pos) -> Option<&str> {
        self.names.get(&pos).map(|s| &**s)
    }

    pub(crate) fn names(&self) -> &BTreeMap<Pos, Arc<str>> {
        &self.names
    }

    /// Display name of a position, falling back to its identifier.
    pub fn display(&self, pos: Pos) -> String {
        self.name(pos)
            .map_or_else(|| format!("_{}", pos.0), str::to_string)
    }

    pub fn body(&self) -> Hypergraph {
        Hypergraph {
            positions: self.positions(),
            links: self.links.clone(),
            names: self.names.clone(),
        }
    }

    pub fn index(&self) -> NetIndex {
        let mut idx = NetIndex::default();
        for (i, link) in self.links.iter().enumerate() {
            for (slot, p) in link.targets.iter().enumerate() {
                idx.producer.insert(*p, (i, slot));
            }
            for (slot, p) in link.sources.iter().enumerate() {
                idx.consumer.insert(*p, (i, slot));
            }
        }
        idx
    }

    pub fn count(&self, label: LinkLabel) -> usize {
        self.links.iter().filter(|l| l.label == label).count()
    }

    pub fn is_cut_free(&self) -> bool {
        self.count(LinkLabel::Cut) == 0
    }

    pub fn daimons(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|l| l.label == LinkLabel::Daimon)
    }

    /// True when the net is exactly the daimon with no outputs.
    pub fn is_daimon_zero(&self) -> bool {
        self.links.len() == 1
            && self.links[0].label == LinkLabel::Daimon
            && self.links[0].targets.is_empty()
    }

    /// True when the net is a single daimon whose targets are exactly its
    /// conclusions (in any order).
    pub fn is_single_daimon(&self) -> bool {
        self.links.len() == 1 && self.links[0].label == LinkLabel::Daimon
    }

    pub(crate) fn next_pos(&self) -> u32 {
        self.links
            .iter()
            .flat_map(Link::domain)
            .map(|p| p.0 + 1)
            .max()
            .unwrap_or(0)
    }

    pub(crate) fn next_link(&self) -> u32 {
        self.links.iter().map(|l| l.id.0 + 1).max().unwrap_or(0)
    }

    /// Copy of `self` with identifiers shifted and names made disjoint from
    /// `taken`.
    pub(crate) fn shifted(
        &self,
        pos_offset: u32,
        link_offset: u32,
        taken: &mut BTreeSet<Arc<str>>,
    ) -> Net {
        let links = self
            .links
            .iter()
            .map(|l| l.shifted(pos_offset, link_offset))
            .collect();
        let arrangement = self.arrangement.iter().map(|p| Pos(p.0 + pos_offset)).collect();
        let names = self
            .names
            .iter()
            .map(|(p, n)| (Pos(p.0 + pos_offset), unique_name(n, taken)))
            .collect();
        Net {
            links,
            arrangement,
            names,
        }
    }

    /// Parallel sum: disjoint union with `other`'s positions renamed apart;
    /// the arrangement is ours followed by `other`'s.
    pub fn parallel(&self, other: &Net) -> Net {
        let mut taken: BTreeSet<Arc<str>> = self.names.values().cloned().collect();
        let right = other.shifted(self.next_pos(), self.next_link(), &mut taken);
        let mut links = self.links.clone();
        links.extend(right.links);
        let mut arrangement = self.arrangement.clone();
        arrangement.extend(right.arrangement);
        let mut names = self.names.clone();
        names.extend(right.names);
        Net::from_parts(links, arrangement, names)
    }

    /// Parallel sum of a non-empty list of nets, left to right.
    pub fn parallel_all<'a>(nets: impl IntoIterator<Item = &'a Net>) -> Option<Net> {
        let mut it = nets.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, n| acc.parallel(n)))
    }

    /// Adds a link on top of the net; `arrange` receives the new output
    /// position (for connectives) and returns the new arrangement.
    pub(crate) fn with_link(
        &self,
        label: LinkLabel,
        sources: Vec<Pos>,
        arrange: impl FnOnce(Option<Pos>) -> Vec<Pos>,
    ) -> Net {
        let mut links = self.links.clone();
        let output = label.is_connective().then(|| Pos(self.next_pos()));
        links.push(Link::raw(
            LinkId(self.next_link()),
            label,
            sources,
            output.into_iter().collect(),
        ));
        Net::from_parts(links, arrange(output), self.names.clone())
    }

    /// The net with positions renamed `{prefix}1, {prefix}2, ...` in order
    /// of first occurrence among link targets.
    pub fn with_generated_names(&self, prefix: &str) -> Net {
        let mut names = BTreeMap::new();
        for p in self.links.iter().flat_map(|l| l.targets.iter()) {
            let n = names.len() + 1;
            names
                .entry(*p)
                .or_insert_with(|| Arc::from(format!("{prefix}{n}")));
        }
        Net {
            names,
            ..self.clone()
        }
    }

    /// The same net with a different arrangement of the same conclusions.
    pub fn rearranged(&self, arrangement: Vec<Pos>) -> Result<Net, NetError> {
        check_arrangement(&self.body(), &arrangement)?;
        Ok(Net {
            arrangement,
            ..self.clone()
        })
    }

    /// Merge of daimon `d1` of `self` with daimon `d2` of `other`: the two
    /// daimons are replaced by one whose targets are those of `d1` followed
    /// by those of `d2`. Conclusions of `other` are arranged after ours.
    pub fn merge(&self, d1: LinkId, other: &Net, d2: LinkId) -> Result<Net, NetError> {
        let check = |net: &Net, d: LinkId| -> Result<(), NetError> {
            match net.link(d) {
                None => Err(NetError::UnknownLink(d)),
                Some(l) if l.label != LinkLabel::Daimon => Err(NetError::NotDaimon(d)),
                Some(_) => Ok(()),
            }
        };
        check(self, d1)?;
        check(other, d2)?;
        let mut taken: BTreeSet<Arc<str>> = self.names.values().cloned().collect();
        let link_offset = self.next_link();
        let right = other.shifted(self.next_pos(), link_offset, &mut taken);
        let d2 = LinkId(d2.0 + link_offset);
        let extra: Vec<Pos> = right.link(d2).expect("shifted daimon").targets.clone();
        let mut links: Vec<Link> = self
            .links
            .iter()
            .map(|l| {
                if l.id == d1 {
                    let mut l = l.clone();
                    l.targets.extend(extra.iter().copied());
                    l
                } else {
                    l.clone()
                }
            })
            .collect();
        links.extend(right.links.into_iter().filter(|l| l.id != d2));
        let mut arrangement = self.arrangement.clone();
        arrangement.extend(right.arrangement);
        let mut names = self.names.clone();
        names.extend(right.names);
        Ok(Net::from_parts(links, arrangement, names))
    }

    /// The net with every position given a fresh sequential identifier in
    /// order of first occurrence. Names are kept.
    pub fn compacted(&self) -> Net {
        let mut map: HashMap<Pos, Pos> = HashMap::new();
        let fresh = |p: Pos, map: &mut HashMap<Pos, Pos>| {
            let n = map.len() as u32;
            *map.entry(p).or_insert(Pos(n))
        };
        let links = self
            .links
            .iter()
            .enumerate()
            .map(|(i, l)| Link {
                id: LinkId(i as u32),
                label: l.label,
                sources: l.sources.iter().map(|p| fresh(*p, &mut map)).collect(),
                targets: l.targets.iter().map(|p| fresh(*p, &mut map)).collect(),
            })
            .collect();
        let arrangement = self.arrangement.iter().map(|p| map[p]).collect();
        let names = self
            .names
            .iter()
            .filter_map(|(p, n)| map.get(p).map(|q| (*q, n.clone())))
            .collect();
        Net {
            links,
            arrangement,
            names,
        }
    }
}

/// Returns `base` if unused, otherwise `base` followed by primes until it is
/// unused. The returned name is recorded in `taken`.
pub(crate) fn unique_name(base: &str, taken: &mut BTreeSet<Arc<str>>) -> Arc<str> {
    let mut name = base.to_string();
    while taken.contains(name.as_str()) {
        name.push('\'');
    }
    let name: Arc<str> = Arc::from(name);
    taken.insert(name.clone());
    name
}

/// A generalised connective: a left-nested chain of `inputs.len() - 1`
/// binary links of the given label ending in `output`.
pub fn generalized_link(label: LinkLabel, inputs: &[Pos], output: Pos) -> Result<Module, NetError> {
    if !label.is_connective() {
        return Err(NetError::NotConnective(label));
    }
    if inputs.len() < 2 {
        return Err(NetError::TooFewInputs(inputs.len()));
    }
    let mut next = inputs.iter().chain([&output]).map(|p| p.0 + 1).max().unwrap_or(0);
    let mut body = Hypergraph::empty();
    let mut acc = inputs[0];
    for (k, &input) in inputs.iter().enumerate().skip(1) {
        let out = if k == inputs.len() - 1 {
            output
        } else {
            next += 1;
            Pos(next - 1)
        };
        body = body.sum(&mk_link(label, &[acc, input], &[out])?);
        acc = out;
    }
    Module::new(body, vec![output])
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::print_net(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(s: &str) -> Net {
        parse_net(s).unwrap()
    }

    #[test]
    fn mk_link_daimon_has_all_targets_as_conclusions() {
        let h = mk_link(LinkLabel::Daimon, &[], &[Pos(1), Pos(2), Pos(3)]).unwrap();
        assert_eq!(h.conclusions(), [Pos(1), Pos(2), Pos(3)].into());
        let zero = mk_link(LinkLabel::Daimon, &[], &[]).unwrap();
        assert!(zero.positions().is_empty());
        assert_eq!(zero.links().len(), 1);
    }

    #[test]
    fn mk_link_rejects_loops_and_bad_arity() {
        assert_eq!(
            mk_link(LinkLabel::Cut, &[Pos(1), Pos(1)], &[]),
            Err(NetError::Loop(LinkId(0)))
        );
        assert!(matches!(
            mk_link(LinkLabel::Tensor, &[Pos(1)], &[Pos(2)]),
            Err(NetError::Arity { .. })
        ));
        assert!(matches!(
            mk_link(LinkLabel::Par, &[Pos(1), Pos(2)], &[Pos(1)]),
            Err(NetError::Loop(_))
        ));
    }

    #[test]
    fn sum_shares_positions_and_renames_links() {
        let (a, b, c) = (Pos(0), Pos(1), Pos(2));
        let t = mk_link(LinkLabel::Tensor, &[a, b], &[c]).unwrap();
        let d = mk_link(LinkLabel::Daimon, &[], &[a, b]).unwrap();
        let s = t.sum(&d);
        assert_eq!(s.links().len(), 2);
        assert_eq!(s.positions().len(), 3);
        assert_ne!(s.links()[0].id(), s.links()[1].id());
        assert_eq!(s.conclusions(), [c].into());
        assert_eq!(t.sum(&Hypergraph::empty()), t);
        let n = Net::new(s, vec![c]).unwrap();
        assert_eq!(n.count(LinkLabel::Tensor), 1);
    }

    #[test]
    fn sum_of_two_generic_links_shares_b() {
        // α⟨a,b,c⟩→⟨d,e⟩ is not in the multiplicative family; the shared
        // vertex behaviour is the same with a par and a tensor.
        let (a, b, d, u, v) = (Pos(0), Pos(1), Pos(3), Pos(5), Pos(6));
        let h1 = mk_link(LinkLabel::Par, &[a, b], &[d]).unwrap();
        let h2 = mk_link(LinkLabel::Tensor, &[b, u], &[v]).unwrap();
        let s = h1.sum(&h2);
        assert_eq!(s.positions().len(), 5);
        assert!(s.check_module().is_err(), "b is the source of two links");
    }

    #[test]
    fn net_validation_rejects_each_defect() {
        assert!(matches!(
            parse_net("dai a b\ntensor a b -> c\npar a b -> d\nconclusions: c d"),
            Err(ParseError::Invalid { source: NetError::SharedSource(_), .. })
        ));
        assert!(matches!(
            parse_net("dai a b\ndai a\nconclusions: a b"),
            Err(ParseError::Invalid { source: NetError::SharedTarget(_), .. })
        ));
        assert!(matches!(
            parse_net("tensor a b -> c\nconclusions: c"),
            Err(ParseError::Invalid { source: NetError::Untargeted(_), .. })
        ));
        assert!(matches!(
            parse_net("dai a b\nconclusions: a"),
            Err(ParseError::Invalid { source: NetError::Arrangement(_), .. })
        ));
        assert!(matches!(
            parse_net("dai a a\nconclusions: a"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
    }

    #[test]
    fn parallel_renames_shared_positions() {
        let h1 = net("dai a b c\npar a b -> d\nconclusions: d c");
        let h2 = net("dai b u\ntensor b u -> v\nconclusions: v");
        let p = h1.parallel(&h2);
        assert_eq!(p.positions().len(), 7);
        assert_eq!(p.arity(), 3);
        assert_eq!(p.display(p.arrangement()[2]), "v");
        let names: BTreeSet<String> = p.positions().iter().map(|q| p.display(*q)).collect();
        assert_eq!(names.len(), 7, "names stay unique: {names:?}");
    }

    #[test]
    fn parallel_of_daimons_orders_conclusions() {
        let p = net("dai p\nconclusions: p").parallel(&net("dai q\nconclusions: q"));
        let shown: Vec<String> = p.arrangement().iter().map(|x| p.display(*x)).collect();
        assert_eq!(shown, ["p", "q"]);
    }

    #[test]
    fn merge_concatenates_daimon_targets() {
        let s = net("dai p\nconclusions: p");
        let t = net("dai q\nconclusions: q");
        let m = s.merge(LinkId(0), &t, LinkId(0)).unwrap();
        assert_eq!(m.links().len(), 1);
        assert_eq!(m.links()[0].targets().len(), 2);
        assert_eq!(m.arity(), 2);

        let unit = Net::daimon(3).merge(LinkId(0), &Net::daimon(0), LinkId(0)).unwrap();
        assert_eq!(
            canonical_key(&unit, CanonMode::Exact),
            canonical_key(&Net::daimon(3), CanonMode::Exact)
        );
        assert_eq!(
            s.merge(LinkId(5), &t, LinkId(0)),
            Err(NetError::UnknownLink(LinkId(5)))
        );
        let tens = net("dai a\ndai b\ntensor a b -> c\nconclusions: c");
        assert_eq!(
            tens.merge(LinkId(2), &t, LinkId(0)),
            Err(NetError::NotDaimon(LinkId(2)))
        );
    }

    #[test]
    fn merge_keeps_other_links() {
        let s = net("dai a b\npar a b -> c\nconclusions: c");
        let m = s.merge(LinkId(0), &Net::daimon(1), LinkId(0)).unwrap();
        assert_eq!(m.links().len(), s.links().len());
        assert_eq!(m.arity(), 2);
        assert_eq!(m.links()[1], s.links()[1]);
        assert_eq!(m.links()[0].targets().len(), 3);
    }

    #[test]
    fn generalized_par_shapes() {
        let one = generalized_link(LinkLabel::Par, &[Pos(0), Pos(1)], Pos(2)).unwrap();
        assert_eq!(one.body().links().len(), 1);
        let two = generalized_link(LinkLabel::Par, &[Pos(0), Pos(1), Pos(2)], Pos(3)).unwrap();
        assert_eq!(two.body().links().len(), 2);
        assert_eq!(two.body().positions().len(), 5);
        let internal: Vec<Pos> = two
            .body()
            .positions()
            .iter()
            .filter(|p| ![Pos(0), Pos(1), Pos(2), Pos(3)].contains(p))
            .copied()
            .collect();
        assert_eq!(internal.len(), 1);
        // left nesting: the first link consumes p0 and p1
        assert_eq!(two.body().links()[0].sources(), &[Pos(0), Pos(1)]);
        assert_eq!(two.body().links()[1].sources(), &[internal[0], Pos(2)]);
        let tens = generalized_link(LinkLabel::Tensor, &[Pos(0), Pos(1), Pos(2)], Pos(3)).unwrap();
        assert!(tens.body().links().iter().all(|l| l.label() == LinkLabel::Tensor));
        assert_eq!(
            generalized_link(LinkLabel::Par, &[Pos(0)], Pos(1)),
            Err(NetError::TooFewInputs(1))
        );
    }

    #[test]
    fn daimon_zero_is_a_net() {
        let z = net("dai\nconclusions:");
        assert!(z.is_daimon_zero());
        assert_eq!(z.arity(), 0);
    }
}
