//! Switchings, natural partitions and the graph conditions of the
//! correctness criterion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::net::{natural_order, Link, LinkId, LinkLabel, Net, NetError, Pos};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Keeps the left premise below the par; the right one becomes a
    /// conclusion.
    Left,
    Right,
}

/// A par-free net obtained by switching every par link, with the choice
/// made for each. Links keep their identifiers; daimon targets keep their
/// slots, so initial positions correspond to those of the host net.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Switching {
    pub net: Net,
    pub choices: Vec<(LinkId, Side)>,
}

impl Switching {
    pub fn describe(&self) -> String {
        if self.choices.is_empty() {
            return "(no par)".into();
        }
        self.choices
            .iter()
            .map(|(l, s)| format!("{l}:{}", if *s == Side::Left { "L" } else { "R" }))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Applies the given choices to the par links of `net`, in link order.
/// Removed premises are dropped; each new conclusion is appended last.
pub fn switch(net: &Net, choices: &[(LinkId, Side)]) -> Switching {
    let mut links: Vec<Link> = net.links().to_vec();
    let mut arrangement = net.arrangement().to_vec();
    for &(id, side) in choices {
        let i = links.iter().position(|l| l.id() == id).expect("par link");
        let par = links.remove(i);
        let (s, p) = (par.sources(), par.targets()[0]);
        let (kept, freed) = match side {
            Side::Left => (s[0], s[1]),
            Side::Right => (s[1], s[0]),
        };
        for l in &mut links {
            if let Some(slot) = l.targets().iter().position(|q| *q == kept) {
                let mut targets = l.targets().to_vec();
                targets[slot] = p;
                *l = Link::raw(l.id(), l.label(), l.sources().to_vec(), targets);
            }
        }
        arrangement.push(freed);
    }
    let names = net
        .names()
        .iter()
        .filter(|(p, _)| links.iter().any(|l| l.domain().any(|q| q == **p)))
        .map(|(p, n)| (*p, n.clone()))
        .collect();
    Switching {
        net: Net::from_parts(links, arrangement, names),
        choices: choices.to_vec(),
    }
}

/// All switchings of a net, one per assignment of sides to par links.
/// Cuts are kept as they are.
pub fn all_switchings(net: &Net) -> Vec<Switching> {
    let pars: Vec<LinkId> = net
        .links()
        .iter()
        .filter(|l| l.label() == LinkLabel::Par)
        .map(Link::id)
        .collect();
    (0..1u64 << pars.len())
        .map(|mask| {
            let choices: Vec<(LinkId, Side)> = pars
                .iter()
                .enumerate()
                .map(|(k, id)| (*id, if mask >> k & 1 == 0 { Side::Left } else { Side::Right }))
                .collect();
            switch(net, &choices)
        })
        .collect()
}

/// All switchings of a cut-free net.
pub fn switchings(net: &Net) -> Result<Vec<Switching>, NetError> {
    if !net.is_cut_free() {
        return Err(NetError::CutsPresent);
    }
    Ok(all_switchings(net))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("element {0} is outside 1..={1}")]
    OutOfRange(usize, usize),
    #[error("element {0} occurs twice")]
    Repeated(usize),
    #[error("element {0} is in no class")]
    Missing(usize),
    #[error("partitions of {0} and {1} elements")]
    Size(usize, usize),
}

/// A partition of `{1, ..., size}`. Empty classes are allowed and stand for
/// daimons without targets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NaturalPartition {
    size: usize,
    classes: Vec<Vec<usize>>,
}

impl NaturalPartition {
    pub fn new(size: usize, classes: Vec<Vec<usize>>) -> Result<NaturalPartition, PartitionError> {
        let mut seen = vec![false; size + 1];
        for &x in classes.iter().flatten() {
            if x == 0 || x > size {
                return Err(PartitionError::OutOfRange(x, size));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(PartitionError::Repeated(x));
            }
        }
        if let Some(x) = (1..=size).find(|x| !seen[*x]) {
            return Err(PartitionError::Missing(x));
        }
        let mut classes: Vec<Vec<usize>> = classes
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort();
        Ok(NaturalPartition { size, classes })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// The daimon net representing the partition: one daimon per class and
    /// conclusion `i` the `i`-th element.
    pub fn to_net(&self) -> Net {
        let links = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let targets = c.iter().map(|x| Pos(*x as u32 - 1)).collect();
                Link::raw(LinkId(i as u32), LinkLabel::Daimon, vec![], targets)
            })
            .collect();
        let arrangement = (0..self.size as u32).map(Pos).collect();
        let names = (0..self.size as u32)
            .map(|i| (Pos(i), format!("x{}", i + 1).into()))
            .collect();
        Net::from_parts(links, arrangement, names)
    }
}

impl fmt::Display for NaturalPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let classes: Vec<String> = self
            .classes
            .iter()
            .map(|c| {
                let xs: Vec<String> = c.iter().map(usize::to_string).collect();
                format!("{{{}}}", xs.join(","))
            })
            .collect();
        write!(f, "{{{}}}", classes.join(","))
    }
}

/// Orthogonality of partitions: the multigraph with one vertex per class
/// and one edge per element, joining its two classes, is a tree.
pub fn partition_orthogonal(p: &NaturalPartition, q: &NaturalPartition) -> Result<bool, PartitionError> {
    if p.size != q.size {
        return Err(PartitionError::Size(p.size, q.size));
    }
    let vertices = p.classes.len() + q.classes.len();
    if vertices == 0 {
        return Ok(false);
    }
    let class_of = |part: &NaturalPartition| {
        let mut v = vec![0; part.size + 1];
        for (i, c) in part.classes.iter().enumerate() {
            for &x in c {
                v[x] = i;
            }
        }
        v
    };
    let (cp, cq) = (class_of(p), class_of(q));
    let mut uf = UnionFind::new(vertices);
    for x in 1..=p.size {
        if !uf.union(cp[x], p.classes.len() + cq[x]) {
            return Ok(false);
        }
    }
    Ok(uf.components == 1)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    pub(crate) components: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            components: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.components -= 1;
        true
    }
}

/// Positions of `host` in natural order, keyed by their daimon slot.
fn slot_numbers(host: &Net) -> Result<HashMap<(LinkId, usize), usize>, NetError> {
    let rank: BTreeMap<Pos, usize> = natural_order(host)?
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i + 1))
        .collect();
    Ok(host
        .daimons()
        .flat_map(|d| d.targets().iter().enumerate().map(move |(j, p)| ((d.id(), j), *p)))
        .map(|(k, p)| (k, rank[&p]))
        .collect())
}

/// The daimon partition of a cut-free net, numbered in natural order.
pub fn daimon_partition(net: &Net) -> Result<NaturalPartition, NetError> {
    let num = slot_numbers(net)?;
    let classes = net
        .daimons()
        .map(|d| (0..d.targets().len()).map(|j| num[&(d.id(), j)]).collect())
        .collect();
    Ok(NaturalPartition::new(num.len(), classes).expect("daimon targets partition"))
}

/// The partition of the initial positions of `host` by the conclusion of
/// the switching they lie above, numbered in the natural order of `host`.
/// Fails when some initial position is above no conclusion.
pub fn up_initial(host: &Net, sw: &Switching) -> Result<NaturalPartition, NetError> {
    let num = slot_numbers(host)?;
    let net = &sw.net;
    let idx = net.index();
    let mut classes = Vec::with_capacity(net.arity());
    for &c in net.arrangement() {
        let mut class = Vec::new();
        let mut stack = vec![c];
        while let Some(p) = stack.pop() {
            if class.len() + stack.len() > num.len() + net.links().len() {
                return Err(NetError::Unreachable(net.display(p)));
            }
            let (li, slot) = idx.producer[&p];
            let link = &net.links()[li];
            if link.label() == LinkLabel::Daimon {
                class.push(num[&(link.id(), slot)]);
            } else {
                stack.extend(link.sources().iter().copied());
            }
        }
        classes.push(class);
    }
    NaturalPartition::new(num.len(), classes).map_err(|e| match e {
        PartitionError::Missing(x) => NetError::Unreachable(format!("initial #{x}")),
        other => NetError::Unreachable(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;

    fn part(size: usize, classes: &[&[usize]]) -> NaturalPartition {
        NaturalPartition::new(size, classes.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn switching_counts() {
        assert_eq!(switchings(&Net::daimon(2)).unwrap().len(), 1);
        let one = parse_net("dai a b\npar a b -> c\nconclusions: c").unwrap();
        assert_eq!(switchings(&one).unwrap().len(), 2);
        let two = parse_net("dai a b x\npar a b -> c\npar c x -> e\nconclusions: e").unwrap();
        let sws = switchings(&two).unwrap();
        assert_eq!(sws.len(), 4);
        for s in &sws {
            assert_eq!(s.net.count(LinkLabel::Par), 0);
            assert_eq!(s.net.arity(), 3);
        }
        let cut = parse_net("dai a\ndai b\ncut a b\nconclusions:").unwrap();
        assert!(switchings(&cut).is_err());
    }

    #[test]
    fn left_switch_keeps_left_premise_slot() {
        let n = parse_net("dai a b\npar a b -> c\nconclusions: c").unwrap();
        let l = switch(&n, &[(n.links()[1].id(), Side::Left)]);
        assert_eq!(l.net.to_string(), "dai c b\nconclusions: c b\n");
        let r = switch(&n, &[(n.links()[1].id(), Side::Right)]);
        assert_eq!(r.net.to_string(), "dai a c\nconclusions: c a\n");
    }

    #[test]
    fn partition_orthogonality_rows() {
        assert!(partition_orthogonal(&part(2, &[&[1, 2]]), &part(2, &[&[1], &[2]])).unwrap());
        assert!(!partition_orthogonal(&part(2, &[&[1, 2]]), &part(2, &[&[1, 2]])).unwrap());
        assert!(partition_orthogonal(&part(1, &[&[1]]), &part(1, &[&[1]])).unwrap());
        assert!(!partition_orthogonal(&part(2, &[&[1], &[2]]), &part(2, &[&[1], &[2]])).unwrap());
        assert!(partition_orthogonal(&part(1, &[&[1]]), &part(2, &[&[1, 2]])).is_err());
        assert!(NaturalPartition::new(2, vec![vec![1]]).is_err());
        assert!(NaturalPartition::new(2, vec![vec![1, 2], vec![2]]).is_err());
    }

    fn set_partitions(n: usize) -> Vec<NaturalPartition> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]];
        for x in 1..=n {
            let mut next = Vec::new();
            for p in &out {
                for i in 0..p.len() {
                    let mut q = p.clone();
                    q[i].push(x);
                    next.push(q);
                }
                let mut q = p.clone();
                q.push(vec![x]);
                next.push(q);
            }
            out = next;
        }
        out.into_iter().map(|c| NaturalPartition::new(n, c).unwrap()).collect()
    }

    #[test]
    fn partition_orthogonality_matches_tree_count() {
        // Oracle: a multigraph is a tree iff |E| = |V| - 1 and it is connected.
        for n in 1..=4 {
            let all = set_partitions(n);
            for p in &all {
                for q in &all {
                    let v = p.classes().len() + q.classes().len();
                    let mut adj = vec![vec![]; v];
                    for x in 1..=n {
                        let a = p.classes().iter().position(|c| c.contains(&x)).unwrap();
                        let b = p.classes().len() + q.classes().iter().position(|c| c.contains(&x)).unwrap();
                        adj[a].push(b);
                        adj[b].push(a);
                    }
                    let mut seen = vec![false; v];
                    let mut stack = vec![0];
                    while let Some(u) = stack.pop() {
                        if !std::mem::replace(&mut seen[u], true) {
                            stack.extend(adj[u].iter().copied());
                        }
                    }
                    let expected = n + 1 == v && seen.iter().all(|b| *b);
                    assert_eq!(partition_orthogonal(p, q).unwrap(), expected, "{p} {q}");
                }
            }
        }
    }

    #[test]
    fn up_initial_rows() {
        let n = parse_net("dai a b\npar a b -> c\nconclusions: c").unwrap();
        let left = switch(&n, &[(n.links()[1].id(), Side::Left)]);
        assert_eq!(up_initial(&n, &left).unwrap(), part(2, &[&[1], &[2]]));
        let t = parse_net("dai a\ndai b\ntensor a b -> c\nconclusions: c").unwrap();
        let sw = &switchings(&t).unwrap()[0];
        assert_eq!(up_initial(&t, sw).unwrap(), part(2, &[&[1, 2]]));
        let d = Net::daimon(2);
        assert_eq!(up_initial(&d, &switchings(&d).unwrap()[0]).unwrap(), part(2, &[&[1], &[2]]));
    }

    #[test]
    fn daimon_partition_follows_natural_order() {
        let n = parse_net("dai c a\ndai b x\npar a b -> d\nconclusions: x d c").unwrap();
        // natural order x a b c
        assert_eq!(daimon_partition(&n).unwrap(), part(4, &[&[2, 4], &[1, 3]]));
        assert_eq!(part(2, &[&[1], &[2]]).to_net().to_string(), "dai x1\ndai x2\nconclusions: x1 x2\n");
    }
}
