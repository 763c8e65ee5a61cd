//! Addresses of positions above conclusions and the natural order of initial
//! positions in cut-free nets.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Link, LinkId, LinkLabel, Net, NetError, Pos};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    L,
    R,
}

/// A word over {l, r}; `l` selects the first source of the binary link
/// producing the current position and `r` the second.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Address(pub Vec<Dir>);

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for d in &self.0 {
            f.write_str(match d {
                Dir::L => "l",
                Dir::R => "r",
            })?;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = String;
    fn from_str(s: &str) -> Result<Address, String> {
        if s == "ε" || s.is_empty() {
            return Ok(Address::default());
        }
        s.chars()
            .map(|c| match c {
                'l' => Ok(Dir::L),
                'r' => Ok(Dir::R),
                _ => Err(format!("invalid address character {c:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Address)
    }
}

/// Follows `path` upward from conclusion number `conclusion` (1-based).
pub fn resolve_address(net: &Net, conclusion: usize, path: &Address) -> Result<Pos, NetError> {
    let mut pos = conclusion
        .checked_sub(1)
        .and_then(|i| net.conclusion(i))
        .ok_or(NetError::ConclusionIndex(conclusion))?;
    let idx = net.index();
    for (step, d) in path.0.iter().enumerate() {
        let undefined = NetError::UndefinedAddress { conclusion, step };
        let (li, _) = *idx.producer.get(&pos).ok_or(undefined.clone())?;
        let link = &net.links()[li];
        if !link.label().is_connective() {
            return Err(undefined);
        }
        pos = link.sources()[match d {
            Dir::L => 0,
            Dir::R => 1,
        }];
    }
    Ok(pos)
}

/// An initial position with the conclusion index and address reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InitialAddress {
    pub pos: Pos,
    pub root: usize,
    pub address: Address,
}

/// Initial positions of a cut-free net sorted by (conclusion index, address).
pub fn initial_addresses(net: &Net) -> Result<Vec<InitialAddress>, NetError> {
    if !net.is_cut_free() {
        return Err(NetError::CutsPresent);
    }
    let idx = net.index();
    let mut out = Vec::new();
    for (root, &c) in net.arrangement().iter().enumerate() {
        let mut stack = vec![(c, Address::default())];
        let mut guard = 0usize;
        while let Some((p, addr)) = stack.pop() {
            guard += 1;
            if guard > 4 * net.links().len() + 4 {
                return Err(NetError::Unreachable(net.display(p)));
            }
            let (li, _) = idx.producer[&p];
            let link = &net.links()[li];
            match link.label() {
                LinkLabel::Daimon => out.push(InitialAddress {
                    pos: p,
                    root,
                    address: addr,
                }),
                LinkLabel::Tensor | LinkLabel::Par => {
                    for (s, d) in link.sources().iter().zip([Dir::L, Dir::R]) {
                        let mut a = addr.clone();
                        a.0.push(d);
                        stack.push((*s, a));
                    }
                }
                LinkLabel::Cut => unreachable!("cut has no targets"),
            }
        }
    }
    let total: usize = net.daimons().map(|d| d.targets().len()).sum();
    if out.len() != total {
        let found: std::collections::BTreeSet<Pos> = out.iter().map(|a| a.pos).collect();
        let missing = net
            .daimons()
            .flat_map(|d| d.targets().iter().copied())
            .find(|p| !found.contains(p))
            .expect("some initial position is missing");
        return Err(NetError::Unreachable(net.display(missing)));
    }
    out.sort_by(|a, b| (a.root, &a.address).cmp(&(b.root, &b.address)));
    Ok(out)
}

/// Initial positions of a cut-free net in natural order.
pub fn natural_order(net: &Net) -> Result<Vec<Pos>, NetError> {
    Ok(initial_addresses(net)?.into_iter().map(|a| a.pos).collect())
}

/// The partition of initial positions induced by daimon links.
pub fn daimon_part(net: &Net) -> Vec<Vec<Pos>> {
    net.daimons().map(|d| d.targets().to_vec()).collect()
}

/// The daimon links of a cut-free net, each with targets sorted in natural
/// order and the links ordered by their first target. Daimons without
/// targets come last.
pub fn extract_daimons(net: &Net) -> Result<Net, NetError> {
    let order = natural_order(net)?;
    let rank: BTreeMap<Pos, usize> = order.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let mut daimons: Vec<Vec<Pos>> = daimon_part(net)
        .into_iter()
        .map(|mut ts| {
            ts.sort_by_key(|p| rank[p]);
            ts
        })
        .collect();
    daimons.sort_by_key(|ts| ts.first().map_or(usize::MAX, |p| rank[p]));
    let links: Vec<Link> = daimons
        .into_iter()
        .enumerate()
        .map(|(i, ts)| Link::raw(LinkId(i as u32), LinkLabel::Daimon, vec![], ts))
        .collect();
    let names = net
        .names()
        .iter()
        .filter(|(p, _)| rank.contains_key(p))
        .map(|(p, n)| (*p, n.clone()))
        .collect();
    Ok(Net::from_parts(links, order, names))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::parse_net;

    #[test]
    fn addresses_follow_sources() {
        let n = parse_net("dai a b\ndai c\npar a b -> d\ntensor d c -> e\nconclusions: e").unwrap();
        let p = |s: &str| resolve_address(&n, 1, &s.parse().unwrap()).unwrap();
        assert_eq!(n.display(p("ll")), "a");
        assert_eq!(n.display(p("lr")), "b");
        assert_eq!(n.display(p("r")), "c");
        assert_eq!(n.display(p("")), "e");
        assert!(resolve_address(&n, 1, &"rl".parse().unwrap()).is_err());
        assert!(resolve_address(&n, 2, &Address::default()).is_err());
        assert!(resolve_address(&n, 0, &Address::default()).is_err());
    }

    #[test]
    fn natural_order_is_root_then_address() {
        let n = parse_net("dai c a\ndai b x\npar a b -> d\nconclusions: x d c").unwrap();
        let shown: Vec<String> = natural_order(&n).unwrap().iter().map(|p| n.display(*p)).collect();
        assert_eq!(shown, ["x", "a", "b", "c"]);
    }

    #[test]
    fn extract_daimons_is_cut_free_daimon_net() {
        let n = parse_net("dai c a\ndai b x\npar a b -> d\nconclusions: x d c").unwrap();
        let e = extract_daimons(&n).unwrap();
        assert_eq!(e.links().len(), 2);
        assert!(e.links().iter().all(|l| l.label() == LinkLabel::Daimon));
        assert_eq!(e.arity(), 4);
        let first: Vec<String> = e.links()[0].targets().iter().map(|p| e.display(*p)).collect();
        assert_eq!(first, ["x", "b"]);
    }

    #[test]
    fn cyclic_structure_is_reported() {
        // a directed cycle through connectives: a legal net whose initial
        // positions a and y lie above no conclusion
        let n = parse_net("dai a x\npar a b -> c\ntensor c y -> b\ndai y\nconclusions: x").unwrap();
        assert!(matches!(natural_order(&n), Err(NetError::Unreachable(_))));
    }
}
