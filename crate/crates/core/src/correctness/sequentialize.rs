//! Backward proof search reading a derivation off a net.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::switching::UnionFind;
use crate::logic::{Formula, Proof, Sequent};
use crate::net::{LinkLabel, Net, NetIndex, Pos};

/// A derivation of `gamma` whose net is `net`, if there is one.
///
/// Terminal pars are removed first; a lone daimon closes a branch; a
/// terminal tensor or a cut is removed when this leaves exactly two
/// components, one on each side. Cut formulas are built from the shape of
/// the subnet above the cut, with fresh variables at its leaves.
pub fn sequentialize(net: &Net, gamma: &Sequent) -> Option<Proof> {
    if net.arity() != gamma.len() {
        return None;
    }
    let idx = net.index();
    let labels = label_all(net, &idx, gamma)?;
    let mut search = Search {
        net,
        idx,
        labels,
        failed: HashSet::new(),
    };
    let all: BTreeSet<usize> = (0..net.links().len()).collect();
    search.solve(&all, net.arrangement())
}

fn label_all(net: &Net, idx: &NetIndex, gamma: &Sequent) -> Option<BTreeMap<Pos, Formula>> {
    let mut tau = BTreeMap::new();
    for (&c, a) in net.arrangement().iter().zip(&gamma.0) {
        label_tree(net, idx, c, a.clone(), &mut tau)?;
    }
    let mut used: BTreeSet<String> = gamma
        .0
        .iter()
        .flat_map(|f| f.literals())
        .filter_map(|l| match l {
            Formula::Var { name, .. } => Some(name.to_string()),
            _ => None,
        })
        .collect();
    let mut counter = 0usize;
    for l in net.links().iter().filter(|l| l.label() == LinkLabel::Cut) {
        let (a, b) = (l.sources()[0], l.sources()[1]);
        let shape = shape(net, idx, a, &mut used, &mut counter, 0)?;
        label_tree(net, idx, a, shape.clone(), &mut tau)?;
        label_tree(net, idx, b, shape.dual(), &mut tau)?;
    }
    (tau.len() == net.positions().len()).then_some(tau)
}

fn label_tree(net: &Net, idx: &NetIndex, root: Pos, a: Formula, tau: &mut BTreeMap<Pos, Formula>) -> Option<()> {
    let mut stack = vec![(root, a)];
    while let Some((p, a)) = stack.pop() {
        if tau.insert(p, a.clone()).is_some() {
            return None;
        }
        let link = &net.links()[idx.producer[&p].0];
        let s = link.sources();
        match (link.label(), a) {
            (LinkLabel::Daimon, _) => {}
            (LinkLabel::Tensor, Formula::Tensor(l, r)) | (LinkLabel::Par, Formula::Par(l, r)) => {
                stack.push((s[0], *l));
                stack.push((s[1], *r));
            }
            _ => return None,
        }
    }
    Some(())
}

/// The formula shape of the tree above `p` with fresh variables at leaves.
fn shape(
    net: &Net,
    idx: &NetIndex,
    p: Pos,
    used: &mut BTreeSet<String>,
    counter: &mut usize,
    depth: usize,
) -> Option<Formula> {
    if depth > net.links().len() {
        return None;
    }
    let link = &net.links()[idx.producer[&p].0];
    let s = link.sources();
    let mut sub = |q: Pos| shape(net, idx, q, used, counter, depth + 1);
    Some(match link.label() {
        LinkLabel::Tensor => {
            let l = sub(s[0])?;
            Formula::tensor(l, sub(s[1])?)
        }
        LinkLabel::Par => {
            let l = sub(s[0])?;
            Formula::par(l, sub(s[1])?)
        }
        _ => loop {
            *counter += 1;
            let name = format!("C{counter}");
            if used.insert(name.clone()) {
                break Formula::var(&name);
            }
        },
    })
}

struct Search<'a> {
    net: &'a Net,
    idx: NetIndex,
    labels: BTreeMap<Pos, Formula>,
    failed: HashSet<(Vec<usize>, Vec<Pos>)>,
}

impl Search<'_> {
    fn producer(&self, p: Pos) -> usize {
        self.idx.producer[&p].0
    }

    fn solve(&mut self, links: &BTreeSet<usize>, concl: &[Pos]) -> Option<Proof> {
        let key = (links.iter().copied().collect::<Vec<_>>(), concl.to_vec());
        if self.failed.contains(&key) {
            return None;
        }
        let found = self.attempt(links, concl);
        if found.is_none() {
            self.failed.insert(key);
        }
        found
    }

    fn attempt(&mut self, links: &BTreeSet<usize>, concl: &[Pos]) -> Option<Proof> {
        let net = self.net;
        // Terminal par.
        if let Some(&c) = concl
            .iter()
            .find(|c| net.links()[self.producer(**c)].label() == LinkLabel::Par)
        {
            let li = self.producer(c);
            let s = net.links()[li].sources();
            let rest: Vec<Pos> = concl.iter().copied().filter(|q| *q != c).collect();
            let mut sub_concl = vec![s[0], s[1]];
            sub_concl.extend(&rest);
            let mut sub_links = links.clone();
            sub_links.remove(&li);
            let sub = self.solve(&sub_links, &sub_concl)?;
            let mut have = vec![c];
            have.extend(rest);
            return Some(permute(Proof::Par(Box::new(sub)), have, concl));
        }
        // Daimon axiom.
        if links.len() == 1 {
            let l = &net.links()[*links.first().expect("one link")];
            if l.label() == LinkLabel::Daimon {
                let fs = l.targets().iter().map(|p| self.labels[p].clone()).collect();
                return Some(permute(Proof::Daimon(Sequent(fs)), l.targets().to_vec(), concl));
            }
            return None;
        }
        // Splitting tensor or cut.
        for &li in links {
            let l = &net.links()[li];
            let terminal = match l.label() {
                LinkLabel::Tensor => concl.contains(&l.targets()[0]),
                LinkLabel::Cut => true,
                _ => false,
            };
            if !terminal {
                continue;
            }
            let (a, b) = (l.sources()[0], l.sources()[1]);
            let mut rest = links.clone();
            rest.remove(&li);
            let Some(left) = self.split(&rest, self.producer(a), self.producer(b)) else {
                continue;
            };
            let right: BTreeSet<usize> = rest.difference(&left).copied().collect();
            let out = l.targets().first().copied();
            let side = |links: &BTreeSet<usize>| -> Vec<Pos> {
                concl
                    .iter()
                    .copied()
                    .filter(|q| Some(*q) != out && links.contains(&self.producer(*q)))
                    .collect()
            };
            let (gamma, delta) = (side(&left), side(&right));
            let mut c1 = vec![a];
            c1.extend(&gamma);
            let mut c2 = vec![b];
            c2.extend(&delta);
            let Some(p1) = self.solve(&left, &c1) else {
                continue;
            };
            let Some(p2) = self.solve(&right, &c2) else {
                continue;
            };
            let mut have = gamma;
            have.extend(delta);
            let proof = match out {
                Some(c) => {
                    have.push(c);
                    Proof::Tensor(Box::new(p1), Box::new(p2))
                }
                None => Proof::Cut(self.labels[&a].clone(), Box::new(p1), Box::new(p2)),
            };
            return Some(permute(proof, have, concl));
        }
        None
    }

    /// When `links` has exactly two connected components separating `la`
    /// from `lb`, the one containing `la`.
    fn split(&self, links: &BTreeSet<usize>, la: usize, lb: usize) -> Option<BTreeSet<usize>> {
        let order: Vec<usize> = links.iter().copied().collect();
        let at: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut uf = UnionFind::new(order.len());
        let mut owner: BTreeMap<Pos, usize> = BTreeMap::new();
        for (i, &li) in order.iter().enumerate() {
            for p in self.net.links()[li].domain() {
                if let Some(&j) = owner.get(&p) {
                    uf.union(i, j);
                } else {
                    owner.insert(p, i);
                }
            }
        }
        let (ia, ib) = (*at.get(&la)?, *at.get(&lb)?);
        if uf.components != 2 || uf.find(ia) == uf.find(ib) {
            return None;
        }
        let ra = uf.find(ia);
        Some(
            order
                .iter()
                .enumerate()
                .filter(|(i, _)| uf.find(*i) == ra)
                .map(|(_, l)| *l)
                .collect(),
        )
    }
}

/// Adds exchanges taking conclusions in order `have` to order `want`.
fn permute(mut proof: Proof, mut have: Vec<Pos>, want: &[Pos]) -> Proof {
    debug_assert_eq!(have.len(), want.len());
    for i in 0..want.len() {
        let mut j = have.iter().position(|p| *p == want[i]).expect("same conclusions");
        while j > i {
            have.swap(j - 1, j);
            proof = Proof::Ex(j, Box::new(proof));
            j -= 1;
        }
    }
    proof
}
