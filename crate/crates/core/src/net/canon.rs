//! Canonical keys for nets up to renaming of positions and link identifiers.
//!
//! Each connected component is encoded as a coloured graph whose vertices are
//! positions and links. Colours are refined by neighbourhood signatures and
//! ties are broken by individualisation, keeping the least code found. The key
//! of a net is the sorted list of component codes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{LinkId, LinkLabel, Net, Pos};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CanonMode {
    /// Link source and target orders are significant (cut sources excepted).
    #[default]
    Exact,
    /// Additionally forget the order of daimon targets.
    DaimonUnordered,
}

/// Canonical key of a net; equal keys mean isomorphic nets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonKey(Vec<u32>);

impl CanonKey {
    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

pub fn canonical_key(net: &Net, mode: CanonMode) -> CanonKey {
    canonical_key_marked(net, mode, None)
}

/// Like [`canonical_key`], with one link distinguished from the others.
pub fn canonical_key_marked(net: &Net, mode: CanonMode, marked: Option<LinkId>) -> CanonKey {
    let g = Graph::build(net, mode, marked);
    let mut codes: Vec<Vec<u32>> = g
        .components()
        .into_iter()
        .map(|comp| g.sub(&comp).canonical_code())
        .collect();
    codes.sort();
    let mut key = vec![codes.len() as u32];
    for c in codes {
        key.push(c.len() as u32);
        key.extend(c);
    }
    CanonKey(key)
}

const SIG_LEN: usize = 5;

struct Graph {
    sig: Vec<[u32; SIG_LEN]>,
    adj: Vec<Vec<(u32, u32)>>,
}

impl Graph {
    fn build(net: &Net, mode: CanonMode, marked: Option<LinkId>) -> Graph {
        let positions: Vec<Pos> = net.positions().into_iter().collect();
        let pidx: HashMap<Pos, usize> = positions.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let np = positions.len();
        let n = np + net.links().len();
        let mut sig = vec![[0u32; SIG_LEN]; n];
        let mut adj = vec![Vec::new(); n];
        for (i, p) in net.arrangement().iter().enumerate() {
            sig[pidx[p]][1] = i as u32 + 1;
        }
        for (k, link) in net.links().iter().enumerate() {
            let v = np + k;
            let label = match link.label() {
                LinkLabel::Daimon => 1,
                LinkLabel::Tensor => 2,
                LinkLabel::Par => 3,
                LinkLabel::Cut => 4,
            };
            sig[v] = [
                1,
                label,
                link.sources().len() as u32,
                link.targets().len() as u32,
                u32::from(marked == Some(link.id())),
            ];
            for (i, p) in link.sources().iter().enumerate() {
                let e = if link.label() == LinkLabel::Cut {
                    10
                } else {
                    11 + i as u32
                };
                adj[v].push((e, pidx[p] as u32));
                adj[pidx[p]].push((e, v as u32));
            }
            for (j, p) in link.targets().iter().enumerate() {
                let e = if link.label() == LinkLabel::Daimon && mode == CanonMode::DaimonUnordered {
                    100
                } else {
                    101 + j as u32
                };
                adj[v].push((e, pidx[p] as u32));
                adj[pidx[p]].push((e, v as u32));
            }
        }
        Graph { sig, adj }
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.sig.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &(_, w) in &self.adj[comp[i]] {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    fn sub(&self, comp: &[usize]) -> Graph {
        let local: HashMap<usize, u32> = comp.iter().enumerate().map(|(i, v)| (*v, i as u32)).collect();
        Graph {
            sig: comp.iter().map(|v| self.sig[*v]).collect(),
            adj: comp
                .iter()
                .map(|v| self.adj[*v].iter().map(|(e, w)| (*e, local[&(*w as usize)])).collect())
                .collect(),
        }
    }

    fn initial_colours(&self) -> Vec<u32> {
        rank(&self.sig)
    }

    /// Refines `colours` to the coarsest equitable partition below it.
    fn refine(&self, colours: &mut Vec<u32>) {
        let mut classes = count_classes(colours);
        loop {
            let sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..colours.len())
                .map(|v| {
                    let mut nb: Vec<(u32, u32)> =
                        self.adj[v].iter().map(|(e, w)| (*e, colours[*w as usize])).collect();
                    nb.sort_unstable();
                    (colours[v], nb)
                })
                .collect();
            *colours = rank(&sigs);
            let next = count_classes(colours);
            if next == classes {
                return;
            }
            classes = next;
        }
    }

    fn encode(&self, colours: &[u32]) -> Vec<u32> {
        let n = colours.len();
        let mut order = vec![0usize; n];
        for (v, c) in colours.iter().enumerate() {
            order[*c as usize] = v;
        }
        let mut code = Vec::with_capacity(n * 8);
        code.push(n as u32);
        for &v in &order {
            code.extend_from_slice(&self.sig[v]);
        }
        for &v in &order {
            let mut nb: Vec<(u32, u32)> =
                self.adj[v].iter().map(|(e, w)| (*e, colours[*w as usize])).collect();
            nb.sort_unstable();
            code.push(nb.len() as u32);
            for (e, w) in nb {
                code.push(e);
                code.push(w);
            }
        }
        code
    }

    fn canonical_code(&self) -> Vec<u32> {
        let mut colours = self.initial_colours();
        let mut best = None;
        self.search(&mut colours, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn search(&self, colours: &mut Vec<u32>, best: &mut Option<Vec<u32>>) {
        self.refine(colours);
        let n = colours.len();
        let mut size = vec![0u32; n];
        for c in colours.iter() {
            size[*c as usize] += 1;
        }
        let Some(target) = (0..n).find(|c| size[*c] > 1) else {
            let code = self.encode(colours);
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        };
        let target = target as u32;
        let cell: Vec<usize> = (0..n).filter(|v| colours[*v] == target).collect();
        let mut tried: Vec<Vec<u32>> = Vec::new();
        for &v in &cell {
            let mut next: Vec<u32> = colours
                .iter()
                .map(|c| if *c == target { 2 * c + 1 } else { 2 * c })
                .collect();
            next[v] = 2 * target;
            self.refine(&mut next);
            // Branches whose refined colouring repeats an earlier one lead to
            // the same leaves.
            if tried.contains(&next) {
                continue;
            }
            tried.push(next.clone());
            self.search(&mut next, best);
        }
    }
}

fn rank<T: Ord>(items: &[T]) -> Vec<u32> {
    let mut sorted: Vec<&T> = items.iter().collect();
    sorted.sort();
    sorted.dedup();
    items
        .iter()
        .map(|x| sorted.binary_search(&x).expect("present") as u32)
        .collect()
}

fn count_classes(colours: &[u32]) -> usize {
    colours.iter().map(|c| *c as usize + 1).max().unwrap_or(0)
}
