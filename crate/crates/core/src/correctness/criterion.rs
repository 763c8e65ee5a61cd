//! The switching criterion in its graph form and its partition form.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::switching::{all_switchings, daimon_partition, partition_orthogonal, up_initial, Side, Switching, UnionFind};
use crate::net::{LinkId, Net, Pos};

/// What a single switching shows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evidence {
    Ok,
    /// Vertices of a cycle of the undirected graph, positions by name and
    /// links as `label#id`.
    Cycle(Vec<String>),
    /// Representatives of two different components.
    Disconnected(String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwitchingReport {
    pub choices: Vec<(LinkId, Side)>,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrReport {
    pub correct: bool,
    pub switchings: Vec<SwitchingReport>,
}

impl DrReport {
    /// The first failing switching, if any.
    pub fn failure(&self) -> Option<&SwitchingReport> {
        self.switchings.iter().find(|s| s.evidence != Evidence::Ok)
    }
}

/// Checks the undirected graph of a par-free net, whose vertices are
/// positions and links and whose edges are incidences.
pub fn graph_evidence(net: &Net) -> Evidence {
    let positions: Vec<Pos> = net.positions().into_iter().collect();
    let pos_index: BTreeMap<Pos, usize> = positions.iter().enumerate().map(|(i, p)| (*p, i)).collect();
    let np = positions.len();
    let n = np + net.links().len();
    let name = |v: usize| {
        if v < np {
            net.display(positions[v])
        } else {
            let l = &net.links()[v - np];
            format!("{}#{}", l.label().keyword(), l.id())
        }
    };
    if n == 0 {
        return Evidence::Disconnected(String::new(), String::new());
    }
    let mut uf = UnionFind::new(n);
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    for (li, l) in net.links().iter().enumerate() {
        let lv = np + li;
        for p in l.domain() {
            let pv = pos_index[&p];
            if !uf.union(lv, pv) {
                let mut cycle = tree_path(&adj, pv, lv);
                cycle.dedup();
                return Evidence::Cycle(cycle.into_iter().map(name).collect());
            }
            adj[lv].push(pv);
            adj[pv].push(lv);
        }
    }
    if uf.components > 1 {
        let root = uf.find(0);
        let other = (1..n).find(|v| uf.find(*v) != root).expect("two components");
        return Evidence::Disconnected(name(0), name(other));
    }
    Evidence::Ok
}

/// The path from `a` to `b` in a forest.
fn tree_path(adj: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let mut prev = vec![usize::MAX; adj.len()];
    prev[a] = a;
    let mut queue = VecDeque::from([a]);
    while let Some(u) = queue.pop_front() {
        if u == b {
            break;
        }
        for &v in &adj[u] {
            if prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = prev[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Every switching is acyclic and connected. Cut links are treated as
/// edges joining their two sources.
pub fn dr_check(net: &Net) -> DrReport {
    let switchings: Vec<SwitchingReport> = all_switchings(net)
        .into_iter()
        .map(|sw| SwitchingReport {
            evidence: graph_evidence(&sw.net),
            choices: sw.choices,
        })
        .collect();
    DrReport {
        correct: switchings.iter().all(|s| s.evidence == Evidence::Ok),
        switchings,
    }
}

/// For every switching, the daimon partition is orthogonal to the partition
/// of initial positions by conclusion. False for nets with cuts or with
/// positions above no conclusion.
pub fn partition_check(net: &Net) -> bool {
    if !net.is_cut_free() {
        return false;
    }
    let Ok(dai) = daimon_partition(net) else {
        return false;
    };
    all_switchings(net).iter().all(|sw: &Switching| {
        up_initial(net, sw).is_ok_and(|up| partition_orthogonal(&dai, &up).unwrap_or(false))
    })
}
