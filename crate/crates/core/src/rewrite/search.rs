//! Reduction graphs, reachability and orthogonality.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{cuts, describe, interaction, redexes, step, CutKind, ReductionChoice, SplitMode};
use crate::net::{canonical_key, CanonKey, CanonMode, LinkId, Net};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Expand every legal step.
    #[default]
    Exhaustive,
    /// For reaching the empty daimon only: when a reducible cut that is not
    /// irreversible exists, expand that cut alone; otherwise branch over the
    /// irreversible cuts. States with a clash, with only glueings one of
    /// which is cyclic, or with two link-bearing components are abandoned.
    Pruned,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchConfig {
    pub max_states: usize,
    pub max_steps: usize,
    pub split_mode: SplitMode,
    pub strategy: Strategy,
    pub canon: CanonMode,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            max_states: 200_000,
            max_steps: 2_000_000,
            split_mode: SplitMode::OrderPreserving,
            strategy: Strategy::Exhaustive,
            canon: CanonMode::Exact,
        }
    }
}

impl SearchConfig {
    /// Settings used for orthogonality queries: pruned search, states
    /// identified up to the order of daimon targets.
    pub fn for_orthogonality() -> SearchConfig {
        SearchConfig {
            strategy: Strategy::Pruned,
            canon: CanonMode::DaimonUnordered,
            ..SearchConfig::default()
        }
    }

    pub fn exhaustive() -> SearchConfig {
        SearchConfig {
            canon: CanonMode::DaimonUnordered,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error, Serialize, Deserialize)]
#[error("search budget exceeded after {states} states and {steps} steps")]
pub struct BudgetExceeded {
    pub states: usize,
    pub steps: usize,
}

#[derive(Clone, Debug)]
pub struct Node {
    pub net: Net,
    pub edges: Vec<(ReductionChoice, usize)>,
    /// The edge through which the node was first discovered.
    pub parent: Option<(usize, ReductionChoice)>,
}

/// States reachable from a root net, identified by canonical key.
#[derive(Clone, Debug)]
pub struct ReductionGraph {
    nodes: Vec<Node>,
    index: HashMap<CanonKey, usize>,
    steps: usize,
}

impl ReductionGraph {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn lookup(&self, key: &CanonKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Nodes without outgoing edges.
    pub fn normal_forms(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|i| self.nodes[*i].edges.is_empty()).collect()
    }

    /// Choices along discovery edges from the root to node `i`. Replaying
    /// them from the root net reproduces the node's net exactly.
    pub fn path_to(&self, mut i: usize) -> Vec<ReductionChoice> {
        let mut path = Vec::new();
        while let Some((p, c)) = &self.nodes[i].parent {
            path.push(c.clone());
            i = *p;
        }
        path.reverse();
        path
    }

    /// Number of maximal paths from the root, saturating.
    pub fn count_maximal_paths(&self) -> u64 {
        let mut memo: Vec<Option<u64>> = vec![None; self.nodes.len()];
        let mut stack = vec![(0usize, false)];
        while let Some((v, done)) = stack.pop() {
            if memo[v].is_some() {
                continue;
            }
            if done {
                let n = &self.nodes[v];
                memo[v] = Some(if n.edges.is_empty() {
                    1
                } else {
                    n.edges
                        .iter()
                        .fold(0u64, |acc, (_, w)| acc.saturating_add(memo[*w].unwrap_or(0)))
                });
            } else {
                stack.push((v, true));
                for (_, w) in &self.nodes[v].edges {
                    if memo[*w].is_none() {
                        stack.push((*w, false));
                    }
                }
            }
        }
        memo[0].unwrap_or(0)
    }
}

/// The full reduction graph of `net` under the configured split mode.
pub fn explore(net: &Net, cfg: &SearchConfig) -> Result<ReductionGraph, BudgetExceeded> {
    let mut g = ReductionGraph {
        nodes: vec![Node {
            net: net.clone(),
            edges: Vec::new(),
            parent: None,
        }],
        index: HashMap::new(),
        steps: 0,
    };
    g.index.insert(canonical_key(net, cfg.canon), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        let choices = redexes(&g.nodes[v].net, cfg.split_mode);
        for c in choices {
            g.steps += 1;
            if g.steps > cfg.max_steps {
                return Err(BudgetExceeded {
                    states: g.nodes.len(),
                    steps: g.steps,
                });
            }
            let next = step(&g.nodes[v].net, &c).expect("redexes are legal");
            let key = canonical_key(&next, cfg.canon);
            let w = match g.index.get(&key) {
                Some(w) => *w,
                None => {
                    if g.nodes.len() >= cfg.max_states {
                        return Err(BudgetExceeded {
                            states: g.nodes.len(),
                            steps: g.steps,
                        });
                    }
                    g.nodes.push(Node {
                        net: next,
                        edges: Vec::new(),
                        parent: Some((v, c.clone())),
                    });
                    g.index.insert(key, g.nodes.len() - 1);
                    queue.push_back(g.nodes.len() - 1);
                    g.nodes.len() - 1
                }
            };
            g.nodes[v].edges.push((c, w));
        }
    }
    Ok(g)
}

/// Distinct normal forms reachable from `net`.
pub fn normal_forms(net: &Net, cfg: &SearchConfig) -> Result<Vec<Net>, BudgetExceeded> {
    let g = explore(net, cfg)?;
    Ok(g.normal_forms().into_iter().map(|i| g.nodes[i].net.clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessStep {
    pub cut: String,
    pub kind: CutKind,
    pub choice: ReductionChoice,
}

/// A reduction path from a start net, replayable with [`replay`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub steps: Vec<WitnessStep>,
}

impl Witness {
    pub fn choices(&self) -> Vec<ReductionChoice> {
        self.steps.iter().map(|s| s.choice.clone()).collect()
    }
}

/// Applies `path` to `net`, returning every intermediate net including the
/// start and the end.
pub fn replay(net: &Net, path: &[ReductionChoice]) -> Result<Vec<Net>, super::RewriteError> {
    let mut out = vec![net.clone()];
    for c in path {
        let next = step(out.last().expect("non-empty"), c)?;
        out.push(next);
    }
    Ok(out)
}

fn witness_step(net: &Net, choice: ReductionChoice) -> WitnessStep {
    WitnessStep {
        cut: describe(net, &choice),
        kind: super::cut_kind(net, choice.cut).expect("path is legal"),
        choice,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found { witness: Witness, net: Net, states: usize },
    NotFound { states: usize },
}

/// True when no sequence of steps can lead to the empty daimon. A clash
/// never goes away. A cyclic glueing can be opened by a later split of its
/// daimon, so it is final only when every cut is a glueing.
fn hopeless(net: &Net, cs: &[(LinkId, CutKind)]) -> bool {
    if cs.iter().any(|(_, k)| *k == CutKind::Clash) {
        return true;
    }
    if cs.iter().any(|(_, k)| *k == CutKind::Glueing { cyclic: true })
        && cs.iter().all(|(_, k)| matches!(k, CutKind::Glueing { .. }))
    {
        return true;
    }
    link_components(net) > 1
}

/// Number of connected components containing at least one link.
pub(crate) fn link_components(net: &Net) -> usize {
    let n = net.links().len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut owner: HashMap<crate::net::Pos, usize> = HashMap::new();
    for (i, l) in net.links().iter().enumerate() {
        for p in l.domain() {
            if let Some(j) = owner.insert(p, i) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|i| find(&mut parent, *i) == *i).count()
}

fn pruned_redexes(net: &Net, cs: &[(LinkId, CutKind)], mode: SplitMode) -> Vec<ReductionChoice> {
    let pick = |want: CutKind| cs.iter().find(|(_, k)| *k == want).map(|(c, _)| *c);
    let eager = pick(CutKind::Multiplicative)
        .or_else(|| pick(CutKind::Glueing { cyclic: false }))
        .or_else(|| pick(CutKind::Reversible));
    if let Some(cut) = eager {
        return vec![ReductionChoice { cut, split: None }];
    }
    redexes(net, mode)
}

/// Depth-first search for a net satisfying `goal`, memoised on canonical
/// keys. With [`Strategy::Pruned`] the goal must be the empty daimon.
pub fn reach(
    net: &Net,
    cfg: &SearchConfig,
    goal: impl Fn(&Net) -> bool,
) -> Result<Outcome, BudgetExceeded> {
    struct Frame {
        net: Net,
        choices: Vec<ReductionChoice>,
        next: usize,
        via: Option<ReductionChoice>,
    }
    let pruned = cfg.strategy == Strategy::Pruned;
    let expand = |n: &Net| -> Vec<ReductionChoice> {
        if pruned {
            let cs = cuts(n);
            if hopeless(n, &cs) {
                Vec::new()
            } else {
                pruned_redexes(n, &cs, cfg.split_mode)
            }
        } else {
            redexes(n, cfg.split_mode)
        }
    };
    if goal(net) {
        return Ok(Outcome::Found {
            witness: Witness::default(),
            net: net.clone(),
            states: 1,
        });
    }
    let mut seen: HashSet<CanonKey> = HashSet::new();
    seen.insert(canonical_key(net, cfg.canon));
    let mut steps = 0usize;
    let mut stack = vec![Frame {
        choices: expand(net),
        net: net.clone(),
        next: 0,
        via: None,
    }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.choices.len() {
            stack.pop();
            continue;
        }
        let c = top.choices[top.next].clone();
        top.next += 1;
        steps += 1;
        if steps > cfg.max_steps {
            return Err(BudgetExceeded {
                states: seen.len(),
                steps,
            });
        }
        let child = step(&top.net, &c).expect("redexes are legal");
        if goal(&child) {
            let mut steps: Vec<WitnessStep> = stack
                .windows(2)
                .map(|w| witness_step(&w[0].net, w[1].via.clone().expect("pushed by a step")))
                .collect();
            let last = stack.last().expect("non-empty");
            steps.push(witness_step(&last.net, c));
            return Ok(Outcome::Found {
                witness: Witness { steps },
                net: child,
                states: seen.len(),
            });
        }
        let choices = expand(&child);
        // States with a single forced step are not memoised; the next
        // branching state is. Termination does not depend on the memo.
        let forced = pruned && choices.len() == 1 && choices[0].split.is_none();
        if !forced && !seen.insert(canonical_key(&child, cfg.canon)) {
            continue;
        }
        if seen.len() > cfg.max_states {
            return Err(BudgetExceeded {
                states: seen.len(),
                steps,
            });
        }
        stack.push(Frame {
            choices,
            net: child,
            next: 0,
            via: Some(c),
        });
    }
    Ok(Outcome::NotFound { states: seen.len() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Orthogonal(Witness),
    NotOrthogonal,
    Indeterminate(BudgetExceeded),
}

impl Verdict {
    pub fn is_orthogonal(&self) -> bool {
        matches!(self, Verdict::Orthogonal(_))
    }

    /// `Some(true|false)` when decided.
    pub fn decided(&self) -> Option<bool> {
        match self {
            Verdict::Orthogonal(_) => Some(true),
            Verdict::NotOrthogonal => Some(false),
            Verdict::Indeterminate(_) => None,
        }
    }
}

/// S ⊥ T: the empty daimon is reachable from S::T.
pub fn orthogonal(s: &Net, t: &Net, cfg: &SearchConfig) -> Verdict {
    if s.arity() != t.arity() {
        return Verdict::NotOrthogonal;
    }
    let i = interaction(s, t);
    match reach(&i, cfg, Net::is_daimon_zero) {
        Ok(Outcome::Found { witness, .. }) => Verdict::Orthogonal(witness),
        Ok(Outcome::NotFound { .. }) => Verdict::NotOrthogonal,
        Err(b) => Verdict::Indeterminate(b),
    }
}
