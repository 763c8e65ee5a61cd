//! Search-based checks of the strategy properties of cut elimination:
//! factorisation into multiplicative-then-other steps, delaying irreversible
//! cuts and anticipating the other reducible cuts.
//!
//! A cut keeps its link identifier until it is reduced, so "the same cut"
//! in two nets of one reduction sequence is the same identifier. Endpoints
//! are compared up to the order of daimon targets.

use std::collections::HashSet;

use super::{cut_kind, redexes, step, CutKind, ReductionChoice, SplitMode};
use crate::net::{canonical_key, canonical_key_marked, CanonKey, CanonMode, LinkId, Net};

const MODE: CanonMode = CanonMode::DaimonUnordered;

fn end_key(net: &Net, path: &[ReductionChoice]) -> Option<CanonKey> {
    let mut cur = net.clone();
    for c in path {
        cur = step(&cur, c).ok()?;
    }
    Some(canonical_key(&cur, MODE))
}

fn is_mult(net: &Net, c: &ReductionChoice) -> bool {
    cut_kind(net, c.cut) == Ok(CutKind::Multiplicative)
}

/// Finds a sequence of multiplicative steps followed by non-multiplicative
/// steps leading from `net` to the endpoint of `path`.
pub fn check_factorization(net: &Net, path: &[ReductionChoice]) -> bool {
    let Some(target) = end_key(net, path) else {
        return false;
    };
    let mut seen: HashSet<(CanonKey, bool)> = HashSet::new();
    let mut stack = vec![(net.clone(), false)];
    while let Some((cur, late)) = stack.pop() {
        let key = canonical_key(&cur, MODE);
        if key == target {
            return true;
        }
        if !seen.insert((key, late)) {
            continue;
        }
        for c in redexes(&cur, SplitMode::OrderPreserving) {
            let mult = is_mult(&cur, &c);
            if late && mult {
                continue;
            }
            stack.push((step(&cur, &c).expect("legal"), late || !mult));
        }
    }
    false
}

/// For a path whose first step reduces an irreversible cut `c`, takes the
/// longest prefix continuing with cuts that already occur in `net` and finds
/// a reduction to the same endpoint whose last step reduces `c`.
pub fn check_delay(net: &Net, path: &[ReductionChoice]) -> bool {
    let Some(first) = path.first() else {
        return true;
    };
    if cut_kind(net, first.cut) != Ok(CutKind::Irreversible) {
        return true;
    }
    let original: HashSet<LinkId> = super::cuts(net).into_iter().map(|(c, _)| c).collect();
    let mut reduced: HashSet<LinkId> = HashSet::from([first.cut]);
    let mut len = 1;
    for c in &path[1..] {
        if !original.contains(&c.cut) || !reduced.insert(c.cut) {
            break;
        }
        len += 1;
    }
    let Some(target) = end_key(net, &path[..len]) else {
        return false;
    };
    ends_with_cut(net, first.cut, &target)
}

fn ends_with_cut(net: &Net, c: LinkId, target: &CanonKey) -> bool {
    let mut seen: HashSet<CanonKey> = HashSet::new();
    let mut stack = vec![net.clone()];
    while let Some(cur) = stack.pop() {
        if !seen.insert(canonical_key_marked(&cur, MODE, Some(c))) {
            continue;
        }
        for ch in redexes(&cur, SplitMode::OrderPreserving) {
            let next = step(&cur, &ch).expect("legal");
            if ch.cut == c {
                if canonical_key(&next, MODE) == *target {
                    return true;
                }
            } else {
                stack.push(next);
            }
        }
    }
    false
}

/// For every step of `path` reducing a cut that already occurs in `net` and
/// is reducible but not irreversible there, checks that reducing that cut
/// first still reaches the endpoint of the prefix ending with that step.
pub fn check_anticipation(net: &Net, path: &[ReductionChoice]) -> bool {
    let original: HashSet<LinkId> = super::cuts(net).into_iter().map(|(c, _)| c).collect();
    let mut touched: HashSet<LinkId> = HashSet::new();
    let mut cur = net.clone();
    for (j, c) in path.iter().enumerate() {
        let Ok(next) = step(&cur, c) else {
            return false;
        };
        let fresh = !touched.contains(&c.cut) && original.contains(&c.cut);
        if fresh {
            if let Ok(kind) = cut_kind(net, c.cut) {
                if kind.is_reducible() && kind != CutKind::Irreversible && j > 0 {
                    let first = ReductionChoice { cut: c.cut, split: None };
                    let Ok(after) = step(net, &first) else {
                        return false;
                    };
                    if !reaches_key(&after, &canonical_key(&next, MODE)) {
                        return false;
                    }
                }
            }
        }
        touched.insert(c.cut);
        cur = next;
    }
    true
}

fn reaches_key(net: &Net, target: &CanonKey) -> bool {
    let mut seen: HashSet<CanonKey> = HashSet::new();
    let mut stack = vec![net.clone()];
    while let Some(cur) = stack.pop() {
        let key = canonical_key(&cur, MODE);
        if key == *target {
            return true;
        }
        if !seen.insert(key) {
            continue;
        }
        for ch in redexes(&cur, SplitMode::OrderPreserving) {
            stack.push(step(&cur, &ch).expect("legal"));
        }
    }
    false
}
