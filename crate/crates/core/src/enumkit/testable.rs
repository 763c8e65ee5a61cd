//! Nets atomically testable by a sequent: its syntax forest over every
//! grouping of the leaves into daimons.

use super::{EnumError, EnumSpec};
use crate::logic::{leaf_count, syntax_forest, Sequent};
use crate::net::Net;

/// Set partitions of `0..n` in restricted-growth order.
pub struct Groupings {
    n: usize,
    rgs: Vec<usize>,
    done: bool,
}

/// All set partitions of `0..n`; a single empty partition when `n` is 0.
pub fn groupings(n: usize) -> Groupings {
    Groupings {
        n,
        rgs: vec![0; n],
        done: false,
    }
}

impl Iterator for Groupings {
    type Item = Vec<Vec<usize>>;

    fn next(&mut self) -> Option<Vec<Vec<usize>>> {
        if self.done {
            return None;
        }
        let classes = self.rgs.iter().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); classes];
        for (i, c) in self.rgs.iter().enumerate() {
            out[*c].push(i);
        }
        // Advance: increment the last position that may grow.
        self.done = true;
        for i in (1..self.n).rev() {
            let bound = self.rgs[..i].iter().max().expect("nonempty prefix") + 1;
            if self.rgs[i] < bound {
                self.rgs[i] += 1;
                for r in &mut self.rgs[i + 1..] {
                    *r = 0;
                }
                self.done = false;
                break;
            }
        }
        Some(out)
    }
}

/// Bell numbers, by the triangle recurrence.
pub fn bell(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for x in &row {
            next.push(next.last().expect("nonempty") + x);
        }
        row = next;
    }
    row[0]
}

/// The syntax forest of `gamma` with its leaves grouped into daimons in
/// every possible way. Positions are named `q1, q2, ...`.
pub fn enum_testable(gamma: &Sequent, spec: &EnumSpec) -> Result<impl Iterator<Item = Net>, EnumError> {
    spec.validate()?;
    if gamma.is_empty() {
        return Err(EnumError::EmptySequent);
    }
    let n = leaf_count(gamma);
    if n > spec.max_leaves {
        return Err(EnumError::TooManyLeaves {
            leaves: n,
            max: spec.max_leaves,
        });
    }
    let formulas = gamma.0.clone();
    Ok(groupings(n).map(move |g| syntax_forest(&formulas, &g, "q")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_sequent, testable};
    use crate::net::{canonical_key, CanonMode};
    use std::collections::BTreeSet;

    fn seq(s: &str) -> Sequent {
        Sequent(parse_sequent(s).unwrap())
    }

    #[test]
    fn bell_numbers() {
        let b: Vec<u64> = (0..9).map(bell).collect();
        assert_eq!(b, vec![1, 1, 2, 5, 15, 52, 203, 877, 4140]);
        for n in 0..8 {
            assert_eq!(groupings(n).count() as u64, bell(n));
        }
    }

    #[test]
    fn groupings_are_distinct_partitions() {
        let all: Vec<_> = groupings(4).collect();
        let set: BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for g in all {
            let mut flat: Vec<usize> = g.concat();
            flat.sort();
            assert_eq!(flat, vec![0, 1, 2, 3]);
            assert!(g.iter().all(|c| !c.is_empty()));
        }
    }

    #[test]
    fn rows() {
        let spec = EnumSpec::default();
        let nets: Vec<Net> = enum_testable(&seq("X, Y"), &spec).unwrap().collect();
        assert_eq!(nets.len(), 2);
        assert_eq!(
            canonical_key(&nets[0], CanonMode::Exact),
            canonical_key(&Net::daimon(2), CanonMode::Exact)
        );
        assert_eq!(enum_testable(&seq("X % Y"), &spec).unwrap().count(), 2);
        assert_eq!(enum_testable(&seq("X * Y, Z"), &spec).unwrap().count(), 5);
        assert!(matches!(
            enum_testable(&seq("X*Y*Z, A*B*C*D, E*F"), &spec).map(|_| ()),
            Err(EnumError::TooManyLeaves { leaves: 9, max: 8 })
        ));
    }

    #[test]
    fn outputs_are_atomic_testable_and_distinct() {
        let g = seq("(X * Y) % Z, X^");
        let nets: Vec<Net> = enum_testable(&g, &EnumSpec::default()).unwrap().collect();
        assert_eq!(nets.len() as u64, bell(4));
        let keys: BTreeSet<_> = nets.iter().map(|n| canonical_key(n, CanonMode::Exact)).collect();
        assert_eq!(keys.len(), nets.len());
        for n in &nets {
            assert!(testable(n, &g, true).unwrap().is_some_and(|l| l.is_atomic(n)));
        }
    }
}
