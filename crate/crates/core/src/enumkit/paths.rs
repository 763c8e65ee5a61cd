//! Seeded random reduction paths and random closed nets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::testable::groupings;
use crate::logic::{syntax_forest, Formula};
use crate::net::Net;
use crate::rewrite::{interaction, redexes, step, ReductionChoice, SplitMode};

#[derive(Clone, Debug)]
pub struct SampledPath {
    pub choices: Vec<ReductionChoice>,
    pub end: Net,
}

/// `k` maximal reduction paths from `net`, each step chosen uniformly
/// among the legal ones. The same seed gives the same paths.
pub fn sample_paths(net: &Net, k: usize, seed: u64, mode: SplitMode) -> Vec<SampledPath> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            let mut cur = net.clone();
            let mut choices = Vec::new();
            while let Some(c) = redexes(&cur, mode).choose(&mut rng).cloned() {
                cur = step(&cur, &c).expect("redexes are legal");
                choices.push(c);
            }
            SampledPath { choices, end: cur }
        })
        .collect()
}

/// A random formula over `vars` with at most `connectives` connectives.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], connectives: usize) -> Formula {
    let c = rng.gen_range(0..=connectives);
    formula_with(rng, vars, c)
}

fn formula_with(rng: &mut impl Rng, vars: &[&str], c: usize) -> Formula {
    if c == 0 {
        let v = vars.choose(rng).expect("some variable");
        return if rng.gen_bool(0.5) {
            Formula::var(v)
        } else {
            Formula::neg(v)
        };
    }
    let left = rng.gen_range(0..c);
    let a = formula_with(rng, vars, left);
    let b = formula_with(rng, vars, c - 1 - left);
    if rng.gen_bool(0.5) {
        Formula::tensor(a, b)
    } else {
        Formula::par(a, b)
    }
}

fn random_grouping(rng: &mut impl Rng, n: usize) -> Vec<Vec<usize>> {
    let all: Vec<_> = groupings(n).collect();
    all.choose(rng).expect("at least one grouping").clone()
}

/// A random forest with daimons interacting with another, both with
/// `arity` conclusions. When `dual` is set the second forest is built on
/// the duals of the first one's formulas, so every cut is well typed;
/// otherwise its formulas are independent and clashes may occur. Retries
/// until the result has at most `max_links` links.
pub fn random_interaction(rng: &mut impl Rng, arity: usize, max_links: usize, dual: bool) -> Net {
    loop {
        let fs: Vec<Formula> = (0..arity).map(|_| random_formula(rng, &["X", "Y"], 2)).collect();
        let gs: Vec<Formula> = if dual {
            fs.iter().map(Formula::dual).collect()
        } else {
            (0..arity).map(|_| random_formula(rng, &["X", "Y"], 2)).collect()
        };
        let leaves = |v: &[Formula]| v.iter().map(Formula::leaves).sum::<usize>();
        let s = syntax_forest(&fs, &random_grouping(rng, leaves(&fs)), "s");
        let t = syntax_forest(&gs, &random_grouping(rng, leaves(&gs)), "t");
        let net = interaction(&s, &t);
        if net.links().len() <= max_links {
            return net;
        }
    }
}
