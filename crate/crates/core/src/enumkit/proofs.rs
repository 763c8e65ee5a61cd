//! Small proofs of the daimon calculus, up to the placement of exchanges.

use super::{EnumError, EnumSpec};
use crate::logic::{Formula, Proof, Sequent};

/// Both literals of each variable, positive first.
pub fn literals(vars: &[&str]) -> Vec<Formula> {
    vars.iter().flat_map(|v| [Formula::var(v), Formula::neg(v)]).collect()
}

/// Daimon sequents over the literals, one per multiset of size 1 to
/// `max_arity`, each listed in literal order.
pub fn daimon_leaves(vars: &[&str], max_arity: usize) -> Vec<Sequent> {
    let lits = literals(vars);
    let mut out = Vec::new();
    fn go(lits: &[Formula], from: usize, left: usize, cur: &mut Vec<Formula>, out: &mut Vec<Sequent>) {
        if !cur.is_empty() {
            out.push(Sequent(cur.clone()));
        }
        if left == 0 {
            return;
        }
        for i in from..lits.len() {
            cur.push(lits[i].clone());
            go(lits, i, left - 1, cur, out);
            cur.pop();
        }
    }
    go(&lits, 0, max_arity, &mut Vec::new(), &mut out);
    out
}

/// Exchanges moving conclusion `idx` of `p` to the front.
fn to_front(mut p: Proof, gamma: &mut Vec<Formula>, idx: usize) -> Proof {
    for k in (1..=idx).rev() {
        p = Proof::Ex(k, Box::new(p));
        gamma.swap(k - 1, k);
    }
    p
}

/// Every proof with at most `spec.max_rules` rules other than exchanges,
/// leaves being daimons on literal multisets of size at most
/// `spec.max_daimon_arity`. A rule acting on chosen conclusions is preceded
/// by the exchanges bringing them to the front; for a par on two equal
/// formulas only one order is taken. Proofs are grouped by size.
pub fn enum_proofs(vars: &[&str], spec: &EnumSpec) -> Result<Vec<(Proof, Sequent)>, EnumError> {
    spec.validate()?;
    let mut by_size: Vec<Vec<(Proof, Sequent)>> = vec![Vec::new()];
    by_size.push(
        daimon_leaves(vars, spec.max_daimon_arity)
            .into_iter()
            .map(|g| (Proof::Daimon(g.clone()), g))
            .collect(),
    );
    for n in 2..=spec.max_rules {
        let mut level = Vec::new();
        for (p, g) in &by_size[n - 1] {
            let k = g.len();
            for i in 0..k {
                for j in 0..k {
                    if i == j || (g.0[i] == g.0[j] && i > j) {
                        continue;
                    }
                    let mut gamma = g.0.clone();
                    let q = to_front(p.clone(), &mut gamma, j);
                    let i2 = if i < j { i + 1 } else { i };
                    let q = to_front(q, &mut gamma, i2);
                    let a = gamma.remove(0);
                    let b = gamma.remove(0);
                    gamma.insert(0, Formula::par(a, b));
                    level.push((Proof::Par(Box::new(q)), Sequent(gamma)));
                }
            }
        }
        for a in 1..n - 1 {
            let b = n - 1 - a;
            for (p1, g1) in &by_size[a] {
                for (p2, g2) in &by_size[b] {
                    for i in 0..g1.len() {
                        for j in 0..g2.len() {
                            let (mut d1, mut d2) = (g1.0.clone(), g2.0.clone());
                            let q1 = to_front(p1.clone(), &mut d1, i);
                            let q2 = to_front(p2.clone(), &mut d2, j);
                            let (x, y) = (d1.remove(0), d2.remove(0));
                            let mut rest = d1;
                            rest.extend(d2);
                            if x.dual() == y {
                                level.push((
                                    Proof::Cut(x.clone(), Box::new(q1.clone()), Box::new(q2.clone())),
                                    Sequent(rest.clone()),
                                ));
                            }
                            rest.push(Formula::tensor(x, y));
                            level.push((Proof::Tensor(Box::new(q1), Box::new(q2)), Sequent(rest)));
                        }
                    }
                }
            }
        }
        by_size.push(level);
    }
    Ok(by_size.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correctness::dr_check;
    use crate::logic::{check_proof, ProofMode};
    use std::collections::{BTreeMap, BTreeSet};

    fn spec(max_rules: usize) -> EnumSpec {
        EnumSpec {
            max_rules,
            ..EnumSpec::default()
        }
    }

    /// Independent count: proofs per conclusion sequent, by size, never
    /// building a proof.
    fn recount(vars: &[&str], max_rules: usize) -> usize {
        let lits = literals(vars);
        let mut levels: Vec<BTreeMap<Vec<Formula>, usize>> = vec![BTreeMap::new(), BTreeMap::new()];
        for a in 0..lits.len() {
            levels[1].insert(vec![lits[a].clone()], 1);
            for b in a..lits.len() {
                levels[1].insert(vec![lits[a].clone(), lits[b].clone()], 1);
            }
        }
        for n in 2..=max_rules {
            let mut level: BTreeMap<Vec<Formula>, usize> = BTreeMap::new();
            for (g, c) in &levels[n - 1] {
                for i in 0..g.len() {
                    for j in 0..g.len() {
                        if i == j || (g[i] == g[j] && i > j) {
                            continue;
                        }
                        let mut rest: Vec<Formula> = g
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| *k != i && *k != j)
                            .map(|(_, f)| f.clone())
                            .collect();
                        rest.insert(0, Formula::par(g[i].clone(), g[j].clone()));
                        *level.entry(rest).or_default() += c;
                    }
                }
            }
            for a in 1..n - 1 {
                for (g1, c1) in &levels[a] {
                    for (g2, c2) in &levels[n - 1 - a] {
                        for i in 0..g1.len() {
                            for j in 0..g2.len() {
                                let mut rest: Vec<Formula> = g1
                                    .iter()
                                    .enumerate()
                                    .filter(|(k, _)| *k != i)
                                    .chain(g2.iter().enumerate().filter(|(k, _)| *k != j))
                                    .map(|(_, f)| f.clone())
                                    .collect();
                                if g1[i].dual() == g2[j] {
                                    *level.entry(rest.clone()).or_default() += c1 * c2;
                                }
                                rest.push(Formula::tensor(g1[i].clone(), g2[j].clone()));
                                *level.entry(rest).or_default() += c1 * c2;
                            }
                        }
                    }
                }
            }
            levels.push(level);
        }
        levels.iter().flat_map(|l| l.values()).sum()
    }

    #[test]
    fn leaves() {
        let ps = enum_proofs(&["X", "Y"], &spec(1)).unwrap();
        assert_eq!(ps.len(), 4 + 10);
        assert!(ps.iter().all(|(p, g)| matches!(p, Proof::Daimon(h) if h == g)));
    }

    #[test]
    fn two_rules_add_one_par() {
        let ps = enum_proofs(&["X", "Y"], &spec(2)).unwrap();
        let pars = ps.iter().filter(|(p, _)| matches!(p, Proof::Par(_))).count();
        assert_eq!(pars, 4 + 6 * 2);
        assert_eq!(ps.len(), 14 + pars);
    }

    #[test]
    fn counts_match_recount() {
        for (vars, n) in [(&["X", "Y"][..], 3), (&["X"][..], 4)] {
            let ps = enum_proofs(vars, &spec(n)).unwrap();
            assert_eq!(ps.len(), recount(vars, n), "{vars:?} {n}");
        }
    }

    #[test]
    fn outputs_are_valid_distinct_and_correct() {
        let ps = enum_proofs(&["X", "Y"], &spec(3)).unwrap();
        let texts: BTreeSet<String> = ps.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(texts.len(), ps.len());
        for (p, g) in &ps {
            assert_eq!(&check_proof(p, ProofMode::MllDaimon).unwrap(), g);
            assert!(p.logical_size() <= 3);
            assert!(dr_check(&p.desequentialize()).correct, "{p}");
        }
    }
}
