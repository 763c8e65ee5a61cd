//! Acceptance suite: ten criteria, one result line each.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mllnet::correctness::{
    daimon_partition, dr_check, partition_check, partition_orthogonal, sequentialize, test_check, tests,
};
use mllnet::enumkit::{enum_proofs, enum_testable, random_interaction, sample_paths, EnumSpec};
use mllnet::logic::{syntax_forest, testable, Formula, Sequent};
use mllnet::net::{canonical_key, extract_daimons, parse_net, CanonMode, LinkLabel, Net};
use mllnet::realisability::{
    basis_one, basis_par, daimon_one, local_duality_check, merge_compute_check, mll_provable, mll_realizes,
    opponents_for, par_of_daimon, par_of_daimons, realizes, tensor_of_daimons, OpponentMode,
};
use mllnet::rewrite::oracles::{check_anticipation, check_delay, check_factorization};
use mllnet::rewrite::{
    cuts, explore, interaction, orthogonal, redexes,
    replay, sn_measure, CutKind, SearchConfig, SplitMode,
};

const C1_LIMIT: Duration = Duration::from_secs(1);
const C2_LIMIT: Duration = Duration::from_secs(30);
const C3_LIMIT: Duration = Duration::from_secs(300);
const C5_LIMIT: Duration = Duration::from_secs(300);
const C2_NETS: usize = 1000;
const C2_MAX_LINKS: usize = 12;
const C8_PATHS: usize = 200;
const C10_MERGES: usize = 100;
const C10_DUALITIES: usize = 20;
const SEED: u64 = 20_240_601;

type Check = Result<String, String>;

fn pruned() -> SearchConfig {
    SearchConfig::for_orthogonality()
}

fn exhaustive() -> SearchConfig {
    SearchConfig::exhaustive()
}

fn net(s: &str) -> Net {
    parse_net(s).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Formula trees with exactly `k` connectives over a placeholder variable.
fn shapes(k: usize) -> Vec<Formula> {
    if k == 0 {
        return vec![Formula::var("_")];
    }
    let mut out = Vec::new();
    for l in 0..k {
        for a in shapes(l) {
            for b in shapes(k - 1 - l) {
                out.push(Formula::tensor(a.clone(), b.clone()));
                out.push(Formula::par(a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Leaves renamed X1, X2, ... left to right across the sequent.
fn relabel(fs: &[Formula]) -> Sequent {
    fn go(f: &Formula, n: &mut usize) -> Formula {
        match f {
            Formula::Var { .. } => {
                *n += 1;
                Formula::var(&format!("X{n}"))
            }
            Formula::Tensor(a, b) => {
                let a = go(a, n);
                Formula::tensor(a, go(b, n))
            }
            Formula::Par(a, b) => {
                let a = go(a, n);
                Formula::par(a, go(b, n))
            }
        }
    }
    let mut n = 0;
    Sequent(fs.iter().map(|f| go(f, &mut n)).collect())
}

/// Sequents, as multisets of shapes with distinct variables, with at most
/// `max_conn` connectives and `max_leaves` leaves.
fn sequents(max_conn: usize, max_leaves: usize) -> Vec<Sequent> {
    let all: Vec<Formula> = (0..=max_conn).flat_map(shapes).collect();
    let mut out = Vec::new();
    fn go(all: &[Formula], upto: usize, conn: usize, leaves: usize, cur: &mut Vec<Formula>, out: &mut Vec<Sequent>, mc: usize, ml: usize) {
        if !cur.is_empty() {
            out.push(relabel(cur));
        }
        for i in 0..upto {
            let f = &all[i];
            let (c, l) = (conn + f.connectives(), leaves + f.leaves());
            if c <= mc && l <= ml {
                cur.push(f.clone());
                go(all, i + 1, c, l, cur, out, mc, ml);
                cur.pop();
            }
        }
    }
    go(&all, all.len(), 0, 0, &mut Vec::new(), &mut out, max_conn, max_leaves);
    out
}

fn dual(g: &Sequent) -> Sequent {
    Sequent(g.0.iter().map(Formula::dual).collect())
}

fn forests(g: &Sequent) -> Vec<Net> {
    enum_testable(g, &EnumSpec::default()).unwrap().collect()
}

struct Corpus {
    sequents: Vec<Sequent>,
    nets: Vec<(Net, usize)>,
}

fn corpus() -> Corpus {
    let sequents = sequents(3, 5);
    let nets = sequents
        .iter()
        .enumerate()
        .flat_map(|(i, g)| forests(g).into_iter().map(move |n| (n, i)))
        .collect();
    Corpus { sequents, nets }
}

fn c1() -> Check {
    let start = Instant::now();
    // Unary daimon against the tensor of two unary daimons.
    let s = net("dai q\nconclusions: q");
    let t = net("dai p1\ndai p2\ntensor p1 p2 -> p\nconclusions: p");
    let i = interaction(&s, &t);
    let g = explore(&i, &exhaustive()).map_err(|e| e.to_string())?;
    let nfs = g.normal_forms();
    ensure(nfs.len() == 1 && g.nodes()[nfs[0]].net.is_daimon_zero(), || {
        "example pair does not reduce to the empty daimon only".into()
    })?;
    let path = g.path_to(nfs[0]);
    let kinds: Vec<CutKind> = replay(&i, &path)
        .unwrap()
        .iter()
        .zip(&path)
        .map(|(n, c)| mllnet::rewrite::cut_kind(n, c.cut).unwrap())
        .collect();
    ensure(
        kinds == [CutKind::Reversible, CutKind::Glueing { cyclic: false }, CutKind::Glueing { cyclic: false }],
        || format!("example pair path {kinds:?}"),
    )?;
    // Binary daimon against two disconnected pars.
    let pp = par_of_daimons().parallel(&par_of_daimons());
    for cfg in [pruned(), exhaustive()] {
        ensure(orthogonal(&Net::daimon(2), &pp, &cfg).decided() == Some(false), || {
            "binary daimon is orthogonal to two disconnected pars".into()
        })?;
    }
    // Cyclic glueing.
    let stuck = net("dai p q\ncut p q\nconclusions:");
    ensure(redexes(&stuck, SplitMode::OrderPreserving).is_empty(), || "cyclic cut reducible".into())?;
    ensure(cuts(&stuck)[0].1 == CutKind::Glueing { cyclic: true }, || "cyclic cut misclassified".into())?;
    // The three nets orthogonal to the unary daimon.
    for o in [daimon_one(), tensor_of_daimons(), par_of_daimon()] {
        for cfg in [pruned(), exhaustive()] {
            ensure(orthogonal(&daimon_one(), &o, &cfg).is_orthogonal(), || format!("not orthogonal to the unary daimon:\n{o}"))?;
        }
    }
    // Identity cut-nets: a par over two targets of one daimon cut against another daimon.
    let mut checked = 0;
    for (a, b, c, d, e) in corners() {
        let mut first: Vec<String> = (0..a).map(|i| format!("a{i}")).collect();
        first.push("p1".into());
        first.extend((0..b).map(|i| format!("b{i}")));
        first.push("p2".into());
        first.extend((0..c).map(|i| format!("c{i}")));
        let mut second: Vec<String> = (0..d).map(|i| format!("d{i}")).collect();
        second.push("q".into());
        second.extend((0..e).map(|i| format!("e{i}")));
        let concl: Vec<String> = first
            .iter()
            .chain(&second)
            .filter(|x| !matches!(x.as_str(), "p1" | "p2" | "q"))
            .cloned()
            .collect();
        let src = format!(
            "dai {}\npar p1 p2 -> p\ndai {}\ncut p q\nconclusions: {}",
            first.join(" "),
            second.join(" "),
            concl.join(" ")
        );
        let n = net(&src);
        let g = explore(&n, &exhaustive()).map_err(|e| e.to_string())?;
        let ends: BTreeSet<_> = g
            .normal_forms()
            .into_iter()
            .map(|i| canonical_key(&g.nodes()[i].net, CanonMode::DaimonUnordered))
            .collect();
        let want = canonical_key(&Net::daimon(concl.len()), CanonMode::DaimonUnordered);
        ensure(ends.len() == 1 && ends.contains(&want), || format!("identity cut-net:\n{src}"))?;
        checked += 1;
    }
    let t = within(start, C1_LIMIT)?;
    Ok(format!("5 figure computations, {checked} identity cut-nets, {t:.2?}"))
}

fn corners() -> Vec<(usize, usize, usize, usize, usize)> {
    let mut v = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for d in 0..2 {
                    for e in 0..2 {
                        v.push((a, b, c, d, e));
                    }
                }
            }
        }
    }
    v
}

fn c2() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut edges = 0usize;
    for k in 0..C2_NETS {
        let n = random_interaction(&mut rng, 1 + k % 3, C2_MAX_LINKS, k % 2 == 0);
        ensure(n.links().len() <= C2_MAX_LINKS, || "net too large".into())?;
        let g = explore(&n, &exhaustive()).map_err(|e| format!("budget hit on net {k}: {e}"))?;
        for node in g.nodes() {
            let m = sn_measure(&node.net);
            for (_, to) in &node.edges {
                edges += 1;
                let m2 = sn_measure(&g.nodes()[*to].net);
                ensure(m2 < m, || format!("measure {m:?} -> {m2:?} on net {k}"))?;
            }
        }
    }
    let t = within(start, C2_LIMIT)?;
    Ok(format!("{C2_NETS} nets, {edges} steps all decreasing, 0 budget hits, {t:.2?}"))
}

fn c3(c: &Corpus) -> Check {
    let start = Instant::now();
    let mut correct = 0;
    for (n, gi) in &c.nets {
        let g = &c.sequents[*gi];
        let d = dr_check(n).correct;
        let p = partition_check(n);
        let s = sequentialize(n, g).is_some();
        let t = test_check(n, g, &pruned()).map_err(|e| e.to_string())?.passed;
        ensure(d == p && p == s && s == t, || {
            format!("disagreement dr={d} partition={p} seq={s} tests={t} on {g}:\n{n}")
        })?;
        correct += d as usize;
    }
    let t = within(start, C3_LIMIT)?;
    Ok(format!(
        "{} nets over {} sequents, {correct} correct, 0 disagreements, {t:.2?}",
        c.nets.len(),
        c.sequents.len()
    ))
}

fn c4() -> Check {
    // Test sets depend only on the connective tree, so every tree of depth
    // at most 3 is checked once, and the independence from the variables is
    // checked on all formulas of depth at most 2 over two variables.
    let mut trees: Vec<Formula> = vec![Formula::var("_")];
    for _ in 0..3 {
        let mut next = vec![Formula::var("_")];
        for a in &trees {
            for b in &trees {
                next.push(Formula::tensor(a.clone(), b.clone()));
                next.push(Formula::par(a.clone(), b.clone()));
            }
        }
        trees = next;
    }
    let mut count = 0;
    for f in &trees {
        let a = relabel_xy(f, &mut 0);
        let dual = Sequent(vec![a.dual()]);
        for t in tests(&a) {
            ensure(dr_check(&t).correct, || format!("test of {a} incorrect:\n{t}"))?;
            ensure(sequentialize(&t, &dual).is_some(), || format!("test of {a} does not sequentialize:\n{t}"))?;
            count += 1;
        }
    }
    let lits = [Formula::var("X"), Formula::neg("X"), Formula::var("Y"), Formula::neg("Y")];
    let mut depth2: Vec<Formula> = lits.to_vec();
    for _ in 0..2 {
        let mut next = lits.to_vec();
        for a in &depth2 {
            for b in &depth2 {
                next.push(Formula::tensor(a.clone(), b.clone()));
                next.push(Formula::par(a.clone(), b.clone()));
            }
        }
        depth2 = next;
    }
    let key_set = |a: &Formula| -> BTreeSet<_> {
        tests(a).iter().map(|t| canonical_key(t, CanonMode::Exact)).collect()
    };
    for f in &depth2 {
        let shape = relabel_xy(f, &mut 0);
        ensure(key_set(f) == key_set(&shape), || format!("tests of {f} depend on its variables"))?;
    }
    Ok(format!(
        "{} trees of depth <= 3, {count} tests, variable independence on {} formulas",
        trees.len(),
        depth2.len()
    ))
}

/// Leaves alternately X and Y.
fn relabel_xy(f: &Formula, n: &mut usize) -> Formula {
    match f {
        Formula::Var { .. } => {
            *n += 1;
            Formula::var(if *n % 2 == 1 { "X" } else { "Y" })
        }
        Formula::Tensor(a, b) => {
            let a = relabel_xy(a, n);
            Formula::tensor(a, relabel_xy(b, n))
        }
        Formula::Par(a, b) => {
            let a = relabel_xy(a, n);
            Formula::par(a, relabel_xy(b, n))
        }
    }
}

fn c5() -> Check {
    let start = Instant::now();
    let spec = EnumSpec {
        max_rules: 4,
        ..EnumSpec::default()
    };
    let proofs = enum_proofs(&["X", "Y"], &spec).map_err(|e| e.to_string())?;
    let b = basis_one();
    let mut checked = 0;
    let mut skipped = 0;
    for (p, g) in &proofs {
        if g.is_empty() {
            skipped += 1;
            continue;
        }
        let n = p.desequentialize();
        for mode in [OpponentMode::Tests, OpponentMode::Basis] {
            let r = realizes(&n, g, &b, mode, &pruned()).map_err(|e| format!("{p}: {e}"))?;
            ensure(r, || format!("{p} does not realise {g} in {mode:?} mode"))?;
        }
        checked += 1;
    }
    let t = within(start, C5_LIMIT)?;
    Ok(format!(
        "{checked} proofs realise their conclusion in both modes ({skipped} with empty conclusion skipped), {t:.2?}"
    ))
}

/// Γ with the connective at the root of formula `i` flipped.
fn flip_root(g: &Sequent, i: usize) -> Option<Sequent> {
    let f = match &g.0[i] {
        Formula::Tensor(a, b) => Formula::par((**a).clone(), (**b).clone()),
        Formula::Par(a, b) => Formula::tensor((**a).clone(), (**b).clone()),
        Formula::Var { .. } => return None,
    };
    let mut h = g.clone();
    h.0[i] = f;
    Some(h)
}

fn c6() -> Check {
    let mut corpus: Vec<(Net, Sequent)> = Vec::new();
    let mut malformed = 0;
    for g in sequents(3, 4) {
        for n in forests(&g) {
            corpus.push((n, g.clone()));
        }
        for i in 0..g.len() {
            if let Some(h) = flip_root(&g, i) {
                for n in forests(&h) {
                    corpus.push((n, g.clone()));
                    malformed += 1;
                }
            }
        }
    }
    let b = basis_one();
    let mut realised = 0;
    for (n, g) in &corpus {
        let r = realizes(n, g, &b, OpponentMode::Both, &pruned()).map_err(|e| e.to_string())?;
        let ok = matches!(testable(n, g, false), Ok(Some(_))) && dr_check(n).correct;
        ensure(r == ok, || format!("realises={r} testable-and-correct={ok} on {g}:\n{n}"))?;
        realised += r as usize;
    }
    Ok(format!(
        "{} nets ({malformed} with a flipped connective), {realised} realise, 0 counterexamples",
        corpus.len()
    ))
}

fn c7() -> Check {
    let d2 = Net::daimon(2);
    let seq = |a: Formula, b: Formula| Sequent(vec![a, b]);
    let (x, y) = (Formula::var("X"), Formula::var("Y"));
    ensure(
        realizes(&d2, &seq(x.clone(), x.dual()), &basis_par(), OpponentMode::Basis, &pruned()) == Ok(true),
        || "binary daimon fails X, X^".into(),
    )?;
    ensure(
        realizes(&d2, &seq(x.clone(), y.clone()), &basis_par(), OpponentMode::Basis, &pruned()) == Ok(false),
        || "binary daimon passes X, Y".into(),
    )?;
    let lits = [x.clone(), x.dual(), y.clone(), y.dual()];
    let mut provable = 0;
    let mut checked = 0;
    for a in &lits {
        for b in &lits {
            let g = seq(a.clone(), b.clone());
            let r = mll_realizes(&d2, &g, &pruned()).map_err(|e| e.to_string())?;
            let p = mll_provable(&d2, &g);
            ensure(r == p, || format!("realises={r} provable={p} on {g}"))?;
            provable += p as usize;
            checked += 1;
        }
    }
    ensure(provable == 4, || format!("{provable} provable atomic sequents"))?;
    // Binary-daimon groupings of two formulas with two leaves each. A net is
    // provable exactly when it is switching-correct and each daimon joins
    // dual literals; that count is 16 tensors times 2 matching pars.
    let mut pairs = Vec::new();
    for a in &lits {
        for b in &lits {
            pairs.push(Formula::tensor(a.clone(), b.clone()));
            pairs.push(Formula::par(a.clone(), b.clone()));
        }
    }
    let matchings = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];
    let mut grouped = 0;
    let mut grouped_provable = 0;
    for i in 0..pairs.len() {
        for j in i..pairs.len() {
            let g = seq(pairs[i].clone(), pairs[j].clone());
            let leaves: Vec<&Formula> = g.0.iter().flat_map(|f| f.literals()).collect();
            for m in &matchings {
                let grouping: Vec<Vec<usize>> = m.iter().map(|c| c.to_vec()).collect();
                let n = syntax_forest(&g.0, &grouping, "p");
                let axioms = m.iter().all(|[x, y]| *leaves[*x] == leaves[*y].dual());
                let expected = axioms && dr_check(&n).correct;
                let p = mll_provable(&n, &g);
                let r = mll_realizes(&n, &g, &pruned()).map_err(|e| e.to_string())?;
                ensure(p == expected && r == p, || {
                    format!("realises={r} provable={p} expected={expected} on {g} grouped {m:?}")
                })?;
                grouped += 1;
                grouped_provable += p as usize;
            }
        }
    }
    ensure(grouped_provable == 32, || format!("{grouped_provable} provable grouped nets"))?;
    Ok(format!(
        "{checked} two-literal sequents ({provable} provable), {grouped} four-leaf groupings ({grouped_provable} provable), classification exact"
    ))
}

fn c8(c: &Corpus) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut nonvacuous = 0;
    for k in 0..C8_PATHS {
        let n = random_interaction(&mut rng, 1 + k % 2, 10, k % 3 != 0);
        let seed = rng.gen();
        let path = &sample_paths(&n, 1, seed, SplitMode::OrderPreserving)[0].choices;
        ensure(check_factorization(&n, path), || format!("factorization on path {k}:\n{n}"))?;
        ensure(check_delay(&n, path), || format!("delay on path {k}:\n{n}"))?;
        ensure(check_anticipation(&n, path), || format!("anticipation on path {k}:\n{n}"))?;
        nonvacuous += path.iter().any(|ch| ch.split.is_some()) as usize;
    }
    let mut verdicts = 0;
    for (n, gi) in &c.nets {
        let g = &c.sequents[*gi];
        for o in opponents_for(g, &basis_one(), OpponentMode::Tests) {
            let a = orthogonal(n, &o.net, &pruned()).decided();
            let b = orthogonal(n, &o.net, &exhaustive()).decided();
            ensure(a.is_some() && a == b, || format!("pruned {a:?} exhaustive {b:?} on {g}:\n{n}\nagainst\n{}", o.net))?;
            verdicts += 1;
        }
    }
    Ok(format!(
        "{C8_PATHS} paths ({nonvacuous} with irreversible steps) pass all three rewritings; {verdicts} pruned verdicts equal exhaustive"
    ))
}

fn c9(c: &Corpus, pairs: &mut Vec<(Net, Net)>) -> Check {
    let mut checked = 0;
    let mut orth = 0;
    for g in &c.sequents {
        let ss = forests(g);
        let ts = forests(&dual(g));
        let sd: Vec<(Net, _)> = ss.iter().map(|s| (extract_daimons(s).unwrap(), daimon_partition(s).unwrap())).collect();
        let td: Vec<(Net, _)> = ts.iter().map(|t| (extract_daimons(t).unwrap(), daimon_partition(t).unwrap())).collect();
        for (s, (sx, sp)) in ss.iter().zip(&sd) {
            for (t, (tx, tp)) in ts.iter().zip(&td) {
                let a = orthogonal(s, t, &pruned()).decided();
                let b = orthogonal(sx, tx, &pruned()).decided();
                let p = partition_orthogonal(sp, tp).map_err(|e| e.to_string())?;
                ensure(a == Some(p) && b == Some(p), || {
                    format!("net {a:?} daimons {b:?} partitions {p} on {g}:\n{s}\nagainst\n{t}")
                })?;
                checked += 1;
                if p {
                    orth += 1;
                    pairs.push((s.clone(), t.clone()));
                }
            }
        }
    }
    Ok(format!("{checked} dual pairs, {orth} orthogonal, three notions agree"))
}

fn c10(pairs: &[(Net, Net)]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let sample: Vec<&(Net, Net)> = pairs.choose_multiple(&mut rng, C10_MERGES).collect();
    ensure(sample.len() == C10_MERGES, || "not enough orthogonal pairs".into())?;
    for (s, t) in &sample {
        let ds: Vec<_> = s.daimons().map(|d| d.id()).collect();
        let d = *ds.choose(&mut rng).unwrap();
        let n = rng.gen_range(1..=3);
        let ok = merge_compute_check(s, t, d, n, &pruned()).map_err(|e| e.to_string())?;
        ensure(ok, || format!("merge with {n} conclusions fails:\n{s}\nagainst\n{t}"))?;
    }
    let one: Vec<&(Net, Net)> = pairs
        .iter()
        .filter(|(s, _)| s.arity() == 1 && s.count(LinkLabel::Daimon) > 0)
        .collect();
    let duals: Vec<&&(Net, Net)> = one.choose_multiple(&mut rng, C10_DUALITIES).collect();
    ensure(duals.len() == C10_DUALITIES, || "not enough one-conclusion pairs".into())?;
    for (s, t) in duals.iter().map(|p| (&p.0, &p.1)) {
        for k in [0, 2] {
            let ok = local_duality_check(s, t, k, &pruned()).map_err(|e| e.to_string())?;
            ensure(ok, || format!("local duality k={k} fails:\n{s}\nagainst\n{t}"))?;
        }
    }
    Ok(format!("{C10_MERGES} merges reach the added daimon; {C10_DUALITIES} pairs pass local duality for k = 0, 2"))
}

#[test]
fn acceptance() {
    let corpus = corpus();
    let mut pairs = Vec::new();
    let mut failed = Vec::new();
    let mut report = |i: usize, r: Check| match r {
        Ok(detail) => println!("criterion {i}: PASS: {detail}"),
        Err(why) => {
            println!("criterion {i}: FAIL: {why}");
            failed.push(i);
        }
    };
    report(1, c1());
    report(2, c2());
    report(3, c3(&corpus));
    report(4, c4());
    report(5, c5());
    report(6, c6());
    report(7, c7());
    report(8, c8(&corpus));
    report(9, c9(&corpus, &mut pairs));
    report(10, c10(&pairs));
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
