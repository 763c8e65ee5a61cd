use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use mllnet::correctness::{classify_failure, dr_check, sequentialize, test_check, tests, Evidence, SwitchingReport};
use mllnet::enumkit::{enum_proofs, enum_testable, random_interaction, sample_paths, EnumSpec};
use mllnet::logic::{check_proof, parse_formula, parse_proof, parse_sequent, testable, ProofMode, Sequent};
use mllnet::net::{parse_net, to_dot, Net};
use mllnet::realisability::{
    adequacy_experiment, basis_one, basis_par, completeness_experiment, first_normal_form, realize_report, Basis,
    ExperimentError, OpponentMode, OpponentVerdict, RealizeError,
};
use mllnet::rewrite::oracles::{check_anticipation, check_delay, check_factorization};
use mllnet::rewrite::{
    describe, interaction, normal_forms, orthogonal, redexes, replay, sn_measure, step, BudgetExceeded, SearchConfig,
    SplitMode, Verdict, Witness,
};

use crate::{Cli, Command, Experiment, Global};

pub const SCHEMA: &str = "mllnet/1";

pub struct Outcome {
    pub text: String,
    pub code: u8,
}

pub enum Failure {
    Input(anyhow::Error),
    Budget(BudgetExceeded),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Input(e)
    }
}

impl From<BudgetExceeded> for Failure {
    fn from(e: BudgetExceeded) -> Failure {
        Failure::Budget(e)
    }
}

type Run = Result<Outcome, Failure>;

fn code(verdict: Option<bool>) -> u8 {
    match verdict {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    }
}

/// Text output, or the JSON document tagged with the schema.
fn finish(g: &Global, command: &str, value: Value, text: String, code: u8) -> Run {
    let text = if g.json {
        let mut doc = json!({ "schema": SCHEMA, "command": command });
        if let (Value::Object(d), Value::Object(v)) = (&mut doc, value) {
            d.extend(v);
        }
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("json values serialize"))
    } else {
        text
    };
    Ok(Outcome { text, code })
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("{}: cannot read", path.display()))
}

fn read_net(path: &Path) -> anyhow::Result<Net> {
    parse_net(&read_text(path)?).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn sequent(src: &str) -> anyhow::Result<Sequent> {
    Ok(Sequent(parse_sequent(src).map_err(|e| anyhow!("sequent `{src}`: {e}"))?))
}

fn config(g: &Global) -> SearchConfig {
    SearchConfig {
        max_states: g.max_states,
        ..SearchConfig::for_orthogonality()
    }
}

fn load_basis(spec: &str) -> anyhow::Result<Basis> {
    match spec {
        "one" => Ok(basis_one()),
        "par" => Ok(basis_par()),
        file => Basis::load(Path::new(file)).map_err(|e| anyhow!("{file}: {e}")),
    }
}

fn mode(src: &str) -> anyhow::Result<OpponentMode> {
    src.parse().map_err(|e: String| anyhow!(e))
}

fn block(net: &Net) -> String {
    net.to_string().trim_end().to_string()
}

fn show_switching(s: &SwitchingReport) -> String {
    let choices: Vec<String> = s.choices.iter().map(|(l, side)| format!("{l}:{side:?}")).collect();
    let evidence = match &s.evidence {
        Evidence::Ok => "ok".to_string(),
        Evidence::Cycle(v) => format!("cycle {}", v.join(" - ")),
        Evidence::Disconnected(a, b) => format!("disconnected: {a} and {b} are in different components"),
    };
    format!("switching [{}]: {evidence}", choices.join(", "))
}

fn show_witness(start: &Net, w: &Witness, trace: bool) -> String {
    let mut out = String::new();
    let nets = if trace { replay(start, &w.choices()).ok() } else { None };
    for (i, s) in w.steps.iter().enumerate() {
        let _ = writeln!(out, "  {}. {} [{}]", i + 1, s.cut, s.kind);
        if let Some(nets) = &nets {
            for line in nets[i + 1].to_string().lines() {
                let _ = writeln!(out, "       {line}");
            }
        }
    }
    out
}

pub fn run(cli: &Cli) -> Run {
    let g = &cli.global;
    match &cli.command {
        Command::Check { file, against } => check(g, file, against.as_deref()),
        Command::Tests { formula } => {
            let f = parse_formula(formula).map_err(|e| anyhow!("formula `{formula}`: {e}"))?;
            let ts = tests(&f);
            let text = ts.iter().map(block).collect::<Vec<_>>().join("\n\n") + "\n";
            let value = json!({ "formula": f.to_string(), "tests": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>() });
            finish(g, "tests", value, text, 0)
        }
        Command::Ortho { left, right } => ortho(g, left, right),
        Command::Normalize { file, all } => normalize(g, file, *all),
        Command::Deseq { file } => {
            let src = read_text(file)?;
            let p = parse_proof(&src).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let gamma = check_proof(&p, ProofMode::MllDaimon).map_err(|e| anyhow!("{}: {e}", file.display()))?;
            let net = p.desequentialize();
            let text = format!("# conclusion: {gamma}\n{net}");
            finish(g, "deseq", json!({ "sequent": gamma.to_string(), "net": net.to_string() }), text, 0)
        }
        Command::Seq { file, sequent: s } => {
            let net = read_net(file)?;
            let gamma = sequent(s)?;
            let proof = sequentialize(&net, &gamma);
            let text = match &proof {
                Some(p) => format!("{p}\n"),
                None => "FAIL\n".to_string(),
            };
            let value = json!({ "sequent": gamma.to_string(), "proof": proof.as_ref().map(|p| p.to_string()) });
            finish(g, "seq", value, text, code(Some(proof.is_some())))
        }
        Command::Realize {
            file,
            sequent: s,
            basis,
            mode: m,
            report,
        } => realize(g, file, s, basis, m, report.as_deref()),
        Command::Enum {
            sequent: s,
            emit,
            max_leaves,
        } => enumerate(g, s, emit.as_deref(), *max_leaves),
        Command::Dot { file } => {
            let net = read_net(file)?;
            let dot = to_dot(&net);
            finish(g, "dot", json!({ "dot": dot }), dot.clone(), 0)
        }
        Command::Experiment { which } => experiment(g, which),
    }
}

fn check(g: &Global, file: &Path, against: Option<&str>) -> Run {
    let net = read_net(file)?;
    let dr = dr_check(&net);
    let mut text = format!("switchings: {}\n", dr.switchings.len());
    if let Some(f) = dr.failure() {
        let _ = writeln!(text, "{}", show_switching(f));
    }
    let mut value = json!({ "switchings": dr.switchings.len(), "dr_correct": dr.correct, "failure": dr.failure() });
    let mut verdict = dr.correct;
    if let Some(src) = against {
        let gamma = sequent(src)?;
        let labelled = matches!(testable(&net, &gamma, false), Ok(Some(_)));
        let outcome = test_check(&net, &gamma, &config(g))?;
        let _ = writeln!(text, "testable by {gamma}: {labelled}");
        let _ = writeln!(
            text,
            "tests: {} of {} tuples",
            if outcome.passed { "passed all" } else { "failed" },
            outcome.tuples
        );
        value["sequent"] = json!(gamma.to_string());
        value["testable"] = json!(labelled);
        value["tests"] = json!(outcome);
        verdict &= labelled;
    }
    text.insert_str(0, if verdict { "CORRECT\n" } else { "INCORRECT\n" });
    value["correct"] = json!(verdict);
    finish(g, "check", value, text, code(Some(verdict)))
}

fn ortho(g: &Global, left: &Path, right: &Path) -> Run {
    let (a, b) = (read_net(left)?, read_net(right)?);
    if a.arity() != b.arity() {
        return Err(anyhow!("{} has {} conclusions but {} has {}", left.display(), a.arity(), right.display(), b.arity()).into());
    }
    let cfg = config(g);
    match orthogonal(&a, &b, &cfg) {
        Verdict::Orthogonal(w) => {
            let text = format!(
                "orthogonal\nwitness ({} steps):\n{}",
                w.steps.len(),
                show_witness(&interaction(&a, &b), &w, g.trace)
            );
            finish(g, "ortho", json!({ "orthogonal": true, "witness": w }), text, 0)
        }
        Verdict::NotOrthogonal => {
            let nf = first_normal_form(&interaction(&a, &b), &cfg);
            let class = classify_failure(&nf);
            let text = format!(
                "not orthogonal\nnormal form ({}):\n{}\n",
                class.map_or("unclassified".to_string(), |c| format!("{c:?}")),
                block(&nf)
            );
            let value = json!({ "orthogonal": false, "normal_form": nf.to_string(), "class": class });
            finish(g, "ortho", value, text, 1)
        }
        Verdict::Indeterminate(b) => Err(b.into()),
    }
}

fn normalize(g: &Global, file: &Path, all: bool) -> Run {
    let net = read_net(file)?;
    if all {
        let cfg = SearchConfig {
            max_states: g.max_states,
            ..SearchConfig::exhaustive()
        };
        let nfs = normal_forms(&net, &cfg)?;
        let text = nfs
            .iter()
            .enumerate()
            .map(|(i, n)| format!("# normal form {}\n{n}", i + 1))
            .collect::<Vec<_>>()
            .join("\n");
        let value = json!({ "normal_forms": nfs.iter().map(|n| n.to_string()).collect::<Vec<_>>() });
        return finish(g, "normalize", value, text, 0);
    }
    let mut cur = net;
    let mut text = String::new();
    let mut steps = Vec::new();
    while let Some(c) = redexes(&cur, SplitMode::default()).into_iter().next() {
        let d = describe(&cur, &c);
        cur = step(&cur, &c).map_err(|e| anyhow!("{e}"))?;
        if g.trace {
            let _ = writeln!(text, "# {}. {d}", steps.len() + 1);
        }
        steps.push(d);
    }
    text.push_str(&cur.to_string());
    finish(g, "normalize", json!({ "steps": steps, "normal_form": cur.to_string() }), text, 0)
}

fn realize(g: &Global, file: &Path, s: &str, basis: &str, m: &str, report: Option<&Path>) -> Run {
    let net = read_net(file)?;
    let gamma = sequent(s)?;
    let basis = load_basis(basis)?;
    let r = realize_report(&net, &gamma, &basis, mode(m)?, &config(g)).map_err(|e| match e {
        RealizeError::Budget(b) => Failure::Budget(b),
        e => Failure::Input(anyhow!("{}: {e}", file.display())),
    })?;
    let mut value = serde_json::to_value(&r).expect("reports serialize");
    if let Some(path) = report {
        let mut doc = json!({ "schema": SCHEMA });
        if let (Value::Object(d), Value::Object(v)) = (&mut doc, value.clone()) {
            d.extend(v);
        }
        let body = serde_json::to_string_pretty(&doc).expect("json values serialize");
        fs::write(path, body + "\n").with_context(|| format!("{}: cannot write", path.display()))?;
    }
    let count = |pred: fn(&OpponentVerdict) -> bool| r.results.iter().filter(|x| pred(&x.verdict)).count();
    let mut text = format!(
        "{}\nopponents: {}, orthogonal: {}, not orthogonal: {}, undecided: {}\n",
        match r.passes_all_finite_opponents {
            Some(true) => "REALIZES",
            Some(false) => "DOES NOT REALIZE",
            None => "UNDECIDED",
        },
        r.results.len(),
        count(|v| matches!(v, OpponentVerdict::Orthogonal { .. })),
        count(|v| matches!(v, OpponentVerdict::NotOrthogonal { .. })),
        count(|v| matches!(v, OpponentVerdict::Indeterminate { .. })),
    );
    for x in &r.results {
        if let OpponentVerdict::NotOrthogonal { class, .. } = &x.verdict {
            let _ = writeln!(
                text,
                "fails against {:?} opponent ({}): {}",
                x.provenance,
                class.map_or("unclassified".to_string(), |c| format!("{c:?}")),
                x.opponent.trim_end().replace('\n', "; ")
            );
        }
    }
    value["passes"] = json!(r.passes_all_finite_opponents);
    finish(g, "realize", value, text, code(r.passes_all_finite_opponents))
}

fn enumerate(g: &Global, s: &str, emit: Option<&Path>, max_leaves: usize) -> Run {
    let gamma = sequent(s)?;
    let spec = EnumSpec {
        max_leaves,
        ..EnumSpec::default()
    };
    let nets: Vec<Net> = enum_testable(&gamma, &spec).map_err(|e| anyhow!("{e}"))?.collect();
    let mut files = Vec::new();
    if let Some(dir) = emit {
        fs::create_dir_all(dir).with_context(|| format!("{}: cannot create", dir.display()))?;
        for (i, n) in nets.iter().enumerate() {
            let path = dir.join(format!("net_{:04}.net", i + 1));
            fs::write(&path, format!("# {gamma}\n{n}")).with_context(|| format!("{}: cannot write", path.display()))?;
            files.push(path.display().to_string());
        }
    }
    let text = if emit.is_some() {
        format!("{} nets written\n", nets.len())
    } else {
        nets.iter().map(block).collect::<Vec<_>>().join("\n\n") + "\n"
    };
    let value = json!({ "sequent": gamma.to_string(), "count": nets.len(), "files": files });
    finish(g, "enum", value, text, 0)
}

fn experiment_error(e: ExperimentError) -> Failure {
    match e {
        ExperimentError::Realize(RealizeError::Budget(b)) | ExperimentError::Budget(b) => Failure::Budget(b),
        e => Failure::Input(anyhow!("{e}")),
    }
}

fn experiment(g: &Global, which: &Experiment) -> Run {
    let cfg = config(g);
    match which {
        Experiment::Adequacy {
            vars,
            max_rules,
            max_daimon_arity,
            basis,
            mode: m,
        } => {
            let vars: Vec<&str> = vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
            let spec = EnumSpec {
                max_rules: *max_rules,
                max_daimon_arity: *max_daimon_arity,
                ..EnumSpec::default()
            };
            let proofs: Vec<_> = enum_proofs(&vars, &spec)
                .map_err(|e| anyhow!("{e}"))?
                .into_iter()
                .map(|(p, _)| p)
                .collect();
            let r = adequacy_experiment(&proofs, &load_basis(basis)?, mode(m)?, &cfg).map_err(experiment_error)?;
            let mut text = format!(
                "proofs: {}, checked: {}, skipped: {}, failures: {}\n",
                proofs.len(),
                r.checked,
                r.skipped,
                r.failures.len()
            );
            for f in &r.failures {
                let _ = writeln!(text, "  {} |- {}: {}", f.item, f.sequent, f.reason);
            }
            let ok = r.failures.is_empty();
            finish(g, "experiment adequacy", json!({ "proofs": proofs.len(), "report": r }), text, code(Some(ok)))
        }
        Experiment::Completeness { sequent: ss, max_leaves } => {
            let spec = EnumSpec {
                max_leaves: *max_leaves,
                ..EnumSpec::default()
            };
            let mut corpus = Vec::new();
            for s in ss {
                let gamma = sequent(s)?;
                let nets = enum_testable(&gamma, &spec).map_err(|e| anyhow!("{e}"))?;
                corpus.extend(nets.map(|n| (n, gamma.clone())));
            }
            let r = completeness_experiment(&corpus, &cfg).map_err(experiment_error)?;
            let mut text = format!(
                "nets: {}, realized: {}, correct: {}, binary: {}, provable: {}, counterexamples: {}\n",
                r.checked,
                r.realized,
                r.correct,
                r.binary_checked,
                r.mll_provable,
                r.counterexamples()
            );
            for c in r.forward_counterexamples.iter().chain(&r.converse_counterexamples).chain(&r.mll_disagreements) {
                let _ = writeln!(text, "  {c}");
            }
            let ok = r.counterexamples() == 0;
            finish(g, "experiment completeness", json!({ "report": r }), text, code(Some(ok)))
        }
        Experiment::Properties { nets, paths, max_links } => {
            let seed = g.seed.ok_or_else(|| anyhow!("experiment properties is randomized and needs --seed"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0;
            let mut failures = Vec::new();
            for i in 0..*nets {
                let arity = rng.gen_range(1..=3);
                let net = random_interaction(&mut rng, arity, *max_links, true);
                for p in sample_paths(&net, *paths, rng.gen(), SplitMode::default()) {
                    checked += 1;
                    let decreasing = replay(&net, &p.choices)
                        .map(|ns| ns.windows(2).all(|w| sn_measure(&w[1]) < sn_measure(&w[0])))
                        .unwrap_or(false);
                    let checks = [
                        ("measure", decreasing),
                        ("factorization", check_factorization(&net, &p.choices)),
                        ("delay", check_delay(&net, &p.choices)),
                        ("anticipation", check_anticipation(&net, &p.choices)),
                    ];
                    for (name, ok) in checks {
                        if !ok {
                            failures.push(format!("net {} path of {} steps: {name}", i + 1, p.choices.len()));
                        }
                    }
                }
            }
            let mut text = format!("seed: {seed}, nets: {nets}, paths: {checked}, failures: {}\n", failures.len());
            for f in &failures {
                let _ = writeln!(text, "  {f}");
            }
            let value = json!({ "seed": seed, "nets": nets, "paths": checked, "failures": failures });
            finish(g, "experiment properties", value, text, code(Some(failures.is_empty())))
        }
    }
}
