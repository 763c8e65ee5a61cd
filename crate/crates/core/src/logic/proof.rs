//! Sequent-calculus derivations with daimon and axiom leaves, their
//! checking, text format and translation to nets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::formula::{parse_formula, parse_sequent, Formula, Sequent};
use crate::net::{LinkLabel, Net};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Proof {
    Daimon(Sequent),
    Ax(Formula),
    /// From A, B, Γ to A ⅋ B, Γ.
    Par(Box<Proof>),
    /// From A, Γ and B, Δ to Γ, Δ, A ⊗ B.
    Tensor(Box<Proof>, Box<Proof>),
    /// From A, Γ and A⊥, Δ to Γ, Δ.
    Cut(Formula, Box<Proof>, Box<Proof>),
    /// Swaps conclusions i and i+1 (1-based).
    Ex(usize, Box<Proof>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ProofMode {
    /// Daimon leaves allowed with any conclusion.
    MllDaimon,
    /// Leaves must conclude A, A⊥.
    Mll,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at {path}: {message}")]
pub struct ProofError {
    /// Child indices from the root, e.g. `root.1.0`.
    pub path: String,
    pub message: String,
}

impl Proof {
    pub fn daimon(fs: Vec<Formula>) -> Proof {
        Proof::Daimon(Sequent(fs))
    }

    pub fn children(&self) -> Vec<&Proof> {
        match self {
            Proof::Daimon(_) | Proof::Ax(_) => vec![],
            Proof::Par(p) | Proof::Ex(_, p) => vec![p],
            Proof::Tensor(a, b) | Proof::Cut(_, a, b) => vec![a, b],
        }
    }

    /// Number of rule instances, exchanges included.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Number of rule instances other than exchanges.
    pub fn logical_size(&self) -> usize {
        let own = usize::from(!matches!(self, Proof::Ex(..)));
        own + self.children().iter().map(|c| c.logical_size()).sum::<usize>()
    }

    pub fn count(&self, pred: &impl Fn(&Proof) -> bool) -> usize {
        usize::from(pred(self)) + self.children().iter().map(|c| c.count(pred)).sum::<usize>()
    }

    pub fn has_cut(&self) -> bool {
        self.count(&|p| matches!(p, Proof::Cut(..))) > 0
    }

    /// True when some leaf is a daimon with empty conclusion.
    pub fn has_empty_daimon(&self) -> bool {
        self.count(&|p| matches!(p, Proof::Daimon(s) if s.is_empty())) > 0
    }

    /// The conclusion of a well-formed derivation, checking every rule.
    pub fn conclusion(&self, mode: ProofMode) -> Result<Sequent, ProofError> {
        self.check_at(mode, "root")
    }

    fn check_at(&self, mode: ProofMode, path: &str) -> Result<Sequent, ProofError> {
        let err = |message: String| ProofError {
            path: path.to_string(),
            message,
        };
        let child = |i: usize, p: &Proof| p.check_at(mode, &format!("{path}.{i}"));
        match self {
            Proof::Daimon(s) => {
                if mode == ProofMode::Mll
                    && !(s.len() == 2 && s.0[0].dual() == s.0[1])
                {
                    return Err(err(format!("daimon on {s} is not of the form A, A^")));
                }
                Ok(s.clone())
            }
            Proof::Ax(a) => Ok(Sequent(vec![a.clone(), a.dual()])),
            Proof::Par(p) => {
                let s = child(0, p)?;
                if s.len() < 2 {
                    return Err(err(format!("par needs two conclusions, premise is {s}")));
                }
                let mut out = vec![Formula::par(s.0[0].clone(), s.0[1].clone())];
                out.extend(s.0[2..].iter().cloned());
                Ok(Sequent(out))
            }
            Proof::Tensor(p, q) => {
                let (s, t) = (child(0, p)?, child(1, q)?);
                if s.is_empty() || t.is_empty() {
                    return Err(err("tensor premises need a conclusion".into()));
                }
                let mut out: Vec<Formula> = s.0[1..].to_vec();
                out.extend(t.0[1..].iter().cloned());
                out.push(Formula::tensor(s.0[0].clone(), t.0[0].clone()));
                Ok(Sequent(out))
            }
            Proof::Cut(a, p, q) => {
                let (s, t) = (child(0, p)?, child(1, q)?);
                if s.0.first() != Some(a) {
                    return Err(err(format!("left premise {s} does not start with {a}")));
                }
                if t.0.first() != Some(&a.dual()) {
                    return Err(err(format!(
                        "right premise {t} does not start with {}",
                        a.dual()
                    )));
                }
                let mut out: Vec<Formula> = s.0[1..].to_vec();
                out.extend(t.0[1..].iter().cloned());
                Ok(Sequent(out))
            }
            Proof::Ex(i, p) => {
                let mut s = child(0, p)?;
                if *i == 0 || *i >= s.len() {
                    return Err(err(format!("exchange {i} out of range for {s}")));
                }
                s.0.swap(i - 1, *i);
                Ok(s)
            }
        }
    }

    /// The net represented by the derivation.
    pub fn desequentialize(&self) -> Net {
        self.net().with_generated_names("p")
    }

    fn net(&self) -> Net {
        match self {
            Proof::Daimon(s) => Net::daimon(s.len()),
            Proof::Ax(_) => Net::daimon(2),
            Proof::Par(p) => {
                let n = p.net();
                let a = n.arrangement().to_vec();
                n.with_link(LinkLabel::Par, vec![a[0], a[1]], |c| {
                    let mut v = vec![c.expect("par output")];
                    v.extend_from_slice(&a[2..]);
                    v
                })
            }
            Proof::Tensor(p, q) => {
                let (s, t) = (p.net(), q.net());
                let m = s.arity();
                let both = s.parallel(&t);
                let a = both.arrangement().to_vec();
                both.with_link(LinkLabel::Tensor, vec![a[0], a[m]], |c| {
                    let mut v: Vec<_> = a[1..m].to_vec();
                    v.extend_from_slice(&a[m + 1..]);
                    v.push(c.expect("tensor output"));
                    v
                })
            }
            Proof::Cut(_, p, q) => {
                let (s, t) = (p.net(), q.net());
                let m = s.arity();
                let both = s.parallel(&t);
                let a = both.arrangement().to_vec();
                both.with_link(LinkLabel::Cut, vec![a[0], a[m]], |_| {
                    let mut v: Vec<_> = a[1..m].to_vec();
                    v.extend_from_slice(&a[m + 1..]);
                    v
                })
            }
            Proof::Ex(i, p) => {
                let n = p.net();
                let mut a = n.arrangement().to_vec();
                a.swap(i - 1, *i);
                n.rearranged(a).expect("same conclusions")
            }
        }
    }
}

/// Checks a derivation in the given mode, returning its conclusion.
pub fn check_proof(p: &Proof, mode: ProofMode) -> Result<Sequent, ProofError> {
    p.conclusion(mode)
}

/// The net of a checked derivation.
pub fn desequentialize(p: &Proof) -> Result<Net, ProofError> {
    p.conclusion(ProofMode::MllDaimon)?;
    Ok(p.desequentialize())
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Proof::Daimon(s) if s.is_empty() => write!(f, "(dai)"),
            Proof::Daimon(s) => write!(f, "(dai {s})"),
            Proof::Ax(a) => write!(f, "(ax {a})"),
            Proof::Par(p) => write!(f, "(par {p})"),
            Proof::Tensor(p, q) => write!(f, "(tensor {p} {q})"),
            Proof::Cut(a, p, q) => write!(f, "(cut {a} {p} {q})"),
            Proof::Ex(i, p) => write!(f, "(ex {i} {p})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("proof syntax error at offset {offset}: {message}")]
pub struct ProofParseError {
    pub offset: usize,
    pub message: String,
}

const KEYWORDS: [&str; 6] = ["dai", "ax", "par", "tensor", "cut", "ex"];

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ProofParseError> {
        Err(ProofParseError {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn expect(&mut self, c: char) -> Result<(), ProofParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let rest = self.rest();
        let n = rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(rest.len());
        self.pos += n;
        &rest[..n]
    }

    /// True when a proof term starts here.
    fn at_proof(&self) -> bool {
        let rest = self.rest().trim_start();
        let Some(inner) = rest.strip_prefix('(') else {
            return false;
        };
        let inner = inner.trim_start();
        KEYWORDS.iter().any(|k| {
            inner.strip_prefix(k).is_some_and(|after| {
                after.is_empty() || after.starts_with(|c: char| c.is_whitespace() || c == ')')
            })
        })
    }

    /// Text up to the parenthesis closing the current term.
    fn until_close(&mut self) -> Result<&'a str, ProofParseError> {
        let rest = self.rest();
        let mut depth = 0usize;
        for (i, c) in rest.char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    self.pos += i;
                    return Ok(&rest[..i]);
                }
                ')' => depth -= 1,
                _ => {}
            }
        }
        self.err("unbalanced parentheses")
    }

    /// Formula text up to the next proof term at depth zero.
    fn until_proof(&mut self) -> Result<&'a str, ProofParseError> {
        let start = self.pos;
        let mut depth = 0usize;
        while self.pos < self.src.len() {
            if depth == 0 && self.at_proof() {
                return Ok(&self.src[start..self.pos]);
            }
            let c = self.rest().chars().next().expect("non-empty");
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => break,
                ')' => depth -= 1,
                _ => {}
            }
            self.pos += c.len_utf8();
        }
        self.err("expected a proof term after the cut formula")
    }

    fn formula_err<T>(&self, e: impl fmt::Display) -> Result<T, ProofParseError> {
        self.err(format!("formula: {e}"))
    }

    fn proof(&mut self) -> Result<Proof, ProofParseError> {
        self.expect('(')?;
        let kw = self.word();
        let p = match kw {
            "dai" => {
                let text = self.until_close()?;
                match parse_sequent(text) {
                    Ok(s) => Proof::Daimon(Sequent(s)),
                    Err(e) => return self.formula_err(e),
                }
            }
            "ax" => {
                let text = self.until_close()?;
                match parse_formula(text) {
                    Ok(a) => Proof::Ax(a),
                    Err(e) => return self.formula_err(e),
                }
            }
            "par" => Proof::Par(Box::new(self.proof()?)),
            "tensor" => {
                let a = self.proof()?;
                Proof::Tensor(Box::new(a), Box::new(self.proof()?))
            }
            "cut" => {
                let text = self.until_proof()?;
                let a = match parse_formula(text) {
                    Ok(a) => a,
                    Err(e) => return self.formula_err(e),
                };
                let p = self.proof()?;
                Proof::Cut(a, Box::new(p), Box::new(self.proof()?))
            }
            "ex" => {
                let n = self.word();
                let Ok(i) = n.parse::<usize>() else {
                    return self.err(format!("expected an exchange index, got {n:?}"));
                };
                Proof::Ex(i, Box::new(self.proof()?))
            }
            other => return self.err(format!("unknown rule {other:?}")),
        };
        self.expect(')')?;
        Ok(p)
    }
}

pub fn parse_proof(src: &str) -> Result<Proof, ProofParseError> {
    let text: String = src
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let mut r = Reader { src: &text, pos: 0 };
    let p = r.proof()?;
    r.skip_ws();
    if !r.rest().is_empty() {
        return r.err("trailing input");
    }
    Ok(p)
}

impl FromStr for Proof {
    type Err = ProofParseError;
    fn from_str(s: &str) -> Result<Proof, ProofParseError> {
        parse_proof(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::net::{canonical_key, parse_net, CanonMode};

    fn p(s: &str) -> Proof {
        parse_proof(s).unwrap()
    }

    fn concl(s: &str, mode: ProofMode) -> Result<String, ProofError> {
        p(s).conclusion(mode).map(|s| s.to_string())
    }

    fn same(a: &Net, b: &str) {
        assert_eq!(
            canonical_key(a, CanonMode::Exact),
            canonical_key(&parse_net(b).unwrap(), CanonMode::Exact),
            "\n{a}"
        );
    }

    #[test]
    fn rule_conclusions() {
        assert_eq!(concl("(dai X, Y, Z)", ProofMode::MllDaimon).unwrap(), "X, Y, Z");
        assert_eq!(concl("(par (ax X))", ProofMode::Mll).unwrap(), "X % X^");
        assert_eq!(
            concl("(tensor (dai X, Z) (dai Y, W))", ProofMode::MllDaimon).unwrap(),
            "Z, W, X * Y"
        );
        assert_eq!(
            concl("(cut X (dai X, Y) (dai X^, Z))", ProofMode::MllDaimon).unwrap(),
            "Y, Z"
        );
        assert_eq!(concl("(ex 1 (dai X, Y))", ProofMode::MllDaimon).unwrap(), "Y, X");
        assert_eq!(concl("(dai)", ProofMode::MllDaimon).unwrap(), "");
    }

    #[test]
    fn rule_errors() {
        assert!(concl("(dai X, Y, Z)", ProofMode::Mll).is_err());
        assert!(concl("(dai X, X^)", ProofMode::Mll).is_ok());
        let e = concl("(tensor (dai X) (par (dai Y)))", ProofMode::MllDaimon).unwrap_err();
        assert_eq!(e.path, "root.1");
        assert!(concl("(ex 2 (dai X, Y))", ProofMode::MllDaimon).is_err());
        assert!(concl("(ex 0 (dai X, Y))", ProofMode::MllDaimon).is_err());
        assert!(concl("(cut X (dai X) (dai X))", ProofMode::MllDaimon).is_err());
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "(dai X, Y)",
            "(dai)",
            "(ax X * Y)",
            "(par (dai X, X^))",
            "(tensor (dai X) (dai Y))",
            "(cut (X * Y) % Z (dai (X * Y) % Z, W) (dai X^ % Y^ * Z^))",
            "(ex 1 (dai X, Y))",
        ] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s}");
        }
        assert!(parse_proof("(foo X)").is_err());
        assert!(parse_proof("(dai X").is_err());
        assert!(parse_proof("(ex x (dai X))").is_err());
    }

    #[test]
    fn desequentialize_rows() {
        same(&p("(dai X, Y)").desequentialize(), "dai a b\nconclusions: a b");
        same(
            &p("(par (dai X, X^))").desequentialize(),
            "dai a b\npar a b -> c\nconclusions: c",
        );
        same(
            &p("(tensor (dai X) (dai Y))").desequentialize(),
            "dai a\ndai b\ntensor a b -> c\nconclusions: c",
        );
        same(
            &p("(tensor (dai X, Z) (dai Y))").desequentialize(),
            "dai a z\ndai b\ntensor a b -> c\nconclusions: z c",
        );
        same(
            &p("(cut X (dai X, Y) (dai X^, Z))").desequentialize(),
            "dai a y\ndai b z\ncut a b\nconclusions: y z",
        );
        same(
            &p("(ex 1 (dai X, Y))").desequentialize(),
            "dai a b\nconclusions: b a",
        );
    }

    #[test]
    fn link_count_matches_rule_count() {
        let q = p("(ex 1 (tensor (par (dai X, Y, Z)) (cut W (dai W) (dai W^, V))))");
        let n = q.desequentialize();
        let rules = q.count(&|r| !matches!(r, Proof::Ex(..)));
        assert_eq!(n.links().len(), rules);
    }
}
