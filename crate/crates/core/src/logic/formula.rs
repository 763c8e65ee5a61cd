use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Name reserved for the single variable of formula patterns.
pub const PATTERN_VAR: &str = "𝐕";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Var { name: Arc<str>, positive: bool },
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var {
            name: Arc::from(name),
            positive: true,
        }
    }

    pub fn neg(name: &str) -> Formula {
        Formula::Var {
            name: Arc::from(name),
            positive: false,
        }
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    /// Linear negation, pushed to the variables by De Morgan.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Var { name, positive } => Formula::Var {
                name: name.clone(),
                positive: !positive,
            },
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Formula::Var { .. })
    }

    pub fn connectives(&self) -> usize {
        match self {
            Formula::Var { .. } => 0,
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.connectives() + b.connectives(),
        }
    }

    pub fn leaves(&self) -> usize {
        self.connectives() + 1
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Var { .. } => 0,
            Formula::Tensor(a, b) | Formula::Par(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Literals in left-to-right order (the order of addresses).
    pub fn literals(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        self.collect_literals(&mut out);
        out
    }

    fn collect_literals<'a>(&'a self, out: &mut Vec<&'a Formula>) {
        match self {
            Formula::Var { .. } => out.push(self),
            Formula::Tensor(a, b) | Formula::Par(a, b) => {
                a.collect_literals(out);
                b.collect_literals(out);
            }
        }
    }

    pub fn unicode(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, Prec::Top, true);
        s
    }

    fn write(&self, out: &mut String, ctx: Prec, unicode: bool) {
        match self {
            Formula::Var { name, positive } => {
                out.push_str(name);
                if !positive {
                    out.push_str(if unicode { "⊥" } else { "^" });
                }
            }
            Formula::Par(a, b) => {
                let paren = ctx != Prec::Top;
                if paren {
                    out.push('(');
                }
                a.write(out, Prec::Top, unicode);
                out.push_str(if unicode { " ⅋ " } else { " % " });
                b.write(out, Prec::ParRight, unicode);
                if paren {
                    out.push(')');
                }
            }
            Formula::Tensor(a, b) => {
                let paren = ctx == Prec::TensorRight;
                if paren {
                    out.push('(');
                }
                a.write(out, Prec::TensorLeft, unicode);
                out.push_str(if unicode { " ⊗ " } else { " * " });
                b.write(out, Prec::TensorRight, unicode);
                if paren {
                    out.push(')');
                }
            }
        }
    }
}

/// Printing context: which operand slot the subformula occupies.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Prec {
    Top,
    ParRight,
    TensorLeft,
    TensorRight,
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s, Prec::Top, false);
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at column {column}: {message}")]
pub struct FormulaError {
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(String),
    Dual,
    Tensor,
    Par,
    LParen,
    RParen,
    Comma,
    Bar,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, FormulaError> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            c if c.is_whitespace() => {}
            '^' | '⊥' => out.push((col, Tok::Dual)),
            '*' | '⊗' => out.push((col, Tok::Tensor)),
            '%' | '⅋' => out.push((col, Tok::Par)),
            '(' => out.push((col, Tok::LParen)),
            ')' => out.push((col, Tok::RParen)),
            ',' => out.push((col, Tok::Comma)),
            '|' if chars.get(i + 1) == Some(&'|') => {
                out.push((col, Tok::Bar));
                i += 1;
            }
            '∥' => out.push((col, Tok::Bar)),
            'A'..='Z' => {
                let mut name = String::from(c);
                while let Some(&d) = chars.get(i + 1) {
                    if d.is_ascii_alphanumeric() {
                        name.push(d);
                        i += 1;
                    } else {
                        break;
                    }
                }
                out.push((col, Tok::Var(name)));
            }
            _ => {
                return Err(FormulaError {
                    column: col,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, FormulaError> {
        let toks = lex(input)?;
        Ok(Parser {
            toks,
            pos: 0,
            end: input.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    // par := tensor ('%' tensor)*
    fn formula(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.tensor()?;
        while self.eat(&Tok::Par) {
            acc = Formula::par(acc, self.tensor()?);
        }
        Ok(acc)
    }

    // tensor := postfix ('*' postfix)*
    fn tensor(&mut self) -> Result<Formula, FormulaError> {
        let mut acc = self.postfix()?;
        while self.eat(&Tok::Tensor) {
            acc = Formula::tensor(acc, self.postfix()?);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Formula, FormulaError> {
        let mut f = self.atom()?;
        while self.eat(&Tok::Dual) {
            f = f.dual();
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().cloned() {
            Some(Tok::Var(name)) => {
                self.pos += 1;
                Ok(Formula::var(&name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                Ok(f)
            }
            Some(t) => self.err(format!("unexpected {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn sequent(&mut self) -> Result<Vec<Formula>, FormulaError> {
        let mut out = Vec::new();
        if self.peek().is_none() || self.peek() == Some(&Tok::Bar) {
            return Ok(out);
        }
        out.push(self.formula()?);
        while self.eat(&Tok::Comma) {
            out.push(self.formula()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<(), FormulaError> {
        if self.pos < self.toks.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

pub fn parse_formula(input: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser::new(input)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Comma-separated list of formulas; the empty string is the empty sequent.
pub fn parse_sequent(input: &str) -> Result<Vec<Formula>, FormulaError> {
    let mut p = Parser::new(input)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

impl FromStr for Formula {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Formula, FormulaError> {
        parse_formula(s)
    }
}

/// A sequent: an ordered list of formulas.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }
}

impl FromStr for Sequent {
    type Err = FormulaError;
    fn from_str(s: &str) -> Result<Sequent, FormulaError> {
        parse_sequent(s).map(Sequent)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Formula::to_string).collect();
        f.write_str(&parts.join(", "))
    }
}

impl From<Vec<Formula>> for Sequent {
    fn from(v: Vec<Formula>) -> Sequent {
        Sequent(v)
    }
}

/// Formulas combined by comma and by parallel composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Hypersequent {
    Empty,
    Leaf(Formula),
    Comma(Box<Hypersequent>, Box<Hypersequent>),
    Parallel(Box<Hypersequent>, Box<Hypersequent>),
}

impl Hypersequent {
    /// The sequent obtained by reading every parallel as a comma.
    pub fn ground(&self) -> Sequent {
        let mut out = Vec::new();
        self.collect(&mut out);
        Sequent(out)
    }

    fn collect(&self, out: &mut Vec<Formula>) {
        match self {
            Hypersequent::Empty => {}
            Hypersequent::Leaf(f) => out.push(f.clone()),
            Hypersequent::Comma(a, b) | Hypersequent::Parallel(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    /// The comma-separated blocks separated by parallels, left to right.
    pub fn blocks(&self) -> Vec<Sequent> {
        match self {
            Hypersequent::Parallel(a, b) => {
                let mut v = a.blocks();
                v.extend(b.blocks());
                v
            }
            other => vec![other.ground()],
        }
    }

    pub fn map(&self, f: &impl Fn(&Formula) -> Formula) -> Hypersequent {
        match self {
            Hypersequent::Empty => Hypersequent::Empty,
            Hypersequent::Leaf(x) => Hypersequent::Leaf(f(x)),
            Hypersequent::Comma(a, b) => {
                Hypersequent::Comma(Box::new(a.map(f)), Box::new(b.map(f)))
            }
            Hypersequent::Parallel(a, b) => {
                Hypersequent::Parallel(Box::new(a.map(f)), Box::new(b.map(f)))
            }
        }
    }
}

impl fmt::Display for Hypersequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypersequent::Empty => Ok(()),
            Hypersequent::Leaf(x) => write!(f, "{x}"),
            Hypersequent::Comma(a, b) => write!(f, "{a}, {b}"),
            Hypersequent::Parallel(a, b) => write!(f, "{a} || {b}"),
        }
    }
}

/// `||` binds loosest, then `,`; both associate to the left.
pub fn parse_hypersequent(input: &str) -> Result<Hypersequent, FormulaError> {
    let mut p = Parser::new(input)?;
    let block = |p: &mut Parser| -> Result<Hypersequent, FormulaError> {
        let fs = p.sequent()?;
        Ok(fs
            .into_iter()
            .map(Hypersequent::Leaf)
            .reduce(|a, b| Hypersequent::Comma(Box::new(a), Box::new(b)))
            .unwrap_or(Hypersequent::Empty))
    };
    let mut acc = block(&mut p)?;
    while p.eat(&Tok::Bar) {
        acc = Hypersequent::Parallel(Box::new(acc), Box::new(block(&mut p)?));
    }
    p.finish()?;
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn duals() {
        assert_eq!(f("X").dual(), f("X^"));
        assert_eq!(f("X^").dual(), f("X"));
        assert_eq!(f("X % Y").dual(), f("X^ * Y^"));
        assert_eq!(f("(X * Y)^"), f("X^ % Y^"));
        assert_eq!(f("X^^"), f("X"));
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(f("X * Y % Z"), Formula::par(f("X * Y"), f("Z")));
        assert_eq!(f("X % Y * Z"), Formula::par(f("X"), f("Y * Z")));
        assert_eq!(f("X * Y * Z"), Formula::tensor(f("X * Y"), f("Z")));
        assert_eq!(f("X ⊗ Y⊥ ⅋ Z"), f("X * Y^ % Z"));
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "X",
            "X^",
            "X * Y",
            "X % (Y % Z)",
            "(X % Y) * Z",
            "X * (Y * Z)",
            "X * Y % Z * W",
            "(X % Y)^ * Z1",
        ] {
            let a = f(s);
            assert_eq!(f(&a.to_string()), a, "{s} printed as {a}");
            assert_eq!(f(&a.unicode()), a);
        }
        assert_eq!(f("(X*Y)%Z").to_string(), "X * Y % Z");
        assert_eq!(f("X*(Y*Z)").to_string(), "X * (Y * Z)");
    }

    #[test]
    fn errors_have_columns() {
        assert_eq!(parse_formula("X * ").unwrap_err().column, 5);
        assert_eq!(parse_formula("x").unwrap_err().column, 1);
        assert!(parse_formula("X Y").is_err());
        assert!(parse_formula("𝐕").is_err());
    }

    #[test]
    fn sequents_and_hypersequents() {
        assert_eq!(parse_sequent("").unwrap(), vec![]);
        assert_eq!(parse_sequent("X, Y^ * Z").unwrap().len(), 2);
        let h = parse_hypersequent("X, Y || Z").unwrap();
        assert_eq!(h.ground(), parse_sequent("X, Y, Z").unwrap().into());
        assert_eq!(h.blocks().len(), 2);
        assert_eq!(parse_hypersequent(&h.to_string()).unwrap(), h);
    }

    #[test]
    fn counts() {
        let a = f("(X % Y) * Z");
        assert_eq!(a.connectives(), 2);
        assert_eq!(a.leaves(), 3);
        assert_eq!(a.depth(), 2);
        let lits: Vec<String> = a.literals().iter().map(|l| l.to_string()).collect();
        assert_eq!(lits, ["X", "Y", "Z"]);
    }
}
