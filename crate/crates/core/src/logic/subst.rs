use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use super::formula::{Formula, Hypersequent, Sequent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("only variables can be substituted, got {0}")]
    NotAVariable(String),
    #[error("images of {var} and its dual are not dual")]
    NotDual { var: String },
}

/// A substitution of formulas for variables. The image of a negative
/// literal is always the dual of the image of its variable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<Arc<str>, Formula>);

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    /// Builds a substitution from literal/image pairs, checking that a
    /// variable and its dual, when both given, receive dual images.
    pub fn from_pairs(pairs: &[(Formula, Formula)]) -> Result<Substitution, SubstError> {
        let mut s = Substitution::new();
        for (lit, img) in pairs {
            let Formula::Var { name, positive } = lit else {
                return Err(SubstError::NotAVariable(lit.to_string()));
            };
            let img = if *positive { img.clone() } else { img.dual() };
            match s.0.get(name) {
                Some(prev) if *prev != img => {
                    return Err(SubstError::NotDual {
                        var: name.to_string(),
                    })
                }
                _ => {
                    s.0.insert(name.clone(), img);
                }
            }
        }
        Ok(s)
    }

    pub fn get(&self, var: &str) -> Option<&Formula> {
        self.0.get(var)
    }

    pub fn apply(&self, f: &Formula) -> Formula {
        match f {
            Formula::Var { name, positive } => match self.0.get(name) {
                Some(img) if *positive => img.clone(),
                Some(img) => img.dual(),
                None => f.clone(),
            },
            Formula::Tensor(a, b) => Formula::tensor(self.apply(a), self.apply(b)),
            Formula::Par(a, b) => Formula::par(self.apply(a), self.apply(b)),
        }
    }

    pub fn apply_sequent(&self, s: &Sequent) -> Sequent {
        Sequent(s.0.iter().map(|f| self.apply(f)).collect())
    }

    pub fn apply_hypersequent(&self, h: &Hypersequent) -> Hypersequent {
        h.map(&|f| self.apply(f))
    }

    fn bind(&mut self, pattern: &Formula, target: &Formula) -> bool {
        match (pattern, target) {
            (Formula::Var { name, positive }, _) => {
                let img = if *positive {
                    target.clone()
                } else {
                    target.dual()
                };
                match self.0.get(name) {
                    Some(prev) => *prev == img,
                    None => {
                        self.0.insert(name.clone(), img);
                        true
                    }
                }
            }
            (Formula::Tensor(a, b), Formula::Tensor(c, d))
            | (Formula::Par(a, b), Formula::Par(c, d)) => self.bind(a, c) && self.bind(b, d),
            _ => false,
        }
    }
}

/// Some θ with θ(Δ) = Γ, when Δ ≤ Γ.
pub fn instance(delta: &Sequent, gamma: &Sequent) -> Option<Substitution> {
    if delta.len() != gamma.len() {
        return None;
    }
    let mut s = Substitution::new();
    delta
        .0
        .iter()
        .zip(&gamma.0)
        .all(|(d, g)| s.bind(d, g))
        .then_some(s)
}
