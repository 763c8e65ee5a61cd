//! Formulas, sequents, derivations and labellings.

mod formula;
mod label;
mod proof;
mod subst;

pub use formula::{
    parse_formula, parse_hypersequent, parse_sequent, Formula, FormulaError, Hypersequent,
    Sequent, PATTERN_VAR,
};
pub use label::{decompose, leaf_count, syntax_forest, testable, LabelError, Labelling};
pub use proof::{
    check_proof, desequentialize, parse_proof, Proof, ProofError, ProofMode, ProofParseError,
};
pub use subst::{instance, SubstError, Substitution};
