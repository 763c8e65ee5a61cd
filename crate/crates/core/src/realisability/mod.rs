//! Realisability against finite interpretation bases.
//!
//! Types are never built. A basis gives finitely many generators and
//! opponents per literal, opponents of compound formulas are assembled from
//! them, and a net passes when it is orthogonal to every opponent. Passing
//! is a necessary condition for membership in the type, not a proof of it.

mod basis;
mod experiments;
mod opponents;
mod realize;

pub use basis::{
    basis_one, basis_par, basis_par_with, daimon_one, par_of_daimon, par_of_daimons, tensor_of_daimon,
    tensor_of_daimons, Basis, BasisError, Literal, LiteralEntry,
};
pub use experiments::{
    adequacy_experiment, adequacy_on_nets, completeness_experiment, has_axiom_shape, local_duality_check,
    merge_compute_check, mll_provable, mll_realizes, variables, AdequacyFailure, AdequacyReport,
    CompletenessReport, ExperimentError,
};
pub use opponents::{formula_opponents, opponents_for, Opponent, OpponentMode, Provenance};
pub use realize::{
    against, first_normal_form, passes_all, realize_report, realizes, OpponentResult, OpponentVerdict,
    RealizeError, RealizeReport,
};
