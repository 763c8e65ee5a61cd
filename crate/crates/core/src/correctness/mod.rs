//! Correctness of nets: switchings, the switching criterion in graph and
//! partition form, tests of formulas, and sequentialization.

mod criterion;
mod sequentialize;
mod switching;
mod testing;

pub use criterion::{dr_check, graph_evidence, partition_check, DrReport, Evidence, SwitchingReport};
pub use sequentialize::sequentialize;
pub use switching::{
    all_switchings, daimon_partition, partition_orthogonal, switch, switchings, up_initial,
    NaturalPartition, PartitionError, Side, Switching,
};
pub use testing::{classify_failure, test_check, tests, tests_from_witness, FailureClass, TestOutcome};
