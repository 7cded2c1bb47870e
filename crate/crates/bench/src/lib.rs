//! Shared inputs for the criterion benches.

use binomdiv_core::sequences::SequenceId;

/// The sequences benchmarked for table reproduction, with their table lengths.
pub fn table_workloads() -> Vec<(SequenceId, u64)> {
    vec![
        (SequenceId::S, 8),
        (SequenceId::T, 5),
        (SequenceId::Catalan, 200),
        (SequenceId::BigS(3), 20),
    ]
}
