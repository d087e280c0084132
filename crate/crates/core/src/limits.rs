//! Resource caps shared by every enumeration, verifier and solver.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Conservative caps on brute-force work. `Limits::unbounded()` lifts all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Largest word length `m` accepted by enumerations.
    pub max_len: usize,
    /// Largest free-generator index `k` accepted by enumerations.
    pub max_index: u32,
    /// Bicyclic blocks in an enumeration of length `m` satisfy `a + b <= m * exponent_factor`.
    pub exponent_factor: u64,
    /// Cap on the number of words produced by one enumeration.
    pub max_words: usize,
    /// Cap on `rows * cols` of a dense exact matrix.
    pub max_matrix_entries: usize,
    /// Cap on the number of unknowns in one exact linear system.
    pub max_unknowns: usize,
    /// Cap on the number of alternating blocks in a moment computation.
    pub max_blocks: usize,
    /// Cap on the dimension of a truncated representation.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_len: 8,
            max_index: 8,
            exponent_factor: 3,
            max_words: 250_000,
            max_matrix_entries: 4_000_000,
            max_unknowns: 20_000,
            max_blocks: 10,
            max_dim: 2048,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_len: usize::MAX,
            max_index: u32::MAX,
            exponent_factor: 3,
            max_words: usize::MAX,
            max_matrix_entries: usize::MAX,
            max_unknowns: usize::MAX,
            max_blocks: usize::MAX,
            max_dim: usize::MAX,
        }
    }

    /// `Err` when `value` exceeds `limit`.
    pub fn check(what: &'static str, value: usize, limit: usize) -> Result<(), LimitError> {
        if value > limit {
            Err(LimitError { what, value, limit })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("resource limit exceeded: {what} = {value} > {limit} (use --force to lift)")]
pub struct LimitError {
    pub what: &'static str,
    pub value: usize,
    pub limit: usize,
}
