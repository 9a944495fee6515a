//! Exact clique and cycle counts, brute-force oracles and expectations given the weights.

mod brute;
mod clique;
mod cycle;
mod expected;

pub use brute::{brute_force_motifs, brute_force_motifs_with_budget, DEFAULT_BRUTE_BUDGET};
pub use clique::{count_cliques, count_cliques_until};
pub use cycle::{count_cycles, count_cycles_until};
pub use expected::{
    expected_cliques_given_weights, expected_cliques_with_budget, expected_cycles_by_paths,
    expected_cycles_given_weights, ordered_tuple_cycle_sum, DEFAULT_EXPECTATION_BUDGET,
};

use crate::error::{param, Result};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotifKind {
    Clique,
    Cycle,
}

impl MotifKind {
    pub fn name(self) -> &'static str {
        match self {
            MotifKind::Clique => "clique",
            MotifKind::Cycle => "cycle",
        }
    }
}

impl fmt::Display for MotifKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MotifKind {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clique" => Ok(MotifKind::Clique),
            "cycle" => Ok(MotifKind::Cycle),
            other => param(format!(
                "unknown motif kind {other:?} (expected clique or cycle)"
            )),
        }
    }
}

/// Exact number of copies of a motif.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MotifCount {
    pub kind: MotifKind,
    pub k: usize,
    pub count: BigUint,
    /// Set when `k` exceeds the number of vertices (the count is then zero).
    pub k_exceeds_n: bool,
}

impl MotifCount {
    pub(crate) fn new(kind: MotifKind, k: usize, count: BigUint) -> Self {
        Self {
            kind,
            k,
            count,
            k_exceeds_n: false,
        }
    }

    /// The count as `f64` (rounded for very large values).
    pub fn as_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.count).unwrap_or(f64::INFINITY)
    }
}

/// Shared argument check: `Ok(Some(zero))` when `k > n`.
pub(crate) fn check_k(kind: MotifKind, k: usize, n: usize) -> Result<Option<MotifCount>> {
    if k < 3 {
        return param(format!("motif size must be at least 3, got {k}"));
    }
    if k > n {
        return Ok(Some(MotifCount {
            kind,
            k,
            count: BigUint::default(),
            k_exceeds_n: true,
        }));
    }
    Ok(None)
}
