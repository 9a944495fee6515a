use crate::error::{param, Error, Result};
use crate::model::{EdgeSampler, Kernel, ModelParams, SlowlyVarying, Tau, DEFAULT_ORACLE_LIMIT};
use crate::motif::MotifKind;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DEFAULT_TIMEOUT_SECS: f64 = 60.0;

fn default_kernel() -> Kernel {
    Kernel::MinOne
}

fn default_kinds() -> Vec<MotifKind> {
    vec![MotifKind::Clique, MotifKind::Cycle]
}

fn default_oracle_limit() -> usize {
    DEFAULT_ORACLE_LIMIT
}

fn default_timeout() -> f64 {
    DEFAULT_TIMEOUT_SECS
}

/// A Monte Carlo experiment over a grid of `n` and `k`.
///
/// Every replication of a given `n` draws one graph, and all `(k, kind)`
/// cells of that `n` are counted on it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<usize>,
    pub k: Vec<usize>,
    pub tau: f64,
    #[serde(default = "default_kernel")]
    pub kernel: Kernel,
    #[serde(default)]
    pub svf: SlowlyVarying,
    pub replications: u64,
    pub seed: u64,
    #[serde(default = "default_kinds")]
    pub kinds: Vec<MotifKind>,
    /// Attach the expected count given the sampled weights to each record.
    #[serde(default)]
    pub oracle: bool,
    #[serde(default = "default_oracle_limit")]
    pub oracle_limit: usize,
    /// Draw the weights once per `n` and resample only the edges.
    #[serde(default)]
    pub fixed_weights: bool,
    #[serde(default = "default_timeout")]
    pub timeout_secs: f64,
    #[serde(default)]
    pub sampler: EdgeSampler,
    /// JSON-lines file the records are appended to.
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    /// Config with default options for the given grid.
    pub fn new(n: Vec<usize>, k: Vec<usize>, tau: f64, replications: u64, seed: u64) -> Self {
        Self {
            n,
            k,
            tau,
            kernel: default_kernel(),
            svf: SlowlyVarying::default(),
            replications,
            seed,
            kinds: default_kinds(),
            oracle: false,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            fixed_weights: false,
            timeout_secs: DEFAULT_TIMEOUT_SECS,
            sampler: EdgeSampler::default(),
            output: None,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let c: Self = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn read_json(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.k.is_empty() || self.kinds.is_empty() {
            return param("n grid, k grid and motif kinds must be non-empty");
        }
        if self.replications < 1 {
            return param("replications must be at least 1");
        }
        if let Some(&k) = self.k.iter().find(|&&k| k < 3) {
            return param(format!("every k must be at least 3, got {k}"));
        }
        if let Some(&n) = self.n.iter().find(|&&n| n < 3) {
            return param(format!("every n must be at least 3, got {n}"));
        }
        if !(self.timeout_secs > 0.0) {
            return param(format!(
                "timeout_secs must be positive, got {}",
                self.timeout_secs
            ));
        }
        let tau = Tau::new(self.tau)?;
        self.svf.validate()?;
        self.svf.check_samplable(tau)
    }

    pub fn tau(&self) -> Result<Tau> {
        Tau::new(self.tau)
    }

    /// Sorted, deduplicated `n` grid.
    pub fn n_grid(&self) -> Vec<usize> {
        sorted_unique(&self.n)
    }

    pub fn k_grid(&self) -> Vec<usize> {
        sorted_unique(&self.k)
    }

    pub fn kind_list(&self) -> Vec<MotifKind> {
        sorted_unique(&self.kinds)
    }

    /// Seed of the model instance used for every replication at size `n`.
    pub fn cell_seed(&self, n: usize) -> u64 {
        let tag = if self.fixed_weights { 0x5EED_F1ED } else { 0 };
        splitmix64(self.seed ^ splitmix64(n as u64 ^ tag))
    }

    pub fn model_params(&self, n: usize) -> Result<ModelParams> {
        ModelParams::new(n, self.tau, self.kernel, self.cell_seed(n))
            .and_then(|p| p.with_svf(self.svf))
            .map(|p| p.with_sampler(self.sampler))
            .map_err(|e| match e {
                Error::Parameter(m) => Error::Parameter(format!("n = {n}: {m}")),
                other => other,
            })
    }
}

fn sorted_unique<T: Ord + Copy>(v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
