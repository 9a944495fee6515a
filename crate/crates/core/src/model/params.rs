use super::{kernel::Kernel, svf::SlowlyVarying, tau::Tau};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// How unordered vertex pairs are visited when drawing edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeSampler {
    /// One Bernoulli draw per pair, `O(n^2)`.
    Pairwise,
    /// Vertices sorted by weight, geometric skips over runs of non-edges; `O(n + m)`.
    /// Exact because every kernel is nondecreasing in the weight product.
    #[default]
    Skip,
}

/// Full configuration of one random-graph model instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub tau: Tau,
    pub kernel: Kernel,
    #[serde(default)]
    pub svf: SlowlyVarying,
    pub seed: u64,
    #[serde(default)]
    pub sampler: EdgeSampler,
}

impl ModelParams {
    pub fn new(n: usize, tau: f64, kernel: Kernel, seed: u64) -> Result<Self> {
        let p = Self {
            n,
            tau: Tau::new(tau)?,
            kernel,
            svf: SlowlyVarying::default(),
            seed,
            sampler: EdgeSampler::default(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_svf(mut self, svf: SlowlyVarying) -> Result<Self> {
        svf.validate()?;
        self.svf = svf;
        Ok(self)
    }

    pub fn with_sampler(mut self, sampler: EdgeSampler) -> Self {
        self.sampler = sampler;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Parameter(format!(
                "n must be at least 3, got {}",
                self.n
            )));
        }
        self.svf.validate()
    }
}
