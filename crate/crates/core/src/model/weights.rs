use super::params::ModelParams;
use super::rng::{SeedLineage, StreamPurpose};
use super::tau::Tau;
use crate::error::Result;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Realized vertex weights together with the mean `mu` of the law they were drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub weights: Vec<f64>,
    pub mu: f64,
}

impl WeightVector {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Unit weights, used for hand-built graphs that carry no weight information.
    pub fn unit(n: usize, tau: Tau) -> Self {
        Self {
            weights: vec![1.0; n],
            mu: tau.mean_weight(),
        }
    }
}

/// Inverse tail of the pure power law: `h = u^(-1/(tau-1))`.
#[inline]
pub fn pure_power_law_weight(u: f64, tau: Tau) -> f64 {
    u.powf(-1.0 / (tau.value() - 1.0))
}

/// Draws `n` i.i.d. weights by inverting the tail at uniforms on (0, 1].
pub fn sample_weights(params: &ModelParams, replication: u64) -> Result<WeightVector> {
    params.validate()?;
    params.svf.check_samplable(params.tau)?;
    let mut rng = SeedLineage::new(params.seed, replication).rng(StreamPurpose::Weights);
    let tau = params.tau;
    let svf = params.svf;
    let weights = (0..params.n)
        .map(|_| {
            let u = 1.0 - rng.random::<f64>();
            svf.tail_quantile(u, tau)
        })
        .collect();
    let mu = if svf.is_pure_power_law() {
        tau.mean_weight()
    } else {
        svf.mean(tau)
    };
    Ok(WeightVector { weights, mu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Kernel, SlowlyVarying};

    fn params(n: usize, seed: u64) -> ModelParams {
        ModelParams::new(n, 2.5, Kernel::MinOne, seed).unwrap()
    }

    #[test]
    fn deterministic_and_above_one() {
        let p = params(1000, 11);
        let a = sample_weights(&p, 3).unwrap();
        let b = sample_weights(&p, 3).unwrap();
        assert_eq!(a, b);
        assert!(a.weights.iter().all(|&h| h >= 1.0));
        assert_eq!(a.mu, 3.0);
        let c = sample_weights(&p, 4).unwrap();
        assert_ne!(a.weights, c.weights);
    }

    #[test]
    fn empirical_tail_matches_power_law() {
        // Kolmogorov-type check at a few points, 10^6 samples.
        let p = params(1_000_000, 2024);
        let w = sample_weights(&p, 0).unwrap();
        let n = w.len() as f64;
        for h in [1.5f64, 2.0, 5.0, 10.0] {
            let emp = w.weights.iter().filter(|&&x| x > h).count() as f64 / n;
            let exact = h.powf(-1.5);
            assert!((emp - exact).abs() < 0.005, "h={h}: {emp} vs {exact}");
        }
    }

    #[test]
    fn median_of_batch_means_near_mu() {
        // infinite variance: the median of batch means is the robust statistic
        let p = params(1_000_000, 99);
        let w = sample_weights(&p, 0).unwrap();
        let mut means: Vec<f64> = w
            .weights
            .chunks(10_000)
            .map(|c| c.iter().sum::<f64>() / c.len() as f64)
            .collect();
        means.sort_by(f64::total_cmp);
        let med = means[means.len() / 2];
        // batch medians sit slightly below mu because the sum is right-skewed
        assert!((2.7..=3.1).contains(&med), "median batch mean {med}");
        let total = w.weights.iter().sum::<f64>() / w.len() as f64;
        assert!((2.7..=3.6).contains(&total), "overall mean {total}");
    }

    #[test]
    fn log_power_weights() {
        let p = params(20_000, 5)
            .with_svf(SlowlyVarying::LogPower(1.0))
            .unwrap();
        let w = sample_weights(&p, 0).unwrap();
        assert!(w.weights.iter().all(|&h| h >= 1.0));
        assert!((w.mu - 7.0).abs() < 1e-9);
        let tau = p.tau;
        let n = w.len() as f64;
        for h in [2.0f64, 10.0] {
            let emp = w.weights.iter().filter(|&&x| x > h).count() as f64 / n;
            let exact = SlowlyVarying::LogPower(1.0).tail(h, tau);
            assert!((emp - exact).abs() < 0.015, "h={h}: {emp} vs {exact}");
        }
    }

    #[test]
    fn unsupported_constant() {
        let p = params(10, 1)
            .with_svf(SlowlyVarying::Constant(2.0))
            .unwrap();
        assert!(matches!(
            sample_weights(&p, 0),
            Err(crate::Error::Unsupported(_))
        ));
    }
}
