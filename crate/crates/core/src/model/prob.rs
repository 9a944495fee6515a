use super::graph::edge_probability;
use super::kernel::Kernel;
use super::tau::Tau;
use super::weights::WeightVector;
use crate::error::{Error, Result};

/// Largest `n` for which a dense probability matrix is built by default.
pub const DEFAULT_ORACLE_LIMIT: usize = 2000;

/// `f(h_i h_j / (n mu))` with `mu = mean_weight(tau)`.
pub fn connection_probability(h_i: f64, h_j: f64, n: usize, tau: Tau, kernel: Kernel) -> f64 {
    edge_probability(h_i, h_j, n, tau.mean_weight(), kernel)
}

/// Dense symmetric matrix of edge probabilities with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl ProbabilityMatrix {
    /// Builds a matrix from explicit entries (row-major). Checks the invariants.
    pub fn from_dense(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Parameter(format!(
                "expected {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::Domain(format!("diagonal entry {i} is nonzero")));
            }
            for j in 0..n {
                let p = data[i * n + j];
                if !(0.0..=1.0).contains(&p) || p != data[j * n + i] {
                    return Err(Error::Domain(format!(
                        "entry ({i}, {j}) = {p} invalid or asymmetric"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    /// All off-diagonal entries equal to `p`.
    pub fn constant(n: usize, p: f64) -> Result<Self> {
        let mut data = vec![p; n * n];
        for i in 0..n {
            data[i * n + i] = 0.0;
        }
        Self::from_dense(n, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

/// Matrix of `connection_probability` values, refusing `n` above [`DEFAULT_ORACLE_LIMIT`].
pub fn probability_matrix(
    weights: &WeightVector,
    n: usize,
    tau: Tau,
    kernel: Kernel,
) -> Result<ProbabilityMatrix> {
    probability_matrix_with_limit(weights, n, tau, kernel, DEFAULT_ORACLE_LIMIT)
}

/// The mean is taken from `weights.mu`, which equals `mean_weight(tau)` for the pure power law.
pub fn probability_matrix_with_limit(
    weights: &WeightVector,
    n: usize,
    _tau: Tau,
    kernel: Kernel,
    limit: usize,
) -> Result<ProbabilityMatrix> {
    if n > limit {
        return Err(Error::Resource(format!(
            "probability matrix for n = {n} exceeds oracle limit {limit}"
        )));
    }
    if weights.len() != n {
        return Err(Error::Parameter(format!(
            "weight vector has length {} but n = {n}",
            weights.len()
        )));
    }
    let h = &weights.weights;
    let mu = weights.mu;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let p = edge_probability(h[i], h[j], n, mu, kernel);
            data[i * n + j] = p;
            data[j * n + i] = p;
        }
    }
    Ok(ProbabilityMatrix { n, data })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{sample_weights, ModelParams};
    use proptest::prelude::*;

    fn tau() -> Tau {
        Tau::new(2.5).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(
            connection_probability(1.0, 1.0, 3, tau(), Kernel::MinOne),
            1.0 / 9.0
        );
        assert_eq!(
            connection_probability(10.0, 10.0, 3, tau(), Kernel::MinOne),
            1.0
        );
        assert_eq!(
            connection_probability(3.0, 3.0, 3, tau(), Kernel::Ratio),
            0.5
        );
        let w = WeightVector::unit(3, tau());
        let pm = probability_matrix(&w, 3, tau(), Kernel::MinOne).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pm.get(i, j), if i == j { 0.0 } else { 1.0 / 9.0 });
            }
        }
    }

    #[test]
    fn matches_pairwise_recomputation() {
        let params = ModelParams::new(80, 2.5, Kernel::ExpComplement, 4).unwrap();
        let w = sample_weights(&params, 0).unwrap();
        let pm = probability_matrix(&w, 80, tau(), Kernel::ExpComplement).unwrap();
        for i in 0..80 {
            for j in 0..80 {
                assert_eq!(pm.get(i, j), pm.get(j, i));
                if i != j {
                    let p = connection_probability(
                        w.weights[i],
                        w.weights[j],
                        80,
                        tau(),
                        Kernel::ExpComplement,
                    );
                    assert_eq!(pm.get(i, j), p);
                }
            }
        }
    }

    #[test]
    fn oracle_limit() {
        let w = WeightVector::unit(2001, tau());
        assert!(matches!(
            probability_matrix(&w, 2001, tau(), Kernel::MinOne),
            Err(Error::Resource(_))
        ));
    }

    proptest! {
        #[test]
        fn min_one_monotone(a in 1.0f64..1e4, b in 1.0f64..1e4, d in 0.0f64..1e3, n in 3usize..100_000) {
            let p = connection_probability(a, b, n, tau(), Kernel::MinOne);
            prop_assert!(p <= connection_probability(a + d, b, n, tau(), Kernel::MinOne));
            prop_assert!(p <= connection_probability(a, b + d, n, tau(), Kernel::MinOne));
            prop_assert!((0.0..=1.0).contains(&p));
        }
    }
}
