//! Randomized quasi-Monte Carlo over the unit cube and symmetric boxes.

use super::sobol::{Sobol, MAX_DIM};
use super::QuadratureResult;
use crate::error::{param, Error, Result};
use crate::scalar::Scalar;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const DEFAULT_QMC_SEED: u64 = 0x5eed_0f_c0be;
pub const MIN_REPLICATIONS: usize = 8;

/// An integrand `prod_i t_i^{alpha_i} * g(t)` on `[0,1]^dim`, where `g` is the
/// bounded regular part and `alpha_i > -1` are the declared endpoint exponents.
pub struct IntegrandSpec<T, F> {
    dim: usize,
    exponents: Vec<T>,
    regular: F,
}

impl<T: Scalar, F: Fn(&[T]) -> T + Sync> IntegrandSpec<T, F> {
    /// Smooth integrand: all exponents zero.
    pub fn new(dim: usize, regular: F) -> Self {
        Self {
            dim,
            exponents: vec![T::zero(); dim],
            regular,
        }
    }

    pub fn with_exponents(mut self, exponents: Vec<T>) -> Result<Self> {
        if exponents.len() != self.dim {
            return param(format!(
                "expected {} exponents, got {}",
                self.dim,
                exponents.len()
            ));
        }
        if let Some(a) = exponents.iter().find(|a| !(**a > -T::one())) {
            return param(format!(
                "singularity exponent {a} is not integrable (must exceed -1)"
            ));
        }
        self.exponents = exponents;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponents(&self) -> &[T] {
        &self.exponents
    }

    /// Evaluates the full integrand at `t` (no substitution).
    pub fn eval(&self, t: &[T]) -> T {
        let w = t
            .iter()
            .zip(&self.exponents)
            .fold(T::one(), |acc, (&ti, &a)| {
                if a == T::zero() {
                    acc
                } else {
                    acc * ti.powf(a)
                }
            });
        w * (self.regular)(t)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QmcOptions {
    pub budget: usize,
    pub replications: usize,
    pub seed: u64,
}

impl QmcOptions {
    pub fn new(budget: usize, replications: usize) -> Self {
        Self {
            budget,
            replications,
            seed: DEFAULT_QMC_SEED,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Points per replication: the largest power of two not above `budget / replications`.
    pub fn points_per_replication(&self) -> usize {
        let per = (self.budget / self.replications.max(1)).max(1);
        1usize << (usize::BITS - 1 - per.leading_zeros())
    }
}

/// Shifted Sobol estimate of `sum f(s) / N` on `[0,1]^dim`, one value per replication.
fn replicate<T, G>(dim: usize, opts: &QmcOptions, g: G) -> Result<(Vec<T>, usize)>
where
    T: Scalar,
    G: Fn(&[f64]) -> Result<T> + Sync,
{
    if dim == 0 || dim > MAX_DIM {
        return param(format!("dimension must be in 1..={MAX_DIM}, got {dim}"));
    }
    if opts.replications < MIN_REPLICATIONS {
        return param(format!(
            "at least {MIN_REPLICATIONS} replications are needed for an error estimate, got {}",
            opts.replications
        ));
    }
    let n = opts.points_per_replication();
    let means: Vec<Result<T>> = (0..opts.replications)
        .into_par_iter()
        .map(|r| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(r as u64);
            let shifts: Vec<u64> = (0..dim).map(|_| rng.random()).collect();
            let mut sobol = Sobol::new(dim)?;
            let mut s = vec![0.0; dim];
            let mut sum = T::zero();
            for _ in 0..n {
                sobol.next_shifted(&shifts, &mut s);
                // tent transform: measure preserving, and it lifts shifted nets to
                // second order on smooth integrands
                for x in s.iter_mut() {
                    *x = 1.0 - (2.0 * *x - 1.0).abs();
                }
                sum = sum + g(&s)?;
            }
            Ok(sum / T::of_usize(n))
        })
        .collect();
    let means = means.into_iter().collect::<Result<Vec<T>>>()?;
    Ok((means, n * opts.replications))
}

fn combine<T: Scalar>(means: &[T], evaluations: usize) -> QuadratureResult<T> {
    let r = T::of_usize(means.len());
    let mean = means.iter().fold(T::zero(), |a, &b| a + b) / r;
    let var = means
        .iter()
        .fold(T::zero(), |a, &b| a + (b - mean) * (b - mean))
        / (r - T::one());
    QuadratureResult {
        value: mean,
        error_estimate: (var / r).sqrt(),
        evaluations,
        converged: true,
    }
}

fn non_finite<T: Scalar>(t: &[T], v: T) -> Error {
    let pt: Vec<String> = t
        .iter()
        .map(|x| format!("{:e}", x.to_f64_lossy()))
        .collect();
    Error::Domain(format!("integrand is {v} at point [{}]", pt.join(", ")))
}

/// Integrates over `[0,1]^m` with the default seed.
pub fn integrate_unit_cube<T, F>(
    spec: &IntegrandSpec<T, F>,
    budget: usize,
    replications: usize,
) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T + Sync,
{
    integrate_unit_cube_with(spec, &QmcOptions::new(budget, replications))
}

/// Each axis with exponent `a` is substituted as `t = s^p`, `p = 1/(1+a)`,
/// which turns `t^a dt` into `p ds` so only the regular part is sampled.
pub fn integrate_unit_cube_with<T, F>(
    spec: &IntegrandSpec<T, F>,
    opts: &QmcOptions,
) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T + Sync,
{
    let powers: Vec<T> = spec
        .exponents
        .iter()
        .map(|&a| T::one() / (T::one() + a))
        .collect();
    let jacobian = powers.iter().fold(T::one(), |a, &p| a * p);
    let (means, evals) = replicate(spec.dim, opts, |s| {
        let t: Vec<T> = s
            .iter()
            .zip(&powers)
            .map(|(&si, &p)| {
                let si = T::lit(si);
                if p == T::one() {
                    si
                } else {
                    si.powf(p)
                }
            })
            .collect();
        let v = (spec.regular)(&t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(non_finite(&t, v))
        }
    })?;
    let mut r = combine(&means, evals);
    r.value = r.value * jacobian;
    r.error_estimate = r.error_estimate * jacobian;
    Ok(r)
}

/// Integrates `f` over the box `[-A, A]^k`.
pub fn integrate_box<T, F>(f: F, k: usize, a: T, budget: usize) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T + Sync,
{
    integrate_box_with(f, k, a, &QmcOptions::new(budget, 16))
}

pub fn integrate_box_with<T, F>(
    f: F,
    k: usize,
    a: T,
    opts: &QmcOptions,
) -> Result<QuadratureResult<T>>
where
    T: Scalar,
    F: Fn(&[T]) -> T + Sync,
{
    if !(a >= T::zero()) || !a.is_finite() {
        return param(format!(
            "box half-width must be finite and nonnegative, got {a}"
        ));
    }
    let width = a + a;
    let volume = width.powi(k as i32);
    let (means, evals) = replicate(k, opts, |s| {
        let t: Vec<T> = s.iter().map(|&si| width * T::lit(si) - a).collect();
        let v = f(&t);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(non_finite(&t, v))
        }
    })?;
    let mut r = combine(&means, evals);
    r.value = r.value * volume;
    r.error_estimate = r.error_estimate * volume;
    Ok(r)
}
