//! Integrals of `|g(v)|^k` over the whole real line for even `g` with a power-law envelope.

use super::gk::{integrate_1d_with, Options};
use super::QuadratureResult;
use crate::scalar::Scalar;

/// Envelope `|g(v)| <= coef * |v|^{-power}` valid for all `v != 0`.
#[derive(Debug, Clone, Copy)]
pub struct PowerEnvelope<T> {
    pub coef: T,
    pub power: T,
}

impl<T: Scalar> PowerEnvelope<T> {
    /// Bound on `2 * int_V^inf (coef v^{-power})^k dv`.
    pub fn tail_bound(&self, k: usize, v: T) -> T {
        let kk = T::of_usize(k);
        let e = self.power * kk - T::one();
        T::lit(2.0) * self.coef.powf(kk) * v.powf(-e) / e
    }
}

#[derive(Debug, Clone, Copy)]
pub struct RealLineOptions<T> {
    pub rel_tol: T,
    /// Truncation never goes below this point.
    pub min_truncation: T,
}

impl<T: Scalar> RealLineOptions<T> {
    pub fn new(rel_tol: T) -> Self {
        Self {
            rel_tol,
            min_truncation: T::one(),
        }
    }
}

/// Computes `int_R |g(v)|^k dv` as twice the half-line integral up to a truncation `V`
/// whose analytic tail bound is below a tenth of the tolerance. The tail bound is
/// folded into the error estimate.
pub fn integrate_real_line_power<T: Scalar, G: Fn(T) -> T>(
    g: G,
    envelope: PowerEnvelope<T>,
    k: usize,
    rel_tol: T,
) -> QuadratureResult<T> {
    integrate_real_line_power_with(g, envelope, k, &RealLineOptions::new(rel_tol))
}

pub fn integrate_real_line_power_with<T: Scalar, G: Fn(T) -> T>(
    g: G,
    envelope: PowerEnvelope<T>,
    k: usize,
    opts: &RealLineOptions<T>,
) -> QuadratureResult<T> {
    let ki = k as i32;
    let h = |v: T| g(v).abs().powi(ki);
    let inner = Options::new(opts.rel_tol * T::lit(0.5));
    let mut upper = opts.min_truncation;
    let mut acc = integrate_1d_with(&h, T::zero(), upper, &inner);
    loop {
        let half = acc.value;
        let tail = envelope.tail_bound(k, upper);
        if tail < opts.rel_tol * T::lit(0.1) * (T::lit(2.0) * half).abs() || !half.is_finite() {
            return QuadratureResult {
                value: T::lit(2.0) * half,
                error_estimate: T::lit(2.0) * acc.error_estimate + tail,
                evaluations: acc.evaluations,
                converged: acc.converged,
            };
        }
        let next = upper * T::lit(2.0);
        let piece = integrate_1d_with(&h, upper, next, &inner);
        acc = QuadratureResult {
            value: acc.value + piece.value,
            error_estimate: acc.error_estimate + piece.error_estimate,
            evaluations: acc.evaluations + piece.evaluations,
            converged: acc.converged && piece.converged,
        };
        upper = next;
    }
}

/// The truncation point the half-line doubling would stop at, given the full integral.
pub fn truncation_for<T: Scalar>(envelope: PowerEnvelope<T>, k: usize, total: T, rel_tol: T) -> T {
    let kk = T::of_usize(k);
    let e = envelope.power * kk - T::one();
    let target = rel_tol * T::lit(0.1) * total.abs();
    (T::lit(2.0) * envelope.coef.powf(kk) / (e * target)).powf(T::one() / e)
}
