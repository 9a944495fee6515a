use super::{info, log_binomial, log_factor, log_factorial, term, TheoryMode, TheoryValue};
use crate::error::{param, Error, Result};
use crate::model::{SlowlyVarying, Tau};
use crate::quadrature::{integrate_unit_cube_with, IntegrandSpec, QmcOptions};
use crate::special::psi;
use serde::{Deserialize, Serialize};

/// Largest `m` for which `J_m` is integrated numerically.
pub const MAX_JM_DIM: usize = 8;
const JM_REPLICATIONS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JmValue {
    pub m: usize,
    pub k: usize,
    pub tau: f64,
    pub value: f64,
    pub error_estimate: f64,
}

impl JmValue {
    /// `(tau-1)^m m! J_m`, the quantity entering the bracket.
    pub fn scaled(&self) -> f64 {
        (self.tau - 1.0).powi(self.m as i32) * log_factorial(self.m as u64).exp() * self.value
    }

    pub fn scaled_error(&self) -> f64 {
        self.scaled() / self.value * self.error_estimate
    }
}

/// `J_m = int_{[0,1]^m} prod_i t_i^{i(m-tau)-1} Phi_m(t)^{k-m} dt`.
pub fn j_m(m: usize, k: usize, tau: Tau, budget: usize) -> Result<JmValue> {
    j_m_with(m, k, tau, &QmcOptions::new(budget, JM_REPLICATIONS))
}

/// With `Phi_m = t_1 t_2^{tau-1} ... t_m^{tau-1} Psi_m` the power of `t_i` combines
/// into a single exponent per axis; only the bounded `Psi_m^{k-m}` is sampled.
pub fn j_m_with(m: usize, k: usize, tau: Tau, opts: &QmcOptions) -> Result<JmValue> {
    if k < 3 || m < 1 || m >= k {
        return param(format!(
            "J_m needs 1 <= m <= k-1 and k >= 3, got m = {m}, k = {k}"
        ));
    }
    if m > MAX_JM_DIM {
        return Err(Error::Unsupported(format!(
            "J_m is integrated in at most {MAX_JM_DIM} dimensions, got m = {m}"
        )));
    }
    let t = tau.value();
    let km = (k - m) as f64;
    let exponents: Vec<f64> = (1..=m)
        .map(|i| {
            let raw = i as f64 * (m as f64 - t) - 1.0;
            raw + km * if i == 1 { 1.0 } else { t - 1.0 }
        })
        .collect();
    let power = (k - m) as i32;
    let spec = IntegrandSpec::new(m, move |x: &[f64]| psi(tau, x).powi(power))
        .with_exponents(exponents)?;
    let r = integrate_unit_cube_with(&spec, opts)?;
    Ok(JmValue {
        m,
        k,
        tau: t,
        value: r.value,
        error_estimate: r.error_estimate,
    })
}

fn check_clique_k(k: usize) -> Result<()> {
    if k < 3 {
        return param(format!("motif size must be at least 3, got {k}"));
    }
    Ok(())
}

fn log_n(n: u64) -> Result<f64> {
    if n == 0 {
        return param("n must be positive");
    }
    Ok((n as f64).ln())
}

/// `n^{k(3-tau)/2} l(sqrt n)^k`, the order of growth with the constant set to one.
pub fn clique_rough(n: u64, k: usize, tau: Tau, svf: &SlowlyVarying) -> Result<TheoryValue> {
    check_clique_k(k)?;
    svf.validate()?;
    let t = tau.value();
    let kf = k as f64;
    let ln_n = log_n(n)?;
    Ok(TheoryValue::assemble(
        TheoryMode::CliqueRough,
        vec![
            log_factor("k(3-tau)/2 log n", kf * (3.0 - t) / 2.0 * ln_n),
            log_factor("k log l(sqrt n)", kf * svf.ln_eval((n as f64).sqrt())),
        ],
    ))
}

/// `((tau-1)/(k-tau))^k mu^{k(1-tau)/2} n^{k(3-tau)/2} l(sqrt n)^k`.
pub fn clique_cutoff(n: u64, k: usize, tau: Tau, svf: &SlowlyVarying) -> Result<TheoryValue> {
    check_clique_k(k)?;
    svf.validate()?;
    let t = tau.value();
    let kf = k as f64;
    let ln_n = log_n(n)?;
    let mu = svf.mean(tau);
    Ok(TheoryValue::assemble(
        TheoryMode::CliqueCutoff,
        vec![
            log_factor("k log((tau-1)/(k-tau))", kf * ((t - 1.0) / (kf - t)).ln()),
            log_factor("k(1-tau)/2 log mu", kf * (1.0 - t) / 2.0 * mu.ln()),
            log_factor("k(3-tau)/2 log n", kf * (3.0 - t) / 2.0 * ln_n),
            log_factor("k log l(sqrt n)", kf * svf.ln_eval((n as f64).sqrt())),
            info("mu", mu),
        ],
    ))
}

/// `C(n,k) gamma_n^{k(1-tau)} [1 + sum_m C(k,m) (tau-1)^m m! J_m + ((tau-1)/(k-tau))^k]`
/// for the pure power law.
///
/// Terms with `m > 8` are replaced by their upper bound `C(k,m) ((tau-1)/(m-tau))^m`
/// and the result is flagged as an upper estimate.
pub fn clique_precise(n: u64, k: usize, tau: Tau, budget: usize) -> Result<TheoryValue> {
    clique_precise_with(n, k, tau, &QmcOptions::new(budget, JM_REPLICATIONS))
}

pub fn clique_precise_with(n: u64, k: usize, tau: Tau, opts: &QmcOptions) -> Result<TheoryValue> {
    check_clique_k(k)?;
    if (n as usize) < k {
        return param(format!("need n >= k, got n = {n}, k = {k}"));
    }
    let t = tau.value();
    let kf = k as f64;
    let log_gamma_n = 0.5 * (n as f64 * tau.mean_weight()).ln();
    let mut components = vec![
        log_factor("log C(n,k)", log_binomial(n, k as u64)?),
        log_factor("k(1-tau) log gamma_n", kf * (1.0 - t) * log_gamma_n),
        term("I_0", 1.0),
    ];
    let mut bracket_err = 0.0;
    let mut upper = false;
    for m in 1..k {
        let ln_choose = log_binomial(k as u64, m as u64)?;
        if m <= MAX_JM_DIM {
            let jm = j_m_with(m, k, tau, opts)?;
            let c = ln_choose.exp();
            components.push(term(format!("m={m}"), c * jm.scaled()));
            components.push(info(format!("J_{m}"), jm.value));
            bracket_err += c * jm.scaled_error();
        } else {
            upper = true;
            let bound = (ln_choose + m as f64 * ((t - 1.0) / (m as f64 - t)).ln()).exp();
            components.push(term(format!("m={m} (bound)"), bound));
        }
    }
    components.push(term("I_k", ((t - 1.0) / (kf - t)).powi(k as i32)));
    let mut v = TheoryValue::assemble(TheoryMode::CliquePrecise, components);
    let bracket: f64 = v.terms().map(|c| c.value).sum();
    v.error_estimate = Some(v.value / bracket * bracket_err);
    v.upper_estimate = upper;
    Ok(v)
}

/// `e^{2 m_0}` with `m_0 = sqrt(k (tau-1) / e)`: growth bound on the bracket in `k`.
pub fn clique_series_bound(k: usize, tau: Tau) -> Result<TheoryValue> {
    check_clique_k(k)?;
    let m0 = (k as f64 * (tau.value() - 1.0) / std::f64::consts::E).sqrt();
    Ok(TheoryValue::assemble(
        TheoryMode::CliqueBound,
        vec![log_factor("2 m0", 2.0 * m0), info("m0", m0)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(x: f64) -> Tau {
        Tau::new(x).unwrap()
    }

    #[test]
    fn j1_closed_form() {
        let j = j_m(1, 3, tau(2.5), 1 << 18).unwrap();
        assert!((j.value - 26.0 / 3.0).abs() < 1e-5, "{}", j.value);
    }

    #[test]
    fn j_m_argument_checks() {
        assert!(j_m(3, 3, tau(2.5), 1024).is_err());
        assert!(j_m(0, 3, tau(2.5), 1024).is_err());
        assert!(matches!(
            j_m(9, 12, tau(2.5), 1024),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn j2_against_tensor_gauss_legendre() {
        // independent: substitute t_i = s_i^{p_i} and apply a 2D composite Gauss rule
        let tv = 2.5;
        let (m, k) = (2usize, 4usize);
        let a1 = (m as f64 - tv) - 1.0 + (k - m) as f64;
        let a2 = 2.0 * (m as f64 - tv) - 1.0 + (k - m) as f64 * (tv - 1.0);
        let (p1, p2) = (1.0 / (1.0 + a1), 1.0 / (1.0 + a2));
        let nodes = [
            (-0.906_179_845_938_664, 0.236_926_885_056_189_1),
            (-0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.0, 0.568_888_888_888_888_9),
            (0.538_469_310_105_683_1, 0.478_628_670_499_366_5),
            (0.906_179_845_938_664, 0.236_926_885_056_189_1),
        ];
        let panels = 200;
        let mut pts = Vec::new();
        for p in 0..panels {
            let (lo, h) = (p as f64 / panels as f64, 1.0 / panels as f64);
            for &(x, w) in &nodes {
                pts.push((lo + h * (x + 1.0) / 2.0, w * h / 2.0));
            }
        }
        let mut total = 0.0;
        for &(s1, w1) in &pts {
            for &(s2, w2) in &pts {
                let t = [s1.powf(p1), s2.powf(p2)];
                let ps = psi(tau(tv), &t);
                total += w1 * w2 * ps.powi((k - m) as i32);
            }
        }
        let exact = total * p1 * p2;
        let j = j_m(2, 4, tau(tv), 1 << 18).unwrap();
        assert!(
            (j.value - exact).abs() < 1e-4 * exact + 4.0 * j.error_estimate,
            "{} vs {exact}",
            j.value
        );
    }

    #[test]
    fn rough_and_cutoff_examples() {
        let one = SlowlyVarying::default();
        let r = clique_rough(10_000, 3, tau(2.5), &one).unwrap();
        assert!((r.value - 1000.0).abs() < 1e-9);
        let r2 = clique_rough(20_000, 3, tau(2.5), &one).unwrap();
        assert!((r2.value / r.value - 2f64.powf(0.75)).abs() < 1e-12);
        let near3 = clique_rough(10_000, 3, tau(3.0 - 1e-12), &one).unwrap();
        assert!((near3.value - 1.0).abs() < 1e-9);

        let c = clique_cutoff(10_000, 3, tau(2.5), &one).unwrap();
        let expected = 27.0 * 3f64.powf(-2.25) * 1000.0;
        assert!(
            ((c.value - expected) / expected).abs() < 1e-12,
            "{}",
            c.value
        );
        assert!((c.value - 2279.507_057).abs() < 1e-5);
        let c2 = clique_cutoff(20_000, 3, tau(2.5), &one).unwrap();
        assert!((c2.value / c.value - 2f64.powf(0.75)).abs() < 1e-12);
        let c4 = clique_cutoff(1, 4, tau(2.5), &one).unwrap();
        assert!((c4.component("k log((tau-1)/(k-tau))").unwrap()).abs() < 1e-15);
    }

    #[test]
    fn precise_k3_bracket() {
        let v = clique_precise(10_000, 3, tau(2.5), 1 << 16).unwrap();
        let m1 = v.component("m=1").unwrap();
        assert!((m1 - 39.0).abs() < 1e-4, "{m1}");
        let j2 = v.component("J_2").unwrap();
        let m2 = v.component("m=2").unwrap();
        assert!((m2 - 13.5 * j2).abs() < 1e-12 * m2);
        assert!((v.component("I_k").unwrap() - 27.0).abs() < 1e-12);
        assert!(v.terms().all(|c| c.value > 0.0));
        assert!(((v.reconstructed_log() - v.log_value) / v.log_value).abs() < 1e-12);
        assert!(!v.upper_estimate);
    }

    #[test]
    fn precise_uses_bounds_beyond_eight() {
        let v = clique_precise(1_000_000, 10, tau(2.5), 1 << 12).unwrap();
        assert!(v.upper_estimate);
        assert!(v.component("m=9 (bound)").is_some());
        assert!(v.value.is_finite() && v.value > 0.0);
    }

    #[test]
    fn series_bound() {
        let b = clique_series_bound(100, tau(2.5)).unwrap();
        assert!((b.component("m0").unwrap() - (150.0 / std::f64::consts::E).sqrt()).abs() < 1e-12);
        assert!((b.log_value - 2.0 * 7.428_4).abs() < 1e-3);
        let mut prev = 0.0;
        for k in 3..50 {
            let v = clique_series_bound(k, tau(2.5)).unwrap().value;
            assert!(v > prev);
            prev = v;
        }
    }
}
