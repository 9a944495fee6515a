use super::{info, log_binomial, log_factor, log_factorial, TheoryMode, TheoryValue};
use crate::error::{param, Error, Result};
use crate::model::{Kernel, SlowlyVarying, Tau};
use crate::quadrature::{
    integrate_1d, integrate_box_with, integrate_real_line_power, QmcOptions, QuadratureResult,
};
use crate::special::{
    circulant_build, kernel_fourier, kernel_fourier_envelope, kernel_j, kernel_moment,
};

fn log_gamma_n(n: u64, tau: Tau) -> f64 {
    0.5 * (n as f64 * tau.mean_weight()).ln()
}

fn check_n_k(n: u64, k: usize) -> Result<()> {
    if k < 3 {
        return param(format!("cycle length must be at least 3, got {k}"));
    }
    if (n as usize) < k {
        return param(format!("need n >= k, got n = {n}, k = {k}"));
    }
    Ok(())
}

/// Common prefix `gamma_n^{k(1-tau)} (tau-1)^k C(n,k) k!`.
fn cycle_prefix(n: u64, k: usize, tau: Tau) -> Result<Vec<super::Component>> {
    let t = tau.value();
    let kf = k as f64;
    Ok(vec![
        log_factor("k(1-tau) log gamma_n", kf * (1.0 - t) * log_gamma_n(n, tau)),
        log_factor("k log(tau-1)", kf * (t - 1.0).ln()),
        log_factor("log C(n,k)", log_binomial(n, k as u64)?),
        log_factor("log k!", log_factorial(k as u64)),
    ])
}

/// Odd `k`: `gamma_n^{k(1-tau)} (tau-1)^k (1/(4k)) C(n,k) k! M^k`, with `M` the kernel moment.
pub fn cycle_odd(n: u64, k: usize, tau: Tau, kernel: Kernel) -> Result<TheoryValue> {
    check_n_k(n, k)?;
    if k % 2 == 0 {
        return param(format!("k = {k} is even; use cycle_even"));
    }
    let m = kernel_moment(tau, kernel);
    let mut c = cycle_prefix(n, k, tau)?;
    c.push(log_factor("-log(4k)", -(4.0 * k as f64).ln()));
    c.push(log_factor("k log M", k as f64 * m.ln()));
    c.push(info("M", m));
    Ok(TheoryValue::assemble(TheoryMode::CycleOdd, c))
}

/// Min-one closed form `n^{k(3-tau)/2} mu^{k(1-tau)/2} (4/(3-tau))^k (1/(4k)) e^{-k^2/(2n)}`.
pub fn cycle_stirling_form(n: u64, k: usize, tau: Tau) -> Result<TheoryValue> {
    check_n_k(n, k)?;
    if k % 2 == 0 {
        return param(format!(
            "k = {k} is even; the odd-cycle form does not apply"
        ));
    }
    let t = tau.value();
    let kf = k as f64;
    let nf = n as f64;
    Ok(TheoryValue::assemble(
        TheoryMode::CycleStirling,
        vec![
            log_factor("k(3-tau)/2 log n", kf * (3.0 - t) / 2.0 * nf.ln()),
            log_factor(
                "k(1-tau)/2 log mu",
                kf * (1.0 - t) / 2.0 * tau.mean_weight().ln(),
            ),
            log_factor("k log(4/(3-tau))", kf * (4.0 / (3.0 - t)).ln()),
            log_factor("-log(4k)", -(4.0 * kf).ln()),
            log_factor("-k^2/(2n)", -kf * kf / (2.0 * nf)),
            info("k/n^(2/3)", kf / nf.powf(2.0 / 3.0)),
        ],
    ))
}

/// `int_R |J(v)|^k dv`.
pub fn even_cycle_constant(k: usize, tau: Tau, kernel: Kernel, rel_tol: f64) -> QuadratureResult {
    let env = kernel_fourier_envelope(tau, kernel);
    integrate_real_line_power(|v| kernel_fourier(v, tau, kernel).norm(), env, k, rel_tol)
}

/// Even `k`: `gamma_n^{k(1-tau)} log(gamma_n) (tau-1)^k (1/k) C(n,k) k! int |J|^k dv`.
pub fn cycle_even(n: u64, k: usize, tau: Tau, kernel: Kernel, rel_tol: f64) -> Result<TheoryValue> {
    check_n_k(n, k)?;
    if k % 2 == 1 {
        return param(format!("k = {k} is odd; use cycle_odd"));
    }
    let q = even_cycle_constant(k, tau, kernel, rel_tol);
    let a = log_gamma_n(n, tau);
    let mut c = cycle_prefix(n, k, tau)?;
    c.push(log_factor("log log gamma_n", a.ln()));
    c.push(log_factor("-log k", -(k as f64).ln()));
    c.push(log_factor("log int |J|^k", q.value.ln()));
    c.push(info("int |J|^k", q.value));
    c.push(info("log gamma_n", a));
    let mut v = TheoryValue::assemble(TheoryMode::CycleEven, c);
    v.error_estimate = Some(v.value * q.error_estimate / q.value);
    v.converged = q.converged;
    Ok(v)
}

/// Lower bound for even `k`:
/// `n^k Fbar(sqrt n)^k int_{gamma_n}^{gamma_n^2} l^{k/2}(h) l^{k/2}(n mu / h) / l^k(gamma_n) dh / h`.
///
/// The integral is taken in `s = log(h / gamma_n)`, over `[0, log gamma_n]`.
pub fn cycle_lower_bound_even(
    n: u64,
    k: usize,
    tau: Tau,
    svf: &SlowlyVarying,
) -> Result<TheoryValue> {
    check_n_k(n, k)?;
    if k % 2 == 1 {
        return param(format!(
            "k = {k} is odd; the lower bound is for even cycles"
        ));
    }
    svf.validate()?;
    let t = tau.value();
    let kf = k as f64;
    let half_k = kf / 2.0;
    let nf = n as f64;
    let mu = svf.mean(tau);
    let a = 0.5 * (nf * mu).ln();
    let ln_l_gamma = svf.ln_eval(a.exp());
    let r = integrate_1d(
        |s: f64| {
            let up = svf.ln_eval((a + s).exp());
            let dn = svf.ln_eval((a - s).exp());
            (half_k * (up + dn) - kf * ln_l_gamma).exp()
        },
        0.0,
        a,
        1e-12,
    );
    let ln_tail = svf.ln_eval(nf.sqrt()) + (1.0 - t) * 0.5 * nf.ln();
    let mut v = TheoryValue::assemble(
        TheoryMode::CycleLowerBound,
        vec![
            log_factor("k log n", kf * nf.ln()),
            log_factor("k log Fbar(sqrt n)", kf * ln_tail),
            log_factor("log integral", r.value.ln()),
            info("integral", r.value),
            info("log gamma_n", a),
        ],
    );
    v.error_estimate = Some(v.value * r.error_estimate / r.value);
    v.converged = r.converged;
    Ok(v)
}

/// `int_{[-A,A]^k} F(C t) dt` with `F(u) = prod j(u_i)` and `C` the circulant matrix.
pub fn cycle_integral_direct(
    k: usize,
    a: f64,
    tau: Tau,
    kernel: Kernel,
    budget: usize,
) -> Result<QuadratureResult> {
    cycle_integral_direct_with(k, a, tau, kernel, &QmcOptions::new(budget, 16))
}

pub fn cycle_integral_direct_with(
    k: usize,
    a: f64,
    tau: Tau,
    kernel: Kernel,
    opts: &QmcOptions,
) -> Result<QuadratureResult> {
    if k < 3 {
        return param(format!("cycle length must be at least 3, got {k}"));
    }
    if k > 5 {
        return Err(Error::Unsupported(format!(
            "box integrals are limited to k <= 5, got {k}"
        )));
    }
    let c = circulant_build(k)?;
    integrate_box_with(
        |t: &[f64]| {
            c.apply(t)
                .into_iter()
                .map(|u| kernel_j(u, tau, kernel))
                .product()
        },
        k,
        a,
        opts,
    )
}
