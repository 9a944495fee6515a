use crate::error::{param, Result};
use crate::special::ln_gamma;

/// `ln C(n, k)`: a direct sum of logs for `min(k, n-k) <= 1000`, log-gamma beyond.
pub fn log_binomial(n: u64, k: u64) -> Result<f64> {
    if k > n {
        return param(format!("binomial needs k <= n, got n = {n}, k = {k}"));
    }
    let k = k.min(n - k);
    if k <= 1000 {
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..k {
            num += ((n - i) as f64).ln();
            den += ((i + 1) as f64).ln();
        }
        return Ok(num - den);
    }
    let n = n as f64;
    let k = k as f64;
    Ok(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0))
}

/// `ln k!`.
pub fn log_factorial(k: u64) -> f64 {
    if k <= 1000 {
        (2..=k).map(|i| (i as f64).ln()).sum()
    } else {
        ln_gamma(k as f64 + 1.0)
    }
}
