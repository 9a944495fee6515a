use super::tau::Tau;
use crate::error::{Error, Result};
use crate::quadrature::integrate_1d;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Slowly varying modulation `l(h)` of the weight tail `P(H > h) = l(h) h^(1-tau)`.
///
/// `Constant(1.0)` is the pure power law with density `(tau-1) h^-tau`.
/// `LogPower(a)` is `l(h) = (log(e h))^a = (1 + log h)^a`, which has `l(1) = 1`
/// and is a proper tail whenever `a <= tau - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SlowlyVarying {
    Constant(f64),
    LogPower(f64),
}

impl Default for SlowlyVarying {
    fn default() -> Self {
        SlowlyVarying::Constant(1.0)
    }
}

impl SlowlyVarying {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SlowlyVarying::Constant(c) if !(c > 0.0 && c.is_finite()) => Err(Error::Parameter(
                format!("constant slowly varying function needs c > 0, got {c}"),
            )),
            SlowlyVarying::LogPower(a) if !a.is_finite() => Err(Error::Parameter(format!(
                "log-power exponent must be finite, got {a}"
            ))),
            _ => Ok(()),
        }
    }

    /// `l(h)` for `h >= 1`.
    #[inline]
    pub fn eval(&self, h: f64) -> f64 {
        match *self {
            SlowlyVarying::Constant(c) => c,
            SlowlyVarying::LogPower(a) => (1.0 + h.ln()).powf(a),
        }
    }

    /// `ln l(h)`.
    #[inline]
    pub fn ln_eval(&self, h: f64) -> f64 {
        match *self {
            SlowlyVarying::Constant(c) => c.ln(),
            SlowlyVarying::LogPower(a) => a * (1.0 + h.ln()).ln(),
        }
    }

    pub fn is_pure_power_law(&self) -> bool {
        matches!(*self, SlowlyVarying::Constant(c) if c == 1.0)
    }

    /// `l(h) h^(1-tau)`.
    pub fn tail(&self, h: f64, tau: Tau) -> f64 {
        self.eval(h) * h.powf(1.0 - tau.value())
    }

    /// Checks that the tail is a distribution on `[1, inf)` the sampler can invert.
    pub fn check_samplable(&self, tau: Tau) -> Result<()> {
        self.validate()?;
        match *self {
            SlowlyVarying::Constant(c) if c != 1.0 => Err(Error::Unsupported(format!(
                "constant l = {c} does not give P(H > 1) = 1; only constant 1 (the pure power law) can be sampled"
            ))),
            SlowlyVarying::LogPower(a) if a > tau.value() - 1.0 => Err(Error::Unsupported(format!(
                "log-power exponent {a} exceeds tau - 1 = {}; the tail would not be monotone",
                tau.value() - 1.0
            ))),
            _ => Ok(()),
        }
    }

    /// Weight `h >= 1` with `P(H > h) = u`, for `u` in (0, 1].
    pub fn tail_quantile(&self, u: f64, tau: Tau) -> f64 {
        let t = tau.value();
        match *self {
            SlowlyVarying::Constant(_) => u.powf(-1.0 / (t - 1.0)),
            SlowlyVarying::LogPower(a) => {
                // Solve a ln(1+x) + (1-tau) x = ln u for x = ln h >= 0; the left side is decreasing.
                let target = u.ln();
                let g = |x: f64| a * (1.0 + x).ln() + (1.0 - t) * x - target;
                if g(0.0) <= 0.0 {
                    return 1.0;
                }
                let mut lo = 0.0;
                let mut hi = 1.0;
                while g(hi) > 0.0 {
                    lo = hi;
                    hi *= 2.0;
                }
                // relative accuracy 1e-12 in h means absolute 1e-12 in ln h
                while hi - lo > 1e-13 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                (0.5 * (lo + hi)).exp()
            }
        }
    }

    /// Mean of the weight law, `1 + int_1^inf l(h) h^(1-tau) dh`.
    pub fn mean(&self, tau: Tau) -> f64 {
        let t = tau.value();
        match *self {
            SlowlyVarying::Constant(c) => 1.0 + c / (t - 2.0),
            SlowlyVarying::LogPower(a) => {
                let r = integrate_1d(
                    |x: f64| (1.0 + x).powf(a) * ((2.0 - t) * x).exp(),
                    0.0,
                    f64::INFINITY,
                    1e-12,
                );
                1.0 + r.value
            }
        }
    }
}

impl fmt::Display for SlowlyVarying {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlowlyVarying::Constant(c) => write!(f, "constant:{c}"),
            SlowlyVarying::LogPower(a) => write!(f, "log-power:{a}"),
        }
    }
}

impl FromStr for SlowlyVarying {
    type Err = Error;

    /// Parses `constant:<c>` or `log-power:<a>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parameter(format!(
                "cannot parse slowly varying spec '{s}' (expected constant:<c> or log-power:<a>)"
            ))
        };
        let (name, val) = s.split_once(':').ok_or_else(bad)?;
        let v: f64 = val.trim().parse().map_err(|_| bad())?;
        let spec = match name.trim() {
            "constant" => SlowlyVarying::Constant(v),
            "log-power" => SlowlyVarying::LogPower(v),
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}
