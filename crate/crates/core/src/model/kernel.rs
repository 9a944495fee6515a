use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Connection kernel `f`: maps the normalized weight product `x = h_i h_j / (n mu)`
/// to an edge probability. All variants are continuous and nondecreasing with
/// `f(0) = 0`, `f(x)/x -> 1` as `x -> 0` and `f(x) -> 1` as `x -> inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kernel {
    /// `min(1, x)`
    MinOne,
    /// `x / (1 + x)`
    Ratio,
    /// `1 - exp(-x)`
    ExpComplement,
}

impl Kernel {
    pub const ALL: [Kernel; 3] = [Kernel::MinOne, Kernel::Ratio, Kernel::ExpComplement];

    #[inline]
    pub fn eval<T: Scalar>(self, x: T) -> T {
        match self {
            Kernel::MinOne => x.min(T::one()),
            Kernel::Ratio => {
                if x.is_infinite() {
                    T::one()
                } else {
                    x / (T::one() + x)
                }
            }
            Kernel::ExpComplement => -(-x).exp_m1(),
        }
    }

    /// `f(e^u)`, evaluated without overflowing for large `u`.
    #[inline]
    pub fn eval_exp<T: Scalar>(self, u: T) -> T {
        match self {
            Kernel::MinOne => u.min(T::zero()).exp(),
            Kernel::Ratio => T::one() / (T::one() + (-u).exp()),
            Kernel::ExpComplement => -(-(u.exp())).exp_m1(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kernel::MinOne => "min-one",
            Kernel::Ratio => "ratio",
            Kernel::ExpComplement => "exp-complement",
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-one" => Ok(Kernel::MinOne),
            "ratio" => Ok(Kernel::Ratio),
            "exp-complement" => Ok(Kernel::ExpComplement),
            other => Err(Error::Parameter(format!(
                "unknown kernel '{other}' (expected min-one, ratio or exp-complement)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn kernel_class_conditions() {
        for k in Kernel::ALL {
            assert_eq!(k.eval(0.0f64), 0.0);
            let small = 1e-8f64;
            let r = k.eval(small) / small;
            assert!((0.99..=1.01).contains(&r), "{k}: f(x)/x = {r}");
            assert!((k.eval(1e12f64) - 1.0).abs() < 1e-6, "{k}");
            assert_eq!(k.eval(f64::INFINITY), 1.0);
        }
        assert_eq!(Kernel::Ratio.eval(1.0f64), 0.5);
        assert_eq!(Kernel::MinOne.eval(1.0f64 / 9.0), 1.0 / 9.0);
    }

    #[test]
    fn eval_exp_matches_eval() {
        for k in Kernel::ALL {
            for u in [-30.0, -2.0, -0.1, 0.0, 0.3, 5.0, 40.0] {
                let a: f64 = k.eval_exp(u);
                let b: f64 = k.eval(f64::exp(u));
                assert!(
                    (a - b).abs() <= 1e-14 * b.max(1e-300),
                    "{k} u={u}: {a} vs {b}"
                );
            }
            assert_eq!(k.eval_exp(1000.0f64), 1.0);
            assert_eq!(k.eval_exp(-1000.0f64), 0.0);
        }
    }

    #[test]
    fn parse_round_trip() {
        for k in Kernel::ALL {
            assert_eq!(k.name().parse::<Kernel>().unwrap(), k);
            let js = serde_json::to_string(&k).unwrap();
            assert_eq!(js, format!("\"{}\"", k.name()));
        }
        assert!("linear".parse::<Kernel>().is_err());
    }

    proptest! {
        #[test]
        fn nondecreasing_and_bounded(x in 0.0f64..1e6, dx in 0.0f64..10.0) {
            for k in Kernel::ALL {
                let a = k.eval(x);
                let b = k.eval(x + dx);
                prop_assert!(a <= b);
                prop_assert!((0.0..=1.0).contains(&a));
            }
        }
    }
}
