use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Power-law exponent of the weight tail, strictly inside (2, 3).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Tau<T: Scalar = f64>(T);

impl<T: Scalar> Tau<T> {
    pub fn new(value: T) -> Result<Self> {
        if value > T::lit(2.0) && value < T::lit(3.0) {
            Ok(Self(value))
        } else {
            Err(Error::Parameter(format!(
                "tau must lie strictly inside (2, 3), got {value}"
            )))
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// Mean of the pure power law with density `(tau-1) h^-tau` on `h >= 1`.
    #[inline]
    pub fn mean_weight(self) -> T {
        (self.0 - T::one()) / (self.0 - T::lit(2.0))
    }

    /// `gamma_n = sqrt(n * mu)`, the weight scale at which `h_i h_j` saturates.
    #[inline]
    pub fn structural_scale(self, n: u64) -> T {
        (T::from_u64(n).expect("n representable") * self.mean_weight()).sqrt()
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Tau<T> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = T::deserialize(d)?;
        Tau::new(v).map_err(serde::de::Error::custom)
    }
}

/// `(tau-1)/(tau-2)`.
pub fn mean_weight<T: Scalar>(tau: Tau<T>) -> T {
    tau.mean_weight()
}

/// `sqrt(n * mean_weight(tau))`.
pub fn structural_scale<T: Scalar>(n: u64, tau: Tau<T>) -> Result<T> {
    if n == 0 {
        return Err(Error::Parameter("n must be at least 1".into()));
    }
    Ok(tau.structural_scale(n))
}
