//! Numerical evaluation of the clique and cycle asymptotics, in log space.

mod binom;
mod clique;
mod cycle;

pub use binom::{log_binomial, log_factorial};
pub use clique::{
    clique_cutoff, clique_precise, clique_precise_with, clique_rough, clique_series_bound, j_m,
    j_m_with, JmValue, MAX_JM_DIM,
};
pub use cycle::{
    cycle_even, cycle_integral_direct, cycle_integral_direct_with, cycle_lower_bound_even,
    cycle_odd, cycle_stirling_form, even_cycle_constant,
};

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoryMode {
    CliqueRough,
    CliqueCutoff,
    CliquePrecise,
    CliqueBound,
    CycleOdd,
    CycleEven,
    CycleLowerBound,
    CycleStirling,
    CycleDirectIntegral,
}

impl TheoryMode {
    pub const ALL: [TheoryMode; 9] = [
        TheoryMode::CliqueRough,
        TheoryMode::CliqueCutoff,
        TheoryMode::CliquePrecise,
        TheoryMode::CliqueBound,
        TheoryMode::CycleOdd,
        TheoryMode::CycleEven,
        TheoryMode::CycleLowerBound,
        TheoryMode::CycleStirling,
        TheoryMode::CycleDirectIntegral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TheoryMode::CliqueRough => "clique-rough",
            TheoryMode::CliqueCutoff => "clique-cutoff",
            TheoryMode::CliquePrecise => "clique-precise",
            TheoryMode::CliqueBound => "clique-bound",
            TheoryMode::CycleOdd => "cycle-odd",
            TheoryMode::CycleEven => "cycle-even",
            TheoryMode::CycleLowerBound => "cycle-lower-bound",
            TheoryMode::CycleStirling => "cycle-stirling",
            TheoryMode::CycleDirectIntegral => "cycle-direct-integral",
        }
    }
}

impl fmt::Display for TheoryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoryMode {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        TheoryMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| crate::Error::Parameter(format!("unknown theory mode {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentRole {
    /// Natural log of a multiplicative factor.
    LogFactor,
    /// Summand of the bracket that multiplies the factors.
    Term,
    /// Auxiliary quantity; not part of the reconstruction.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    pub role: ComponentRole,
    pub value: f64,
}

/// An evaluated asymptotic formula.
///
/// `log_value = sum(log factors) + ln(sum(terms))`, the sum being omitted when
/// there are no terms. `value = exp(log_value)` may overflow to infinity, in
/// which case `log_value` is authoritative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoryValue {
    pub mode: TheoryMode,
    pub value: f64,
    pub log_value: f64,
    pub components: Vec<Component>,
    /// Absolute error of `value` for quadrature-backed modes.
    pub error_estimate: Option<f64>,
    /// Some bracket terms were replaced by upper bounds.
    pub upper_estimate: bool,
    pub converged: bool,
}

impl TheoryValue {
    pub(crate) fn assemble(mode: TheoryMode, components: Vec<Component>) -> Self {
        let log_value = reconstruct(&components, None);
        Self {
            mode,
            value: log_value.exp(),
            log_value,
            components,
            error_estimate: None,
            upper_estimate: false,
            converged: true,
        }
    }

    /// Recomputes `log_value` from the components.
    pub fn reconstructed_log(&self) -> f64 {
        reconstruct(&self.components, None)
    }

    /// `log_value` with the named log factor left out.
    pub fn log_value_without(&self, label: &str) -> f64 {
        reconstruct(&self.components, Some(label))
    }

    pub fn component(&self, label: &str) -> Option<f64> {
        self.components
            .iter()
            .find(|c| c.label == label)
            .map(|c| c.value)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Component> {
        self.components
            .iter()
            .filter(|c| c.role == ComponentRole::Term)
    }
}

fn reconstruct(components: &[Component], skip: Option<&str>) -> f64 {
    let mut log = 0.0;
    let mut sum = 0.0;
    let mut any_term = false;
    for c in components {
        if Some(c.label.as_str()) == skip {
            continue;
        }
        match c.role {
            ComponentRole::LogFactor => log += c.value,
            ComponentRole::Term => {
                sum += c.value;
                any_term = true;
            }
            ComponentRole::Info => {}
        }
    }
    if any_term {
        log + sum.ln()
    } else {
        log
    }
}

pub(crate) fn log_factor(label: impl Into<String>, value: f64) -> Component {
    Component {
        label: label.into(),
        role: ComponentRole::LogFactor,
        value,
    }
}

pub(crate) fn term(label: impl Into<String>, value: f64) -> Component {
    Component {
        label: label.into(),
        role: ComponentRole::Term,
        value,
    }
}

pub(crate) fn info(label: impl Into<String>, value: f64) -> Component {
    Component {
        label: label.into(),
        role: ComponentRole::Info,
        value,
    }
}
