use super::record::ResultRecord;
use crate::asymptotics::{
    clique_cutoff, clique_precise, clique_rough, cycle_even, cycle_lower_bound_even, cycle_odd,
    cycle_stirling_form, TheoryMode, TheoryValue,
};
use crate::error::{param, Result};
use crate::model::{Kernel, SlowlyVarying, Tau};
use crate::motif::MotifKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

pub const CSV_HEADER: &str = "n,k,tau,kernel,kind,reps,mean,median,stderr,theory,theory_mode,ratio";

/// Label of the `log(log gamma_n)` factor in even-cycle theory values.
const EVEN_LOG_FACTOR: &str = "log log gamma_n";

/// Statistics of one `(n, k, tau, kernel, kind)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub k: usize,
    pub tau: f64,
    pub kernel: Kernel,
    pub kind: MotifKind,
    /// Replications with a count (timed-out ones excluded).
    pub reps: usize,
    pub timeouts: usize,
    pub mean: f64,
    pub median: f64,
    /// `sd / sqrt(reps)`; zero with `stderr_defined = false` for a single replication.
    pub stderr: f64,
    pub stderr_defined: bool,
    /// Mean of the per-replication expected counts, when every replication carries one.
    pub oracle_mean: Option<f64>,
    /// Standard error of `count - oracle` across replications.
    pub oracle_gap_stderr: Option<f64>,
    pub theory: Option<TheoryValue>,
    /// `mean / theory`.
    pub ratio: Option<f64>,
    /// Even cycles: `mean` over the theory value with its `log gamma_n` factor removed.
    pub ratio_without_log: Option<f64>,
}

impl SummaryRow {
    pub fn theory_mode(&self) -> Option<TheoryMode> {
        self.theory.as_ref().map(|t| t.mode)
    }

    /// `|mean - oracle_mean| <= z * oracle_gap_stderr`, `None` without oracle values.
    pub fn oracle_within(&self, z: f64) -> Option<bool> {
        Some((self.mean - self.oracle_mean?).abs() <= z * self.oracle_gap_stderr?)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SummaryTable {
    pub rows: Vec<SummaryRow>,
}

impl SummaryTable {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, n: usize, k: usize, kind: MotifKind) -> Option<&SummaryRow> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.k == k && r.kind == kind)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(CSV_HEADER);
        s.push('\n');
        for r in &self.rows {
            let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                r.n,
                r.k,
                r.tau,
                r.kernel,
                r.kind,
                r.reps,
                r.mean,
                r.median,
                r.stderr,
                opt(r.theory.as_ref().map(|t| t.value)),
                r.theory_mode().map(|m| m.name()).unwrap_or_default(),
                opt(r.ratio),
            );
        }
        s
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }
}

/// Per-cell statistics. Cells whose replications all timed out are left out.
pub fn summarize(records: &[ResultRecord]) -> SummaryTable {
    let mut cells: BTreeMap<_, BTreeMap<u64, &ResultRecord>> = BTreeMap::new();
    for r in records {
        cells
            .entry((r.n, r.k, r.tau.to_bits(), r.kernel, r.kind))
            .or_default()
            .entry(r.rep)
            .or_insert(r);
    }
    let rows = cells
        .into_iter()
        .filter_map(|((n, k, tau_bits, kernel, kind), reps)| {
            let done: Vec<&ResultRecord> =
                reps.values().copied().filter(|r| !r.timed_out()).collect();
            if done.is_empty() {
                return None;
            }
            let counts: Vec<f64> = done.iter().filter_map(|r| r.count_f64()).collect();
            let (mean, stderr) = mean_stderr(&counts);
            let oracles: Option<Vec<f64>> = done.iter().map(|r| r.oracle).collect();
            let (oracle_mean, oracle_gap_stderr) = match oracles {
                Some(o) => {
                    let gaps: Vec<f64> = counts.iter().zip(&o).map(|(c, o)| c - o).collect();
                    (Some(mean_stderr(&o).0), Some(mean_stderr(&gaps).1))
                }
                None => (None, None),
            };
            Some(SummaryRow {
                n,
                k,
                tau: f64::from_bits(tau_bits),
                kernel,
                kind,
                reps: counts.len(),
                timeouts: reps.len() - done.len(),
                mean,
                median: median(&counts),
                stderr,
                stderr_defined: counts.len() > 1,
                oracle_mean,
                oracle_gap_stderr,
                theory: None,
                ratio: None,
                ratio_without_log: None,
            })
        })
        .collect();
    SummaryTable { rows }
}

fn mean_stderr(x: &[f64]) -> (f64, f64) {
    let m = x.len() as f64;
    let mean = x.iter().sum::<f64>() / m;
    if x.len() < 2 {
        return (mean, 0.0);
    }
    let var = x.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    (mean, (var / m).sqrt())
}

fn median(x: &[f64]) -> f64 {
    let mut v = x.to_vec();
    v.sort_by(f64::total_cmp);
    let h = v.len() / 2;
    if v.len() % 2 == 1 {
        v[h]
    } else {
        (v[h - 1] + v[h]) / 2.0
    }
}

/// Inputs of the theory evaluations that are not part of a summary row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryOptions {
    pub svf: SlowlyVarying,
    /// Sobol points per `J_m` integral.
    pub qmc_budget: usize,
    /// Relative tolerance of the even-cycle constant.
    pub rel_tol: f64,
}

impl Default for TheoryOptions {
    fn default() -> Self {
        Self {
            svf: SlowlyVarying::default(),
            qmc_budget: 1 << 16,
            rel_tol: 1e-8,
        }
    }
}

/// Default theory per cell: `clique-precise` for `k <= 9`, `clique-cutoff`
/// above, `cycle-odd` / `cycle-even` by parity.
pub fn default_mode(kind: MotifKind, k: usize) -> TheoryMode {
    match kind {
        MotifKind::Clique if k <= 9 => TheoryMode::CliquePrecise,
        MotifKind::Clique => TheoryMode::CliqueCutoff,
        MotifKind::Cycle if k % 2 == 1 => TheoryMode::CycleOdd,
        MotifKind::Cycle => TheoryMode::CycleEven,
    }
}

fn check_mode(mode: TheoryMode, kind: MotifKind, k: usize) -> Result<()> {
    use TheoryMode::*;
    let ok = match mode {
        CliqueRough | CliqueCutoff | CliquePrecise => kind == MotifKind::Clique,
        CycleOdd | CycleStirling => kind == MotifKind::Cycle && k % 2 == 1,
        CycleEven | CycleLowerBound => kind == MotifKind::Cycle && k % 2 == 0,
        CliqueBound | CycleDirectIntegral => {
            return param(format!("theory mode {mode} does not predict a count"));
        }
    };
    if ok {
        Ok(())
    } else {
        param(format!(
            "theory mode {mode} does not apply to {kind} cells with k = {k}"
        ))
    }
}

/// Evaluates the count prediction of `mode` for one cell.
pub fn theory_for(
    mode: TheoryMode,
    kind: MotifKind,
    n: usize,
    k: usize,
    tau: Tau,
    kernel: Kernel,
    opts: &TheoryOptions,
) -> Result<TheoryValue> {
    check_mode(mode, kind, k)?;
    let n = n as u64;
    match mode {
        TheoryMode::CliqueRough => clique_rough(n, k, tau, &opts.svf),
        TheoryMode::CliqueCutoff => clique_cutoff(n, k, tau, &opts.svf),
        TheoryMode::CliquePrecise => clique_precise(n, k, tau, opts.qmc_budget),
        TheoryMode::CycleOdd => cycle_odd(n, k, tau, kernel),
        TheoryMode::CycleStirling => cycle_stirling_form(n, k, tau),
        TheoryMode::CycleEven => cycle_even(n, k, tau, kernel, opts.rel_tol),
        TheoryMode::CycleLowerBound => cycle_lower_bound_even(n, k, tau, &opts.svf),
        TheoryMode::CliqueBound | TheoryMode::CycleDirectIntegral => {
            unreachable!("rejected by check_mode")
        }
    }
}

/// Joins a theory value to each row. `mode = None` picks [`default_mode`] per row;
/// a fixed mode must fit every row's kind and parity.
pub fn compare_to_theory(
    table: &SummaryTable,
    mode: Option<TheoryMode>,
    opts: &TheoryOptions,
) -> Result<SummaryTable> {
    for r in &table.rows {
        check_mode(mode.unwrap_or(default_mode(r.kind, r.k)), r.kind, r.k)?;
    }
    let mut out = table.clone();
    for r in &mut out.rows {
        let m = mode.unwrap_or(default_mode(r.kind, r.k));
        let t = theory_for(m, r.kind, r.n, r.k, Tau::new(r.tau)?, r.kernel, opts)?;
        r.ratio = Some(log_ratio(r.mean, t.log_value));
        r.ratio_without_log = (m == TheoryMode::CycleEven)
            .then(|| log_ratio(r.mean, t.log_value_without(EVEN_LOG_FACTOR)));
        r.theory = Some(t);
    }
    Ok(out)
}

fn log_ratio(mean: f64, log_theory: f64) -> f64 {
    if mean > 0.0 {
        (mean.ln() - log_theory).exp()
    } else {
        0.0
    }
}
