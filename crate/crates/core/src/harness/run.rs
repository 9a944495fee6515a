use super::config::ExperimentConfig;
use super::record::{load_records, RecordKey, ResultRecord};
use crate::error::{Error, Result};
use crate::model::rng::FIXED_WEIGHTS_REPLICATION;
use crate::model::{
    probability_matrix_with_limit, sample_graph, sample_weights, ModelParams, ProbabilityMatrix,
    WeightVector,
};
use crate::motif::{
    count_cliques_until, count_cycles_until, expected_cliques_given_weights,
    expected_cycles_given_weights, MotifCount, MotifKind,
};
use rayon::prelude::*;
use std::collections::HashSet;
use std::fs::OpenOptions;
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Outcome of [`run_experiment`].
#[derive(Debug, Clone, Default)]
pub struct RunReport {
    /// Records produced by this run, ordered by `(n, rep, k, kind)`.
    pub records: Vec<ResultRecord>,
    /// `(cell, replication)` pairs already present in the output file.
    pub skipped: usize,
    pub timeouts: usize,
}

impl RunReport {
    /// Some replication hit the counting timeout.
    pub fn is_partial(&self) -> bool {
        self.timeouts > 0
    }
}

struct Job {
    n: usize,
    rep: u64,
    cells: Vec<(usize, MotifKind)>,
}

struct FixedCell {
    weights: WeightVector,
    oracle: Vec<((usize, MotifKind), Option<f64>)>,
}

/// Runs every pending `(cell, replication)` of `config`.
///
/// With an output path, records already in the file are skipped and new ones
/// are appended as each replication finishes, so an interrupted run can be
/// restarted with the same config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<RunReport> {
    config.validate()?;
    let mut done = HashSet::new();
    let writer = match &config.output {
        Some(path) => {
            if path.exists() {
                drop_partial_last_line(path)?;
                done.extend(load_records(path)?.iter().map(ResultRecord::key));
            }
            let f = OpenOptions::new().create(true).append(true).open(path)?;
            Some(Mutex::new(BufWriter::new(f)))
        }
        None => None,
    };

    let ks = config.k_grid();
    let kinds = config.kind_list();
    let mut jobs = Vec::new();
    let mut skipped = 0;
    let mut params = Vec::new();
    for n in config.n_grid() {
        let p = config.model_params(n)?;
        for rep in 0..config.replications {
            let mut cells = Vec::new();
            for &k in &ks {
                for &kind in &kinds {
                    let key = RecordKey {
                        n,
                        k,
                        tau_bits: config.tau.to_bits(),
                        kernel: config.kernel,
                        kind,
                        rep,
                        seed: p.seed,
                    };
                    if done.contains(&key) {
                        skipped += 1;
                    } else {
                        cells.push((k, kind));
                    }
                }
            }
            if !cells.is_empty() {
                jobs.push(Job { n, rep, cells });
            }
        }
        params.push(p);
    }

    let fixed: Vec<Option<FixedCell>> = if config.fixed_weights {
        params
            .par_iter()
            .map(|p| {
                if !jobs.iter().any(|j| j.n == p.n) {
                    return Ok(None);
                }
                let weights = sample_weights(p, FIXED_WEIGHTS_REPLICATION)?;
                let oracle = oracle_values(config, p, &weights, &cartesian(&ks, &kinds))?;
                Ok(Some(FixedCell { weights, oracle }))
            })
            .collect::<Result<_>>()?
    } else {
        params.iter().map(|_| None).collect()
    };

    let timeout = Duration::from_secs_f64(config.timeout_secs);
    let batches = jobs
        .par_iter()
        .map(|job| {
            let idx = params
                .iter()
                .position(|p| p.n == job.n)
                .expect("params for every n");
            let recs = run_job(config, &params[idx], fixed[idx].as_ref(), job, timeout)?;
            if let Some(w) = &writer {
                let mut w = w.lock().unwrap_or_else(|e| e.into_inner());
                for r in &recs {
                    writeln!(w, "{}", r.to_json_line()?)?;
                }
                w.flush()?;
            }
            Ok(recs)
        })
        .collect::<Result<Vec<_>>>()?;

    let records: Vec<ResultRecord> = batches.into_iter().flatten().collect();
    let timeouts = records.iter().filter(|r| r.timed_out()).count();
    Ok(RunReport {
        records,
        skipped,
        timeouts,
    })
}

fn cartesian(ks: &[usize], kinds: &[MotifKind]) -> Vec<(usize, MotifKind)> {
    ks.iter()
        .flat_map(|&k| kinds.iter().map(move |&kind| (k, kind)))
        .collect()
}

fn run_job(
    config: &ExperimentConfig,
    params: &ModelParams,
    fixed: Option<&FixedCell>,
    job: &Job,
    timeout: Duration,
) -> Result<Vec<ResultRecord>> {
    let owned;
    let weights = match fixed {
        Some(f) => &f.weights,
        None => {
            owned = sample_weights(params, job.rep)?;
            &owned
        }
    };
    let sample = sample_graph(params, weights, job.rep)?;
    let oracle = match fixed {
        Some(f) => f.oracle.clone(),
        None => oracle_values(config, params, weights, &job.cells)?,
    };
    let mut out = Vec::with_capacity(job.cells.len());
    for &(k, kind) in &job.cells {
        let start = Instant::now();
        let deadline = Some(start + timeout);
        let counted = match kind {
            MotifKind::Clique => count_cliques_until(&sample.graph, k, deadline),
            MotifKind::Cycle => count_cycles_until(&sample.graph, k, deadline),
        };
        let count = match counted {
            Ok(MotifCount { count, .. }) => Some(count),
            Err(Error::Timeout(_)) => None,
            Err(e) => return Err(e),
        };
        out.push(ResultRecord {
            n: job.n,
            k,
            tau: config.tau,
            kernel: config.kernel,
            kind,
            rep: job.rep,
            count,
            oracle: oracle
                .iter()
                .find(|(c, _)| *c == (k, kind))
                .and_then(|(_, v)| *v),
            seed: params.seed,
            ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
    Ok(out)
}

/// Expected counts given the weights, `None` where the exact sum is over budget.
fn oracle_values(
    config: &ExperimentConfig,
    params: &ModelParams,
    weights: &WeightVector,
    cells: &[(usize, MotifKind)],
) -> Result<Vec<((usize, MotifKind), Option<f64>)>> {
    if !config.oracle || params.n > config.oracle_limit {
        return Ok(cells.iter().map(|&c| (c, None)).collect());
    }
    let pm: ProbabilityMatrix = probability_matrix_with_limit(
        weights,
        params.n,
        params.tau,
        params.kernel,
        config.oracle_limit,
    )?;
    cells
        .iter()
        .map(|&(k, kind)| {
            let v = match kind {
                MotifKind::Clique => expected_cliques_given_weights(&pm, k),
                MotifKind::Cycle => expected_cycles_given_weights(&pm, k),
            };
            match v {
                Ok(v) => Ok(((k, kind), Some(v))),
                Err(Error::Resource(_)) => Ok(((k, kind), None)),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// Truncates a record file after its last newline, discarding a line cut short by an interrupted write.
fn drop_partial_last_line(path: &Path) -> Result<()> {
    let mut f = OpenOptions::new().read(true).write(true).open(path)?;
    let mut bytes = Vec::new();
    f.read_to_end(&mut bytes)?;
    if bytes.last().is_some_and(|&b| b != b'\n') {
        let keep = bytes.iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1);
        f.set_len(keep as u64)?;
        f.seek(SeekFrom::End(0))?;
    }
    Ok(())
}
