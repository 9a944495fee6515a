use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sfmotifs::asymptotics::{
    clique_cutoff, clique_precise, clique_rough, clique_series_bound, cycle_even,
    cycle_integral_direct, cycle_lower_bound_even, cycle_odd, cycle_stirling_form, TheoryMode,
};
use sfmotifs::harness::{
    compare_to_theory, load_records, run_experiment, scaling_fit, summarize, ExperimentConfig,
    TheoryOptions,
};
use sfmotifs::model::{
    sample_graph, sample_weights, EdgeSampler, GraphSample, Kernel, ModelParams, SlowlyVarying, Tau,
};
use sfmotifs::motif::{brute_force_motifs, count_cliques_until, count_cycles_until, MotifKind};
use sfmotifs::special::{circulant_build, circulant_det, circulant_reduced_det, kernel_moment};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

#[derive(Parser)]
#[command(
    name = "sfmotifs",
    version,
    about = "Clique and cycle counts in scale-free rank-1 random graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one graph and write it as JSON.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value = "min-one")]
        kernel: Kernel,
        /// `constant:<c>` or `log-power:<a>`
        #[arg(long, default_value = "constant:1")]
        svf: SlowlyVarying,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        rep: u64,
        #[arg(long, value_enum, default_value_t = Sampler::Skip)]
        sampler: Sampler,
        #[arg(long)]
        out: PathBuf,
    },
    /// Count cliques or cycles in a stored graph.
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        motif: MotifKind,
        #[arg(long)]
        k: usize,
        /// Enumerate all k-subsets instead of using the fast counter.
        #[arg(long, conflicts_with = "timeout")]
        brute: bool,
        /// Seconds before giving up.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Evaluate an asymptotic formula.
    Theory {
        #[arg(long, value_enum)]
        family: Family,
        /// rough|cutoff|precise|bound for cliques; odd|even|lower-bound|stirling|direct-integral for cycles
        #[arg(long)]
        mode: String,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        tau: f64,
        #[arg(long, default_value = "min-one")]
        kernel: Kernel,
        #[arg(long, default_value = "constant:1")]
        svf: SlowlyVarying,
        /// Relative tolerance of 1-D quadratures.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Half-width of the box for the direct cycle integral.
        #[arg(long = "A", alias = "a", default_value_t = 8.0)]
        a: f64,
        /// Sobol points per replication for cube integrals.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Print the determinant, spectrum and null space of the cycle circulant.
    Circulant {
        #[arg(long)]
        k: usize,
    },
    /// Run a Monte Carlo experiment from a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the output path of the config.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Summarize records and join theory values into a CSV table.
    Compare {
        #[arg(long)]
        records: PathBuf,
        /// Theory mode applied to every cell; by default chosen per cell.
        #[arg(long)]
        mode: Option<TheoryMode>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "constant:1")]
        svf: SlowlyVarying,
        #[arg(long, default_value_t = 1 << 16)]
        budget: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Also write log-log scaling fits per (k, kind) as JSON.
        #[arg(long)]
        fits: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Clique,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sampler {
    Pairwise,
    Skip,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<sfmotifs::Error> for Failure {
    fn from(e: sfmotifs::Error) -> Self {
        use sfmotifs::Error::*;
        match e {
            Parameter(_) | Domain(_) | Unsupported(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn at_path(path: &Path) -> impl Fn(sfmotifs::Error) -> Failure + '_ {
    move |e| match e {
        sfmotifs::Error::Io(io) => Failure::Runtime(format!("{}: {io}", path.display())),
        other => Failure::from(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::Sample {
            n,
            tau,
            kernel,
            svf,
            seed,
            rep,
            sampler,
            out,
        } => cmd_sample(n, tau, kernel, svf, seed, rep, sampler, &out),
        Command::Count {
            graph,
            motif,
            k,
            brute,
            timeout,
        } => cmd_count(&graph, motif, k, brute, timeout),
        Command::Theory {
            family,
            mode,
            n,
            k,
            tau,
            kernel,
            svf,
            tol,
            a,
            budget,
        } => cmd_theory(family, &mode, n, k, tau, kernel, svf, tol, a, budget),
        Command::Circulant { k } => cmd_circulant(k),
        Command::Experiment { config, output } => cmd_experiment(&config, output),
        Command::Compare {
            records,
            mode,
            out,
            svf,
            budget,
            tol,
            fits,
        } => cmd_compare(
            &records,
            mode,
            out.as_deref(),
            svf,
            budget,
            tol,
            fits.as_deref(),
        ),
    }
}

fn print_json(v: &Value) -> CmdResult {
    println!(
        "{}",
        serde_json::to_string_pretty(v).map_err(|e| Failure::Runtime(e.to_string()))?
    );
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    n: usize,
    tau: f64,
    kernel: Kernel,
    svf: SlowlyVarying,
    seed: u64,
    rep: u64,
    sampler: Sampler,
    out: &Path,
) -> CmdResult {
    let sampler = match sampler {
        Sampler::Pairwise => EdgeSampler::Pairwise,
        Sampler::Skip => EdgeSampler::Skip,
    };
    let params = ModelParams::new(n, tau, kernel, seed)?
        .with_svf(svf)?
        .with_sampler(sampler);
    let w = sample_weights(&params, rep)?;
    let s = sample_graph(&params, &w, rep)?;
    s.write_json(out).map_err(at_path(out))?;
    print_json(&json!({
        "n": n,
        "edges": s.graph.edge_count(),
        "max_degree": s.graph.max_degree(),
        "out": out,
    }))
}

fn cmd_count(
    path: &Path,
    motif: MotifKind,
    k: usize,
    brute: bool,
    timeout: Option<f64>,
) -> CmdResult {
    let g = GraphSample::read_json(path).map_err(at_path(path))?;
    let deadline = match timeout {
        Some(t) if !(t > 0.0) => {
            return Err(Failure::Usage(format!("timeout must be positive, got {t}")))
        }
        Some(t) => Some(Instant::now() + Duration::from_secs_f64(t)),
        None => None,
    };
    let c = if brute {
        brute_force_motifs(&g, k, motif)?
    } else {
        match motif {
            MotifKind::Clique => count_cliques_until(&g, k, deadline)?,
            MotifKind::Cycle => count_cycles_until(&g, k, deadline)?,
        }
    };
    println!("{}", c.count);
    Ok(ExitCode::SUCCESS)
}

fn theory_mode(family: Family, mode: &str) -> Result<TheoryMode, Failure> {
    let prefix = match family {
        Family::Clique => "clique",
        Family::Cycle => "cycle",
    };
    let full = if mode.starts_with(prefix) {
        mode.to_string()
    } else {
        format!("{prefix}-{mode}")
    };
    full.parse::<TheoryMode>()
        .map_err(|_| Failure::Usage(format!("unknown {prefix} mode {mode:?}")))
}

#[allow(clippy::too_many_arguments)]
fn cmd_theory(
    family: Family,
    mode: &str,
    n: Option<u64>,
    k: usize,
    tau: f64,
    kernel: Kernel,
    svf: SlowlyVarying,
    tol: f64,
    a: f64,
    budget: Option<usize>,
) -> CmdResult {
    let mode = theory_mode(family, mode)?;
    let tau = Tau::new(tau)?;
    let need_n = || n.ok_or_else(|| Failure::Usage(format!("--n is required for mode {mode}")));
    let v = match mode {
        TheoryMode::CliqueRough => clique_rough(need_n()?, k, tau, &svf)?,
        TheoryMode::CliqueCutoff => clique_cutoff(need_n()?, k, tau, &svf)?,
        TheoryMode::CliquePrecise => clique_precise(need_n()?, k, tau, budget.unwrap_or(1 << 16))?,
        TheoryMode::CliqueBound => clique_series_bound(k, tau)?,
        TheoryMode::CycleOdd => cycle_odd(need_n()?, k, tau, kernel)?,
        TheoryMode::CycleEven => cycle_even(need_n()?, k, tau, kernel, tol)?,
        TheoryMode::CycleLowerBound => cycle_lower_bound_even(need_n()?, k, tau, &svf)?,
        TheoryMode::CycleStirling => cycle_stirling_form(need_n()?, k, tau)?,
        TheoryMode::CycleDirectIntegral => {
            if !(a > 0.0 && a.is_finite()) {
                return Err(Failure::Usage(format!("--A must be positive, got {a}")));
            }
            let r = cycle_integral_direct(k, a, tau, kernel, budget.unwrap_or(1 << 18))?;
            let limit = (k % 2 == 1).then(|| 0.5 * kernel_moment(tau, kernel).powi(k as i32));
            return print_json(&json!({
                "mode": mode,
                "k": k,
                "A": a,
                "value": r.value,
                "error_estimate": r.error_estimate,
                "evaluations": r.evaluations,
                "converged": r.converged,
                "limit": limit,
            }));
        }
    };
    print_json(&serde_json::to_value(&v).map_err(|e| Failure::Runtime(e.to_string()))?)
}

fn cmd_circulant(k: usize) -> CmdResult {
    let c = circulant_build(k)?;
    let det = circulant_det(k)?;
    let even = k % 2 == 0;
    let reduced = if even {
        Some(circulant_reduced_det(k)?)
    } else {
        None
    };
    let eig: Vec<[f64; 2]> = c.eigenvalues.iter().map(|z| [z.re, z.im]).collect();
    print_json(&json!({
        "k": k,
        "determinant": det,
        "eigenvalues": eig,
        "reduced_determinant": reduced,
        "null_vector": c.null_vector(),
    }))
}

fn read_config(path: &Path) -> Result<ExperimentConfig, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let c: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let inner = e.inner();
        Failure::Usage(format!(
            "{}:{}:{}: field `{}`: {}",
            path.display(),
            inner.line(),
            inner.column(),
            e.path(),
            inner
        ))
    })?;
    c.validate()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(c)
}

fn cmd_experiment(config: &Path, output: Option<PathBuf>) -> CmdResult {
    let mut c = read_config(config)?;
    if output.is_some() {
        c.output = output;
    }
    let Some(out) = c.output.clone() else {
        return Err(Failure::Usage(
            "no output path: set \"output\" in the config or pass --output".into(),
        ));
    };
    let r = run_experiment(&c).map_err(at_path(&out))?;
    print_json(&json!({
        "output": out,
        "new_records": r.records.len(),
        "skipped": r.skipped,
        "timeouts": r.timeouts,
    }))?;
    if r.is_partial() {
        eprintln!(
            "warning: {} replication(s) hit the {} s counting timeout",
            r.timeouts, c.timeout_secs
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_compare(
    records: &Path,
    mode: Option<TheoryMode>,
    out: Option<&Path>,
    svf: SlowlyVarying,
    budget: usize,
    tol: f64,
    fits: Option<&Path>,
) -> CmdResult {
    let recs = load_records(records).map_err(at_path(records))?;
    let table = summarize(&recs);
    let opts = TheoryOptions {
        svf,
        qmc_budget: budget,
        rel_tol: tol,
    };
    let table = compare_to_theory(&table, mode, &opts)?;
    if let Some(path) = fits {
        let mut cells: Vec<(usize, f64, MotifKind)> =
            table.rows.iter().map(|r| (r.k, r.tau, r.kind)).collect();
        cells.sort_by(|a, b| (a.0, a.2).cmp(&(b.0, b.2)).then(a.1.total_cmp(&b.1)));
        cells.dedup();
        let list: Vec<Value> = cells
            .into_iter()
            .filter_map(|(k, tau, kind)| {
                let f = scaling_fit(&table, k, tau, kind).ok()?;
                Some(json!({
                    "k": k, "tau": tau, "kind": kind, "slope": f.slope, "intercept": f.intercept,
                    "slope_stderr": f.slope_stderr, "r_squared": f.r_squared, "points": f.points,
                }))
            })
            .collect();
        let text =
            serde_json::to_string_pretty(&list).map_err(|e| Failure::Runtime(e.to_string()))?;
        std::fs::write(path, text)
            .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?;
    }
    match out {
        Some(p) => table.write_csv(p).map_err(at_path(p))?,
        None => print!("{}", table.to_csv()),
    }
    Ok(ExitCode::SUCCESS)
}
