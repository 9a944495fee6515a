//! Monte Carlo experiments: config, per-replication records, summaries and scaling fits.

mod config;
mod fit;
mod record;
mod run;
mod summary;

pub use config::{ExperimentConfig, DEFAULT_TIMEOUT_SECS};
pub use fit::{ols, scaling_fit, ScalingFit};
pub use record::{load_records, read_records, write_records, RecordKey, ResultRecord};
pub use run::{run_experiment, RunReport};
pub use summary::{
    compare_to_theory, default_mode, summarize, theory_for, SummaryRow, SummaryTable,
    TheoryOptions, CSV_HEADER,
};
