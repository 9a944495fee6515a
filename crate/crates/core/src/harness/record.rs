use crate::error::{Error, Result};
use crate::model::Kernel;
use crate::motif::MotifKind;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use std::io::{BufRead, Write};
use std::path::Path;

/// One replication of one cell.
///
/// `count` is `None` when counting hit the timeout. `seed` is the model seed
/// for this `n` (see [`ExperimentConfig::cell_seed`](super::ExperimentConfig::cell_seed)),
/// which together with `rep` identifies the random streams used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub n: usize,
    pub k: usize,
    pub tau: f64,
    pub kernel: Kernel,
    pub kind: MotifKind,
    pub rep: u64,
    #[serde(with = "count_repr")]
    pub count: Option<BigUint>,
    pub oracle: Option<f64>,
    pub seed: u64,
    pub ms: f64,
}

/// Identifies a `(cell, replication)` pair for resumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RecordKey {
    pub n: usize,
    pub k: usize,
    pub tau_bits: u64,
    pub kernel: Kernel,
    pub kind: MotifKind,
    pub rep: u64,
    pub seed: u64,
}

impl ResultRecord {
    pub fn timed_out(&self) -> bool {
        self.count.is_none()
    }

    pub fn count_f64(&self) -> Option<f64> {
        self.count
            .as_ref()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
    }

    pub fn key(&self) -> RecordKey {
        RecordKey {
            n: self.n,
            k: self.k,
            tau_bits: self.tau.to_bits(),
            kernel: self.kernel,
            kind: self.kind,
            rep: self.rep,
            seed: self.seed,
        }
    }

    /// Equality ignoring the wall-clock field.
    pub fn same_outcome(&self, other: &Self) -> bool {
        Self {
            ms: 0.0,
            ..self.clone()
        } == Self {
            ms: 0.0,
            ..other.clone()
        }
    }

    pub fn to_json_line(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Counts are written as JSON integers when they fit in `u64`, as decimal strings otherwise.
mod count_repr {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(u64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(
        c: &Option<BigUint>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match c {
            None => s.serialize_none(),
            Some(c) => match c.to_u64() {
                Some(v) => s.serialize_u64(v),
                None => s.serialize_str(&c.to_string()),
            },
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigUint>, D::Error> {
        match Option::<Repr>::deserialize(d)? {
            None => Ok(None),
            Some(Repr::Int(v)) => Ok(Some(BigUint::from(v))),
            Some(Repr::Text(t)) => t.parse::<BigUint>().map(Some).map_err(|_| {
                serde::de::Error::custom(format!("count {t:?} is not a non-negative integer"))
            }),
        }
    }
}

/// Parses a JSON-lines record stream. Blank lines are skipped.
pub fn read_records(r: impl BufRead) -> Result<Vec<ResultRecord>> {
    let mut out = Vec::new();
    for (i, line) in r.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line)
            .map_err(|e| Error::Parameter(format!("record line {}: {e}", i + 1)))?;
        out.push(rec);
    }
    Ok(out)
}

pub fn load_records(path: &Path) -> Result<Vec<ResultRecord>> {
    let f = std::fs::File::open(path)?;
    read_records(std::io::BufReader::new(f))
}

pub fn write_records(mut w: impl Write, records: &[ResultRecord]) -> Result<()> {
    for r in records {
        writeln!(w, "{}", r.to_json_line()?)?;
    }
    w.flush()?;
    Ok(())
}
