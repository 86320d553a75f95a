use std::io::Write;

use entropic::{BipartitionShape, InequalityReport};
use serde::Serialize;

use crate::CliError;

/// Echo of the run parameters that determine the output.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    pub dim: usize,
    /// Dimension after zero padding; equals `dim` when no padding was needed.
    pub padded_dim: usize,
    pub shapes: Vec<BipartitionShape>,
    pub q_values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub checks_run: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

/// Per-check reports plus their aggregate. Wall time is kept out of the
/// serialized form so repeated runs stay byte-identical.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: RunConfig,
    pub reports: Vec<InequalityReport>,
    pub aggregate: Aggregate,
    #[serde(skip)]
    pub wall_time: std::time::Duration,
}

impl SuiteReport {
    pub fn new(config: RunConfig, reports: Vec<InequalityReport>, wall_time: std::time::Duration) -> Self {
        let aggregate = Aggregate {
            checks_run: reports.len(),
            violations: reports.iter().filter(|r| !r.satisfied).count(),
            worst_margin: reports.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min),
        };
        Self {
            config,
            reports,
            aggregate,
            wall_time,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'static str,
    lhs: f64,
    rhs: f64,
    margin: f64,
    q: f64,
    shape: String,
    satisfied: bool,
    seed: Option<u64>,
    unitary_label: Option<&'a str>,
}

/// One row per check, columns as in the JSON report.
pub fn write_reports_csv<W: Write>(reports: &[InequalityReport], out: W) -> Result<(), CliError> {
    let mut writer = csv::Writer::from_writer(out);
    for r in reports {
        writer.serialize(CsvRow {
            name: r.name.as_str(),
            lhs: r.lhs,
            rhs: r.rhs,
            margin: r.margin,
            q: r.q,
            shape: r.shape.to_string(),
            satisfied: r.satisfied,
            seed: r.seed,
            unitary_label: r.unitary_label.as_deref(),
        })?;
    }
    writer.flush()?;
    Ok(())
}
