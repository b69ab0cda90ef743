//! One output row per grid point, and its CSV / JSON encodings.

use std::io::Write;

use serde::Serialize;

use crate::config::{Format, SweepConfig};
use crate::error::CliError;

pub const COLUMNS: [&str; 19] = [
    "scenario",
    "n",
    "v_a",
    "v_b",
    "t_s",
    "t_i",
    "rho",
    "phi",
    "n_s",
    "n_plus",
    "n_minus",
    "variance",
    "sigma2",
    "phi_min",
    "sigma2_min",
    "fisher",
    "fisher_norm",
    "contrast",
    "sentinel",
];

/// Unused columns are `None`. A divergent quantity is left `None` and raises
/// `sentinel`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepRecord {
    pub scenario: &'static str,
    pub n: Option<f64>,
    pub v_a: Option<f64>,
    pub v_b: Option<f64>,
    pub t_s: Option<f64>,
    pub t_i: Option<f64>,
    pub rho: Option<f64>,
    pub phi: Option<f64>,
    pub n_s: Option<f64>,
    pub n_plus: Option<f64>,
    pub n_minus: Option<f64>,
    pub variance: Option<f64>,
    pub sigma2: Option<f64>,
    pub phi_min: Option<f64>,
    pub sigma2_min: Option<f64>,
    pub fisher: Option<f64>,
    pub fisher_norm: Option<f64>,
    pub contrast: Option<f64>,
    pub sentinel: bool,
}

impl SweepRecord {
    pub fn new(scenario: &'static str) -> Self {
        Self {
            scenario,
            ..Self::default()
        }
    }

    /// Stores `value` if finite, otherwise flags the record.
    pub fn finite(&mut self, value: f64) -> Option<f64> {
        if value.is_finite() {
            Some(value)
        } else {
            self.sentinel = true;
            None
        }
    }

    fn numbers(&self) -> [Option<f64>; 17] {
        [
            self.n,
            self.v_a,
            self.v_b,
            self.t_s,
            self.t_i,
            self.rho,
            self.phi,
            self.n_s,
            self.n_plus,
            self.n_minus,
            self.variance,
            self.sigma2,
            self.phi_min,
            self.sigma2_min,
            self.fisher,
            self.fisher_norm,
            self.contrast,
        ]
    }

    pub fn csv_fields(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(COLUMNS.len());
        out.push(self.scenario.to_string());
        out.extend(
            self.numbers()
                .iter()
                .map(|v| v.map(format_number).unwrap_or_default()),
        );
        out.push(self.sentinel.to_string());
        out
    }
}

/// Shortest representation that parses back to the same `f64`.
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

pub fn write_csv<W: Write>(records: &[SweepRecord], writer: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(writer);
    let wrap = |e: csv::Error| CliError::io("writing CSV", e.into());
    w.write_record(COLUMNS).map_err(wrap)?;
    for r in records {
        w.write_record(r.csv_fields()).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io("writing CSV", e))
}

#[derive(Serialize)]
struct Metadata<'a> {
    config: &'a SweepConfig,
    tool_version: &'static str,
    seed: u64,
}

#[derive(Serialize)]
struct Document<'a, T: Serialize> {
    metadata: Metadata<'a>,
    records: &'a [T],
}

/// `{"metadata": {config, tool_version, seed}, "records": [...]}`.
pub fn write_json<W: Write, T: Serialize>(
    config: &SweepConfig,
    records: &[T],
    mut writer: W,
) -> Result<(), CliError> {
    let doc = Document {
        metadata: Metadata {
            config,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed: config.seed,
        },
        records,
    };
    serde_json::to_writer_pretty(&mut writer, &doc)
        .map_err(|e| CliError::io("writing JSON", e.into()))?;
    writer
        .write_all(b"\n")
        .map_err(|e| CliError::io("writing JSON", e))
}

pub fn write_records<W: Write>(
    config: &SweepConfig,
    records: &[SweepRecord],
    writer: W,
) -> Result<(), CliError> {
    match config.format {
        Format::Csv => write_csv(records, writer),
        Format::Json => write_json(config, records, writer),
    }
}
