//! Parameter sweeps, cross-checks and CSV/JSON output for `nlinterf-core`.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod record;
pub mod sweep;
pub mod verify;

pub use config::{Axis, Format, Param, Range, Scenario, Spacing, SweepConfig, VariantName};
pub use error::CliError;
pub use record::{write_csv, write_json, write_records, SweepRecord, COLUMNS};
pub use sweep::{points, run_sweep, Detail};
pub use verify::{run_verify, CheckSummary, VerifyReport};
