use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nlinterf::config::DEFAULT_COUNT;
use nlinterf::{
    points, run_sweep, run_verify, write_json, write_records, CliError, Detail, Format, Scenario,
    SweepConfig, VariantName, VerifyReport,
};

/// Phase sensitivity of lossy nonlinear (SU(1,1)) interferometers.
#[derive(Parser)]
#[command(name = "nlinterf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Photon numbers and variances at the configured points.
    Fringe(Common),
    /// Fringe plus phase uncertainty, optimal phase and Fisher information.
    Sensitivity(Common),
    /// Run a scenario grid.
    Sweep(Common),
    /// Cross-check closed forms against the moment engine on random specs.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Random specs per check class.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Args)]
struct Common {
    /// JSON sweep configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    /// hybrid-map, fisher-surface, fisher-vs-n, scaling, compare or custom.
    #[arg(long)]
    scenario: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// yurke, mandel or hybrid (custom grids, fringe, sensitivity).
    #[arg(long)]
    variant: Option<String>,
    /// Fixed parameter override, `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Common {
    fn config(&self) -> Result<SweepConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        if let Some(s) = &self.scenario {
            config.scenario = s.parse::<Scenario>()?;
        }
        if let Some(out) = &self.out {
            config.output = Some(out.clone());
        }
        if let Some(f) = &self.format {
            config.format = f.parse::<Format>()?;
        }
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        if let Some(v) = &self.variant {
            config.variant = Some(v.parse::<VariantName>()?);
        }
        for assignment in &self.set {
            config.set(assignment)?;
        }
        Ok(config)
    }
}

fn emit(
    path: Option<&Path>,
    write: impl FnOnce(&mut dyn Write) -> Result<(), CliError>,
) -> Result<(), CliError> {
    match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::io(format!("creating {}", path.display()), e))?;
            let mut w = BufWriter::new(file);
            write(&mut w)?;
            w.flush()
                .map_err(|e| CliError::io(format!("writing {}", path.display()), e))
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w)
        }
    }
}

fn write_report(
    config: &SweepConfig,
    report: &VerifyReport,
    w: &mut dyn Write,
) -> Result<(), CliError> {
    match config.format {
        Format::Json => write_json(config, &report.checks, w),
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            let wrap = |e: csv::Error| CliError::io("writing CSV", e.into());
            csv.write_record(["class", "samples", "max_deviation", "tolerance", "passed"])
                .map_err(wrap)?;
            for c in &report.checks {
                csv.write_record([
                    c.class.to_string(),
                    c.samples.to_string(),
                    nlinterf::record::format_number(c.max_deviation),
                    nlinterf::record::format_number(c.tolerance),
                    c.passed.to_string(),
                ])
                .map_err(wrap)?;
            }
            csv.flush().map_err(|e| CliError::io("writing CSV", e))
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Fringe(common) => {
            let mut config = common.config()?;
            config.scenario = Scenario::Custom;
            let records = points(&config, Detail::Fringe, "fringe")?;
            emit(config.output.as_deref(), |w| {
                write_records(&config, &records, w)
            })
        }
        Command::Sensitivity(common) => {
            let mut config = common.config()?;
            config.scenario = Scenario::Custom;
            let records = points(&config, Detail::Full, "sensitivity")?;
            emit(config.output.as_deref(), |w| {
                write_records(&config, &records, w)
            })
        }
        Command::Sweep(common) => {
            let config = common.config()?;
            let records = run_sweep(&config)?;
            emit(config.output.as_deref(), |w| {
                write_records(&config, &records, w)
            })
        }
        Command::Verify { common, count } => {
            let mut config = common.config()?;
            if count.is_some() {
                config.count = count;
            }
            let count = config.count.unwrap_or(DEFAULT_COUNT);
            let report = run_verify(config.seed, count)?;
            emit(config.output.as_deref(), |w| {
                write_report(&config, &report, w)
            })?;
            for c in &report.checks {
                eprintln!(
                    "{:<22} {:>6} samples  max deviation {:.3e}  (tol {:.0e})  {}",
                    c.class,
                    c.samples,
                    c.max_deviation,
                    c.tolerance,
                    if c.passed { "ok" } else { "FAIL" }
                );
            }
            if report.passed {
                Ok(())
            } else {
                let failed: Vec<&str> = report.failures().map(|c| c.class).collect();
                Err(CliError::Verification(format!(
                    "{} (seed {})",
                    failed.join(", "),
                    config.seed
                )))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
