//! Sweep configuration: JSON document, scenario defaults and validation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    HybridMap,
    FisherSurface,
    FisherVsN,
    Scaling,
    Compare,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 6] = [
        Scenario::HybridMap,
        Scenario::FisherSurface,
        Scenario::FisherVsN,
        Scenario::Scaling,
        Scenario::Compare,
        Scenario::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::HybridMap => "hybrid-map",
            Scenario::FisherSurface => "fisher-surface",
            Scenario::FisherVsN => "fisher-vs-n",
            Scenario::Scaling => "scaling",
            Scenario::Compare => "compare",
            Scenario::Custom => "custom",
        }
    }

    /// Parameters a config may set for this scenario.
    pub fn parameters(self) -> &'static [Param] {
        match self {
            Scenario::HybridMap => &[Param::N, Param::Rho, Param::Phi],
            Scenario::FisherSurface | Scenario::Scaling | Scenario::Compare => {
                &[Param::N, Param::TS, Param::TI]
            }
            Scenario::FisherVsN => &[Param::N, Param::TS, Param::TI, Param::Phi],
            Scenario::Custom => &Param::ALL,
        }
    }

    fn default_axes(self) -> BTreeMap<Param, Axis> {
        let n_log = |count| {
            Axis::Range(Range {
                min: 0.1,
                max: 1e4,
                count,
                spacing: Spacing::Log,
            })
        };
        let mut axes = BTreeMap::new();
        match self {
            Scenario::HybridMap => {
                axes.insert(
                    Param::Rho,
                    Axis::Range(Range {
                        min: 0.0,
                        max: 1.0,
                        count: 101,
                        spacing: Spacing::Linear,
                    }),
                );
                axes.insert(
                    Param::Phi,
                    Axis::Range(Range {
                        min: 0.0,
                        max: 2.0 * PI,
                        count: 361,
                        spacing: Spacing::Linear,
                    }),
                );
            }
            Scenario::FisherSurface => {
                axes.insert(Param::N, n_log(60));
                axes.insert(
                    Param::TI,
                    Axis::Range(Range {
                        min: 0.05,
                        max: 0.95,
                        count: 91,
                        spacing: Spacing::Linear,
                    }),
                );
            }
            Scenario::FisherVsN => {
                axes.insert(Param::N, n_log(120));
                axes.insert(Param::TI, Axis::List(vec![0.8, 0.7]));
                axes.insert(Param::Phi, Axis::List(vec![0.9 * PI, 0.95 * PI, 0.97 * PI]));
            }
            Scenario::Scaling => {
                axes.insert(Param::N, n_log(120));
                axes.insert(Param::TI, Axis::List(vec![0.9, 0.85]));
            }
            Scenario::Compare => {
                axes.insert(Param::N, n_log(120));
                axes.insert(Param::TI, Axis::List(vec![0.7, 0.8]));
            }
            Scenario::Custom => {}
        }
        axes
    }

    fn default_fixed(self) -> BTreeMap<Param, f64> {
        let pairs: &[(Param, f64)] = match self {
            Scenario::HybridMap => &[(Param::N, 10.0)],
            Scenario::FisherSurface | Scenario::FisherVsN | Scenario::Compare => {
                &[(Param::TS, 0.8)]
            }
            Scenario::Scaling => &[(Param::TS, 0.9)],
            Scenario::Custom => &[(Param::TS, 1.0), (Param::TI, 1.0), (Param::Rho, 0.0)],
        };
        pairs.iter().copied().collect()
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| CliError::Validation(format!("unknown scenario `{s}`")))
    }
}

/// A grid or fixed parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    #[serde(rename = "n")]
    N,
    #[serde(rename = "v_a")]
    VA,
    #[serde(rename = "v_b")]
    VB,
    #[serde(rename = "t_s")]
    TS,
    #[serde(rename = "t_i")]
    TI,
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "phi")]
    Phi,
}

impl Param {
    /// Also the nesting order of a custom grid, outermost first.
    pub const ALL: [Param; 7] = [
        Param::N,
        Param::VA,
        Param::VB,
        Param::TS,
        Param::TI,
        Param::Rho,
        Param::Phi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::N => "n",
            Param::VA => "v_a",
            Param::VB => "v_b",
            Param::TS => "t_s",
            Param::TI => "t_i",
            Param::Rho => "rho",
            Param::Phi => "phi",
        }
    }

    fn check(self, value: f64) -> Result<(), String> {
        if !value.is_finite() {
            return Err(format!("{} must be finite, got {value}", self.name()));
        }
        let ok = match self {
            Param::N | Param::VA | Param::VB => value >= 0.0,
            Param::TS | Param::TI | Param::Rho => (0.0..=1.0).contains(&value),
            Param::Phi => true,
        };
        if ok {
            Ok(())
        } else {
            let range = if matches!(self, Param::N | Param::VA | Param::VB) {
                ">= 0"
            } else {
                "in [0, 1]"
            };
            Err(format!("{} must be {range}, got {value}", self.name()))
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        Param::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| CliError::Validation(format!("unknown parameter `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(
    untagged,
    expecting = "a list of numbers or a {min, max, count, spacing} range"
)]
pub enum Axis {
    List(Vec<f64>),
    Range(Range),
}

impl Axis {
    /// Grid values; both range endpoints are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        match self {
            Axis::List(v) => v.clone(),
            Axis::Range(r) if r.count == 1 => vec![r.min],
            Axis::Range(r) => {
                let last = r.count - 1;
                (0..r.count)
                    .map(|k| {
                        if k == 0 {
                            return r.min;
                        }
                        if k == last {
                            return r.max;
                        }
                        let t = k as f64 / last as f64;
                        match r.spacing {
                            Spacing::Linear => r.min + (r.max - r.min) * t,
                            Spacing::Log => (r.min.ln() + (r.max.ln() - r.min.ln()) * t).exp(),
                        }
                    })
                    .collect()
            }
        }
    }

    fn validate(&self, param: Param) -> Result<(), String> {
        match self {
            Axis::List(v) if v.is_empty() => Err(format!("axis {param} is empty")),
            Axis::List(v) => v.iter().try_for_each(|&x| param.check(x)),
            Axis::Range(r) => {
                if r.count == 0 {
                    return Err(format!("axis {param}: count must be >= 1"));
                }
                if r.min > r.max {
                    return Err(format!("axis {param}: min {} exceeds max {}", r.min, r.max));
                }
                if r.spacing == Spacing::Log && !(r.min > 0.0) {
                    return Err(format!(
                        "axis {param}: log spacing needs min > 0, got {}",
                        r.min
                    ));
                }
                param.check(r.min)?;
                param.check(r.max)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(CliError::Validation(format!(
                "unknown format `{s}` (expected csv or json)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Yurke,
    Mandel,
    Hybrid,
}

impl FromStr for VariantName {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "yurke" => Ok(VariantName::Yurke),
            "mandel" => Ok(VariantName::Mandel),
            "hybrid" => Ok(VariantName::Hybrid),
            _ => Err(CliError::Validation(format!("unknown variant `{s}`"))),
        }
    }
}

pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_COUNT: usize = 1000;

fn default_seed() -> u64 {
    DEFAULT_SEED
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default = "default_scenario")]
    pub scenario: Scenario,
    #[serde(default)]
    pub axes: BTreeMap<Param, Axis>,
    #[serde(default)]
    pub fixed: BTreeMap<Param, f64>,
    /// Destination only; left out of output metadata so reruns to different
    /// paths stay byte-identical.
    #[serde(default, skip_serializing)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    #[serde(default = "default_seed")]
    pub seed: u64,
    /// Topology of `custom` grids and of the `fringe`/`sensitivity` commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<VariantName>,
    /// Random specs per check class for `verify`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
}

fn default_scenario() -> Scenario {
    Scenario::Custom
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self::for_scenario(Scenario::Custom)
    }
}

impl SweepConfig {
    pub fn for_scenario(scenario: Scenario) -> Self {
        Self {
            scenario,
            axes: BTreeMap::new(),
            fixed: BTreeMap::new(),
            output: None,
            format: Format::Csv,
            seed: DEFAULT_SEED,
            variant: None,
            count: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::io(format!("reading {}", path.display()), e))?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::Validation(msg) => CliError::Validation(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Applies a `key=value` override to the fixed parameters.
    pub fn set(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| {
            CliError::Validation(format!("--set expects key=value, got `{assignment}`"))
        })?;
        let param: Param = key.trim().parse()?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Validation(format!("--set {key}: `{value}` is not a number")))?;
        self.axes.remove(&param);
        self.fixed.insert(param, value);
        Ok(())
    }

    /// Scenario defaults overlaid with the configured axes and fixed values.
    pub fn resolved(&self) -> Result<Resolved, CliError> {
        let invalid = |msg: String| CliError::Validation(format!("{}: {msg}", self.scenario));
        let allowed = self.scenario.parameters();
        for p in self.axes.keys().chain(self.fixed.keys()) {
            if !allowed.contains(p) {
                return Err(invalid(format!(
                    "parameter {p} is not used by this scenario"
                )));
            }
        }
        for p in self.axes.keys() {
            if self.fixed.contains_key(p) {
                return Err(invalid(format!(
                    "{p} is both a grid axis and a fixed parameter"
                )));
            }
        }

        let mut axes = self.scenario.default_axes();
        let mut fixed = self.scenario.default_fixed();
        for (p, axis) in &self.axes {
            axis.validate(*p).map_err(invalid)?;
            fixed.remove(p);
            axes.insert(*p, axis.clone());
        }
        for (p, &v) in &self.fixed {
            p.check(v).map_err(invalid)?;
            axes.remove(p);
            fixed.insert(*p, v);
        }
        if self.count == Some(0) {
            return Err(CliError::Validation("count must be >= 1".into()));
        }
        Ok(Resolved {
            axes: axes.into_iter().map(|(p, a)| (p, a.values())).collect(),
            fixed,
        })
    }
}

/// Concrete grid values and fixed parameters of a validated config.
#[derive(Debug, Clone, PartialEq)]
pub struct Resolved {
    pub axes: BTreeMap<Param, Vec<f64>>,
    pub fixed: BTreeMap<Param, f64>,
}

impl Resolved {
    /// Values of `p`: the grid axis if there is one, else the fixed value as a
    /// one-point axis, else `None`.
    pub fn values(&self, p: Param) -> Option<Vec<f64>> {
        self.axes
            .get(&p)
            .cloned()
            .or_else(|| self.fixed.get(&p).map(|&v| vec![v]))
    }

    pub fn require(&self, p: Param, scenario: Scenario) -> Result<Vec<f64>, CliError> {
        self.values(p)
            .ok_or_else(|| CliError::Validation(format!("{scenario}: parameter {p} must be given")))
    }
}
