//! Run configuration: a TOML document with one section per model and an
//! optional `[sweep]` section listing parameter grids.

use std::path::{Path, PathBuf};

use nmqed::cavity::InitialStateKind;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Upper bound on `t_max / dt`.
pub const MAX_SAMPLES: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    TwoAtom,
    CavityArray,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputKind {
    Population,
    GammaCurve,
    FieldMap,
    PhotonMap,
    Rates,
    Fits,
}

impl OutputKind {
    pub fn name(self) -> &'static str {
        match self {
            OutputKind::Population => "population",
            OutputKind::GammaCurve => "gamma_curve",
            OutputKind::FieldMap => "field_map",
            OutputKind::PhotonMap => "photon_map",
            OutputKind::Rates => "rates",
            OutputKind::Fits => "fits",
        }
    }

    fn supported_by(self, model: Model) -> bool {
        match self {
            OutputKind::FieldMap | OutputKind::Rates => model == Model::TwoAtom,
            OutputKind::PhotonMap => model == Model::CavityArray,
            _ => true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Ndjson,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Ndjson => "ndjson",
        }
    }
}

fn default_gamma0() -> f64 {
    1.0
}

/// Continuum two-atom parameters. `beta = 1` selects the lossless mode,
/// which requires `gamma0 = 0` and an explicit `gamma1d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoAtomSection {
    #[serde(default = "default_gamma0")]
    pub gamma0: f64,
    pub beta: f64,
    pub retardation: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma1d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<f64>,
}

fn default_hopping() -> f64 {
    1.0
}
fn default_mirror() -> f64 {
    2.0
}
fn one() -> usize {
    1
}

/// Cavity-array parameters; the chain length and atom sites are derived
/// from `separation` and the run length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CavitySection {
    #[serde(default = "default_hopping")]
    pub hopping: f64,
    pub separation: usize,
    pub g_a: f64,
    #[serde(default = "one")]
    pub n_a: usize,
    /// `√N_B·g_B`.
    #[serde(default = "default_mirror")]
    pub mirror: f64,
    #[serde(default = "one")]
    pub n_b: usize,
    /// Defaults to `0.05·J`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<f64>,
}

/// Parameter grids. Points are the Cartesian product taken in field order.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retardation: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma0: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_a: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separation: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_a: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<Vec<InitialStateKind>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: Model,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub outputs: Vec<OutputKind>,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Early fit window in units of the retardation time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub early_window: Option<[f64; 2]>,
    /// Late fit window in units of the retardation time.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub late_window: Option<[f64; 2]>,
    /// Free-text notes copied into the manifest.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<InitialStateKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub two_atom: Option<TwoAtomSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cavity_array: Option<CavitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSection>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("run config serialises to TOML")
    }

    /// Structural checks that do not need the model crate.
    pub fn validate(&self) -> CliResult<()> {
        match self.model {
            Model::TwoAtom => {
                if self.two_atom.is_none() {
                    return Err(CliError::config("model two_atom needs a [two_atom] section"));
                }
                if self.cavity_array.is_some() {
                    return Err(CliError::config("[cavity_array] section given for model two_atom"));
                }
                if self.init.is_some() {
                    return Err(CliError::config("init is fixed to the dark state for model two_atom"));
                }
            }
            Model::CavityArray => {
                if self.cavity_array.is_none() {
                    return Err(CliError::config("model cavity_array needs a [cavity_array] section"));
                }
                if self.two_atom.is_some() {
                    return Err(CliError::config("[two_atom] section given for model cavity_array"));
                }
            }
        }
        if self.outputs.is_empty() {
            return Err(CliError::config("outputs must list at least one output"));
        }
        for o in &self.outputs {
            if !o.supported_by(self.model) {
                return Err(CliError::config(format!("output {} is not available for this model", o.name())));
            }
        }
        for (name, w) in [("early_window", self.early_window), ("late_window", self.late_window)] {
            if let Some([a, b]) = w {
                if !(a.is_finite() && b.is_finite() && 0.0 <= a && a < b) {
                    return Err(CliError::config(format!("{name} must satisfy 0 <= start < end, got [{a}, {b}]")));
                }
            }
        }
        for (name, v) in [("t_max", self.t_max), ("dt", self.dt)] {
            if let Some(v) = v {
                if !(v.is_finite() && v > 0.0) {
                    return Err(CliError::config(format!("{name} must be positive, got {v}")));
                }
            }
        }
        if let Some(s) = &self.sweep {
            let two_atom_only = s.beta.is_some() || s.retardation.is_some();
            let cavity_only = s.g_a.is_some() || s.separation.is_some() || s.n_a.is_some() || s.init.is_some();
            if (self.model == Model::TwoAtom && cavity_only) || (self.model == Model::CavityArray && two_atom_only) {
                return Err(CliError::config("sweep lists a parameter that this model does not have"));
            }
            if s.axes().contains(&0) {
                return Err(CliError::config("sweep grids must not be empty"));
            }
        }
        Ok(())
    }
}

impl SweepSection {
    /// Sizes of the listed grids, in product order.
    fn axes(&self) -> Vec<usize> {
        let mut v = Vec::new();
        macro_rules! push {
            ($($f:ident),*) => { $(if let Some(x) = &self.$f { v.push(x.len()); })* };
        }
        push!(beta, retardation, gamma0, g_a, separation, n_a, init);
        v
    }

    pub fn is_empty(&self) -> bool {
        self.axes().is_empty()
    }
}

/// One resolved grid point: the config with every swept value applied and
/// no `[sweep]` section, plus a file-name label.
#[derive(Debug, Clone)]
pub struct Point {
    pub label: String,
    pub config: RunConfig,
}

fn number_label(v: f64) -> String {
    format!("{v}")
}

/// Expand `cfg` into grid points. A config without `[sweep]` is one point.
pub fn expand(cfg: &RunConfig) -> Vec<Point> {
    let mut base = cfg.clone();
    let sweep = base.sweep.take().unwrap_or_default();
    let mut points = vec![Point { label: String::new(), config: base }];

    fn extend<T: Clone>(
        points: Vec<Point>,
        values: &Option<Vec<T>>,
        tag: &str,
        show: impl Fn(&T) -> String,
        apply: impl Fn(&mut RunConfig, &T),
    ) -> Vec<Point> {
        let Some(values) = values else { return points };
        let mut out = Vec::with_capacity(points.len() * values.len());
        for p in &points {
            for v in values {
                let mut config = p.config.clone();
                apply(&mut config, v);
                let piece = format!("{tag}{}", show(v));
                let label = if p.label.is_empty() { piece } else { format!("{}_{piece}", p.label) };
                out.push(Point { label, config });
            }
        }
        out
    }

    points = extend(
        points,
        &sweep.beta,
        "beta",
        |v| number_label(*v),
        |c, v| {
            if let Some(s) = c.two_atom.as_mut() {
                s.beta = *v;
            }
        },
    );
    points = extend(
        points,
        &sweep.retardation,
        "T",
        |v| number_label(*v),
        |c, v| {
            if let Some(s) = c.two_atom.as_mut() {
                s.retardation = *v;
            }
        },
    );
    points = extend(
        points,
        &sweep.gamma0,
        "gamma0",
        |v| number_label(*v),
        |c, v| {
            if let Some(s) = c.two_atom.as_mut() {
                s.gamma0 = *v;
            }
            if let Some(s) = c.cavity_array.as_mut() {
                s.gamma0 = Some(*v);
            }
        },
    );
    points = extend(
        points,
        &sweep.g_a,
        "gA",
        |v| number_label(*v),
        |c, v| {
            if let Some(s) = c.cavity_array.as_mut() {
                s.g_a = *v;
            }
        },
    );
    points = extend(
        points,
        &sweep.separation,
        "dx",
        |v| v.to_string(),
        |c, v| {
            if let Some(s) = c.cavity_array.as_mut() {
                s.separation = *v;
            }
        },
    );
    points = extend(
        points,
        &sweep.n_a,
        "NA",
        |v| v.to_string(),
        |c, v| {
            if let Some(s) = c.cavity_array.as_mut() {
                s.n_a = *v;
            }
        },
    );
    points = extend(points, &sweep.init, "", |v| v.label().to_string(), |c, v| c.init = Some(*v));

    if points.len() == 1 && points[0].label.is_empty() {
        points[0].label = cfg.label.clone().unwrap_or_else(|| "run".into());
    }
    points
}
