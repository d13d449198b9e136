//! Executes resolved grid points and writes their tables and the manifest.

use std::path::{Path, PathBuf};
use std::time::Instant;

use nmqed::analysis::{decay_rate_curve, fit_exponential, FitResult, DEFAULT_SMOOTH_WINDOW};
use nmqed::cavity::{self, CavityParams, InitialStateKind, DEFAULT_GAMMA0_PER_HOPPING};
use nmqed::spectral::{asymptotic_rate, spectral_rate};
use nmqed::sweep::{self, ExecMode};
use nmqed::two_atom::{self, TwoAtomParams};
use serde_json::{json, Value};

use crate::config::{expand, Format, Model, OutputKind, Point, RunConfig, MAX_SAMPLES};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_json, Cell, Table};

/// Two-atom defaults in units of `T`.
pub const TWO_ATOM_EARLY: [f64; 2] = [0.0, 0.8];
pub const TWO_ATOM_LATE: [f64; 2] = [5.0, 8.0];
pub const TWO_ATOM_T_MAX: f64 = 8.0;
pub const TWO_ATOM_DT: f64 = 1e-3;

/// Lattice defaults in units of the round-trip time `Δx/J`.
pub const LATTICE_EARLY: [f64; 2] = [0.0, 0.8];
pub const LATTICE_LATE: [f64; 2] = [2.0, 3.0];
pub const LATTICE_T_MAX: f64 = 4.0;
/// Step in units of `1/J`.
pub const LATTICE_DT: f64 = 0.01;
/// Maximum number of time rows in a photon map.
const PHOTON_MAP_ROWS: usize = 400;

pub const RATES_COLUMNS: [&str; 5] = ["beta", "T", "gamma_fit", "gamma_spectral", "gamma_eq5"];
pub const LATTICE_SUMMARY_COLUMNS: [&str; 7] =
    ["point", "g_a", "separation", "n_a", "init", "gamma_early", "gamma_late"];

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    pub mode: ExecMode,
    /// Recorded verbatim in the manifest.
    pub command: String,
}

/// Files and rows produced by one run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub summary: Option<Table>,
    pub manifest: PathBuf,
}

struct PointResult {
    tables: Vec<Table>,
    summary: Vec<Cell>,
    resolved: Value,
}

struct PointRecord {
    label: String,
    files: Vec<PathBuf>,
    summary: Vec<Cell>,
    resolved: Value,
}

fn window(w: Option<[f64; 2]>, default: [f64; 2], scale: f64) -> (f64, f64) {
    let [a, b] = w.unwrap_or(default);
    (a * scale, b * scale)
}

fn check_samples(t_max: f64, dt: f64) -> CliResult<()> {
    if t_max / dt > MAX_SAMPLES {
        return Err(CliError::config(format!(
            "t_max/dt = {:.3e} exceeds the {MAX_SAMPLES:.0e} sample limit",
            t_max / dt
        )));
    }
    Ok(())
}

fn fit_row(name: &str, fit: &FitResult) -> Vec<Cell> {
    vec![
        name.into(),
        fit.window.0.into(),
        fit.window.1.into(),
        fit.gamma_fit.into(),
        fit.r_squared.into(),
        fit.n_points.into(),
    ]
}

fn fits_table(early: &FitResult, late: &FitResult) -> Table {
    let mut t = Table::new("fits", &["window", "t_start", "t_end", "gamma_fit", "r_squared", "n_points"]);
    t.push(fit_row("early", early));
    t.push(fit_row("late", late));
    t
}

fn population_tables(outputs: &[OutputKind], times: &[f64], p: &[f64], gamma0: f64) -> CliResult<Vec<Table>> {
    let mut tables = Vec::new();
    let wants = |k| outputs.contains(&k);
    if !(wants(OutputKind::Population) || wants(OutputKind::GammaCurve)) {
        return Ok(tables);
    }
    let gamma = decay_rate_curve(p, times, DEFAULT_SMOOTH_WINDOW)?;
    if wants(OutputKind::Population) {
        let mut t = Table::new("population", &["t", "P", "gamma_inst", "P_ref"]);
        for i in 0..times.len() {
            t.push(vec![times[i].into(), p[i].into(), gamma[i].into(), (-gamma0 * times[i]).exp().into()]);
        }
        tables.push(t);
    }
    if wants(OutputKind::GammaCurve) {
        let mut t = Table::new("gamma_curve", &["t", "gamma_inst"]);
        for i in 0..times.len() {
            t.push(vec![times[i].into(), gamma[i].into()]);
        }
        tables.push(t);
    }
    Ok(tables)
}

/// Model parameters of a two-atom config.
pub fn two_atom_params(cfg: &RunConfig) -> CliResult<TwoAtomParams> {
    let s = cfg.two_atom.as_ref().ok_or_else(|| CliError::config("missing [two_atom] section"))?;
    let params = if s.beta >= 1.0 {
        if s.gamma0 != 0.0 {
            return Err(CliError::config("beta = 1 requires gamma0 = 0 (lossless mode)"));
        }
        let g = s.gamma1d.ok_or_else(|| CliError::config("lossless mode (beta = 1) needs gamma1d"))?;
        TwoAtomParams::lossless(g, s.retardation)?
    } else {
        if s.gamma1d.is_some() {
            return Err(CliError::config("gamma1d is derived from beta unless beta = 1"));
        }
        TwoAtomParams::new(s.gamma0, s.beta, s.retardation)?
    };
    Ok(match s.phase {
        Some(phi) => params.with_phase(phi)?,
        None => params,
    })
}

fn run_two_atom(cfg: &RunConfig) -> CliResult<PointResult> {
    let params = two_atom_params(cfg)?;
    let t_ret = params.retardation();
    let scale = if t_ret > 0.0 { t_ret } else { 1.0 };
    let t_max = cfg.t_max.unwrap_or(TWO_ATOM_T_MAX * scale);
    let dt = cfg.dt.unwrap_or(TWO_ATOM_DT);
    check_samples(t_max, dt)?;
    let early_w = window(cfg.early_window, TWO_ATOM_EARLY, scale);
    let late_w = window(cfg.late_window, TWO_ATOM_LATE, scale);

    let traj = two_atom::evolve_dark_state(&params, t_max, dt)?;
    let (times, p) = (traj.times(), traj.population());
    let early = fit_exponential(p, times, early_w)?;
    let late = fit_exponential(p, times, late_w)?;
    let spectral = spectral_rate(&params)?;
    let small_delay = asymptotic_rate(&params);
    let rates_row =
        vec![params.beta().into(), t_ret.into(), late.gamma_fit.into(), spectral.into(), small_delay.into()];

    let mut tables = population_tables(&cfg.outputs, times, p, params.gamma0())?;
    let mut field_peak = None;
    for kind in &cfg.outputs {
        match kind {
            OutputKind::Fits => tables.push(fits_table(&early, &late)),
            OutputKind::Rates => {
                let mut t = Table::new("rates", &RATES_COLUMNS);
                t.push(rates_row.clone());
                tables.push(t);
            }
            OutputKind::FieldMap => {
                let (xs, ts) = two_atom::default_field_grid(&traj);
                let grid = two_atom::field_intensity_map(&traj, &xs, &ts)?;
                field_peak = Some(grid.peak());
                let norm = grid.normalized();
                let mut t = Table::new("field_map", &["t", "x", "intensity"]);
                for (it, &tt) in norm.t.iter().enumerate() {
                    for (ix, &x) in norm.x.iter().enumerate() {
                        t.push(vec![tt.into(), x.into(), norm.at(it, ix).into()]);
                    }
                }
                tables.push(t);
            }
            _ => {}
        }
    }
    let resolved = json!({
        "model": "two_atom",
        "params": params,
        "gamma": params.gamma(),
        "t_max": t_max,
        "dt_requested": dt,
        "dt_used": traj.step(),
        "early_window": [early_w.0, early_w.1],
        "late_window": [late_w.0, late_w.1],
        "field_peak_intensity": field_peak,
        "initial_state": "dark",
    });
    Ok(PointResult { tables, summary: rates_row, resolved })
}

/// Lattice parameters, initial state and run length of a cavity config.
pub fn cavity_setup(cfg: &RunConfig) -> CliResult<(CavityParams, InitialStateKind, f64, f64, f64)> {
    let s = cfg.cavity_array.as_ref().ok_or_else(|| CliError::config("missing [cavity_array] section"))?;
    if !(s.hopping.is_finite() && s.hopping > 0.0) {
        return Err(CliError::config(format!("hopping must be positive, got {}", s.hopping)));
    }
    if s.separation == 0 {
        return Err(CliError::config("separation must be positive"));
    }
    let round_trip = s.separation as f64 / s.hopping;
    let t_max = cfg.t_max.unwrap_or(LATTICE_T_MAX * round_trip);
    let dt = cfg.dt.unwrap_or(LATTICE_DT / s.hopping);
    check_samples(t_max, dt)?;
    let gamma0 = s.gamma0.unwrap_or(DEFAULT_GAMMA0_PER_HOPPING * s.hopping);
    let params = CavityParams::centered(s.hopping, s.separation, s.g_a, s.n_a, s.mirror, s.n_b, gamma0, t_max)?;
    Ok((params, cfg.init.unwrap_or(InitialStateKind::SingleAtom), t_max, dt, round_trip))
}

fn run_cavity(cfg: &RunConfig, label: &str) -> CliResult<PointResult> {
    let (params, init, t_max, dt, round_trip) = cavity_setup(cfg)?;
    debug_assert_eq!(round_trip, cavity::round_trip_time(&params));
    let phase = cavity::round_trip_phase(&params);
    let early_w = window(cfg.early_window, LATTICE_EARLY, round_trip);
    let late_w = window(cfg.late_window, LATTICE_LATE, round_trip);
    let steps = ((t_max / dt) - 1e-9).ceil().max(1.0) as usize;
    let stride = steps.div_ceil(PHOTON_MAP_ROWS).max(1);

    let traj = cavity::evolve_strided(&params, init, t_max, dt, stride)?;
    let early = fit_exponential(&traj.population, &traj.times, early_w)?;
    let late = fit_exponential(&traj.population, &traj.times, late_w)?;

    let mut tables = population_tables(&cfg.outputs, &traj.times, &traj.population, params.gamma0)?;
    for kind in &cfg.outputs {
        match kind {
            OutputKind::Fits => tables.push(fits_table(&early, &late)),
            OutputKind::PhotonMap => {
                let mut t = Table::new("photon_map", &["t", "x", "probability"]);
                for (tt, state) in traj.snapshot_times.iter().zip(&traj.snapshots) {
                    for (i, prob) in state.photon_distribution().into_iter().enumerate() {
                        t.push(vec![(*tt).into(), (i + 1).into(), prob.into()]);
                    }
                }
                tables.push(t);
            }
            _ => {}
        }
    }
    let summary = vec![
        label.into(),
        params.g_a.into(),
        params.separation().into(),
        params.n_a.into(),
        init.label().into(),
        early.gamma_fit.into(),
        late.gamma_fit.into(),
    ];
    let resolved = json!({
        "model": "cavity_array",
        "params": params,
        "init": init,
        "round_trip_time": round_trip,
        "round_trip_phase": phase,
        "markovian_rate": params.markovian_rate(),
        "t_max": t_max,
        "dt": dt,
        "snapshot_stride": stride,
        "early_window": [early_w.0, early_w.1],
        "late_window": [late_w.0, late_w.1],
    });
    Ok(PointResult { tables, summary, resolved })
}

fn run_point(point: &Point, dir: &Path, format: Format) -> CliResult<PointRecord> {
    log::info!("running {}", point.label);
    let result = match point.config.model {
        Model::TwoAtom => run_two_atom(&point.config)?,
        Model::CavityArray => run_cavity(&point.config, &point.label)?,
    };
    let mut files = Vec::with_capacity(result.tables.len());
    for table in &result.tables {
        files.push(table.write(dir, &format!("{}_{}", point.label, table.name), format)?);
    }
    Ok(PointRecord { label: point.label.clone(), files, summary: result.summary, resolved: result.resolved })
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Run every point of `cfg` and write tables, a sweep summary and
/// `manifest.json` (last) into `opts.out_dir`.
pub fn execute(cfg: &RunConfig, opts: &RunOptions) -> CliResult<RunReport> {
    cfg.validate()?;
    let started = Instant::now();
    let dir = &opts.out_dir;
    ensure_dir(dir)?;
    let points = expand(cfg);
    let records = sweep::try_map(&points, opts.mode, |p| run_point(p, dir, cfg.format))?;

    let mut files: Vec<PathBuf> = records.iter().flat_map(|r| r.files.iter().cloned()).collect();
    let summary = if cfg.sweep.as_ref().is_some_and(|s| !s.is_empty()) {
        let mut table = match cfg.model {
            Model::TwoAtom => Table::new("summary_rates", &RATES_COLUMNS),
            Model::CavityArray => Table::new("summary_fits", &LATTICE_SUMMARY_COLUMNS),
        };
        for r in &records {
            table.push(r.summary.clone());
        }
        files.push(table.write(dir, &table.name, cfg.format)?);
        Some(table)
    } else {
        None
    };

    let manifest_path = dir.join("manifest.json");
    let manifest = json!({
        "tool": "nmqed",
        "version": env!("CARGO_PKG_VERSION"),
        "command": opts.command,
        "config": cfg,
        "config_toml": cfg.to_toml(),
        "notes": cfg.notes,
        "points": records.iter().map(|r| json!({
            "label": r.label,
            "resolved": r.resolved,
            "files": r.files.iter().map(|f| file_name(f)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "summary": summary.as_ref().map(|t| format!("{}.{}", t.name, cfg.format.extension())),
        "wall_time_seconds": started.elapsed().as_secs_f64(),
    });
    write_json(&manifest_path, &manifest)?;
    Ok(RunReport { out_dir: dir.clone(), files, summary, manifest: manifest_path })
}
