//! Built-in experiment presets. Each is an ordinary [`RunConfig`], so
//! `preset NAME --print-config` yields a file that `sweep`/`run` reproduce
//! byte for byte.

use nmqed::cavity::InitialStateKind;

use crate::config::{CavitySection, Format, Model, OutputKind, RunConfig, SweepSection, TwoAtomSection};
use crate::error::{CliError, CliResult};

pub const PRESETS: [&str; 7] = ["fig1b", "fig1c", "fig2", "fig3b", "fig3c", "fig4", "rates"];

fn two_atom(label: &str, beta: f64, retardation: f64, outputs: Vec<OutputKind>, sweep: SweepSection) -> RunConfig {
    RunConfig {
        model: Model::TwoAtom,
        label: Some(label.into()),
        outputs,
        format: Format::Csv,
        output_dir: None,
        t_max: None,
        dt: None,
        early_window: None,
        late_window: None,
        notes: Vec::new(),
        init: None,
        two_atom: Some(TwoAtomSection { gamma0: 1.0, beta, retardation, gamma1d: None, phase: None }),
        cavity_array: None,
        sweep: Some(sweep),
    }
}

fn cavity(label: &str, outputs: Vec<OutputKind>, sweep: Option<SweepSection>) -> RunConfig {
    RunConfig {
        model: Model::CavityArray,
        label: Some(label.into()),
        outputs,
        format: Format::Csv,
        output_dir: None,
        t_max: None,
        dt: None,
        early_window: None,
        late_window: None,
        notes: Vec::new(),
        init: Some(InitialStateKind::SingleAtom),
        two_atom: None,
        cavity_array: Some(CavitySection {
            hopping: 1.0,
            separation: 10,
            g_a: 0.2,
            n_a: 1,
            mirror: 2.0,
            n_b: 1,
            gamma0: None,
        }),
        sweep,
    }
}

/// Config for preset `name`.
pub fn preset(name: &str) -> CliResult<RunConfig> {
    use OutputKind::*;
    let curves = vec![Population, GammaCurve, Fits, Rates];
    let lattice = vec![Population, GammaCurve, Fits];
    let mut cfg = match name {
        "fig1b" => {
            let mut c = two_atom(
                name,
                0.5,
                1.0,
                curves,
                SweepSection { beta: Some(vec![0.2, 0.5, 0.8]), ..Default::default() },
            );
            c.notes.push("beta grid {0.2, 0.5, 0.8} is a chosen grid at fixed T = 1".into());
            c
        }
        "fig1c" => {
            let mut c = two_atom(
                name,
                0.5,
                1.0,
                curves,
                SweepSection { retardation: Some(vec![0.5, 1.0, 2.0]), ..Default::default() },
            );
            c.notes.push("T grid {0.5, 1, 2} is a chosen grid at fixed beta = 0.5".into());
            c
        }
        "fig2" => two_atom(
            name,
            0.5,
            1.0,
            vec![FieldMap, Population],
            SweepSection { beta: Some(vec![0.2, 0.5]), ..Default::default() },
        ),
        "fig3b" => cavity(
            name,
            lattice,
            Some(SweepSection { g_a: Some(vec![0.2, 0.4]), separation: Some(vec![10, 20]), ..Default::default() }),
        ),
        "fig3c" => cavity(
            name,
            lattice,
            Some(SweepSection {
                n_a: Some(vec![1, 4]),
                init: Some(vec![InitialStateKind::SingleAtom, InitialStateKind::Superradiant]),
                ..Default::default()
            }),
        ),
        "fig4" => cavity(name, vec![PhotonMap, Population, Fits], None),
        "rates" => {
            let betas: Vec<f64> = (0..10).map(|i| i as f64 / 10.0).collect();
            let mut c = two_atom(
                name,
                0.5,
                1.0,
                vec![Rates],
                SweepSection { beta: Some(betas), retardation: Some(vec![0.5, 1.0, 2.0]), ..Default::default() },
            );
            c.notes.push("beta grid 0.0..0.9 step 0.1 and T grid {0.5, 1, 2} chosen".into());
            c
        }
        other => {
            return Err(CliError::config(format!("unknown preset '{other}'; expected one of {}", PRESETS.join(", "))));
        }
    };
    if cfg.model == Model::CavityArray {
        cfg.notes.push("gamma0 = 0.05 J; chain sized so no edge reflection reaches the atoms before t_max".into());
    }
    cfg.validate()?;
    Ok(cfg)
}
