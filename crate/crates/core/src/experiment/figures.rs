//! Preset sweeps, one per figure recipe.

use crate::error::{Error, Result};
use crate::scheme::SchemeId;
use crate::sim::MetricKind;

use super::config::{Overrides, SnrGrid, SweepConfig};
use super::rows::SweepRow;
use super::sweep::run_sweep;

pub const RECIPES: [&str; 5] = ["fig1", "fig2", "fig3", "fig4", "fig5"];

fn base(r0: f64, ratio: f64, snr: SnrGrid, metrics: Vec<MetricKind>, variant: &str) -> SweepConfig {
    SweepConfig {
        schemes: SchemeId::ALL.to_vec(),
        snr,
        ratio,
        r0,
        rs: 1.0,
        m: 4,
        trials: 1_000_000,
        seed: 0,
        metrics,
        workers: 0,
        out: None,
        variant: variant.into(),
    }
}

/// Expands a recipe id into its sweep configurations.
///
/// * `fig1`: outage, `ps = p0`, `r0` in {1, 4}, 20..60 dB.
/// * `fig2`: ergodic rate, `ps = p0 / 3`, 0..60 dB.
/// * `fig3`: probability that the served user is type II, `ps = p0`.
/// * `fig4`: better/worse probabilities against full power, `ps = p0`.
/// * `fig5`: mean power coefficient of the adapting schemes, `ps = p0`.
///
/// All use `M = 4`, `rs = 1`; where no primary rate is given, `r0 = 1`.
pub fn recipe_configs(id: &str) -> Result<Vec<SweepConfig>> {
    let wide = SnrGrid { start: 0.0, stop: 60.0, step: 5.0 };
    let cfgs = match id {
        "fig1" => {
            let grid = SnrGrid { start: 20.0, stop: 60.0, step: 5.0 };
            vec![
                base(1.0, 1.0, grid, vec![MetricKind::Outage], "r0=1"),
                base(4.0, 1.0, grid, vec![MetricKind::Outage], "r0=4"),
            ]
        }
        "fig2" => vec![base(1.0, 1.0 / 3.0, wide, vec![MetricKind::ErgodicRate], "r0=1")],
        "fig3" => vec![base(1.0, 1.0, wide, vec![MetricKind::TypeIIProb], "r0=1")],
        "fig4" => vec![base(
            1.0,
            1.0,
            wide,
            vec![MetricKind::PBetter, MetricKind::PHatBetter, MetricKind::PHatWorse],
            "r0=1",
        )],
        "fig5" => {
            let mut c = base(1.0, 1.0, wide, vec![MetricKind::MeanBeta], "r0=1");
            c.schemes = vec![SchemeId::HsicPa, SchemeId::FsicPa];
            vec![c]
        }
        other => return Err(Error::UnknownRecipe(other.into())),
    };
    Ok(cfgs)
}

pub fn figure(id: &str, overrides: &Overrides) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for mut cfg in recipe_configs(id)? {
        cfg.apply(overrides)?;
        rows.extend(run_sweep(&cfg)?);
    }
    Ok(rows)
}
