use crate::error::{Error, Result};
use crate::oracle::{npa_floor, outage_quadrature, QuadratureSpec};
use crate::params::SystemParams;
use crate::scheme::{floor_condition, SchemeId};
use crate::sim::{estimate, run_batch, Metric, MetricKind};

use super::config::SweepConfig;
use super::rows::{Source, SweepRow};

fn point_params(cfg: &SweepConfig, snr_db: f64) -> Result<SystemParams> {
    SystemParams::from_snr_db(snr_db, cfg.ratio, cfg.r0, cfg.rs, cfg.m)
}

/// Floor annotation for full-power outage rows.
fn notes_for(metric: Metric, params: &SystemParams) -> String {
    match metric {
        Metric::Outage(SchemeId::HsicNpa) if !floor_condition(params) => {
            format!("npa_floor={:e}", npa_floor(params))
        }
        _ => String::new(),
    }
}

fn oracle_row(cfg: &SweepConfig, snr_db: f64, params: &SystemParams, s: SchemeId) -> Result<SweepRow> {
    let v = outage_quadrature(s, params, &QuadratureSpec::default())?;
    Ok(SweepRow {
        snr_db,
        scheme: s,
        metric: MetricKind::Outage,
        value: v,
        ci_low: v,
        ci_high: v,
        trials: 0,
        seed: cfg.seed,
        source: Source::Oracle,
        variant: cfg.variant.clone(),
        notes: notes_for(Metric::Outage(s), params),
    })
}

/// Runs one Monte Carlo batch per SNR point (every point reuses the same
/// master seed) and emits one row per requested metric, followed by an
/// oracle row for each outage metric.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for snr_db in cfg.snr.points() {
        let params = point_params(cfg, snr_db)?;
        let acc = run_batch(&params, cfg.seed, cfg.trials, cfg.workers)?;
        for kind in &cfg.metrics {
            for metric in kind.expand(&cfg.schemes) {
                let mut notes = notes_for(metric, &params);
                let est = match estimate(&acc, metric) {
                    Ok(e) => e,
                    Err(Error::EmptyDenominator { .. }) => {
                        notes = "empty_denominator".into();
                        crate::sim::Estimate {
                            value: f64::NAN,
                            ci_low: f64::NAN,
                            ci_high: f64::NAN,
                            n: 0,
                        }
                    }
                    Err(e) => return Err(e),
                };
                rows.push(SweepRow {
                    snr_db,
                    scheme: metric.scheme(),
                    metric: metric.kind(),
                    value: est.value,
                    ci_low: est.ci_low,
                    ci_high: est.ci_high,
                    trials: acc.trials,
                    seed: cfg.seed,
                    source: Source::Mc,
                    variant: cfg.variant.clone(),
                    notes,
                });
                if let Metric::Outage(s) = metric {
                    rows.push(oracle_row(cfg, snr_db, &params, s)?);
                }
            }
        }
    }
    Ok(rows)
}

/// Quadrature outage rows only; no simulation.
pub fn run_oracle(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for snr_db in cfg.snr.points() {
        let params = point_params(cfg, snr_db)?;
        for &s in &cfg.schemes {
            rows.push(oracle_row(cfg, snr_db, &params, s)?);
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyCheck {
    pub snr_db: f64,
    pub scheme: SchemeId,
    pub mc: f64,
    pub oracle: f64,
    /// Binomial standard error at the oracle probability.
    pub std_err: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Every Monte Carlo outage row must sit within three binomial standard
/// errors of its oracle row.
pub fn verify(cfg: &SweepConfig) -> Result<VerifyReport> {
    let mut cfg = cfg.clone();
    cfg.metrics = vec![MetricKind::Outage];
    let rows = run_sweep(&cfg)?;
    let checks = rows
        .chunks(2)
        .map(|pair| {
            let (mc, or) = (&pair[0], &pair[1]);
            debug_assert!(mc.source == Source::Mc && or.source == Source::Oracle);
            debug_assert!(mc.scheme == or.scheme && mc.snr_db == or.snr_db);
            let p = or.value;
            let std_err = (p * (1.0 - p) / mc.trials as f64).sqrt();
            VerifyCheck {
                snr_db: mc.snr_db,
                scheme: mc.scheme,
                mc: mc.value,
                oracle: p,
                std_err,
                passed: (mc.value - p).abs() <= 3.0 * std_err,
            }
        })
        .collect();
    Ok(VerifyReport { checks })
}
