use std::collections::HashMap;
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::scheme::SchemeId;
use crate::sim::MetricKind;

/// Inclusive SNR grid in dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnrGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl SnrGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let bad = |key: &str, reason: &str| Error::Config {
            key: key.into(),
            reason: reason.into(),
        };
        if !(start.is_finite() && stop.is_finite()) {
            return Err(bad("snr", "bounds must be finite"));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(bad("step", "must be positive"));
        }
        if stop < start {
            return Err(bad("snr", "stop is below start"));
        }
        Ok(Self { start, stop, step })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub schemes: Vec<SchemeId>,
    pub snr: SnrGrid,
    /// `ps / p0`.
    pub ratio: f64,
    pub r0: f64,
    pub rs: f64,
    pub m: usize,
    pub trials: u64,
    pub seed: u64,
    pub metrics: Vec<MetricKind>,
    pub workers: usize,
    pub out: Option<PathBuf>,
    /// Free-form label copied into every row.
    pub variant: String,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<()> {
        if let Some(t) = o.trials {
            self.trials = t;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        if let Some(w) = o.workers {
            self.workers = w;
        }
        if let Some(p) = &o.out {
            self.out = Some(p.clone());
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |key: &str, reason: String| {
            Err(Error::Config {
                key: key.into(),
                reason,
            })
        };
        if self.schemes.is_empty() {
            return bad("schemes", "no scheme selected".into());
        }
        if self.metrics.is_empty() {
            return bad("metrics", "no metric selected".into());
        }
        if self.trials == 0 {
            return bad("trials", "must be at least 1".into());
        }
        if self.m == 0 {
            return bad("m", "must be at least 1".into());
        }
        for (key, v) in [("ratio", self.ratio), ("r0", self.r0), ("rs", self.rs)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(key, format!("must be positive, got {v}"));
            }
        }
        SnrGrid::new(self.snr.start, self.snr.stop, self.snr.step)?;
        Ok(())
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config {
        key: key.into(),
        reason: format!("cannot parse `{v}`"),
    })
}

/// Accepts `0.5` as well as fractions like `1/3`.
fn parse_ratio(v: &str) -> Result<f64> {
    match v.split_once('/') {
        Some((a, b)) => Ok(parse_num::<f64>("ratio", a)? / parse_num::<f64>("ratio", b)?),
        None => parse_num("ratio", v),
    }
}

fn parse_list<T, F>(v: &str, f: F) -> Result<Vec<T>>
where
    F: Fn(&str) -> Result<T>,
{
    v.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(f)
        .collect()
}

/// Parses whitespace- or newline-separated `key=value` pairs (spaces around
/// `=` are allowed). `#` starts a
/// comment. Defaults: all schemes, all metrics, `ratio=1`, `trials=1000000`,
/// `seed=0`, `workers=0` (all cores).
pub fn parse_config(text: &str) -> Result<SweepConfig> {
    let mut kv: HashMap<String, String> = HashMap::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("");
        let line = line.split('=').map(str::trim).collect::<Vec<_>>().join("=");
        for tok in line.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| Error::Config {
                key: tok.into(),
                reason: "expected key=value".into(),
            })?;
            let k = match k {
                "start" => "snr_start",
                "stop" => "snr_stop",
                "step" => "snr_step",
                other => other,
            };
            kv.insert(k.to_string(), v.to_string());
        }
    }

    const KNOWN: [&str; 14] = [
        "schemes", "snr", "snr_start", "snr_stop", "snr_step", "ratio", "r0", "rs", "m",
        "trials", "seed", "metrics", "workers", "out",
    ];
    if let Some(k) = kv.keys().filter(|k| !KNOWN.contains(&k.as_str()) && *k != "variant").min() {
        return Err(Error::Config {
            key: k.clone(),
            reason: "unknown key".into(),
        });
    }

    let required = |key: &str| {
        kv.get(key).ok_or_else(|| Error::Config {
            key: key.into(),
            reason: "missing required key".into(),
        })
    };

    let r0 = parse_num("r0", required("r0")?)?;
    let rs = parse_num("rs", required("rs")?)?;
    let m = parse_num("m", required("m")?)?;

    let (mut start, mut stop, mut step) = (None, None, None);
    if let Some(v) = kv.get("snr") {
        let parts: Vec<&str> = v.split(':').collect();
        match parts.as_slice() {
            [a, b, c] => {
                start = Some(parse_num::<f64>("snr", a)?);
                stop = Some(parse_num::<f64>("snr", b)?);
                step = Some(parse_num::<f64>("snr", c)?);
            }
            [a] => {
                let x = parse_num::<f64>("snr", a)?;
                (start, stop, step) = (Some(x), Some(x), Some(1.0));
            }
            _ => {
                return Err(Error::Config {
                    key: "snr".into(),
                    reason: "expected start:stop:step".into(),
                })
            }
        }
    }
    for (key, slot) in [("snr_start", &mut start), ("snr_stop", &mut stop), ("snr_step", &mut step)] {
        if let Some(v) = kv.get(key) {
            *slot = Some(parse_num(key, v)?);
        }
    }
    let snr = match (start, stop, step) {
        (Some(a), Some(b), Some(c)) => SnrGrid::new(a, b, c)?,
        (None, _, _) => return Err(Error::Config { key: "snr".into(), reason: "missing required key".into() }),
        (_, None, _) => return Err(Error::Config { key: "snr_stop".into(), reason: "missing".into() }),
        (_, _, None) => return Err(Error::Config { key: "snr_step".into(), reason: "missing".into() }),
    };

    let schemes = match kv.get("schemes") {
        Some(v) if v != "all" => parse_list(v, |s| s.parse::<SchemeId>())?,
        _ => SchemeId::ALL.to_vec(),
    };
    let metrics = match kv.get("metrics") {
        Some(v) if v != "all" => parse_list(v, |s| s.parse::<MetricKind>())?,
        _ => MetricKind::ALL.to_vec(),
    };

    let cfg = SweepConfig {
        schemes,
        snr,
        ratio: kv.get("ratio").map(|v| parse_ratio(v)).transpose()?.unwrap_or(1.0),
        r0,
        rs,
        m,
        trials: kv.get("trials").map(|v| parse_num("trials", v)).transpose()?.unwrap_or(1_000_000),
        seed: kv.get("seed").map(|v| parse_num("seed", v)).transpose()?.unwrap_or(0),
        metrics,
        workers: kv.get("workers").map(|v| parse_num("workers", v)).transpose()?.unwrap_or(0),
        out: kv.get("out").map(PathBuf::from),
        variant: kv.get("variant").cloned().unwrap_or_default(),
    };
    cfg.validate()?;
    Ok(cfg)
}
