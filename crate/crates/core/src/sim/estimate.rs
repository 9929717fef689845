use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scheme::SchemeId;

use super::accumulator::{MetricAccumulator, Moments};

/// Two-sided 95% standard normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Point estimate with a 95% confidence interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Effective sample count (the conditioning-event count for conditional metrics).
    pub n: u64,
}

/// Metric family, without the scheme it applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Outage,
    ErgodicRate,
    #[serde(rename = "type2_prob")]
    TypeIIProb,
    MeanBeta,
    PBetter,
    PHatBetter,
    PHatWorse,
}

impl MetricKind {
    pub const ALL: [MetricKind; 7] = [
        MetricKind::Outage,
        MetricKind::ErgodicRate,
        MetricKind::TypeIIProb,
        MetricKind::MeanBeta,
        MetricKind::PBetter,
        MetricKind::PHatBetter,
        MetricKind::PHatWorse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Outage => "outage",
            MetricKind::ErgodicRate => "ergodic_rate",
            MetricKind::TypeIIProb => "type2_prob",
            MetricKind::MeanBeta => "mean_beta",
            MetricKind::PBetter => "p_better",
            MetricKind::PHatBetter => "p_hat_better",
            MetricKind::PHatWorse => "p_hat_worse",
        }
    }

    /// The concrete metrics of this kind for the given schemes. Comparison
    /// metrics exist only for the power-adapting scheme they describe.
    pub fn expand(self, schemes: &[SchemeId]) -> Vec<Metric> {
        let has = |s| schemes.contains(&s);
        match self {
            MetricKind::Outage => schemes.iter().map(|&s| Metric::Outage(s)).collect(),
            MetricKind::ErgodicRate => schemes.iter().map(|&s| Metric::ErgodicRate(s)).collect(),
            MetricKind::TypeIIProb => schemes.iter().map(|&s| Metric::TypeIIProb(s)).collect(),
            // Full power always gives beta = 1; nothing to report.
            MetricKind::MeanBeta => schemes
                .iter()
                .filter(|&&s| s != SchemeId::HsicNpa)
                .map(|&s| Metric::MeanBeta(s))
                .collect(),
            MetricKind::PBetter => has(SchemeId::HsicPa)
                .then_some(Metric::PBetter)
                .into_iter()
                .collect(),
            MetricKind::PHatBetter => has(SchemeId::FsicPa)
                .then_some(Metric::PHatBetter)
                .into_iter()
                .collect(),
            MetricKind::PHatWorse => has(SchemeId::FsicPa)
                .then_some(Metric::PHatWorse)
                .into_iter()
                .collect(),
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Config {
                key: "metrics".into(),
                reason: format!("unknown metric `{s}`"),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Outage(SchemeId),
    ErgodicRate(SchemeId),
    TypeIIProb(SchemeId),
    MeanBeta(SchemeId),
    /// HSIC-PA vs full power, given HSIC-PA serves a type-II user.
    PBetter,
    /// FSIC-PA vs full power, given FSIC-PA serves a type-II user.
    PHatBetter,
    /// Complement of [`Metric::PHatBetter`].
    PHatWorse,
}

impl Metric {
    pub fn kind(self) -> MetricKind {
        match self {
            Metric::Outage(_) => MetricKind::Outage,
            Metric::ErgodicRate(_) => MetricKind::ErgodicRate,
            Metric::TypeIIProb(_) => MetricKind::TypeIIProb,
            Metric::MeanBeta(_) => MetricKind::MeanBeta,
            Metric::PBetter => MetricKind::PBetter,
            Metric::PHatBetter => MetricKind::PHatBetter,
            Metric::PHatWorse => MetricKind::PHatWorse,
        }
    }

    pub fn scheme(self) -> SchemeId {
        match self {
            Metric::Outage(s) | Metric::ErgodicRate(s) | Metric::TypeIIProb(s) | Metric::MeanBeta(s) => s,
            Metric::PBetter => SchemeId::HsicPa,
            Metric::PHatBetter | Metric::PHatWorse => SchemeId::FsicPa,
        }
    }
}

/// Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> Estimate {
    debug_assert!(n > 0 && successes <= n);
    let nf = n as f64;
    let p = successes as f64 / nf;
    let z2 = Z_95 * Z_95;
    let denom = 1.0 + z2 / nf;
    let center = (p + z2 / (2.0 * nf)) / denom;
    let half = Z_95 / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    Estimate {
        value: p,
        ci_low: (center - half).clamp(0.0, p),
        ci_high: (center + half).clamp(p, 1.0),
        n,
    }
}

/// Normal-approximation interval for a sample mean.
pub fn mean_interval(m: &Moments, n: u64) -> Estimate {
    debug_assert!(n > 0);
    let nf = n as f64;
    let mean = m.sum / nf;
    let var = if n > 1 {
        ((m.sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0)
    } else {
        0.0
    };
    let half = Z_95 * (var / nf).sqrt();
    Estimate {
        value: mean,
        ci_low: mean - half,
        ci_high: mean + half,
        n,
    }
}

pub fn estimate(acc: &MetricAccumulator, metric: Metric) -> Result<Estimate> {
    if acc.trials == 0 {
        return Err(Error::InvalidParam {
            name: "trials",
            reason: "accumulator is empty".into(),
        });
    }
    let conditional = |num: u64, den: u64| {
        if den == 0 {
            Err(Error::EmptyDenominator {
                metric: metric.kind().name().into(),
            })
        } else {
            Ok(wilson_interval(num, den))
        }
    };
    match metric {
        Metric::Outage(s) => Ok(wilson_interval(acc.scheme(s).outage, acc.trials)),
        Metric::TypeIIProb(s) => Ok(wilson_interval(acc.scheme(s).type2, acc.trials)),
        Metric::ErgodicRate(s) => Ok(mean_interval(&acc.scheme(s).rate, acc.trials)),
        Metric::MeanBeta(s) => Ok(mean_interval(&acc.scheme(s).beta, acc.trials)),
        Metric::PBetter => conditional(acc.hsic_better, acc.scheme(SchemeId::HsicPa).type2),
        Metric::PHatBetter => conditional(acc.fsic_better, acc.scheme(SchemeId::FsicPa).type2),
        Metric::PHatWorse => {
            let b = conditional(acc.fsic_better, acc.scheme(SchemeId::FsicPa).type2)?;
            Ok(Estimate {
                value: 1.0 - b.value,
                ci_low: 1.0 - b.ci_high,
                ci_high: 1.0 - b.ci_low,
                n: b.n,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degenerate_proportions() {
        let all = wilson_interval(10, 10);
        assert_eq!(all.value, 1.0);
        assert_eq!(all.ci_high, 1.0);
        assert!(all.ci_low < 1.0);
        let none = wilson_interval(0, 10);
        assert_eq!(none.value, 0.0);
        assert_eq!(none.ci_low, 0.0);
        assert!(none.ci_high > 0.0);
    }

    #[test]
    fn wilson_reference_value() {
        // statsmodels proportion_confint(30, 100, method="wilson")
        let e = wilson_interval(30, 100);
        assert!((e.ci_low - 0.218_948_852_949_327_56).abs() < 1e-9, "{e:?}");
        assert!((e.ci_high - 0.395_848_546_333_466_67).abs() < 1e-9, "{e:?}");
    }

    #[test]
    fn mean_interval_reference() {
        let mut m = Moments::default();
        for x in [1.0, 2.0, 3.0, 4.0] {
            m.push(x);
        }
        let e = mean_interval(&m, 4);
        assert_eq!(e.value, 2.5);
        let half = Z_95 * (5.0f64 / 3.0 / 4.0).sqrt();
        assert!((e.ci_high - 2.5 - half).abs() < 1e-12);
    }

    #[test]
    fn all_outage_accumulator() {
        let mut acc = MetricAccumulator::new(1);
        acc.trials = 7;
        acc.schemes[0].outage = 7;
        assert_eq!(estimate(&acc, Metric::Outage(SchemeId::HsicNpa)).unwrap().value, 1.0);
    }

    #[test]
    fn empty_denominator_is_an_error() {
        let mut acc = MetricAccumulator::new(1);
        acc.trials = 3;
        for m in [Metric::PBetter, Metric::PHatBetter, Metric::PHatWorse] {
            assert!(matches!(estimate(&acc, m), Err(Error::EmptyDenominator { .. })));
        }
        assert!(estimate(&MetricAccumulator::new(1), Metric::Outage(SchemeId::HsicPa)).is_err());
    }

    #[test]
    fn expansion_respects_scheme_subset() {
        let only_npa = [SchemeId::HsicNpa];
        assert!(MetricKind::PBetter.expand(&only_npa).is_empty());
        assert!(MetricKind::MeanBeta.expand(&only_npa).is_empty());
        assert_eq!(MetricKind::Outage.expand(&SchemeId::ALL).len(), 3);
        assert_eq!(MetricKind::MeanBeta.expand(&SchemeId::ALL).len(), 2);
        for k in MetricKind::ALL {
            assert_eq!(k.name().parse::<MetricKind>().unwrap(), k);
        }
    }

    proptest! {
        #[test]
        fn wilson_contains_point(n in 1u64..1_000_000, frac in 0.0f64..=1.0) {
            let k = ((n as f64) * frac).floor() as u64;
            let e = wilson_interval(k.min(n), n);
            prop_assert!(e.ci_low <= e.value && e.value <= e.ci_high);
            prop_assert!(e.ci_low >= 0.0 && e.ci_high <= 1.0);
        }

        #[test]
        fn better_and_worse_sum_to_one(den in 1u64..10_000_000, frac in 0.0f64..=1.0) {
            let num = ((den as f64) * frac).floor() as u64;
            let mut acc = MetricAccumulator::new(1);
            acc.trials = den;
            acc.schemes[SchemeId::FsicPa.index()].type2 = den;
            acc.fsic_better = num.min(den);
            let b = estimate(&acc, Metric::PHatBetter).unwrap();
            let w = estimate(&acc, Metric::PHatWorse).unwrap();
            prop_assert_eq!(b.value + w.value, 1.0);
        }
    }
}
