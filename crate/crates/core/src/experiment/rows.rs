use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::scheme::SchemeId;
use crate::sim::MetricKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Mc,
    Oracle,
}

/// One CSV line: a metric of one scheme at one SNR point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub scheme: SchemeId,
    pub metric: MetricKind,
    pub value: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub seed: u64,
    pub source: Source,
    pub variant: String,
    pub notes: String,
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record([
            "snr_db", "scheme", "metric", "value", "ci_low", "ci_high", "trials", "seed", "source",
            "variant", "notes",
        ])?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> anyhow::Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn header(rows: &[SweepRow]) -> String {
        let mut buf = Vec::new();
        write_csv(rows, &mut buf).unwrap();
        String::from_utf8(buf).unwrap().lines().next().unwrap().to_string()
    }

    #[test]
    fn header_order_is_fixed() {
        let expected = "snr_db,scheme,metric,value,ci_low,ci_high,trials,seed,source,variant,notes";
        assert_eq!(header(&[]), expected);
        let row = SweepRow {
            snr_db: 20.0,
            scheme: SchemeId::HsicPa,
            metric: MetricKind::TypeIIProb,
            value: f64::NAN,
            ci_low: f64::NAN,
            ci_high: f64::NAN,
            trials: 1,
            seed: 0,
            source: Source::Mc,
            variant: String::new(),
            notes: "empty_denominator".into(),
        };
        assert_eq!(header(std::slice::from_ref(&row)), expected);
        let mut buf = Vec::new();
        write_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("20.0,HSIC-PA,type2_prob,NaN,NaN,NaN,1,0,mc,,empty_denominator"), "{text}");
    }

    fn any_scheme() -> impl Strategy<Value = SchemeId> {
        prop::sample::select(SchemeId::ALL.to_vec())
    }

    fn any_metric() -> impl Strategy<Value = MetricKind> {
        prop::sample::select(MetricKind::ALL.to_vec())
    }

    proptest! {
        #[test]
        fn csv_round_trip(
            snr in -50.0f64..100.0,
            scheme in any_scheme(),
            metric in any_metric(),
            value in prop::num::f64::NORMAL | prop::num::f64::ZERO,
            lo in prop::num::f64::ANY,
            trials in any::<u64>(),
            seed in any::<u64>(),
            oracle in any::<bool>(),
            variant in "[a-z0-9=]{0,6}",
        ) {
            let row = SweepRow {
                snr_db: snr, scheme, metric, value, ci_low: lo, ci_high: value,
                trials, seed,
                source: if oracle { Source::Oracle } else { Source::Mc },
                variant, notes: "a,b".into(),
            };
            let mut buf = Vec::new();
            write_csv(std::slice::from_ref(&row), &mut buf).unwrap();
            let back = read_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back.len(), 1);
            let b = &back[0];
            prop_assert_eq!(b.value.to_bits(), row.value.to_bits());
            prop_assert!(b.ci_low.to_bits() == row.ci_low.to_bits() || (b.ci_low.is_nan() && row.ci_low.is_nan()));
            prop_assert_eq!(b.snr_db, row.snr_db);
            prop_assert_eq!((b.scheme, b.metric, b.source), (row.scheme, row.metric, row.source));
            prop_assert_eq!((b.trials, b.seed), (row.trials, row.seed));
            prop_assert_eq!(&b.variant, &row.variant);
            prop_assert_eq!(&b.notes, &row.notes);
        }
    }
}
