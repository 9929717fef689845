use crate::scheme::SchemeId;

use super::trial::TrialOutcome;

/// Running sum and sum of squares.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub sum: f64,
    pub sum_sq: f64,
}

impl Moments {
    #[inline]
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
    }

    fn merge(&mut self, other: &Moments) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }
}

/// Counters for one scheme.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SchemeTally {
    pub outage: u64,
    /// Trials whose served user is type II.
    pub type2: u64,
    pub rate: Moments,
    pub beta: Moments,
}

/// Streaming metric counters. Two accumulators over disjoint trial sets merge
/// into the accumulator of their union.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAccumulator {
    pub trials: u64,
    /// Indexed by [`SchemeId::index`].
    pub schemes: [SchemeTally; 3],
    /// Numerator of the HSIC-PA better-than-full-power probability; its
    /// denominator is `schemes[HsicPa].type2`.
    pub hsic_better: u64,
    /// Numerator of the FSIC-PA better-than-full-power probability; its
    /// denominator is `schemes[FsicPa].type2`.
    pub fsic_better: u64,
    /// Trials where HSIC-PA and FSIC-PA serve the same type-II user.
    pub same_user_type2: u64,
    pub same_user_hsic_better: u64,
    pub same_user_fsic_better: u64,
    /// `type1_users[k]` counts realizations with exactly `k` type-I users.
    pub type1_users: Vec<u64>,
}

impl MetricAccumulator {
    pub fn new(m: usize) -> Self {
        Self {
            trials: 0,
            schemes: [SchemeTally::default(); 3],
            hsic_better: 0,
            fsic_better: 0,
            same_user_type2: 0,
            same_user_hsic_better: 0,
            same_user_fsic_better: 0,
            type1_users: vec![0; m + 1],
        }
    }

    pub fn scheme(&self, s: SchemeId) -> &SchemeTally {
        &self.schemes[s.index()]
    }

    pub fn record(&mut self, o: &TrialOutcome) {
        self.trials += 1;
        for (i, tally) in self.schemes.iter_mut().enumerate() {
            let d = &o.decisions[i];
            tally.outage += o.outage[i] as u64;
            tally.type2 += o.type2[i] as u64;
            tally.rate.push(d.rate);
            tally.beta.push(d.beta);
        }
        let hb = o.hsic_better == Some(true);
        let fb = o.fsic_better == Some(true);
        self.hsic_better += hb as u64;
        self.fsic_better += fb as u64;
        if o.same_type2_user() {
            self.same_user_type2 += 1;
            self.same_user_hsic_better += hb as u64;
            self.same_user_fsic_better += fb as u64;
        }
        self.type1_users[o.type1_users] += 1;
    }

    pub fn merge(mut self, other: &MetricAccumulator) -> Self {
        assert_eq!(
            self.type1_users.len(),
            other.type1_users.len(),
            "merging accumulators for different user counts"
        );
        self.trials += other.trials;
        for (a, b) in self.schemes.iter_mut().zip(&other.schemes) {
            a.outage += b.outage;
            a.type2 += b.type2;
            a.rate.merge(&b.rate);
            a.beta.merge(&b.beta);
        }
        self.hsic_better += other.hsic_better;
        self.fsic_better += other.fsic_better;
        self.same_user_type2 += other.same_user_type2;
        self.same_user_hsic_better += other.same_user_hsic_better;
        self.same_user_fsic_better += other.same_user_fsic_better;
        for (a, b) in self.type1_users.iter_mut().zip(&other.type1_users) {
            *a += b;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::SeedSpec;
    use crate::params::SystemParams;
    use crate::sim::run_trial;

    fn fill(p: &SystemParams, range: std::ops::Range<u64>) -> MetricAccumulator {
        let mut acc = MetricAccumulator::new(p.m);
        for t in range {
            acc.record(&run_trial(p, SeedSpec::new(5, t)));
        }
        acc
    }

    #[test]
    fn counts_stay_within_trials() {
        let p = SystemParams::new(100.0, 100.0, 1.0, 1.0, 3).unwrap();
        let acc = fill(&p, 0..5000);
        assert_eq!(acc.trials, 5000);
        assert_eq!(acc.type1_users.iter().sum::<u64>(), acc.trials);
        for t in &acc.schemes {
            assert!(t.outage <= acc.trials && t.type2 <= acc.trials);
        }
        assert!(acc.hsic_better <= acc.scheme(SchemeId::HsicPa).type2);
        assert!(acc.fsic_better <= acc.scheme(SchemeId::FsicPa).type2);
        assert!(acc.same_user_type2 <= acc.scheme(SchemeId::HsicPa).type2);
    }

    #[test]
    fn merge_matches_single_pass() {
        let p = SystemParams::new(10.0, 10.0, 2.0, 1.0, 4).unwrap();
        let whole = fill(&p, 0..4000);
        let split = fill(&p, 0..1500).merge(&fill(&p, 1500..4000));
        let swapped = fill(&p, 1500..4000).merge(&fill(&p, 0..1500));
        for other in [&split, &swapped] {
            assert_eq!(whole.trials, other.trials);
            assert_eq!(whole.type1_users, other.type1_users);
            assert_eq!(whole.hsic_better, other.hsic_better);
            for (a, b) in whole.schemes.iter().zip(&other.schemes) {
                assert_eq!((a.outage, a.type2), (b.outage, b.type2));
                let rel = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
                assert!(rel(a.rate.sum, b.rate.sum) && rel(a.rate.sum_sq, b.rate.sum_sq));
                assert!(rel(a.beta.sum, b.beta.sum) && rel(a.beta.sum_sq, b.beta.sum_sq));
            }
        }
    }
}
