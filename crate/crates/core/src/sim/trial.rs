use crate::channel::{sample_realization, ChannelRealization, SeedSpec};
use crate::params::SystemParams;
use crate::scheme::{self, SchemeDecision, SchemeId, UserType};

/// Everything one trial contributes to the metrics, for all three schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    /// Indexed by [`SchemeId::index`].
    pub decisions: [SchemeDecision; 3],
    pub outage: [bool; 3],
    pub type2: [bool; 3],
    /// Number of type-I users in the realization.
    pub type1_users: usize,
    /// HSIC-PA beats the full-power first-stage rate of its own served user.
    /// `None` unless that user is type II.
    pub hsic_better: Option<bool>,
    /// FSIC-PA beats the full-power first-stage rate of its own served user.
    /// `None` unless that user is type II.
    pub fsic_better: Option<bool>,
}

impl TrialOutcome {
    pub fn decision(&self, s: SchemeId) -> &SchemeDecision {
        &self.decisions[s.index()]
    }

    /// Both power-adapting schemes serve the same type-II user.
    pub fn same_type2_user(&self) -> bool {
        let h = self.decision(SchemeId::HsicPa);
        let f = self.decision(SchemeId::FsicPa);
        h.served == f.served && h.utype == UserType::TypeII
    }
}

pub fn run_trial(params: &SystemParams, seed: SeedSpec) -> TrialOutcome {
    run_trial_on(params, &sample_realization(params, seed))
}

/// Evaluates every scheme on a given realization.
pub fn run_trial_on(params: &SystemParams, ch: &ChannelRealization) -> TrialOutcome {
    let decisions = SchemeId::ALL.map(|s| scheme::select_served(s, params, ch));
    let outage = decisions.map(|d| d.rate < params.rs);
    let type2 = decisions.map(|d| d.utype == UserType::TypeII);

    let better = |s: SchemeId| {
        let d = decisions[s.index()];
        (d.utype == UserType::TypeII).then(|| {
            let npa = scheme::rate_for_user(SchemeId::HsicNpa, params, ch.g2, ch.h2[d.served]);
            d.rate > npa.rate
        })
    };

    TrialOutcome {
        decisions,
        outage,
        type2,
        type1_users: scheme::classify_partition(params, ch),
        hsic_better: better(SchemeId::HsicPa),
        fsic_better: better(SchemeId::FsicPa),
    }
}
