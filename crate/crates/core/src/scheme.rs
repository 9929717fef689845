//! Per-realization scheme mathematics.
//!
//! Everything here is a pure function of [`SystemParams`] and the channel
//! gains of one fading realization. Rates are in bits per channel use.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::ChannelRealization;
use crate::error::Error;
use crate::params::SystemParams;

/// The three compared secondary-access schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SchemeId {
    /// Hybrid SIC, full power (benchmark).
    #[serde(rename = "HSIC-NPA")]
    HsicNpa,
    /// Hybrid SIC with power adaptation.
    #[serde(rename = "HSIC-PA")]
    HsicPa,
    /// Fixed second-stage SIC with power adaptation.
    #[serde(rename = "FSIC-PA")]
    FsicPa,
}

impl SchemeId {
    pub const ALL: [SchemeId; 3] = [SchemeId::HsicNpa, SchemeId::HsicPa, SchemeId::FsicPa];

    /// Dense index, matches the position in [`SchemeId::ALL`].
    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            SchemeId::HsicNpa => "HSIC-NPA",
            SchemeId::HsicPa => "HSIC-PA",
            SchemeId::FsicPa => "FSIC-PA",
        }
    }
}

impl fmt::Display for SchemeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SchemeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "hsicnpa" => Ok(SchemeId::HsicNpa),
            "hsicpa" => Ok(SchemeId::HsicPa),
            "fsicpa" => Ok(SchemeId::FsicPa),
            _ => Err(Error::Config {
                key: "schemes".into(),
                reason: format!("unknown scheme `{s}`"),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UserType {
    /// Received power at or below the interference threshold.
    TypeI,
    /// Received power above the interference threshold.
    TypeII,
}

/// Position of the secondary user in the SIC decoding order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SicStage {
    First,
    Second,
}

/// Rate, decoding stage and power coefficient of one candidate user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserRate {
    pub rate: f64,
    pub stage: SicStage,
    pub beta: f64,
    pub utype: UserType,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeDecision {
    /// Zero-based index into the ascending gain list; `m - 1` is the strongest user.
    pub served: usize,
    pub stage: SicStage,
    pub beta: f64,
    pub rate: f64,
    pub utype: UserType,
}

/// Largest secondary interference power at which the primary user keeps its
/// interference-free outage performance.
#[inline]
pub fn tau(params: &SystemParams, g2: f64) -> f64 {
    (params.p0 * g2 / params.eps0() - 1.0).max(0.0)
}

#[inline]
pub fn classify(params: &SystemParams, g2: f64, h2m: f64) -> UserType {
    classify_with_tau(params, tau(params, g2), h2m)
}

#[inline]
fn classify_with_tau(params: &SystemParams, tau: f64, h2m: f64) -> UserType {
    if params.ps * h2m <= tau {
        UserType::TypeI
    } else {
        UserType::TypeII
    }
}

pub fn rate_for_user(scheme: SchemeId, params: &SystemParams, g2: f64, h2m: f64) -> UserRate {
    rate_with_tau(scheme, params, g2, tau(params, g2), h2m)
}

/// Same as [`rate_for_user`] with the threshold precomputed for the realization.
#[inline]
pub(crate) fn rate_with_tau(
    scheme: SchemeId,
    params: &SystemParams,
    g2: f64,
    tau: f64,
    h2m: f64,
) -> UserRate {
    let rx = params.ps * h2m;
    if rx <= tau {
        return UserRate {
            rate: rx.ln_1p() / std::f64::consts::LN_2,
            stage: SicStage::Second,
            beta: 1.0,
            utype: UserType::TypeI,
        };
    }

    let first = UserRate {
        rate: (rx / (params.p0 * g2 + 1.0)).ln_1p() / std::f64::consts::LN_2,
        stage: SicStage::First,
        beta: 1.0,
        utype: UserType::TypeII,
    };
    // rx > tau >= 0 here, so the division is safe.
    let second = UserRate {
        rate: tau.ln_1p() / std::f64::consts::LN_2,
        stage: SicStage::Second,
        beta: power_coefficient(params.ps, h2m, tau),
        utype: UserType::TypeII,
    };

    match scheme {
        SchemeId::HsicNpa => first,
        SchemeId::FsicPa => second,
        // Equal rates go to the second stage: same rate at lower power.
        SchemeId::HsicPa => {
            if second.rate >= first.rate {
                second
            } else {
                first
            }
        }
    }
}

/// `tau / (ps h2m)`, rounded down until `beta * ps * h2m <= tau` holds in
/// floating point.
#[inline]
fn power_coefficient(ps: f64, h2m: f64, tau: f64) -> f64 {
    let mut beta = tau / (ps * h2m);
    while beta > 0.0 && beta * ps * h2m > tau {
        beta = beta.next_down();
    }
    beta
}

/// Picks the secondary user with the largest achievable rate. Ties go to the
/// larger index (stronger channel).
pub fn select_served(
    scheme: SchemeId,
    params: &SystemParams,
    ch: &ChannelRealization,
) -> SchemeDecision {
    let tau = tau(params, ch.g2);
    let mut best: Option<(usize, UserRate)> = None;
    for (i, &h2m) in ch.h2.iter().enumerate() {
        let r = rate_with_tau(scheme, params, ch.g2, tau, h2m);
        match best {
            Some((_, b)) if r.rate < b.rate => {}
            _ => best = Some((i, r)),
        }
    }
    let (served, r) = best.expect("channel realization has at least one secondary user");
    SchemeDecision {
        served,
        stage: r.stage,
        beta: r.beta,
        rate: r.rate,
        utype: r.utype,
    }
}

/// Number of type-I users in the realization. Gains are sorted, so the type-I
/// users form a prefix and a count of `k` identifies the event with exactly
/// `k` type-I users.
pub fn classify_partition(params: &SystemParams, ch: &ChannelRealization) -> usize {
    let tau = tau(params, ch.g2);
    ch.h2.partition_point(|&h| params.ps * h <= tau)
}

/// Whether the full-power hybrid benchmark can avoid an outage floor at all:
/// `(2^r0 - 1)(2^rs - 1) < 1`.
pub fn floor_condition(params: &SystemParams) -> bool {
    params.eps0() * params.eps_s() < 1.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p0: f64, ps: f64, r0: f64, rs: f64, m: usize) -> SystemParams {
        SystemParams::new(p0, ps, r0, rs, m).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn tau_examples() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);
        assert_eq!(tau(&p, 0.5), 49.0);
        assert_eq!(tau(&p, 0.005), 0.0);
        assert_eq!(tau(&p, 0.0), 0.0);
    }

    #[test]
    fn classify_examples() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);
        assert_eq!(classify(&p, 0.5, 0.2), UserType::TypeI);
        assert_eq!(classify(&p, 0.5, 1.0), UserType::TypeII);
        assert_eq!(classify(&p, 0.005, 1e-9), UserType::TypeII);
        // boundary belongs to type I
        assert_eq!(classify(&p, 0.5, 0.49), UserType::TypeI);
    }

    #[test]
    fn rate_examples() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);

        let npa = rate_for_user(SchemeId::HsicNpa, &p, 0.5, 1.0);
        assert!(close(npa.rate, (1.0 + 100.0 / 51.0f64).log2(), 1e-12));
        assert!(close(npa.rate, 1.566, 1e-3));
        assert_eq!((npa.stage, npa.beta, npa.utype), (SicStage::First, 1.0, UserType::TypeII));

        let pa = rate_for_user(SchemeId::HsicPa, &p, 0.5, 1.0);
        assert!(close(pa.rate, 50f64.log2(), 1e-12));
        assert!(close(pa.rate, 5.644, 1e-3));
        assert_eq!(pa.stage, SicStage::Second);
        assert!(close(pa.beta, 0.49, 1e-15));

        let f = rate_for_user(SchemeId::FsicPa, &p, 0.005, 1.0);
        assert_eq!((f.rate, f.stage, f.beta), (0.0, SicStage::Second, 0.0));

        let h = rate_for_user(SchemeId::HsicPa, &p, 0.005, 1.0);
        assert!(close(h.rate, (1.0 + 100.0 / 1.5f64).log2(), 1e-12));
        assert!(close(h.rate, 6.080, 1e-3));
        assert_eq!((h.stage, h.beta), (SicStage::First, 1.0));
    }

    #[test]
    fn type_one_is_shared_by_all_schemes() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);
        for s in SchemeId::ALL {
            let r = rate_for_user(s, &p, 0.5, 0.2);
            assert!(close(r.rate, 21f64.log2(), 1e-12));
            assert_eq!((r.stage, r.beta, r.utype), (SicStage::Second, 1.0, UserType::TypeI));
        }
    }

    #[test]
    fn zero_gain_user_is_type_one_with_zero_rate() {
        let p = params(100.0, 100.0, 1.0, 1.0, 1);
        let r = rate_for_user(SchemeId::FsicPa, &p, 0.0, 0.0);
        assert_eq!(r.utype, UserType::TypeI);
        assert_eq!(r.rate, 0.0);
    }

    #[test]
    fn hsic_pa_tie_prefers_second_stage() {
        // Choose h so both type-II rates coincide: rx/(p0 g2 + 1) == tau.
        let p = params(100.0, 100.0, 1.0, 1.0, 1);
        let g2 = 0.5; // tau = 49, p0 g2 + 1 = 51
        let h2m = 49.0 * 51.0 / 100.0;
        let r = rate_for_user(SchemeId::HsicPa, &p, g2, h2m);
        assert_eq!(r.stage, SicStage::Second);
        assert!(r.beta < 1.0);
    }

    #[test]
    fn select_served_examples() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);
        let ch = ChannelRealization::new(0.5, vec![0.2, 1.0]).unwrap();
        let d = select_served(SchemeId::HsicPa, &p, &ch);
        assert_eq!(d.served, 1);
        assert!(close(d.rate, 5.644, 1e-3));

        let d = select_served(SchemeId::HsicNpa, &p, &ch);
        assert_eq!(d.served, 0);
        assert!(close(d.rate, 21f64.log2(), 1e-12));
        assert_eq!(d.utype, UserType::TypeI);

        let p1 = params(100.0, 100.0, 1.0, 1.0, 1);
        let one = ChannelRealization::new(0.3, vec![0.7]).unwrap();
        for s in SchemeId::ALL {
            assert_eq!(select_served(s, &p1, &one).served, 0);
        }
    }

    #[test]
    fn ties_go_to_strongest_user() {
        // tau = 0: every FSIC-PA type-II user has rate 0.
        let p = params(100.0, 100.0, 1.0, 1.0, 3);
        let ch = ChannelRealization::new(0.001, vec![0.1, 0.5, 2.0]).unwrap();
        let d = select_served(SchemeId::FsicPa, &p, &ch);
        assert_eq!(d.served, 2);
        assert_eq!(d.rate, 0.0);
    }

    #[test]
    fn partition_examples() {
        let p = params(100.0, 100.0, 1.0, 1.0, 2);
        let ch = ChannelRealization::new(0.5, vec![0.2, 1.0]).unwrap();
        assert_eq!(classify_partition(&p, &ch), 1);
        let none = ChannelRealization::new(0.001, vec![0.2, 1.0]).unwrap();
        assert_eq!(classify_partition(&p, &none), 0);
        let all = ChannelRealization::new(5.0, vec![0.2, 1.0]).unwrap();
        assert_eq!(classify_partition(&p, &all), 2);
    }

    #[test]
    fn floor_condition_examples() {
        let p = |r0| params(10.0, 10.0, r0, 1.0, 4);
        assert!(!floor_condition(&p(1.0)));
        assert!(!floor_condition(&p(4.0)));
        assert!(floor_condition(&p(0.5)));
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in SchemeId::ALL {
            assert_eq!(s.label().parse::<SchemeId>().unwrap(), s);
        }
        assert_eq!("hsic_pa".parse::<SchemeId>().unwrap(), SchemeId::HsicPa);
        assert!("oma".parse::<SchemeId>().is_err());
    }
}
