//! Semi-analytic outage probabilities.
//!
//! Given the primary gain `x = |g|^2`, secondary gains are i.i.d. Exp(1) and
//! the served user is in outage exactly when every user is, so the outage
//! probability is `int_0^inf e^-x q(x)^M dx` with `q` the probability that a
//! single user misses the target rate. `q` has closed form on each piece of
//! the domain; the pieces meet where the interference threshold leaves zero
//! (`x = alpha0`), where it reaches `eps_s` (`x = 2^rs alpha0`), and, for the
//! full-power scheme, where the first-stage failure interval closes.

mod quadrature;

pub use quadrature::{integrate_semi_infinite, QuadResult, QuadratureSpec};

use crate::error::Result;
use crate::params::SystemParams;
use crate::scheme::{floor_condition, tau, SchemeId};

/// Exp(1) CDF, accurate for small arguments.
#[inline]
fn cdf(x: f64) -> f64 {
    -(-x).exp_m1()
}

/// `cdf(hi) - cdf(lo)` for `hi >= lo`, without cancellation.
#[inline]
fn cdf_diff(lo: f64, hi: f64) -> f64 {
    -(-lo).exp() * (lo - hi).exp_m1()
}

/// Probability that one secondary user misses the target rate given the
/// primary gain `g2`.
pub fn per_user_fail_prob(scheme: SchemeId, params: &SystemParams, g2: f64) -> f64 {
    let eps_s = params.eps_s();
    let t = tau(params, g2);
    let alpha_s = params.alpha_s();
    // Highest gain at which the first-stage rate still misses the target.
    let first_stage_edge = eps_s * (params.p0 * g2 + 1.0) / params.ps;
    match scheme {
        SchemeId::FsicPa => {
            if t >= eps_s {
                cdf(alpha_s)
            } else {
                1.0
            }
        }
        SchemeId::HsicPa => {
            if t >= eps_s {
                cdf(alpha_s)
            } else {
                cdf(first_stage_edge)
            }
        }
        SchemeId::HsicNpa => {
            let edge = t / params.ps;
            let type1 = cdf(alpha_s.min(edge));
            let type2 = if first_stage_edge > edge {
                cdf_diff(edge, first_stage_edge)
            } else {
                0.0
            };
            type1 + type2
        }
    }
}

/// Primary gains at which `per_user_fail_prob` changes form, ascending,
/// starting at zero.
pub fn kinks(scheme: SchemeId, params: &SystemParams) -> Vec<f64> {
    let alpha0 = params.alpha0();
    let mut pts = vec![0.0, alpha0, params.rs.exp2() * alpha0];
    if scheme == SchemeId::HsicNpa {
        let prod = params.eps0() * params.eps_s();
        if prod < 1.0 {
            // first-stage failure interval is empty beyond this gain
            pts.push(params.eps0() * (1.0 + params.eps_s()) / (params.p0 * (1.0 - prod)));
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Outage probability of the served secondary user under `scheme`.
pub fn outage_quadrature(
    scheme: SchemeId,
    params: &SystemParams,
    spec: &QuadratureSpec,
) -> Result<f64> {
    params.validate()?;
    let m = params.m as i32;
    let f = |x: f64| (-x).exp() * per_user_fail_prob(scheme, params, x).powi(m);
    Ok(integrate_semi_infinite(f, &kinks(scheme, params), spec)?.value)
}

/// High-SNR limit of the full-power hybrid scheme's outage with `p0, ps -> inf`
/// at the fixed coupling `ps / p0` of `params`. Zero when
/// [`floor_condition`] holds.
pub fn npa_floor(params: &SystemParams) -> f64 {
    if floor_condition(params) {
        return 0.0;
    }
    let c = params.ratio();
    let eps0 = params.eps0();
    let eps_s = params.eps_s();
    let m = params.m as i32;
    // In the limit the type-I failure interval vanishes and the type-II one
    // becomes (x / (c eps0), eps_s x / c).
    let f = |x: f64| {
        let lo = x / (c * eps0);
        let hi = eps_s * x / c;
        let q = if hi > lo { cdf_diff(lo, hi) } else { 0.0 };
        (-x).exp() * q.powi(m)
    };
    integrate_semi_infinite(f, &[0.0], &QuadratureSpec::default())
        .expect("limiting integrand is smooth")
        .value
}
