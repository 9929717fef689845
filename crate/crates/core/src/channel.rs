//! Rayleigh-fading channel realizations with per-trial random streams.
//!
//! Every trial owns its own ChaCha stream, keyed by the master seed and
//! selected by the trial index, so a realization never depends on which
//! worker drew it or in what order.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::params::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self {
            master_seed,
            trial_index,
        }
    }

    /// The generator for this trial.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.trial_index);
        rng
    }
}

/// Squared channel gains of one transmission period.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Primary user gain `|g|^2`.
    pub g2: f64,
    /// Secondary user gains `|h_m|^2`, ascending.
    pub h2: Vec<f64>,
}

impl ChannelRealization {
    /// Validating constructor; `h2` must already be sorted ascending.
    pub fn new(g2: f64, h2: Vec<f64>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParam {
            name: "channel",
            reason: reason.into(),
        };
        if h2.is_empty() {
            return Err(bad("no secondary users"));
        }
        let non_negative = |x: f64| x >= 0.0;
        if !non_negative(g2) || !h2.iter().all(|&h| non_negative(h)) {
            return Err(bad("gains must be non-negative"));
        }
        if h2.windows(2).any(|w| w[0] > w[1]) {
            return Err(bad("secondary gains must be sorted ascending"));
        }
        Ok(Self { g2, h2 })
    }

    pub fn m(&self) -> usize {
        self.h2.len()
    }
}

/// Unit-mean exponential variate by inversion.
#[inline]
pub fn exp1<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // gen::<f64>() is in [0, 1), so 1 - u is in (0, 1].
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

pub fn sample_realization(params: &SystemParams, seed: SeedSpec) -> ChannelRealization {
    let mut rng = seed.rng();
    let g2 = exp1(&mut rng);
    let mut h2: Vec<f64> = (0..params.m).map(|_| exp1(&mut rng)).collect();
    h2.sort_unstable_by(f64::total_cmp);
    ChannelRealization { g2, h2 }
}
