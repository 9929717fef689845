//! Cognitive-radio uplink NOMA: one primary user owns the resource block and
//! the best of `M` secondary users is admitted opportunistically without
//! degrading the primary's outage performance.
//!
//! Three admission schemes are modelled: hybrid SIC at full power
//! ([`SchemeId::HsicNpa`], the benchmark), hybrid SIC with power adaptation
//! ([`SchemeId::HsicPa`]) and fixed second-stage SIC with power adaptation
//! ([`SchemeId::FsicPa`]).
//!
//! * [`scheme`]: per-realization rates, decoding stage and power coefficient.
//! * [`channel`]: reproducible Rayleigh-fading draws.
//! * [`sim`]: Monte Carlo batches and estimates with confidence intervals.
//! * [`oracle`]: semi-analytic outage probabilities by quadrature.
//! * [`experiment`]: SNR sweeps, figure recipes and CSV output.

pub mod channel;
pub mod error;
pub mod experiment;
pub mod oracle;
pub mod params;
pub mod scheme;
pub mod sim;

pub use channel::{sample_realization, ChannelRealization, SeedSpec};
pub use error::{Error, Result};
pub use params::SystemParams;
pub use scheme::{SchemeDecision, SchemeId, SicStage, UserType};
