//! Monte Carlo engine.
//!
//! All three schemes are evaluated on the same channel draw in every trial
//! (common random numbers), so per-trial orderings between schemes carry over
//! exactly to the accumulated counts.

mod accumulator;
mod batch;
mod estimate;
mod trial;

pub use accumulator::{MetricAccumulator, Moments, SchemeTally};
pub use batch::{run_batch, run_batch_sequential, CHUNK_TRIALS};
pub use estimate::{estimate, mean_interval, wilson_interval, Estimate, Metric, MetricKind, Z_95};
pub use trial::{run_trial, run_trial_on, TrialOutcome};
