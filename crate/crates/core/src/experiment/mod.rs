//! Batch front end: sweep configuration, SNR sweeps, figure recipes and CSV rows.

mod config;
mod figures;
mod rows;
mod sweep;

pub use config::{parse_config, Overrides, SnrGrid, SweepConfig};
pub use figures::{figure, recipe_configs, RECIPES};
pub use rows::{read_csv, write_csv, Source, SweepRow};
pub use sweep::{run_oracle, run_sweep, verify, VerifyCheck, VerifyReport};
