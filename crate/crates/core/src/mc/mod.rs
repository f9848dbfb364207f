//! Monte Carlo oracles and replicate statistics.
//!
//! Every estimator returns a value with its standard error and is a pure
//! function of its seed: samples are drawn in fixed-size batches whose
//! streams are derived from the seed, and batch results are merged in batch
//! order regardless of how many worker threads ran them.

mod bp;
mod covariance;
mod energy;
mod general_variance;
mod pcf_estimate;
mod plt;
mod replicate;
mod stats;

pub use bp::{bp_check, BpReport, PairFn, TestFunction};
pub use covariance::mc_covariance;
pub use energy::{mc_energy2, ENERGY_STRATA};
pub use general_variance::mc_general_variance;
pub use pcf_estimate::{estimate_pcf, estimate_pcf_segments, kernel_average, PcfBin, PcfConfig, PcfEstimate};
pub use plt::poisson_line_segments;
pub use replicate::{replicate_stats, replicate_values, ReplicateRow, ReplicateStats};
pub use stats::{mc_mean, Estimate, SampleSummary, BATCH};
