//! Simulation and second-order analytics for iteration-stable (STIT)
//! random tessellations.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: convex polygons/polyhedra, hyperplane splits, facets, balls.
//! - [`measure`]: translation-invariant hyperplane measures, hitting measures
//!   and hyperplane sampling.
//! - [`simulator`]: the recursive cell-division construction, restriction to
//!   sub-windows, iteration/nesting and the scaling check.
//! - [`analytic`]: closed forms and quadratures for variances, set covariances,
//!   2-energies, chord-power integrals and pair-correlation functions.
//! - [`mc`]: Monte Carlo oracles with standard errors and replicate statistics.
//! - [`checks`]: cross-validation suites that pit the simulator and the Monte
//!   Carlo oracles against the closed forms.
//! - [`cli`]: parsing of window/measure presets and the command implementations
//!   behind the `stit` binary.

// `!(x > 0.0)` rejects NaN along with nonpositive values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod checks;
pub mod cli;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod mc;
pub mod measure;
pub mod rng;
pub mod simulator;

pub use error::{Error, Result};
pub use geometry::{Ball, ConvexBody, ConvexPolytope, Facet, Point};
pub use measure::{DirectionalMeasure, Hyperplane};
pub use simulator::{mnw_construct, SimConfig, Tessellation};
