//! The recursive cell-division construction and operations on its output.

mod construct;
mod functional;
mod iterate;
mod scaling;
mod tessellation;

pub use construct::{construct, mnw_construct, MAX_DEPTH};
pub use functional::FaceFunctional;
pub use iterate::{iterate_rescale, iterate_rescale_rounds};
pub use scaling::{scaling_check, ScalingReport};
pub use tessellation::{SimConfig, Tessellation};
