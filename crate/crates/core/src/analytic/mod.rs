//! Closed forms and quadratures for second-order characteristics of
//! isotropic STIT tessellations.

mod pcf;
pub mod quadrature;
mod variance;
mod window;

pub use pcf::{pcf, write_comparison_csv, PcfCurve, PcfModel};
pub use variance::{
    asymptotic_variance, chord_power_ball, energy2, energy2_ball, exact_variance, variance_ball3d_closed,
    variance_via_pcf, RADIAL_TOL,
};
pub use window::{isotropized_covariance, WindowSpec};
