//! Cross-validation suites: simulation and Monte Carlo oracles against the
//! closed forms, each line reduced to a pass/fail verdict.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::analytic::{exact_variance, WindowSpec};
use crate::error::{Error, Result};
use crate::geometry::{Ball, ConvexPolytope, Point};
use crate::mc::{bp_check, mc_general_variance, replicate_values, Estimate, SampleSummary, TestFunction};
use crate::measure::DirectionalMeasure;
use crate::rng::derive_seed;
use crate::simulator::{construct, iterate_rescale, scaling_check, FaceFunctional};

/// Largest accepted |z| for statistical lines.
pub const Z_MAX: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Bp,
    Thm1,
    Stit,
    Consistency,
    Scaling,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Bp, Suite::Thm1, Suite::Stit, Suite::Consistency, Suite::Scaling];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bp => "bp",
            Suite::Thm1 => "thm1",
            Suite::Stit => "stit",
            Suite::Consistency => "consistency",
            Suite::Scaling => "scaling",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown suite `{s}` (bp|thm1|stit|consistency|scaling)")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub detail: String,
    /// Standardised difference, absent for deterministic comparisons.
    pub z: Option<f64>,
    pub passed: bool,
}

impl CheckLine {
    pub fn z(name: impl Into<String>, z: f64, detail: String) -> Self {
        CheckLine { name: name.into(), detail, z: Some(z), passed: z.abs() <= Z_MAX }
    }

    pub fn estimate(name: impl Into<String>, e: &Estimate, reference: f64) -> Self {
        let z = e.z_against(reference);
        Self::z(name, z, format!("estimate {:.6} ± {:.6}, reference {reference:.6}", e.value, e.se))
    }

    pub fn relative(name: impl Into<String>, got: f64, want: f64, tol: f64) -> Self {
        let rel = ((got - want) / want).abs();
        CheckLine {
            name: name.into(),
            detail: format!("{got:.12e} vs {want:.12e}, relative difference {rel:.2e} (tolerance {tol:.0e})"),
            z: None,
            passed: rel <= tol,
        }
    }

    pub fn flag(name: impl Into<String>, passed: bool, detail: String) -> Self {
        CheckLine { name: name.into(), detail, z: None, passed }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        match self.z {
            Some(z) => write!(f, "{verdict} {} z={z:+.3} {}", self.name, self.detail),
            None => write!(f, "{verdict} {} {}", self.name, self.detail),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub lines: Vec<CheckLine>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "[{}] {l}", self.suite.name())?;
        }
        Ok(())
    }
}

/// Sample sizes of the suites.
#[derive(Debug, Clone, Copy)]
pub struct CheckConfig {
    /// Monte Carlo samples per integral estimate.
    pub samples: usize,
    /// Simulated tessellations per arm.
    pub replicates: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 1_000_000, replicates: 2_000, seed: 1 }
    }
}

pub fn run_suite(suite: Suite, cfg: &CheckConfig) -> Result<SuiteReport> {
    let seed = derive_seed(cfg.seed, suite as u64);
    let lines = match suite {
        Suite::Bp => bp_suite(cfg.samples, seed)?,
        Suite::Thm1 => thm1_suite(cfg, seed)?,
        Suite::Stit => stit_suite(cfg.replicates, seed)?,
        Suite::Consistency => consistency_suite(cfg.replicates, seed)?,
        Suite::Scaling => scaling_suite(cfg.replicates, seed)?,
    };
    Ok(SuiteReport { suite, lines })
}

/// Mean and variance comparison of two samples.
pub fn two_sample(name: &str, a: &[f64], b: &[f64]) -> [CheckLine; 2] {
    let (sa, sb) = (SampleSummary::from_values(a), SampleSummary::from_values(b));
    [
        CheckLine::z(format!("{name} mean"), sa.mean_z(&sb), format!("{:.5} ± {:.5} vs {:.5} ± {:.5}", sa.mean, sa.se_mean, sb.mean, sb.se_mean)),
        CheckLine::z(
            format!("{name} variance"),
            sa.variance_z(&sb),
            format!("{:.5} ± {:.5} vs {:.5} ± {:.5}", sa.variance, sa.se_variance, sb.variance, sb.se_variance),
        ),
    ]
}

fn bp_suite(n: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let square = ConvexPolytope::square(1.0)?;
    let ball = Ball::centered(3, 1.0);
    let mut out = Vec::new();
    for (k, (name, g)) in [("square g=1", TestFunction::One), ("square g=exp(-|x-y|)", TestFunction::ExpDistance)].into_iter().enumerate() {
        let r = bp_check(&square, &g, n, derive_seed(seed, k as u64))?;
        out.push(bp_line(name, &r));
    }
    let r = bp_check(&ball, &TestFunction::One, n, derive_seed(seed, 2))?;
    out.push(bp_line("3-ball g=1", &r));
    Ok(out)
}

fn bp_line(name: &str, r: &crate::mc::BpReport) -> CheckLine {
    CheckLine::z(
        name,
        r.z,
        format!("lhs {:.6} ± {:.6}, rhs {:.6} ± {:.6}", r.lhs.value, r.lhs.se, r.rhs.value, r.rhs.se),
    )
}

/// Total edge length of `Y(t, W)` over independent replicates.
pub fn total_lengths(window: &ConvexPolytope, t: f64, n: usize, seed: u64) -> Result<Vec<f64>> {
    let iso = DirectionalMeasure::isotropic(window.dim())?;
    replicate_values(n, seed, |s| Ok(construct(window, &iso, t, s)?.total_surface()))
}

fn thm1_suite(cfg: &CheckConfig, seed: u64) -> Result<Vec<CheckLine>> {
    let w = ConvexPolytope::square(2.0)?;
    let spec = WindowSpec::cube(2, 2.0)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    let exact = exact_variance(&spec, 1.0)?;
    let lengths = total_lengths(&w, 1.0, cfg.replicates, derive_seed(seed, 0))?;
    let s = SampleSummary::from_values(&lengths);
    let mut out = vec![
        CheckLine::estimate("simulated mean length", &s.mean_estimate(), 4.0),
        CheckLine::estimate("simulated length variance", &s.variance_estimate(), exact),
    ];
    let one = FaceFunctional::surface_area();
    let e = mc_general_variance(&w, &iso, &one, 1.0, cfg.samples, derive_seed(seed, 1))?;
    out.push(CheckLine::estimate("triple integral, zeta=1", &e, exact));
    out.extend(zeta_halving(&w, &iso, cfg.samples, derive_seed(seed, 2))?);
    Ok(out)
}

/// Self-consistency of the triple-integral estimator for `ζ(u) = ⟨u, e₁⟩²` at
/// `N` and `2N` samples: agreement and the `√2` shrinkage of the standard error.
pub fn zeta_halving(w: &ConvexPolytope, measure: &DirectionalMeasure, n: usize, seed: u64) -> Result<[CheckLine; 2]> {
    let phi = FaceFunctional::new(1.0, |u: &Point| u.x * u.x);
    let a = mc_general_variance(w, measure, &phi, 1.0, n, derive_seed(seed, 0))?;
    let b = mc_general_variance(w, measure, &phi, 1.0, 2 * n, derive_seed(seed, 1))?;
    let ratio = a.se / b.se;
    let want = std::f64::consts::SQRT_2;
    Ok([
        CheckLine::z(
            "zeta=<u,e1>^2 at N vs 2N",
            a.z_between(&b),
            format!("{:.6} ± {:.6} vs {:.6} ± {:.6}", a.value, a.se, b.value, b.se),
        ),
        CheckLine::flag(
            "zeta=<u,e1>^2 SE ratio",
            (ratio / want - 1.0).abs() <= 0.2,
            format!("SE(N)/SE(2N) = {ratio:.4}, expected {want:.4} within 20%"),
        ),
    ])
}

fn stit_suite(n: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let w = ConvexPolytope::square(1.0)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    let iterated = replicate_values(n, derive_seed(seed, 0), |s| Ok(iterate_rescale(&w, &iso, 3.0, 2, s)?.total_surface()))?;
    let direct = total_lengths(&w, 3.0, n, derive_seed(seed, 1))?;
    Ok(two_sample("iterate_rescale(t=3,m=2) vs Y(3)", &iterated, &direct).into())
}

fn consistency_suite(n: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let big = ConvexPolytope::square(2.0)?;
    let small = ConvexPolytope::square(1.0)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    let restricted = replicate_values(n, derive_seed(seed, 0), |s| Ok(construct(&big, &iso, 1.0, s)?.restrict(&small)?.total_surface()))?;
    let direct = total_lengths(&small, 1.0, n, derive_seed(seed, 1))?;
    Ok(two_sample("restrict(Y(1,[0,2]^2)) vs Y(1,[0,1]^2)", &restricted, &direct).into())
}

fn scaling_suite(n: usize, seed: u64) -> Result<Vec<CheckLine>> {
    let spec = WindowSpec::cube(2, 1.0)?;
    let mut out = Vec::new();
    for t in [0.5, 2.0] {
        let r = 3.0;
        let lhs = exact_variance(&spec.scaled(r), t)?;
        let rhs = t.powi(-2) * exact_variance(&spec.scaled(t * r), 1.0)?;
        out.push(CheckLine::relative(format!("analytic scaling t={t}"), lhs, rhs, 1e-10));
    }
    let w = ConvexPolytope::square(1.0)?;
    let iso = DirectionalMeasure::isotropic(2)?;
    for (k, t) in [0.5, 2.0].into_iter().enumerate() {
        let rep = scaling_check(&w, &iso, t, n, derive_seed(seed, k as u64))?;
        let detail = |a: f64, b: f64| format!("Y(1,W) {a:.5}, t·Y(t,W/t) {b:.5}");
        out.push(CheckLine::z(format!("simulated scaling t={t} mean"), rep.mean_z, detail(rep.reference.mean, rep.rescaled.mean)));
        out.push(CheckLine::z(
            format!("simulated scaling t={t} variance"),
            rep.variance_z,
            detail(rep.reference.variance, rep.rescaled.variance),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn line_verdicts() {
        assert!(CheckLine::z("a", 2.9, String::new()).passed);
        assert!(!CheckLine::z("a", -3.1, String::new()).passed);
        assert!(CheckLine::relative("b", 1.0 + 1e-11, 1.0, 1e-10).passed);
        assert!(!CheckLine::relative("b", 1.1, 1.0, 1e-10).passed);
        assert!(CheckLine::z("a", 0.5, "x".into()).to_string().starts_with("PASS a z=+0.500"));
    }

    #[test]
    fn small_suites_run() {
        let cfg = CheckConfig { samples: 20_000, replicates: 200, seed: 5 };
        for s in [Suite::Bp, Suite::Scaling] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(!r.lines.is_empty());
        }
    }
}
