use std::path::Path;

use crate::analytic::WindowSpec;
use crate::error::{Error, Result};
use crate::geometry::ConvexPolytope;
use crate::measure::DirectionalMeasure;

/// Vertices of the polygon that stands in for a disk in simulations.
pub const DISK_RESOLUTION: usize = 256;
/// Tangent planes of the polyhedron that stands in for a 3-ball.
pub const BALL_RESOLUTION: usize = 400;

/// A window as both an analytic description and a simulation domain.
#[derive(Debug, Clone)]
pub struct WindowArg {
    pub spec: WindowSpec,
    /// Polytope used by the simulator. Balls get a polytope approximation.
    pub polytope: ConvexPolytope,
}

fn preset_value(s: &str, name: &str) -> Result<f64> {
    let v: f64 = s
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("preset `{name}` needs a number, got `{s}`")))?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidConfig(format!("preset `{name}` needs a positive size, got {v}")));
    }
    Ok(v)
}

/// Inline JSON, or the contents of the file the argument names.
fn json_source(s: &str) -> Result<String> {
    if s.trim_start().starts_with('{') {
        Ok(s.to_string())
    } else if Path::new(s).is_file() {
        Ok(std::fs::read_to_string(s)?)
    } else {
        Err(Error::InvalidConfig(format!("`{s}` is neither a preset, inline JSON nor a readable file")))
    }
}

/// `square:a`, `cube:a`, `ball2:R`, `ball3:R`, polytope JSON or a JSON file.
pub fn parse_window(s: &str) -> Result<WindowArg> {
    if let Some((name, value)) = preset(s) {
        let v = preset_value(value, name)?;
        return match name {
            "square" => Ok(WindowArg { spec: WindowSpec::cube(2, v)?, polytope: ConvexPolytope::square(v)? }),
            "cube" => Ok(WindowArg { spec: WindowSpec::cube(3, v)?, polytope: ConvexPolytope::cube(v)? }),
            "ball2" => Ok(WindowArg {
                spec: WindowSpec::ball(2, v)?,
                polytope: ConvexPolytope::ball_approximation(2, v, DISK_RESOLUTION)?,
            }),
            "ball3" => Ok(WindowArg {
                spec: WindowSpec::ball(3, v)?,
                polytope: ConvexPolytope::ball_approximation(3, v, BALL_RESOLUTION)?,
            }),
            _ => Err(Error::InvalidConfig(format!("unknown window preset `{name}` (square|cube|ball2|ball3)"))),
        };
    }
    window_json(s)
}

/// `name:value` unless the argument is JSON or an existing file.
fn preset(s: &str) -> Option<(&str, &str)> {
    if s.trim_start().starts_with('{') || Path::new(s).is_file() {
        return None;
    }
    s.split_once(':')
}

fn window_json(s: &str) -> Result<WindowArg> {
    let polytope: ConvexPolytope = serde_json::from_str(&json_source(s)?)
        .map_err(|e| Error::InvalidConfig(format!("window: {e}")))?;
    Ok(WindowArg { spec: WindowSpec::Generic(polytope.clone()), polytope })
}

/// `iso:d`, `axes:d`, measure JSON or a JSON file.
pub fn parse_measure(s: &str) -> Result<DirectionalMeasure> {
    if let Some((name, value)) = preset(s) {
        let d: usize = value
            .parse()
            .map_err(|_| Error::InvalidConfig(format!("measure preset `{name}` needs a dimension, got `{value}`")))?;
        return match name {
            "iso" => DirectionalMeasure::isotropic(d),
            "axes" => DirectionalMeasure::axes(d),
            _ => Err(Error::InvalidConfig(format!("unknown measure preset `{name}` (iso|axes)"))),
        };
    }
    serde_json::from_str(&json_source(s)?).map_err(|e| Error::InvalidConfig(format!("measure: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets() {
        let w = parse_window("square:2").unwrap();
        assert_eq!(w.polytope.volume(), 4.0);
        assert_eq!(w.spec.dim(), 2);
        let b = parse_window("ball3:1").unwrap();
        assert!((b.polytope.volume() / (4.0 * std::f64::consts::PI / 3.0) - 1.0).abs() < 0.02);
        assert!(parse_measure("iso:3").unwrap().is_isotropic());
        assert!(!parse_measure("axes:2").unwrap().is_isotropic());
    }

    #[test]
    fn json_window_and_measure() {
        let w = parse_window(r#"{"d":2,"vertices":[[0,0],[2,0],[0,2]]}"#).unwrap();
        assert!((w.polytope.volume() - 2.0).abs() < 1e-12);
        let m = parse_measure(r#"{"type":"isotropic","d":2}"#).unwrap();
        assert!(m.is_isotropic());
    }

    #[test]
    fn bad_input_names_the_problem() {
        let e = parse_window("square:-1").unwrap_err().to_string();
        assert!(e.contains("positive"), "{e}");
        let e = parse_window("hexagon:1").unwrap_err().to_string();
        assert!(e.contains("hexagon"), "{e}");
        let e = parse_measure("iso:x").unwrap_err().to_string();
        assert!(e.contains("dimension"), "{e}");
    }
}
