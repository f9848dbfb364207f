//! Command implementations behind the `stit` binary.
//!
//! Exit codes: 0 success, 1 statistical check failure, 2 usage or input error.

mod presets;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub use presets::{parse_measure, parse_window, WindowArg, BALL_RESOLUTION, DISK_RESOLUTION};

use crate::analytic::{
    asymptotic_variance, energy2, exact_variance, pcf, variance_ball3d_closed, write_comparison_csv, PcfModel, WindowSpec,
};
use crate::checks::{run_suite, CheckConfig, Suite};
use crate::error::{Error, Result};
use crate::mc::{estimate_pcf, PcfConfig, ReplicateRow, ReplicateStats, SampleSummary};
use crate::simulator::{FaceFunctional, SimConfig, Tessellation};

pub const VERSION: &str = concat!("stit ", env!("CARGO_PKG_VERSION"));

pub const EXIT_OK: i32 = 0;
pub const EXIT_STATISTICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "stit", version, about = "STIT tessellation simulation and second-order analytics")]
pub struct Cli {
    /// Worker threads (default: available parallelism). Output does not depend on it.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate replicates and write one JSON file each plus summary.csv.
    Simulate(SimulateArgs),
    /// Exact, closed-form and asymptotic variances of the total surface area.
    Exact(ExactArgs),
    /// STIT and Poisson pair-correlation curves, optionally with an estimate.
    Pcf(PcfArgs),
    /// Run cross-validation suites.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// square:a, cube:a, ball2:R, ball3:R, or polytope JSON (inline or file)
    #[arg(long)]
    pub window: String,
    /// iso:d, axes:d, or measure JSON (inline or file)
    #[arg(long)]
    pub measure: String,
    #[arg(long)]
    pub t: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub replicates: usize,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub window: String,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Expected dimension of the window.
    #[arg(long)]
    pub d: Option<usize>,
    /// Window scale factors R (comma separated); each row uses R·W.
    #[arg(long = "R", alias = "r", value_delimiter = ',', default_values_t = vec![1.0])]
    pub scales: Vec<f64>,
    /// Also print the 2-energy of the window.
    #[arg(long)]
    pub energy2: bool,
    /// Accepted for uniformity; the analytic values are deterministic.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct PcfArgs {
    #[arg(long, default_value_t = 2)]
    pub d: usize,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 5.0)]
    pub rmax: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Output CSV (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory of simulated replicates (from `simulate`) to estimate from.
    #[arg(long)]
    pub empirical: Option<PathBuf>,
    /// Kernel half-width for the estimate (default 0.05/t).
    #[arg(long)]
    pub bandwidth: Option<f64>,
    /// Point pairs sampled per replicate.
    #[arg(long, default_value_t = 20_000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// bp, thm1, stit, consistency, scaling or all; repeatable.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub suite: Vec<String>,
    /// Monte Carlo samples per integral.
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Simulated replicates per arm.
    #[arg(long, default_value_t = 2_000)]
    pub replicates: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = io::stdout();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn execute<W: Write + Send>(cli: &Cli, out: &mut W) -> Result<i32> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::InvalidConfig("--jobs must be positive".into()));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::Simulate(a) => simulate(a, out),
        Command::Exact(a) => exact(a, out),
        Command::Pcf(a) => pcf_command(a, out),
        Command::Check(a) => check(a, out),
    })
}

fn header<W: Write>(out: &mut W, fields: &[(&str, String)]) -> io::Result<()> {
    for (k, v) in fields {
        writeln!(out, "# {k}: {v}")?;
    }
    writeln!(out, "# version: {VERSION}")
}

pub fn simulate<W: Write>(a: &SimulateArgs, out: &mut W) -> Result<i32> {
    let window = parse_window(&a.window)?;
    let measure = parse_measure(&a.measure)?;
    let cfg = SimConfig::new(window.polytope, measure, a.t, a.seed, a.replicates)?;
    fs::create_dir_all(&a.out)?;
    let phi = FaceFunctional::surface_area();
    let rows: Vec<ReplicateRow> = (0..cfg.replicates)
        .into_par_iter()
        .map(|i| {
            let y = cfg.replicate(i)?;
            let path = a.out.join(format!("replicate_{i:05}.json"));
            fs::write(&path, serde_json::to_string(&y)?)?;
            Ok(ReplicateRow {
                seed: cfg.replicate_seed(i),
                facets: y.facets.len(),
                total_surface: y.total_surface(),
                cells: y.cells.len(),
                sigma: y.sigma_phi(&phi),
            })
        })
        .collect::<Result<_>>()?;
    let values: Vec<f64> = rows.iter().map(|r| r.total_surface).collect();
    let stats = ReplicateStats { summary: SampleSummary::from_values(&values), rows };
    let mut csv = Vec::new();
    header(
        &mut csv,
        &[
            ("window", a.window.clone()),
            ("measure", a.measure.clone()),
            ("t", a.t.to_string()),
            ("replicates", a.replicates.to_string()),
            ("seed", a.seed.to_string()),
        ],
    )?;
    stats.write_csv(&mut csv)?;
    fs::write(a.out.join("summary.csv"), csv)?;
    let s = stats.summary;
    writeln!(
        out,
        "{} replicates written to {}; total surface mean {:.6} ± {:.6}, variance {:.6} ± {:.6}",
        a.replicates,
        a.out.display(),
        s.mean,
        s.se_mean,
        s.variance,
        s.se_variance
    )?;
    Ok(EXIT_OK)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| format!("{x:.10e}"))
}

pub fn exact<W: Write>(a: &ExactArgs, out: &mut W) -> Result<i32> {
    let window = parse_window(&a.window)?;
    let spec = window.spec;
    let d = spec.dim();
    if let Some(want) = a.d {
        if want != d {
            return Err(Error::DimensionMismatch { expected: want, found: d });
        }
    }
    if a.energy2 && d == 2 {
        return Err(Error::Divergent(
            "refusing to compute E2 for a planar window: the integral ∫∫‖x-y‖^-2 dx dy diverges when d = 2".into(),
        ));
    }
    header(out, &[("window", a.window.clone()), ("t", a.t.to_string()), ("d", d.to_string()), ("seed", a.seed.to_string())])?;
    writeln!(out, "window,t,R,exact,closed,asymptotic,exact_over_asymptotic,closed_over_exact")?;
    for &r in &a.scales {
        if !(r > 0.0) {
            return Err(Error::InvalidConfig(format!("scale R must be positive, got {r}")));
        }
        let w = spec.scaled(r);
        let ex = exact_variance(&w, a.t)?;
        let closed = match w {
            WindowSpec::Ball { d: 3, radius } => Some(variance_ball3d_closed(a.t, radius)?),
            _ => None,
        };
        let asym = asymptotic_variance(&spec, r, a.t)?;
        let ratio = (asym > 0.0).then(|| ex / asym);
        writeln!(
            out,
            "{},{},{},{:.10e},{},{},{},{}",
            a.window,
            a.t,
            r,
            ex,
            fmt_opt(closed),
            if asym > 0.0 { format!("{asym:.10e}") } else { "NA".into() },
            fmt_opt(ratio),
            fmt_opt(closed.map(|c| c / ex)),
        )?;
    }
    if a.energy2 {
        writeln!(out, "# E2: {:.12e}", energy2(&spec)?)?;
    }
    Ok(EXIT_OK)
}

/// Loads every `*.json` tessellation of a directory, in file-name order.
pub fn load_replicates(dir: &Path) -> Result<Vec<Tessellation>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| Ok(serde_json::from_str(&fs::read_to_string(p)?)?)).collect()
}

pub fn pcf_command<W: Write>(a: &PcfArgs, out: &mut W) -> Result<i32> {
    let mut buf = Vec::new();
    let fields = vec![
        ("d", a.d.to_string()),
        ("t", a.t.to_string()),
        ("rmax", a.rmax.to_string()),
        ("steps", a.steps.to_string()),
        ("seed", a.seed.to_string()),
    ];
    match &a.empirical {
        None => {
            header(&mut buf, &fields)?;
            write_comparison_csv(&mut buf, a.t, a.d, a.rmax, a.steps)?;
        }
        Some(dir) => {
            let reps = load_replicates(dir)?;
            let first = reps.first().ok_or_else(|| Error::InvalidConfig(format!("no replicates in {}", dir.display())))?;
            let (t, d) = (first.time, first.dim());
            if d != a.d || t != a.t {
                return Err(Error::InvalidConfig(format!("replicates have d = {d}, t = {t}; flags say d = {}, t = {}", a.d, a.t)));
            }
            let spec = WindowSpec::Generic(first.window.clone());
            let r: Vec<f64> = (1..=a.steps).map(|k| a.rmax * k as f64 / a.steps as f64).collect();
            let mut cfg = PcfConfig::new(r, t, a.pairs);
            if let Some(h) = a.bandwidth {
                cfg.bandwidth = h;
            }
            let est = estimate_pcf(&reps, &spec, &cfg, a.seed)?;
            let mut fields = fields;
            fields.push(("replicates", reps.len().to_string()));
            fields.push(("bandwidth", cfg.bandwidth.to_string()));
            fields.push(("pairs", a.pairs.to_string()));
            header(&mut buf, &fields)?;
            writeln!(buf, "r,g_stit,g_pht,g_hat,se")?;
            for b in &est.bins {
                writeln!(
                    buf,
                    "{:.10e},{:.15e},{:.15e},{},{}",
                    b.r,
                    pcf(PcfModel::Stit, b.r, t, d)?,
                    pcf(PcfModel::Pht, b.r, t, d)?,
                    fmt_opt(b.g),
                    fmt_opt(b.se)
                )?;
            }
        }
    }
    match &a.out {
        Some(p) => fs::write(p, buf)?,
        None => out.write_all(&buf)?,
    }
    Ok(EXIT_OK)
}

pub fn check<W: Write>(a: &CheckArgs, out: &mut W) -> Result<i32> {
    let suites: Vec<Suite> = if a.suite.iter().any(|s| s == "all") {
        Suite::ALL.to_vec()
    } else {
        a.suite.iter().map(|s| s.parse()).collect::<Result<_>>()?
    };
    let cfg = CheckConfig { samples: a.samples, replicates: a.replicates, seed: a.seed };
    let mut ok = true;
    for s in suites {
        let report = run_suite(s, &cfg)?;
        write!(out, "{report}")?;
        ok &= report.passed();
    }
    writeln!(out, "{}", if ok { "all checks passed" } else { "some checks FAILED" })?;
    Ok(if ok { EXIT_OK } else { EXIT_STATISTICAL })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (Result<i32>, String) {
        let cli = Cli::try_parse_from(std::iter::once("stit").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = execute(&cli, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn exact_ball3_prints_both() {
        let (code, s) = run_to_string(&["exact", "--window", "ball3:1", "--t", "1"]);
        assert_eq!(code.unwrap(), 0);
        let row = s.lines().find(|l| l.starts_with("ball3:1")).unwrap();
        let cols: Vec<&str> = row.split(',').collect();
        let (ex, cl): (f64, f64) = (cols[3].parse().unwrap(), cols[4].parse().unwrap());
        assert!((ex / cl - 1.0).abs() < 1e-6);
    }

    #[test]
    fn energy2_refused_in_plane() {
        let (code, _) = run_to_string(&["exact", "--window", "square:1", "--energy2"]);
        let e = code.unwrap_err().to_string();
        assert!(e.contains("diverges"), "{e}");
    }

    #[test]
    fn bad_t_is_usage_error() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().to_str().unwrap();
        let code = run(["stit", "simulate", "--window", "square:1", "--measure", "iso:2", "--t", "0", "--out", out]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(run(["stit", "frobnicate"]), EXIT_USAGE);
    }
}
