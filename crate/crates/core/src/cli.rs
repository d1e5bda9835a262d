//! Command-line driver: one JSON config in, one CSV or JSON document out.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::boundary::{Boundary, BoundarySpec};
use crate::bridge::{sample_euler, sample_exact, McConfig};
use crate::error::{Error, Result};
use crate::fpt::{self, DEFAULT_QUAD_POINTS};
use crate::io::{csv_document, fmt_f64};
use crate::oracle::{self, FptSimulation, DEFAULT_BINS};
use crate::pde::{self, GridSpec};
use crate::rng::{derive_seed, path_rng};

const SIMULATION_STREAM: u64 = 0x51_4D;
const PDE_ORACLE_STREAM: u64 = 0xFE_ED;

#[derive(Debug, Parser)]
#[command(name = "fptbridge", version, about = "First-passage times of Brownian motion to convex boundaries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Overrides the seed in the config.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, value_name = "N")]
    pub workers: Option<usize>,
    /// Output file (standard output if absent).
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Print the effective configuration with all defaults and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Density curve with Jensen bounds.
    Density,
    /// Distribution function on a time grid.
    Cdf,
    /// Density against its bounds, with sandwich flags.
    Bounds,
    /// Sample Bessel-bridge paths.
    Sample,
    /// Compare the bridge distribution with direct simulation.
    Validate,
    /// Solve the backward PDE and compare with Monte Carlo.
    Pde,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleMethod {
    #[default]
    Exact,
    Euler,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSettings {
    pub n_paths: usize,
    pub n_steps: usize,
}

impl Default for McSettings {
    fn default() -> Self {
        Self { n_paths: 100_000, n_steps: 256 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurveSettings {
    pub t_max: f64,
    pub n_points: usize,
}

impl Default for CurveSettings {
    fn default() -> Self {
        Self { t_max: 3.0, n_points: 30 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CdfSettings {
    pub t_max: f64,
    pub n_points: usize,
    pub n_quad: usize,
}

impl Default for CdfSettings {
    fn default() -> Self {
        Self { t_max: 3.0, n_points: 30, n_quad: DEFAULT_QUAD_POINTS }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleSettings {
    pub s: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub method: SampleMethod,
}

impl Default for SampleSettings {
    fn default() -> Self {
        Self { s: 1.0, n_paths: 3, n_steps: 100, method: SampleMethod::Exact }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateSettings {
    pub horizon: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub n_bins: usize,
    pub crossing_correction: bool,
    pub n_quad: usize,
    pub tolerance: f64,
}

impl Default for ValidateSettings {
    fn default() -> Self {
        Self {
            horizon: 3.0,
            n_paths: 100_000,
            n_steps: 3000,
            n_bins: DEFAULT_BINS,
            crossing_correction: true,
            n_quad: DEFAULT_QUAD_POINTS,
            tolerance: 0.015,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PdeSettings {
    pub s: f64,
    pub grid: GridSpec,
    /// Start levels at which `v(0, a)` is compared with Monte Carlo.
    pub check_a: Vec<f64>,
}

impl Default for PdeSettings {
    fn default() -> Self {
        Self { s: 1.0, grid: GridSpec::default(), check_a: vec![0.5, 1.0, 2.0] }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSettings {
    pub format: Format,
    pub path: Option<PathBuf>,
    /// Write a gnuplot script next to the density CSV.
    pub gnuplot: bool,
}

/// Everything a command needs; parsed from one JSON document.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub boundary: Option<BoundarySpec>,
    pub seed: Option<u64>,
    pub mc: McSettings,
    pub density: CurveSettings,
    pub cdf: CdfSettings,
    pub bounds: CurveSettings,
    pub sample: SampleSettings,
    pub validate: ValidateSettings,
    pub pde: PdeSettings,
    pub output: OutputSettings,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn boundary(&self) -> Result<Boundary> {
        let spec = self
            .boundary
            .as_ref()
            .ok_or_else(|| Error::Config("config has no \"boundary\"".into()))?;
        Boundary::from_spec(spec)
    }

    fn mc_config(&self, seed: u64) -> McConfig {
        McConfig::new(self.mc.n_paths, self.mc.n_steps, seed)
    }
}

/// A command's result: the main document plus optional companion files,
/// each written next to `--out` with the given suffix.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub main: String,
    pub companions: Vec<(String, String)>,
}

impl Output {
    fn single(main: String) -> Self {
        Self { main, companions: Vec::new() }
    }
}

/// Process exit code for an error: 2 for configuration and input
/// problems, 3 for numerical failures, 1 for I/O.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numerical(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Numerical(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn uniform_times(t_max: f64, n: usize) -> Result<Vec<f64>> {
    if !(t_max > 0.0) || !t_max.is_finite() || n < 2 {
        return Err(Error::Config(format!("need t_max > 0 and n_points >= 2, got {t_max} and {n}")));
    }
    Ok((1..=n).map(|i| t_max * i as f64 / n as f64).collect())
}

fn gnuplot_script(csv_name: &str) -> String {
    format!(
        "set datafile separator ','\n\
         set key autotitle columnhead\n\
         set xlabel 's'\n\
         set ylabel 'density'\n\
         plot '{csv_name}' using 1:2 with lines title 'density', \\\n\
         \x20    '' using 1:4 with lines dashtype 2 title 'lower', \\\n\
         \x20    '' using 1:5 with lines dashtype 2 title 'upper'\n"
    )
}

fn cmd_density(cfg: &RunConfig, seed: u64, out: Option<&Path>) -> Result<Output> {
    let b = cfg.boundary()?;
    uniform_times(cfg.density.t_max, cfg.density.n_points)?;
    let curve = fpt::density_curve(&b, cfg.density.t_max, cfg.density.n_points, &cfg.mc_config(seed))?;
    let main = match cfg.output.format {
        Format::Csv => curve.to_csv(),
        Format::Json => json(&curve)?,
    };
    let mut output = Output::single(main);
    if cfg.output.gnuplot {
        let name = out
            .and_then(|p| p.file_name())
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| "density.csv".into());
        output.companions.push((".gp".into(), gnuplot_script(&name)));
    }
    Ok(output)
}

#[derive(Serialize)]
struct CdfRow {
    t: f64,
    cdf: f64,
    stderr: f64,
}

fn cmd_cdf(cfg: &RunConfig, seed: u64) -> Result<Output> {
    let b = cfg.boundary()?;
    let times = uniform_times(cfg.cdf.t_max, cfg.cdf.n_points)?;
    let est = fpt::cdf_curve(&b, &times, &cfg.mc_config(seed), cfg.cdf.n_quad)?;
    let rows: Vec<CdfRow> = times
        .iter()
        .zip(&est)
        .map(|(t, e)| CdfRow { t: *t, cdf: e.value, stderr: e.stderr })
        .collect();
    Ok(Output::single(match cfg.output.format {
        Format::Csv => csv_document(
            &["t", "cdf", "stderr"],
            rows.iter().map(|r| vec![fmt_f64(r.t), fmt_f64(r.cdf), fmt_f64(r.stderr)]),
        ),
        Format::Json => json(&rows)?,
    }))
}

#[derive(Serialize)]
struct BoundsRow {
    s: f64,
    density: f64,
    stderr: f64,
    lower: f64,
    lower_stderr: f64,
    upper: f64,
    lower_ok: bool,
    upper_ok: bool,
}

fn cmd_bounds(cfg: &RunConfig, seed: u64) -> Result<Output> {
    let b = cfg.boundary()?;
    uniform_times(cfg.bounds.t_max, cfg.bounds.n_points)?;
    let curve = fpt::density_curve(&b, cfg.bounds.t_max, cfg.bounds.n_points, &cfg.mc_config(seed))?;
    let rows: Vec<BoundsRow> = (0..curve.times.len())
        .map(|i| {
            let d = curve.density[i];
            let joint = d.stderr.hypot(curve.lower_stderr[i]);
            BoundsRow {
                s: curve.times[i],
                density: d.value,
                stderr: d.stderr,
                lower: curve.lower[i],
                lower_stderr: curve.lower_stderr[i],
                upper: curve.upper[i],
                lower_ok: curve.lower[i] - 3.0 * joint <= d.value,
                upper_ok: d.value <= curve.upper[i] + 3.0 * d.stderr,
            }
        })
        .collect();
    Ok(Output::single(match cfg.output.format {
        Format::Csv => csv_document(
            &["s", "density", "stderr", "lower", "lower_stderr", "upper", "lower_ok", "upper_ok"],
            rows.iter().map(|r| {
                vec![
                    fmt_f64(r.s),
                    fmt_f64(r.density),
                    fmt_f64(r.stderr),
                    fmt_f64(r.lower),
                    fmt_f64(r.lower_stderr),
                    fmt_f64(r.upper),
                    r.lower_ok.to_string(),
                    r.upper_ok.to_string(),
                ]
            }),
        ),
        Format::Json => json(&rows)?,
    }))
}

#[derive(Serialize)]
struct SampledPath {
    path: usize,
    t: Vec<f64>,
    value: Vec<f64>,
}

fn cmd_sample(cfg: &RunConfig, seed: u64) -> Result<Output> {
    let b = cfg.boundary()?;
    let set = &cfg.sample;
    if set.n_paths < 1 {
        return Err(Error::Config("sample.n_paths must be at least 1".into()));
    }
    let paths = (0..set.n_paths)
        .map(|i| {
            let mut rng = path_rng(seed, i as u64);
            let grid = match set.method {
                SampleMethod::Exact => sample_exact(b.a(), set.s, set.n_steps, &mut rng)?,
                SampleMethod::Euler => sample_euler(b.a(), set.s, set.n_steps, &mut rng)?,
            };
            Ok(SampledPath { path: i, t: grid.times().collect(), value: grid.values })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Output::single(match cfg.output.format {
        Format::Csv => csv_document(
            &["path", "t", "value"],
            paths.iter().flat_map(|p| {
                p.t.iter()
                    .zip(&p.value)
                    .map(move |(t, v)| vec![p.path.to_string(), fmt_f64(*t), fmt_f64(*v)])
            }),
        ),
        Format::Json => json(&paths)?,
    }))
}

#[derive(Serialize)]
struct Verdict {
    model: &'static str,
    sup_distance: f64,
    tolerance: f64,
    pass: bool,
    n_paths: usize,
    n_steps: usize,
    n_not_hit: u64,
    bin_edges: Vec<f64>,
    empirical_cdf: Vec<f64>,
    model_cdf: Vec<f64>,
}

fn cmd_validate(cfg: &RunConfig, seed: u64) -> Result<Output> {
    let b = cfg.boundary()?;
    let set = &cfg.validate;
    let sim = FptSimulation {
        n_bins: set.n_bins,
        crossing_correction: set.crossing_correction,
        ..FptSimulation::new(set.horizon, set.n_paths, set.n_steps, derive_seed(seed, SIMULATION_STREAM))
    };
    let emp = oracle::simulate_fpt_with(&b, &sim)?;
    let (model, model_cdf) = if b.is_linear() {
        let slope = b.eval_fp(0.0)?;
        let values = emp
            .bin_edges
            .iter()
            .map(|t| oracle::linear_cdf(b.a(), slope, *t))
            .collect::<Result<Vec<_>>>()?;
        ("closed_form", values)
    } else {
        let est = fpt::cdf_curve(&b, &emp.bin_edges[1..], &cfg.mc_config(seed), set.n_quad)?;
        ("bridge", std::iter::once(0.0).chain(est.iter().map(|e| e.value)).collect())
    };
    let sup = oracle::compare_values(&emp, &model_cdf)?;
    let verdict = Verdict {
        model,
        sup_distance: sup,
        tolerance: set.tolerance,
        pass: sup < set.tolerance,
        n_paths: set.n_paths,
        n_steps: set.n_steps,
        n_not_hit: emp.n_not_hit,
        empirical_cdf: emp.cdf_at_edges(),
        bin_edges: emp.bin_edges,
        model_cdf,
    };
    let curves = csv_document(
        &["t", "empirical_cdf", "model_cdf"],
        (0..verdict.bin_edges.len()).map(|i| {
            vec![
                fmt_f64(verdict.bin_edges[i]),
                fmt_f64(verdict.empirical_cdf[i]),
                fmt_f64(verdict.model_cdf[i]),
            ]
        }),
    );
    Ok(match cfg.output.format {
        Format::Csv => Output {
            main: csv_document(
                &["metric", "value"],
                [
                    vec!["model".into(), verdict.model.into()],
                    vec!["sup_distance".into(), fmt_f64(verdict.sup_distance)],
                    vec!["tolerance".into(), fmt_f64(verdict.tolerance)],
                    vec!["verdict".into(), if verdict.pass { "pass" } else { "fail" }.into()],
                ],
            ),
            companions: vec![(".cdf.csv".into(), curves)],
        },
        Format::Json => Output::single(json(&verdict)?),
    })
}

#[derive(Serialize)]
struct OracleGap {
    a: f64,
    v0: f64,
    monte_carlo: f64,
    stderr: f64,
    gap: f64,
    relative_gap: f64,
}

#[derive(Serialize)]
struct PdeMeta {
    equation: pde::Equation,
    s: f64,
    grid: GridSpec,
    boundary: BoundarySpec,
    residual: f64,
    oracle: Vec<OracleGap>,
}

#[derive(Serialize)]
struct PdeDocument<'a> {
    meta: &'a PdeMeta,
    t_grid: &'a [f64],
    a_grid: &'a [f64],
    values: Vec<Vec<f64>>,
}

fn cmd_pde(cfg: &RunConfig, seed: u64) -> Result<Output> {
    let b = cfg.boundary()?;
    let set = &cfg.pde;
    let field = pde::solve_cauchy(&b, set.s, &set.grid)?;
    let mc = cfg.mc_config(derive_seed(seed, PDE_ORACLE_STREAM));
    let oracle = set
        .check_a
        .iter()
        .map(|&a| {
            let v0 = field.interpolate(0, a)?;
            let e = fpt::expectation_term(&b.with_start(a)?, set.s, &mc)?;
            let gap = (v0 - e.value).abs();
            Ok(OracleGap { a, v0, monte_carlo: e.value, stderr: e.stderr, gap, relative_gap: gap / e.value })
        })
        .collect::<Result<Vec<_>>>()?;
    let meta = PdeMeta {
        equation: field.equation,
        s: set.s,
        grid: set.grid,
        boundary: b.to_spec(),
        residual: pde::pde_residual(&field, &b, set.s)?,
        oracle,
    };
    Ok(match cfg.output.format {
        Format::Csv => Output { main: field.to_csv(), companions: vec![(".meta.json".into(), json(&meta)?)] },
        Format::Json => Output::single(json(&PdeDocument {
            meta: &meta,
            t_grid: &field.t_grid,
            a_grid: &field.a_grid,
            values: field.values.outer_iter().map(|r| r.to_vec()).collect(),
        })?),
    })
}

/// Runs `command` in the current thread pool.
pub fn execute(command: Command, cfg: &RunConfig, seed: u64, out: Option<&Path>) -> Result<Output> {
    match command {
        Command::Density => cmd_density(cfg, seed, out),
        Command::Cdf => cmd_cdf(cfg, seed),
        Command::Bounds => cmd_bounds(cfg, seed),
        Command::Sample => cmd_sample(cfg, seed),
        Command::Validate => cmd_validate(cfg, seed),
        Command::Pde => cmd_pde(cfg, seed),
    }
}

fn companion_path(out: &Path, suffix: &str) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn run(cli: &Cli) -> Result<()> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if let Some(out) = &cli.out {
        cfg.output.path = Some(out.clone());
    }
    if cli.print_config {
        print!("{}", json(&cfg)?);
        return Ok(());
    }
    let seed = cfg
        .seed
        .ok_or_else(|| Error::Config("no seed: set \"seed\" in the config or pass --seed".into()))?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.workers {
        if n == 0 {
            return Err(Error::Config("--workers must be at least 1".into()));
        }
        pool = pool.num_threads(n);
    }
    let pool = pool.build().map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let out = cfg.output.path.clone();
    let output = pool.install(|| execute(cli.command, &cfg, seed, out.as_deref()))?;
    match &out {
        Some(path) => {
            fs::write(path, &output.main)?;
            for (suffix, text) in &output.companions {
                fs::write(companion_path(path, suffix), text)?;
            }
        }
        None => {
            print!("{}", output.main);
            if !output.companions.is_empty() {
                eprintln!("note: companion outputs are only written with --out");
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> RunConfig {
        RunConfig::from_json(text).unwrap()
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let e = RunConfig::from_json(r#"{"seed": 1, "colour": "red"}"#).unwrap_err();
        assert_eq!(exit_code(&e), 2);
        assert!(RunConfig::from_json(r#"{"mc": {"n_path": 3}}"#).is_err());
    }

    #[test]
    fn defaults_round_trip_through_json() {
        let cfg = RunConfig::default();
        let back = RunConfig::from_json(&json(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn missing_boundary_is_a_config_error() {
        let e = execute(Command::Density, &config(r#"{"seed": 3}"#), 3, None).unwrap_err();
        assert!(matches!(e, Error::Config(_)));
    }

    #[test]
    fn linear_density_matches_closed_form() {
        let cfg = config(
            r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.5]},
                "mc": {"n_paths": 10, "n_steps": 8}, "density": {"t_max": 2.0, "n_points": 8}}"#,
        );
        let out = execute(Command::Density, &cfg, 1, None).unwrap();
        for line in out.main.lines().skip(1) {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            let want = oracle::linear_density(1.0, 0.5, cols[0]).unwrap();
            assert!((cols[1] - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn sample_writes_path_blocks() {
        let cfg = config(
            r#"{"boundary": {"kind": "polynomial", "coeffs": [1.5, 0.0, 0.1]},
                "sample": {"n_paths": 3, "n_steps": 10}}"#,
        );
        let out = execute(Command::Sample, &cfg, 9, None).unwrap();
        let rows: Vec<Vec<String>> = out.main.lines().skip(1).map(|l| l.split(',').map(String::from).collect()).collect();
        assert_eq!(rows.len(), 3 * 11);
        for p in 0..3 {
            let block = &rows[p * 11..(p + 1) * 11];
            assert!(block.iter().all(|r| r[0] == p.to_string()));
            assert_eq!(block[0][2].parse::<f64>().unwrap(), 1.5);
            assert_eq!(block[10][2].parse::<f64>().unwrap(), 0.0);
        }
    }

    #[test]
    fn bounds_flags_hold_on_the_quadratic_boundary() {
        let cfg = config(
            r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.0, 0.1]},
                "mc": {"n_paths": 4000, "n_steps": 64}, "bounds": {"t_max": 3.0, "n_points": 6}}"#,
        );
        let out = execute(Command::Bounds, &cfg, 5, None).unwrap();
        for line in out.main.lines().skip(1) {
            assert!(line.ends_with("true,true"), "{line}");
        }
    }

    #[test]
    fn validate_json_reports_a_verdict() {
        let cfg = config(
            r#"{"boundary": {"kind": "polynomial", "coeffs": [1.0, 0.5]},
                "validate": {"horizon": 2.0, "n_paths": 4000, "n_steps": 200, "n_bins": 20, "tolerance": 0.05},
                "output": {"format": "json"}}"#,
        );
        let out = execute(Command::Validate, &cfg, 11, None).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.main).unwrap();
        assert_eq!(v["model"], "closed_form");
        assert_eq!(v["pass"], true);
        assert_eq!(v["bin_edges"].as_array().unwrap().len(), 21);
    }

    #[test]
    fn gnuplot_script_names_the_csv() {
        let script = gnuplot_script("run.csv");
        assert!(script.contains("plot 'run.csv' using 1:2"));
    }

    #[test]
    fn companion_paths_append_suffixes() {
        assert_eq!(companion_path(Path::new("out/field.csv"), ".meta.json"), PathBuf::from("out/field.csv.meta.json"));
    }
}
