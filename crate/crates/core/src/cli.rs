//! Batch command-line front end. Machine output goes to stdout (or `--out`),
//! diagnostics to stderr. Exit code 0 on success, 2 on bad input, 1 on
//! internal failure.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::angular_momentum::{coupling_table, Euler, HalfInt};
use crate::entanglement::{entropy_of_entanglement, schmidt_spectrum};
use crate::error::Error;
use crate::scattering::{scatter, PhaseShiftVector};
use crate::solver::{
    entropy_scan, lambda_independence_check, solve, verify_published_solutions, ScanAxis, SolutionSet, SolverConfig,
};
use crate::states::{invariant_in_state, InStateSpec, StateJson, StateVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "spinscat", version, about = "Entanglement generated by rotationally-invariant spin scattering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every nonzero ⟨s m|μ₁ μ₂⟩ for two spins σ.
    CgcTable {
        #[arg(long, allow_hyphen_values = true)]
        sigma: HalfInt,
    },
    /// Scatter an in-state and report the out-state and its entropy.
    Scatter {
        #[arg(long, allow_hyphen_values = true)]
        sigma: HalfInt,
        /// Phases δ₀..δ_{2σ}, comma separated; δ₀ must be 0. Accepts `pi/4`, `-3pi/4`.
        #[arg(long, allow_hyphen_values = true)]
        deltas: String,
        /// State JSON: a file path, `-` for stdin, or the JSON itself.
        #[arg(long)]
        state: String,
    },
    /// Entanglement entropy and Schmidt spectrum of a state.
    Entropy {
        #[arg(long)]
        state: String,
    },
    /// All perfect-entangler phase vectors for the in-states U|λ,-λ⟩.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        sigma: HalfInt,
        /// Defaults to σ.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<HalfInt>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compare the printed closed-form systems and solutions with the computed ones.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        sigma: HalfInt,
        /// Instead compare the solution sets of every λ.
        #[arg(long)]
        lambdas: bool,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Out-state entropy of U(euler)|λ,-λ⟩ over a grid of phases.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        sigma: HalfInt,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<HalfInt>,
        /// `alpha,beta,gamma`.
        #[arg(long, allow_hyphen_values = true, default_value = "0,0,0")]
        euler: String,
        /// Phases held fixed off the scan axes; zero by default.
        #[arg(long, allow_hyphen_values = true)]
        deltas: Option<String>,
        /// `s:N` pairs, comma separated: scan δ_s over N samples.
        #[arg(long, default_value = "1:360")]
        axes: String,
    },
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Seed grid points per axis.
    #[arg(long)]
    pub grid: Option<usize>,
    /// Residual max-norm a refined point must reach.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub dedup_radius: Option<f64>,
    #[arg(long)]
    pub rank_tol: Option<f64>,
    #[arg(long)]
    pub max_iters: Option<usize>,
}

impl SolverArgs {
    pub fn config(&self) -> SolverConfig {
        let d = SolverConfig::default();
        SolverConfig {
            grid_points_per_axis: self.grid.unwrap_or(d.grid_points_per_axis),
            refine_tol: self.tol.unwrap_or(d.refine_tol),
            dedup_radius: self.dedup_radius.unwrap_or(d.dedup_radius),
            family_rank_tol: self.rank_tol.unwrap_or(d.family_rank_tol),
            max_newton_iters: self.max_iters.unwrap_or(d.max_newton_iters),
        }
    }
}

/// Failure of a command, split by exit code.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Parses one angle: a decimal, or a multiple of `pi` such as `pi`, `-pi/4`,
/// `3pi/4`, `2*pi/3`.
pub fn parse_angle(token: &str) -> CliResult<f64> {
    let t: String = token.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    let bad = || CliError::Input(format!("cannot read `{token}` as an angle"));
    let Some((coef, rest)) = t.split_once("pi") else {
        return t.parse::<f64>().map_err(|_| bad());
    };
    let coef = coef.strip_suffix('*').unwrap_or(coef);
    let factor = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let divisor = match rest {
        "" => 1.0,
        r => r.strip_prefix('/').ok_or_else(bad)?.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(factor * PI / divisor)
}

pub fn parse_angles(list: &str) -> CliResult<Vec<f64>> {
    list.split(',').map(parse_angle).collect()
}

fn parse_deltas(sigma: HalfInt, list: &str) -> CliResult<PhaseShiftVector> {
    let deltas = parse_angles(list)?;
    if deltas.first().is_some_and(|&d0| d0 != 0.0) {
        return Err(CliError::Input("the first phase δ₀ must be 0".into()));
    }
    Ok(PhaseShiftVector::new(sigma, deltas)?)
}

fn parse_euler(list: &str) -> CliResult<Euler> {
    match parse_angles(list)?.as_slice() {
        &[alpha, beta, gamma] => Ok(Euler::new(alpha, beta, gamma)),
        _ => Err(CliError::Input(format!("--euler needs three angles, got `{list}`"))),
    }
}

fn parse_axes(list: &str) -> CliResult<Vec<ScanAxis>> {
    list.split(',')
        .map(|item| {
            let bad = || CliError::Input(format!("scan axis `{item}` is not of the form s:N"));
            let (s, n) = item.trim().split_once(':').ok_or_else(bad)?;
            Ok(ScanAxis { phase: s.parse().map_err(|_| bad())?, samples: n.parse().map_err(|_| bad())? })
        })
        .collect()
}

fn read_state(source: &str) -> CliResult<StateVector> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| CliError::Internal(e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?
    };
    Ok(StateVector::from_json_str(&text)?)
}

/// 17 significant digits, `.` decimal.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string(value).map(|s| s + "\n").map_err(|e| CliError::Internal(e.to_string()))
}

#[derive(Serialize)]
struct CgcRow {
    s: HalfInt,
    m: HalfInt,
    mu1: HalfInt,
    mu2: HalfInt,
    value: f64,
}

fn cgc_table(sigma: HalfInt, format: Format) -> CliResult<String> {
    let table = coupling_table(sigma)?;
    let products = table.product_labels();
    let mut rows = Vec::new();
    for (col, &(s, m)) in table.coupled_labels().iter().enumerate() {
        for (row, &(mu1, mu2)) in products.iter().enumerate() {
            let value = table.matrix()[(row, col)];
            if value != 0.0 {
                rows.push(CgcRow { s, m, mu1, mu2, value });
            }
        }
    }
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::from("s,m,mu1,mu2,value\n");
            for r in &rows {
                writeln!(out, "{},{},{},{},{}", r.s, r.m, r.mu1, r.mu2, num(r.value)).unwrap();
            }
            Ok(out)
        }
    }
}

fn state_csv(state: &StateVector) -> String {
    let table = coupling_table(state.sigma()).expect("state spins are valid");
    let product = state.in_product_basis().expect("state converts");
    let mut out = String::from("mu1,mu2,re,im\n");
    for ((mu1, mu2), z) in table.product_labels().into_iter().zip(product.amplitudes().iter()) {
        writeln!(out, "{mu1},{mu2},{},{}", num(z.re), num(z.im)).unwrap();
    }
    out
}

#[derive(Serialize)]
struct ScatterOutput {
    state: StateJson,
    entropy_in: f64,
    entropy: f64,
}

fn scatter_cmd(sigma: HalfInt, deltas: &str, state: &str, format: Format) -> CliResult<String> {
    let delta = parse_deltas(sigma, deltas)?;
    let input = read_state(state)?;
    let out = scatter(&input, &delta)?;
    let result = ScatterOutput {
        state: out.to_json(),
        entropy_in: entropy_of_entanglement(&input)?,
        entropy: entropy_of_entanglement(&out)?,
    };
    match format {
        Format::Json => json(&result),
        Format::Csv => Ok(state_csv(&out)),
    }
}

#[derive(Serialize)]
struct EntropyOutput {
    entropy: f64,
    schmidt: Vec<f64>,
}

fn entropy_cmd(state: &str, format: Format) -> CliResult<String> {
    let state = read_state(state)?;
    let spectrum = schmidt_spectrum(&state)?;
    let result = EntropyOutput { entropy: entropy_of_entanglement(&state)?, schmidt: spectrum.values.clone() };
    match format {
        Format::Json => json(&result),
        Format::Csv => {
            let mut out = String::from("index,schmidt\n");
            for (i, p) in result.schmidt.iter().enumerate() {
                writeln!(out, "{i},{}", num(*p)).unwrap();
            }
            writeln!(out, "entropy,{}", num(result.entropy)).unwrap();
            Ok(out)
        }
    }
}

fn solution_csv(set: &SolutionSet) -> String {
    let n = set.sigma.twice() as usize;
    let mut out = String::from("kind,group,nullity,residual_max");
    for s in 0..=n {
        write!(out, ",delta{s}").unwrap();
    }
    out.push('\n');
    for (i, p) in set.points.iter().enumerate() {
        write!(out, "point,{i},{},{}", p.nullity, num(p.residual_max)).unwrap();
        p.deltas.iter().for_each(|d| write!(out, ",{}", num(*d)).unwrap());
        out.push('\n');
    }
    for (i, f) in set.families.iter().enumerate() {
        for sample in &f.samples {
            write!(out, "family,{i},{},", f.nullity).unwrap();
            sample.iter().for_each(|d| write!(out, ",{}", num(*d)).unwrap());
            out.push('\n');
        }
    }
    out
}

fn scan_cmd(
    sigma: HalfInt,
    lambda: HalfInt,
    euler: &str,
    deltas: Option<&str>,
    axes: &str,
    format: Format,
) -> CliResult<String> {
    let state = invariant_in_state(sigma, &InStateSpec { euler: parse_euler(euler)?, lambda })?;
    let base = match deltas {
        Some(list) => parse_deltas(sigma, list)?,
        None => PhaseShiftVector::zero(sigma),
    };
    let rows = entropy_scan(&state, &base, &parse_axes(axes)?)?;
    match format {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut out = String::new();
            for s in 0..=sigma.twice() {
                write!(out, "delta{s},").unwrap();
            }
            out.push_str("entropy\n");
            for row in &rows {
                row.deltas.iter().for_each(|d| write!(out, "{},", num(*d)).unwrap());
                writeln!(out, "{}", num(row.entropy)).unwrap();
            }
            Ok(out)
        }
    }
}

fn require_json(format: Format, what: &str) -> CliResult<()> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::Input(format!("{what} has no CSV form; use --format json"))),
    }
}

/// Runs one parsed command and returns its output text.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let format = cli.format;
    match &cli.command {
        Command::CgcTable { sigma } => cgc_table(*sigma, format),
        Command::Scatter { sigma, deltas, state } => scatter_cmd(*sigma, deltas, state, format),
        Command::Entropy { state } => entropy_cmd(state, format),
        Command::Solve { sigma, lambda, solver } => {
            let set = solve(*sigma, lambda.unwrap_or(*sigma), &solver.config())?;
            match format {
                Format::Json => Ok(set.to_json() + "\n"),
                Format::Csv => Ok(solution_csv(&set)),
            }
        }
        Command::Verify { sigma, lambdas, solver } => {
            require_json(format, "verify")?;
            if *lambdas {
                json(&lambda_independence_check(*sigma, &solver.config())?)
            } else {
                json(&verify_published_solutions(*sigma)?)
            }
        }
        Command::Scan { sigma, lambda, euler, deltas, axes } => {
            scan_cmd(*sigma, lambda.unwrap_or(*sigma), euler, deltas.as_deref(), axes, format)
        }
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let written = execute(&cli).and_then(|text| match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Internal(format!("{}: {e}", path.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(|e| CliError::Internal(e.to_string())),
    });
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("spinscat").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/4").unwrap(), PI / 4.0);
        assert_eq!(parse_angle("-3pi/4").unwrap(), -3.0 * PI / 4.0);
        assert_eq!(parse_angle("2*pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle(" -PI ").unwrap(), -PI);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert!(parse_angle("pi4").is_err());
        assert!(parse_angle("x").is_err());
    }

    #[test]
    fn cgc_table_rows() {
        let (code, out, _) = run_str(&["cgc-table", "--sigma", "1/2", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
        let (code, out, _) = run_str(&["cgc-table", "--sigma", "0", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1).unwrap(), "0,0,0,0,1.0000000000000000e0");
        let (code, _, err) = run_str(&["cgc-table", "--sigma", "-1"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn scatter_to_maximal() {
        let state = r#"{"sigma":"1/2","basis":"product","amplitudes":[[0,0],[1,0],[0,0],[0,0]]}"#;
        let (code, out, _) = run_str(&["scatter", "--sigma", "1/2", "--deltas", "0,pi/4", "--state", state]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!((v["entropy"].as_f64().unwrap() - 1.0).abs() < 1e-12);
        let (code, _, _) = run_str(&["scatter", "--sigma", "1/2", "--deltas", "0,pi/4", "--state", "{not json"]);
        assert_eq!(code, 2);
        let (code, _, _) = run_str(&["scatter", "--sigma", "1/2", "--deltas", "1,pi/4", "--state", state]);
        assert_eq!(code, 2);
    }

    #[test]
    fn solve_json() {
        let (code, out, _) = run_str(&["solve", "--sigma", "1/2"]);
        assert_eq!(code, 0);
        let set = SolutionSet::from_json_str(&out).unwrap();
        assert_eq!(set.points.len(), 4);
        assert_eq!(set.to_json() + "\n", out);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["solve"]).0, 2);
        assert_eq!(run_str(&["nonsense"]).0, 2);
        assert_eq!(run_str(&["verify", "--sigma", "1/2", "--format", "csv"]).0, 2);
        assert_eq!(run_str(&["--help"]).0, 0);
    }
}
