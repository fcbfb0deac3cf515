//! The `ucrga` command line: `compute`, `compare` and `check`.
//!
//! Exit codes: 0 success, 1 input or usage error, 2 strict RGA requested on a
//! singular matrix, 3 a property check failed.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::checks::{property_suite, SCALE_RANGE};
use crate::error::Error;
use crate::ginv::Tolerances;
use crate::io::{parse_csv, parse_json, to_csv};
use crate::matrix::DenseMatrix;
use crate::random::{log_uniform_scaling, seeded};
use crate::report::{Check, PropertyReport};
use crate::rga::{rga, rga_summary, scaling_invariance_residual, Method, RgaResult};
use crate::DEFAULT_MAX_ITER;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_SINGULAR: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ucrga",
    version,
    about = "Relative Gain Array with Moore-Penrose and unit-consistent generalized inverses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the RGA of a matrix
    Compute(ComputeRequest),
    /// Compare the MP-RGA and the UC-RGA of a matrix
    Compare(ComputeRequest),
    /// Run the property suite on a matrix
    Check(ComputeRequest),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    Strict,
    Mp,
    Uc,
    All,
}

impl MethodChoice {
    fn methods(self) -> Vec<Method> {
        match self {
            MethodChoice::Strict => vec![Method::Strict],
            MethodChoice::Mp => vec![Method::Mp],
            MethodChoice::Uc => vec![Method::Uc],
            MethodChoice::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
    Csv,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ComputeRequest {
    /// Matrix file (CSV or JSON)
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<InputFormat>,
    #[arg(long, value_enum, default_value_t = MethodChoice::Uc)]
    pub method: MethodChoice,
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    pub output: OutputFormat,
    /// Relative singular-value cutoff for rank and pseudoinverses
    #[arg(long, default_value = "1e-12")]
    pub rank_tol: f64,
    /// Balancer stopping tolerance
    #[arg(long, default_value = "1e-15")]
    pub balance_tol: f64,
    /// Balancer iteration cap
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    /// Seed for the randomized scalings and permutations
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Decimal places in table output
    #[arg(long, default_value_t = 4)]
    pub digits: usize,
}

impl ComputeRequest {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            rank_tol: self.rank_tol,
            balance_tol: self.balance_tol,
            max_iter: self.max_iter,
        }
    }

    fn input_format(&self) -> InputFormat {
        self.format.unwrap_or_else(|| infer_format(&self.input))
    }
}

fn infer_format(path: &Path) -> InputFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => InputFormat::Json,
        _ => InputFormat::Csv,
    }
}

/// Machine-readable report for one RGA variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RgaReport {
    pub method: Method,
    pub shape: [usize; 2],
    pub rank: usize,
    pub rga: DenseMatrix,
    pub row_sums: Vec<f64>,
    pub col_sums: Vec<f64>,
    pub element_sum: f64,
    pub balancer_converged: bool,
    pub checks: Vec<Check>,
}

impl RgaReport {
    pub fn new(result: &RgaResult, report: PropertyReport) -> Self {
        let (m, n) = result.rga.shape();
        Self {
            method: result.method,
            shape: [m, n],
            rank: result.numerical_rank,
            rga: result.rga.clone(),
            row_sums: result.row_sums.clone(),
            col_sums: result.col_sums.clone(),
            element_sum: result.element_sum,
            balancer_converged: result.balancer_converged,
            checks: report.checks,
        }
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingResiduals {
    pub mp: f64,
    pub uc: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub reports: Vec<RgaReport>,
    /// Largest absolute elementwise difference between the MP-RGA and the UC-RGA.
    pub max_abs_difference: f64,
    pub scaling_invariance: ScalingResiduals,
    pub seed: u64,
}

enum Failure {
    Input(String),
    Singular(String),
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::Singular(_) => EXIT_SINGULAR,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Singular(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Singular { .. } | Error::NotSquare { .. } => Failure::Singular(format!(
                "{e}\nhint: rerun with `--method uc` (or `--method mp`)"
            )),
            other => Failure::Input(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };

    let outcome = match &cli.command {
        Command::Compute(req) => cmd_compute(req, err),
        Command::Compare(req) => cmd_compare(req, err),
        Command::Check(req) => cmd_check(req, err),
    };
    match outcome {
        Ok((text, code)) => {
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.exit_code()
        }
    }
}

fn load(req: &ComputeRequest) -> Result<DenseMatrix, Failure> {
    for (name, v) in [("rank-tol", req.rank_tol), ("balance-tol", req.balance_tol)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Failure::Input(format!(
                "--{name} must be positive, got {v}"
            )));
        }
    }
    if req.max_iter == 0 {
        return Err(Failure::Input("--max-iter must be positive".into()));
    }
    let text = std::fs::read_to_string(&req.input)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", req.input.display())))?;
    let parsed = match req.input_format() {
        InputFormat::Csv => parse_csv(&text),
        InputFormat::Json => parse_json(&text),
    };
    parsed.map_err(|e| Failure::Input(format!("{}: {e}", req.input.display())))
}

fn warn_unconverged(result: &RgaResult, max_iter: usize, err: &mut dyn Write) {
    if !result.balancer_converged {
        let _ = writeln!(
            err,
            "warning: balancer did not converge within {max_iter} iterations; result may be inaccurate"
        );
    }
}

/// Computes the requested variants. With `--method all`, a strict RGA that
/// cannot be formed is skipped with a warning instead of failing the run.
fn compute_all(
    req: &ComputeRequest,
    err: &mut dyn Write,
    mut each: impl FnMut(Method) -> crate::Result<(RgaResult, PropertyReport)>,
) -> Result<Vec<RgaReport>, Failure> {
    let mut reports = Vec::new();
    for method in req.method.methods() {
        match each(method) {
            Ok((result, report)) => {
                warn_unconverged(&result, req.max_iter, err);
                reports.push(RgaReport::new(&result, report));
            }
            Err(e @ (Error::Singular { .. } | Error::NotSquare { .. }))
                if req.method == MethodChoice::All =>
            {
                let _ = writeln!(err, "warning: strict RGA skipped: {e}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(reports)
}

fn cmd_compute(req: &ComputeRequest, err: &mut dyn Write) -> Result<(String, i32), Failure> {
    let g = load(req)?;
    let tol = req.tolerances();
    let reports = compute_all(req, err, |method| {
        let result = rga(&g, method, &tol)?;
        let summary = rga_summary(&result);
        Ok((result, summary))
    })?;
    Ok((render_reports(&reports, req), EXIT_OK))
}

fn cmd_check(req: &ComputeRequest, err: &mut dyn Write) -> Result<(String, i32), Failure> {
    let g = load(req)?;
    let tol = req.tolerances();
    let reports = compute_all(req, err, |method| {
        property_suite(&g, method, &tol, req.seed)
    })?;
    let passed = reports.iter().all(RgaReport::passed);
    let mut text = render_reports(&reports, req);
    if req.output == OutputFormat::Table {
        let _ = writeln!(text, "result: {}", if passed { "PASS" } else { "FAIL" });
    }
    let code = if passed { EXIT_OK } else { EXIT_CHECK_FAILED };
    Ok((text, code))
}

fn cmd_compare(req: &ComputeRequest, err: &mut dyn Write) -> Result<(String, i32), Failure> {
    let g = load(req)?;
    let tol = req.tolerances();
    let mp = rga(&g, Method::Mp, &tol)?;
    let uc = rga(&g, Method::Uc, &tol)?;
    warn_unconverged(&uc, req.max_iter, err);

    let mut rng = seeded(req.seed);
    let (lo, hi) = SCALE_RANGE;
    let d = log_uniform_scaling(g.rows(), lo, hi, &mut rng);
    let e = log_uniform_scaling(g.cols(), lo, hi, &mut rng);
    let scaling = ScalingResiduals {
        mp: scaling_invariance_residual(&g, &d, &e, Method::Mp, &tol)?,
        uc: scaling_invariance_residual(&g, &d, &e, Method::Uc, &tol)?,
    };
    let report = CompareReport {
        max_abs_difference: mp.rga.max_abs_diff(&uc.rga)?,
        reports: vec![
            RgaReport::new(&mp, rga_summary(&mp)),
            RgaReport::new(&uc, rga_summary(&uc)),
        ],
        scaling_invariance: scaling,
        seed: req.seed,
    };

    let text = match req.output {
        OutputFormat::Json => json_line(&report),
        OutputFormat::Csv => render_csv(&report.reports),
        OutputFormat::Table => {
            let mut t = render_tables(&report.reports, req.digits);
            let _ = writeln!(t, "max |mp - uc|: {:e}", report.max_abs_difference);
            let _ = writeln!(
                t,
                "scaling-invariance residual (seed {}): mp {:e}, uc {:e}",
                req.seed, scaling.mp, scaling.uc
            );
            t
        }
    };
    Ok((text, EXIT_OK))
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("reports contain only finite numbers");
    s.push('\n');
    s
}

fn render_reports(reports: &[RgaReport], req: &ComputeRequest) -> String {
    match req.output {
        OutputFormat::Json if reports.len() == 1 => json_line(&reports[0]),
        OutputFormat::Json => json_line(&reports),
        OutputFormat::Csv => render_csv(reports),
        OutputFormat::Table => render_tables(reports, req.digits),
    }
}

/// A single matrix prints as bare CSV; several are each preceded by a
/// `# method=...` line and separated by blank lines.
fn render_csv(reports: &[RgaReport]) -> String {
    if let [only] = reports {
        return to_csv(&only.rga);
    }
    reports
        .iter()
        .map(|r| format!("# method={}\n{}", r.method, to_csv(&r.rga)))
        .collect::<Vec<_>>()
        .join("\n")
}

fn fmt_num(x: f64, digits: usize) -> String {
    let s = format!("{x:.digits$}");
    // avoid printing "-0.0000"
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn fmt_vec(xs: &[f64], digits: usize) -> String {
    xs.iter()
        .map(|&x| fmt_num(x, digits))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_tables(reports: &[RgaReport], digits: usize) -> String {
    let mut t = String::new();
    for (k, r) in reports.iter().enumerate() {
        if k > 0 {
            t.push('\n');
        }
        let width = digits + 6;
        let _ = writeln!(t, "method: {}", r.method);
        let _ = writeln!(t, "shape: {}x{}", r.shape[0], r.shape[1]);
        let _ = writeln!(t, "rank: {}", r.rank);
        let _ = writeln!(t, "balancer converged: {}", r.balancer_converged);
        let _ = writeln!(t, "rga:");
        for row in r.rga.iter_rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|&x| format!("{:>width$}", fmt_num(x, digits)))
                .collect();
            let _ = writeln!(t, "  {}", cells.join(" "));
        }
        let _ = writeln!(t, "row sums: {}", fmt_vec(&r.row_sums, digits));
        let _ = writeln!(t, "col sums: {}", fmt_vec(&r.col_sums, digits));
        let _ = writeln!(t, "element sum: {}", fmt_num(r.element_sum, digits));
        let _ = writeln!(t, "checks:");
        for c in &r.checks {
            let tag = match (c.passed, c.informational) {
                (true, _) => "pass",
                (false, true) => "info",
                (false, false) => "FAIL",
            };
            let _ = writeln!(
                t,
                "  [{tag}] {} = {:.3e} (threshold {:e})",
                c.name, c.value, c.threshold
            );
        }
    }
    t
}
