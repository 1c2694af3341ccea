//! `ksf` command-line front end.
//!
//! [`run`] parses argv, executes one subcommand and returns the exit code:
//! 0 on success, 1 when an identity expected to pass failed, 2 on usage or
//! domain errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ksf_core::beta::beta_k;
use ksf_core::furdui::{furdui_method, FurduiMethod, FurduiMethodResult};
use ksf_core::hadamard::{alpha0_solve, hadamard_k, RootResult};
use ksf_core::kfun::{gamma_k, psi_k, psi_k_m, KScale};
use ksf_core::registry::{
    catalogue, find_entry, format_sig, openproblem_scan, reports_to_csv, reports_to_json, run_entries, summary_to_text,
    GridSpec, ScanTable,
};
use ksf_core::scalar::{gauss_2f1, zeta_int};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNEXPECTED_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Significant digits in text output.
const TEXT_DIGITS: usize = 10;

#[derive(Parser, Debug)]
#[command(
    name = "ksf",
    version,
    about = "k-gamma family special functions and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at a point
    Eval(EvalArgs),
    /// Check registered identities over a grid
    Verify(VerifyArgs),
    /// Evaluate the moment integral of ψ_k by several methods
    Furdui(FurduiArgs),
    /// Solve for the superadditivity threshold α₀
    Alpha0(Alpha0Args),
    /// Tabulate g_n = f^(n+1)/(f^(n) f^(n+2)) for f(x) = x β_k(x)
    Scan(ScanArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Output {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Function {
    #[value(name = "gamma_k")]
    GammaK,
    #[value(name = "psi_k")]
    PsiK,
    #[value(name = "psi_k_m")]
    PsiKM,
    #[value(name = "beta_k")]
    BetaK,
    #[value(name = "hadamard_k")]
    HadamardK,
    #[value(name = "zeta")]
    Zeta,
    #[value(name = "2f1")]
    Hyp2F1,
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Function to evaluate
    #[arg(long = "fn", value_enum)]
    function: Function,

    /// Deformation parameter k > 0
    #[arg(long, allow_negative_numbers = true)]
    k: Option<f64>,

    /// Argument (the integer s for zeta)
    #[arg(long, allow_negative_numbers = true)]
    x: Option<f64>,

    /// Derivative order for psi_k_m
    #[arg(long)]
    m: Option<u32>,

    /// 2f1 parameter a
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,

    /// 2f1 parameter b
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,

    /// 2f1 parameter c
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,

    /// 2f1 argument z
    #[arg(long, allow_negative_numbers = true)]
    z: Option<f64>,

    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Identity id, or ALL
    #[arg(long)]
    id: String,

    /// Comma-separated k values replacing the default grid
    #[arg(long, value_delimiter = ',')]
    k_list: Option<Vec<f64>>,

    /// Comma-separated x values (in units of k) replacing the default grid
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    x_list: Option<Vec<f64>>,

    /// Tolerance overriding each identity's default
    #[arg(long)]
    tol: Option<f64>,

    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct FurduiArgs {
    /// Deformation parameter k > 0
    #[arg(long, allow_negative_numbers = true)]
    k: f64,

    /// Moment order m >= 1
    #[arg(long)]
    m: u32,

    /// Number of integrations by parts for thm34
    #[arg(long, default_value_t = 1)]
    n: u32,

    /// Comma-separated methods (oracle, thm31, thm32_printed, thm32_variant,
    /// thm33_printed, thm33_variant, thm34, eq310)
    #[arg(long, value_delimiter = ',', required = true)]
    methods: Vec<FurduiMethod>,

    /// Target accuracy
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,

    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct Alpha0Args {
    /// Deformation parameter k > 0
    #[arg(long, allow_negative_numbers = true)]
    k: f64,

    /// Root tolerance
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,

    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Deformation parameter k > 0
    #[arg(long, allow_negative_numbers = true)]
    k: f64,

    /// Highest n to tabulate (at most 4)
    #[arg(long)]
    n: u32,

    /// Left end of the x range (default 0.5k)
    #[arg(long)]
    x_lo: Option<f64>,

    /// Right end of the x range (default 5k)
    #[arg(long)]
    x_hi: Option<f64>,

    /// Number of equally spaced points
    #[arg(long, default_value_t = 10)]
    points: usize,

    #[command(flatten)]
    output: Output,
}

/// A failure that maps to an exit code.
#[derive(Debug)]
struct Failure(String);

impl From<ksf_core::Error> for Failure {
    fn from(e: ksf_core::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(format!("i/o error: {e}"))
    }
}

type Outcome = Result<i32, Failure>;

/// Parse `args` (including the program name) and run the selected command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval(a, stdout),
        Command::Verify(a) => verify(a, stdout, stderr),
        Command::Furdui(a) => furdui(a, stdout),
        Command::Alpha0(a) => alpha0(a, stdout),
        Command::Scan(a) => scan(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
    }
}

/// Send `body` to `--out` (via a temporary file renamed on success) or stdout.
fn emit(output: &Output, body: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &output.out {
        Some(path) => write_atomic(path, body.as_bytes()),
        None => {
            stdout.write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        std::fs::set_permissions(tmp.path(), std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.persist(path)
        .map_err(|e| Failure(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String, Failure> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Failure(format!("json encoding failed: {e}")))
}

fn csv_unsupported(command: &str) -> Failure {
    Failure(format!("{command}: csv output is not supported; use text or json"))
}

fn require(name: &str, v: Option<f64>) -> Result<f64, Failure> {
    v.ok_or_else(|| Failure(format!("missing required flag --{name}")))
}

fn scale(k: Option<f64>) -> Result<KScale, Failure> {
    Ok(KScale::new(require("k", k)?)?)
}

fn check_tol(tol: f64) -> Result<(), Failure> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Failure(format!("--tol must be finite and > 0, got {tol}")))
    }
}

fn sig(v: f64) -> String {
    format_sig(v, TEXT_DIGITS)
}

#[derive(Serialize)]
struct EvalRecord<'a> {
    function: &'a str,
    value: f64,
}

fn eval(a: EvalArgs, stdout: &mut dyn Write) -> Outcome {
    let x = || require("x", a.x);
    let value = match a.function {
        Function::GammaK => gamma_k(scale(a.k)?, x()?)?,
        Function::PsiK => psi_k(scale(a.k)?, x()?)?,
        Function::PsiKM => {
            let m = a.m.ok_or_else(|| Failure("missing required flag --m".into()))?;
            psi_k_m(scale(a.k)?, m, x()?)?
        }
        Function::BetaK => beta_k(scale(a.k)?, x()?)?,
        Function::HadamardK => hadamard_k(scale(a.k)?, x()?),
        Function::Zeta => {
            let s = x()?;
            if s.fract() != 0.0 || s.abs() > 1e15 {
                return Err(Failure(format!("zeta: only integer arguments are supported, got {s}")));
            }
            zeta_int(s as i64)?
        }
        Function::Hyp2F1 => {
            gauss_2f1(
                require("a", a.a)?,
                require("b", a.b)?,
                require("c", a.c)?,
                require("z", a.z)?,
            )?
            .value
        }
    };
    let name = a
        .function
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    let body = match a.output.format {
        Format::Text => format!("{}\n", sig(value)),
        Format::Json => to_json(&EvalRecord { function: &name, value })?,
        Format::Csv => format!("function,value\n{name},{value}\n"),
    };
    emit(&a.output, &body, stdout)?;
    Ok(EXIT_OK)
}

fn verify(a: VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    let entries = if a.id.eq_ignore_ascii_case("ALL") {
        catalogue()
    } else {
        vec![find_entry(&a.id)?]
    };
    if let Some(tol) = a.tol {
        check_tol(tol)?;
    }
    let mut grid = GridSpec::default();
    if let Some(ks) = a.k_list {
        grid.k_values = ks;
    }
    if let Some(xs) = a.x_list {
        grid.x_values = xs;
    }
    let summary = run_entries(&entries, &grid, a.tol)?;
    let body = match a.output.format {
        Format::Text => {
            let mut s = summary_to_text(&summary);
            if entries.len() == 1 {
                s.push('\n');
                for r in &summary.reports {
                    let _ = writeln!(
                        s,
                        "{}  {}  lhs={}  rhs={}  abs_diff={}  {}{}",
                        r.identity_id,
                        r.params_string(),
                        sig(r.lhs),
                        sig(r.rhs),
                        format_sig(r.abs_diff, 3),
                        r.verdict,
                        if r.note.is_empty() {
                            String::new()
                        } else {
                            format!("  ({})", r.note)
                        }
                    );
                }
            }
            s
        }
        Format::Json => {
            let mut s = reports_to_json(&summary.reports)?;
            s.push('\n');
            s
        }
        Format::Csv => reports_to_csv(&summary.reports)?,
    };
    emit(&a.output, &body, stdout)?;
    if a.output.format != Format::Text {
        stderr.write_all(summary_to_text(&summary).as_bytes())?;
    }
    Ok(if summary.unexpected_failures() > 0 {
        EXIT_UNEXPECTED_FAIL
    } else {
        EXIT_OK
    })
}

fn furdui(a: FurduiArgs, stdout: &mut dyn Write) -> Outcome {
    check_tol(a.tol)?;
    let k = KScale::new(a.k)?;
    let rows: Vec<FurduiMethodResult> = a
        .methods
        .iter()
        .map(|&m| furdui_method(m, k, a.m, a.n, a.tol))
        .collect::<Result<_, _>>()?;
    let body = match a.output.format {
        Format::Text => {
            let mut s = format!("{:<14}  {:>18}  {:>10}  {:>8}\n", "method", "value", "error", "terms");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:<14}  {:>18}  {:>10}  {:>8}",
                    r.method_id.id(),
                    sig(r.value),
                    format_sig(r.error_estimate, 3),
                    r.terms_or_subdivisions
                );
            }
            s
        }
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("method,value,error_estimate,terms_or_subdivisions\n");
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    r.method_id, r.value, r.error_estimate, r.terms_or_subdivisions
                );
            }
            s
        }
    };
    emit(&a.output, &body, stdout)?;
    Ok(EXIT_OK)
}

fn alpha0(a: Alpha0Args, stdout: &mut dyn Write) -> Outcome {
    check_tol(a.tol)?;
    let r: RootResult = alpha0_solve(KScale::new(a.k)?, a.tol)?;
    let body = match a.output.format {
        Format::Text => format!(
            "alpha0     {}\nresidual   {}\nbracket    [{}, {}]\niterations {}\n",
            sig(r.root),
            format_sig(r.residual, 3),
            sig(r.bracket_lo),
            sig(r.bracket_hi),
            r.iterations
        ),
        Format::Json => to_json(&r)?,
        Format::Csv => return Err(csv_unsupported("alpha0")),
    };
    emit(&a.output, &body, stdout)?;
    Ok(EXIT_OK)
}

fn scan(a: ScanArgs, stdout: &mut dyn Write) -> Outcome {
    let k = KScale::new(a.k)?;
    let lo = a.x_lo.unwrap_or(0.5 * a.k);
    let hi = a.x_hi.unwrap_or(5.0 * a.k);
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Failure(format!("scan: need 0 < x-lo < x-hi, got [{lo}, {hi}]")));
    }
    if a.points < 2 {
        return Err(Failure(format!("scan: --points must be at least 2, got {}", a.points)));
    }
    let step = (hi - lo) / (a.points - 1) as f64;
    let grid = GridSpec {
        x_values: (0..a.points).map(|i| lo + step * i as f64).collect(),
        ..GridSpec::default()
    };
    let tables: Vec<ScanTable> = openproblem_scan(k, a.n, &grid)?;
    let body = match a.output.format {
        Format::Text => {
            let mut s = String::new();
            for t in &tables {
                let _ = writeln!(s, "n = {}  {:?}", t.n, t.monotonicity);
                if let Some(x) = t.first_violation {
                    let _ = writeln!(s, "  first violation at x = {}", sig(x));
                }
                for row in &t.rows {
                    let g = row.g.map_or_else(|| "-".to_string(), sig);
                    let _ = writeln!(s, "  {:>18}  {:>18}  {}", sig(row.x), g, row.verdict);
                }
            }
            s
        }
        Format::Json => to_json(&tables)?,
        Format::Csv => {
            let mut s = String::from("n,x,g,verdict\n");
            for t in &tables {
                for row in &t.rows {
                    let g = row.g.map_or_else(String::new, |g| g.to_string());
                    let _ = writeln!(s, "{},{},{},{}", t.n, row.x, g, row.verdict);
                }
            }
            s
        }
    };
    emit(&a.output, &body, stdout)?;
    Ok(EXIT_OK)
}
