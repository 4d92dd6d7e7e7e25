//! `fdecalc` command implementations. The binary in `main.rs` only forwards
//! `std::env::args` to [`run`], so everything here is testable in-process.

pub mod document;

use std::fmt::Write as _;
use std::panic::{self, AssertUnwindSafe};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fdecalc_core::oracle::DEFAULT_HORIZON;
use fdecalc_core::solver::{Constants, SolveError};
use fdecalc_core::{
    apply_operator, parse_equation, parse_expr, parse_initial, parse_operator, solve,
    verify_solution, Equation, ParseError, ParseErrorKind, Solution, SolveTrace,
};

pub use document::{ApplyDocument, OutputDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "fdecalc",
    version,
    about = "Solve linear constant-coefficient difference equations with the translation-operator calculus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Particular, homogeneous and (with --initial) general solution.
    Solve {
        /// e.g. "y(t+2)-5*y(t+1)+4*y(t)=3^t"
        #[arg(allow_hyphen_values = true)]
        equation: String,
        #[command(flatten)]
        opts: CommonOpts,
        /// Include the rule-by-rule trace.
        #[arg(long)]
        trace: bool,
    },
    /// Apply an operator polynomial in T to a sequence expression.
    Apply {
        /// e.g. "T^2-5*T+4"
        #[arg(allow_hyphen_values = true)]
        operator: String,
        /// e.g. "-1/2 * 3^t"
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check a candidate solution against the equation.
    Verify {
        #[arg(allow_hyphen_values = true)]
        equation: String,
        /// Candidate solution in canonical expression syntax.
        #[arg(allow_hyphen_values = true)]
        solution: String,
        #[command(flatten)]
        opts: CommonOpts,
    },
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Initial conditions, e.g. "y(0)=0, y(1)=1".
    #[arg(long)]
    pub initial: Option<String>,
    /// Verification horizon N: forward check on -N..N, iteration on t0..t0+N.
    #[arg(long, value_name = "N")]
    pub verify: Option<i64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    Parse(ParseError),
    Solve(SolveError),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(e) if e.kind == ParseErrorKind::UnsupportedRhs => EXIT_UNSUPPORTED,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Solve(SolveError::UnsupportedRhs(_)) => EXIT_UNSUPPORTED,
            CliError::Solve(_) => EXIT_PARSE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(e) => write!(f, "error: {e}"),
            CliError::Solve(e) => write!(f, "error: {e}"),
            CliError::Internal(e) => write!(f, "internal error: {e}"),
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        CliError::Solve(e)
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli.command))) {
        Ok(outcome) => outcome,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            Outcome {
                code: EXIT_INTERNAL,
                stdout: String::new(),
                stderr: format!("internal error: {msg}\n"),
            }
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    let result = match command {
        Command::Solve {
            equation,
            opts,
            trace,
        } => cmd_solve(&equation, &opts, trace).and_then(|doc| emit(&doc, opts.format)),
        Command::Apply {
            operator,
            expr,
            format,
        } => cmd_apply(&operator, &expr).and_then(|doc| emit_apply(&doc, format)),
        Command::Verify {
            equation,
            solution,
            opts,
        } => cmd_verify(&equation, &solution, &opts).and_then(|doc| emit(&doc, opts.format)),
    };
    match result {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{e}\n"),
        },
    }
}

fn load_equation(src: &str, initial: Option<&str>) -> Result<Equation, CliError> {
    let eq = parse_equation(src)?;
    match initial {
        Some(init) => Ok(eq.with_initial(parse_initial(init)?)?),
        None => Ok(eq),
    }
}

/// Solves the equation; with `--verify` the document carries the report.
pub fn cmd_solve(src: &str, opts: &CommonOpts, trace: bool) -> Result<OutputDocument, CliError> {
    let eq = load_equation(src, opts.initial.as_deref())?;
    let sol = solve(&eq)?;
    let verification = opts.verify.map(|n| verify_solution(&eq, &sol, n));
    Ok(OutputDocument::new(
        src,
        &eq,
        &sol,
        trace,
        verification.as_ref(),
    ))
}

pub fn cmd_apply(operator: &str, expr: &str) -> Result<ApplyDocument, CliError> {
    let p = parse_operator(operator)?;
    let e = parse_expr(expr)?;
    let result = apply_operator(&p, &e);
    Ok(ApplyDocument::new(operator, expr, &p, &result))
}

/// Treats `solution` as the complete sequence `y`: the forward check always
/// runs, and with `--initial` it is also compared against iteration.
pub fn cmd_verify(
    src: &str,
    solution: &str,
    opts: &CommonOpts,
) -> Result<OutputDocument, CliError> {
    let eq = load_equation(src, opts.initial.as_deref())?;
    let candidate = parse_expr(solution)?;
    let sol = Solution {
        particular: candidate,
        homogeneous_basis: Vec::new(),
        constants: eq.initial.as_ref().map(|_| Constants::Exact(Vec::new())),
        trace: SolveTrace::default(),
    };
    let horizon = opts.verify.unwrap_or(DEFAULT_HORIZON);
    let verification = verify_solution(&eq, &sol, horizon);
    Ok(OutputDocument::new(
        src,
        &eq,
        &sol,
        false,
        Some(&verification),
    ))
}

fn exit_for(doc: &OutputDocument) -> i32 {
    match &doc.verification {
        Some(v) if !v.passed => EXIT_MISMATCH,
        _ => EXIT_OK,
    }
}

fn emit(doc: &OutputDocument, format: Format) -> Result<Outcome, CliError> {
    let code = exit_for(doc);
    let stdout = match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => doc.to_text(),
    };
    let mut stderr = String::new();
    if let Some(v) = &doc.verification {
        if let Some(fail) = v.reports.iter().find(|r| !r.passed) {
            let _ = writeln!(stderr, "verification failed: {}", fail.summary);
        }
    }
    Ok(Outcome {
        code,
        stdout,
        stderr,
    })
}

fn emit_apply(doc: &ApplyDocument, format: Format) -> Result<Outcome, CliError> {
    let stdout = match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(doc).map_err(|e| CliError::Internal(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => format!("{}\n", doc.result),
    };
    Ok(Outcome {
        code: EXIT_OK,
        stdout,
        stderr: String::new(),
    })
}
