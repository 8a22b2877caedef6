use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use thiserror::Error;

use tmodext::closed_form::{pi_matrix, DrinfeldPair};
use tmodext::display::{matrix_latex, matrix_to_pretty};
use tmodext::io::{json_error, matrix_json, verify, ResultDoc, Workspace};
use tmodext::reduction::{
    extension_auto, extension_dual, extension_invertible, extension_triangular, split_ext0, ExtResult,
    ReductionMode,
};
use tmodext::{Error, SkewMatrix};

#[derive(Parser)]
#[command(name = "tmodext", version, about = "Extensions of Anderson t-modules over F_q[t]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Π_t on Ext¹(Φ, Ψ).
    Ext(ExtArgs),
    /// Compute Π_t and split off the part with zero constant term.
    Ext0(ExtArgs),
    /// Compute Ext¹ through the adjoint modules on the σ side.
    Dual(ExtArgs),
    /// Explicit Π_t for two Drinfeld modules.
    ClosedForm(ExtArgs),
    /// Adjoint of a matrix or module.
    Adjoint(MatrixArgs),
    /// Product of two matrices.
    Mul(MulArgs),
    /// Re-check a result file written with `--output json`.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Auto,
    Inverse,
    Triangular,
    Dual,
    ClosedForm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum Output {
    Pretty,
    Latex,
    Json,
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long)]
    input: PathBuf,
    /// Module of larger degree.
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    psi: Option<String>,
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum)]
    output: Option<Output>,
    /// Single reduction sweep, reading coefficients as the reference
    /// pseudo-code does.
    #[arg(long)]
    strict_pseudocode: bool,
    /// Include the reduction steps.
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    input: PathBuf,
    /// Name of a matrix or module.
    #[arg(long)]
    matrix: Option<String>,
    #[arg(long, value_enum)]
    output: Option<Output>,
}

#[derive(Args)]
struct MulArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    #[arg(long, value_enum)]
    output: Option<Output>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    input: PathBuf,
}

/// Defaults a definition file may carry under `"job"`.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct JobDefaults {
    phi: Option<String>,
    psi: Option<String>,
    method: Option<MethodArg>,
    output: Option<Output>,
    #[serde(default)]
    strict_pseudocode: bool,
    #[serde(default)]
    trace: bool,
    matrix: Option<String>,
    left: Option<String>,
    right: Option<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Hypothesis { .. } | Error::Unsupported(_) | Error::Ext0Inconsistent(_) => 2,
                Error::Internal(_) => 4,
                _ => 3,
            },
            CliError::Io { .. } | CliError::Usage(_) => 3,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

fn load(path: &PathBuf) -> CliResult<(Workspace, JobDefaults)> {
    let ws = Workspace::from_json(&read(path)?)?;
    let job = match &ws.job {
        Some(v) => JobDefaults::deserialize(v).map_err(|e| json_error(e, "job section"))?,
        None => JobDefaults::default(),
    };
    Ok((ws, job))
}

fn required(flag: Option<String>, default: Option<String>, name: &str) -> CliResult<String> {
    flag.or(default)
        .ok_or_else(|| CliError::Usage(format!("--{name} is required (or set it under \"job\")")))
}

fn run_ext(args: ExtArgs, forced: Option<MethodArg>, ext0: bool) -> CliResult<String> {
    let (ws, job) = load(&args.input)?;
    let phi = ws.module(&required(args.phi, job.phi, "phi")?)?.clone();
    let psi = ws.module(&required(args.psi, job.psi, "psi")?)?.clone();
    let method = forced.or(args.method).or(job.method).unwrap_or(MethodArg::Auto);
    let output = args.output.or(job.output).unwrap_or(Output::Pretty);
    let mode = if args.strict_pseudocode || job.strict_pseudocode {
        ReductionMode::SinglePass
    } else {
        ReductionMode::Fixpoint
    };
    let trace = args.trace || job.trace;
    let mut res = match method {
        MethodArg::Auto => extension_auto(&phi, &psi, mode)?,
        MethodArg::Inverse => extension_invertible(&phi, &psi, mode)?,
        MethodArg::Triangular => extension_triangular(&phi, &psi, mode)?,
        MethodArg::Dual => extension_dual(&phi, &psi, mode)?,
        MethodArg::ClosedForm => pi_matrix(&DrinfeldPair::from_modules(&phi, &psi)?)?,
    };
    if ext0 {
        res.ext0 = Some(split_ext0(&res)?);
    }
    Ok(render_result(&res, output, trace))
}

fn render_result(res: &ExtResult, output: Output, trace: bool) -> String {
    match output {
        Output::Json => ResultDoc::new(res, trace).to_json() + "\n",
        Output::Latex => {
            let mut out = String::new();
            match &res.ext0 {
                Some(split) => {
                    out.push_str(&format!("% s = {}\n", split.s));
                    out.push_str(&matrix_latex(split.pi0.t_matrix()));
                }
                None => out.push_str(&matrix_latex(res.pi.t_matrix())),
            }
            out
        }
        Output::Pretty => {
            let mut out = format!("method: {}\ndimension: {}\n", res.method, res.pi.dim());
            let order: Vec<String> = res
                .ordering
                .iter()
                .map(|g| format!("({},{},{})", g.i + 1, g.j + 1, g.k))
                .collect();
            out.push_str(&format!("ordering: {}\n", order.join(" ")));
            out.push_str(&matrix_to_pretty(res.pi.t_matrix()));
            for d in &res.discarded {
                out.push_str(&format!(
                    "discarded in column {}: entry ({}, {}) keeps {}\n",
                    d.column + 1,
                    d.i + 1,
                    d.j + 1,
                    d.terms
                ));
            }
            if let Some(split) = &res.ext0 {
                let deleted: Vec<String> = split.deleted.iter().map(|i| (i + 1).to_string()).collect();
                out.push_str(&format!("s = {}\ndeleted: {}\n", split.s, deleted.join(" ")));
                out.push_str(&matrix_to_pretty(split.pi0.t_matrix()));
            }
            if trace {
                for (col, t) in res.traces.iter().enumerate() {
                    out.push_str(&format!("column {}: {} steps\n", col + 1, t.steps.len()));
                    for s in &t.steps {
                        out.push_str(&format!(
                            "  ({}, {}) shift {} multiplier {}\n",
                            s.row + 1,
                            s.col + 1,
                            s.shift,
                            s.multiplier
                        ));
                    }
                }
            }
            out
        }
    }
}

fn render_matrix(m: &SkewMatrix, output: Output) -> String {
    match output {
        Output::Pretty => matrix_to_pretty(m),
        Output::Latex => matrix_latex(m),
        Output::Json => {
            let v = serde_json::json!({ "side": m.side(), "matrix": matrix_json(m) });
            serde_json::to_string_pretty(&v).expect("json values serialize") + "\n"
        }
    }
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::Ext(a) => run_ext(a, None, false),
        Command::Ext0(a) => run_ext(a, None, true),
        Command::Dual(a) => run_ext(a, Some(MethodArg::Dual), false),
        Command::ClosedForm(a) => run_ext(a, Some(MethodArg::ClosedForm), false),
        Command::Adjoint(a) => {
            let (ws, job) = load(&a.input)?;
            let m = ws.matrix(&required(a.matrix, job.matrix, "matrix")?)?;
            Ok(render_matrix(&m.adjoint(), a.output.or(job.output).unwrap_or(Output::Pretty)))
        }
        Command::Mul(a) => {
            let (ws, job) = load(&a.input)?;
            let l = ws.matrix(&required(a.left, job.left, "left")?)?;
            let r = ws.matrix(&required(a.right, job.right, "right")?)?;
            Ok(render_matrix(&l.mul(r)?, a.output.or(job.output).unwrap_or(Output::Pretty)))
        }
        Command::Verify(a) => {
            let doc = ResultDoc::from_json(&read(&a.input)?)?;
            let report = verify(&doc)?;
            let mut out = format!("ok: {}×{} t-module\n", report.dim, report.dim);
            if let Some(n) = report.replayed {
                out.push_str(&format!("replayed {n} columns\n"));
            }
            if report.ext0_checked {
                out.push_str("Ext0 split confirmed\n");
            }
            Ok(out)
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("TMODEXT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Ignored if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    match run(cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
