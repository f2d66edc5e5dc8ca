//! Command line front end: term language, session configuration and commands.

pub mod commands;
pub mod eval;
pub mod lexer;
pub mod parser;

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::instances::{GroupElement, GroupInstance, ResidueInstance};
pub use eval::{infer, Env, Sort, Value};
pub use parser::{parse_expr, parse_list, CmpOp, Expr};

pub const SCHEMA: &str = "1";
pub const CONFIG_ENV: &str = "SIGMAFORGE_CONFIG";

/// Parses `text` as a term of the given sort.
pub fn parse(text: &str, sort: Sort) -> Result<Expr> {
    let e = parse_expr(text)?;
    let s = infer(&e)?;
    if !eval::fits(s, sort) {
        return Err(Error::Sort(format!(
            "{} has sort {}, expected {}",
            e,
            s.name(),
            sort.name()
        )));
    }
    Ok(e)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Text,
    Json,
}

/// Settings shared by every command. File values are overridden by flags.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionConfig {
    pub residue: Option<String>,
    pub group: Option<String>,
    pub precision: Option<String>,
    pub output: Option<OutputMode>,
    pub trace: Option<bool>,
}

impl SessionConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {}", path.display(), e)))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "sigmaforge",
    version,
    about = "Exact computations in valued difference fields"
)]
pub struct Cli {
    /// Residue difference field: Q-id, shiftQ or shiftQ-inv
    #[arg(long, global = true)]
    pub residue: Option<String>,
    /// Value group: Z-trivial, Z-double, Zhalf-double, Zxi-omega or Laurent-omega
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Default precision for series inversion and lifting
    #[arg(long, global = true)]
    pub precision: Option<String>,
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, value_enum, global = true)]
    pub output: Option<OutputMode>,
    /// Include per-iteration diagnostics
    #[arg(long, global = true)]
    pub trace: bool,
    /// JSON session file; defaults to $SIGMAFORGE_CONFIG
    #[arg(long, global = true)]
    pub config: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a term
    Eval {
        expr: String,
        /// Read the term at this sort: k, vf, poly, gamma or rv
        #[arg(long)]
        sort: Option<String>,
    },
    /// Taylor coefficients p_J, optionally evaluated at a point
    Taylor {
        #[arg(long)]
        poly: String,
        /// Multi-index such as "1,0,2"
        #[arg(long)]
        index: Option<String>,
        #[arg(long)]
        at: Option<String>,
    },
    /// Change of variables S(p), or the coefficient shift p^(σ^l)
    Shift {
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        coeff: Option<i64>,
    },
    /// Complexity triple
    Complexity {
        #[arg(long)]
        poly: String,
    },
    /// σ-henselian configuration and γ(p, a)
    Config {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
    },
    /// Lift an approximate root
    Lift {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: String,
        #[arg(long)]
        target: Option<String>,
        #[arg(long)]
        max_iter: Option<usize>,
        /// Stop once v(p(b)) reaches the target
        #[arg(long)]
        residual: bool,
    },
    /// Leading term ⟨ac ; v⟩
    Rv {
        #[arg(long)]
        at: String,
    },
    /// Well-defined RV sum
    Oplus {
        #[arg(required = true)]
        terms: Vec<String>,
    },
    /// Solve 1 + α_0 z + ... + α_n σ^n(z) = 0 in the residue field
    Linsolve {
        #[arg(required = true, allow_hyphen_values = true)]
        alphas: Vec<String>,
    },
    /// λ-functions of y over xs
    Lambda {
        /// Comma-separated elements
        #[arg(long)]
        xs: String,
        #[arg(long)]
        y: String,
    },
    /// Approximate σ-preimages, or solve σ(b) - εb = a
    Density {
        #[arg(long)]
        at: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        eps: Option<String>,
        #[arg(long)]
        target: Option<String>,
    },
    /// Pseudo-Cauchy evidence for a finite prefix
    Pc {
        /// One element of the prefix; repeat in order
        #[arg(long = "term", required = true)]
        terms: Vec<String>,
        #[arg(long = "poly")]
        polys: Vec<String>,
        #[arg(long = "limit")]
        limits: Vec<String>,
    },
    /// Regularity of a point, or of a fresh generic point
    Regular {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        at: Option<String>,
        /// Value of the fresh generic point
        #[arg(long)]
        fresh: Option<String>,
    },
}

/// Everything a command produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub result: Json,
    /// Text-mode rendering of `result`.
    pub text: String,
    pub trace: Vec<Json>,
}

impl Outcome {
    pub fn new(result: Json, text: impl Into<String>) -> Self {
        Outcome {
            result,
            text: text.into(),
            trace: Vec::new(),
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// The JSON envelope for a successful command.
pub fn success_json(result: &Json, trace: &[Json]) -> String {
    json!({
        "schema": SCHEMA,
        "ok": true,
        "result": result,
        "error": null,
        "trace": trace,
    })
    .to_string()
}

pub fn error_json(e: &Error) -> String {
    json!({
        "schema": SCHEMA,
        "ok": false,
        "result": null,
        "error": {"name": e.name(), "message": e.to_string()},
        "trace": [],
    })
    .to_string()
}

fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        2
    } else {
        1
    }
}

struct Session {
    env: Env,
    mode: OutputMode,
    trace: bool,
}

fn session(cli: &Cli, config_path: Option<&str>) -> Result<Session> {
    let file = match cli.config.as_deref().or(config_path) {
        Some(p) => SessionConfig::load(Path::new(p))?,
        None => SessionConfig::default(),
    };
    let residue = cli
        .residue
        .clone()
        .or(file.residue)
        .unwrap_or_else(|| "Q-id".into());
    let group = cli
        .group
        .clone()
        .or(file.group)
        .unwrap_or_else(|| "Z-trivial".into());
    let residue = ResidueInstance::from_name(&residue).map_err(|e| Error::Config(e.to_string()))?;
    let group = GroupInstance::from_name(&group).map_err(|e| Error::Config(e.to_string()))?;
    let precision = cli
        .precision
        .clone()
        .or(file.precision)
        .unwrap_or_else(|| "8".into());
    let probe = Env::new(residue, group, GroupElement::from_int(1));
    let precision = probe.finite_gamma(&parse(&precision, Sort::Gamma)?)?;
    if !precision.is_positive() {
        return Err(Error::Config(format!(
            "precision must be positive, have {}",
            precision
        )));
    }
    let mode = if cli.json {
        OutputMode::Json
    } else {
        cli.output.or(file.output).unwrap_or(OutputMode::Text)
    };
    Ok(Session {
        env: Env::new(residue, group, precision),
        mode,
        trace: cli.trace || file.trace.unwrap_or(false),
    })
}

/// Runs one command line. `config_path` stands in for the environment
/// variable when `--config` is absent.
pub fn run_with<I, T>(args: I, config_path: Option<&str>) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let json_requested = cli.json || cli.output == Some(OutputMode::Json);
    let s = match session(&cli, config_path) {
        Ok(s) => s,
        Err(e) => return render_error(&e, json_requested),
    };
    match commands::dispatch(&s.env, &cli.command, s.trace) {
        Ok(out) => {
            let stdout = match s.mode {
                OutputMode::Json => success_json(&out.result, &out.trace) + "\n",
                OutputMode::Text => {
                    let mut t = out.text.clone() + "\n";
                    for step in &out.trace {
                        t.push_str(&format!("trace {}\n", step));
                    }
                    t
                }
            };
            Output {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => render_error(&e, s.mode == OutputMode::Json),
    }
}

fn render_error(e: &Error, json: bool) -> Output {
    if json {
        Output {
            code: exit_code(e),
            stdout: error_json(e) + "\n",
            stderr: String::new(),
        }
    } else {
        Output {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {}: {}\n", e.name(), e),
        }
    }
}

/// Entry point for the binary: reads `std::env`, prints, returns the exit code.
pub fn main() -> i32 {
    let config = std::env::var(CONFIG_ENV).ok();
    let out = run_with(std::env::args_os(), config.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
