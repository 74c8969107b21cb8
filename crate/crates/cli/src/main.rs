//! `seifert-calc`: invariants of Seifert G_m-bundles from JSON documents.
//!
//! Exit codes: 0 success, 1 input or parse fault, 2 validation failure.

mod commands;
mod input;
mod json;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{LocalInput, Outcome};

pub enum Fault {
    Input(String),
    Validation(String),
}

impl Fault {
    fn code(&self) -> u8 {
        match self {
            Fault::Input(_) => 1,
            Fault::Validation(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Fault::Input(m) | Fault::Validation(m) => m,
        }
    }
}

#[derive(Parser)]
#[command(name = "seifert-calc", version, about = "Exact invariants of Seifert G_m-bundles")]
struct Cli {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the data defines a Seifert bundle.
    Validate {
        /// Input document, or `-` for standard input.
        file: String,
    },
    /// Every invariant of a valid document.
    Analyze { file: String },
    /// The local dictionary over a cyclic quotient chart.
    Local {
        #[command(subcommand)]
        op: LocalOp,
    },
    /// H_1(Y, Z) from the document's intersection profile.
    H1 { file: String },
    /// H_1^orb(X, Δ) from the document's intersection profile.
    H1orb { file: String },
    /// The document of Y / mu_M.
    Quotient {
        file: String,
        #[arg(long)]
        m: u64,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        /// Rows separated by `;`, entries by `,`, e.g. `2,4;6,8`.
        #[arg(long, conflicts_with = "file")]
        matrix: Option<String>,
        /// Matrix document, or `-` for standard input.
        file: Option<String>,
    },
}

#[derive(Subcommand)]
enum LocalOp {
    /// Translate between the quotient and Seifert descriptions.
    Dict(ChartArgs),
    /// Smoothness of the total space, from both sides.
    Smooth(ChartArgs),
    /// Multiplicity of the fiber over the chart center.
    Mult(ChartArgs),
}

/// Either `--m --weights --r`, or `--m-red --c --d --l --b`.
#[derive(Args)]
struct ChartArgs {
    #[arg(long, group = "quotient_side", requires_all = ["weights", "r"])]
    m: Option<u64>,
    #[arg(long, value_delimiter = ',', requires = "m")]
    weights: Option<Vec<u64>>,
    #[arg(long, requires = "m")]
    r: Option<u64>,
    #[arg(long, conflicts_with = "quotient_side", requires_all = ["c", "d", "l", "b"])]
    m_red: Option<u64>,
    #[arg(long, value_delimiter = ',', requires = "m_red")]
    c: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', requires = "m_red")]
    d: Option<Vec<u64>>,
    #[arg(long, requires = "m_red")]
    l: Option<u64>,
    #[arg(long, value_delimiter = ',', requires = "m_red")]
    b: Option<Vec<u64>>,
}

impl ChartArgs {
    fn into_input(self) -> Result<LocalInput, Fault> {
        match (self.m, self.m_red) {
            (Some(m), None) => LocalInput::quotient(m, self.weights.unwrap_or_default(), self.r.unwrap_or(0)),
            (None, Some(m_red)) => LocalInput::seifert(
                m_red,
                self.c.unwrap_or_default(),
                self.d.unwrap_or_default(),
                self.l.unwrap_or(0),
                self.b.unwrap_or_default(),
            ),
            _ => Err(Fault::Input("give either --m/--weights/--r or --m-red/--c/--d/--l/--b".into())),
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Fault> {
    match cli.command {
        Command::Validate { file } => commands::validate_cmd(&file),
        Command::Analyze { file } => commands::analyze(&file),
        Command::Local { op } => match op {
            LocalOp::Dict(a) => commands::local_dict(a.into_input()?),
            LocalOp::Smooth(a) => commands::local_smooth(a.into_input()?),
            LocalOp::Mult(a) => commands::local_mult(a.into_input()?),
        },
        Command::H1 { file } => commands::h1(&file, false),
        Command::H1orb { file } => commands::h1(&file, true),
        Command::Quotient { file, m } => commands::quotient(&file, m),
        Command::Snf { matrix, file } => {
            let a = match (matrix, file) {
                (Some(text), None) => commands::parse_matrix(&text)?,
                (None, Some(path)) => commands::read_matrix_doc(&path)?,
                _ => return Err(Fault::Input("give --matrix or a matrix document".into())),
            };
            commands::snf(&a)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json_mode = cli.json;
    // quotient always writes a document
    let document = matches!(cli.command, Command::Quotient { .. });
    match run(cli) {
        Ok(out) => {
            let text = if json_mode || document {
                format!("{}\n", serde_json::to_string_pretty(&out.report).expect("reports serialize"))
            } else {
                render::human(&out.report)
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            if json_mode {
                let v = json!({"error": f.message(), "exit_code": f.code()});
                let text = serde_json::to_string_pretty(&v).expect("reports serialize");
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
