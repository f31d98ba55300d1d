//! `beliefrev`: query, relax and revise knowledge bases from the shell.
//!
//! Exit status: 0 success, 1 usage or configuration error, 2 parse error,
//! 3 semantic failure.

mod commands;
mod config;

use beliefrev::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "beliefrev", version, about = "Belief revision by relaxation")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Enumeration bound for FOL carriers and DL domains.
    #[arg(long, global = true, env = "RV_BOUND")]
    pub bound: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Reserved. Nothing is randomized.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ContextChoice {
    /// Retractions use the old base, relaxations the new one.
    Default,
    Old,
    New,
    None,
}

#[derive(Debug, Args)]
pub struct OpArgs {
    /// Relaxation or retraction name.
    #[arg(long)]
    pub op: Option<String>,
    /// Exceptions joined per step by `rho_exceptions` and `rho_cup`.
    #[arg(long)]
    pub k: Option<usize>,
    /// Named exception set from the configuration file.
    #[arg(long)]
    pub exceptions: Option<String>,
    /// Axioms that decide exception eligibility (DL only).
    #[arg(long, value_enum)]
    pub context: Option<ContextChoice>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the models of a knowledge base.
    Models {
        kb: PathBuf,
        /// At most this many models are printed; 0 prints all.
        #[arg(long, default_value_t = 100)]
        limit: usize,
    },
    /// Whether a knowledge base has a non-trivial model.
    Consistent { kb: PathBuf },
    /// Whether a knowledge base entails a sentence.
    Entails { kb: PathBuf, sentence: String },
    /// Apply a relaxation to every sentence of a knowledge base.
    Relax {
        kb: PathBuf,
        #[command(flatten)]
        op: OpArgs,
        /// Number of applications.
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Revise OLD by NEW.
    Revise {
        old: PathBuf,
        new: PathBuf,
        #[command(flatten)]
        op: OpArgs,
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        max_cap: Option<usize>,
        /// Accept relaxations that may never reach a tautology.
        #[arg(long)]
        allow_non_exhaustive: bool,
    },
    /// Check the AGM postulates on an exhaustive propositional corpus.
    CheckAgm {
        /// Operator configuration (TOML).
        operator_config: PathBuf,
        #[arg(long)]
        atoms: Option<usize>,
        /// Largest knowledge base in the corpus.
        #[arg(long)]
        sentences: Option<usize>,
    },
}

/// Which stage an error came from; decides the exit status.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(Error),
    Semantic(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Semantic(Error::Config(_)) => 1,
            Failure::Semantic(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Parse(_) => "parse",
            Failure::Semantic(Error::Config(_)) => "usage",
            Failure::Semantic(_) => "semantic",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Parse(e) | Failure::Semantic(e) => e.to_string(),
        }
    }

    fn json(&self) -> serde_json::Value {
        let mut err = serde_json::json!({
            "kind": self.kind(),
            "message": self.message(),
        });
        if let Failure::Parse(Error::Syntax { line, column, .. }) = self {
            err["line"] = (*line).into();
            err["column"] = (*column).into();
        }
        serde_json::json!({ "schema": 1, "error": err })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Semantic(e)
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
    let file = match &cli.global.config {
        Some(p) => match config::FileConfig::load(p) {
            Ok(c) => c,
            Err(e) => return report_failure(Failure::Usage(e.to_string()), cli.global.format),
        },
        None => config::FileConfig::default(),
    };
    let format = cli.global.format.or(match file.run.format.as_deref() {
        Some("json") => Some(Format::Json),
        Some("text") => Some(Format::Text),
        _ => None,
    });
    let format = format.unwrap_or(Format::Text);
    match commands::run(&cli, file) {
        Ok(out) => {
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&out.json).expect("json"))
                }
                Format::Text => print!("{}", out.text),
            }
            ExitCode::SUCCESS
        }
        Err(f) => report_failure(f, Some(format)),
    }
}

fn report_failure(f: Failure, format: Option<Format>) -> ExitCode {
    match format {
        Some(Format::Json) => {
            eprintln!("{}", serde_json::to_string_pretty(&f.json()).expect("json"))
        }
        _ => eprintln!("error: {}", f.message()),
    }
    ExitCode::from(f.code())
}
