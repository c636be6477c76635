mod commands;
mod config;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::Options;
use tensorcodes::report::{write_records, Record};

#[derive(Parser)]
#[command(name = "tensorcodes", version, about = "Product-code testability experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Subcommand, Clone, Copy, Debug)]
pub enum Command {
    /// Build the line-disjoint RS word on [n]^3 and certify rho <= 1/n.
    CertifyCounterexample,
    /// Exact product expansion by enumeration.
    RhoExact,
    /// Sampled upper bound on product expansion.
    RhoSampled,
    /// Robustness of the k-flat test.
    Robustness,
    /// Agreement testability.
    Agreement,
    /// Inequality checks relating the constants.
    CheckLemmas,
    /// Planted trials for the two-direction closeness lemma.
    PsCorollary,
    /// Closed-form constants for m axes.
    Constants,
    /// Describe the configured family.
    Show,
    /// Re-check a certificate file.
    VerifyCertificate,
}

/// Bad flags, bad configuration, or an instance the library refuses.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<tensorcodes::Error> for UsageError {
    fn from(e: tensorcodes::Error) -> Self {
        UsageError(e.to_string())
    }
}

/// Everything a command produces; nothing touches the disk until the
/// command has finished.
#[derive(Default)]
pub struct Output {
    pub records: Vec<Record>,
    pub text: Vec<String>,
    /// `(path, contents)` written after the records.
    pub files: Vec<(std::path::PathBuf, String)>,
    pub violation: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::from(1),
        Ok(false) => ExitCode::SUCCESS,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether some check was violated.
fn run(cli: Cli) -> Result<bool, UsageError> {
    let cfg = config::Config::new(cli.opts, commands::default_mode(cli.command))?;
    if let Some(jobs) = cfg.opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| UsageError(format!("thread pool: {e}")))?;
    }
    let out = commands::dispatch(cli.command, &cfg)?;
    for line in &out.text {
        eprintln!("{line}");
    }
    for (path, contents) in &out.files {
        fs::write(path, contents).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
    }
    if !out.records.is_empty() || cfg.opts.out.is_some() {
        match &cfg.opts.out {
            Some(path) => {
                let file =
                    fs::File::create(path).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
                write_records(&out.records, cfg.format, std::io::BufWriter::new(file))?;
            }
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                write_records(&out.records, cfg.format, &mut lock)?;
                lock.flush().map_err(|e| UsageError(e.to_string()))?;
            }
        }
    }
    Ok(out.violation)
}
