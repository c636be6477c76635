use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;
use tensorcodes::codes::CyclicCode;
use tensorcodes::report::Format;
use tensorcodes::{CodeFamily, Field, LinearCode};

use crate::UsageError;

/// Flags shared by every subcommand. All optional so a config file can fill
/// the gaps; flags win over the file.
#[derive(Args, Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Field parameter: the field is GF(4^t), so RS codes have length 4^t - 1.
    #[arg(long, global = true)]
    pub t: Option<u32>,
    /// Number of axes.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Flat dimension of the test.
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// RS rate p/q.
    #[arg(long, global = true)]
    pub rate: Option<String>,
    /// Uniform random words or tuples added to the adversarial pool.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Master seed; required in sampled mode.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// jsonlines or csv.
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Report file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// rep2 (binary repetition code of length 2) or rs.
    #[arg(long, global = true)]
    pub instance: Option<String>,
    /// exact or sampled.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Certificate file to write or read.
    #[arg(long, global = true)]
    pub cert: Option<PathBuf>,
    /// Value of rho for the constants command, p/q.
    #[arg(long, global = true)]
    pub rho: Option<String>,
    /// TOML file with any of the options above.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! prefer_flags {
    ($flags:expr, $file:expr, $($f:ident),*) => {
        Options { $($f: $flags.$f.or($file.$f),)* config: $flags.config }
    };
}

impl Options {
    pub fn merged(self) -> Result<Options, UsageError> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let file = load(&path)?;
        Ok(prefer_flags!(self, file, t, m, k, rate, samples, seed, jobs, format, out, instance, mode, cert, rho))
    }
}

fn load(path: &Path) -> Result<Options, UsageError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("config {}: {e}", path.display())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug)]
pub enum Instance {
    Rep2,
    Rs { t: u32, num: usize, den: usize },
}

/// Validated settings.
#[derive(Clone, Debug)]
pub struct Config {
    pub opts: Options,
    pub format: Format,
    pub mode: Mode,
}

impl Config {
    pub fn new(opts: Options, default_mode: Mode) -> Result<Config, UsageError> {
        let opts = opts.merged()?;
        let format = match &opts.format {
            Some(f) => f.parse().map_err(|e: tensorcodes::Error| UsageError(e.to_string()))?,
            None => Format::JsonLines,
        };
        let mode = match opts.mode.as_deref() {
            None => default_mode,
            Some("exact") => Mode::Exact,
            Some("sampled") => Mode::Sampled,
            Some(other) => return Err(UsageError(format!("unknown mode {other:?}, expected exact or sampled"))),
        };
        match mode {
            Mode::Exact if opts.seed.is_some() || opts.samples.is_some() => {
                return Err(UsageError("exact mode takes no --seed or --samples".into()));
            }
            Mode::Sampled if opts.seed.is_none() => {
                return Err(UsageError("sampled mode needs --seed".into()));
            }
            _ => {}
        }
        if opts.jobs == Some(0) {
            return Err(UsageError("--jobs must be positive".into()));
        }
        Ok(Config { opts, format, mode })
    }

    pub fn t(&self) -> u32 {
        self.opts.t.unwrap_or(1)
    }

    pub fn m(&self) -> usize {
        self.opts.m.unwrap_or(2)
    }

    pub fn k(&self) -> usize {
        self.opts.k.unwrap_or(1)
    }

    pub fn seed(&self) -> u64 {
        self.opts.seed.unwrap_or(0)
    }

    pub fn samples(&self, default: usize) -> usize {
        self.opts.samples.unwrap_or(default)
    }

    pub fn rate(&self) -> Result<(usize, usize), UsageError> {
        let Some(r) = &self.opts.rate else {
            return Ok((1, 3));
        };
        let bad = || UsageError(format!("--rate expects p/q with 0 < p < q, got {r:?}"));
        let (p, q) = r.split_once('/').ok_or_else(bad)?;
        let (p, q): (usize, usize) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
        if p == 0 || p >= q {
            return Err(bad());
        }
        Ok((p, q))
    }

    pub fn instance(&self) -> Result<Instance, UsageError> {
        match self.opts.instance.as_deref().unwrap_or("rs") {
            "rep2" => Ok(Instance::Rep2),
            "rs" => {
                let (num, den) = self.rate()?;
                Ok(Instance::Rs { t: self.t(), num, den })
            }
            other => Err(UsageError(format!("unknown instance {other:?}, expected rep2 or rs"))),
        }
    }

    pub fn code(&self) -> Result<(LinearCode, String), UsageError> {
        let lib = |e: tensorcodes::Error| UsageError(e.to_string());
        match self.instance()? {
            Instance::Rep2 => {
                Ok((LinearCode::repetition(&Field::new(1).map_err(lib)?, 2).map_err(lib)?, "rep2".into()))
            }
            Instance::Rs { t, num, den } => {
                if !(1..=4).contains(&t) {
                    return Err(UsageError(format!("--t must be in 1..=4, got {t}")));
                }
                let field = Field::new(2 * t).map_err(lib)?;
                let rs = CyclicCode::rs_primitive(&field, num, den).map_err(lib)?;
                let name = format!("rs[{},{}]", rs.length(), rs.dimension());
                Ok((rs.to_linear(), name))
            }
        }
    }

    /// The `m`-fold family of the configured code and its description.
    pub fn family(&self) -> Result<(CodeFamily, String), UsageError> {
        let (code, name) = self.code()?;
        let m = self.m();
        if m == 0 {
            return Err(UsageError("--m must be positive".into()));
        }
        let fam = CodeFamily::uniform(&code, m).map_err(|e| UsageError(e.to_string()))?;
        Ok((fam, format!("{name} m={m}")))
    }
}
