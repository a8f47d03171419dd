use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltc_core::Sampler;

use crate::CliError;

pub const CACHE_ENV: &str = "LTC_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "ltc", version, about = "Highest weight Harish-Chandra modules of Sp(2n,R): fibers, cells, saturation and reducible leading term cycle witnesses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Tabulate the fiber map w -> k with cells and leading-term flags.
    Survey {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Run every verification suite and report pass/fail per check.
    Verify {
        /// Bound for all sweeps (default: 5 for Weyl scans, 8 for the saturation grid).
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Emit reducible leading term cycle witnesses.
    Witnesses {
        #[arg(long)]
        n: usize,
        /// Levi rank; omitted means the direct witnesses of rank n-1 (n even).
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Compare the generic rank of f_k + u∩p_+ with the branch formula.
    Saturate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Sweep all 0 <= k <= m < n <= max-n.
        #[arg(long)]
        grid: bool,
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = ltc_core::symrep::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long = "no-cache")]
    pub no_cache: bool,
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Task {
    Survey { n: usize },
    Verify { max_weyl: usize, max_grid: usize },
    Witnesses { n: usize, m: Option<usize> },
    Saturate(SaturateScope),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturateScope {
    Grid { max_n: usize },
    Rank { n: usize },
    Levi { n: usize, m: usize },
    Single { n: usize, m: usize, k: usize },
}

/// A validated invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub task: Task,
    pub seed: u64,
    pub trials: usize,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

pub const MAX_SURVEY_N: usize = 10;
pub const MAX_VERIFY_N: usize = 8;
pub const MAX_WITNESS_N: usize = 8;
pub const MAX_SATURATE_N: usize = 10;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn in_range(name: &str, v: usize, lo: usize, hi: usize) -> Result<usize, CliError> {
    if v < lo || v > hi {
        return Err(usage(format!("--{name} must be between {lo} and {hi}, got {v}")));
    }
    Ok(v)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let (task, common) = match cli.command {
            Command::Survey { n, common } => {
                (Task::Survey { n: in_range("n", n, 1, MAX_SURVEY_N)? }, common)
            }
            Command::Verify { max_n, common } => {
                let task = match max_n {
                    Some(v) => {
                        let v = in_range("max-n", v, 1, MAX_VERIFY_N)?;
                        Task::Verify { max_weyl: v, max_grid: v }
                    }
                    None => Task::Verify { max_weyl: 5, max_grid: 8 },
                };
                (task, common)
            }
            Command::Witnesses { n, m, common } => {
                let n = in_range("n", n, 1, MAX_WITNESS_N)?;
                match m {
                    Some(m) if m == 0 || m >= n => {
                        return Err(usage(format!("--m must satisfy 0 < m < n, got m={m}, n={n}")))
                    }
                    None if n % 2 == 1 => {
                        return Err(usage("direct witnesses need an even --n; pass --m for induced ones"))
                    }
                    _ => {}
                }
                (Task::Witnesses { n, m }, common)
            }
            Command::Saturate { n, m, k, grid, max_n, common } => {
                let scope = if grid {
                    if n.is_some() || m.is_some() || k.is_some() {
                        return Err(usage("--grid cannot be combined with --n/--m/--k"));
                    }
                    SaturateScope::Grid { max_n: in_range("max-n", max_n.unwrap_or(8), 1, MAX_SATURATE_N)? }
                } else {
                    if max_n.is_some() {
                        return Err(usage("--max-n needs --grid"));
                    }
                    let n = in_range("n", n.ok_or_else(|| usage("saturate needs --n or --grid"))?, 1, MAX_SATURATE_N)?;
                    match (m, k) {
                        (None, None) => SaturateScope::Rank { n },
                        (None, Some(_)) => return Err(usage("--k needs --m")),
                        (Some(m), k) => {
                            if m >= n {
                                return Err(usage(format!("--m must be < n, got m={m}, n={n}")));
                            }
                            match k {
                                None => SaturateScope::Levi { n, m },
                                Some(k) if k > m => {
                                    return Err(usage(format!("--k must be <= m, got k={k}, m={m}")))
                                }
                                Some(k) => SaturateScope::Single { n, m, k },
                            }
                        }
                    }
                };
                (Task::Saturate(scope), common)
            }
        };
        if common.trials == 0 {
            return Err(usage("--trials must be at least 1"));
        }
        let cache_dir = if common.no_cache {
            None
        } else {
            common.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        };
        Ok(RunConfig { task, seed: common.seed, trials: common.trials, format: common.format, cache_dir })
    }

    pub fn sampler(&self) -> Sampler {
        Sampler::with_trials(self.seed, self.trials)
    }

    pub fn command_name(&self) -> &'static str {
        match self.task {
            Task::Survey { .. } => "survey",
            Task::Verify { .. } => "verify",
            Task::Witnesses { .. } => "witnesses",
            Task::Saturate(_) => "saturate",
        }
    }

    /// Parameters as `key=value` pairs in a fixed order.
    pub fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = match &self.task {
            Task::Survey { n } => vec![("n", n.to_string())],
            Task::Verify { max_weyl, max_grid } => {
                vec![("maxWeyl", max_weyl.to_string()), ("maxGrid", max_grid.to_string())]
            }
            Task::Witnesses { n, m } => {
                let mut v = vec![("n", n.to_string())];
                if let Some(m) = m {
                    v.push(("m", m.to_string()));
                }
                v
            }
            Task::Saturate(scope) => match scope {
                SaturateScope::Grid { max_n } => vec![("grid", "true".into()), ("maxN", max_n.to_string())],
                SaturateScope::Rank { n } => vec![("n", n.to_string())],
                SaturateScope::Levi { n, m } => vec![("n", n.to_string()), ("m", m.to_string())],
                SaturateScope::Single { n, m, k } => {
                    vec![("n", n.to_string()), ("m", m.to_string()), ("k", k.to_string())]
                }
            },
        };
        p.push(("seed", self.seed.to_string()));
        p.push(("trials", self.trials.to_string()));
        p.push(("format", self.format.name().to_string()));
        p
    }
}
