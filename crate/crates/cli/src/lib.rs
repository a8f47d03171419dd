//! Command-line driver for the `ltc` tool.

pub mod cache;
pub mod config;
pub mod render;
pub mod verify;

use std::ffi::OsString;

use clap::Parser;
use ltc_core::cells::{cell_report, fiber_counts, fiber_map, geo_check, reducible_cc_witnesses};
use ltc_core::induction::{generate_witnesses, saturation_generic, saturation_grid, SaturationResult};
use ltc_core::Sampler;
use thiserror::Error;

use crate::cache::Cache;
use crate::config::{Cli, RunConfig, SaturateScope, Task};
use crate::render::{SaturateData, SurveyData, WitnessData};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] ltc_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cache(_) | CliError::Io(_) => 3,
            // Core errors at this point come from out-of-range parameters
            // that slipped past validation.
            CliError::Core(_) => 2,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match RunConfig::from_cli(cli).and_then(|cfg| run_config(&cfg)) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}

/// Cache key: command, parameters (seed included) and tool version.
pub fn cache_key(cfg: &RunConfig) -> String {
    let params: Vec<String> = cfg.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{}-{}-{}", cfg.command_name(), params.join("-"), cache::TOOL_VERSION)
}

pub fn run_config(cfg: &RunConfig) -> Result<(String, i32), CliError> {
    let Some(dir) = &cfg.cache_dir else {
        return execute(cfg);
    };
    let cache = Cache::new(dir);
    let key = cache_key(cfg);
    if let Some(entry) = cache.load(&key)? {
        return Ok((entry.output, entry.exit_code));
    }
    let (out, code) = execute(cfg)?;
    cache.store(&key, code, &out)?;
    Ok((out, code))
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

pub fn execute(cfg: &RunConfig) -> Result<(String, i32), CliError> {
    let sampler = cfg.sampler();
    match &cfg.task {
        Task::Survey { n } => {
            let entries = fiber_map(*n, &sampler)?;
            let geo = geo_check(*n, &entries, &sampler);
            let data = SurveyData {
                n: *n,
                fibers: fiber_counts(*n, &entries),
                cells: cell_report(*n, &entries),
                geo_passed: geo.passed,
                error_bound: geo.error_bound,
                entries,
            };
            Ok((render::survey(cfg, &data)?, exit_for(data.geo_passed)))
        }
        Task::Verify { max_weyl, max_grid } => {
            let report = verify::run_verify(*max_weyl, *max_grid, &sampler)?;
            Ok((render::verify(cfg, &report)?, exit_for(report.passed())))
        }
        Task::Witnesses { n, m } => {
            let data = match m {
                Some(m) => WitnessData::Induced { n: *n, m: *m, records: generate_witnesses(*n, *m, &sampler)? },
                None => WitnessData::Direct { n: *n, records: reducible_cc_witnesses(*n, &sampler)? },
            };
            Ok((render::witnesses(cfg, &data)?, EXIT_PASS))
        }
        Task::Saturate(scope) => {
            let rows = saturate_rows(scope, &sampler)?;
            let error_bound = rows.iter().map(|r| sampler.failure_bound(r.n)).sum();
            let ok = rows.iter().all(SaturationResult::agrees);
            let data = SaturateData { rows, error_bound };
            Ok((render::saturate(cfg, &data)?, exit_for(ok)))
        }
    }
}

fn saturate_rows(scope: &SaturateScope, sampler: &Sampler) -> ltc_core::Result<Vec<SaturationResult>> {
    match *scope {
        SaturateScope::Grid { max_n } => saturation_grid(max_n, sampler),
        SaturateScope::Rank { n } => (0..n)
            .flat_map(|m| (0..=m).map(move |k| (m, k)))
            .map(|(m, k)| saturation_generic(n, m, k, sampler))
            .collect(),
        SaturateScope::Levi { n, m } => (0..=m).map(|k| saturation_generic(n, m, k, sampler)).collect(),
        SaturateScope::Single { n, m, k } => Ok(vec![saturation_generic(n, m, k, sampler)?]),
    }
}
