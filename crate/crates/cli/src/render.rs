//! Output formatting for each command.

use std::fmt::Write as _;

use ltc_core::cells::{CellReport, FiberCount, FiberEntry};
use ltc_core::induction::{SaturationResult, WitnessRecord};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::verify::VerificationReport;
use crate::CliError;

pub struct SurveyData {
    pub n: usize,
    pub entries: Vec<FiberEntry>,
    pub fibers: Vec<FiberCount>,
    pub cells: CellReport,
    pub geo_passed: bool,
    pub error_bound: f64,
}

pub enum WitnessData {
    Direct { n: usize, records: Vec<FiberEntry> },
    Induced { n: usize, m: usize, records: Vec<WitnessRecord> },
}

pub struct SaturateData {
    pub rows: Vec<SaturationResult>,
    pub error_bound: f64,
}

#[derive(Serialize)]
struct SaturateRow {
    n: usize,
    m: usize,
    k: usize,
    predicted: usize,
    generic: usize,
    witness: usize,
    agree: bool,
}

impl From<&SaturationResult> for SaturateRow {
    fn from(r: &SaturationResult) -> Self {
        SaturateRow {
            n: r.n,
            m: r.m,
            k: r.k,
            predicted: r.predicted,
            generic: r.generic,
            witness: r.witness,
            agree: r.agrees(),
        }
    }
}

fn header(cfg: &RunConfig) -> String {
    let params: Vec<String> = cfg.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("ltc {} {}\n", cfg.command_name(), params.join(" "))
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_table(headers: &[&str], rows: Vec<Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(headers).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn bound(x: f64) -> String {
    format!("{x:.3e}")
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    command: &'a str,
    seed: u64,
    trials: usize,
    #[serde(flatten)]
    body: T,
}

fn envelope<T: Serialize>(cfg: &RunConfig, body: T) -> Result<String, CliError> {
    json(&Envelope { command: cfg.command_name(), seed: cfg.seed, trials: cfg.trials, body })
}

pub fn survey(cfg: &RunConfig, data: &SurveyData) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                n: usize,
                entries: &'a [FiberEntry],
                fibers: &'a [FiberCount],
                cells: &'a CellReport,
                #[serde(rename = "geoPassed")]
                geo_passed: bool,
                #[serde(rename = "errorBound")]
                error_bound: f64,
            }
            envelope(
                cfg,
                Body {
                    n: data.n,
                    entries: &data.entries,
                    fibers: &data.fibers,
                    cells: &data.cells,
                    geo_passed: data.geo_passed,
                    error_bound: data.error_bound,
                },
            )
        }
        Format::Csv => csv_table(
            &["w", "k", "cell", "ltcFlag"],
            data.entries
                .iter()
                .map(|e| vec![e.w.to_string(), e.k.to_string(), e.cell.to_string(), e.ltc.to_string()])
                .collect(),
        ),
        Format::Text => {
            let mut out = header(cfg);
            let width = data.entries.iter().map(|e| e.w.to_string().len()).max().unwrap_or(1).max(1);
            let _ = writeln!(out, "\n{:<width$}  k  cell  ltcFlag", "w");
            for e in &data.entries {
                let _ = writeln!(out, "{:<width$}  {:<2} {:<5} {}", e.w.to_string(), e.k, e.cell.to_string(), e.ltc);
            }
            let _ = writeln!(out, "\nfiber counts (observed vs C(n, floor(k/2)))");
            for f in &data.fibers {
                let mark = if f.observed == f.predicted { "ok" } else { "MISMATCH" };
                let _ = writeln!(out, "  k={:<2} {:>4} {:>4}  {mark}", f.k, f.observed, f.predicted);
            }
            let _ = writeln!(out, "\ncells (observed vs predicted size)");
            for c in &data.cells.cells {
                let ranks: Vec<String> = c.member_ranks.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "  {:<4} ranks {:<5} {:>4} {:>4}", c.id.to_string(), ranks.join(","), c.observed, c.predicted);
            }
            let status = if data.geo_passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "\nfiber counts: {status}, error bound {}", bound(data.error_bound));
            Ok(out)
        }
    }
}

pub fn verify(cfg: &RunConfig, report: &VerificationReport) -> Result<String, CliError> {
    match cfg.format {
        Format::Json => {
            // the report already records seed and trials
            #[derive(Serialize)]
            struct Doc<'a> {
                command: &'a str,
                #[serde(flatten)]
                report: &'a VerificationReport,
            }
            json(&Doc { command: cfg.command_name(), report })
        }
        Format::Csv => csv_table(
            &["checkId", "anchor", "parameters", "status", "details", "errorBound"],
            report
                .records
                .iter()
                .map(|r| {
                    vec![
                        r.check_id.clone(),
                        r.anchor.clone(),
                        r.parameters.clone(),
                        r.status.label().to_lowercase(),
                        r.details.clone(),
                        bound(r.error_bound),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut out = header(cfg);
            out.push('\n');
            for r in &report.records {
                let _ = writeln!(out, "{} {:<22} {} ({})", r.status.label(), r.check_id, r.anchor, r.parameters);
                let _ = writeln!(out, "     {}", r.details);
                if r.error_bound > 0.0 {
                    let _ = writeln!(out, "     error bound {}", bound(r.error_bound));
                }
            }
            let passed = report.records.iter().filter(|r| r.passed()).count();
            let _ = writeln!(out, "\noverall: {} ({passed}/{} checks)", report.overall.label(), report.records.len());
            Ok(out)
        }
    }
}

pub fn witnesses(cfg: &RunConfig, data: &WitnessData) -> Result<String, CliError> {
    match (cfg.format, data) {
        (Format::Json, WitnessData::Direct { n, records }) => {
            #[derive(Serialize)]
            struct Body<'a> {
                n: usize,
                kind: &'a str,
                records: &'a [FiberEntry],
            }
            envelope(cfg, Body { n: *n, kind: "direct", records })
        }
        (Format::Json, WitnessData::Induced { n, m, records }) => {
            #[derive(Serialize)]
            struct Body<'a> {
                n: usize,
                m: usize,
                kind: &'a str,
                records: &'a [WitnessRecord],
            }
            envelope(cfg, Body { n: *n, m: *m, kind: "induced", records })
        }
        (Format::Csv, WitnessData::Direct { records, .. }) => csv_table(
            &["w", "k", "cell", "ltcFlag"],
            records
                .iter()
                .map(|e| vec![e.w.to_string(), e.k.to_string(), e.cell.to_string(), e.ltc.to_string()])
                .collect(),
        ),
        (Format::Csv, WitnessData::Induced { records, .. }) => csv_table(
            &[
                "n", "m", "j", "sigma", "w", "wInverse", "leviRank", "rank", "saturatedRank", "dominant",
                "saturatedOrbitSpecial", "reducibleLTC", "reducibleAVcategoryO",
            ],
            records
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.m.to_string(),
                        r.j.to_string(),
                        r.sigma.to_string(),
                        r.w.to_string(),
                        r.w_inverse.to_string(),
                        r.verified.levi_rank.to_string(),
                        r.verified.rank.to_string(),
                        r.verified.saturated_rank.to_string(),
                        r.verified.dominant.to_string(),
                        r.verified.saturated_special.to_string(),
                        r.asserted.reducible_ltc.to_string(),
                        r.asserted.reducible_av_category_o.to_string(),
                    ]
                })
                .collect(),
        ),
        (Format::Text, WitnessData::Direct { n, records }) => {
            let mut out = header(cfg);
            let _ = writeln!(out, "\n{} parameters of rank {} (reducible characteristic cycle)", records.len(), n - 1);
            for e in records {
                let _ = writeln!(out, "  w={}  k={}  {}  {}", e.w, e.k, e.cell, e.ltc);
            }
            Ok(out)
        }
        (Format::Text, WitnessData::Induced { records, .. }) => {
            let mut out = header(cfg);
            let _ = writeln!(out, "\n{} induced witnesses", records.len());
            for r in records {
                let _ = writeln!(
                    out,
                    "  j={} sigma={} w={} w^-1={}  ranks {}->{} (saturated {}, special {})",
                    r.j, r.sigma, r.w, r.w_inverse, r.verified.levi_rank, r.verified.rank,
                    r.verified.saturated_rank, r.verified.saturated_special
                );
                let _ = writeln!(
                    out,
                    "      asserted: reducible LTC {}, reducible AV in category O {}",
                    r.asserted.reducible_ltc, r.asserted.reducible_av_category_o
                );
            }
            Ok(out)
        }
    }
}

pub fn saturate(cfg: &RunConfig, data: &SaturateData) -> Result<String, CliError> {
    let rows: Vec<SaturateRow> = data.rows.iter().map(SaturateRow::from).collect();
    match cfg.format {
        Format::Json => {
            #[derive(Serialize)]
            struct Body<'a> {
                rows: &'a [SaturateRow],
                #[serde(rename = "errorBound")]
                error_bound: f64,
            }
            envelope(cfg, Body { rows: &rows, error_bound: data.error_bound })
        }
        Format::Csv => csv_table(
            &["n", "m", "k", "predicted", "generic", "witness", "agree"],
            rows.iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.m.to_string(),
                        r.k.to_string(),
                        r.predicted.to_string(),
                        r.generic.to_string(),
                        r.witness.to_string(),
                        r.agree.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut out = header(cfg);
            let _ = writeln!(out, "\n n  m  k  predicted  generic  witness  agree");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>2} {:>2} {:>2}  {:>9}  {:>7}  {:>7}  {}",
                    r.n, r.m, r.k, r.predicted, r.generic, r.witness, if r.agree { "yes" } else { "NO" }
                );
            }
            let agree = rows.iter().filter(|r| r.agree).count();
            let _ = writeln!(out, "\n{agree}/{} rows agree, error bound {}", rows.len(), bound(data.error_bound));
            Ok(out)
        }
    }
}
