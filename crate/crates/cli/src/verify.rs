//! The verification suite: every identity the tool can check, one record per
//! check.

use std::collections::BTreeMap;

use ltc_core::cells::{cell_report, fiber_map, geo_check, orbital_dims, redcc_rows, FiberEntry};
use ltc_core::induction::{
    generate_witnesses, induced_witness_counts, saturation_grid, transfer_consistency,
};
use ltc_core::orbits::{binomial, spq_analysis, SignedPartitionQuery};
use ltc_core::rootsys::is_c_dominant;
use ltc_core::weyl::{all_elements, n_cap_nw, RootSet};
use ltc_core::{Result, Sampler};
use serde::{Deserialize, Serialize};

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    #[serde(rename = "checkId")]
    pub check_id: String,
    pub anchor: String,
    pub parameters: String,
    pub status: Status,
    pub details: String,
    /// Probability bound that a randomized rank in this check was wrong.
    #[serde(rename = "errorBound")]
    pub error_bound: f64,
}

impl CheckRecord {
    fn new(id: &str, anchor: &str, parameters: String, ok: bool, details: String, error_bound: f64) -> Self {
        CheckRecord {
            check_id: id.into(),
            anchor: anchor.into(),
            parameters,
            status: Status::from_bool(ok),
            details,
            error_bound,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub trials: usize,
    pub records: Vec<CheckRecord>,
    pub overall: Status,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.overall == Status::Pass
    }

    /// `(checkId, status)` pairs, the part of the report that must not depend
    /// on the seed.
    pub fn verdicts(&self) -> Vec<(String, Status)> {
        self.records.iter().map(|r| (r.check_id.clone(), r.status)).collect()
    }
}

/// Fiber maps shared between checks.
pub struct FiberCache<'a> {
    sampler: &'a Sampler,
    maps: BTreeMap<usize, Vec<FiberEntry>>,
}

impl<'a> FiberCache<'a> {
    pub fn new(sampler: &'a Sampler) -> Self {
        FiberCache { sampler, maps: BTreeMap::new() }
    }

    pub fn get(&mut self, n: usize) -> Result<&[FiberEntry]> {
        if !self.maps.contains_key(&n) {
            let entries = fiber_map(n, self.sampler)?;
            self.maps.insert(n, entries);
        }
        Ok(&self.maps[&n])
    }
}

fn upto(max: usize) -> String {
    format!("n<={max}")
}

pub fn check_dominance_criterion(max_n: usize) -> Result<CheckRecord> {
    let mut elements = 0usize;
    let mut exceptions = Vec::new();
    for n in 1..=max_n {
        let pplus = RootSet::pplus(n)?;
        for y in all_elements(n) {
            elements += 1;
            let inside = n_cap_nw(&y)?.is_subset(&pplus);
            if inside != is_c_dominant(&y.rho_image().neg()) {
                exceptions.push(y.to_string());
            }
        }
    }
    let mut details = format!("{elements} elements, {} exceptions", exceptions.len());
    if !exceptions.is_empty() {
        details.push_str(&format!(": {}", exceptions.iter().take(5).cloned().collect::<Vec<_>>().join(" ")));
    }
    Ok(CheckRecord::new(
        "dominance-scan",
        "orbital-variety dominance criterion",
        upto(max_n),
        exceptions.is_empty(),
        details,
        0.0,
    ))
}

pub fn check_geo(cache: &mut FiberCache<'_>, max_n: usize) -> Result<CheckRecord> {
    let mut ok = true;
    let mut bound = 0.0;
    let mut parts = Vec::new();
    for n in 1..=max_n {
        let sampler = *cache.sampler;
        let g = geo_check(n, cache.get(n)?, &sampler);
        ok &= g.passed;
        bound += g.error_bound;
        let fibers: Vec<String> = g.fibers.iter().map(|f| f.observed.to_string()).collect();
        let mut part = format!("n={n}: {}", fibers.join(","));
        for d in g.discrepancies() {
            part.push_str(&format!(" [k={} observed {} predicted {}]", d.k, d.observed, d.predicted));
        }
        parts.push(part);
    }
    Ok(CheckRecord::new("geo-counts", "conormal count per K-orbit", upto(max_n), ok, parts.join("; "), bound))
}

pub fn check_orbital_dims(cache: &mut FiberCache<'_>, max_n: usize) -> Result<CheckRecord> {
    let sampler = *cache.sampler;
    let mut checked = 0;
    let mut bad = Vec::new();
    let mut bound = 0.0;
    for n in 1..=max_n {
        let dims = orbital_dims(n, cache.get(n)?, &sampler)?;
        bound += dims.len() as f64 * sampler.failure_bound(n * (n + 1) / 2);
        for d in dims {
            checked += 1;
            if d.borbit != d.orbit {
                bad.push(format!("{} (B-orbit {} vs O_{} {})", d.w, d.borbit, d.k, d.orbit));
            }
        }
    }
    let details = format!("{checked} parameters, {} mismatches{}", bad.len(), list_suffix(&bad));
    Ok(CheckRecord::new(
        "orbital-variety-dims",
        "orbital variety equals K-orbit closure",
        upto(max_n),
        bad.is_empty(),
        details,
        bound,
    ))
}

pub fn check_cells(cache: &mut FiberCache<'_>, max_n: usize) -> Result<CheckRecord> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=max_n {
        let report = cell_report(n, cache.get(n)?);
        ok &= report.sizes_match() && report.total() == 1 << n;
        let cells: Vec<String> = report
            .cells
            .iter()
            .map(|c| format!("{}:{}/{}", c.id, c.observed, c.predicted))
            .collect();
        parts.push(format!("n={n}: {}", cells.join(",")));
    }
    Ok(CheckRecord::new("cell-sizes", "left cell dimensions of Harish-Chandra cells", upto(max_n), ok, parts.join("; "), 0.0))
}

pub fn check_redcc(cache: &mut FiberCache<'_>, max_n: usize) -> Result<CheckRecord> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 1..=max_n {
        let rows = redcc_rows(&cell_report(n, cache.get(n)?));
        ok &= rows.iter().all(|r| r.cell_size >= r.springer_dim);
        let top = rows.last().expect("at least one cell");
        if n % 2 == 0 {
            ok &= top.strict;
        }
        let strict: Vec<String> = rows.iter().filter(|r| r.strict).map(|r| r.cell.to_string()).collect();
        parts.push(format!("n={n}: strict {}", if strict.is_empty() { "-".into() } else { strict.join(",") }));
    }
    Ok(CheckRecord::new(
        "cell-exceeds-springer",
        "cell larger than Springer representation forces reducible CC",
        upto(max_n),
        ok,
        parts.join("; "),
        0.0,
    ))
}

pub fn check_supports_distinct(cache: &mut FiberCache<'_>, max_n: usize) -> Result<CheckRecord> {
    let mut ok = true;
    for n in 1..=max_n {
        let entries = cache.get(n)?;
        let mut ws: Vec<_> = entries.iter().map(|e| e.w.clone()).collect();
        let mut sets: Vec<u128> = entries.iter().map(|e| e.rootset.bits()).collect();
        ws.sort();
        ws.dedup();
        sets.sort_unstable();
        sets.dedup();
        ok &= ws.len() == entries.len() && sets.len() == entries.len();
    }
    Ok(CheckRecord::new(
        "supports-distinct",
        "distinct parameters have distinct supports",
        upto(max_n),
        ok,
        "parameters and n∩n^w pairwise distinct".into(),
        0.0,
    ))
}

pub fn check_saturation_grid(max_n: usize, sampler: &Sampler) -> Result<CheckRecord> {
    let rows = saturation_grid(max_n, sampler)?;
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| !r.agrees())
        .map(|r| format!("({},{},{}) predicted {} generic {} witness {}", r.n, r.m, r.k, r.predicted, r.generic, r.witness))
        .collect();
    let bound: f64 = rows.iter().map(|r| sampler.failure_bound(r.n)).sum();
    let details = format!("{} triples, {} disagreements{}", rows.len(), bad.len(), list_suffix(&bad));
    Ok(CheckRecord::new("saturation-grid", "saturation rank formula and witness matrices", upto(max_n), bad.is_empty(), details, bound))
}

pub fn check_transfer(max_n: usize, sampler: &Sampler) -> Result<CheckRecord> {
    let mut rows = 0;
    let mut bad = Vec::new();
    let mut bound = 0.0;
    for n in 1..=max_n {
        for m in 0..n {
            for row in transfer_consistency(n, m, sampler)? {
                rows += 1;
                bound += sampler.failure_bound(n) + sampler.failure_bound(m.max(1));
                if !row.agrees() {
                    bad.push(format!("n={n} sigma={} w={} rank {} predicted {}", row.sigma, row.w, row.rank, row.predicted));
                }
            }
        }
    }
    let details = format!("{rows} Levi parameters, {} mismatches{}", bad.len(), list_suffix(&bad));
    Ok(CheckRecord::new("transfer", "induction of conormal moment images", upto(max_n), bad.is_empty(), details, bound))
}

pub fn check_witness_counts(
    cache: &mut FiberCache<'_>,
    max_direct: usize,
    max_induced: usize,
) -> Result<CheckRecord> {
    let sampler = *cache.sampler;
    let mut ok = true;
    let mut parts = Vec::new();
    let mut bound = 0.0;
    for n in (2..=max_direct).step_by(2) {
        let found = cache.get(n)?.iter().filter(|e| e.k == n - 1).count() as u64;
        let expected = binomial(n as i64, n as i64 / 2 - 1);
        ok &= found == expected;
        bound += sampler.failure_bound(n) * (1u64 << n) as f64;
        parts.push(format!("direct n={n}: {found}/{expected}"));
    }
    let mut induced = Vec::new();
    for n in 2..=max_induced {
        for m in 1..n {
            let records = generate_witnesses(n, m, &sampler)?;
            let counts = induced_witness_counts(n, m, &sampler)?;
            let expected: u64 = counts.iter().map(|c| c.count).sum();
            ok &= records.len() as u64 == expected && counts.iter().all(|c| c.count == c.enumerated);
            bound += 2.0 * (1u64 << m) as f64 * sampler.failure_bound(n);
            induced.push(format!("({n},{m}):{}", records.len()));
        }
    }
    if !induced.is_empty() {
        parts.push(format!("induced {}", induced.join(",")));
    }
    Ok(CheckRecord::new(
        "witness-counts",
        "reducible leading term cycle witnesses",
        format!("direct n<={max_direct}, induced n<={max_induced}"),
        ok,
        parts.join("; "),
        bound,
    ))
}

pub const SPQ_MAX_N: usize = 10;

pub fn check_spq(max_n: usize) -> Result<CheckRecord> {
    let mut ok = true;
    let mut admissible = Vec::new();
    let mut conflicts = 0;
    for n in 1..=max_n {
        for p in 0..=n {
            let q = n - p;
            let verdict = spq_analysis(&SignedPartitionQuery::new(vec![2; n], p, q))?;
            ok &= verdict.admissible == (n % 2 == 0 && p == q);
            if verdict.admissible {
                admissible.push(format!("Sp({p},{q})"));
            }
            if verdict.conflicting() {
                conflicts += 1;
            }
        }
    }
    let details = format!(
        "(2^n) admissible only for {}; {conflicts} queries where the parity rules exclude an attainable signature",
        admissible.join(",")
    );
    Ok(CheckRecord::new("spq-admissibility", "Sp(p,q) real forms of the (2,...,2) orbit", upto(max_n), ok, details, 0.0))
}

pub fn check_partition_identity(max_n: usize) -> Result<CheckRecord> {
    let ok = (1..=max_n).all(|n| {
        let s: u64 = (0..=n).map(|k| binomial(n as i64, (k / 2) as i64)).sum();
        s == 1 << n
    });
    Ok(CheckRecord::new(
        "partition-identity",
        "conormal fibers partition the parameters",
        upto(max_n),
        ok,
        "sum over k of C(n, floor(k/2)) = 2^n".into(),
        0.0,
    ))
}

fn list_suffix(items: &[String]) -> String {
    if items.is_empty() {
        String::new()
    } else {
        format!(": {}", items.iter().take(5).cloned().collect::<Vec<_>>().join("; "))
    }
}

/// Runs every check. `max_weyl` bounds the scans over Weyl group elements and
/// Levi parameters, `max_grid` the saturation grid and the direct witness
/// count.
pub fn run_verify(max_weyl: usize, max_grid: usize, sampler: &Sampler) -> Result<VerificationReport> {
    let mut cache = FiberCache::new(sampler);
    let records = vec![
        check_dominance_criterion(max_weyl)?,
        check_geo(&mut cache, max_weyl)?,
        check_orbital_dims(&mut cache, max_weyl)?,
        check_cells(&mut cache, max_weyl)?,
        check_redcc(&mut cache, max_weyl)?,
        check_supports_distinct(&mut cache, max_weyl)?,
        check_saturation_grid(max_grid, sampler)?,
        check_transfer(max_weyl, sampler)?,
        check_witness_counts(&mut cache, max_grid, max_weyl)?,
        check_spq(SPQ_MAX_N)?,
        check_partition_identity(SPQ_MAX_N)?,
    ];
    let overall = Status::from_bool(records.iter().all(CheckRecord::passed));
    Ok(VerificationReport { seed: sampler.seed, trials: sampler.trials, records, overall })
}
