//! The fiber map `w ↦ k` sending each highest weight Harish-Chandra parameter
//! to the rank of the moment image of its support conormal, the resulting
//! cell partition, and the leading-term bookkeeping built on it.
//!
//! For dominant `w` the conormal of the support maps onto
//! `closure(K·(n ∩ n^w))`, and `n ∩ n^w ⊆ Δ(p_+)`, so the image is the
//! orbit `O_k` with `k` the generic rank of the span of the root vectors of
//! `n ∩ n^w`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbits::{binomial, is_special, predicted_conormal_count, springer_dim, OrbitLabel};
use crate::symrep::{borbit_dim_with, dim_orbit, generic_rank_with, Sampler, SymFamily, BORBIT_ALGEBRA};
use crate::weyl::{dominant_reps, n_cap_nw, RootSet, SignedPermutation};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum LtcFlag {
    InLTC,
    NotInLTC,
}

impl fmt::Display for LtcFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LtcFlag::InLTC => "InLTC",
            LtcFlag::NotInLTC => "NotInLTC",
        })
    }
}

/// Cell `C_t`, named by the largest orbit rank `t` it contains.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CellId(pub usize);

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

impl Serialize for CellId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Cell containing the parameters whose support conormal maps to `O_k`:
/// `C_{2j}` collects ranks `2j-1` and `2j`; for odd `n` the top rank forms
/// `C_n` alone.
pub fn cell_of(n: usize, k: usize) -> CellId {
    if k == n && n % 2 == 1 {
        CellId(n)
    } else {
        CellId(k + k % 2)
    }
}

fn serialize_rootset<S: Serializer>(set: &RootSet, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(set.roots().iter().map(ToString::to_string))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FiberEntry {
    pub w: SignedPermutation,
    #[serde(serialize_with = "serialize_rootset")]
    pub rootset: RootSet,
    pub k: usize,
    pub cell: CellId,
    #[serde(rename = "ltcFlag")]
    pub ltc: LtcFlag,
}

impl FiberEntry {
    pub fn orbit(&self) -> OrbitLabel {
        OrbitLabel::new(self.w.rank(), self.k).expect("rank bounded by n")
    }
}

/// Fiber rank of a single dominant parameter, using stream `task` of the
/// sampler.
pub fn fiber_rank(w: &SignedPermutation, sampler: &Sampler, task: u64) -> Result<usize> {
    let set = n_cap_nw(w)?;
    let fam = SymFamily::span_of(&set)?;
    Ok(generic_rank_with(&fam, sampler.trials, &mut sampler.rng(task)))
}

/// One entry per dominant parameter, ordered by `(k, w as text)`.
pub fn fiber_map(n: usize, sampler: &Sampler) -> Result<Vec<FiberEntry>> {
    let reps = dominant_reps(n)?;
    let mut entries = reps
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let rootset = n_cap_nw(w)?;
            let k = fiber_rank(w, sampler, i as u64)?;
            let ltc = if is_special(OrbitLabel::new(n, k)?) { LtcFlag::InLTC } else { LtcFlag::NotInLTC };
            Ok(FiberEntry { w: w.clone(), rootset, k, cell: cell_of(n, k), ltc })
        })
        .collect::<Result<Vec<_>>>()?;
    entries.sort_by_cached_key(|e| (e.k, e.w.to_string()));
    Ok(entries)
}

/// Aggregate bound on the probability that any fiber rank in an `n` survey was
/// underestimated.
pub fn survey_error_bound(n: usize, sampler: &Sampler) -> f64 {
    (1u64 << n) as f64 * sampler.failure_bound(n)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct FiberCount {
    pub k: usize,
    pub observed: u64,
    pub predicted: u64,
}

pub fn fiber_counts(n: usize, entries: &[FiberEntry]) -> Vec<FiberCount> {
    (0..=n)
        .map(|k| FiberCount {
            k,
            observed: entries.iter().filter(|e| e.k == k).count() as u64,
            predicted: predicted_conormal_count(OrbitLabel::new(n, k).expect("k <= n")),
        })
        .collect()
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct GeoCheck {
    pub n: usize,
    pub passed: bool,
    pub fibers: Vec<FiberCount>,
    pub error_bound: f64,
}

impl GeoCheck {
    pub fn discrepancies(&self) -> Vec<FiberCount> {
        self.fibers.iter().copied().filter(|f| f.observed != f.predicted).collect()
    }
}

/// Compare fiber sizes with `C(n, ⌊k/2⌋)`.
pub fn verify_geo(n: usize, sampler: &Sampler) -> Result<GeoCheck> {
    let entries = fiber_map(n, sampler)?;
    Ok(geo_check(n, &entries, sampler))
}

pub fn geo_check(n: usize, entries: &[FiberEntry], sampler: &Sampler) -> GeoCheck {
    let fibers = fiber_counts(n, entries);
    let passed = fibers.iter().all(|f| f.observed == f.predicted);
    GeoCheck { n, passed, fibers, error_bound: survey_error_bound(n, sampler) }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CellSummary {
    pub id: CellId,
    #[serde(rename = "memberRanks")]
    pub member_ranks: Vec<usize>,
    #[serde(rename = "observedSize")]
    pub observed: u64,
    #[serde(rename = "predictedSize")]
    pub predicted: u64,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub cells: Vec<CellSummary>,
}

impl CellReport {
    pub fn sizes_match(&self) -> bool {
        self.cells.iter().all(|c| c.observed == c.predicted)
    }

    pub fn total(&self) -> u64 {
        self.cells.iter().map(|c| c.observed).sum()
    }
}

/// Predicted size of a cell from the left cell dimensions:
/// `C(n, j) + C(n, j-1)` for `C_{2j}`, and `C(n, (n-1)/2)` for `C_n`, `n` odd.
pub fn predicted_cell_size(n: usize, id: CellId) -> u64 {
    let n_i = n as i64;
    if id.0 == n && n % 2 == 1 {
        binomial(n_i, (n_i - 1) / 2)
    } else {
        let j = (id.0 / 2) as i64;
        binomial(n_i, j) + binomial(n_i, j - 1)
    }
}

pub fn cell_report(n: usize, entries: &[FiberEntry]) -> CellReport {
    let mut members: BTreeMap<CellId, Vec<usize>> = BTreeMap::new();
    for k in 0..=n {
        members.entry(cell_of(n, k)).or_default().push(k);
    }
    let cells = members
        .into_iter()
        .map(|(id, member_ranks)| CellSummary {
            id,
            observed: entries.iter().filter(|e| e.cell == id).count() as u64,
            predicted: predicted_cell_size(n, id),
            member_ranks,
        })
        .collect();
    CellReport { n, cells }
}

pub fn cell_partition(n: usize, sampler: &Sampler) -> Result<CellReport> {
    Ok(cell_report(n, &fiber_map(n, sampler)?))
}

/// Parameters whose support conormal maps onto the non-special `O_{n-1}`
/// (`n` even). Their cell has associated variety `p_+`, so the support
/// conormal is not in the leading term cycle and the characteristic cycle
/// contains a second conormal with moment image `p_+`.
pub fn reducible_cc_witnesses(n: usize, sampler: &Sampler) -> Result<Vec<FiberEntry>> {
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(fiber_map(n, sampler)?.into_iter().filter(|e| e.k == n - 1).collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct RedCcRow {
    pub cell: CellId,
    #[serde(rename = "cellSize")]
    pub cell_size: u64,
    #[serde(rename = "springerDim")]
    pub springer_dim: u64,
    /// Cell strictly larger than the Springer dimension of its top orbit.
    pub strict: bool,
}

pub fn redcc_rows(report: &CellReport) -> Vec<RedCcRow> {
    report
        .cells
        .iter()
        .map(|c| {
            let top = *c.member_ranks.iter().max().expect("cells are nonempty");
            let dim = springer_dim(OrbitLabel::new(report.n, top).expect("k <= n"));
            RedCcRow { cell: c.id, cell_size: c.observed, springer_dim: dim, strict: c.observed > dim }
        })
        .collect()
}

pub fn lemma_redcc_check(n: usize, sampler: &Sampler) -> Result<Vec<RedCcRow>> {
    Ok(redcc_rows(&cell_partition(n, sampler)?))
}

/// Dimension data for one parameter: the `B`-saturation of `n ∩ n^w` against
/// the dimension of `O_k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct OrbitalDim {
    pub w: SignedPermutation,
    pub k: usize,
    pub borbit: usize,
    pub orbit: usize,
}

/// Tangent dimension of `B·(n ∩ n^w)` for each entry. Streams are offset past
/// those used by [`fiber_map`].
pub fn orbital_dims(n: usize, entries: &[FiberEntry], sampler: &Sampler) -> Result<Vec<OrbitalDim>> {
    entries
        .par_iter()
        .enumerate()
        .map(|(i, e)| {
            let fam = SymFamily::span_of(&e.rootset)?;
            let task = (1u64 << 32) + i as u64;
            let borbit = borbit_dim_with(&fam, BORBIT_ALGEBRA, sampler.trials, &mut sampler.rng(task))?;
            Ok(OrbitalDim { w: e.w.clone(), k: e.k, borbit, orbit: dim_orbit(n, e.k)? })
        })
        .collect()
}
