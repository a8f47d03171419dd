//! Cohomological induction from the Levi `C^{n-m} ⊕ sp(2m)` seen through
//! associated varieties: an orbit `O_k` of the Levi saturates to
//! `closure(K·(f_k + u ∩ p_+))`, and a Levi parameter `σ` induces to the
//! parameter `w = w0 σ`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::cells::fiber_rank;
use crate::error::{Error, Result};
use crate::field::BigRational;
use crate::orbits::{binomial, is_special, OrbitLabel};
use crate::rootsys::{is_c_dominant, parabolic};
use crate::symrep::{f_k, generic_rank_with, Sampler, SymFamily, SymMatrix};
use crate::weyl::{dominant_reps, transfer_w, SignedPermutation};

fn check_triple(n: usize, m: usize, k: usize) -> Result<()> {
    if m >= n {
        return Err(Error::LeviRank { n, m });
    }
    if k > m {
        return Err(Error::Range(format!("Levi orbit O_{k} does not exist for m = {m}")));
    }
    Ok(())
}

/// Rank of the generic element of `f_k + u ∩ p_+`: `2(n-m) + k` while that
/// stays below `n` (`k <= 2m - n - 1`), otherwise `n`.
pub fn saturation_predicted(n: usize, m: usize, k: usize) -> Result<usize> {
    check_triple(n, m, k)?;
    let (n_i, m_i, k_i) = (n as i64, m as i64, k as i64);
    Ok(if k_i <= 2 * m_i - n_i - 1 { 2 * (n - m) + k } else { n })
}

/// `f_k` placed on the Levi block (coordinates `n-m+1, ..., n-m+k`) plus the
/// span of `u ∩ p_+`.
pub fn saturation_family(n: usize, m: usize, k: usize) -> Result<SymFamily> {
    check_triple(n, m, k)?;
    let datum = parabolic(n, m)?;
    SymFamily::affine_over(f_k(k, n, n - m)?, &datum.u_pplus)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SaturationResult {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub predicted: usize,
    pub generic: usize,
    pub witness: usize,
}

impl SaturationResult {
    pub fn agrees(&self) -> bool {
        self.generic == self.predicted && self.witness == self.predicted
    }
}

fn triple_task(n: usize, m: usize, k: usize) -> u64 {
    ((n as u64) << 40) | ((m as u64) << 20) | k as u64
}

pub fn saturation_generic(n: usize, m: usize, k: usize, sampler: &Sampler) -> Result<SaturationResult> {
    let predicted = saturation_predicted(n, m, k)?;
    let fam = saturation_family(n, m, k)?;
    let generic = generic_rank_with(&fam, sampler.trials, &mut sampler.rng(triple_task(n, m, k)));
    let witness = claim_witness_matrices(n, m, k)?.rank;
    Ok(SaturationResult { n, m, k, predicted, generic, witness })
}

/// Every triple `0 <= k <= m < n <= max_n`, in lexicographic order.
pub fn saturation_grid(max_n: usize, sampler: &Sampler) -> Result<Vec<SaturationResult>> {
    let triples: Vec<(usize, usize, usize)> = (1..=max_n)
        .flat_map(|n| (0..n).flat_map(move |m| (0..=m).map(move |k| (n, m, k))))
        .collect();
    triples.par_iter().map(|&(n, m, k)| saturation_generic(n, m, k, sampler)).collect()
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub enum ClaimCase {
    /// `k >= 2m - n`: the first `m-k` coordinates pair off with the last
    /// `m-k`, giving rank `n`.
    Full,
    /// `k <= 2m - n` (and not the boundary): the first `n-m` coordinates pair
    /// off with coordinates `n-m+k+1, ..., 2(n-m)+k`, giving rank `k + 2(n-m)`.
    Partial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClaimWitness {
    pub case: ClaimCase,
    pub matrix: SymMatrix<i64>,
    /// Rank over the rationals.
    pub rank: usize,
}

/// The explicit element of `f_k + u ∩ p_+` realizing the generic rank.
pub fn claim_witness_matrices(n: usize, m: usize, k: usize) -> Result<ClaimWitness> {
    check_triple(n, m, k)?;
    let off = n - m;
    let mut x = f_k(k, n, off)?;
    // 0-based: X_{e_i + e_j} adds E_ij + E_ji, X_{2e_i} adds E_ii
    let case = if k + n >= 2 * m {
        for i in 0..m - k {
            x.add_entry_sym(i, off + k + i, 1);
        }
        for i in m - k..off {
            x.add_entry_sym(i, i, 1);
        }
        ClaimCase::Full
    } else {
        for i in 0..off {
            x.add_entry_sym(i, off + k + i, 1);
        }
        ClaimCase::Partial
    };
    let rank = x.to_field::<BigRational>().rank();
    Ok(ClaimWitness { case, matrix: x, rank })
}

/// Rank-`n` element of `f_{m-1} + u ∩ p_+` (Levi base point on the last `m`
/// coordinates): the diagonal `E_22 + ... + E_{n-1,n-1}` plus `E_1n + E_n1`.
pub fn lemma_rank_witness(n: usize, m: usize) -> Result<SymMatrix<i64>> {
    if m == 0 || m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let mut x = f_k(m - 1, n, n - m)?;
    for j in 1..n - m {
        x.add_entry_sym(j, j, 1);
    }
    x.add_entry_sym(0, n - 1, 1);
    Ok(x)
}

/// `j_0 ..= ⌊m/2⌋` with `j_0 = max(0, m - ⌊(n-1)/2⌋)`. The range can be empty.
pub fn witness_range(n: usize, m: usize) -> RangeInclusive<usize> {
    let j0 = m.saturating_sub((n - 1) / 2);
    #[allow(clippy::reversed_empty_ranges)]
    if j0 > m / 2 {
        return 1..=0;
    }
    j0..=m / 2
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct InducedCount {
    pub j: usize,
    /// `C(m, j-1)`
    pub count: u64,
    /// Dominant `σ ∈ W(C_m)` with Levi fiber rank `2j-1`, counted by
    /// enumeration.
    pub enumerated: u64,
}

/// Levi fiber ranks of the dominant elements of `W(C_m)`, in
/// [`dominant_reps`] order.
fn levi_ranks(m: usize, sampler: &Sampler) -> Result<Vec<(SignedPermutation, usize)>> {
    dominant_reps(m)?
        .into_par_iter()
        .enumerate()
        .map(|(i, s)| {
            let r = fiber_rank(&s, sampler, i as u64)?;
            Ok((s, r))
        })
        .collect()
}

pub fn induced_witness_counts(n: usize, m: usize, sampler: &Sampler) -> Result<Vec<InducedCount>> {
    if m == 0 || m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let ranks = levi_ranks(m, sampler)?;
    Ok(witness_range(n, m)
        .map(|j| InducedCount {
            j,
            count: binomial(m as i64, j as i64 - 1),
            enumerated: ranks.iter().filter(|(_, r)| j >= 1 && *r == 2 * j - 1).count() as u64,
        })
        .collect())
}

/// Facts this crate checks for a witness.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct VerifiedFacts {
    #[serde(rename = "leviRank")]
    pub levi_rank: usize,
    pub rank: usize,
    #[serde(rename = "saturatedRank")]
    pub saturated_rank: usize,
    pub dominant: bool,
    #[serde(rename = "saturatedOrbitSpecial")]
    pub saturated_special: bool,
}

/// Conclusions that follow from imported theorems and are not computed here.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct AssertedFacts {
    #[serde(rename = "reducibleLTC")]
    pub reducible_ltc: bool,
    #[serde(rename = "reducibleAVcategoryO")]
    pub reducible_av_category_o: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct WitnessRecord {
    pub n: usize,
    pub m: usize,
    pub j: usize,
    pub sigma: SignedPermutation,
    pub w: SignedPermutation,
    #[serde(rename = "wInverse")]
    pub w_inverse: SignedPermutation,
    pub verified: VerifiedFacts,
    pub asserted: AssertedFacts,
}

/// Induced parameters `w = w0 σ` whose Harish-Chandra module has associated
/// variety `p_+` and a reducible leading term cycle; `L_{w⁻¹}` then has
/// reducible associated variety in category `O`.
pub fn generate_witnesses(n: usize, m: usize, sampler: &Sampler) -> Result<Vec<WitnessRecord>> {
    if m == 0 || m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let ranks = levi_ranks(m, sampler)?;
    let mut chosen = Vec::new();
    for j in witness_range(n, m).filter(|&j| j >= 1) {
        let levi_rank = 2 * j - 1;
        let target = saturation_predicted(n, m, levi_rank)?;
        let special = is_special(OrbitLabel::new(n, target)?);
        if !(special && target > levi_rank) {
            return Err(Error::Convention(format!(
                "O_{levi_rank} saturates to O_{target}, expected a larger special orbit"
            )));
        }
        for (i, (sigma, _)) in ranks.iter().enumerate().filter(|(_, (_, r))| *r == levi_rank) {
            chosen.push((j, i, sigma.clone(), target, special));
        }
    }
    chosen
        .into_par_iter()
        .map(|(j, i, sigma, target, special)| {
            let w = transfer_w(&sigma, n)?;
            let rank = fiber_rank(&w, sampler, (1u64 << 32) + i as u64)?;
            if rank != target {
                return Err(Error::Convention(format!(
                    "w0*{sigma} = {w} has fiber rank {rank}, saturation predicts {target}"
                )));
            }
            let dominant = is_c_dominant(&w.rho_image().neg());
            Ok(WitnessRecord {
                n,
                m,
                j,
                w_inverse: w.inverse(),
                verified: VerifiedFacts {
                    levi_rank: 2 * j - 1,
                    rank,
                    saturated_rank: target,
                    dominant,
                    saturated_special: special,
                },
                asserted: AssertedFacts { reducible_ltc: true, reducible_av_category_o: true },
                sigma,
                w,
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TransferRow {
    pub sigma: SignedPermutation,
    pub w: SignedPermutation,
    #[serde(rename = "leviRank")]
    pub levi_rank: usize,
    pub rank: usize,
    pub predicted: usize,
}

impl TransferRow {
    pub fn agrees(&self) -> bool {
        self.rank == self.predicted
    }
}

/// For each dominant `σ ∈ W(C_m)`, compare the fiber rank of `w0 σ` with the
/// saturation of the fiber rank of `σ`. `m = 0` uses the single element of
/// the trivial Weyl group.
pub fn transfer_consistency(n: usize, m: usize, sampler: &Sampler) -> Result<Vec<TransferRow>> {
    if m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let levi = if m == 0 {
        vec![(SignedPermutation::identity(0), 0)]
    } else {
        levi_ranks(m, sampler)?
    };
    levi.into_par_iter()
        .enumerate()
        .map(|(i, (sigma, levi_rank))| {
            let w = transfer_w(&sigma, n)?;
            let rank = fiber_rank(&w, sampler, (1u64 << 32) + i as u64)?;
            let predicted = saturation_predicted(n, m, levi_rank)?;
            Ok(TransferRow { sigma, w, levi_rank, rank, predicted })
        })
        .collect()
}
