//! The Weyl group `W(C_n)` realized as signed permutations.
//!
//! A signed permutation `w` acts on the standard basis by
//! `w(e_j) = signs[j] * e_{perm[j]}`. Products compose right to left:
//! `(w * v)(λ) = w(v(λ))`.
//!
//! The textual form lists `signs[j] * (perm[j] + 1)` with an explicit sign,
//! e.g. `[-3,+1,-2]` sends `e_1 ↦ -e_3`, `e_2 ↦ e_1`, `e_3 ↦ -e_2`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::{positive_roots, Root, Weight};

/// Largest rank whose positive roots fit in a [`RootSet`] bitmask.
pub const MAX_ROOTSET_RANK: usize = 11;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::InvalidSignedPermutation(format!(
                "{} images but {} signs",
                n,
                signs.len()
            )));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidSignedPermutation(format!("{perm:?} is not a bijection")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSignedPermutation(format!("signs {signs:?} not all ±1")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n] }
    }

    /// `-id`, the longest element of `W(C_n)`.
    pub fn negation(n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![-1; n] }
    }

    /// The unsigned permutation reversing coordinates `from..n`.
    pub fn reversal(n: usize, from: usize) -> Self {
        let perm = (0..n).map(|j| if j < from { j } else { n - 1 - (j - from) }).collect();
        SignedPermutation { perm, signs: vec![1; n] }
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self * rhs`: apply `rhs` first.
    pub fn compose(&self, rhs: &SignedPermutation) -> Result<SignedPermutation> {
        self.check_rank(rhs.rank())?;
        let (perm, signs) = (0..self.rank())
            .map(|j| {
                let mid = rhs.perm[j];
                (self.perm[mid], rhs.signs[j] * self.signs[mid])
            })
            .unzip();
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            signs[self.perm[j]] = self.signs[j];
        }
        SignedPermutation { perm, signs }
    }

    /// Linear action on `h*`.
    pub fn act(&self, weight: &Weight) -> Result<Weight> {
        self.check_rank(weight.rank())?;
        let mut out = vec![0; self.rank()];
        for (j, &c) in weight.coords().iter().enumerate() {
            out[self.perm[j]] = self.signs[j] as i64 * c;
        }
        Ok(Weight::new(out))
    }

    /// `w ρ`.
    pub fn rho_image(&self) -> Weight {
        let n = self.rank();
        let mut out = vec![0; n];
        for j in 0..n {
            out[self.perm[j]] = self.signs[j] as i64 * (n - j) as i64;
        }
        Weight::new(out)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        if self.rank() == 0 {
            return 0;
        }
        let roots = positive_roots(self.rank()).expect("rank >= 1");
        roots
            .iter()
            .filter(|r| {
                let image = self.act(r.weight()).expect("same rank");
                !Root::from_weight(image).expect("W permutes roots").is_positive()
            })
            .count()
    }

    /// Extend an element of `W(C_m)` to `W(C_n)`, acting on the last `m`
    /// coordinates.
    pub fn embed_levi(&self, n: usize) -> Result<SignedPermutation> {
        let m = self.rank();
        if m > n {
            return Err(Error::Range(format!("cannot embed W(C_{m}) into W(C_{n})")));
        }
        let off = n - m;
        let mut perm: Vec<usize> = (0..off).collect();
        let mut signs = vec![1; off];
        perm.extend(self.perm.iter().map(|p| p + off));
        signs.extend_from_slice(&self.signs);
        Ok(SignedPermutation { perm, signs })
    }

    fn check_rank(&self, found: usize) -> Result<()> {
        if found != self.rank() {
            return Err(Error::RankMismatch { expected: self.rank(), found });
        }
        Ok(())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for j in 0..self.rank() {
            if j > 0 {
                write!(f, ",")?;
            }
            let s = if self.signs[j] > 0 { '+' } else { '-' };
            write!(f, "{s}{}", self.perm[j] + 1)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSignedPermutation(s.to_string());
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(SignedPermutation::identity(0));
        }
        let mut perm = Vec::new();
        let mut signs = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            let (sign, digits) = match tok.as_bytes().first() {
                Some(b'+') => (1, &tok[1..]),
                Some(b'-') => (-1, &tok[1..]),
                _ => return Err(bad()),
            };
            let v: usize = digits.parse().map_err(|_| bad())?;
            if v == 0 {
                return Err(bad());
            }
            perm.push(v - 1);
            signs.push(sign);
        }
        SignedPermutation::new(perm, signs)
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Subset of the positive roots of `C_n`, indexed as in
/// [`positive_roots`](crate::rootsys::positive_roots).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct RootSet {
    rank: usize,
    bits: u128,
}

impl RootSet {
    pub fn empty(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        if rank > MAX_ROOTSET_RANK {
            return Err(Error::RankTooLarge(rank));
        }
        Ok(RootSet { rank, bits: 0 })
    }

    pub fn full(rank: usize) -> Result<Self> {
        let mut s = Self::empty(rank)?;
        s.bits = Self::universe_mask(rank);
        Ok(s)
    }

    /// `Δ(p_+)`.
    pub fn pplus(rank: usize) -> Result<Self> {
        let mut s = Self::empty(rank)?;
        let compact = rank * (rank - 1) / 2;
        s.bits = Self::universe_mask(rank) & !((1u128 << compact) - 1);
        Ok(s)
    }

    pub fn from_indices(rank: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(rank)?;
        for i in indices {
            if i >= rank * rank {
                return Err(Error::Range(format!("root index {i} out of range for rank {rank}")));
            }
            s.insert(i);
        }
        Ok(s)
    }

    fn universe_mask(rank: usize) -> u128 {
        let size = rank * rank;
        if size == 128 {
            u128::MAX
        } else {
            (1u128 << size) - 1
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < self.rank * self.rank);
        self.bits |= 1 << index;
    }

    pub fn contains(&self, index: usize) -> bool {
        self.bits >> index & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank * self.rank).filter(|&i| self.contains(i))
    }

    pub fn roots(&self) -> Vec<Root> {
        let all = positive_roots(self.rank).expect("rank >= 1");
        self.indices().map(|i| all[i].clone()).collect()
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        debug_assert_eq!(self.rank, other.rank);
        RootSet { rank: self.rank, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        debug_assert_eq!(self.rank, other.rank);
        RootSet { rank: self.rank, bits: self.bits & other.bits }
    }

    /// Complement inside `Δ^+`.
    pub fn complement(&self) -> RootSet {
        RootSet { rank: self.rank, bits: !self.bits & Self::universe_mask(self.rank) }
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.rank == other.rank && self.bits & !other.bits == 0
    }
}

/// `n ∩ n^w`: the positive roots `α` with `w⁻¹α > 0`, equivalently
/// `<α, wρ> > 0`.
pub fn n_cap_nw(w: &SignedPermutation) -> Result<RootSet> {
    let n = w.rank();
    let roots = positive_roots(n)?;
    let wrho = w.rho_image();
    let mut set = RootSet::empty(n)?;
    for (i, r) in roots.iter().enumerate() {
        if r.weight().pair(&wrho) > 0 {
            set.insert(i);
        }
    }
    Ok(set)
}

/// Every element of `W(C_n)`, in lexicographic (permutation, signs) order.
pub fn all_elements(n: usize) -> impl Iterator<Item = SignedPermutation> {
    (0..n).permutations(n).flat_map(move |perm| {
        (0..1u32 << n).map(move |mask| {
            let signs = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
            SignedPermutation { perm: perm.clone(), signs }
        })
    })
}

/// The `2^n` elements `w` with `-wρ` `Δ_c^+`-dominant, i.e. with `wρ` strictly
/// increasing. One element per sign pattern on `ρ`: the signed values are
/// sorted and the permutation is read off from the sorted positions.
pub fn dominant_reps(n: usize) -> Result<Vec<SignedPermutation>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0..1u32 << n {
        let signs: Vec<i8> = (0..n).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
        // signed image of e_j contributes signs[j] * (n - j) to wρ
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&j| signs[j] as i64 * (n - j) as i64);
        let mut perm = vec![0; n];
        for (pos, &j) in order.iter().enumerate() {
            perm[j] = pos;
        }
        out.push(SignedPermutation { perm, signs });
    }
    Ok(out)
}

/// Long elements for the parabolic of Levi rank `m`:
/// `w_K` reverses all coordinates (long element of `W(k) = S_n`), `w_KL`
/// reverses the last `m` (long element of `W(k ∩ l)`), and `w0 = w_K * w_KL`.
pub fn long_elements(
    n: usize,
    m: usize,
) -> Result<(SignedPermutation, SignedPermutation, SignedPermutation)> {
    if m > n {
        return Err(Error::LeviRank { n, m });
    }
    let wk = SignedPermutation::reversal(n, 0);
    let wkl = SignedPermutation::reversal(n, n - m);
    let w0 = wk.compose(&wkl)?;
    Ok((wk, wkl, w0))
}

/// `w = w0 * σ` for `σ ∈ W(C_m)` embedded on the last `m` coordinates.
///
/// Dominance of `-σρ_l` in the Levi must carry over to dominance of `-wρ`;
/// a failure here means the product order of the long elements is wrong.
pub fn transfer_w(sigma: &SignedPermutation, n: usize) -> Result<SignedPermutation> {
    let m = sigma.rank();
    if m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let (_, _, w0) = long_elements(n, m)?;
    let w = w0.compose(&sigma.embed_levi(n)?)?;
    let levi_dominant = m == 0 || crate::rootsys::is_c_dominant(&sigma.rho_image().neg());
    if levi_dominant && !crate::rootsys::is_c_dominant(&w.rho_image().neg()) {
        return Err(Error::Convention(format!(
            "w0*{sigma} = {w} is not dominant although {sigma} is Levi-dominant"
        )));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{is_c_dominant, rho, RootKind};

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn with_rho_image(n: usize, target: &[i64]) -> SignedPermutation {
        all_elements(n).find(|w| w.rho_image().coords() == target).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let w = sp("[-3,+1,-2]");
        assert_eq!(w.perm(), [2, 0, 1]);
        assert_eq!(w.signs(), [-1, 1, -1]);
        assert_eq!(w.to_string(), "[-3,+1,-2]");
        let e: Vec<i64> = w.act(&Weight::basis(3, 0)).unwrap().coords().to_vec();
        assert_eq!(e, [0, 0, -1]);
        for bad in ["[1,2]", "[+1,+1]", "+1,+2", "[+0]", "[+1,-3]", "[+a]"] {
            assert!(bad.parse::<SignedPermutation>().is_err(), "{bad}");
        }
    }

    #[test]
    fn act_examples() {
        let rho2 = rho(2).unwrap();
        assert_eq!(SignedPermutation::identity(2).act(&rho2).unwrap(), rho2);
        assert_eq!(SignedPermutation::negation(2).act(&rho2).unwrap().coords(), [-2, -1]);
        assert_eq!(sp("[+2,+1]").act(&rho2).unwrap().coords(), [1, 2]);
        assert!(matches!(
            sp("[+2,+1]").act(&rho(3).unwrap()),
            Err(Error::RankMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn rho_image_agrees_with_act() {
        for w in all_elements(4) {
            assert_eq!(w.rho_image(), w.act(&rho(4).unwrap()).unwrap());
        }
    }

    #[test]
    fn group_order() {
        assert_eq!(all_elements(1).count(), 2);
        assert_eq!(all_elements(3).count(), 48);
        assert_eq!(all_elements(5).count(), 3840);
    }

    #[test]
    fn n_cap_nw_examples() {
        assert_eq!(n_cap_nw(&SignedPermutation::identity(3)).unwrap(), RootSet::full(3).unwrap());
        let names = |w: &SignedPermutation| -> Vec<String> {
            n_cap_nw(w).unwrap().roots().iter().map(ToString::to_string).collect()
        };
        assert_eq!(names(&with_rho_image(2, &[-2, 1])), ["2e2"]);
        assert_eq!(names(&with_rho_image(2, &[-1, 2])), ["e1+e2", "2e2"]);
    }

    #[test]
    fn n_cap_nw_matches_inverse_action_definition() {
        // independent route: apply w⁻¹ to each positive root
        for w in all_elements(3) {
            let inv = w.inverse();
            let direct: Vec<usize> = positive_roots(3)
                .unwrap()
                .iter()
                .enumerate()
                .filter(|(_, r)| {
                    Root::from_weight(inv.act(r.weight()).unwrap()).unwrap().is_positive()
                })
                .map(|(i, _)| i)
                .collect();
            assert_eq!(n_cap_nw(&w).unwrap().indices().collect::<Vec<_>>(), direct);
        }
    }

    #[test]
    fn length_complements_n_cap_nw() {
        for n in 1..=5 {
            for w in all_elements(n) {
                assert_eq!(n_cap_nw(&w).unwrap().len() + w.length(), n * n);
            }
        }
    }

    #[test]
    fn inversion_set_criterion_for_dominance() {
        // n ∩ n^y ⊆ Δ(p_+) exactly when -yρ is Δ_c^+-dominant, over all of W
        for n in 1..=5 {
            let pplus = RootSet::pplus(n).unwrap();
            let flipped = |y: &SignedPermutation| -> RootSet {
                // the other convention {α > 0 : yα > 0}
                n_cap_nw(&y.inverse()).unwrap()
            };
            let mut flipped_fails = 0;
            for y in all_elements(n) {
                let dominant = is_c_dominant(&y.rho_image().neg());
                assert_eq!(n_cap_nw(&y).unwrap().is_subset(&pplus), dominant, "{y}");
                if flipped(&y).is_subset(&pplus) != dominant {
                    flipped_fails += 1;
                }
            }
            if n >= 2 {
                assert!(flipped_fails > 0, "the inverse convention should fail at n = {n}");
            }
        }
    }

    #[test]
    fn dominant_reps_match_filter() {
        for n in 1..=5 {
            let mut brute: Vec<_> =
                all_elements(n).filter(|w| is_c_dominant(&w.rho_image().neg())).collect();
            let mut fast = dominant_reps(n).unwrap();
            brute.sort();
            fast.sort();
            assert_eq!(fast, brute);
        }
        for n in 1..=10 {
            let reps = dominant_reps(n).unwrap();
            assert_eq!(reps.len(), 1 << n);
            assert!(reps.iter().all(|w| is_c_dominant(&w.rho_image().neg())));
        }
        let images: Vec<Vec<i64>> =
            dominant_reps(2).unwrap().iter().map(|w| w.rho_image().coords().to_vec()).collect();
        for target in [[1, 2], [-1, 2], [-2, 1], [-2, -1]] {
            assert!(images.iter().any(|v| v.as_slice() == target));
        }
    }

    #[test]
    fn long_element_examples() {
        let (wk, wkl, w0) = long_elements(2, 0).unwrap();
        assert_eq!(wk, sp("[+2,+1]"));
        assert_eq!(wkl, SignedPermutation::identity(2));
        assert_eq!(w0, wk);

        let (wk, wkl, w0) = long_elements(3, 2).unwrap();
        assert_eq!(wk, sp("[+3,+2,+1]"));
        assert_eq!(wkl, sp("[+1,+3,+2]"));
        // e_1 -> e_1 -> e_3, e_2 -> e_3 -> e_1, e_3 -> e_2 -> e_2
        assert_eq!(w0, sp("[+3,+1,+2]"));

        let (_, _, w0) = long_elements(4, 4).unwrap();
        assert_eq!(w0, SignedPermutation::identity(4));
    }

    #[test]
    fn embed_examples() {
        assert_eq!(SignedPermutation::identity(2).embed_levi(4).unwrap(), SignedPermutation::identity(4));
        assert_eq!(SignedPermutation::negation(2).embed_levi(3).unwrap(), sp("[+1,-2,-3]"));
        assert_eq!(sp("[+2,+1]").embed_levi(4).unwrap(), sp("[+1,+2,+4,+3]"));
        assert!(sp("[+2,+1]").embed_levi(1).is_err());
    }

    #[test]
    fn transfer_examples() {
        let w = transfer_w(&SignedPermutation::negation(1), 2).unwrap();
        assert!(is_c_dominant(&w.rho_image().neg()));
        assert_eq!(transfer_w(&SignedPermutation::identity(0), 2).unwrap(), sp("[+2,+1]"));

        let mut ws: Vec<_> =
            dominant_reps(2).unwrap().iter().map(|s| transfer_w(s, 4).unwrap()).collect();
        assert!(ws.iter().all(|w| is_c_dominant(&w.rho_image().neg())));
        ws.sort();
        ws.dedup();
        assert_eq!(ws.len(), 4);
        assert!(transfer_w(&SignedPermutation::identity(3), 3).is_err());
    }

    #[test]
    fn only_one_long_element_order_preserves_dominance() {
        // w_K * w_KL works; w_KL * w_K breaks dominance once the Levi has rank >= 2
        for n in 3..=5 {
            for m in 2..n {
                let (wk, wkl, _) = long_elements(n, m).unwrap();
                let other = wkl.compose(&wk).unwrap();
                let broken = dominant_reps(m).unwrap().iter().any(|s| {
                    let w = other.compose(&s.embed_levi(n).unwrap()).unwrap();
                    !is_c_dominant(&w.rho_image().neg())
                });
                assert!(broken, "n={n} m={m}");
                for s in dominant_reps(m).unwrap() {
                    transfer_w(&s, n).unwrap();
                }
            }
        }
    }

    #[test]
    fn rootset_algebra() {
        let a = RootSet::from_indices(2, [0, 1]).unwrap();
        let b = RootSet::from_indices(2, [1, 3]).unwrap();
        assert_eq!(a.union(&b).indices().collect::<Vec<_>>(), [0, 1, 3]);
        assert_eq!(a.intersection(&b).indices().collect::<Vec<_>>(), [1]);
        assert_eq!(a.complement().indices().collect::<Vec<_>>(), [2, 3]);
        assert!(a.intersection(&b).is_subset(&a));
        assert!(RootSet::from_indices(2, [4]).is_err());
        assert!(RootSet::empty(12).is_err());
        assert_eq!(RootSet::full(11).unwrap().len(), 121);
        let pplus = RootSet::pplus(3).unwrap();
        assert!(pplus.roots().iter().all(|r| r.kind() != RootKind::Compact));
        assert_eq!(pplus.len(), 6);
    }
}
