//! `K`-orbits `O_k` on `p_+ ≅ sym(n)` (symmetric matrices of rank `k`), their
//! complex orbits and partitions, and the real-form admissibility test for
//! `Sp(p,q)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The orbit `O_k` in rank `n`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct OrbitLabel {
    n: usize,
    k: usize,
}

impl OrbitLabel {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        if k > n {
            return Err(Error::Range(format!("orbit O_{k} does not exist in rank {n}")));
        }
        Ok(OrbitLabel { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Closure order is the order on `k`.
    pub fn in_closure_of(&self, other: &OrbitLabel) -> bool {
        self.n == other.n && self.k <= other.k
    }
}

impl fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_{}", self.k)
    }
}

/// A partition listed in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut rows: Vec<usize>) -> Self {
        rows.retain(|&r| r > 0);
        rows.sort_unstable_by(|a, b| b.cmp(a));
        Partition(rows)
    }

    pub fn rows(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `[2^k, 1^{2n-2k}]`.
pub fn partition_of(orbit: OrbitLabel) -> Partition {
    let mut rows = vec![2; orbit.k];
    rows.extend(std::iter::repeat(1).take(2 * (orbit.n - orbit.k)));
    Partition(rows)
}

/// `O_k^C` is special iff `k` is even or `k = n`.
pub fn is_special(orbit: OrbitLabel) -> bool {
    orbit.k % 2 == 0 || orbit.k == orbit.n
}

/// Dimension of the Springer representation of `O_k^C`: `C(n, ⌊k/2⌋)`.
pub fn springer_dim(orbit: OrbitLabel) -> u64 {
    binomial(orbit.n as i64, (orbit.k / 2) as i64)
}

/// Number of conormal bundles with moment image `closure(O_k)`, which equals
/// the Springer dimension because the `A_G(f)` and `A_K(f)` orbits on the
/// components of the Springer fiber coincide for `(Sp(2n), GL(n))`.
pub fn predicted_conormal_count(orbit: OrbitLabel) -> u64 {
    springer_dim(orbit)
}

/// A candidate signed Young diagram shape for `Sp(p,q)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SignedPartitionQuery {
    pub rows: Partition,
    pub p: usize,
    pub q: usize,
}

impl SignedPartitionQuery {
    pub fn new(rows: Vec<usize>, p: usize, q: usize) -> Self {
        SignedPartitionQuery { rows: Partition::new(rows), p, q }
    }
}

/// Outcome of [`spq_analysis`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpqVerdict {
    pub admissible: bool,
    /// Some assignment of row signs meets the parity rules, ignoring the
    /// signature.
    pub parity_feasible: bool,
    /// Some alternating sign assignment has the requested signature, ignoring
    /// the parity rules.
    pub signature_feasible: bool,
}

impl SpqVerdict {
    /// The signature is attainable, but not by any assignment obeying the
    /// parity rules.
    pub fn conflicting(&self) -> bool {
        self.signature_feasible && !self.admissible
    }
}

pub fn spq_admissible(query: &SignedPartitionQuery) -> Result<bool> {
    spq_analysis(query).map(|v| v.admissible)
}

/// Searches the sign assignments allowed by the parity rules:
/// for each even row length, as many rows begin with `+` as with `-`;
/// for each odd row length, the rows beginning with `+` and those beginning
/// with `-` are both even in number. Signs alternate along a row, so the
/// signature of the diagram must come out as `2p` plus boxes and `2q` minus
/// boxes.
pub fn spq_analysis(query: &SignedPartitionQuery) -> Result<SpqVerdict> {
    let total = query.rows.size();
    let expected = 2 * (query.p + query.q);
    if total != expected {
        return Err(Error::InconsistentTotals { rows: total, expected });
    }
    let mut classes: BTreeMap<usize, usize> = BTreeMap::new();
    for &r in query.rows.rows() {
        *classes.entry(r).or_default() += 1;
    }
    // per class: plus-box counts under the parity rules, and without them
    let mut ruled: Vec<Vec<usize>> = Vec::new();
    let mut free: Vec<Vec<usize>> = Vec::new();
    for (&len, &count) in &classes {
        let plus_boxes = |a: usize| a * len.div_ceil(2) + (count - a) * (len / 2);
        ruled.push(
            (0..=count)
                .filter(|&a| if len % 2 == 0 { 2 * a == count } else { a % 2 == 0 && (count - a) % 2 == 0 })
                .map(plus_boxes)
                .collect(),
        );
        free.push((0..=count).map(plus_boxes).collect());
    }
    let parity_feasible = ruled.iter().all(|o| !o.is_empty());
    let target = 2 * query.p;
    Ok(SpqVerdict {
        admissible: reaches(&ruled, total, target),
        parity_feasible,
        signature_feasible: reaches(&free, total, target),
    })
}

/// Whether picking one entry from each option list can sum to `target`.
fn reaches(options: &[Vec<usize>], total: usize, target: usize) -> bool {
    let mut reachable = vec![false; total + 1];
    reachable[0] = true;
    for opts in options {
        let mut next = vec![false; total + 1];
        for (s, _) in reachable.iter().enumerate().filter(|(_, &r)| r) {
            for &o in opts {
                if s + o <= total {
                    next[s + o] = true;
                }
            }
        }
        reachable = next;
    }
    reachable[target]
}
