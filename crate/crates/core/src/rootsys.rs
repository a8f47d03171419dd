//! The root system of type `C_n` with the Hermitian positive system
//! `{e_i - e_j : i < j} ∪ {e_i + e_j : i < j} ∪ {2e_i}`.
//!
//! The compact roots `e_i - e_j` are the roots of `k = gl(n)`; the positive
//! noncompact roots `e_i + e_j` and `2e_i` are the weights of `p_+ = sym(n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weyl::RootSet;

/// Integral weight in the `e`-basis of `h*`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    /// Standard basis vector `e_i` (0-based).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn pair(&self, other: &Weight) -> i64 {
        debug_assert_eq!(self.rank(), other.rank());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum RootKind {
    /// `±(e_i - e_j)`
    Compact,
    /// `±(e_i + e_j)`, `i < j`
    NoncompactShort,
    /// `±2e_i`
    NoncompactLong,
}

/// A root of `C_n`, with its kind and sign relative to the fixed positive system.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Root {
    coords: Weight,
    kind: RootKind,
    positive: bool,
}

impl Root {
    /// Classify a coordinate vector as a root, if it is one.
    pub fn from_weight(coords: Weight) -> Result<Root> {
        let nz: Vec<(usize, i64)> =
            coords.coords().iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        let (kind, positive) = match nz.as_slice() {
            [(_, c)] if c.abs() == 2 => (RootKind::NoncompactLong, *c > 0),
            [(_, a), (_, b)] if a.abs() == 1 && b.abs() == 1 => {
                if a == b {
                    (RootKind::NoncompactShort, *a > 0)
                } else {
                    // leading coordinate decides the sign of e_i - e_j
                    (RootKind::Compact, *a > 0)
                }
            }
            _ => return Err(Error::NotARoot(coords.to_string())),
        };
        Ok(Root { coords, kind, positive })
    }

    pub fn weight(&self) -> &Weight {
        &self.coords
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn is_compact(&self) -> bool {
        self.kind == RootKind::Compact
    }

    /// Member of `Δ(p_+)`.
    pub fn is_pplus(&self) -> bool {
        self.positive && !self.is_compact()
    }

    /// The (at most two) coordinates the root is supported on, 0-based, in
    /// increasing order.
    pub fn support(&self) -> (usize, Option<usize>) {
        let mut it = self.coords.coords().iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i);
        let first = it.next().expect("roots are nonzero");
        (first, it.next())
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.coords.coords();
        let (i, j) = self.support();
        let sign = |v: i64| if v > 0 { "" } else { "-" };
        match (self.kind, j) {
            (RootKind::NoncompactLong, _) => write!(f, "{}2e{}", sign(c[i]), i + 1),
            (_, Some(j)) => {
                let op = if c[j] > 0 { "+" } else { "-" };
                write!(f, "{}e{}{}e{}", sign(c[i]), i + 1, op, j + 1)
            }
            _ => unreachable!("short roots have two coordinates"),
        }
    }
}

/// Positive roots of `C_n` in the fixed index order used by [`RootSet`]:
/// compact `e_i - e_j` (lexicographic in `(i, j)`), then `e_i + e_j`
/// (lexicographic), then `2e_i`.
pub fn positive_roots(n: usize) -> Result<Vec<Root>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut out = Vec::with_capacity(n * n);
    let pair = |i: usize, j: usize, s: i64| {
        let mut v = vec![0; n];
        v[i] = 1;
        v[j] = s;
        Weight(v)
    };
    for i in 0..n {
        for j in i + 1..n {
            out.push(Root { coords: pair(i, j, -1), kind: RootKind::Compact, positive: true });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(Root { coords: pair(i, j, 1), kind: RootKind::NoncompactShort, positive: true });
        }
    }
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 2;
        out.push(Root { coords: Weight(v), kind: RootKind::NoncompactLong, positive: true });
    }
    Ok(out)
}

/// Index of a positive root in [`positive_roots`] order.
pub fn root_index(n: usize, root: &Root) -> Option<usize> {
    if !root.positive || root.coords.rank() != n {
        return None;
    }
    let compact = n * (n - 1) / 2;
    // position of (i, j), i < j, in lexicographic order of pairs
    let pair_pos = |i: usize, j: usize| i * (2 * n - i - 1) / 2 + (j - i - 1);
    match (root.kind, root.support()) {
        (RootKind::Compact, (i, Some(j))) => Some(pair_pos(i, j)),
        (RootKind::NoncompactShort, (i, Some(j))) => Some(compact + pair_pos(i, j)),
        (RootKind::NoncompactLong, (i, None)) => Some(2 * compact + i),
        _ => None,
    }
}

/// Half the sum of the positive roots: `(n, n-1, ..., 1)`.
pub fn rho(n: usize) -> Result<Weight> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(Weight((1..=n as i64).rev().collect()))
}

/// Simple roots `e_1 - e_2, ..., e_{n-1} - e_n, 2e_n`.
pub fn simple_roots(n: usize) -> Result<Vec<Root>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n - 1 {
        let mut v = vec![0; n];
        v[i] = 1;
        v[i + 1] = -1;
        out.push(Root::from_weight(Weight(v))?);
    }
    let mut v = vec![0; n];
    v[n - 1] = 2;
    out.push(Root::from_weight(Weight(v))?);
    Ok(out)
}

/// `Δ_c^+`-dominance: coordinates weakly decreasing.
pub fn is_c_dominant(weight: &Weight) -> bool {
    weight.coords().windows(2).all(|w| w[0] >= w[1])
}

/// Data of the θ-stable parabolic `q = l + u` defined by
/// `H = (n-m, ..., 2, 1, 0, ..., 0)`. The Levi factor is `C^{n-m} ⊕ sp(2m)`
/// with the `sp(2m)` on the last `m` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDatum {
    pub n: usize,
    pub m: usize,
    pub h: Weight,
    /// `Δ(u)`
    pub u_roots: RootSet,
    /// `Δ(u ∩ p_+)`
    pub u_pplus: RootSet,
    /// Positive roots vanishing on `H`.
    pub levi_roots: RootSet,
}

pub fn parabolic(n: usize, m: usize) -> Result<ParabolicDatum> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if m >= n {
        return Err(Error::LeviRank { n, m });
    }
    let h = Weight((0..n).map(|i| if i < n - m { (n - m - i) as i64 } else { 0 }).collect());
    let roots = positive_roots(n)?;
    let mut u_roots = RootSet::empty(n)?;
    let mut u_pplus = RootSet::empty(n)?;
    let mut u_p = RootSet::empty(n)?;
    let mut levi_roots = RootSet::empty(n)?;
    for (idx, root) in roots.iter().enumerate() {
        let pairing = root.weight().pair(&h);
        if pairing > 0 {
            u_roots.insert(idx);
            if !root.is_compact() {
                // every noncompact root in Δ(u) ⊂ Δ^+ is automatically in Δ(p_+)
                u_p.insert(idx);
                if root.is_pplus() {
                    u_pplus.insert(idx);
                }
            }
        } else if pairing == 0 {
            levi_roots.insert(idx);
        }
    }
    if u_p != u_pplus {
        return Err(Error::Convention("u ∩ p differs from u ∩ p_+".into()));
    }
    Ok(ParabolicDatum { n, m, h, u_roots, u_pplus, levi_roots })
}
