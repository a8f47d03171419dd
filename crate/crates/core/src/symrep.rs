//! The matrix model `p_+ ≅ sym(n)` on which `K = GL(n)` acts by `k·X = kᵀXk`.
//!
//! Root vectors become symmetric matrices: `2e_i ↦ E_ii` and
//! `e_i + e_j ↦ E_ij + E_ji`. Generic ranks of affine families are computed
//! by sampling over [`Fp`]; a rank-deficient sample requires the random
//! coefficients to hit the zero set of a maximal nonvanishing minor, which by
//! Schwartz–Zippel happens with probability at most `degree / p` per trial.

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Matrix, MODULUS};
use crate::rootsys::{positive_roots, Root, RootKind};
use crate::weyl::RootSet;

pub const DEFAULT_TRIALS: usize = 4;

/// Symmetric `n × n` matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymMatrix<T> {
    inner: Matrix<T>,
}

impl<T: Clone + Zero + PartialEq> SymMatrix<T> {
    pub fn zero(n: usize) -> Self {
        SymMatrix { inner: Matrix::zeros(n, n) }
    }

    pub fn from_matrix(m: Matrix<T>) -> Result<Self> {
        if m.rows() != m.cols() {
            return Err(Error::Range(format!("{}x{} matrix is not square", m.rows(), m.cols())));
        }
        for i in 0..m.rows() {
            for j in i + 1..m.cols() {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::Range(format!("matrix differs from its transpose at ({i},{j})")));
                }
            }
        }
        Ok(SymMatrix { inner: m })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::from_matrix(Matrix::from_rows(rows))
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        self.inner.get(i, j)
    }

    /// Set `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: T) {
        self.inner.set(i, j, v.clone());
        self.inner.set(j, i, v);
    }

    pub fn as_matrix(&self) -> &Matrix<T> {
        &self.inner
    }

    pub fn is_zero(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| self.get(i, j).is_zero()))
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        let n = self.dim();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    /// Upper-triangle coordinates `(i <= j)`, row by row.
    pub fn sym_coords(&self) -> Vec<T> {
        let n = self.dim();
        let mut v = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }
}

impl<T: Field> SymMatrix<T> {
    pub fn rank(&self) -> usize {
        self.inner.rank()
    }

    pub fn add(&self, other: &SymMatrix<T>) -> SymMatrix<T> {
        let n = self.dim();
        let mut out = self.clone();
        for i in 0..n {
            for j in i..n {
                out.set_sym(i, j, self.get(i, j).clone() + other.get(i, j).clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> SymMatrix<T> {
        SymMatrix { inner: self.inner.map(|v| v.clone() * c.clone()) }
    }

    /// `kᵀ X k`.
    pub fn congruence(&self, k: &Matrix<T>) -> SymMatrix<T> {
        SymMatrix { inner: k.transpose().mul(&self.inner).mul(k) }
    }
}

impl SymMatrix<i64> {
    pub fn add_entry_sym(&mut self, i: usize, j: usize, v: i64) {
        let cur = *self.inner.get(i, j);
        self.set_sym(i, j, cur + v);
    }

    pub fn to_field<T: Field>(&self) -> SymMatrix<T> {
        SymMatrix { inner: self.inner.map(|&v| T::from_i64(v)) }
    }
}

/// Root vector of a positive noncompact root.
pub fn root_matrix(root: &Root, n: usize) -> Result<SymMatrix<i64>> {
    if !root.is_pplus() || root.weight().rank() != n {
        return Err(Error::NotNoncompactPositive(root.to_string()));
    }
    let mut m = SymMatrix::<i64>::zero(n);
    match (root.kind(), root.support()) {
        (RootKind::NoncompactLong, (i, None)) => m.add_entry_sym(i, i, 1),
        (RootKind::NoncompactShort, (i, Some(j))) => m.add_entry_sym(i, j, 1),
        _ => unreachable!("classified as noncompact positive"),
    }
    Ok(m)
}

/// `E_{o+1,o+1} + ... + E_{o+k,o+k}` with `o = offset`.
pub fn f_k(k: usize, n: usize, offset: usize) -> Result<SymMatrix<i64>> {
    if offset + k > n {
        return Err(Error::Range(format!("f_{k} at offset {offset} does not fit in rank {n}")));
    }
    let mut m = SymMatrix::zero(n);
    for i in offset..offset + k {
        m.add_entry_sym(i, i, 1);
    }
    Ok(m)
}

/// The affine family `{base + Σ c_i gen_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFamily {
    base: SymMatrix<i64>,
    generators: Vec<SymMatrix<i64>>,
}

impl SymFamily {
    pub fn new(base: SymMatrix<i64>, generators: Vec<SymMatrix<i64>>) -> Result<Self> {
        let n = base.dim();
        if let Some(g) = generators.iter().find(|g| g.dim() != n) {
            return Err(Error::RankMismatch { expected: n, found: g.dim() });
        }
        Ok(SymFamily { base, generators })
    }

    /// Linear span of the root vectors of `set`, which must lie in `Δ(p_+)`.
    pub fn span_of(set: &RootSet) -> Result<Self> {
        Self::affine_over(SymMatrix::zero(set.rank()), set)
    }

    /// `base + span(root vectors of set)`.
    pub fn affine_over(base: SymMatrix<i64>, set: &RootSet) -> Result<Self> {
        let n = set.rank();
        let roots = positive_roots(n)?;
        let generators =
            set.indices().map(|i| root_matrix(&roots[i], n)).collect::<Result<Vec<_>>>()?;
        Self::new(base, generators)
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &SymMatrix<i64> {
        &self.base
    }

    pub fn generators(&self) -> &[SymMatrix<i64>] {
        &self.generators
    }

    pub fn sample<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> SymMatrix<Fp> {
        let mut acc: SymMatrix<Fp> = self.base.to_field();
        for g in &self.generators {
            acc = acc.add(&g.to_field::<Fp>().scale(&Fp::random(rng)));
        }
        acc
    }
}

/// Seeded source of per-task random streams. Each task index gets its own
/// ChaCha stream, so results do not depend on scheduling.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    pub seed: u64,
    pub trials: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { seed, trials: DEFAULT_TRIALS }
    }

    pub fn with_trials(seed: u64, trials: usize) -> Self {
        Sampler { seed, trials: trials.max(1) }
    }

    pub fn rng(&self, task: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(task);
        rng
    }

    /// Upper bound on the probability that `self.trials` samples all
    /// underestimate a generic rank whose witnessing minor has degree `degree`.
    pub fn failure_bound(&self, degree: usize) -> f64 {
        (degree as f64 / MODULUS as f64).powi(self.trials as i32)
    }
}

/// Generic rank of `fam`, maximized over `trials` random samples.
pub fn generic_rank(fam: &SymFamily, trials: usize, seed: u64) -> usize {
    let sampler = Sampler::with_trials(seed, trials);
    generic_rank_with(fam, sampler.trials, &mut sampler.rng(0))
}

pub fn generic_rank_with<R: rand::Rng + ?Sized>(fam: &SymFamily, trials: usize, rng: &mut R) -> usize {
    if fam.generators.is_empty() {
        return fam.base.to_field::<Fp>().rank();
    }
    let full = fam.dim();
    let mut best = 0;
    for _ in 0..trials.max(1) {
        best = best.max(fam.sample(rng).rank());
        if best == full {
            break;
        }
    }
    best
}

/// Subalgebra of `gl(n)` whose congruence action is differentiated.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ActingAlgebra {
    Full,
    /// `a_pq = 0` for `p > q`
    UpperTriangular,
    /// `a_pq = 0` for `p < q`
    LowerTriangular,
}

impl ActingAlgebra {
    fn contains(self, p: usize, q: usize) -> bool {
        match self {
            ActingAlgebra::Full => true,
            ActingAlgebra::UpperTriangular => p <= q,
            ActingAlgebra::LowerTriangular => p >= q,
        }
    }
}

/// `b ∩ k` for the positive system `Δ_c^+ = {e_i - e_j : i < j}`.
///
/// Under `k·X = kᵀXk` the elementary matrix `E_pq ∈ gl(n)` shifts weights by
/// `e_q - e_p`, so the positive compact root vectors are the `E_pq` with
/// `p > q`.
pub const BORBIT_ALGEBRA: ActingAlgebra = ActingAlgebra::LowerTriangular;

/// `dim( {aᵀX + Xa : a ∈ alg} + span(extra) )`.
pub fn tangent_dim(x: &SymMatrix<Fp>, alg: ActingAlgebra, extra: &[SymMatrix<Fp>]) -> usize {
    let n = x.dim();
    let mut rows = Vec::with_capacity(n * n + extra.len());
    for p in 0..n {
        for q in 0..n {
            if !alg.contains(p, q) {
                continue;
            }
            // aᵀX + Xa for a = E_pq: row q receives row p of X, column q receives column p
            let mut t = SymMatrix::<Fp>::zero(n);
            for j in 0..n {
                let v = *t.get(q, j) + *x.get(p, j);
                t.inner.set(q, j, v);
            }
            for i in 0..n {
                let v = *t.get(i, q) + *x.get(i, p);
                t.inner.set(i, q, v);
            }
            rows.push(t.sym_coords());
        }
    }
    rows.extend(extra.iter().map(SymMatrix::sym_coords));
    if rows.is_empty() {
        return 0;
    }
    Matrix::from_rows(rows).rank()
}

/// Dimension of `B·V` for a linear family `V` (base must be zero), computed
/// as the tangent dimension at a generic point of `V`.
pub fn borbit_dim(fam: &SymFamily, trials: usize, seed: u64) -> Result<usize> {
    let sampler = Sampler::with_trials(seed, trials);
    borbit_dim_with(fam, BORBIT_ALGEBRA, sampler.trials, &mut sampler.rng(0))
}

pub fn borbit_dim_with<R: rand::Rng + ?Sized>(
    fam: &SymFamily,
    alg: ActingAlgebra,
    trials: usize,
    rng: &mut R,
) -> Result<usize> {
    if !fam.base.is_zero() {
        return Err(Error::Range("B-orbit dimension needs a linear family (zero base)".into()));
    }
    let gens: Vec<SymMatrix<Fp>> = fam.generators.iter().map(SymMatrix::to_field).collect();
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let x = fam.sample(rng);
        best = best.max(tangent_dim(&x, alg, &gens));
    }
    Ok(best)
}

/// `dim O_k = nk - k(k-1)/2`, the dimension of the rank-`k` symmetric matrices.
pub fn dim_orbit(n: usize, k: usize) -> Result<usize> {
    if k > n {
        return Err(Error::Range(format!("orbit O_{k} does not exist in rank {n}")));
    }
    Ok(n * k - k * k.saturating_sub(1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::BigRational;
    use crate::rootsys::Weight;

    fn root(coords: &[i64]) -> Root {
        Root::from_weight(Weight::new(coords.to_vec())).unwrap()
    }

    #[test]
    fn root_matrix_examples() {
        assert_eq!(root_matrix(&root(&[2, 0]), 2).unwrap().rows(), [[1, 0], [0, 0]]);
        assert_eq!(root_matrix(&root(&[1, 1]), 2).unwrap().rows(), [[0, 1], [1, 0]]);
        assert_eq!(root_matrix(&root(&[0, 0, 2]), 3).unwrap(), f_k(1, 3, 2).unwrap());
        assert!(matches!(root_matrix(&root(&[1, -1]), 2), Err(Error::NotNoncompactPositive(_))));
        assert!(root_matrix(&root(&[-2, 0]), 2).is_err());
        assert!(root_matrix(&root(&[2, 0]), 3).is_err());
    }

    #[test]
    fn f_k_examples() {
        assert_eq!(f_k(2, 3, 0).unwrap().rows(), [[1, 0, 0], [0, 1, 0], [0, 0, 0]]);
        assert!(f_k(0, 4, 2).unwrap().is_zero());
        let e44 = f_k(1, 4, 3).unwrap();
        assert_eq!(*e44.get(3, 3), 1);
        assert_eq!(e44.rows().iter().flatten().sum::<i64>(), 1);
        assert!(f_k(3, 4, 2).is_err());
    }

    #[test]
    fn generic_rank_examples() {
        let e11 = SymFamily::span_of(&RootSet::from_indices(2, [2]).unwrap()).unwrap();
        assert_eq!(generic_rank(&e11, 4, 0), 1);
        // e1+e2 and 2e2: det [[0,a],[a,b]] = -a^2
        let fam = SymFamily::span_of(&RootSet::from_indices(2, [1, 3]).unwrap()).unwrap();
        assert_eq!(generic_rank(&fam, 4, 0), 2);
        let fam = SymFamily::span_of(&RootSet::pplus(4).unwrap()).unwrap();
        assert_eq!(generic_rank(&fam, 4, 0), 4);
        let empty = SymFamily::new(f_k(2, 3, 1).unwrap(), vec![]).unwrap();
        assert_eq!(generic_rank(&empty, 4, 0), 2);
    }

    #[test]
    fn family_rejects_mismatched_generators() {
        let err = SymFamily::new(SymMatrix::zero(2), vec![SymMatrix::zero(3)]);
        assert!(matches!(err, Err(Error::RankMismatch { expected: 2, found: 3 })));
    }

    #[test]
    fn full_pplus_has_full_generic_rank() {
        for n in 1..=8 {
            let fam = SymFamily::span_of(&RootSet::pplus(n).unwrap()).unwrap();
            assert_eq!(generic_rank(&fam, 4, n as u64), n);
        }
    }

    #[test]
    fn borbit_dim_examples() {
        // span{E_11} is already stable under b ∩ k
        let e11 = SymFamily::span_of(&RootSet::from_indices(2, [2]).unwrap()).unwrap();
        assert_eq!(borbit_dim(&e11, 4, 0).unwrap(), 1);
        let mut rng = Sampler::new(0).rng(0);
        assert_eq!(borbit_dim_with(&e11, ActingAlgebra::UpperTriangular, 4, &mut rng).unwrap(), 2);
        // the orbital variety of O_1 is span{E_22}
        let e22 = SymFamily::span_of(&RootSet::from_indices(2, [3]).unwrap()).unwrap();
        assert_eq!(borbit_dim(&e22, 4, 0).unwrap(), dim_orbit(2, 1).unwrap());
        let full = SymFamily::span_of(&RootSet::pplus(2).unwrap()).unwrap();
        assert_eq!(borbit_dim(&full, 4, 0).unwrap(), 3);
        let zero = SymFamily::span_of(&RootSet::empty(3).unwrap()).unwrap();
        assert_eq!(borbit_dim(&zero, 4, 0).unwrap(), 0);
        let affine = SymFamily::new(f_k(1, 2, 0).unwrap(), vec![]).unwrap();
        assert!(borbit_dim(&affine, 4, 0).is_err());
    }

    #[test]
    fn dim_orbit_examples() {
        assert_eq!(dim_orbit(2, 1).unwrap(), 2);
        assert_eq!(dim_orbit(2, 2).unwrap(), 3);
        assert_eq!(dim_orbit(5, 0).unwrap(), 0);
        assert_eq!(dim_orbit(4, 4).unwrap(), 10);
        assert!(dim_orbit(3, 4).is_err());
    }

    #[test]
    fn dim_orbit_is_full_congruence_tangent_at_f_k() {
        for n in 1..=5 {
            for k in 0..=n {
                let x: SymMatrix<Fp> = f_k(k, n, 0).unwrap().to_field();
                assert_eq!(tangent_dim(&x, ActingAlgebra::Full, &[]), dim_orbit(n, k).unwrap());
            }
        }
    }

    #[test]
    fn rank_is_congruence_invariant() {
        let sampler = Sampler::new(11);
        let mut rng = sampler.rng(0);
        for n in 1..=5 {
            for k in 0..=n {
                let x: SymMatrix<Fp> = f_k(k, n, 0).unwrap().to_field();
                let mut done = 0;
                while done < 5 {
                    let rows: Vec<Vec<Fp>> =
                        (0..n).map(|_| (0..n).map(|_| Fp::random(&mut rng)).collect()).collect();
                    let g = Matrix::from_rows(rows);
                    if g.rank() < n {
                        continue;
                    }
                    assert_eq!(x.congruence(&g).rank(), k);
                    done += 1;
                }
            }
        }
    }

    #[test]
    fn sampler_streams_are_reproducible() {
        use rand::Rng;
        let s = Sampler::new(3);
        let a: Vec<u64> = (0..4).map(|_| s.rng(5).gen()).collect();
        let b: Vec<u64> = (0..4).map(|_| s.rng(5).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(s.rng(5).gen::<u64>(), s.rng(6).gen::<u64>());
        assert!(s.failure_bound(8) < 1e-68);
    }

    #[test]
    fn rational_and_modular_ranks_agree_on_witness_shape() {
        let m = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]];
        let int = SymMatrix::from_rows(m).unwrap();
        assert_eq!(int.to_field::<BigRational>().rank(), 3);
        assert_eq!(int.to_field::<Fp>().rank(), 3);
        assert!(SymMatrix::from_rows(vec![vec![0, 1], vec![0, 0]]).is_err());
    }
}
