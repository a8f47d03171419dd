//! Exact scalar fields and dense matrices over them.
//!
//! Two fields are provided: [`Fp`], the prime field of order `2^61 - 1` used for
//! randomized generic-rank computations, and [`BigRational`] for deterministic
//! characteristic-zero ranks of small explicit matrices.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// A field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse. Must not be called on zero.
    fn inv(&self) -> Self;

    fn from_i64(v: i64) -> Self;
}

/// The Mersenne prime `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

/// A residue modulo [`MODULUS`], always stored reduced.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Default)]
pub struct Fp(u64);

impl Fp {
    pub fn new(v: u64) -> Self {
        Fp(v % MODULUS)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..MODULUS))
    }

    /// Fold a 122-bit product back into range.
    fn reduce(x: u128) -> Self {
        let lo = (x as u64) & MODULUS;
        let hi = (x >> 61) as u64;
        let mut s = lo + hi;
        // s < 2^62 here, fold once more
        s = (s & MODULUS) + (s >> 61);
        if s >= MODULUS {
            s -= MODULUS;
        }
        Fp(s)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(self.0 + MODULUS - rhs.0)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp::reduce(self.0 as u128 * rhs.0 as u128)
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.0 == 0 {
            self
        } else {
            Fp(MODULUS - self.0)
        }
    }
}

impl Zero for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl One for Fp {
    fn one() -> Self {
        Fp(1)
    }
}

impl Field for Fp {
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero in Fp");
        self.pow(MODULUS - 2)
    }

    fn from_i64(v: i64) -> Self {
        let r = v.rem_euclid(MODULUS as i64);
        Fp(r as u64)
    }
}

impl Field for BigRational {
    fn inv(&self) -> Self {
        self.recip()
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }
}

impl<T> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn map<U, F: FnMut(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Matrix<T>
    where
        T: Clone,
    {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }
}

impl<T: Field> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Matrix::<T>::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(l, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..m.cols {
                    m.data.swap(pivot * m.cols + j, rank * m.cols + j);
                }
            }
            let inv = m.get(rank, col).inv();
            for r in rank + 1..m.rows {
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                let factor = factor * inv.clone();
                for j in col..m.cols {
                    let v = m.get(r, j).clone() - factor.clone() * m.get(rank, j).clone();
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic_wraps() {
        let a = Fp::new(MODULUS - 1);
        assert_eq!(a + Fp::new(1), Fp::zero());
        assert_eq!(Fp::zero() - Fp::new(1), a);
        assert_eq!(a * a, Fp::new(1));
        assert_eq!(Fp::from_i64(-1), a);
        let x = Fp::new(123_456_789_012_345);
        assert_eq!(x * x.inv(), Fp::one());
    }

    #[test]
    fn fp_reduce_matches_bigint() {
        let a = Fp::new(MODULUS - 2);
        let b = Fp::new(MODULUS - 3);
        let expect = ((MODULUS as u128 - 2) * (MODULUS as u128 - 3)) % MODULUS as u128;
        assert_eq!((a * b).value() as u128, expect);
    }

    #[test]
    fn rational_rank() {
        let m: Matrix<BigRational> = Matrix::from_rows(vec![
            vec![1, 2, 3],
            vec![2, 4, 6],
            vec![1, 0, 1],
        ])
        .map(|&v| BigRational::from_i64(v));
        assert_eq!(m.rank(), 2);
        assert_eq!(Matrix::<BigRational>::identity(4).rank(), 4);
        assert_eq!(Matrix::<Fp>::zeros(3, 5).rank(), 0);
    }
}
