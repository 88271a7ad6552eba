//! Scalar abstraction and small dense matrices.
//!
//! Exact work (Pluecker relations, exchange relations, D=4 controls) runs over
//! [`BigRational`]; D=3 kinematics runs over [`Complex64`]. Everything that
//! evaluates a determinant or a spinor contraction is generic over [`Scalar`].

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Absolute value as a float; used for pivoting and residuals.
    fn magnitude(&self) -> f64;

    fn from_i64(v: i64) -> Self;

    /// Compares absolute values; exact for exact scalars.
    fn magnitude_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.magnitude().total_cmp(&other.magnitude())
    }

    /// True when arithmetic is exact, so that `==` is a meaningful test.
    const EXACT: bool;
}

impl Scalar for BigRational {
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn magnitude_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.abs().cmp(&other.abs())
    }

    const EXACT: bool = true;
}

impl Scalar for Complex64 {
    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    const EXACT: bool = false;
}

impl Scalar for f64 {
    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    const EXACT: bool = false;
}

/// Determinant by Gaussian elimination with largest-magnitude pivoting.
/// `rows` is consumed as scratch space.
#[allow(clippy::needless_range_loop)]
pub fn determinant<S: Scalar>(mut rows: Vec<Vec<S>>) -> S {
    let dim = rows.len();
    let mut det = S::one();
    for col in 0..dim {
        let mut pivot = None;
        let mut best = 0.0;
        for (r, row) in rows.iter().enumerate().skip(col) {
            if row[col].is_zero() {
                continue;
            }
            let m = row[col].magnitude();
            if pivot.is_none() || m > best {
                pivot = Some(r);
                best = m;
            }
        }
        let Some(p) = pivot else {
            return S::zero();
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot_val = rows[col][col].clone();
        det = det * pivot_val.clone();
        for r in col + 1..dim {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / pivot_val.clone();
            for c in col + 1..dim {
                let delta = factor.clone() * rows[col][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
            rows[r][col] = S::zero();
        }
    }
    det
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type RationalMatrix = Matrix<BigRational>;

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Malformed(format!(
                "matrix data has {} entries, expected {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Malformed("ragged matrix rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| S::from_i64(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn scale_column(&mut self, c: usize, t: &S) {
        for r in 0..self.rows {
            let v = self.get(r, c).clone() * t.clone();
            self.set(r, c, v);
        }
    }

    /// Determinant of the square submatrix on the given 0-based columns, in
    /// the given order.
    pub fn minor(&self, cols: &[usize]) -> S {
        debug_assert_eq!(cols.len(), self.rows);
        let rows = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        determinant(rows)
    }

    /// Product of the Euclidean norms of the selected columns (Hadamard
    /// bound on `|minor(cols)|`).
    pub fn hadamard_bound(&self, cols: &[usize]) -> f64 {
        cols.iter()
            .map(|&c| {
                (0..self.rows)
                    .map(|r| self.get(r, c).magnitude().powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .product()
    }
}

/// Sign of the permutation that sorts `items`, or `None` if two items are equal.
pub fn sort_sign<T: Ord>(items: &[T]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            match items[i].cmp(&items[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}
