//! Dense matrices over exact fields.

use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{AlgebraError, Rational};

/// An exact field whose elements carry enough context (e.g. the root order of
/// a cyclotomic field) to build their own zero and one.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    /// Embeds a rational into the same field as `self`.
    fn rational_like(&self, q: &Rational) -> Self;
}

/// Complex conjugation (identity on real fields).
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
}

impl Conjugate for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut list = f.debug_list();
        for i in 0..self.rows {
            list.entry(&&self.data[i * self.cols..(i + 1) * self.cols]);
        }
        list.finish()
    }
}

impl<F> Matrix<F> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn map<G>(&self, f: impl FnMut(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &F)> {
        let cols = self.cols;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| ((k / cols, k % cols), v))
    }
}

impl<F: Field> Matrix<F> {
    /// Identity of size `n` in the field of `sample`.
    pub fn identity(n: usize, sample: &F) -> Self {
        let zero = sample.zero_like();
        let one = sample.one_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros(rows: usize, cols: usize, sample: &F) -> Self {
        let zero = sample.zero_like();
        Matrix::from_fn(rows, cols, |_, _| zero.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero_elem)
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_shape(other)?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.minus(b)).collect(),
        })
    }

    pub fn scale(&self, s: &F) -> Self {
        self.map(|a| a.times(s))
    }

    /// Matrix product. Rows are computed in parallel; the result does not
    /// depend on scheduling.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let (n, m) = (self.cols, other.cols);
        let Some(sample) = self.data.first().or(other.data.first()) else {
            return Ok(Matrix { rows: self.rows, cols: m, data: Vec::new() });
        };
        let zero = sample.zero_like();
        let data: Vec<F> = (0..self.rows)
            .into_par_iter()
            .flat_map_iter(|i| {
                let row = &self.data[i * n..(i + 1) * n];
                let mut acc = vec![zero.clone(); m];
                for (k, a) in row.iter().enumerate() {
                    if a.is_zero_elem() {
                        continue;
                    }
                    let other_row = &other.data[k * m..(k + 1) * m];
                    for (slot, b) in acc.iter_mut().zip(other_row) {
                        if !b.is_zero_elem() {
                            *slot = slot.plus(&a.times(b));
                        }
                    }
                }
                acc
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols: m, data })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> Result<F, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare(self.rows, self.cols));
        }
        let sample = self.data.first().ok_or(AlgebraError::Dimension("empty matrix".into()))?;
        Ok((0..self.rows).fold(sample.zero_like(), |acc, i| acc.plus(self.get(i, i))))
    }

    /// Rank by exact Gaussian elimination over the entry field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !m.get(r, col).is_zero_elem()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    m.data.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = m
                .get(rank, col)
                .inverse()
                .expect("pivot is nonzero in a field");
            for j in col..cols {
                let v = m.get(rank, j).times(&inv);
                m.set(rank, j, v);
            }
            for r in 0..rows {
                if r == rank || m.get(r, col).is_zero_elem() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..cols {
                    let v = m.get(r, j).minus(&factor.times(m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    fn same_shape(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }
}

impl<F: Field + Conjugate> Matrix<F> {
    pub fn conj_transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }
}

/// Returns true iff `Σ coeffs[i] · M^i` is the zero matrix.
pub fn mat_poly_check<F: Field>(m: &Matrix<F>, coeffs: &[Rational]) -> Result<bool, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    let Some(sample) = m.data.first() else {
        return Ok(true);
    };
    let Some((lead, rest)) = coeffs.split_last() else {
        return Ok(true);
    };
    let identity = Matrix::identity(n, sample);
    // Horner: acc = ((c_k M + c_{k-1}) M + ...) + c_0
    let mut acc = identity.scale(&sample.rational_like(lead));
    for c in rest.iter().rev() {
        acc = acc.mul(m)?.add(&identity.scale(&sample.rational_like(c)))?;
    }
    Ok(acc.is_zero())
}

pub fn mat_rank_exact<F: Field>(m: &Matrix<F>) -> usize {
    m.rank()
}
