//! Finite fields `GF(p^t)` as `GF(p)[x] / (m(x))` for a monic irreducible `m`.

use std::fmt;
use std::sync::Arc;

use super::{is_prime, AlgebraError};

/// Irreducible binary moduli for `t <= 8`, lowest coefficient first.
const BINARY_MODULI: [&[u32]; 8] = [
    &[0, 1],
    &[1, 1, 1],
    &[1, 1, 0, 1],
    &[1, 1, 0, 0, 1],
    &[1, 0, 1, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 1],
    &[1, 1, 0, 0, 0, 0, 0, 1],
    &[1, 1, 0, 1, 1, 0, 0, 0, 1],
];

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteField {
    p: u32,
    modulus: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.degree(), self.modulus)
    }
}

impl FiniteField {
    /// `GF(p^t)` with the given monic modulus (coefficients lowest first).
    pub fn new(p: u32, modulus: Vec<u32>) -> Result<Arc<Self>, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        let modulus: Vec<u32> = modulus.into_iter().map(|c| c % p).collect();
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(AlgebraError::InvalidField(
                "modulus must be monic of degree at least 1".into(),
            ));
        }
        if !is_irreducible(p, &modulus) {
            return Err(AlgebraError::Reducible(p));
        }
        Ok(Arc::new(FiniteField { p, modulus }))
    }

    /// The prime field `GF(p)`.
    pub fn prime(p: u32) -> Result<Arc<Self>, AlgebraError> {
        FiniteField::new(p, vec![0, 1])
    }

    /// `GF(2^t)` with the pinned modulus for `t <= 8`, otherwise the
    /// lexicographically first irreducible polynomial.
    pub fn binary(t: u32) -> Result<Arc<Self>, AlgebraError> {
        if t == 0 {
            return Err(AlgebraError::InvalidField("degree 0".into()));
        }
        match BINARY_MODULI.get(t as usize - 1) {
            Some(m) => FiniteField::new(2, m.to_vec()),
            None => FiniteField::new(2, first_irreducible(2, t)),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        (self.modulus.len() - 1) as u32
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        (self.p as usize).pow(self.degree())
    }
}

/// Element of a finite field; coefficients are in base `p`, lowest first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FfElement {
    field: Arc<FiniteField>,
    coeffs: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfOp {
    Add,
    Mul,
    /// Inverse of the first operand.
    Inv,
}

impl FfElement {
    pub fn new(field: &Arc<FiniteField>, coeffs: &[u32]) -> Result<Self, AlgebraError> {
        let t = field.degree() as usize;
        if coeffs.len() != t {
            return Err(AlgebraError::CoefficientCount { expected: t, got: coeffs.len() });
        }
        Ok(FfElement {
            field: Arc::clone(field),
            coeffs: coeffs.iter().map(|c| c % field.p).collect(),
        })
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        FfElement { field: Arc::clone(field), coeffs: vec![0; field.degree() as usize] }
    }

    pub fn one(field: &Arc<FiniteField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The image of an integer under `Z -> GF(p) -> GF(p^t)`.
    pub fn from_int(field: &Arc<FiniteField>, k: i64) -> Self {
        let mut e = Self::zero(field);
        e.coeffs[0] = k.rem_euclid(field.p as i64) as u32;
        e
    }

    /// The class of `x`.
    pub fn generator(field: &Arc<FiniteField>) -> Self {
        let mut full = vec![0, 1];
        reduce(field, &mut full);
        FfElement { field: Arc::clone(field), coeffs: pad(full, field.degree() as usize) }
    }

    /// Element whose base-`p` digits are the coefficients.
    pub fn from_index(field: &Arc<FiniteField>, mut index: usize) -> Self {
        let p = field.p as usize;
        let mut e = Self::zero(field);
        for c in e.coeffs.iter_mut() {
            *c = (index % p) as u32;
            index /= p;
        }
        e
    }

    pub fn index(&self) -> usize {
        let p = self.field.p as usize;
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c as usize)
    }

    /// All field elements in index order.
    pub fn all(field: &Arc<FiniteField>) -> Vec<Self> {
        (0..field.size()).map(|i| Self::from_index(field, i)).collect()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let p = self.field.p;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(FfElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FfElement { field: Arc::clone(&self.field), coeffs }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let p = self.field.p as u64;
        let t = self.coeffs.len();
        let mut full = vec![0u32; 2 * t];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                full[i + j] = ((full[i + j] as u64 + a as u64 * b as u64) % p) as u32;
            }
        }
        reduce(&self.field, &mut full);
        Ok(FfElement { field: Arc::clone(&self.field), coeffs: pad(full, t) })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base).expect("same field");
            }
            base = base.try_mul(&base).expect("same field");
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(self.pow(self.field.size() as u64 - 2))
    }
}

impl fmt::Debug for FfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

/// Field operation on two elements of the same field. For [`FfOp::Inv`] the
/// second operand only has to share the field.
pub fn ff_arith(x: &FfElement, y: &FfElement, op: FfOp) -> Result<FfElement, AlgebraError> {
    match op {
        FfOp::Add => x.try_add(y),
        FfOp::Mul => x.try_mul(y),
        FfOp::Inv => {
            x.check(y)?;
            x.inv()
        }
    }
}

/// Row-reduces a matrix over `GF(p)` in place (reduced echelon form, zero
/// rows dropped) and returns the pivot columns.
pub fn gfp_rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| !rows[i][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = mod_pow(rows[rank][col] as u64 % p64, p64 - 2, p64);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv % p64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            let factor = row[col] as u64 % p64;
            if i == rank || factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = ((*x as u64 + p64 * p64 - factor * y as u64) % p64) as u32;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    pivots
}

/// Rank of a matrix over `GF(p)`.
pub fn gfp_rank(rows: &[Vec<u32>], p: u32) -> usize {
    gfp_rref(&mut rows.to_vec(), p).len()
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn pad(mut v: Vec<u32>, len: usize) -> Vec<u32> {
    v.resize(len, 0);
    v
}

/// Reduces a polynomial in place modulo the field modulus.
fn reduce(field: &FiniteField, full: &mut Vec<u32>) {
    poly_rem(field.p, full, &field.modulus);
}

fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// `a mod m` over `GF(p)` for monic `m`.
fn poly_rem(p: u32, a: &mut Vec<u32>, m: &[u32]) {
    let p = p as u64;
    let dm = m.len() - 1;
    trim(a);
    while a.len() > dm {
        let shift = a.len() - 1 - dm;
        let lead = *a.last().unwrap() as u64;
        for (k, &mk) in m.iter().enumerate() {
            let sub = lead * mk as u64 % p;
            a[shift + k] = ((a[shift + k] as u64 + p - sub) % p) as u32;
        }
        trim(a);
    }
}

/// Trial division by every monic polynomial of degree up to half the degree.
fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut divisor = digits(p, idx, d);
            divisor.push(1);
            let mut rem = m.to_vec();
            poly_rem(p, &mut rem, &divisor);
            if rem.is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(p: u32, mut idx: usize, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let c = (idx % p as usize) as u32;
            idx /= p as usize;
            c
        })
        .collect()
}

fn first_irreducible(p: u32, t: u32) -> Vec<u32> {
    let count = (p as usize).pow(t);
    // Order by the coefficient vector read from the top, i.e. by index with
    // the highest non-leading coefficient most significant.
    (0..count)
        .map(|idx| {
            let mut m = digits(p, idx, t as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(p, m))
        .expect("irreducible polynomials exist in every degree")
}
