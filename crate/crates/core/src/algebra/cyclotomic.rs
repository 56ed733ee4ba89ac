//! Elements of the cyclotomic field `Q(ζ_r)` for prime `r`.
//!
//! Values are stored as `a_0 + a_1 ζ + ... + a_{r-2} ζ^{r-2}`. Since
//! `Φ_r(x) = 1 + x + ... + x^{r-1}` is the minimal polynomial of ζ, the
//! reduction rule is `ζ^{r-1} = -(1 + ζ + ... + ζ^{r-2})`, and two values are
//! equal exactly when their coefficient vectors are equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::matrix::{Conjugate, Field};
use super::{is_prime, AlgebraError, Rational};

/// A validated prime root order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOrder(u32);

impl RootOrder {
    pub fn new(r: u32) -> Result<Self, AlgebraError> {
        if is_prime(u64::from(r)) {
            Ok(RootOrder(r))
        } else {
            Err(AlgebraError::NotPrime(u64::from(r)))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    fn len(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for RootOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: RootOrder,
    coeffs: Vec<Rational>,
}

impl CycNum {
    pub fn new(order: RootOrder, coeffs: Vec<Rational>) -> Result<Self, AlgebraError> {
        if coeffs.len() != order.len() {
            return Err(AlgebraError::CoefficientCount {
                expected: order.len(),
                got: coeffs.len(),
            });
        }
        Ok(CycNum { order, coeffs })
    }

    pub fn zero(order: RootOrder) -> Self {
        CycNum {
            order,
            coeffs: vec![Rational::zero(); order.len()],
        }
    }

    pub fn one(order: RootOrder) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_rational(order: RootOrder, q: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); order.len()];
        coeffs[0] = q;
        CycNum { order, coeffs }
    }

    /// `ζ^k`, with `k` taken modulo `r`.
    pub fn root_power(order: RootOrder, k: i64) -> Self {
        let r = i64::from(order.get());
        let mut full = vec![Rational::zero(); order.get() as usize];
        full[k.rem_euclid(r) as usize] = Rational::one();
        Self::reduce(order, full)
    }

    pub fn order(&self) -> RootOrder {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Returns `k` when `self = ζ^k` (`0 ≤ k < r`).
    pub fn root_exponent(&self) -> Option<u32> {
        let r = self.order.get();
        let ones = self.coeffs.iter().filter(|c| !Zero::is_zero(*c)).count();
        // ζ^k for k < r-1 is a unit vector; ζ^{r-1} has all coefficients -1.
        if ones == 1 {
            let (k, c) = self.coeffs.iter().enumerate().find(|(_, c)| !Zero::is_zero(*c))?;
            if c.is_one() {
                return Some(k as u32);
            }
        }
        let minus_one = -Rational::one();
        (self.coeffs.iter().all(|c| *c == minus_one)).then_some(r - 1)
    }

    /// Lifts to a length-`r` vector over the basis `1, ζ, ..., ζ^{r-1}`.
    fn lift(&self) -> Vec<Rational> {
        let mut full = self.coeffs.clone();
        full.push(Rational::zero());
        full
    }

    /// Reduces a length-`r` vector using `ζ^{r-1} = -(1 + ... + ζ^{r-2})`.
    fn reduce(order: RootOrder, mut full: Vec<Rational>) -> Self {
        debug_assert_eq!(full.len(), order.get() as usize);
        let top = full.pop().expect("r >= 2");
        if !Zero::is_zero(&top) {
            for c in &mut full {
                *c -= &top;
            }
        }
        CycNum { order, coeffs: full }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.order != other.order {
            return Err(AlgebraError::RootOrderMismatch(self.order.get(), other.order.get()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        Ok(CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let r = self.order.get() as usize;
        let mut full = vec![Rational::zero(); r];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    full[(i + j) % r] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.order, full))
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The Galois automorphism `ζ ↦ ζ^k` (`k` coprime to `r`).
    pub fn galois(&self, k: u32) -> Self {
        let r = self.order.get() as usize;
        let mut full = vec![Rational::zero(); r];
        for (i, c) in self.lift().into_iter().enumerate() {
            if !Zero::is_zero(&c) {
                full[(i * k as usize) % r] += c;
            }
        }
        Self::reduce(self.order, full)
    }

    /// Complex conjugate, i.e. `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(self.order.get() - 1)
    }

    /// Field norm down to `Q`: product of all Galois conjugates.
    pub fn norm(&self) -> Rational {
        let r = self.order.get();
        let prod = (2..r).fold(self.clone(), |acc, k| acc.try_mul(&self.galois(k)).expect("same order"));
        prod.as_rational()
            .cloned()
            .expect("the norm of a cyclotomic number is rational")
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let r = self.order.get();
        let cofactor = (2..r).fold(CycNum::one(self.order), |acc, k| {
            acc.try_mul(&self.galois(k)).expect("same order")
        });
        let norm = self.norm();
        Ok(cofactor.scale(&norm.recip()))
    }

    /// The quadratic Gauss sum `Σ (k/r) ζ^k`; its square is `(-1)^((r-1)/2) r`.
    /// Only meaningful for odd `r`.
    pub fn gauss_sum(order: RootOrder) -> Self {
        let r = order.get();
        let squares: Vec<bool> = {
            let mut s = vec![false; r as usize];
            for x in 1..r {
                s[((x as u64 * x as u64) % r as u64) as usize] = true;
            }
            s
        };
        (1..r).fold(CycNum::zero(order), |acc, k| {
            let term = CycNum::root_power(order, i64::from(k));
            if squares[k as usize] {
                acc + term
            } else {
                acc - term
            }
        })
    }
}

/// Product of two cyclotomic numbers of the same root order.
pub fn cyc_mul(a: &CycNum, b: &CycNum) -> Result<CycNum, AlgebraError> {
    a.try_mul(b)
}

pub fn cyc_conj(a: &CycNum) -> CycNum {
    a.conjugate()
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        self.try_add(&rhs).expect("root orders must match")
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        self.try_sub(&rhs).expect("root orders must match")
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        self.try_mul(&rhs).expect("root orders must match")
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Field for CycNum {
    fn zero_like(&self) -> Self {
        CycNum::zero(self.order)
    }
    fn one_like(&self) -> Self {
        CycNum::one(self.order)
    }
    fn is_zero_elem(&self) -> bool {
        CycNum::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self.try_add(other).expect("root orders must match")
    }
    fn minus(&self, other: &Self) -> Self {
        self.try_sub(other).expect("root orders must match")
    }
    fn times(&self, other: &Self) -> Self {
        self.try_mul(other).expect("root orders must match")
    }
    fn negate(&self) -> Self {
        self.clone().neg()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn rational_like(&self, q: &Rational) -> Self {
        CycNum::from_rational(self.order, q.clone())
    }
}

impl Conjugate for CycNum {
    fn conj(&self) -> Self {
        self.conjugate()
    }
}
