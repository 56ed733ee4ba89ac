//! Quadratic extensions `Q(ζ_r)(√d)` of a cyclotomic field by a positive
//! rational `d` whose square root does not already lie in `Q(ζ_r)`.

use std::fmt;

use num_traits::Signed;

use super::cyclotomic::{CycNum, RootOrder};
use super::matrix::{Conjugate, Field};
use super::Rational;

/// `a + b·√d` with `a, b ∈ Q(ζ_r)` and `d > 0` rational.
///
/// Every value in one computation must share the same `d`; values with
/// `b = 0` are compatible with any `d`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycQuad {
    a: CycNum,
    b: CycNum,
    d: Rational,
}

impl CycQuad {
    pub fn new(a: CycNum, b: CycNum, d: Rational) -> Self {
        assert_eq!(a.order(), b.order(), "root orders must match");
        assert!(d.is_positive(), "radicand must be positive");
        CycQuad { a, b, d }
    }

    pub fn from_cyc(a: CycNum, d: Rational) -> Self {
        let b = CycNum::zero(a.order());
        CycQuad::new(a, b, d)
    }

    pub fn order(&self) -> RootOrder {
        self.a.order()
    }

    pub fn rational_part(&self) -> &CycNum {
        &self.a
    }

    pub fn surd_part(&self) -> &CycNum {
        &self.b
    }

    pub fn radicand(&self) -> &Rational {
        &self.d
    }

    /// The value as a plain cyclotomic number when the surd part vanishes.
    pub fn as_cyc(&self) -> Option<&CycNum> {
        self.b.is_zero().then_some(&self.a)
    }

    fn radicand_with(&self, other: &Self) -> Rational {
        match (self.b.is_zero(), other.b.is_zero()) {
            (false, false) => {
                assert_eq!(self.d, other.d, "radicands must match");
                self.d.clone()
            }
            (false, true) => self.d.clone(),
            (true, false) => other.d.clone(),
            (true, true) => self.d.clone(),
        }
    }
}

impl fmt::Debug for CycQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl Field for CycQuad {
    fn zero_like(&self) -> Self {
        CycQuad::from_cyc(self.a.zero_like(), self.d.clone())
    }
    fn one_like(&self) -> Self {
        CycQuad::from_cyc(self.a.one_like(), self.d.clone())
    }
    fn is_zero_elem(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        CycQuad::new(self.a.plus(&other.a), self.b.plus(&other.b), d)
    }
    fn minus(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        CycQuad::new(self.a.minus(&other.a), self.b.minus(&other.b), d)
    }
    fn times(&self, other: &Self) -> Self {
        let d = self.radicand_with(other);
        let a = self
            .a
            .times(&other.a)
            .plus(&self.b.times(&other.b).scale(&d));
        let b = self.a.times(&other.b).plus(&self.b.times(&other.a));
        CycQuad::new(a, b, d)
    }
    fn negate(&self) -> Self {
        CycQuad::new(self.a.negate(), self.b.negate(), self.d.clone())
    }
    fn inverse(&self) -> Option<Self> {
        if self.is_zero_elem() {
            return None;
        }
        // (a + b√d)^{-1} = (a - b√d) / (a² - d b²); the denominator is nonzero
        // because √d is not in Q(ζ_r).
        let den = self.a.times(&self.a).minus(&self.b.times(&self.b).scale(&self.d));
        let inv = den.inverse()?;
        Some(CycQuad::new(
            self.a.times(&inv),
            self.b.negate().times(&inv),
            self.d.clone(),
        ))
    }
    fn rational_like(&self, q: &Rational) -> Self {
        CycQuad::from_cyc(self.a.rational_like(q), self.d.clone())
    }
}

impl Conjugate for CycQuad {
    fn conj(&self) -> Self {
        // √d is real.
        CycQuad::new(self.a.conjugate(), self.b.conjugate(), self.d.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Matrix};

    fn ord(r: u32) -> RootOrder {
        RootOrder::new(r).unwrap()
    }

    #[test]
    fn sqrt_squared_is_radicand() {
        let s = CycQuad::new(CycNum::zero(ord(2)), CycNum::one(ord(2)), rat(5));
        let sq = s.times(&s);
        assert_eq!(sq.as_cyc(), Some(&CycNum::from_rational(ord(2), rat(5))));
    }

    #[test]
    fn inverse_in_extension() {
        let o = ord(3);
        let x = CycQuad::new(CycNum::root_power(o, 1), CycNum::one(o), rat(3));
        let y = x.inverse().unwrap();
        assert_eq!(x.times(&y), x.one_like());
    }

    #[test]
    fn rank_over_extension() {
        // [[1, √2], [√2, 2]] has rank 1.
        let o = ord(2);
        let one = CycQuad::from_cyc(CycNum::one(o), rat(2));
        let s2 = CycQuad::new(CycNum::zero(o), CycNum::one(o), rat(2));
        let two = one.plus(&one);
        let m = Matrix::from_rows(vec![vec![one.clone(), s2.clone()], vec![s2, two]]).unwrap();
        assert_eq!(m.rank(), 1);
    }
}
