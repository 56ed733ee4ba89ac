//! Real quadratic surds `a + b√d` with rational `a, b` and integer `d ≥ 0`.
//!
//! Used for eigenvalues `(δ ± √(δ² + 4(n-1)))/2` and everything derived from
//! them. Comparisons are decided by sign analysis on squares, never floats.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{exact_sqrt, Rational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: Rational,
    b: Rational,
    d: BigInt,
}

impl QuadraticSurd {
    /// `a + b√d`; `d` must be nonnegative. Square factors of `d` move into
    /// `b`, so values compare structurally.
    pub fn new(a: Rational, b: Rational, d: BigInt) -> Self {
        assert!(!d.is_negative(), "radicand must be nonnegative");
        if b.is_zero() {
            return QuadraticSurd { a, b, d: BigInt::zero() };
        }
        if let Some(s) = exact_sqrt(&d) {
            return QuadraticSurd {
                a: a + b * Rational::from_integer(s),
                b: Rational::zero(),
                d: BigInt::zero(),
            };
        }
        let (k, d) = split_square(d);
        QuadraticSurd { a, b: b * Rational::from_integer(k), d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadraticSurd::new(a, Rational::zero(), BigInt::zero())
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(Rational::from_integer(n.into()))
    }

    /// `sign·√d`.
    pub fn sqrt(d: BigInt) -> Self {
        QuadraticSurd::new(Rational::zero(), Rational::one(), d)
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> &BigInt {
        &self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn is_integer(&self) -> bool {
        self.as_integer().is_some()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of the real value.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&Rational::zero());
        let sb = self.b.cmp(&Rational::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with b²d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rational::from_integer(self.d.clone());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(QuadraticSurd::integer(1), |acc, _| acc * self.clone())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        // (a + b√d)^{-1} = (a - b√d)/(a² - b²d)
        let den = &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.d.clone());
        QuadraticSurd::new(&self.a / &den, -&self.b / &den, self.d.clone())
    }

    fn radicand_with(&self, other: &Self) -> BigInt {
        match (self.b.is_zero(), other.b.is_zero()) {
            (false, false) => {
                assert_eq!(self.d, other.d, "incompatible radicands");
                self.d.clone()
            }
            (false, true) => self.d.clone(),
            _ => other.d.clone(),
        }
    }
}

/// Writes `d = k²·e` with `e` squarefree. Radicands beyond `u64` are only
/// stripped of square factors below `10^6`.
fn split_square(d: BigInt) -> (BigInt, BigInt) {
    let limit: u64 = d.to_u64().unwrap_or(1_000_000 * 1_000_000);
    let mut k = BigInt::one();
    let mut e = d;
    let mut p: u64 = 2;
    while p.saturating_mul(p) <= limit && BigInt::from(p * p) <= e {
        let pp = BigInt::from(p * p);
        while (&e % &pp).is_zero() {
            e /= &pp;
            k *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    (k, e)
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.clone() - other.clone()).signum()
    }
}

impl Add for QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, rhs: Self) -> Self {
        let d = self.radicand_with(&rhs);
        QuadraticSurd::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> Self {
        QuadraticSurd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, rhs: Self) -> Self {
        let d = self.radicand_with(&rhs);
        let dq = Rational::from_integer(d.clone());
        QuadraticSurd::new(
            &self.a * &rhs.a + &self.b * &rhs.b * dq,
            &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        )
    }
}

impl Div for QuadraticSurd {
    type Output = QuadraticSurd;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let surd = if self.b.is_one() {
            format!("sqrt({})", self.d)
        } else if self.b == -Rational::one() {
            format!("-sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", self.b, self.d)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else if surd.starts_with('-') {
            write!(f, "{}{}", self.a, surd)
        } else {
            write!(f, "{}+{}", self.a, surd)
        }
    }
}
