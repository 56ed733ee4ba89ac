//! Exact arithmetic kernels.
//!
//! Everything in this module is exact: rationals are backed by arbitrary
//! precision integers, cyclotomic numbers are kept in the power basis
//! `1, ζ, ..., ζ^(r-2)` for a prime root order `r`, and matrix routines only
//! ever divide by values known to be nonzero.

mod cyclotomic;
mod finite_field;
mod matrix;
mod quadratic;
mod surd;

pub use cyclotomic::{cyc_conj, cyc_mul, CycNum, RootOrder};
pub use finite_field::{ff_arith, gfp_rank, gfp_rref, FfElement, FfOp, FiniteField};
pub use matrix::{mat_poly_check, mat_rank_exact, Conjugate, Field, Matrix};
pub use quadratic::CycQuad;
pub use surd::QuadraticSurd;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("root order {0} is not prime")]
    NotPrime(u64),
    #[error("mismatched root orders {0} and {1}")]
    RootOrderMismatch(u32, u32),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch")]
    FieldMismatch,
    #[error("polynomial is not irreducible over GF({0})")]
    Reducible(u32),
    #[error("invalid field description: {0}")]
    InvalidField(String),
}

/// Deterministic primality test by trial division. Inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factors of `n` in increasing order, without multiplicity.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut m = n.abs();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            out.push(d.clone());
            while (&m % &d).is_zero() {
                m /= &d;
            }
        }
        d += 1;
    }
    if m > BigInt::one() {
        out.push(m);
    }
    out
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut divs = vec![BigInt::one()];
    for p in prime_factors(&n) {
        let mut e = 0u32;
        let mut m = n.clone();
        while (&m % &p).is_zero() {
            m /= &p;
            e += 1;
        }
        let current = divs.clone();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            divs.extend(current.iter().map(|d| d * &pk));
        }
    }
    divs.sort();
    divs
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    (&s * &s == *n).then_some(s)
}

/// Exact square root of a nonnegative rational when it is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let num = exact_sqrt(q.numer())?;
    let den = exact_sqrt(q.denom())?;
    Some(Rational::new(num, den))
}

/// Rational number from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `p/q`, always including the denominator.
pub fn fraction_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `a`, `-a` or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Rational::new(a, b))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_divisors() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let d: Vec<i64> = divisors(&BigInt::from(500))
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(d, vec![1, 2, 4, 5, 10, 20, 25, 50, 100, 125, 250, 500]);
        assert_eq!(prime_factors(&BigInt::from(972)), vec![BigInt::from(2), BigInt::from(3)]);
    }

    #[test]
    fn square_roots() {
        assert_eq!(exact_sqrt(&BigInt::from(3600)), Some(BigInt::from(60)));
        assert_eq!(exact_sqrt(&BigInt::from(21)), None);
        assert_eq!(rational_sqrt(&ratio(9, 16)), Some(ratio(3, 4)));
        assert_eq!(rational_sqrt(&ratio(1, 5)), None);
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(fraction_string(&rat(2)), "2/1");
    }
}
