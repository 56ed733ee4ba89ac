use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{exact_sqrt, QuadraticSurd, Rational};

/// How the nontrivial eigenvalues `θ, τ` look for a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenvalueKind {
    /// Both are integers.
    Integral,
    /// `δ = 0` and `n - 1` is not a square: `θ = -τ = √(n-1)`.
    SymbolicSqrt,
    /// `δ ≠ 0` and the discriminant `δ² + 4(n-1)` is not a square.
    Irrational,
}

/// `(n, r, c)` together with the derived spectral data of a putative cover.
#[derive(Clone, PartialEq, Eq)]
pub struct ParameterSet {
    n: BigInt,
    r: BigInt,
    c: BigInt,
    delta: BigInt,
    theta: QuadraticSurd,
    tau: QuadraticSurd,
    m_theta: QuadraticSurd,
    m_tau: QuadraticSurd,
}

impl fmt::Debug for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{}) delta={} theta={} tau={} m_theta={} m_tau={}",
            self.n, self.r, self.c, self.delta, self.theta, self.tau, self.m_theta, self.m_tau
        )
    }
}

/// Exact spectral parameters of `(n, r, c)`:
/// `δ = n - rc - 2`, `θ, τ = (δ ± √(δ² + 4(n-1)))/2`,
/// `m_θ = n(r-1)(-τ)/(θ-τ)` and `m_τ = n(r-1)θ/(θ-τ)`.
///
/// Requires `n ≥ 2`, `r ≥ 2`, `c ≥ 1`.
pub fn spectral_params(n: impl Into<BigInt>, r: impl Into<BigInt>, c: impl Into<BigInt>) -> ParameterSet {
    let (n, r, c): (BigInt, BigInt, BigInt) = (n.into(), r.into(), c.into());
    assert!(n >= BigInt::from(2) && r >= BigInt::from(2) && c >= BigInt::one(), "need n>=2, r>=2, c>=1");
    let delta: BigInt = &n - &r * &c - 2;
    let disc: BigInt = &delta * &delta + 4 * (&n - 1);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let d = Rational::from_integer(delta.clone());
    let theta = QuadraticSurd::new(&d * &half, half.clone(), disc.clone());
    let tau = QuadraticSurd::new(&d * &half, -half, disc);
    let scale = QuadraticSurd::integer(&n * (&r - 1));
    let gap = theta.clone() - tau.clone();
    let m_theta = scale.clone() * (-tau.clone()) / gap.clone();
    let m_tau = scale * theta.clone() / gap;
    ParameterSet { n, r, c, delta, theta, tau, m_theta, m_tau }
}

impl ParameterSet {
    pub fn n(&self) -> &BigInt {
        &self.n
    }
    pub fn r(&self) -> &BigInt {
        &self.r
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn delta(&self) -> &BigInt {
        &self.delta
    }
    pub fn theta(&self) -> &QuadraticSurd {
        &self.theta
    }
    pub fn tau(&self) -> &QuadraticSurd {
        &self.tau
    }
    pub fn m_theta(&self) -> &QuadraticSurd {
        &self.m_theta
    }
    pub fn m_tau(&self) -> &QuadraticSurd {
        &self.m_tau
    }

    /// Per-character multiplicity `m_θ / (r-1)`.
    pub fn m_bar_theta(&self) -> QuadraticSurd {
        self.m_theta.clone() / QuadraticSurd::integer(&self.r - 1)
    }

    /// Per-character multiplicity `m_τ / (r-1)`.
    pub fn m_bar_tau(&self) -> QuadraticSurd {
        self.m_tau.clone() / QuadraticSurd::integer(&self.r - 1)
    }

    pub fn kind(&self) -> EigenvalueKind {
        if self.theta.is_rational() {
            EigenvalueKind::Integral
        } else if self.delta.is_zero() {
            EigenvalueKind::SymbolicSqrt
        } else {
            EigenvalueKind::Irrational
        }
    }

    /// `θ·τ`, always `-(n-1)`.
    pub fn eigen_product(&self) -> QuadraticSurd {
        self.theta.clone() * self.tau.clone()
    }

    /// `δ² + 4(n-1)`.
    pub fn discriminant(&self) -> BigInt {
        &self.delta * &self.delta + 4 * (&self.n - 1)
    }

    /// True when the discriminant is a perfect square.
    pub fn has_integral_eigenvalues(&self) -> bool {
        exact_sqrt(&self.discriminant()).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> QuadraticSurd {
        QuadraticSurd::integer(k)
    }

    #[test]
    fn small_symplectic_cover() {
        let p = spectral_params(9, 3, 3);
        assert_eq!(p.delta(), &BigInt::from(-2));
        assert_eq!(p.theta(), &int(2));
        assert_eq!(p.tau(), &int(-4));
        assert_eq!(p.m_theta(), &int(12));
        assert_eq!(p.m_tau(), &int(6));
        assert_eq!(p.kind(), EigenvalueKind::Integral);
    }

    #[test]
    fn table_row() {
        let p = spectral_params(276, 4, 56);
        assert_eq!(p.delta(), &BigInt::from(50));
        assert_eq!((p.theta(), p.tau()), (&int(55), &int(-5)));
        assert_eq!((p.m_theta(), p.m_tau()), (&int(69), &int(759)));
    }

    #[test]
    fn symbolic_case() {
        let p = spectral_params(6, 2, 2);
        assert_eq!(p.kind(), EigenvalueKind::SymbolicSqrt);
        assert_eq!(p.theta(), &QuadraticSurd::sqrt(BigInt::from(5)));
        assert_eq!(p.tau(), &-QuadraticSurd::sqrt(BigInt::from(5)));
        assert_eq!((p.m_theta(), p.m_tau()), (&int(3), &int(3)));
        assert_eq!(p.eigen_product(), int(-5));
    }

    #[test]
    fn irrational_case() {
        let p = spectral_params(6, 3, 1);
        assert_eq!(p.kind(), EigenvalueKind::Irrational);
        assert_eq!(p.discriminant(), BigInt::from(21));
        assert_eq!(p.m_theta().clone() + p.m_tau().clone(), int(12));
    }
}
