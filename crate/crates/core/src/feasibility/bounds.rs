use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::algebra::QuadraticSurd;

/// Parity of the cover index, which decides between real and complex lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(r: &BigInt) -> Parity {
        if r % 2u32 == BigInt::from(0) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Range for `τ` forced by the absolute bound on the line systems of an
/// abelian cover with `n` fibres.
///
/// Even `r` (real lines):
/// `-(1/2)√((n-1)(√(8n+1)-3)) ≤ τ ≤ -√((√(8n+1)+3)/2)`.
/// Odd `r` (complex lines):
/// `-(√n-1)√(√n+1) ≤ τ ≤ -√(√n+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauBounds {
    n: BigInt,
    parity: Parity,
}

/// Where a given `τ` sits relative to [`TauBounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TauMembership {
    pub lower_ok: bool,
    pub upper_ok: bool,
    pub lower_tight: bool,
    pub upper_tight: bool,
}

impl TauMembership {
    pub fn in_range(&self) -> bool {
        self.lower_ok && self.upper_ok
    }

    /// `τ` sits on a boundary, so one line system reaches the absolute bound.
    pub fn meets_absolute_bound(&self) -> bool {
        self.lower_tight || self.upper_tight
    }
}

pub fn tau_bounds(n: impl Into<BigInt>, parity: Parity) -> TauBounds {
    TauBounds { n: n.into(), parity }
}

impl TauBounds {
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Decides membership by comparing squares. Both sides of every
    /// comparison are made nonnegative first, so squaring is monotone, and
    /// the nested root is moved to the side that is squared away.
    pub fn classify(&self, tau: &QuadraticSurd) -> TauMembership {
        if tau.signum() != Ordering::Less {
            return TauMembership { lower_ok: true, upper_ok: false, lower_tight: false, upper_tight: false };
        }
        let n = QuadraticSurd::integer(self.n.clone());
        let int = QuadraticSurd::integer;
        let t2 = tau.square();
        let n1 = n.clone() - int(1);
        let (lower, upper) = match self.parity {
            Parity::Even => {
                // 4τ² + 3(n-1) ≤ (n-1)√(8n+1)
                let lhs = int(4) * t2.clone() + int(3) * n1.clone();
                let lower = (lhs.square()).cmp(&(n1.square() * (int(8) * n.clone() + int(1))));
                // 2τ² - 3 ≥ √(8n+1)
                let u = int(2) * t2 - int(3);
                let upper = if u.signum() == Ordering::Less {
                    Ordering::Less
                } else {
                    u.square().cmp(&(int(8) * n + int(1)))
                };
                (lower, upper)
            }
            Parity::Odd => {
                // τ² + n - 1 ≤ (n-1)√n
                let lhs = t2.clone() + n1.clone();
                let lower = lhs.square().cmp(&(n1.square() * n.clone()));
                // τ² - 1 ≥ √n
                let u = t2 - int(1);
                let upper = if u.signum() == Ordering::Less { Ordering::Less } else { u.square().cmp(&n) };
                (lower, upper)
            }
        };
        TauMembership {
            lower_ok: lower != Ordering::Greater,
            upper_ok: upper != Ordering::Less,
            lower_tight: lower == Ordering::Equal,
            upper_tight: upper == Ordering::Equal,
        }
    }

    pub fn contains(&self, tau: &QuadraticSurd) -> bool {
        self.classify(tau).in_range()
    }
}

impl fmt::Display for TauBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = &self.n;
        match self.parity {
            Parity::Even => write!(
                f,
                "-(1/2)*sqrt(({n}-1)*(sqrt(8*{n}+1)-3)) <= tau <= -sqrt((sqrt(8*{n}+1)+3)/2)"
            ),
            Parity::Odd => write!(f, "-(sqrt({n})-1)*sqrt(sqrt({n})+1) <= tau <= -sqrt(sqrt({n})+1)"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(k: i64) -> QuadraticSurd {
        QuadraticSurd::integer(k)
    }

    #[test]
    fn nine_fibres_hit_lower_bound() {
        let m = tau_bounds(9, Parity::Odd).classify(&int(-4));
        assert!(m.in_range() && m.lower_tight && !m.upper_tight);
    }

    #[test]
    fn eighty_one_fibres() {
        // -8√10 ≤ τ ≤ -√10.
        let b = tau_bounds(81, Parity::Odd);
        assert!(b.contains(&int(-4)));
        assert!(b.contains(&int(-25)));
        let m = b.classify(&int(-3));
        assert!(m.lower_ok && !m.upper_ok);
        assert!(!b.contains(&int(-26)));
    }

    #[test]
    fn sporadic_six() {
        let m = tau_bounds(6, Parity::Even).classify(&-QuadraticSurd::sqrt(BigInt::from(5)));
        assert!(m.in_range() && m.lower_tight);
    }

    #[test]
    fn nonnegative_tau_is_out() {
        assert!(!tau_bounds(9, Parity::Odd).contains(&int(0)));
        assert!(!tau_bounds(9, Parity::Even).contains(&int(2)));
    }
}
