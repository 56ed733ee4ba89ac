use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::params::{spectral_params, ParameterSet};
use crate::algebra::{prime_factors, QuadraticSurd};

/// The nine necessary conditions on the parameters of a cover, by letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
}

impl Condition {
    pub const ALL: [Condition; 9] = [
        Condition::A,
        Condition::B,
        Condition::C,
        Condition::D,
        Condition::E,
        Condition::F,
        Condition::G,
        Condition::H,
        Condition::I,
    ];

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.letter())
    }
}

/// Outcome of one condition. Failure witnesses are single tokens with no
/// whitespace so that `FAIL <condition> <witness>` lines stay machine-readable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    NotApplicable,
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }

    fn check(ok: bool, witness: impl FnOnce() -> String) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail(witness())
        }
    }
}

/// Every condition evaluated, plus the abelian odd-prime corollary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    params: ParameterSet,
    conditions: Vec<(Condition, Verdict)>,
    corollary: Verdict,
}

impl FeasibilityReport {
    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn conditions(&self) -> &[(Condition, Verdict)] {
        &self.conditions
    }

    pub fn verdict(&self, condition: Condition) -> &Verdict {
        &self.conditions[condition as usize].1
    }

    /// Any odd prime dividing `r` divides `n`.
    pub fn corollary(&self) -> &Verdict {
        &self.corollary
    }

    pub fn passes(&self) -> bool {
        !self.corollary.is_fail() && self.conditions.iter().all(|(_, v)| !v.is_fail())
    }

    pub fn failures(&self) -> impl Iterator<Item = (Condition, &str)> {
        self.conditions.iter().filter_map(|(c, v)| match v {
            Verdict::Fail(w) => Some((*c, w.as_str())),
            _ => None,
        })
    }
}

fn int(k: &BigInt) -> QuadraticSurd {
    QuadraticSurd::integer(k.clone())
}

fn token(s: &QuadraticSurd) -> String {
    s.to_string().replace(' ', "")
}

/// Runs every condition on `(n, r, c)`. Requires `n ≥ 2`, `r ≥ 2`, `c ≥ 1`.
///
/// Inequalities with square roots are decided in `Q(√D)` by exact sign
/// computations, never in floating point.
pub fn feasibility_battery(n: impl Into<BigInt>, r: impl Into<BigInt>, c: impl Into<BigInt>) -> FeasibilityReport {
    let p = spectral_params(n, r, c);
    let (n, r, c, delta) = (p.n().clone(), p.r().clone(), p.c().clone(), p.delta().clone());
    let one = BigInt::one();
    let two = BigInt::from(2);
    let r_gt_2 = r > two;
    let (theta, tau) = (p.theta().clone(), p.tau().clone());
    let (m_theta, m_tau) = (p.m_theta().clone(), p.m_tau().clone());

    let a = {
        let lo = &c * (&r - 1);
        let hi = &c * (2 * &r - 1) - 2;
        let mid = &n - 2;
        if lo < one {
            Verdict::Fail(format!("c(r-1)={lo}<1"))
        } else if lo > mid {
            Verdict::Fail(format!("c(r-1)={lo}>n-2={mid}"))
        } else if mid > hi {
            Verdict::Fail(format!("n-2={mid}>c(2r-1)-2={hi}"))
        } else {
            Verdict::Pass
        }
    };

    let b = match (m_theta.as_integer(), m_tau.as_integer()) {
        (Some(_), Some(_)) => Verdict::Pass,
        (None, _) => Verdict::Fail(format!("m_theta={}", token(&m_theta))),
        (_, None) => Verdict::Fail(format!("m_tau={}", token(&m_tau))),
    };

    let c_cond = if delta.is_zero() {
        Verdict::NotApplicable
    } else {
        Verdict::check(theta.is_integer() && tau.is_integer(), || "eigenvalues-not-integral".into())
    };

    let d = if delta.is_zero() {
        let root = QuadraticSurd::sqrt(&n - 1);
        Verdict::check(theta == root && tau == -root.clone(), || format!("theta={}", token(&theta)))
    } else {
        Verdict::NotApplicable
    };

    let e = if n.is_even() {
        Verdict::check(c.is_even(), || format!("n={n},c={c}"))
    } else {
        Verdict::NotApplicable
    };

    let f = if c.is_one() {
        let k: BigInt = &n - &r;
        let n1: BigInt = &n - 1;
        if k.is_zero() {
            Verdict::Fail("n-r=0".into())
        } else if !n1.is_multiple_of(&k) {
            Verdict::Fail(format!("n-r={k}!|n-1={n1}"))
        } else if !(&r * &n * &n1).is_multiple_of(&(&k * (&k + 1))) {
            Verdict::Fail(format!("(n-r)(n-r+1)={}!|rn(n-1)", &k * (&k + 1)))
        } else if &k * &k > n1 {
            Verdict::Fail(format!("(n-r)^2={}>n-1", &k * &k))
        } else {
            Verdict::Pass
        }
    } else {
        Verdict::NotApplicable
    };

    let n_minus_1 = int(&(&n - 1));
    let theta_cubed = theta.pow(3);
    let g = if r_gt_2 {
        Verdict::check(theta_cubed >= n_minus_1, || format!("theta^3={}<n-1", token(&theta_cubed)))
    } else {
        Verdict::NotApplicable
    };

    let h = if theta != QuadraticSurd::integer(1) && tau != QuadraticSurd::integer(-1) && theta_cubed != n_minus_1 {
        let bound = if r_gt_2 { int(&(&r * &n)) } else { int(&n) };
        let half = QuadraticSurd::rational(crate::algebra::ratio(1, 2));
        let gerzon = |m: &QuadraticSurd| half.clone() * m.clone() * (m.clone() + QuadraticSurd::integer(1));
        if bound > gerzon(&m_theta) {
            Verdict::Fail(format!("m_theta={}", token(&m_theta)))
        } else if bound > gerzon(&m_tau) {
            Verdict::Fail(format!("m_tau={}", token(&m_tau)))
        } else {
            Verdict::Pass
        }
    } else {
        Verdict::NotApplicable
    };

    let i = if r_gt_2 {
        let mut verdict = Verdict::NotApplicable;
        for (name, beta, m) in [("theta", &theta, &m_theta), ("tau", &tau, &m_tau)] {
            let Some(beta) = beta.as_integer() else { continue };
            if int(&n) <= m.clone() - int(&r) + QuadraticSurd::integer(3) {
                continue;
            }
            let b1: BigInt = &beta + 1;
            if b1.is_zero() || !c.is_multiple_of(&b1) {
                verdict = Verdict::Fail(format!("{name}+1={b1}!|c={c}"));
                break;
            }
            verdict = Verdict::Pass;
        }
        verdict
    } else {
        Verdict::NotApplicable
    };

    let corollary = match prime_factors(&r).into_iter().find(|q| q.is_odd() && !n.is_multiple_of(q)) {
        Some(q) => Verdict::Fail(format!("{q}|r,{q}!|n")),
        None => Verdict::Pass,
    };

    let conditions = Condition::ALL.into_iter().zip([a, b, c_cond, d, e, f, g, h, i]).collect();
    FeasibilityReport { params: p, conditions, corollary }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(report: &FeasibilityReport) -> String {
        report.failures().map(|(c, _)| c.letter()).collect()
    }

    #[test]
    fn known_covers_pass() {
        for (n, r, c) in [(9, 3, 3), (6, 2, 2), (16, 8, 2), (16, 4, 4), (25, 5, 5), (28, 4, 8)] {
            let report = feasibility_battery(n, r, c);
            assert!(report.passes(), "({n},{r},{c}): {report:?}");
        }
    }

    #[test]
    fn irrational_eigenvalues_fail_c() {
        let report = feasibility_battery(6, 3, 1);
        assert_eq!(report.verdict(Condition::C), &Verdict::Fail("eigenvalues-not-integral".into()));
        assert!(letters(&report).contains('c'));
        assert!(!report.passes());
    }

    #[test]
    fn guards_make_conditions_inapplicable() {
        let report = feasibility_battery(6, 2, 2);
        assert_eq!(report.verdict(Condition::C), &Verdict::NotApplicable);
        assert_eq!(report.verdict(Condition::D), &Verdict::Pass);
        assert_eq!(report.verdict(Condition::F), &Verdict::NotApplicable);
        assert_eq!(report.verdict(Condition::G), &Verdict::NotApplicable);
        assert_eq!(report.verdict(Condition::I), &Verdict::NotApplicable);
    }

    #[test]
    fn odd_parity_and_corollary() {
        // (6,4,1): n even with c odd, and c = 1 with n - r = 2 not dividing 5.
        assert_eq!(letters(&feasibility_battery(6, 4, 1)), "ef");
        // 3 divides r but not n.
        let report = feasibility_battery(10, 3, 2);
        assert!(report.corollary().is_fail());
    }

    #[test]
    fn condition_a_witness() {
        let report = feasibility_battery(28, 2, 1);
        assert!(matches!(report.verdict(Condition::A), Verdict::Fail(w) if w.starts_with("n-2=26>")));
    }
}
