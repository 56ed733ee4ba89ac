use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use thiserror::Error;

use super::battery::{feasibility_battery, FeasibilityReport};
use super::bounds::{tau_bounds, Parity};
use super::params::ParameterSet;
use crate::algebra::{divisors, prime_factors, ratio, QuadraticSurd};

/// The four parametrized families of abelian covers whose line systems meet
/// the absolute bound. `I` is even `r` (real lines), `II` odd `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCase {
    Ia,
    Ib,
    IIa,
    IIb,
}

impl FamilyCase {
    pub fn parity(self) -> Parity {
        match self {
            FamilyCase::Ia | FamilyCase::Ib => Parity::Even,
            FamilyCase::IIa | FamilyCase::IIb => Parity::Odd,
        }
    }
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyCase::Ia => "I.a",
            FamilyCase::Ib => "I.b",
            FamilyCase::IIa => "II.a",
            FamilyCase::IIb => "II.b",
        })
    }
}

impl FromStr for FamilyCase {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('.', "").as_str() {
            "Ia" => Ok(FamilyCase::Ia),
            "Ib" => Ok(FamilyCase::Ib),
            "IIa" => Ok(FamilyCase::IIa),
            "IIb" => Ok(FamilyCase::IIb),
            _ => Err(FamilyError::UnknownCase(s.to_string())),
        }
    }
}

/// Family parameter: a positive integer, or `√5` (only in case I.a).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyT {
    Int(u64),
    Sqrt5,
}

impl FamilyT {
    fn surd(self) -> QuadraticSurd {
        match self {
            FamilyT::Int(t) => QuadraticSurd::integer(t),
            FamilyT::Sqrt5 => QuadraticSurd::sqrt(BigInt::from(5)),
        }
    }
}

impl fmt::Display for FamilyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyT::Int(t) => write!(f, "{t}"),
            FamilyT::Sqrt5 => f.write_str("sqrt(5)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("unknown case {0:?}; expected Ia, Ib, IIa or IIb")]
    UnknownCase(String),
    #[error("t={t} is not valid for case {case}: {reason}")]
    InvalidT { case: FamilyCase, t: FamilyT, reason: &'static str },
}

/// Closed-form columns of one family member. Multiplicities are per
/// character, `m̄ = m/(r-1)`, so they do not depend on how `rc` splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyRow {
    pub case: FamilyCase,
    pub t: FamilyT,
    pub n: BigInt,
    pub rc: BigInt,
    pub delta: BigInt,
    pub theta: QuadraticSurd,
    pub tau: QuadraticSurd,
    pub m_bar_theta: QuadraticSurd,
    pub m_bar_tau: QuadraticSurd,
}

pub fn family_params(case: FamilyCase, t: FamilyT) -> Result<FamilyRow, FamilyError> {
    let invalid = |reason| FamilyError::InvalidT { case, t, reason };
    match t {
        FamilyT::Int(k) if k < 2 => return Err(invalid("need t >= 2")),
        FamilyT::Sqrt5 if case != FamilyCase::Ia => return Err(invalid("sqrt(5) only occurs in case I.a")),
        _ => {}
    }
    let int = QuadraticSurd::integer;
    let half = QuadraticSurd::rational(ratio(1, 2));
    let x = t.surd();
    let x2 = x.square();
    let (n, rc, delta, theta, tau, m_bar_theta, m_bar_tau) = match case {
        FamilyCase::Ia | FamilyCase::Ib => {
            let n = half.clone() * (x2.clone() - int(2)) * (x2.clone() - int(1));
            let big = half.clone() * x.clone() * (x2.clone() - int(3));
            let big_m = half.clone() * (x2.clone() - int(2)) * (x2.clone() - int(3));
            let d = half.clone() * x.clone() * (x2.clone() - int(5));
            if case == FamilyCase::Ia {
                let rc = half * (x.clone() + int(1)).pow(3) * (x.clone() - int(2));
                (n, rc, -d, x, -big, big_m, x2 - int(2))
            } else {
                let rc = half * (x.clone() - int(1)).pow(3) * (x.clone() + int(2));
                (n, rc, d, big, -x, x2 - int(2), big_m)
            }
        }
        FamilyCase::IIa | FamilyCase::IIb => {
            let n = (x2.clone() - int(1)).square();
            let big = (x2.clone() - int(2)) * x.clone();
            let big_m = (x2.clone() - int(2)) * (x2.clone() - int(1));
            let d = (x2.clone() - int(3)) * x.clone();
            if case == FamilyCase::IIa {
                let rc = (x.clone() + int(1)).square() * (x2.clone() - x.clone() - int(1));
                (n, rc, -d, x, -big, big_m, x2 - int(1))
            } else {
                let rc = (x.clone() - int(1)).square() * (x2.clone() + x.clone() - int(1));
                (n, rc, d, big, -x, x2 - int(1), big_m)
            }
        }
    };
    let (n, rc, delta) = match (n.as_integer(), rc.as_integer(), delta.as_integer()) {
        (Some(n), Some(rc), Some(d)) => (n, rc, d),
        _ => return Err(invalid("non-integral n or rc")),
    };
    if rc < BigInt::one() {
        return Err(invalid("rc must be positive"));
    }
    let row = FamilyRow { case, t, n, rc, delta, theta, tau, m_bar_theta, m_bar_tau };
    debug_assert_eq!(row.theta.clone() + row.tau.clone(), QuadraticSurd::integer(row.delta.clone()));
    debug_assert_eq!(&row.n - &row.rc - 2, row.delta);
    debug_assert_eq!(row.theta.clone() * row.tau.clone(), QuadraticSurd::integer(BigInt::one() - &row.n));
    Ok(row)
}

/// Known feasible parameter sets of case I.b with `r > 2` and `n ≤ 3160`,
/// as `n r c δ θ τ m_θ m_τ`.
pub const PUBLISHED_CASE_IB: [[i64; 8]; 10] = [
    [276, 4, 56, 50, 55, -5, 69, 759],
    [276, 16, 14, 50, 55, -5, 345, 3795],
    [1128, 6, 162, 154, 161, -7, 235, 5405],
    [1128, 54, 18, 154, 161, -7, 2491, 57293],
    [1128, 162, 6, 154, 161, -7, 7567, 174041],
    [1128, 486, 2, 154, 161, -7, 22795, 524285],
    [3160, 4, 704, 342, 351, -9, 237, 9243],
    [3160, 8, 352, 342, 351, -9, 553, 21567],
    [3160, 64, 44, 342, 351, -9, 4977, 194103],
    [3160, 128, 22, 342, 351, -9, 10033, 391287],
];

/// The first ten known feasible parameter sets of case II.b.
pub const PUBLISHED_CASE_IIB: [[i64; 8]; 10] = [
    [1225, 5, 205, 198, 204, -6, 140, 4760],
    [3969, 7, 497, 488, 496, -8, 378, 23436],
    [14400, 5, 2620, 1298, 1309, -11, 480, 57120],
    [20449, 11, 1705, 1692, 1704, -12, 1430, 203060],
    [38025, 13, 2717, 2702, 2716, -14, 2340, 453960],
    [50176, 7, 6692, 3330, 3345, -15, 1344, 299712],
    [65025, 5, 12195, 4048, 4064, -16, 1020, 259080],
    [104329, 17, 5797, 5778, 5796, -18, 5168, 1664096],
    [159201, 19, 7961, 7940, 7960, -20, 7182, 2858436],
    [193600, 5, 36880, 9198, 9219, -21, 1760, 772640],
];

/// The unique parameter sets of cases I.a (with `r ≥ 4`) and II.a.
pub const PUBLISHED_EXTREMAL: [(i64, i64, i64); 2] = [(28, 4, 8), (9, 3, 3)];

fn is_published(n: &BigInt, r: &BigInt, c: &BigInt) -> bool {
    let key = (n.to_i64(), r.to_i64(), c.to_i64());
    PUBLISHED_CASE_IB
        .iter()
        .chain(PUBLISHED_CASE_IIB.iter())
        .map(|row| (row[0], row[1], row[2]))
        .chain(PUBLISHED_EXTREMAL)
        .any(|(a, b, d)| key == (Some(a), Some(b), Some(d)))
}

/// Markers on enumerated rows that keep them out of the default table.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RowFlags {
    /// `r = 2`: a regular two-graph rather than a genuine abelian cover family.
    pub two_graph: bool,
    /// The `t = √5` member of case I.a.
    pub sporadic: bool,
    /// `r > 2` and absent from the published tables.
    pub unpublished: bool,
}

impl RowFlags {
    pub fn is_empty(&self) -> bool {
        !(self.two_graph || self.sporadic || self.unpublished)
    }
}

impl fmt::Display for RowFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.two_graph, "two-graph"), (self.sporadic, "sporadic"), (self.unpublished, "unpublished")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        if names.is_empty() {
            f.write_str("-")
        } else {
            f.write_str(&names.join(","))
        }
    }
}

/// One `(n, r, c)` produced by [`family_enumerate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyEntry {
    pub row: FamilyRow,
    pub report: FeasibilityReport,
    pub flags: RowFlags,
}

impl FamilyEntry {
    pub fn params(&self) -> &ParameterSet {
        self.report.params()
    }

    /// `n r c δ θ τ m_θ m_τ`, tab separated, with the flags appended when
    /// requested.
    pub fn tsv_line(&self, with_flags: bool) -> String {
        let p = self.params();
        let mut cols = vec![
            p.n().to_string(),
            p.r().to_string(),
            p.c().to_string(),
            p.delta().to_string(),
            p.theta().to_string(),
            p.tau().to_string(),
            p.m_theta().to_string(),
            p.m_tau().to_string(),
        ];
        if with_flags {
            cols.push(self.flags.to_string());
        }
        cols.join("\t")
    }
}

pub fn tsv_header(with_flags: bool) -> String {
    let mut header = "n\tr\tc\tdelta\ttheta\ttau\tm_theta\tm_tau".to_string();
    if with_flags {
        header.push_str("\tflags");
    }
    header
}

/// Extra conditions of case I.b beyond the battery.
fn case_ib_conditions(t: u64, r: &BigInt, c: &BigInt) -> bool {
    let t_minus_1 = BigInt::from(t - 1);
    let cond1 = t >= 3 && !t.is_multiple_of(4);
    let cond2 = *c >= BigInt::from(2);
    let cond3 = BigInt::from(2) * r > BigInt::from(t * t + 1) || t_minus_1.is_multiple_of(r);
    let cond4 = t.is_multiple_of(2) || c.is_even();
    let cond5 = prime_factors(r).iter().all(|p| p.is_even() || t_minus_1.is_multiple_of(p));
    cond1 && cond2 && cond3 && cond4 && cond5
}

/// Extra conditions of case II.b beyond the battery.
fn case_iib_conditions(t: u64, r: &BigInt, c: &BigInt) -> bool {
    t >= 3 && *c >= BigInt::from(2) && !r.is_multiple_of(&BigInt::from(3)) && BigInt::from(t - 1).is_multiple_of(r)
}

fn entries_for(case: FamilyCase, t: FamilyT) -> Vec<FamilyEntry> {
    let Ok(row) = family_params(case, t) else { return Vec::new() };
    let even = case.parity() == Parity::Even;
    debug_assert!(tau_bounds(row.n.clone(), case.parity()).classify(&row.tau).meets_absolute_bound());
    divisors(&row.rc)
        .into_iter()
        .filter(|r| *r >= BigInt::from(2) && r.is_even() == even)
        .filter_map(|r| {
            let c = &row.rc / &r;
            let extra = match (case, t) {
                (FamilyCase::Ib, FamilyT::Int(k)) => case_ib_conditions(k, &r, &c),
                (FamilyCase::IIb, FamilyT::Int(k)) => case_iib_conditions(k, &r, &c),
                _ => true,
            };
            if !extra {
                return None;
            }
            let report = feasibility_battery(row.n.clone(), r.clone(), c.clone());
            if !report.passes() {
                return None;
            }
            debug_assert!(report.params().theta() == &row.theta && report.params().tau() == &row.tau);
            let two_graph = r == BigInt::from(2);
            let flags = RowFlags {
                two_graph,
                sporadic: t == FamilyT::Sqrt5,
                unpublished: !two_graph && !is_published(&row.n, &r, &c),
            };
            Some(FamilyEntry { row: row.clone(), report, flags })
        })
        .collect()
}

/// Every `(n, r, c)` of the family with `t ≤ t_max` that passes the battery
/// and the family's own conditions, sorted by `(n, r)`. Flagged rows are kept;
/// use [`select_rows`] to hide them.
pub fn family_enumerate(case: FamilyCase, t_max: u64) -> Vec<FamilyEntry> {
    let mut ts: Vec<FamilyT> = (2..=t_max).map(FamilyT::Int).collect();
    if case == FamilyCase::Ia && t_max >= 3 {
        ts.push(FamilyT::Sqrt5);
    }
    let mut entries: Vec<FamilyEntry> = ts.into_par_iter().flat_map_iter(|t| entries_for(case, t)).collect();
    entries.sort_by(|a, b| (a.params().n(), a.params().r()).cmp(&(b.params().n(), b.params().r())));
    entries
}

/// Rows to show given the include switches: two-graph rows (sporadic ones
/// included) need `two_graph`, unpublished rows need `unpublished`.
pub fn select_rows(entries: &[FamilyEntry], unpublished: bool, two_graph: bool) -> Vec<&FamilyEntry> {
    entries
        .iter()
        .filter(|e| (two_graph || !e.flags.two_graph) && (unpublished || !e.flags.unpublished))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(e: &FamilyEntry) -> (i64, i64, i64) {
        let p = e.params();
        (p.n().to_i64().unwrap(), p.r().to_i64().unwrap(), p.c().to_i64().unwrap())
    }

    #[test]
    fn closed_forms() {
        let row = family_params(FamilyCase::Ia, FamilyT::Int(3)).unwrap();
        assert_eq!((row.n.clone(), row.rc.clone()), (BigInt::from(28), BigInt::from(32)));
        assert_eq!((row.theta.clone(), row.tau.clone()), (QuadraticSurd::integer(3), QuadraticSurd::integer(-9)));
        let row = family_params(FamilyCase::IIa, FamilyT::Int(2)).unwrap();
        assert_eq!((row.n.clone(), row.rc.clone()), (BigInt::from(9), BigInt::from(9)));
        let row = family_params(FamilyCase::IIb, FamilyT::Int(6)).unwrap();
        assert_eq!((row.n, row.rc, row.delta), (BigInt::from(1225), BigInt::from(1025), BigInt::from(198)));
        assert_eq!((row.theta, row.tau), (QuadraticSurd::integer(204), QuadraticSurd::integer(-6)));
    }

    #[test]
    fn sporadic_member() {
        let row = family_params(FamilyCase::Ia, FamilyT::Sqrt5).unwrap();
        assert_eq!((row.n, row.rc, row.delta), (BigInt::from(6), BigInt::from(4), BigInt::from(0)));
        assert_eq!(row.m_bar_theta, QuadraticSurd::integer(3));
        assert!(family_params(FamilyCase::Ib, FamilyT::Sqrt5).is_err());
    }

    #[test]
    fn invalid_t() {
        assert!(family_params(FamilyCase::Ia, FamilyT::Int(2)).is_err());
        assert!(family_params(FamilyCase::IIb, FamilyT::Int(1)).is_err());
        assert!("Ic".parse::<FamilyCase>().is_err());
        assert_eq!("II.b".parse::<FamilyCase>().unwrap(), FamilyCase::IIb);
    }

    #[test]
    fn extremal_cases() {
        let all = family_enumerate(FamilyCase::Ia, 40);
        let shown: Vec<_> = select_rows(&all, false, false).into_iter().map(key).collect();
        assert_eq!(shown, vec![(28, 4, 8)]);
        // Index 2 escapes the cube condition, so two-graph rows continue for every t.
        let two: Vec<_> = select_rows(&all, false, true).into_iter().map(key).collect();
        assert_eq!(&two[..4], &[(6, 2, 2), (28, 2, 16), (28, 4, 8), (276, 2, 162)]);
        assert!(all.iter().all(|e| e.flags.two_graph || key(e) == (28, 4, 8)));
        assert!(all[0].flags.sporadic);
        let all = family_enumerate(FamilyCase::IIa, 40);
        assert_eq!(all.iter().map(key).collect::<Vec<_>>(), vec![(9, 3, 3)]);
    }

    #[test]
    fn flags_format() {
        assert_eq!(RowFlags::default().to_string(), "-");
        let f = RowFlags { two_graph: true, sporadic: true, unpublished: false };
        assert_eq!(f.to_string(), "two-graph,sporadic");
    }
}
