//! Equiangular lines through Gram and Seidel matrices, and the passage
//! between abelian covers and line systems meeting the relative bound.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{
    is_prime, rat, AlgebraError, Conjugate, CycNum, CycQuad, Field, Matrix, QuadraticSurd, Rational, RootOrder,
};
use crate::covers::{annihilator_delta, drackn_verify, ArcMatrix, CoverCertificate, CoverError, CoverGraph};
use crate::graph::Graph;
use crate::groups::{char_apply, characters_of, AbelianGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinesError {
    #[error("not a Seidel matrix at ({u},{v}): {reason}")]
    NotSeidel { u: usize, v: usize, reason: &'static str },
    #[error("not a Gram matrix of equiangular lines at ({u},{v}): {reason}")]
    NotGram { u: usize, v: usize, reason: &'static str },
    #[error("S^2 is not in the span of I and S: more than two eigenvalues")]
    MoreThanTwoEigenvalues,
    #[error("eigenvalues are irrational")]
    IrrationalEigenvalues,
    #[error("the trivial character gives no line system")]
    TrivialCharacter,
    #[error("character index {0} out of range")]
    CharacterOutOfRange(usize),
    #[error("entry ({u},{v}) is not an r-th root of unity")]
    EntryNotRoot { u: usize, v: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("computed c = {0} is not a positive integer")]
    CNotPositiveInteger(String),
    #[error("entry ({u},{v}) is not real")]
    NonRealEntry { u: usize, v: usize },
    #[error("need 1 <= d <= n, got d={d}, n={n}")]
    Dimension { n: usize, d: usize },
    #[error("no conference Seidel matrix of order {0} found")]
    SearchExhausted(usize),
    #[error("search space for order {0} is too large")]
    SearchTooLarge(usize),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which field a line system lives in, for the absolute bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineField {
    Real,
    Complex,
}

/// Entry domain of a Seidel matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeidelKind {
    /// Entries are powers of `ζ_r`.
    Roots(RootOrder),
    /// Exact rational entries, hence `±1`.
    Generic,
}

/// Hermitian matrix with zero diagonal and unimodular off-diagonal entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SeidelMatrix {
    kind: SeidelKind,
    matrix: Matrix<CycNum>,
}

impl SeidelMatrix {
    pub fn new(kind: SeidelKind, matrix: Matrix<CycNum>) -> Result<Self, LinesError> {
        let n = matrix.rows();
        if !matrix.is_square() || n < 2 {
            return Err(LinesError::NotSeidel { u: 0, v: 0, reason: "not a square matrix of order >= 2" });
        }
        let one = CycNum::one(matrix.get(0, 0).order());
        for u in 0..n {
            for v in 0..n {
                let x = matrix.get(u, v);
                let position = |reason| LinesError::NotSeidel { u: u + 1, v: v + 1, reason };
                if x.order() != one.order() {
                    return Err(position("mixed root orders"));
                }
                if u == v {
                    if !x.is_zero() {
                        return Err(position("nonzero diagonal"));
                    }
                    continue;
                }
                if kind == SeidelKind::Generic && !x.is_rational() {
                    return Err(position("generic entries must be rational"));
                }
                if x.times(&x.conj()) != one {
                    return Err(position("entry does not have absolute value one"));
                }
                if *matrix.get(v, u) != x.conj() {
                    return Err(position("not Hermitian"));
                }
            }
        }
        Ok(SeidelMatrix { kind, matrix })
    }

    /// Seidel matrix with `S_uv = ζ_r^{k_uv}`; `None` marks the diagonal.
    pub fn from_exponents(order: RootOrder, exponents: &[Vec<Option<u32>>]) -> Result<Self, LinesError> {
        let n = exponents.len();
        let zero = CycNum::zero(order);
        let matrix = Matrix::from_fn(n, n, |u, v| match exponents[u].get(v).copied().flatten() {
            Some(k) => CycNum::root_power(order, k as i64),
            None => zero.clone(),
        });
        if (0..n).any(|u| exponents[u].len() != n || exponents[u][u].is_some()) {
            return Err(LinesError::NotSeidel { u: 0, v: 0, reason: "diagonal must be empty" });
        }
        SeidelMatrix::new(SeidelKind::Roots(order), matrix)
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn kind(&self) -> SeidelKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix<CycNum> {
        &self.matrix
    }

    pub fn order(&self) -> RootOrder {
        self.matrix.get(0, 0).order()
    }

    pub fn negate(&self) -> SeidelMatrix {
        SeidelMatrix { kind: self.kind, matrix: self.matrix.map(|x| x.negate()) }
    }

    /// `k` with `S_uv = ζ_r^k`, if the entry is an `r`-th root of unity.
    fn root_exponent(&self, u: usize, v: usize, r: u32) -> Option<u32> {
        let x = self.matrix.get(u, v);
        if let Some(q) = x.as_rational() {
            return if q.is_one() {
                Some(0)
            } else if r == 2 && *q == -Rational::one() {
                Some(1)
            } else {
                None
            };
        }
        (x.order().get() == r).then(|| x.root_exponent()).flatten()
    }
}

/// Gram matrix entries: cyclotomic, or cyclotomic extended by a square root.
#[derive(Debug, Clone, PartialEq)]
pub enum Gram {
    Cyclotomic(Matrix<CycNum>),
    Extended(Matrix<CycQuad>),
}

impl Gram {
    pub fn n(&self) -> usize {
        match self {
            Gram::Cyclotomic(m) => m.rows(),
            Gram::Extended(m) => m.rows(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Gram::Cyclotomic(m) => m.rank(),
            Gram::Extended(m) => m.rank(),
        }
    }
}

/// `n` equiangular lines given by their Gram matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSet {
    gram: Gram,
    n: usize,
    d: usize,
    alpha_sq: Rational,
}

fn gram_checks<F: Field + Conjugate>(g: &Matrix<F>, abs_sq: impl Fn(&F) -> Option<Rational>) -> Result<Rational, LinesError> {
    let n = g.rows();
    if !g.is_square() || n < 2 {
        return Err(LinesError::NotGram { u: 0, v: 0, reason: "not a square matrix of order >= 2" });
    }
    let one = g.get(0, 0).one_like();
    let mut alpha_sq = None;
    for u in 0..n {
        for v in 0..n {
            let x = g.get(u, v);
            let position = |reason| LinesError::NotGram { u: u + 1, v: v + 1, reason };
            if *g.get(v, u) != x.conj() {
                return Err(position("not Hermitian"));
            }
            if u == v {
                if *x != one {
                    return Err(position("diagonal entry is not 1"));
                }
                continue;
            }
            let a = abs_sq(x).ok_or_else(|| position("|g|^2 is not rational"))?;
            match &alpha_sq {
                None => alpha_sq = Some(a),
                Some(prev) if *prev != a => return Err(position("lines are not equiangular")),
                _ => {}
            }
        }
    }
    Ok(alpha_sq.expect("n >= 2"))
}

impl LineSet {
    pub fn new(gram: Gram) -> Result<Self, LinesError> {
        let alpha_sq = match &gram {
            Gram::Cyclotomic(g) => gram_checks(g, |x| x.times(&x.conj()).as_rational().cloned())?,
            Gram::Extended(g) => gram_checks(g, |x| {
                x.times(&x.conj()).as_cyc().and_then(|c| c.as_rational().cloned())
            })?,
        };
        let n = gram.n();
        let d = gram.rank();
        Ok(LineSet { gram, n, d, alpha_sq })
    }

    pub fn gram(&self) -> &Gram {
        &self.gram
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alpha_sq(&self) -> &Rational {
        &self.alpha_sq
    }
}

/// `(n - d)/((n - 1) d)`, the least possible `α²` for `n` lines in dimension `d`.
pub fn relative_bound(n: usize, d: usize) -> Result<Rational, LinesError> {
    if d == 0 || d > n || n < 2 {
        return Err(LinesError::Dimension { n, d });
    }
    Ok(Rational::new(BigInt::from(n - d), BigInt::from((n - 1) * d)))
}

/// Maximum number of equiangular lines in dimension `d`.
pub fn absolute_bound(d: usize, field: LineField) -> BigInt {
    let d = BigInt::from(d);
    match field {
        LineField::Complex => &d * &d,
        LineField::Real => &d * (&d + 1) / 2,
    }
}

fn is_tight<F: Field>(g: &Matrix<F>, n: usize, d: usize) -> bool {
    let ratio = g.get(0, 0).rational_like(&Rational::new(BigInt::from(n), BigInt::from(d)));
    g.mul(g).map(|sq| sq == g.scale(&ratio)).unwrap_or(false)
}

/// `G² = (n/d)·G`, i.e. the lines form a tight frame.
pub fn tight_frame_check(lines: &LineSet) -> bool {
    match &lines.gram {
        Gram::Cyclotomic(g) => is_tight(g, lines.n, lines.d),
        Gram::Extended(g) => is_tight(g, lines.n, lines.d),
    }
}

/// The two eigenvalues of a Seidel matrix with `S² = δS + (n-1)I` and their
/// multiplicities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelSpectrum {
    pub theta: QuadraticSurd,
    pub tau: QuadraticSurd,
    pub m_theta: usize,
    pub m_tau: usize,
}

/// Solves `S² ∈ span{I, S}` exactly and reads off the spectrum. The trace of
/// `S` is zero, which fixes the multiplicities.
pub fn seidel_spectrum(s: &SeidelMatrix) -> Result<SeidelSpectrum, LinesError> {
    let n = s.n();
    let delta = annihilator_delta(&s.matrix).ok_or(LinesError::MoreThanTwoEigenvalues)?;
    let two = rat(2);
    let disc = &delta * &delta + rat(4 * (n as i64 - 1));
    // disc = num/den² · den² ... write √(p/q) = √(pq)/q.
    let (p, q) = (disc.numer().clone(), disc.denom().clone());
    let root = QuadraticSurd::new(Rational::zero(), Rational::new(BigInt::one(), q.clone()), p * q);
    let half_delta = QuadraticSurd::rational(&delta / &two);
    let half_root = root / QuadraticSurd::rational(two);
    let theta = half_delta.clone() + half_root.clone();
    let tau = half_delta - half_root;
    if !delta.is_zero() && !theta.is_rational() {
        return Err(LinesError::IrrationalEigenvalues);
    }
    let nn = QuadraticSurd::integer(n as i64);
    let m_theta = nn * (-tau.clone()) / (theta.clone() - tau.clone());
    let m_theta = m_theta
        .as_integer()
        .and_then(|m| m.to_usize())
        .ok_or(LinesError::IrrationalEigenvalues)?;
    Ok(SeidelSpectrum { theta, tau, m_theta, m_tau: n - m_theta })
}

/// `I - S/λ` as a Gram matrix, staying inside `Q(ζ_r)` whenever `1/λ` does.
fn gram_for(s: &SeidelMatrix, lambda: &QuadraticSurd) -> Gram {
    let order = s.order();
    let n = s.n();
    if let Some(l) = lambda.as_rational() {
        let inv = CycNum::from_rational(order, l.recip());
        let id = Matrix::identity(n, &inv);
        return Gram::Cyclotomic(id.sub(&s.matrix.scale(&inv)).expect("same shape"));
    }
    // λ = b√e with e squarefree; 1/λ = √e/(b e).
    let b = lambda.surd_coefficient().clone();
    let e = lambda.radicand().clone();
    let coefficient = (b * Rational::from_integer(e.clone())).recip();
    let r = order.get();
    if r % 4 == 1 && e == BigInt::from(r) {
        let inv = CycNum::gauss_sum(order).scale(&coefficient);
        let id = Matrix::identity(n, &inv);
        return Gram::Cyclotomic(id.sub(&s.matrix.scale(&inv)).expect("same shape"));
    }
    let radicand = Rational::from_integer(e);
    let inv = CycQuad::new(CycNum::zero(order), CycNum::from_rational(order, coefficient), radicand.clone());
    let lifted = s.matrix.map(|x| CycQuad::from_cyc(x.clone(), radicand.clone()));
    let id = Matrix::identity(n, &inv);
    Gram::Extended(id.sub(&lifted.scale(&inv)).expect("same shape"))
}

/// The two line systems of a Seidel matrix with two eigenvalues `θ > 0 > τ`:
/// `I - S/τ` in dimension `n - m_τ` and `I - S/θ` in dimension `n - m_θ`,
/// in that order.
pub fn seidel_to_linesets(s: &SeidelMatrix) -> Result<(LineSet, LineSet), LinesError> {
    let spectrum = seidel_spectrum(s)?;
    let tau_set = LineSet::new(gram_for(s, &spectrum.tau))?;
    let theta_set = LineSet::new(gram_for(s, &spectrum.theta))?;
    debug_assert_eq!(tau_set.d, s.n() - spectrum.m_tau);
    debug_assert_eq!(theta_set.d, s.n() - spectrum.m_theta);
    Ok((tau_set, theta_set))
}

/// Seidel matrix of a verified abelian cover under a nontrivial character,
/// with both of its line systems (`τ` set first).
pub fn cover_to_lines(f: &ArcMatrix, character: usize) -> Result<(SeidelMatrix, LineSet, LineSet), LinesError> {
    let chars = characters_of(f.group());
    if character == 0 {
        return Err(LinesError::TrivialCharacter);
    }
    let chi = chars.get(character).ok_or(LinesError::CharacterOutOfRange(character))?;
    drackn_verify(f)?;
    let s = SeidelMatrix::new(SeidelKind::Roots(chi.value_order()?), char_apply(f, chi)?)?;
    let (tau_set, theta_set) = seidel_to_linesets(&s)?;
    Ok((s, tau_set, theta_set))
}

/// A cyclic cover recovered from a Seidel matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LinesToCover {
    pub cover: ArcMatrix,
    pub certificate: CoverCertificate,
    /// `c = (1/r)((n-2) + (2d-n)/(αd))` for the line system of `I - S/τ`.
    pub c: Rational,
    pub d: usize,
}

/// Cyclic `(n, r, c)` cover with `f(u,v) = k` where `S_uv = ζ_r^k`.
pub fn lines_to_cover(s: &SeidelMatrix, r: u32) -> Result<LinesToCover, LinesError> {
    if !is_prime(r as u64) {
        return Err(LinesError::NotPrime(r));
    }
    let n = s.n();
    let mut exps = vec![vec![0u32; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                exps[u][v] = s.root_exponent(u, v, r).ok_or(LinesError::EntryNotRoot { u: u + 1, v: v + 1 })?;
            }
        }
    }
    let spectrum = seidel_spectrum(s)?;
    let d = n - spectrum.m_tau;
    // α = 1/|τ|, so (2d - n)/(αd) = (2d - n)|τ|/d.
    let abs_tau = -spectrum.tau.clone();
    let term = QuadraticSurd::integer(2 * d as i64 - n as i64) * abs_tau / QuadraticSurd::integer(d as i64);
    let c = (QuadraticSurd::integer(n as i64 - 2) + term) / QuadraticSurd::integer(r as i64);
    let c_value = c
        .as_rational()
        .filter(|q| q.is_integer() && q.is_positive())
        .cloned()
        .ok_or_else(|| LinesError::CNotPositiveInteger(c.to_string()))?;
    let group = AbelianGroup::cyclic(r)?;
    let cover = ArcMatrix::from_fn(n, &group, |u, v| vec![exps[u][v]]);
    let certificate = drackn_verify(&cover)?;
    if Rational::from_integer(certificate.params().c().clone()) != c_value {
        return Err(LinesError::Cover(CoverError::RoutesDisagree {
            combinatorial: format!("c={}", certificate.params().c()),
            algebraic: format!("c={c_value}"),
        }));
    }
    Ok(LinesToCover { cover, certificate, c: c_value, d })
}

/// Two-fold cover of `K_n` from a `±1` Seidel matrix: `+1` becomes the 2x2
/// identity and `-1` the 2x2 swap. Fibre `u` is `{2u, 2u+1}`.
pub fn double_real(s: &SeidelMatrix) -> Result<CoverGraph, LinesError> {
    let n = s.n();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let x = s.matrix.get(u, v).as_rational().ok_or(LinesError::NonRealEntry { u: u + 1, v: v + 1 })?;
            if x.is_one() {
                edges.extend([(2 * u, 2 * v), (2 * u + 1, 2 * v + 1)]);
            } else {
                edges.extend([(2 * u, 2 * v + 1), (2 * u + 1, 2 * v)]);
            }
        }
    }
    let fibres = (0..n).map(|u| vec![2 * u, 2 * u + 1]).collect();
    Ok(CoverGraph::new(Graph::from_edges(2 * n, &edges), fibres)?)
}

/// Largest number of free sign bits the conference search will enumerate.
const SEARCH_BITS: u32 = 28;

/// Seeded search for a symmetric `±1` Seidel matrix of order `n` with
/// `S² = (n-1)I`. The first row and column are fixed to `+1` (every switching
/// class has such a member); the remaining upper-triangle signs are read from
/// a counter that starts at a seeded random offset and wraps around, so every
/// pattern is visited once.
pub fn conference_search(n: usize, seed: u64) -> Result<SeidelMatrix, LinesError> {
    if n < 2 {
        return Err(LinesError::SearchExhausted(n));
    }
    let cells: Vec<(usize, usize)> = (1..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let bits = cells.len() as u32;
    if bits > SEARCH_BITS {
        return Err(LinesError::SearchTooLarge(n));
    }
    let total = 1u64 << bits;
    let start = ChaCha8Rng::seed_from_u64(seed).gen_range(0..total);
    let mut signs = vec![vec![0i64; n]; n];
    for k in 0..total {
        let pattern = (start + k) % total;
        for u in 0..n {
            for v in 0..n {
                signs[u][v] = if u == v { 0 } else { 1 };
            }
        }
        for (bit, &(u, v)) in cells.iter().enumerate() {
            if pattern >> bit & 1 == 1 {
                signs[u][v] = -1;
                signs[v][u] = -1;
            }
        }
        let conference = (0..n).all(|u| {
            (u..n).all(|w| {
                let dot: i64 = (0..n).map(|v| signs[u][v] * signs[w][v]).sum();
                dot == if u == w { n as i64 - 1 } else { 0 }
            })
        });
        if conference {
            let order = RootOrder::new(2)?;
            let matrix = Matrix::from_fn(n, n, |u, v| CycNum::from_rational(order, rat(signs[u][v])));
            return SeidelMatrix::new(SeidelKind::Generic, matrix);
        }
    }
    Err(LinesError::SearchExhausted(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;

    fn k2() -> SeidelMatrix {
        let order = RootOrder::new(2).unwrap();
        SeidelMatrix::from_exponents(order, &[vec![None, Some(0)], vec![Some(0), None]]).unwrap()
    }

    #[test]
    fn bounds() {
        assert_eq!(relative_bound(9, 3).unwrap(), ratio(1, 4));
        assert_eq!(relative_bound(7, 7).unwrap(), rat(0));
        assert_eq!(relative_bound(6, 3).unwrap(), ratio(1, 5));
        assert!(relative_bound(3, 4).is_err());
        assert_eq!(absolute_bound(3, LineField::Complex), BigInt::from(9));
        assert_eq!(absolute_bound(7, LineField::Real), BigInt::from(28));
        assert_eq!(absolute_bound(1, LineField::Real), BigInt::from(1));
    }

    #[test]
    fn single_edge_seidel() {
        let s = k2();
        let spectrum = seidel_spectrum(&s).unwrap();
        assert_eq!((spectrum.theta.clone(), spectrum.tau.clone()), (QuadraticSurd::integer(1), QuadraticSurd::integer(-1)));
        let (a, b) = seidel_to_linesets(&s).unwrap();
        assert_eq!((a.n(), a.d(), b.d()), (2, 1, 1));
        assert!(tight_frame_check(&a) && tight_frame_check(&b));
    }

    #[test]
    fn identity_gram_is_tight() {
        let order = RootOrder::new(3).unwrap();
        let g = Matrix::identity(4, &CycNum::one(order));
        // An orthonormal basis is equiangular with α = 0.
        let lines = LineSet::new(Gram::Cyclotomic(g)).unwrap();
        assert_eq!(lines.d(), 4);
        assert!(tight_frame_check(&lines));
    }

    #[test]
    fn rejects_non_seidel() {
        let order = RootOrder::new(3).unwrap();
        let minus_zeta = -CycNum::root_power(order, 1);
        let m = Matrix::from_fn(2, 2, |u, v| match (u, v) {
            (0, 1) => minus_zeta.clone(),
            (1, 0) => minus_zeta.conj(),
            _ => CycNum::zero(order),
        });
        let s = SeidelMatrix::new(SeidelKind::Roots(order), m).unwrap();
        assert_eq!(lines_to_cover(&s, 3).unwrap_err(), LinesError::EntryNotRoot { u: 1, v: 2 });
        let bad = Matrix::from_fn(2, 2, |u, v| CycNum::from_rational(order, rat((u != v) as i64 * 2)));
        assert!(SeidelMatrix::new(SeidelKind::Roots(order), bad).is_err());
    }

    #[test]
    fn doubling_small_cases_is_disconnected() {
        let cover = double_real(&k2()).unwrap();
        assert_eq!(cover.graph().components(), 2);
        let order = RootOrder::new(2).unwrap();
        let plus = Matrix::from_fn(3, 3, |u, v| CycNum::from_rational(order, rat((u != v) as i64)));
        let s = SeidelMatrix::new(SeidelKind::Generic, plus).unwrap();
        let cover = double_real(&s).unwrap();
        assert_eq!(cover.graph().components(), 2);
        assert!(matches!(
            crate::covers::verify_graph(&cover),
            Err(CoverError::NotConnected { components: 2 })
        ));
    }
}
