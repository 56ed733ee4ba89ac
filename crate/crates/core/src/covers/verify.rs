use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{mat_poly_check, CycNum, Field, Matrix, QuadraticSurd, Rational};
use crate::feasibility::{spectral_params, EigenvalueKind, ParameterSet};
use crate::graph::Graph;
use crate::groups::{char_apply, characters_of, regular_expand};

use super::{validate_cover, ArcMatrix, CoverError};

/// Eigenvalue multiplicities of one nontrivial character block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMultiplicity {
    /// Position of the character in [`characters_of`].
    pub character: usize,
    pub theta: usize,
    pub tau: usize,
}

/// Outcome of a successful verification.
#[derive(Clone, PartialEq, Eq)]
pub struct CoverCertificate {
    params: ParameterSet,
    spectrum: Vec<(QuadraticSurd, BigInt)>,
    blocks: Vec<BlockMultiplicity>,
    checks_passed: Vec<&'static str>,
}

impl fmt::Debug for CoverCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} spectrum {}", self.params, self.spectrum_string())
    }
}

impl CoverCertificate {
    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    /// `(eigenvalue, multiplicity)` in the order `n-1, θ, -1, τ`.
    pub fn spectrum(&self) -> &[(QuadraticSurd, BigInt)] {
        &self.spectrum
    }

    pub fn blocks(&self) -> &[BlockMultiplicity] {
        &self.blocks
    }

    pub fn checks_passed(&self) -> &[&'static str] {
        &self.checks_passed
    }

    /// Space separated `value^multiplicity` terms.
    pub fn spectrum_string(&self) -> String {
        let terms: Vec<String> = self.spectrum.iter().map(|(e, m)| format!("{e}^{m}")).collect();
        terms.join(" ")
    }
}

/// Result of the combinatorial route: the constant numbers of common
/// neighbours of nonadjacent (`c`) and adjacent (`a1`) pairs in distinct
/// fibres.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Combinatorial {
    c: usize,
    a1: usize,
}

/// Combinatorial route on a graph whose fibres are given by `fibre_of`:
/// connectivity, constant `c` and `a1`, and fibre mates at distance 3.
fn combinatorial_route(x: &Graph, fibre_of: &[usize], n: usize, r: usize) -> Result<Combinatorial, CoverError> {
    let size = x.vertex_count();
    if let Some(v) = (0..size).find(|&v| x.degree(v) != n - 1) {
        return Err(CoverError::NotDistanceRegular {
            x: v,
            y: v,
            what: "degree",
            found: x.degree(v),
            expected: n - 1,
        });
    }
    if !x.is_connected() {
        return Err(CoverError::NotConnected { components: x.components() });
    }
    // Per vertex: the first pair that breaks uniformity, plus observed counts.
    type Row = (Option<usize>, Option<usize>, Option<(usize, usize, &'static str, usize)>);
    let rows: Vec<Row> = (0..size)
        .into_par_iter()
        .map(|a| {
            let mut c = None;
            let mut a1 = None;
            for b in (a + 1)..size {
                let common = x.common_neighbours(a, b);
                if fibre_of[a] == fibre_of[b] {
                    if common != 0 {
                        return (c, a1, Some((b, common, "antipodal", 0)));
                    }
                    continue;
                }
                let slot = if x.adjacent(a, b) { &mut a1 } else { &mut c };
                match *slot {
                    None => *slot = Some(common),
                    Some(k) if k != common => {
                        let what = if x.adjacent(a, b) { "a1" } else { "c" };
                        return (c, a1, Some((b, common, what, k)));
                    }
                    _ => {}
                }
            }
            (c, a1, None)
        })
        .collect();
    let mut c = None;
    let mut a1 = None;
    for (a, (rc, ra1, bad)) in rows.into_iter().enumerate() {
        if let Some((b, found, what, expected)) = bad {
            return Err(CoverError::NotDistanceRegular { x: a, y: b, what, found, expected });
        }
        for (global, local, what) in [(&mut c, rc, "c"), (&mut a1, ra1, "a1")] {
            match (*global, local) {
                (None, Some(k)) => *global = Some(k),
                (Some(k), Some(l)) if k != l => {
                    return Err(CoverError::NotDistanceRegular { x: a, y: a, what, found: l, expected: k })
                }
                _ => {}
            }
        }
    }
    let c = c.unwrap_or(0);
    let a1 = a1.unwrap_or(0);
    if c == 0 {
        return Err(CoverError::NotDistanceRegular { x: 0, y: 0, what: "c", found: 0, expected: 1 });
    }
    let expected_a1 = (n - 2) as i64 - ((r - 1) * c) as i64;
    if a1 as i64 != expected_a1 {
        return Err(CoverError::NotDistanceRegular {
            x: 0,
            y: 0,
            what: "a1",
            found: a1,
            expected: expected_a1.max(0) as usize,
        });
    }
    Ok(Combinatorial { c, a1 })
}

struct Algebraic {
    delta: Rational,
    blocks: Vec<BlockMultiplicity>,
}

/// Algebraic route: every nontrivial character matrix `S` must satisfy
/// `S² = δS + (n-1)I` for one common rational `δ`. Multiplicities come from
/// exact ranks when the eigenvalues are integers and from the zero trace
/// otherwise.
fn algebraic_route(f: &ArcMatrix) -> Result<Algebraic, CoverError> {
    let n = f.n();
    let chars = characters_of(f.group());
    let results: Vec<Result<(Rational, BlockMultiplicity), CoverError>> = chars
        .par_iter()
        .enumerate()
        .skip(1)
        .map(|(index, chi)| {
            let s = char_apply(f, chi)?;
            let delta = annihilator_delta(&s).ok_or(CoverError::CharacterPolynomial { character: index })?;
            let params = CharacterQuadratic::new(n, &delta);
            let (theta, tau) = match params.integral_roots() {
                Some((theta, tau)) => {
                    let id = Matrix::identity(n, s.get(0, 0));
                    let nullity = |lambda: &Rational| -> Result<usize, CoverError> {
                        let shifted = s.sub(&id.scale(&s.get(0, 0).rational_like(lambda)))?;
                        Ok(n - shifted.rank())
                    };
                    (nullity(&theta)?, nullity(&tau)?)
                }
                None if delta.is_zero() && n.is_multiple_of(2) => (n / 2, n / 2),
                None => return Err(CoverError::CharacterPolynomial { character: index }),
            };
            if theta + tau != n {
                return Err(CoverError::CharacterPolynomial { character: index });
            }
            Ok((delta, BlockMultiplicity { character: index, theta, tau }))
        })
        .collect();
    let mut delta: Option<Rational> = None;
    let mut blocks = Vec::new();
    for res in results {
        let (d, block) = res?;
        match &delta {
            Some(prev) if *prev != d => {
                return Err(CoverError::CharacterPolynomial { character: block.character })
            }
            _ => delta = Some(d),
        }
        blocks.push(block);
    }
    let delta = delta.ok_or(CoverError::TrivialGroup)?;
    Ok(Algebraic { delta, blocks })
}

/// Reads `δ` off `S² = δS + (n-1)I` and confirms the identity exactly.
pub(crate) fn annihilator_delta(s: &Matrix<CycNum>) -> Option<Rational> {
    let n = s.rows();
    let sq = s.mul(s).ok()?;
    let ratio = sq.get(0, 1).times(&s.get(0, 1).inverse()?);
    let delta = ratio.as_rational()?.clone();
    let coeffs = [Rational::from_integer(-BigInt::from(n - 1)), -delta.clone(), Rational::from_integer(1.into())];
    mat_poly_check(s, &coeffs).ok()?.then_some(delta)
}

/// Roots of `x² - δx - (n-1)` when they are integers.
struct CharacterQuadratic {
    disc: Rational,
    delta: Rational,
}

impl CharacterQuadratic {
    fn new(n: usize, delta: &Rational) -> Self {
        let disc = delta * delta + Rational::from_integer(BigInt::from(4 * (n - 1)));
        CharacterQuadratic { disc, delta: delta.clone() }
    }

    fn integral_roots(&self) -> Option<(Rational, Rational)> {
        let root = crate::algebra::rational_sqrt(&self.disc)?;
        let two = Rational::from_integer(2.into());
        let theta = (&self.delta + &root) / &two;
        let tau = (&self.delta - &root) / &two;
        (theta.is_integer() && tau.is_integer()).then_some((theta, tau))
    }
}

fn certificate(
    n: usize,
    r: usize,
    combinatorial: Combinatorial,
    algebraic: Algebraic,
    mut checks: Vec<&'static str>,
) -> Result<CoverCertificate, CoverError> {
    let c_b = (Rational::from_integer(BigInt::from(n as i64 - 2)) - &algebraic.delta)
        / Rational::from_integer(BigInt::from(r));
    let disagree = || CoverError::RoutesDisagree {
        combinatorial: format!("c={} a1={}", combinatorial.c, combinatorial.a1),
        algebraic: format!("c={c_b}"),
    };
    if c_b != Rational::from_integer(BigInt::from(combinatorial.c)) {
        return Err(disagree());
    }
    let params = spectral_params(n, r, combinatorial.c);
    let m_theta: usize = algebraic.blocks.iter().map(|b| b.theta).sum();
    let m_tau: usize = algebraic.blocks.iter().map(|b| b.tau).sum();
    let formula = (params.m_theta().as_integer(), params.m_tau().as_integer());
    if formula != (Some(m_theta.into()), Some(m_tau.into())) {
        return Err(disagree());
    }
    if params.kind() == EigenvalueKind::Irrational {
        return Err(disagree());
    }
    checks.extend(["multiplicities", "routes-agree"]);
    let spectrum = vec![
        (QuadraticSurd::integer(n as i64 - 1), BigInt::from(1)),
        (params.theta().clone(), BigInt::from(m_theta)),
        (QuadraticSurd::integer(-1), BigInt::from(n - 1)),
        (params.tau().clone(), BigInt::from(m_tau)),
    ];
    Ok(CoverCertificate { params, spectrum, blocks: algebraic.blocks, checks_passed: checks })
}

/// Verifies that the cover defined by `f` is an `(n, r, c)`-DRACKN, once by
/// counting common neighbours in the expanded graph and once through the
/// character matrices. A certificate is issued only when both agree.
pub fn drackn_verify(f: &ArcMatrix) -> Result<CoverCertificate, CoverError> {
    validate_cover(f)?;
    let (n, r) = (f.n(), f.r());
    if r < 2 {
        return Err(CoverError::TrivialGroup);
    }
    let x = regular_expand(f);
    let fibre_of: Vec<usize> = (0..n * r).map(|v| v / r).collect();
    let combinatorial = combinatorial_route(&x, &fibre_of, n, r)?;
    let algebraic = algebraic_route(f).map_err(|e| CoverError::RoutesDisagree {
        combinatorial: format!("c={}", combinatorial.c),
        algebraic: e.to_string(),
    })?;
    certificate(
        n,
        r,
        combinatorial,
        algebraic,
        vec!["arc-function", "connected", "distance-regular", "character-polynomial"],
    )
}

/// Verification of a cover given as a graph with explicit fibres. The
/// algebraic route runs on an arc function recovered from the matchings.
pub fn verify_graph(cover: &super::CoverGraph) -> Result<CoverCertificate, CoverError> {
    let (n, r) = (cover.n(), cover.r());
    if r < 2 {
        return Err(CoverError::TrivialGroup);
    }
    let combinatorial = combinatorial_route(cover.graph(), &cover.fibre_of(), n, r)?;
    let f = cover.recover_arc_matrix()?;
    let algebraic = algebraic_route(&f).map_err(|e| CoverError::RoutesDisagree {
        combinatorial: format!("c={}", combinatorial.c),
        algebraic: e.to_string(),
    })?;
    certificate(
        n,
        r,
        combinatorial,
        algebraic,
        vec!["cover-axioms", "connected", "distance-regular", "character-polynomial"],
    )
}

/// `(n, r, c)` as machine integers, for callers that index with them.
pub fn small_params(cert: &CoverCertificate) -> (usize, usize, usize) {
    let p = cert.params();
    let to = |x: &BigInt| x.to_usize().expect("verified parameters are small");
    (to(p.n()), to(p.r()), to(p.c()))
}
