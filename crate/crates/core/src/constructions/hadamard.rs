use num_traits::ToPrimitive;

use crate::covers::{drackn_verify, normalize, ArcMatrix};
use crate::groups::{AbelianGroup, Element, GroupRingElement};

use super::ConstructionError;

/// Square matrix of group elements, diagonal included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhMatrix {
    group: AbelianGroup,
    n: usize,
    entries: Vec<Element>,
}

/// Outcome of [`gh_validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GhValidation {
    pub valid: bool,
    /// First cell (0-based, row-major) where `H H*` differs from the target.
    pub first_failure: Option<(usize, usize)>,
}

impl GhMatrix {
    pub fn new(group: &AbelianGroup, rows: Vec<Vec<Element>>) -> Result<Self, ConstructionError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|row| row.len() != n) {
            return Err(ConstructionError::Dimensions("GH matrix must be square and nonempty".into()));
        }
        for g in rows.iter().flatten() {
            group.check(g)?;
        }
        Ok(GhMatrix { group: group.clone(), n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, u: usize, v: usize) -> &[u32] {
        &self.entries[u * self.n + v]
    }
}

/// Checks `H H* = nI + c·G̲(J - I)` in `Z[G]` with `c = n/r`, where
/// `(H H*)_{uw} = Σ_v H_{uv} - H_{wv}`.
pub fn gh_validate(h: &GhMatrix) -> GhValidation {
    let g = &h.group;
    let (n, r) = (h.n, g.order());
    let fail = |u, w| GhValidation { valid: false, first_failure: Some((u, w)) };
    if n % r != 0 {
        return fail(0, 1.min(n - 1));
    }
    let c = (n / r) as i64;
    let diagonal = GroupRingElement::from_element(g, &g.identity())
        .expect("identity is an element")
        .scale(n as i64);
    let off_diagonal = GroupRingElement::group_sum(g).scale(c);
    for u in 0..n {
        for w in 0..n {
            let mut cell = GroupRingElement::zero(g);
            for v in 0..n {
                cell.add_element(&g.sub(h.entry(u, v), h.entry(w, v)), 1);
            }
            let target = if u == w { &diagonal } else { &off_diagonal };
            if cell != *target {
                return fail(u, w);
            }
        }
    }
    GhValidation { valid: true, first_failure: None }
}

/// `H = A(K_n)^f + eI` for a verified cover with `δ = -2`.
pub fn cover_to_gh(f: &ArcMatrix) -> Result<GhMatrix, ConstructionError> {
    let cert = drackn_verify(f)?;
    let delta = cert.params().delta().to_i64().unwrap_or(i64::MAX);
    if delta != -2 {
        return Err(ConstructionError::DeltaNotMinusTwo(delta));
    }
    let g = f.group();
    let rows = (0..f.n())
        .map(|u| (0..f.n()).map(|v| f.get(u, v).map_or_else(|| g.identity(), <[u32]>::to_vec)).collect())
        .collect();
    GhMatrix::new(g, rows)
}

/// Inverse of [`cover_to_gh`]: needs a constant diagonal `g0` with
/// `H_{vu} - g0 = -(H_{uv} - g0)` and a valid GH matrix; returns the
/// normalized arc function `f(u,v) = H_{uv} - g0`.
pub fn gh_to_cover(h: &GhMatrix) -> Result<ArcMatrix, ConstructionError> {
    let g = &h.group;
    let g0 = h.entry(0, 0).to_vec();
    if (0..h.n).any(|u| h.entry(u, u) != g0.as_slice()) {
        return Err(ConstructionError::DiagonalNotConstant);
    }
    for u in 0..h.n {
        for v in (u + 1)..h.n {
            if g.sub(h.entry(v, u), &g0) != g.neg(&g.sub(h.entry(u, v), &g0)) {
                return Err(ConstructionError::NotSelfAdjoint { u: u + 1, v: v + 1 });
            }
        }
    }
    let check = gh_validate(h);
    if let Some((u, v)) = check.first_failure {
        return Err(ConstructionError::GhIdentity { u: u + 1, v: v + 1 });
    }
    if h.n < 2 {
        return Err(ConstructionError::Dimensions("GH matrix of order 1 has no cover".into()));
    }
    Ok(normalize(&ArcMatrix::from_fn(h.n, g, |u, v| g.sub(h.entry(u, v), &g0))))
}
