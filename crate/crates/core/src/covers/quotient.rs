use crate::algebra::{gcd_u64, gfp_rref};
use crate::groups::{AbelianGroup, Element};

use super::{ArcMatrix, CoverError};

/// Canonical projection `G -> G/H` for the subgroup `H` spanned by a list
/// of generators.
///
/// Supported: elementary abelian `G = (Z/p)^s`, where `G/H` is identified with
/// the coordinates that are not pivots of the reduced basis of `H`, and
/// cyclic `G = Z/d`, where `H = <h>` with `h = gcd(d, generators)` and
/// `G/H = Z/h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    source: AbelianGroup,
    target: AbelianGroup,
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Kind {
    Elementary { p: u32, basis: Vec<Vec<u32>>, pivots: Vec<usize>, free: Vec<usize> },
    Cyclic { h: u32 },
    Trivial,
}

impl QuotientMap {
    pub fn new(group: &AbelianGroup, generators: &[Element]) -> Result<Self, CoverError> {
        for g in generators {
            group.check(g)?;
        }
        if group.is_trivial() {
            return Ok(QuotientMap { source: group.clone(), target: group.clone(), kind: Kind::Trivial });
        }
        if let Some(p) = group.prime_exponent() {
            let mut basis = generators.to_vec();
            let pivots = if basis.is_empty() { Vec::new() } else { gfp_rref(&mut basis, p) };
            let free: Vec<usize> = (0..group.rank()).filter(|c| !pivots.contains(c)).collect();
            let target = AbelianGroup::elementary(p, free.len())?;
            return Ok(QuotientMap {
                source: group.clone(),
                target,
                kind: Kind::Elementary { p, basis, pivots, free },
            });
        }
        if let [d] = group.orders() {
            let h = generators.iter().fold(*d as u64, |acc, g| gcd_u64(acc, g[0] as u64)) as u32;
            let target = if h == 1 { AbelianGroup::trivial() } else { AbelianGroup::cyclic(h)? };
            return Ok(QuotientMap { source: group.clone(), target, kind: Kind::Cyclic { h } });
        }
        Err(CoverError::UnsupportedQuotient(group.clone()))
    }

    pub fn source(&self) -> &AbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &AbelianGroup {
        &self.target
    }

    /// `|H|`.
    pub fn subgroup_order(&self) -> usize {
        self.source.order() / self.target.order()
    }

    pub fn project(&self, g: &[u32]) -> Element {
        match &self.kind {
            Kind::Trivial => Vec::new(),
            Kind::Cyclic { h } => {
                if *h == 1 {
                    Vec::new()
                } else {
                    vec![g[0] % h]
                }
            }
            Kind::Elementary { p, basis, pivots, free } => {
                let mut x = g.to_vec();
                for (row, &col) in basis.iter().zip(pivots) {
                    let k = x[col];
                    if k != 0 {
                        for (xi, &ri) in x.iter_mut().zip(row) {
                            *xi = (*xi + p * p - k * ri % p) % p;
                        }
                    }
                }
                free.iter().map(|&c| x[c]).collect()
            }
        }
    }
}

/// The quotient cover: every entry of `f` pushed through `G -> G/H`.
pub fn quotient(f: &ArcMatrix, generators: &[Element]) -> Result<ArcMatrix, CoverError> {
    let map = QuotientMap::new(f.group(), generators)?;
    Ok(f.map_entries(map.target(), |g| map.project(g)))
}
