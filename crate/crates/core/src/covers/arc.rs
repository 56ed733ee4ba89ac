use std::fmt;

use crate::groups::{AbelianGroup, Element};

use super::CoverError;

/// Arc function of an abelian cover of `K_n`: an `n x n` matrix of group
/// elements with an empty diagonal, where `f(v,u)` must be `-f(u,v)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ArcMatrix {
    n: usize,
    group: AbelianGroup,
    entries: Vec<Option<Element>>,
}

impl fmt::Debug for ArcMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ArcMatrix over {} (n={})", self.group, self.n)?;
        for u in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|v| match &self.entries[u * self.n + v] {
                    None => ".".to_string(),
                    Some(g) => format!("{g:?}"),
                })
                .collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

impl ArcMatrix {
    /// Builds an arc matrix from rows where the diagonal is `None`. The
    /// inverse-pair law is not checked here; see [`super::validate_cover`].
    pub fn new(group: &AbelianGroup, rows: Vec<Vec<Option<Element>>>) -> Result<Self, CoverError> {
        let n = rows.len();
        if n < 2 {
            return Err(CoverError::Malformed(format!("need at least 2 fibres, got {n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (u, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(CoverError::Malformed(format!("row {} has {} entries", u + 1, row.len())));
            }
            for (v, cell) in row.into_iter().enumerate() {
                match (&cell, u == v) {
                    (None, true) => {}
                    (Some(_), true) => {
                        return Err(CoverError::Malformed(format!("diagonal entry {} is not empty", u + 1)))
                    }
                    (None, false) => {
                        return Err(CoverError::Malformed(format!("entry ({},{}) is empty", u + 1, v + 1)))
                    }
                    (Some(g), false) => group.check(g)?,
                }
                entries.push(cell);
            }
        }
        Ok(ArcMatrix { n, group: group.clone(), entries })
    }

    /// Builds an arc matrix from a function on ordered pairs `u ≠ v`.
    ///
    /// Panics if `f` returns something outside the group.
    pub fn from_fn(n: usize, group: &AbelianGroup, mut f: impl FnMut(usize, usize) -> Element) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    entries.push(None);
                } else {
                    let g = f(u, v);
                    assert!(group.contains(&g), "{g:?} is not an element of {group}");
                    entries.push(Some(g));
                }
            }
        }
        ArcMatrix { n, group: group.clone(), entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Index of the cover, `|G|`.
    pub fn r(&self) -> usize {
        self.group.order()
    }

    /// `f(u, v)` for `u ≠ v`; panics on the diagonal.
    pub fn entry(&self, u: usize, v: usize) -> &[u32] {
        self.entries[u * self.n + v]
            .as_deref()
            .expect("arc matrices have no diagonal entries")
    }

    /// `f(u, v)`, or `None` on the diagonal.
    pub fn get(&self, u: usize, v: usize) -> Option<&[u32]> {
        self.entries[u * self.n + v].as_deref()
    }

    /// The same matrix over `target`, with every entry sent through `map`.
    pub fn map_entries(&self, target: &AbelianGroup, mut map: impl FnMut(&[u32]) -> Element) -> Self {
        ArcMatrix::from_fn(self.n, target, |u, v| map(self.entry(u, v)))
    }

    /// True when some group isomorphism between the entry groups carries
    /// every entry of `self` to the entry of `other` in the same cell. Only
    /// the values that occur are compared, which is enough for covers whose
    /// entries generate the group.
    pub fn equivalent_by_relabeling(&self, other: &ArcMatrix) -> bool {
        if self.n != other.n || self.r() != other.r() {
            return false;
        }
        let mut forward = std::collections::HashMap::new();
        let mut backward = std::collections::HashMap::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if u == v {
                    continue;
                }
                let (a, b) = (self.entry(u, v).to_vec(), other.entry(u, v).to_vec());
                if *forward.entry(a.clone()).or_insert_with(|| b.clone()) != b
                    || *backward.entry(b).or_insert(a.clone()) != a
                {
                    return false;
                }
            }
        }
        let pairs: Vec<_> = forward.iter().collect();
        pairs.iter().all(|(a, b)| {
            pairs.iter().all(|(c, d)| {
                let sum = self.group.add(a, c);
                match forward.get(&sum) {
                    Some(image) => *image == other.group.add(b, d),
                    None => true,
                }
            })
        })
    }
}

/// Checks the arc-function law `f(v,u) = -f(u,v)`. Fibres are independent and
/// joined by perfect matchings by construction of the expansion.
pub fn validate_cover(f: &ArcMatrix) -> Result<(), CoverError> {
    let g = f.group();
    for u in 0..f.n() {
        for v in (u + 1)..f.n() {
            if f.entry(v, u) != g.neg(f.entry(u, v)).as_slice() {
                return Err(CoverError::InversePair { u: u + 1, v: v + 1 });
            }
        }
    }
    Ok(())
}

/// Gauge transformation making `f(1, v)` the identity for every `v`: fibre
/// `v` is relabelled by `-f(1, v)`, so `f'(u,v) = f(u,v) - f(1,v) + f(1,u)`.
pub fn normalize(f: &ArcMatrix) -> ArcMatrix {
    let g = f.group();
    let shift = |u: usize| if u == 0 { g.identity() } else { f.entry(0, u).to_vec() };
    ArcMatrix::from_fn(f.n(), g, |u, v| {
        if u == 0 {
            g.identity()
        } else {
            g.add(&g.sub(f.entry(u, v), &shift(v)), &shift(u))
        }
    })
}
