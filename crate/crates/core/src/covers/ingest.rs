use crate::algebra::is_prime;
use crate::graph::Graph;
use crate::groups::AbelianGroup;

use super::{ArcMatrix, CoverError};

/// A cover given as a plain graph together with its fibres.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    graph: Graph,
    fibres: Vec<Vec<usize>>,
}

impl CoverGraph {
    /// Checks both cover axioms: fibres are independent sets of one common
    /// size partitioning the vertices, and any two fibres are joined by a
    /// perfect matching.
    pub fn new(graph: Graph, fibres: Vec<Vec<usize>>) -> Result<Self, CoverError> {
        let size = graph.vertex_count();
        let r = fibres.first().map_or(0, Vec::len);
        let mut seen = vec![false; size];
        for fibre in &fibres {
            if fibre.len() != r {
                return Err(CoverError::Malformed("fibres have different sizes".into()));
            }
            for &v in fibre {
                if v >= size || std::mem::replace(&mut seen[v], true) {
                    return Err(CoverError::Malformed("fibres do not partition the vertices".into()));
                }
            }
        }
        if seen.iter().any(|s| !s) || fibres.len() < 2 {
            return Err(CoverError::Malformed("fibres do not partition the vertices".into()));
        }
        for (u, fu) in fibres.iter().enumerate() {
            for (i, &a) in fu.iter().enumerate() {
                if let Some(&b) = fu[i + 1..].iter().find(|&&b| graph.adjacent(a, b)) {
                    return Err(CoverError::FibreEdge { fibre: u + 1, a, b });
                }
            }
            for (v, fv) in fibres.iter().enumerate().skip(u + 1) {
                let perfect = fu.iter().all(|&a| fv.iter().filter(|&&b| graph.adjacent(a, b)).count() == 1)
                    && fv.iter().all(|&b| fu.iter().filter(|&&a| graph.adjacent(a, b)).count() == 1);
                if !perfect {
                    return Err(CoverError::NotMatching { u: u + 1, v: v + 1 });
                }
            }
        }
        let expected_degree = fibres.len() - 1;
        if let Some(v) = (0..size).find(|&v| graph.degree(v) != expected_degree) {
            return Err(CoverError::NotDistanceRegular {
                x: v,
                y: v,
                what: "degree",
                found: graph.degree(v),
                expected: expected_degree,
            });
        }
        Ok(CoverGraph { graph, fibres })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn fibres(&self) -> &[Vec<usize>] {
        &self.fibres
    }

    pub fn n(&self) -> usize {
        self.fibres.len()
    }

    pub fn r(&self) -> usize {
        self.fibres[0].len()
    }

    pub fn fibre_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.graph.vertex_count()];
        for (u, fibre) in self.fibres.iter().enumerate() {
            for &v in fibre {
                out[v] = u;
            }
        }
        out
    }

    /// The partner of vertex `a` in fibre `v`.
    fn partner(&self, a: usize, v: usize) -> usize {
        *self.fibres[v]
            .iter()
            .find(|&&b| self.graph.adjacent(a, b))
            .expect("fibres are joined by perfect matchings")
    }

    /// Recovers an arc function over `Z/r` when `r` is prime and the matching
    /// permutations generate a cyclic group acting regularly on each fibre.
    pub fn recover_arc_matrix(&self) -> Result<ArcMatrix, CoverError> {
        let (n, r) = (self.n(), self.r());
        if !is_prime(r as u64) {
            return Err(CoverError::NotRegularAbelian);
        }
        // Label every vertex by its partner in fibre 0, so the star at fibre 0
        // carries identity permutations.
        let mut label = vec![0usize; self.graph.vertex_count()];
        for (i, &a) in self.fibres[0].iter().enumerate() {
            label[a] = i;
            for v in 1..n {
                label[self.partner(a, v)] = i;
            }
        }
        let permutation = |u: usize, v: usize| -> Vec<usize> {
            let mut pi = vec![0; r];
            for &a in &self.fibres[u] {
                pi[label[a]] = label[self.partner(a, v)];
            }
            pi
        };
        let identity: Vec<usize> = (0..r).collect();
        let generator = (1..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .map(|(u, v)| permutation(u, v))
            .find(|pi| *pi != identity);
        // Position of each label along the cycle of the generator.
        let mut position = identity.clone();
        if let Some(pi) = &generator {
            let mut x = 0;
            for k in 0..r {
                if k > 0 && x == 0 {
                    return Err(CoverError::NotRegularAbelian);
                }
                position[x] = k;
                x = pi[x];
            }
            if x != 0 {
                return Err(CoverError::NotRegularAbelian);
            }
        }
        let group = AbelianGroup::cyclic(r as u32)?;
        let mut shifts = vec![vec![0u32; n]; n];
        for u in 1..n {
            for v in (u + 1)..n {
                let pi = permutation(u, v);
                let s = (position[pi[0]] + r - position[0]) % r;
                if (0..r).any(|x| position[pi[x]] != (position[x] + s) % r) {
                    return Err(CoverError::NotRegularAbelian);
                }
                shifts[u][v] = s as u32;
                shifts[v][u] = ((r - s) % r) as u32;
            }
        }
        Ok(ArcMatrix::from_fn(n, &group, |u, v| vec![shifts[u][v]]))
    }
}
