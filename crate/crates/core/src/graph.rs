//! Simple undirected graphs with bitset adjacency rows.

use std::collections::VecDeque;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph { n, words, bits: vec![0; n * words] }
    }

    /// Graph on `n` vertices with the given undirected edges. Loops are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Reads a 0/1 matrix; returns `None` unless it is symmetric with zero
    /// diagonal.
    pub fn from_adjacency(rows: &[Vec<u8>]) -> Option<Self> {
        let n = rows.len();
        let mut g = Graph::empty(n);
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n || row[u] != 0 {
                return None;
            }
            for (v, &x) in row.iter().enumerate() {
                match x {
                    0 => {}
                    1 if rows[v][u] == 1 => g.set(u, v),
                    _ => return None,
                }
            }
        }
        Some(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.set(u, v);
            self.set(v, u);
        }
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.row(u)[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbours(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.adjacent(u, v)).collect()
    }

    pub fn common_neighbours(&self, u: usize, v: usize) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for v in self.neighbours(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn components(&self) -> usize {
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            for (v, d) in self.distances(s).into_iter().enumerate() {
                if d.is_some() {
                    seen[v] = true;
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances(0).iter().all(Option::is_some)
    }

    pub fn to_adjacency(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.adjacent(u, v) as u8).collect())
            .collect()
    }

    /// The graph with vertex `perm[v]` playing the role of `v`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in self.neighbours(u) {
                g.set(perm[u], perm[v]);
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_distances() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        assert_eq!(g.distances(0), vec![Some(0), Some(1), Some(2), Some(3), Some(2), Some(1)]);
        assert_eq!(g.common_neighbours(0, 2), 1);
        assert!(g.is_connected());
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn adjacency_round_trip() {
        let g = Graph::from_edges(70, &[(0, 69), (3, 65), (64, 1)]);
        let h = Graph::from_adjacency(&g.to_adjacency()).unwrap();
        assert_eq!(g, h);
        assert_eq!(h.components(), 67);
        assert!(Graph::from_adjacency(&[vec![0, 1], vec![0, 0]]).is_none());
    }
}
