//! Simple undirected graphs, the input of the clique reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::catalog::for_each_k_subset;
use crate::rng::SplitMix64;

#[derive(Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
}

impl UndirectedGraph {
    /// The edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        let words = bits::words_for(n);
        UndirectedGraph {
            n,
            words,
            adj: vec![0; n * words],
        }
    }

    /// Calls `adjacent(i, j)` once for every pair `i < j`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = UndirectedGraph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Erdős–Rényi `G(n, p)`; pairs are visited in row-major order.
    pub fn random_gnp(n: usize, p: f64, seed: u64) -> Self {
        let mut rng = SplitMix64::new(seed);
        UndirectedGraph::from_fn(n, |_, _| rng.next_f64() < p)
    }

    pub fn complete(n: usize) -> Self {
        UndirectedGraph::from_fn(n, |_, _| true)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n, "bad edge ({u}, {v})");
        let w = self.words;
        bits::set(&mut self.adj[u * w..(u + 1) * w], v);
        bits::set(&mut self.adj[v * w..(v + 1) * w], u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.row(u), v)
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.adj[u * self.words..(u + 1) * self.words]
    }

    pub fn edge_count(&self) -> usize {
        bits::count(&self.adj) / 2
    }

    /// Some clique on `m` vertices, by exhaustive search over `m`-subsets.
    pub fn find_clique_brute_force(&self, m: usize) -> Option<Vec<usize>> {
        let mut found = None;
        for_each_k_subset(self.n, m, |s| {
            if found.is_none()
                && s.iter()
                    .enumerate()
                    .all(|(a, &u)| s[a + 1..].iter().all(|&v| self.has_edge(u, v)))
            {
                found = Some(s.to_vec());
            }
        });
        found
    }

    pub fn has_triangle(&self) -> bool {
        (0..self.n).any(|u| {
            bits::ones(self.row(u))
                .filter(|&v| v > u)
                .any(|v| bits::and_count(self.row(u), self.row(v)) > 0)
        })
    }
}

impl core::fmt::Debug for UndirectedGraph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "UndirectedGraph(n={}, m={})", self.n, self.edge_count())
    }
}
