//! Pairwise statistics of a tournament via bit-row products.
//!
//! With `A⁺` the adjacency matrix and `A⁻` its transpose, entry `(u, v)` of
//! `A⁺(A⁺)ᵀ` is the common out-degree `d⁺(u,v)`, of `A⁻(A⁻)ᵀ` the common
//! in-degree `d⁻(u,v)`, and of `(A⁺)²` the number `p(u,v)` of 2-paths
//! `u → w → v`. Each entry is one popcount over two bit rows.

use alloc::vec;
use alloc::vec::Vec;

use crate::bits;
use crate::Tournament;

/// The four statistics of an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairStat {
    pub dplus: u32,
    pub dminus: u32,
    pub p_uv: u32,
    pub p_vu: u32,
}

/// Statistics of one ordered pair in a single pass over the rows.
#[inline]
pub fn pair_stat(g: &Tournament, u: usize, v: usize) -> PairStat {
    let (ou, iu, ov, iv) = (g.out_row(u), g.in_row(u), g.out_row(v), g.in_row(v));
    let mut s = PairStat::default();
    for i in 0..ou.len() {
        s.dplus += (ou[i] & ov[i]).count_ones();
        s.dminus += (iu[i] & iv[i]).count_ones();
        s.p_uv += (ou[i] & iv[i]).count_ones();
        s.p_vu += (ov[i] & iu[i]).count_ones();
    }
    s
}

/// Dense statistics for every ordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairStats {
    n: usize,
    dplus: Vec<u32>,
    dminus: Vec<u32>,
    /// `paths[u * n + v] = p(u, v)`.
    paths: Vec<u32>,
}

impl PairStats {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dplus(&self, u: usize, v: usize) -> u32 {
        self.dplus[u * self.n + v]
    }

    pub fn dminus(&self, u: usize, v: usize) -> u32 {
        self.dminus[u * self.n + v]
    }

    pub fn p_uv(&self, u: usize, v: usize) -> u32 {
        self.paths[u * self.n + v]
    }

    pub fn p_vu(&self, u: usize, v: usize) -> u32 {
        self.paths[v * self.n + u]
    }

    pub fn get(&self, u: usize, v: usize) -> PairStat {
        PairStat {
            dplus: self.dplus(u, v),
            dminus: self.dminus(u, v),
            p_uv: self.p_uv(u, v),
            p_vu: self.p_vu(u, v),
        }
    }
}

fn stats_row(g: &Tournament, u: usize) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let n = g.n();
    let mut dp = vec![0; n];
    let mut dm = vec![0; n];
    let mut p = vec![0; n];
    for v in 0..n {
        if v == u {
            continue;
        }
        dp[v] = bits::and_count(g.out_row(u), g.out_row(v)) as u32;
        dm[v] = bits::and_count(g.in_row(u), g.in_row(v)) as u32;
        p[v] = bits::and_count(g.out_row(u), g.in_row(v)) as u32;
    }
    (dp, dm, p)
}

/// `d⁺`, `d⁻` and `p` for every ordered pair of distinct vertices; diagonal
/// entries are zero.
pub fn compute_pair_stats(g: &Tournament) -> PairStats {
    let n = g.n();
    #[cfg(feature = "parallel")]
    let rows: Vec<_> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|u| stats_row(g, u)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<_> = (0..n).map(|u| stats_row(g, u)).collect();
    let mut stats = PairStats {
        n,
        dplus: Vec::with_capacity(n * n),
        dminus: Vec::with_capacity(n * n),
        paths: Vec::with_capacity(n * n),
    };
    for (dp, dm, p) in rows {
        stats.dplus.extend(dp);
        stats.dminus.extend(dm);
        stats.paths.extend(p);
    }
    stats
}

/// Sums `f(stat)` over every edge `(u, v)` of `g`, where `stat` describes
/// the ordered pair `(u, v)`. Rows are independent, so the result does not
/// depend on scheduling.
pub fn sum_over_edges<const N: usize>(
    g: &Tournament,
    f: impl Fn(PairStat) -> [u128; N] + Sync,
) -> [u128; N] {
    let row = |u: usize| {
        let mut acc = [0u128; N];
        for v in g.out_neighbors(u) {
            for (a, t) in acc.iter_mut().zip(f(pair_stat(g, u, v))) {
                *a += t;
            }
        }
        acc
    };
    let add = |mut a: [u128; N], b: [u128; N]| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..g.n()).into_par_iter().map(row).reduce(|| [0; N], add)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..g.n()).map(row).fold([0; N], add)
    }
}

/// Bipartite graph with left vertices `0..left` and right vertices
/// `0..right`; row `i` is the neighborhood of left vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    words: usize,
    adj: Vec<u64>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        let words = bits::words_for(right);
        BipartiteGraph {
            left,
            right,
            words,
            adj: vec![0; left * words],
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: &[(usize, usize)]) -> Self {
        let mut b = BipartiteGraph::new(left, right);
        for &(i, j) in edges {
            b.add_edge(i, j);
        }
        b
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.left && j < self.right);
        bits::set(&mut self.adj[i * self.words..(i + 1) * self.words], j);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    /// Number of 4-cycles: `Σ_{i<j} C(codeg(i, j), 2)` over left pairs.
    pub fn c4_count(&self) -> u128 {
        let mut total = 0u128;
        for i in 0..self.left {
            for j in i + 1..self.left {
                let c = bits::and_count(self.row(i), self.row(j)) as u128;
                total += c * c.saturating_sub(1) / 2;
            }
        }
        total
    }
}

/// 4-cycles in the bipartite graph between disjoint vertex sets `a` and `b`
/// of `g` whose edges are the edges of `g` directed from `a` to `b`.
pub fn bipartite_c4_count(g: &Tournament, a: &[usize], b: &[usize]) -> u128 {
    debug_assert!(a.iter().all(|x| !b.contains(x)), "sides must be disjoint");
    let mask = bits::from_members(g.n(), b.iter().copied());
    let rows: Vec<Vec<u64>> = a
        .iter()
        .map(|&x| g.out_row(x).iter().zip(&mask).map(|(r, m)| r & m).collect())
        .collect();
    let mut total = 0u128;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let c = bits::and_count(&rows[i], &rows[j]) as u128;
            total += c * c.saturating_sub(1) / 2;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{random_tournament, rotational, transitive};

    fn scan(g: &Tournament, u: usize, v: usize) -> PairStat {
        let mut s = PairStat::default();
        for w in 0..g.n() {
            if w == u || w == v {
                continue;
            }
            let (uw, vw, wu, wv) = (g.has_edge(u, w), g.has_edge(v, w), g.has_edge(w, u), g.has_edge(w, v));
            s.dplus += (uw && vw) as u32;
            s.dminus += (wu && wv) as u32;
            s.p_uv += (uw && wv) as u32;
            s.p_vu += (vw && wu) as u32;
        }
        s
    }

    #[test]
    fn c3_edge() {
        let g = rotational(3, &[1]);
        let s = compute_pair_stats(&g).get(0, 1);
        assert_eq!(
            s,
            PairStat {
                dplus: 0,
                dminus: 0,
                p_uv: 0,
                p_vu: 1
            }
        );
    }

    #[test]
    fn transitive_common_outs() {
        let n = 9;
        let st = compute_pair_stats(&transitive(n));
        for u in 0..n {
            for v in u + 1..n {
                assert_eq!(st.dplus(u, v) as usize, n - v - 1);
                assert_eq!(st.dminus(u, v) as usize, u);
                assert_eq!(st.p_uv(u, v) as usize, v - u - 1);
                assert_eq!(st.p_vu(u, v), 0);
            }
        }
    }

    #[test]
    fn matches_definitional_scan() {
        for seed in 0..40u64 {
            let g = random_tournament(1 + seed as usize, seed);
            let st = compute_pair_stats(&g);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    if u != v {
                        assert_eq!(st.get(u, v), scan(&g, u, v));
                        assert_eq!(pair_stat(&g, u, v), scan(&g, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn partition_identity() {
        let g = random_tournament(100, 2);
        let st = compute_pair_stats(&g);
        for u in 0..100 {
            for v in 0..100 {
                if u != v {
                    let s = st.get(u, v);
                    assert_eq!(s.dplus + s.dminus + s.p_uv + s.p_vu, 98);
                    assert_eq!(st.dplus(u, v), st.dplus(v, u));
                    assert_eq!(st.p_uv(u, v), st.p_vu(v, u));
                }
            }
        }
    }

    #[test]
    fn four_cycles() {
        assert_eq!(
            BipartiteGraph::from_edges(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).c4_count(),
            1
        );
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).collect();
        assert_eq!(BipartiteGraph::from_edges(3, 3, &k33).c4_count(), 9);
        let tree = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)];
        assert_eq!(BipartiteGraph::from_edges(3, 3, &tree).c4_count(), 0);
        // transitive: every edge from {0,1} to {2,3}
        assert_eq!(bipartite_c4_count(&transitive(4), &[0, 1], &[2, 3]), 1);
        assert_eq!(bipartite_c4_count(&transitive(4), &[2, 3], &[0, 1]), 0);
    }
}
