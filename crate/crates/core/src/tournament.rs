//! Dense bit-matrix tournaments and their elementary structure.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits;
use crate::Error;

/// A complete oriented graph on vertices `0..n`.
///
/// Row `u` of the out-matrix holds `N⁺(u)`; the in-matrix is kept alongside
/// as the transpose so that in-neighborhoods are also a single row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl Tournament {
    /// Builds a tournament from a predicate on pairs `i < j`: `true` orients
    /// the edge `i → j`, `false` orients it `j → i`.
    pub fn from_fn(n: usize, mut forward: impl FnMut(usize, usize) -> bool) -> Self {
        let words = bits::words_for(n);
        let mut t = Tournament {
            n,
            words,
            out: vec![0; n * words],
            inn: vec![0; n * words],
        };
        for i in 0..n {
            for j in i + 1..n {
                if forward(i, j) {
                    t.set_edge(i, j);
                } else {
                    t.set_edge(j, i);
                }
            }
        }
        t
    }

    /// Builds a tournament from an out-neighborhood oracle over all ordered
    /// pairs, checking antisymmetry. Returns the first offending pair.
    pub fn from_relation(
        n: usize,
        mut edge: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self, (usize, usize)> {
        for u in 0..n {
            if edge(u, u) {
                return Err((u, u));
            }
            for v in u + 1..n {
                if edge(u, v) == edge(v, u) {
                    return Err((u, v));
                }
            }
        }
        Ok(Tournament::from_fn(n, edge))
    }

    fn set_edge(&mut self, u: usize, v: usize) {
        let w = self.words;
        bits::set(&mut self.out[u * w..(u + 1) * w], v);
        bits::clear(&mut self.out[v * w..(v + 1) * w], u);
        bits::set(&mut self.inn[v * w..(v + 1) * w], u);
        bits::clear(&mut self.inn[u * w..(u + 1) * w], v);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Words per bit row.
    #[inline]
    pub fn words(&self) -> usize {
        self.words
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        bits::get(self.out_row(u), v)
    }

    /// `N⁺(u)` as a bit row.
    #[inline]
    pub fn out_row(&self, u: usize) -> &[u64] {
        &self.out[u * self.words..(u + 1) * self.words]
    }

    /// `N⁻(u)` as a bit row.
    #[inline]
    pub fn in_row(&self, u: usize) -> &[u64] {
        &self.inn[u * self.words..(u + 1) * self.words]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        bits::count(self.out_row(u))
    }

    pub fn in_degree(&self, u: usize) -> usize {
        bits::count(self.in_row(u))
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.out_degree(u)).collect()
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.out_row(u))
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.in_row(u))
    }

    /// Every edge `(u, v)`, grouped by tail in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out_neighbors(u).map(move |v| (u, v)))
    }

    /// Reverses every edge.
    pub fn transpose(&self) -> Tournament {
        Tournament {
            n: self.n,
            words: self.words,
            out: self.inn.clone(),
            inn: self.out.clone(),
        }
    }

    /// Copy with the edge between `u` and `v` reversed.
    pub fn with_flipped(&self, u: usize, v: usize) -> Tournament {
        let mut t = self.clone();
        if t.has_edge(u, v) {
            t.set_edge(v, u);
        } else {
            t.set_edge(u, v);
        }
        t
    }

    /// Sub-tournament on `vertices`, relabelled in ascending order of the
    /// original labels.
    pub fn induced(&self, vertices: &[usize]) -> Result<Tournament, Error> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        self.induced_ordered(&sorted)
    }

    /// Sub-tournament on `vertices` where new vertex `i` is `vertices[i]`.
    pub fn induced_ordered(&self, vertices: &[usize]) -> Result<Tournament, Error> {
        let mut seen = vec![0u64; self.words];
        for &v in vertices {
            if v >= self.n || bits::get(&seen, v) {
                return Err(Error::BadSubset { vertex: v });
            }
            bits::set(&mut seen, v);
        }
        Ok(self.induced_unchecked(vertices))
    }

    pub(crate) fn induced_unchecked(&self, vertices: &[usize]) -> Tournament {
        Tournament::from_fn(vertices.len(), |i, j| {
            self.has_edge(vertices[i], vertices[j])
        })
    }

    /// Sub-tournament on the members of a bit row, in ascending order.
    pub fn induced_by_row(&self, row: &[u64]) -> (Tournament, Vec<usize>) {
        let members: Vec<usize> = bits::ones(row).collect();
        (self.induced_unchecked(&members), members)
    }

    /// Orders the members of `mask` by descending out-degree inside the set.
    /// Returns the order if it is transitive, otherwise a directed triangle
    /// `[a, b, c]` with `a → b → c → a` inside the set.
    pub fn order_within(&self, mask: &[u64]) -> Result<Vec<usize>, [usize; 3]> {
        let mut members: Vec<(usize, usize)> = bits::ones(mask)
            .map(|v| (bits::and_count(self.out_row(v), mask), v))
            .collect();
        members.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let m = members.len();
        let exact = members.iter().enumerate().all(|(i, &(d, _))| d == m - 1 - i);
        let order: Vec<usize> = members.into_iter().map(|(_, v)| v).collect();
        if exact {
            return Ok(order);
        }
        // Some later vertex beats an earlier one; the earlier one has at least
        // its out-degree, so a 2-path closes a triangle.
        let mut later = mask.to_vec();
        for &u in &order {
            bits::clear(&mut later, u);
            if let Some(v) = bits::first_common(&later, self.in_row(u)) {
                let w = self
                    .out_row(u)
                    .iter()
                    .zip(self.in_row(v))
                    .zip(mask)
                    .enumerate()
                    .find_map(|(i, ((x, y), z))| {
                        let word = x & y & z;
                        (word != 0).then(|| i * 64 + word.trailing_zeros() as usize)
                    })
                    .expect("a 2-path from u to v exists when v beats u and d(u) >= d(v)");
                return Err([v, u, w]);
            }
        }
        unreachable!("a non-transitive score sequence has an order violation")
    }

    /// Transitive ordering of the whole tournament, or a directed triangle.
    pub fn transitive_order(&self) -> Result<Vec<usize>, [usize; 3]> {
        self.order_within(&bits::full(self.n))
    }

    /// True iff the tournament has no directed triangle. O(n²).
    pub fn is_transitive(&self) -> bool {
        self.transitive_order().is_ok()
    }

    /// Some directed triangle `[a, b, c]` with `a → b → c → a`.
    pub fn find_three_cycle(&self) -> Option<[usize; 3]> {
        self.transitive_order().err()
    }

    /// `k` vertices inducing a transitive tournament, listed in dominance order.
    ///
    /// Repeatedly takes the lowest remaining candidate and keeps the larger of
    /// its out- and in-neighborhoods among the candidates, so `2^(k-1)`
    /// vertices always suffice.
    pub fn find_transitive(&self, k: usize) -> Result<Vec<usize>, Error> {
        let needed = if k == 0 { 0 } else { 1usize << (k - 1).min(63) };
        if self.n < needed {
            return Err(Error::TooFewVertices {
                needed,
                got: self.n,
            });
        }
        let mut cand = bits::full(self.n);
        let mut front = Vec::with_capacity(k);
        let mut back = Vec::new();
        for step in 0..k {
            let v = bits::ones(&cand).next().expect("candidate pool never empties");
            bits::clear(&mut cand, v);
            if step + 1 == k {
                front.push(v);
                break;
            }
            let outs = bits::and_count(&cand, self.out_row(v));
            let ins = bits::count(&cand) - outs;
            let keep = if outs >= ins {
                front.push(v);
                self.out_row(v)
            } else {
                back.push(v);
                self.in_row(v)
            };
            for (c, k) in cand.iter_mut().zip(keep) {
                *c &= k;
            }
        }
        front.extend(back.into_iter().rev());
        Ok(front)
    }

    /// Strongly connected components in condensation order.
    ///
    /// Uses the score sequence: after sorting by descending out-degree, the
    /// top `k` vertices dominate the rest exactly when their scores sum to
    /// `C(k,2) + k(n-k)`, and the components are the intervals between such
    /// cut points.
    pub fn scc(&self) -> SccDecomposition {
        let n = self.n;
        let mut order: Vec<(usize, usize)> =
            (0..n).map(|v| (self.out_degree(v), v)).collect();
        order.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut components = Vec::new();
        let mut component_of = vec![0; n];
        let mut current = Vec::new();
        let mut score_sum = 0usize;
        for (k, &(d, v)) in order.iter().enumerate() {
            score_sum += d;
            current.push(v);
            let top = k + 1;
            if score_sum == top * (top - 1) / 2 + top * (n - top) {
                for &u in &current {
                    component_of[u] = components.len();
                }
                current.sort_unstable();
                components.push(core::mem::take(&mut current));
            }
        }
        let dec = SccDecomposition {
            components,
            component_of,
        };
        debug_assert!(dec.is_consistent_with(self));
        dec
    }

    /// Bits of the pairs `i < j` in row-major order, `1` meaning `i → j`;
    /// pair `(0,1)` is bit 0. Only meaningful for small `n`.
    pub fn pair_code(&self) -> u64 {
        debug_assert!(self.n <= 11);
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Inverse of [`Tournament::pair_code`].
    pub fn from_pair_code(n: usize, code: u64) -> Tournament {
        let mut bit = 0;
        let mut next = move || {
            let b = code >> bit & 1 == 1;
            bit += 1;
            b
        };
        Tournament::from_fn(n, |_, _| next())
    }
}

impl fmt::Debug for Tournament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tournament({})", self.n)?;
        for u in 0..self.n {
            for v in 0..self.n {
                f.write_str(if self.has_edge(u, v) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Strong components; earlier components dominate later ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
    pub component_of: Vec<usize>,
}

impl SccDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest component (first one among ties).
    pub fn largest(&self) -> Option<&[usize]> {
        let mut best: Option<&Vec<usize>> = None;
        for c in &self.components {
            if best.is_none_or(|b| c.len() > b.len()) {
                best = Some(c);
            }
        }
        best.map(|c| c.as_slice())
    }

    /// Checks that the components partition the vertices and that every
    /// cross edge points from an earlier component to a later one.
    pub fn is_consistent_with(&self, g: &Tournament) -> bool {
        if self.component_of.len() != g.n() {
            return false;
        }
        let total: usize = self.components.iter().map(|c| c.len()).sum();
        if total != g.n() {
            return false;
        }
        for (i, comp) in self.components.iter().enumerate() {
            if comp.iter().any(|&v| self.component_of[v] != i) {
                return false;
            }
        }
        g.edges().all(|(u, v)| self.component_of[u] <= self.component_of[v])
    }
}
