//! Counting and detection for arbitrary small patterns.
//!
//! * [`generic_count`] counts any pattern on at most six vertices with a
//!   product of two 0/1 matrices over labeled copies of three label blocks.
//! * [`count_colorful`] counts copies with one vertex in each part of a
//!   partition by inclusion–exclusion over part unions.
//! * [`color_coding_detect`] is the randomized detector that reduces
//!   `T`-detection to finding a `K_k` in an auxiliary undirected graph.
//! * [`clique_detect_via_count`] goes the other way: it decides whether an
//!   undirected graph has a `K_m` by counting colorful copies of a pattern
//!   with a signature of size `k − m`.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{automorphism_order, catalog, is_signature, signature_size};
use crate::count::count_k;
use crate::detect::Witness;
use crate::rng::SplitMix64;
use crate::undirected::UndirectedGraph;
use crate::{bits, Error, PatternName, Tournament};

/// A partition of `0..n` into `k` labelled parts; parts may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    part_of: Vec<usize>,
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Checks that `parts` are disjoint and cover `0..n`.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self, Error> {
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                if v >= n || part_of[v] != usize::MAX {
                    return Err(Error::PartitionMismatch);
                }
                part_of[v] = i;
            }
        }
        if part_of.contains(&usize::MAX) {
            return Err(Error::PartitionMismatch);
        }
        let mut parts = parts;
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        Ok(VertexPartition { n, part_of, parts })
    }

    /// Vertex `v` goes to part `colors[v]`.
    pub fn from_colors(k: usize, colors: &[usize]) -> Result<Self, Error> {
        let mut parts = vec![Vec::new(); k];
        for (v, &c) in colors.iter().enumerate() {
            if c >= k {
                return Err(Error::PartitionMismatch);
            }
            parts[c].push(v);
        }
        Ok(VertexPartition {
            n: colors.len(),
            part_of: colors.to_vec(),
            parts,
        })
    }

    /// Each vertex picks one of `k` parts uniformly and independently.
    pub fn random(n: usize, k: usize, rng: &mut SplitMix64) -> Self {
        let colors: Vec<usize> = (0..n).map(|_| rng.below(k as u64) as usize).collect();
        VertexPartition::from_colors(k, &colors).expect("colors are in range")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }
}

/// Cap on the bit size of the two compatibility matrices.
pub const GENERIC_MATRIX_BITS: usize = 1 << 31;

/// Label blocks `A1, A2, A3` of sizes `⌊k/3⌋, ⌈(k−1)/3⌉, ⌈k/3⌉`.
pub fn label_blocks(k: usize) -> [Vec<usize>; 3] {
    let a1 = k / 3;
    let a2 = k.saturating_sub(1).div_ceil(3);
    let a3 = k.div_ceil(3);
    debug_assert_eq!(a1 + a2 + a3, k);
    [(0..a1).collect(), (a1..a1 + a2).collect(), (a1 + a2..k).collect()]
}

/// Every injective map from `labels` into `V(g)` that preserves the edges of
/// `t` among `labels`; entry `i` of a copy is the image of `labels[i]`.
fn labeled_copies(g: &Tournament, t: &Tournament, labels: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(labels.len());
    extend_copies(g, t, labels, &mut cur, &mut out);
    out
}

fn extend_copies(
    g: &Tournament,
    t: &Tournament,
    labels: &[usize],
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let i = cur.len();
    if i == labels.len() {
        out.push(cur.clone());
        return;
    }
    for v in 0..g.n() {
        let ok = cur.iter().enumerate().all(|(j, &u)| {
            u != v && g.has_edge(u, v) == t.has_edge(labels[j], labels[i])
        });
        if ok {
            cur.push(v);
            extend_copies(g, t, labels, cur, out);
            cur.pop();
        }
    }
}

/// True iff the two labeled copies use disjoint vertices and every edge
/// between the label sets agrees with `t`.
fn compatible(
    g: &Tournament,
    t: &Tournament,
    la: &[usize],
    a: &[usize],
    lb: &[usize],
    b: &[usize],
) -> bool {
    a.iter().enumerate().all(|(i, &u)| {
        b.iter()
            .enumerate()
            .all(|(j, &v)| u != v && g.has_edge(u, v) == t.has_edge(la[i], lb[j]))
    })
}

/// Number of copies of `t` (at most six vertices) in `g`.
///
/// With `S_i` the labeled copies of `t` restricted to block `A_i`, `Q1` has
/// rows `S_1` and columns `S_2` with a one where the two copies combine to a
/// copy on `A_1 ∪ A_2`; `Q2` is the same for `S_2 × S_3`. Entry `(H, J)` of
/// `Q1·Q2` counts the labeled copies of `t` extending `H` and `J` through
/// the middle block, so summing it over pairs compatible on `A_1 ∪ A_3`
/// counts labeled copies; dividing by `|Aut(t)|` gives copies.
pub fn generic_count(g: &Tournament, t: &Tournament) -> Result<u128, Error> {
    let k = t.n();
    if !(1..=6).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    if g.n() < k {
        return Ok(0);
    }
    if k < 3 {
        // A single vertex or edge: one labeled copy per vertex or edge.
        return Ok(crate::binomial(g.n() as u128, k as u32));
    }
    let blocks = label_blocks(k);
    let s: Vec<Vec<Vec<usize>>> = blocks.iter().map(|b| labeled_copies(g, t, b)).collect();
    let (s1, s2, s3) = (&s[0], &s[1], &s[2]);
    let bits_needed = (s1.len() + s3.len()).saturating_mul(s2.len());
    if bits_needed > GENERIC_MATRIX_BITS {
        return Err(Error::TooLarge {
            limit: GENERIC_MATRIX_BITS,
            got: bits_needed,
        });
    }
    let w = bits::words_for(s2.len());
    let (l1, l2, l3) = (&blocks[0], &blocks[1], &blocks[2]);
    let mut q1 = vec![0u64; s1.len() * w];
    for (h, a) in s1.iter().enumerate() {
        let row = &mut q1[h * w..(h + 1) * w];
        for (m, b) in s2.iter().enumerate() {
            if compatible(g, t, l1, a, l2, b) {
                bits::set(row, m);
            }
        }
    }
    // Q2 stored transposed: one row per element of S_3.
    let mut q2t = vec![0u64; s3.len() * w];
    for (j, c) in s3.iter().enumerate() {
        let row = &mut q2t[j * w..(j + 1) * w];
        for (m, b) in s2.iter().enumerate() {
            if compatible(g, t, l2, b, l3, c) {
                bits::set(row, m);
            }
        }
    }
    let mut labeled: u128 = 0;
    for (h, a) in s1.iter().enumerate() {
        let r1 = &q1[h * w..(h + 1) * w];
        for (j, c) in s3.iter().enumerate() {
            if compatible(g, t, l1, a, l3, c) {
                labeled += bits::and_count(r1, &q2t[j * w..(j + 1) * w]) as u128;
            }
        }
    }
    let aut = automorphism_order(t)? as u128;
    if !labeled.is_multiple_of(aut) {
        return Err(Error::DivisionCheck);
    }
    Ok(labeled / aut)
}

/// Copies of `t` in `g` (any order supported by [`count_k`]).
fn count_pattern(g: &Tournament, name: PatternName) -> Result<u128, Error> {
    if g.n() < name.order() {
        return Ok(0);
    }
    Ok(count_k(g, name.order())?.get(name))
}

/// Copies of `t` in `g` with exactly one vertex in each part of `p`, by
/// `M = Σ_{S ⊆ [k]} (−1)^{k−|S|} f(G_S)` over the unions `G_S` of parts.
pub fn count_colorful(g: &Tournament, t: &Tournament, p: &VertexPartition) -> Result<u128, Error> {
    let k = t.n();
    if p.k() != k || p.n() != g.n() {
        return Err(Error::PartitionMismatch);
    }
    let name = catalog().classify(t).ok_or(Error::UnsupportedOrder(k))?;
    if p.parts().iter().any(|part| part.is_empty()) {
        return Ok(0);
    }
    let mut total: i128 = 0;
    for mask in 1u32..(1 << k) {
        let mut members: Vec<usize> = (0..k)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| p.part(i).iter().copied())
            .collect();
        members.sort_unstable();
        let f = count_pattern(&g.induced_unchecked(&members), name)? as i128;
        if (k - mask.count_ones() as usize).is_multiple_of(2) {
            total += f;
        } else {
            total -= f;
        }
    }
    u128::try_from(total).map_err(|_| Error::InternalInconsistency("negative colorful count"))
}

/// `⌈b^b · ln(1/δ)⌉`, the number of trials for failure probability `δ`
/// when one trial succeeds with probability at least `b^{−b}`.
pub fn trials_for(base: usize, delta: f64) -> u64 {
    assert!(delta > 0.0 && delta < 1.0, "delta must lie in (0, 1)");
    let bb = libm::pow(base as f64, base as f64);
    libm::ceil(bb * libm::log(1.0 / delta)) as u64
}

/// Outcome of a color-coding run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorCodingRun {
    /// Vertices of the copy; entry `i` plays pattern vertex `i`.
    pub witness: Option<Witness>,
    pub trials_run: u64,
}

/// Color-coding detection with `⌈k^k ln(1/δ)⌉` trials. `Some` is always a
/// verified copy; `None` is wrong with probability at most `delta`.
pub fn color_coding_detect(g: &Tournament, t: &Tournament, delta: f64, seed: u64) -> Option<Witness> {
    color_coding_with_trials(g, t, trials_for(t.n(), delta), seed).witness
}

/// Runs up to `trials` trials; trial `i` draws its partition from
/// sub-stream `i` of `seed` and the first successful trial wins.
pub fn color_coding_with_trials(g: &Tournament, t: &Tournament, trials: u64, seed: u64) -> ColorCodingRun {
    let k = t.n();
    let pattern = catalog().classify(t).expect("pattern order must be between 3 and 5");
    for trial in 0..trials {
        let mut rng = SplitMix64::substream(seed, trial);
        let p = VertexPartition::random(g.n(), k, &mut rng);
        if let Some(vertices) = colorful_clique(g, t, &p) {
            let witness = Witness { vertices, pattern };
            debug_assert!(witness.verify(g));
            return ColorCodingRun {
                witness: Some(witness),
                trials_run: trial + 1,
            };
        }
    }
    ColorCodingRun {
        witness: None,
        trials_run: trials,
    }
}

/// Searches the auxiliary graph for a `K_k` with one vertex per part: part
/// `0` is tried vertex by vertex and each later part is filtered to the
/// vertices whose edges to the chosen ones agree with `t`.
fn colorful_clique(g: &Tournament, t: &Tournament, p: &VertexPartition) -> Option<Vec<usize>> {
    let k = t.n();
    let cands: Vec<Vec<u64>> = (0..k)
        .map(|i| bits::from_members(g.n(), p.part(i).iter().copied()))
        .collect();
    let mut chosen = Vec::with_capacity(k);
    if clique_step(g, t, cands, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn clique_step(g: &Tournament, t: &Tournament, cands: Vec<Vec<u64>>, chosen: &mut Vec<usize>) -> bool {
    let i = chosen.len();
    if i == t.n() {
        return true;
    }
    for v in bits::ones(&cands[i]) {
        let mut next = cands.clone();
        let mut dead = false;
        for j in i + 1..t.n() {
            let row = if t.has_edge(i, j) { g.out_row(v) } else { g.in_row(v) };
            for (c, r) in next[j].iter_mut().zip(row) {
                *c &= r;
            }
            dead |= next[j].iter().all(|&x| x == 0);
        }
        if dead {
            continue;
        }
        chosen.push(v);
        if clique_step(g, t, next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// The first pattern in name order whose order minus its signature size is
/// `m`, with its smallest signature. `None` for `m > 3` (no such pattern
/// has at most five vertices).
pub fn pattern_for_clique(m: usize) -> Option<(PatternName, Vec<usize>)> {
    let cat = catalog();
    PatternName::ALL.iter().find_map(|&name| {
        let e = cat.entry(name);
        (name.order() - e.signature_size() == m).then(|| (name, e.signature.clone()))
    })
}

/// The tournament on `r + n` vertices built from `g` and a random
/// partition, together with its `k`-part partition.
///
/// `t` must already list its signature first (vertices `0..r`). Vertex `i`
/// of the result is the singleton part `i` for `i < r` and vertex `i − r` of
/// `g` otherwise. Between different parts `i, j` with `i → j` in `t`: when
/// either part is a signature part the edge points from part `i` to part
/// `j`; otherwise it points from `i` to `j` iff the two vertices are
/// adjacent in `g`. Inside a part edges point to the larger label.
pub fn clique_gadget(g: &UndirectedGraph, t: &Tournament, r: usize, colors: &[usize]) -> (Tournament, VertexPartition) {
    let k = t.n();
    let n = g.n();
    let part = |v: usize| if v < r { v } else { r + colors[v - r] };
    let star = Tournament::from_fn(r + n, |u, w| {
        let (i, j) = (part(u), part(w));
        if i == j {
            return true;
        }
        let forward_in_t = t.has_edge(i, j);
        if i < r || j < r {
            forward_in_t
        } else {
            g.has_edge(u - r, w - r) == forward_in_t
        }
    });
    let all_colors: Vec<usize> = (0..r + n).map(part).collect();
    let p = VertexPartition::from_colors(k, &all_colors).expect("colors are in range");
    (star, p)
}

/// Decides whether `g` has a clique on `m = |V(t)| − |r|` vertices by
/// counting colorful copies of `t` in [`clique_gadget`] over
/// `⌈m^m ln 1000⌉` random partitions. A `true` answer is always correct.
pub fn clique_detect_via_count(
    g: &UndirectedGraph,
    m: usize,
    t: &Tournament,
    r: &[usize],
    seed: u64,
) -> Result<bool, Error> {
    if !is_signature(t, r)? {
        return Err(Error::NotASignature);
    }
    if t.n() != m + r.len() {
        return Err(Error::PartitionMismatch);
    }
    if m == 0 {
        return Ok(true);
    }
    let order: Vec<usize> = r
        .iter()
        .copied()
        .chain((0..t.n()).filter(|v| !r.contains(v)))
        .collect();
    let t = t.induced_ordered(&order)?;
    for trial in 0..trials_for(m, 1e-3) {
        let mut rng = SplitMix64::substream(seed, trial);
        let colors: Vec<usize> = (0..g.n()).map(|_| rng.below(m as u64) as usize).collect();
        let (star, p) = clique_gadget(g, &t, r.len(), &colors);
        if count_colorful(&star, &t, &p)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// [`clique_detect_via_count`] with the pattern from [`pattern_for_clique`].
pub fn clique_detect(g: &UndirectedGraph, m: usize, seed: u64) -> Result<bool, Error> {
    let (name, r) = pattern_for_clique(m).ok_or(Error::UnsupportedOrder(m))?;
    let t = catalog().representative(name).clone();
    debug_assert_eq!(signature_size(&t).map(|s| s.0), Ok(r.len()));
    clique_detect_via_count(g, m, &t, &r, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{for_each_k_subset, oracle_count};
    use crate::count::{count_4, count_5, count_h8};
    use crate::generators::*;
    use PatternName::*;

    fn brute_colorful(g: &Tournament, name: PatternName, p: &VertexPartition) -> u128 {
        let k = name.order();
        let mut c = 0;
        for_each_k_subset(g.n(), k, |s| {
            let mut seen = 0u32;
            for &v in s {
                seen |= 1 << p.part_of(v);
            }
            if seen.count_ones() as usize == k && catalog().classify(&g.induced_unchecked(s)) == Some(name) {
                c += 1;
            }
        });
        c
    }

    #[test]
    fn blocks() {
        assert_eq!(label_blocks(3), [vec![0], vec![1], vec![2]]);
        assert_eq!(label_blocks(4), [vec![0], vec![1], vec![2, 3]]);
        assert_eq!(label_blocks(5), [vec![0], vec![1, 2], vec![3, 4]]);
        assert_eq!(label_blocks(6), [vec![0, 1], vec![2, 3], vec![4, 5]]);
    }

    #[test]
    fn generic_examples() {
        let c3 = rotational(3, &[1]);
        assert_eq!(generic_count(&c3, &c3), Ok(1));
        let g = random_tournament(10, 6);
        let x4 = catalog().representative(X4).clone();
        assert_eq!(generic_count(&g, &x4).unwrap(), count_4(&g).unwrap().get(X4));
        let g = random_tournament(9, 8);
        let h8 = catalog().representative(H8).clone();
        assert_eq!(generic_count(&g, &h8).unwrap(), count_h8(&g));
    }

    #[test]
    fn generic_matches_census() {
        for seed in 0..6u64 {
            let g = random_tournament(8 + seed as usize, 100 + seed);
            let c4 = count_4(&g).unwrap();
            let c5 = count_5(&g).unwrap();
            for &name in PatternName::of_order(4).iter().chain(PatternName::of_order(5)) {
                let t = catalog().representative(name).clone();
                let expect = if name.order() == 4 { c4.get(name) } else { c5.get(name) };
                assert_eq!(generic_count(&g, &t).unwrap(), expect, "{name} seed {seed}");
            }
        }
    }

    #[test]
    fn generic_six_vertices() {
        let g = random_tournament(9, 3);
        let t = random_tournament(6, 11);
        let code = crate::catalog::canonical_form(&t).unwrap();
        let mut brute = 0;
        for_each_k_subset(9, 6, |s| {
            if crate::catalog::canonical_form(&g.induced_unchecked(s)).unwrap() == code {
                brute += 1;
            }
        });
        assert_eq!(generic_count(&g, &t).unwrap(), brute);
        assert_eq!(generic_count(&transitive(8), &transitive(6)).unwrap(), 28);
    }

    #[test]
    fn colorful_examples() {
        let c3 = rotational(3, &[1]);
        let single = VertexPartition::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(count_colorful(&c3, &c3, &single), Ok(1));
        let g = random_tournament(10, 14);
        let d = catalog().representative(D).clone();
        let empty = VertexPartition::from_colors(4, &[0, 1, 2, 0, 1, 2, 0, 1, 2, 0]).unwrap();
        assert_eq!(count_colorful(&g, &d, &empty), Ok(0));
        let mut rng = SplitMix64::new(14);
        for _ in 0..25 {
            let p = VertexPartition::random(10, 4, &mut rng);
            assert_eq!(count_colorful(&g, &d, &p).unwrap(), brute_colorful(&g, D, &p));
        }
        let g = random_tournament(11, 2);
        for &name in PatternName::of_order(5) {
            let p = VertexPartition::random(11, 5, &mut rng);
            let t = catalog().representative(name).clone();
            assert_eq!(count_colorful(&g, &t, &p).unwrap(), brute_colorful(&g, name, &p));
        }
        assert_eq!(
            count_colorful(&g, &d, &VertexPartition::random(11, 3, &mut rng)),
            Err(Error::PartitionMismatch)
        );
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0], vec![2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 2], vec![], vec![1]]).is_ok());
    }

    #[test]
    fn trials() {
        assert_eq!(trials_for(3, 0.01), 125);
        assert_eq!(trials_for(3, 1e-3), 187);
    }

    #[test]
    fn color_coding_examples() {
        let c3 = rotational(3, &[1]);
        let run = color_coding_with_trials(&c3, &c3, trials_for(3, 0.01), 1);
        assert!(run.witness.unwrap().verify(&c3));
        // C3 is absent from transitive tournaments.
        assert!(color_coding_detect(&transitive(12), &c3, 0.01, 3).is_none());
        let g = random_tournament(30, 21);
        let x4 = catalog().representative(X4).clone();
        let truth = crate::detect::detect_x4(&g).is_some();
        for rep in 0..5 {
            assert_eq!(color_coding_detect(&g, &x4, 1e-3, rep).is_some(), truth);
        }
        // D never appears in a carousel tournament.
        let d = catalog().representative(D).clone();
        let car = carousel(9);
        assert_eq!(oracle_count(&car, 4).unwrap().get(D), 0);
        assert!(color_coding_with_trials(&car, &d, 2000, 9).witness.is_none());
    }

    #[test]
    fn witness_follows_pattern_labels() {
        let g = random_tournament(14, 4);
        for &name in &[D, X4, H4, R5] {
            let t = catalog().representative(name).clone();
            if let Some(w) = color_coding_detect(&g, &t, 1e-3, 5) {
                let k = t.n();
                for i in 0..k {
                    for j in 0..k {
                        if i != j {
                            assert_eq!(g.has_edge(w.vertices[i], w.vertices[j]), t.has_edge(i, j));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn clique_pattern_choice() {
        let (name, r) = pattern_for_clique(3).unwrap();
        assert_eq!(name, T5);
        assert_eq!(r.len(), 2);
        assert!(pattern_for_clique(4).is_none());
        assert_eq!(pattern_for_clique(2).unwrap().0, T3);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(clique_detect(&UndirectedGraph::complete(3), 3, 1), Ok(true));
        assert_eq!(clique_detect(&UndirectedGraph::new(8), 3, 1), Ok(false));
        for rep in 0..3 {
            let g = UndirectedGraph::random_gnp(12, 0.3, 17 + rep);
            assert_eq!(clique_detect(&g, 3, rep).unwrap(), g.has_triangle());
        }
        let t5 = transitive(5);
        assert_eq!(
            clique_detect_via_count(&UndirectedGraph::complete(3), 3, &t5, &[0, 1], 0),
            Err(Error::NotASignature)
        );
    }
}
