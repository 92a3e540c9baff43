//! Seeded and structured tournament families.

use alloc::vec::Vec;

use crate::rng::SplitMix64;
use crate::Tournament;

/// Uniformly random tournament: pairs `i < j` are visited in row-major
/// order and each is oriented `i → j` when the top bit of the next
/// [`SplitMix64`] output is set.
pub fn random_tournament(n: usize, seed: u64) -> Tournament {
    let mut rng = SplitMix64::new(seed);
    Tournament::from_fn(n, |_, _| rng.next_bool())
}

/// The transitive tournament with `i → j` for all `i < j`.
pub fn transitive(n: usize) -> Tournament {
    Tournament::from_fn(n, |_, _| true)
}

/// Circulant tournament: `i → i + s (mod n)` for each `s` in `steps`.
///
/// Panics unless `steps` holds exactly one of `s`, `n - s` for every
/// nonzero residue `s`.
pub fn rotational(n: usize, steps: &[usize]) -> Tournament {
    for s in 1..n {
        let fwd = steps.contains(&s);
        let back = steps.contains(&(n - s));
        assert!(fwd != back, "steps must pick one of each ±s pair");
    }
    Tournament::from_fn(n, |i, j| steps.contains(&((j + n - i) % n)))
}

/// The carousel tournament on odd `n`: `i → i+1, …, i+(n-1)/2 (mod n)`.
pub fn carousel(n: usize) -> Tournament {
    assert!(n % 2 == 1, "carousel tournaments have odd order");
    let steps: Vec<usize> = (1..=n / 2).collect();
    rotational(n, &steps)
}

/// Replaces each vertex `v` of `base` by a transitive block of `sizes[v]`
/// vertices; edges between blocks follow `base`.
pub fn transitive_blowup(base: &Tournament, sizes: &[usize]) -> Tournament {
    assert_eq!(base.n(), sizes.len());
    let block: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| core::iter::repeat_n(b, s))
        .collect();
    Tournament::from_fn(block.len(), |i, j| {
        block[i] == block[j] || base.has_edge(block[i], block[j])
    })
}

/// Random tournaments on consecutive blocks of the given sizes, with every
/// earlier block dominating every later one.
pub fn layered_random(sizes: &[usize], seed: u64) -> Tournament {
    let mut rng = SplitMix64::new(seed);
    let block: Vec<usize> = sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &s)| core::iter::repeat_n(b, s))
        .collect();
    Tournament::from_fn(block.len(), |i, j| block[i] < block[j] || rng.next_bool())
}

/// `g` with `flips` uniformly chosen edges reversed (repeats allowed).
pub fn with_random_flips(g: &Tournament, flips: usize, seed: u64) -> Tournament {
    let mut rng = SplitMix64::new(seed);
    let n = g.n() as u64;
    let mut t = g.clone();
    if n < 2 {
        return t;
    }
    for _ in 0..flips {
        let u = rng.below(n) as usize;
        let mut v = rng.below(n - 1) as usize;
        if v >= u {
            v += 1;
        }
        t = t.with_flipped(u, v);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_tournament(5, 7), random_tournament(5, 7));
        assert_eq!(random_tournament(1, 99).n(), 1);
        let g = random_tournament(200, 1);
        assert_eq!(g.out_degrees().iter().sum::<usize>(), 19900);
        assert_ne!(random_tournament(30, 1), random_tournament(30, 2));
    }

    #[test]
    fn random_fixture_is_frozen() {
        // First pair bits of seed 7 straight from the SplitMix64 stream.
        let mut rng = SplitMix64::new(7);
        let g = random_tournament(5, 7);
        for i in 0..5 {
            for j in i + 1..5 {
                assert_eq!(g.has_edge(i, j), rng.next_u64() >> 63 == 1);
            }
        }
    }

    #[test]
    fn carousel_is_regular() {
        let g = carousel(7);
        assert!(g.out_degrees().iter().all(|&d| d == 3));
        for v in 0..7 {
            let outs: Vec<usize> = g.out_neighbors(v).collect();
            assert!(g.induced(&outs).unwrap().is_transitive());
        }
    }

    #[test]
    fn blowup_sizes() {
        let c3 = rotational(3, &[1]);
        let g = transitive_blowup(&c3, &[2, 0, 3]);
        assert_eq!(g.n(), 5);
        assert!(g.is_transitive());
        let g = transitive_blowup(&c3, &[2, 1, 3]);
        assert_eq!(g.scc().len(), 1);
    }
}
