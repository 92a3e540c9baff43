//! Exact census of three-, four- and five-vertex sub-tournaments.
//!
//! Four-vertex counts come from three edge sums over the pair statistics
//! and a unit lower-triangular system. Five-vertex counts combine counting
//! by source/sink extension (six patterns), four-cycles in the split
//! bipartite graphs (`H8`), and a 5 × 5 solve of the remaining patterns
//! from the twenty-equation system; all twenty equations are re-checked
//! before a result is returned.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::catalog;
use crate::linalg::{IntMatrix, Ratio};
use crate::pairstats::{sum_over_edges, PairStat};
use crate::system::{
    five_column, five_matrix, five_solve_block, five_terms, four_matrix, four_terms,
    CensusSystem, FIVE_COLUMNS, FIVE_DIRECT, FIVE_SOLVED, FIVE_SOLVE_ROWS,
};
use crate::{binomial, bits, Error, PatternName, Tournament};

/// Exact counts of every pattern on `k` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountVector {
    k: usize,
    counts: Vec<u128>,
}

impl CountVector {
    pub fn zero(k: usize) -> Self {
        CountVector {
            k,
            counts: vec![0; PatternName::of_order(k).len()],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, name: PatternName) -> u128 {
        assert_eq!(name.order(), self.k, "pattern of the wrong order");
        self.counts[name.index()]
    }

    pub fn set(&mut self, name: PatternName, value: u128) {
        assert_eq!(name.order(), self.k, "pattern of the wrong order");
        self.counts[name.index()] = value;
    }

    pub fn add(&mut self, name: PatternName, value: u128) {
        self.counts[name.index()] += value;
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// `(name, count)` pairs in canonical pattern order.
    pub fn iter(&self) -> impl Iterator<Item = (PatternName, u128)> + '_ {
        PatternName::of_order(self.k)
            .iter()
            .copied()
            .zip(self.counts.iter().copied())
    }

    /// Counts with every pattern replaced by its transpose.
    pub fn transposed(&self) -> CountVector {
        let mut t = CountVector::zero(self.k);
        for (p, c) in self.iter() {
            t.set(p.transpose(), c);
        }
        t
    }
}

/// `#T₃ = Σ_v C(d⁺(v), 2)` and `#C₃ = C(n,3) − #T₃`.
pub fn count_3(g: &Tournament) -> CountVector {
    let t3: u128 = (0..g.n())
        .map(|v| binomial(g.out_degree(v) as u128, 2))
        .sum();
    let mut c = CountVector::zero(3);
    c.set(PatternName::T3, t3);
    c.set(PatternName::C3, binomial(g.n() as u128, 3) - t3);
    c
}

/// The three edge sums `Σ C(d⁺,2)`, `Σ d⁺d⁻`, `Σ d⁺p(u,v)`.
pub fn four_rhs(g: &Tournament) -> [u128; 3] {
    sum_over_edges(g, |s: PairStat| four_terms(s.dplus, s.dminus, s.p_uv))
}

fn check_size(g: &Tournament) -> Result<(), Error> {
    if g.n() > crate::MAX_VERTICES {
        return Err(Error::TooLarge {
            limit: crate::MAX_VERTICES,
            got: g.n(),
        });
    }
    Ok(())
}

fn to_i128(x: u128) -> Result<i128, Error> {
    i128::try_from(x).map_err(|_| Error::InternalInconsistency("count exceeds i128"))
}

fn nonneg(x: i128) -> Result<u128, Error> {
    u128::try_from(x).map_err(|_| Error::InternalInconsistency("negative count"))
}

/// Counts of `T4`, `X4`, `D`, `DT`. Total on every `n` (zero below four).
pub fn count_4(g: &Tournament) -> Result<CountVector, Error> {
    check_size(g)?;
    solve_four(g.n(), four_rhs(g))
}

/// Solves the triangular four-vertex system for given edge sums.
pub fn solve_four(n: usize, sums: [u128; 3]) -> Result<CountVector, Error> {
    let [a, b, c] = sums;
    let rhs = [
        to_i128(a)?,
        to_i128(b)?,
        to_i128(c)?,
        to_i128(binomial(n as u128, 4))?,
    ];
    let x = four_matrix()
        .forward_substitute(&rhs)
        .map_err(|_| Error::InternalInconsistency("four-vertex system has no integral solution"))?;
    let mut out = CountVector::zero(4);
    for (&p, &v) in crate::system::FOUR_COLUMNS.iter().zip(&x) {
        out.set(p, nonneg(v)?);
    }
    Ok(out)
}

/// The twenty edge sums of the five-vertex system, in equation order.
pub fn five_rhs(g: &Tournament) -> [u128; 20] {
    sum_over_edges(g, |s: PairStat| five_terms(s.dplus, s.dminus, s.p_uv, s.p_vu))
}

/// Whether a pattern is counted through the out- or in-neighborhoods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// Remove a source; count the remainder inside each `N⁺(v)`.
    Source(PatternName),
    /// Remove a sink; count the remainder inside each `N⁻(v)`.
    Sink(PatternName),
}

/// How a five-vertex pattern reduces to a four-vertex one, if it has a
/// source or a sink (a source is preferred when both exist).
pub fn extension_of(p: PatternName) -> Result<Extension, Error> {
    let rep = catalog().representative(p);
    let k = rep.n();
    if k != 5 {
        return Err(Error::UnsupportedOrder(k));
    }
    let degs = rep.out_degrees();
    let strip = |x: usize| {
        let rest: Vec<usize> = (0..k).filter(|&v| v != x).collect();
        catalog()
            .classify(&rep.induced_unchecked(&rest))
            .expect("four-vertex remainder")
    };
    if let Some(s) = degs.iter().position(|&d| d == k - 1) {
        Ok(Extension::Source(strip(s)))
    } else if let Some(t) = degs.iter().position(|&d| d == 0) {
        Ok(Extension::Sink(strip(t)))
    } else {
        Err(Error::NoSourceOrSink)
    }
}

/// Four-vertex census of every out- and in-neighborhood.
struct NeighborhoodCensus {
    outs: Vec<CountVector>,
    ins: Vec<CountVector>,
}

impl NeighborhoodCensus {
    fn compute(g: &Tournament) -> Result<Self, Error> {
        let per_vertex = |v: usize| -> Result<(CountVector, CountVector), Error> {
            let (go, _) = g.induced_by_row(g.out_row(v));
            let (gi, _) = g.induced_by_row(g.in_row(v));
            Ok((count_4(&go)?, count_4(&gi)?))
        };
        #[cfg(feature = "parallel")]
        let pairs: Vec<_> = {
            use rayon::prelude::*;
            (0..g.n()).into_par_iter().map(per_vertex).collect::<Result<_, _>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let pairs: Vec<_> = (0..g.n()).map(per_vertex).collect::<Result<_, _>>()?;
        let (outs, ins) = pairs.into_iter().unzip();
        Ok(NeighborhoodCensus { outs, ins })
    }

    fn count(&self, ext: Extension) -> u128 {
        match ext {
            Extension::Source(rest) => self.outs.iter().map(|c| c.get(rest)).sum(),
            Extension::Sink(rest) => self.ins.iter().map(|c| c.get(rest)).sum(),
        }
    }
}

/// Copies of a five-vertex pattern that has a source or a sink, summed over
/// the neighborhoods of every vertex.
pub fn count_by_extension(g: &Tournament, p: PatternName) -> Result<u128, Error> {
    let ext = extension_of(p)?;
    let per_vertex = |v: usize| -> Result<u128, Error> {
        let (row, rest) = match ext {
            Extension::Source(rest) => (g.out_row(v), rest),
            Extension::Sink(rest) => (g.in_row(v), rest),
        };
        let (sub, _) = g.induced_by_row(row);
        Ok(count_4(&sub)?.get(rest))
    };
    (0..g.n()).map(per_vertex).sum()
}

/// 4-cycles between `N⁺(v)` and `N⁻(v)` using edges from the former to the
/// latter.
fn split_c4(g: &Tournament, v: usize) -> u128 {
    let ins = g.in_row(v);
    let outs: Vec<usize> = g.out_neighbors(v).collect();
    let mut total = 0u128;
    for (i, &a) in outs.iter().enumerate() {
        for &b in &outs[i + 1..] {
            let c = bits::and3_count(g.out_row(a), g.out_row(b), ins) as u128;
            total += c * c.saturating_sub(1) / 2;
        }
    }
    total
}

/// Copies of `H8`: each one is a 4-cycle in exactly one split bipartite
/// graph, namely that of its unique vertex with two out-neighbours that
/// dominate its two in-neighbours.
pub fn count_h8(g: &Tournament) -> u128 {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..g.n()).into_par_iter().map(|v| split_c4(g, v)).sum()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..g.n()).map(|v| split_c4(g, v)).sum()
    }
}

/// Full census of the twelve five-vertex patterns.
pub fn count_5(g: &Tournament) -> Result<CountVector, Error> {
    check_size(g)?;
    let known = direct_five_counts(g)?;
    solve_five(&known, &five_rhs(g), g.n())
}

/// Counts of the seven patterns with a source, a sink or the `H8` split
/// structure, in [`FIVE_COLUMNS`] order; the other five entries are zero.
pub fn direct_five_counts(g: &Tournament) -> Result<[u128; 12], Error> {
    let hood = NeighborhoodCensus::compute(g)?;
    let mut known = [0u128; 12];
    for &p in FIVE_DIRECT.iter() {
        known[five_column(p)] = if p == PatternName::H8 {
            count_h8(g)
        } else {
            hood.count(extension_of(p)?)
        };
    }
    Ok(known)
}

/// Completes the direct counts from the rows of the solve block and checks
/// every equation of the system plus the `C(n,5)` total.
pub fn solve_five(known: &[u128; 12], sums: &[u128; 20], n: usize) -> Result<CountVector, Error> {
    let mut full = [0i128; 12];
    for (f, &k) in full.iter_mut().zip(known) {
        *f = to_i128(k)?;
    }
    for &p in FIVE_SOLVED.iter() {
        full[five_column(p)] = 0;
    }
    let mut rhs = [0i128; 20];
    for (r, &v) in rhs.iter_mut().zip(sums) {
        *r = to_i128(v)?;
    }
    let a: IntMatrix = five_matrix();
    let reduced: Vec<i128> = FIVE_SOLVE_ROWS
        .iter()
        .map(|&r| {
            let row = a.row(r - 1);
            rhs[r - 1] - row.iter().zip(&full).map(|(x, y)| x * y).sum::<i128>()
        })
        .collect();
    let solved = five_solve_block()
        .solve_integer(&reduced)
        .map_err(|_| Error::InternalInconsistency("five-vertex block has no integral solution"))?;
    for (&p, &v) in FIVE_SOLVED.iter().zip(&solved) {
        full[five_column(p)] = v;
    }
    let system = CensusSystem::five(rhs);
    if !system.violations(&full).is_empty() {
        return Err(Error::InternalInconsistency("census equation violated"));
    }
    if full.iter().sum::<i128>() != to_i128(binomial(n as u128, 5))? {
        return Err(Error::InternalInconsistency("counts do not sum to C(n,5)"));
    }
    let mut out = CountVector::zero(5);
    for (&p, &v) in FIVE_COLUMNS.iter().zip(&full) {
        out.set(p, nonneg(v)?);
    }
    Ok(out)
}

/// Census for `k` in 3..=5.
pub fn count_k(g: &Tournament, k: usize) -> Result<CountVector, Error> {
    match k {
        3 => Ok(count_3(g)),
        4 => count_4(g),
        5 => count_5(g),
        _ => Err(Error::UnsupportedOrder(k)),
    }
}

/// `#T₄` next to its expectation `(3/8)·C(n,4)` in a uniformly random
/// tournament (24 of the 64 labelled orientations are transitive).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuasiRandomness {
    pub t4: u128,
    pub expected: Ratio,
}

impl QuasiRandomness {
    pub fn ratio(&self) -> f64 {
        self.t4 as f64 / self.expected.to_f64()
    }
}

pub fn quasirandomness_report(g: &Tournament) -> Result<QuasiRandomness, Error> {
    let t4 = count_4(g)?.get(PatternName::T4);
    let expected = Ratio::new(3 * to_i128(binomial(g.n() as u128, 4))?, 8);
    Ok(QuasiRandomness { t4, expected })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::oracle_count;
    use crate::generators::{random_tournament, rotational, transitive, transitive_blowup};
    use PatternName::*;

    #[test]
    fn three_vertex_counts() {
        let c = count_3(&rotational(3, &[1]));
        assert_eq!((c.get(T3), c.get(C3)), (0, 1));
        let c = count_3(&transitive(5));
        assert_eq!((c.get(T3), c.get(C3)), (10, 0));
        let r5 = rotational(5, &[1, 2]);
        assert_eq!(count_3(&r5), oracle_count(&r5, 3).unwrap());
        assert_eq!((count_3(&r5).get(T3), count_3(&r5).get(C3)), (5, 5));
    }

    #[test]
    fn four_vertex_counts() {
        let c = count_4(&transitive(6)).unwrap();
        assert_eq!(c.iter().collect::<Vec<_>>(), vec![(T4, 15), (X4, 0), (D, 0), (DT, 0)]);
        let r5 = rotational(5, &[1, 2]);
        assert_eq!(count_4(&r5).unwrap(), oracle_count(&r5, 4).unwrap());
        let g = random_tournament(12, 11);
        assert_eq!(count_4(&g).unwrap(), oracle_count(&g, 4).unwrap());
        assert_eq!(count_4(&transitive(3)).unwrap().total(), 0);
    }

    #[test]
    fn matrix_columns_are_sums_on_representatives() {
        for (j, &p) in crate::system::FOUR_COLUMNS.iter().enumerate() {
            let rhs = four_rhs(catalog().representative(p));
            for (i, &v) in rhs.iter().enumerate() {
                assert_eq!(v as i128, crate::system::FOUR_MATRIX[i][j], "{p} row {i}");
            }
        }
        for (j, &p) in crate::system::FIVE_COLUMNS.iter().enumerate() {
            let rhs = five_rhs(catalog().representative(p));
            for (i, &v) in rhs.iter().enumerate() {
                assert_eq!(v as i128, crate::system::FIVE_MATRIX[i][j], "{p} row {}", i + 1);
            }
        }
    }

    #[test]
    fn five_rhs_examples() {
        let r5 = rotational(5, &[1, 2]);
        let rhs = five_rhs(&r5);
        for row in [0, 1, 2, 3] {
            assert_eq!(rhs[row], 0, "row {}", row + 1);
        }
        assert_eq!(five_rhs(&transitive(5))[0], 1);
        let g = random_tournament(11, 5);
        assert_eq!(five_rhs(&g.transpose())[0], five_rhs(&g)[1]);
    }

    #[test]
    fn extension_plans() {
        assert_eq!(extension_of(T5), Ok(Extension::Source(T4)));
        assert_eq!(extension_of(H1), Ok(Extension::Source(D)));
        assert_eq!(extension_of(R5), Err(Error::NoSourceOrSink));
        for p in [H4, H5, H6, H7, H8] {
            assert_eq!(extension_of(p), Err(Error::NoSourceOrSink));
        }
        for p in [H1T, H2, H2T, H3] {
            assert!(extension_of(p).is_ok());
        }
    }

    #[test]
    fn extension_and_h8_match_oracle() {
        assert_eq!(count_by_extension(&transitive(7), T5).unwrap(), 21);
        let g = random_tournament(10, 4);
        let oracle = oracle_count(&g, 5).unwrap();
        assert_eq!(count_by_extension(&g, H3).unwrap(), oracle.get(H3));
        assert_eq!(count_h8(&g), oracle.get(H8));
        assert_eq!(count_h8(&transitive(5)), 0);
        assert_eq!(count_h8(catalog().representative(H8)), 1);
    }

    #[test]
    fn five_vertex_counts() {
        let c = count_5(&transitive(8)).unwrap();
        assert_eq!(c.get(T5), 56);
        assert_eq!(c.total(), 56);
        let c = count_5(&rotational(5, &[1, 2])).unwrap();
        assert_eq!((c.get(R5), c.total()), (1, 1));
        let g = random_tournament(12, 13);
        assert_eq!(count_5(&g).unwrap(), oracle_count(&g, 5).unwrap());
    }

    #[test]
    fn quasirandomness() {
        let q = quasirandomness_report(&transitive(5)).unwrap();
        assert_eq!(q.t4, 5);
        assert_eq!(q.expected, Ratio::new(15, 8));
        let q = quasirandomness_report(&random_tournament(200, 1)).unwrap();
        assert!((0.9..=1.1).contains(&q.ratio()), "{}", q.ratio());
        // The quadratic-residue tournament on 7 vertices has no T4 at all.
        let q = quasirandomness_report(&rotational(7, &[1, 2, 4])).unwrap();
        assert_eq!(q.t4, 0);
        // Blow-ups of C3 with transitive parts sit well above the random
        // expectation once the parts are not tiny.
        let c3 = rotational(3, &[1]);
        let small = quasirandomness_report(&transitive_blowup(&c3, &[2, 2, 2])).unwrap();
        assert_eq!(small.t4, oracle_count(&transitive_blowup(&c3, &[2, 2, 2]), 4).unwrap().get(T4));
        assert!(small.ratio() < 0.6);
        let big = quasirandomness_report(&transitive_blowup(&c3, &[10, 10, 10])).unwrap();
        assert!(big.ratio() > 1.3, "{}", big.ratio());
    }
}
