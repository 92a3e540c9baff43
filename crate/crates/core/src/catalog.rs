//! Isomorphism classes of tournaments on three, four and five vertices.
//!
//! Classes are identified by a brute-force canonical code. The names of the
//! five-vertex classes are bound by [`calibrate_catalog`], which pins the
//! structurally described classes directly and the remaining six by the
//! requirement that every census equation holds; the result is frozen in
//! [`FROZEN_CODES`] and re-derived by the tests.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use once_cell::race::OnceBox;

use crate::count::CountVector;
use crate::generators::random_tournament;
use crate::system::{five_terms, FIVE_COLUMNS, FIVE_MATRIX};
use crate::{Error, Tournament};

/// Names of the tournaments on three, four and five vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternName {
    T3,
    C3,
    T4,
    X4,
    D,
    DT,
    T5,
    H1,
    H1T,
    H2,
    H2T,
    H3,
    H4,
    H5,
    H6,
    H7,
    H8,
    R5,
}

use PatternName::*;

const THREE: [PatternName; 2] = [T3, C3];
const FOUR: [PatternName; 4] = [T4, X4, D, DT];
const FIVE: [PatternName; 12] = [T5, H1, H1T, H2, H2T, H3, H4, H5, H6, H7, H8, R5];

impl PatternName {
    pub const ALL: [PatternName; 18] = [
        T3, C3, T4, X4, D, DT, T5, H1, H1T, H2, H2T, H3, H4, H5, H6, H7, H8, R5,
    ];

    /// The patterns on `k` vertices, in canonical order; empty outside 3..=5.
    pub fn of_order(k: usize) -> &'static [PatternName] {
        match k {
            3 => &THREE,
            4 => &FOUR,
            5 => &FIVE,
            _ => &[],
        }
    }

    pub fn order(self) -> usize {
        match self {
            T3 | C3 => 3,
            T4 | X4 | D | DT => 4,
            _ => 5,
        }
    }

    /// Position within [`PatternName::of_order`].
    pub fn index(self) -> usize {
        PatternName::of_order(self.order())
            .iter()
            .position(|&p| p == self)
            .expect("pattern listed under its order")
    }

    pub fn as_str(self) -> &'static str {
        match self {
            T3 => "T3",
            C3 => "C3",
            T4 => "T4",
            X4 => "X4",
            D => "D",
            DT => "DT",
            T5 => "T5",
            H1 => "H1",
            H1T => "H1T",
            H2 => "H2",
            H2T => "H2T",
            H3 => "H3",
            H4 => "H4",
            H5 => "H5",
            H6 => "H6",
            H7 => "H7",
            H8 => "H8",
            R5 => "R5",
        }
    }

    /// Name of the transposed class.
    pub fn transpose(self) -> PatternName {
        match self {
            D => DT,
            DT => D,
            H1 => H1T,
            H1T => H1,
            H2 => H2T,
            H2T => H2,
            other => other,
        }
    }
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownPattern;

impl fmt::Display for UnknownPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown pattern name")
    }
}

impl FromStr for PatternName {
    type Err = UnknownPattern;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PatternName::ALL
            .iter()
            .copied()
            .find(|p| p.as_str() == s)
            .ok_or(UnknownPattern)
    }
}

/// Largest order accepted by the permutation-based routines.
pub const MAX_BRUTE_ORDER: usize = 7;

/// Largest order accepted by the signature search.
pub const MAX_SIGNATURE_ORDER: usize = 5;

fn check_order(t: &Tournament, limit: usize) -> Result<(), Error> {
    if t.n() > limit {
        Err(Error::TooLarge {
            limit,
            got: t.n(),
        })
    } else {
        Ok(())
    }
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Row-major adjacency bits of `t` relabelled by `perm` (new vertex `i` is
/// old vertex `perm[i]`), first entry most significant.
fn relabelled_code(t: &Tournament, perm: &[usize]) -> u64 {
    let n = t.n();
    let mut code = 0u64;
    for i in 0..n {
        for j in 0..n {
            code = code << 1 | t.has_edge(perm[i], perm[j]) as u64;
        }
    }
    code
}

/// Minimum over all relabellings of the row-major adjacency bit string.
/// Equal codes on equal orders mean isomorphic tournaments.
pub fn canonical_form(t: &Tournament) -> Result<u64, Error> {
    check_order(t, MAX_BRUTE_ORDER)?;
    let mut best = u64::MAX;
    for_each_permutation(t.n(), |p| best = best.min(relabelled_code(t, p)));
    Ok(best)
}

/// Inverse of the code layout used by [`canonical_form`].
pub fn decode_canonical(n: usize, code: u64) -> Tournament {
    let bit = |i: usize, j: usize| code >> (n * n - 1 - (i * n + j)) & 1 == 1;
    Tournament::from_fn(n, bit)
}

/// Number of vertex permutations preserving every edge.
pub fn automorphism_order(t: &Tournament) -> Result<u64, Error> {
    check_order(t, MAX_BRUTE_ORDER)?;
    let identity: Vec<usize> = (0..t.n()).collect();
    let own = relabelled_code(t, &identity);
    let mut count = 0;
    for_each_permutation(t.n(), |p| {
        if relabelled_code(t, p) == own {
            count += 1;
        }
    });
    Ok(count)
}

/// True iff reorienting any nonempty set of edges with both endpoints
/// outside `r` always yields a tournament not isomorphic to `t`.
pub fn is_signature(t: &Tournament, r: &[usize]) -> Result<bool, Error> {
    check_order(t, MAX_SIGNATURE_ORDER)?;
    if let Some(&bad) = r.iter().find(|&&v| v >= t.n()) {
        return Err(Error::BadSubset { vertex: bad });
    }
    let n = t.n();
    let outside: Vec<usize> = (0..n).filter(|v| !r.contains(v)).collect();
    let pairs: Vec<(usize, usize)> = outside
        .iter()
        .enumerate()
        .flat_map(|(a, &u)| outside[a + 1..].iter().map(move |&v| (u, v)))
        .collect();
    let own = canonical_form(t)?;
    for mask in 1u32..(1 << pairs.len()) {
        let flipped = Tournament::from_fn(n, |i, j| {
            let flip = pairs
                .iter()
                .position(|&p| p == (i, j))
                .is_some_and(|b| mask >> b & 1 == 1);
            t.has_edge(i, j) != flip
        });
        if canonical_form(&flipped)? == own {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest signature, found by ascending-size subset search; returns its
/// size and the lexicographically first witness of that size.
pub fn signature_size(t: &Tournament) -> Result<(usize, Vec<usize>), Error> {
    check_order(t, MAX_SIGNATURE_ORDER)?;
    let n = t.n();
    for size in 0..=n {
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let r: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
            if is_signature(t, &r)? {
                return Ok((size, r));
            }
        }
    }
    unreachable!("the whole vertex set is a signature")
}

/// One named class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternEntry {
    pub name: PatternName,
    /// Canonical code (see [`canonical_form`]).
    pub code: u64,
    /// The labelling that attains the canonical code.
    pub representative: Tournament,
    pub aut_order: u64,
    /// Out-degrees in descending order.
    pub out_degrees: Vec<usize>,
    /// A smallest signature of the representative.
    pub signature: Vec<usize>,
}

impl PatternEntry {
    pub fn signature_size(&self) -> usize {
        self.signature.len()
    }
}

/// Named classes plus lookup tables from labelled pair codes to names.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<PatternEntry>,
    /// `by_pair_code[k]` maps [`Tournament::pair_code`] of a `k`-vertex
    /// tournament to its class; populated for `k` in 3..=5.
    by_pair_code: [Vec<PatternName>; 6],
}

/// Canonical codes bound to each name; regenerated by [`calibrate_catalog`].
pub const FROZEN_CODES: [(PatternName, u64); 18] = [
    (T3, 0x26),
    (C3, 0x62),
    (T4, 0x8ce),
    (X4, 0x18c6),
    (D, 0x18d4),
    (DT, 0x9ca),
    (T5, 0x8639e),
    (H1, 0x1867a8),
    (H1T, 0x8679a),
    (H2, 0x1863ac),
    (H2T, 0x8e396),
    (H3, 0x8e3b4),
    (H4, 0x18638e),
    (H5, 0x18678a),
    (H6, 0x19628e),
    (H7, 0x1962ac),
    (H8, 0x18e386),
    (R5, 0x38e186),
];

impl Catalog {
    /// Builds the catalog from a name → canonical code binding.
    pub fn from_codes(codes: &[(PatternName, u64)]) -> Result<Catalog, Error> {
        let mut entries = Vec::with_capacity(codes.len());
        for &name in PatternName::ALL.iter() {
            let &(_, code) = codes
                .iter()
                .find(|(p, _)| *p == name)
                .ok_or(Error::CalibrationAmbiguous("pattern missing from code table"))?;
            let representative = decode_canonical(name.order(), code);
            if canonical_form(&representative)? != code {
                return Err(Error::CalibrationAmbiguous("code is not canonical"));
            }
            let mut out_degrees = representative.out_degrees();
            out_degrees.sort_unstable_by(|a, b| b.cmp(a));
            let (_, signature) = signature_size(&representative)?;
            entries.push(PatternEntry {
                name,
                code,
                aut_order: automorphism_order(&representative)?,
                out_degrees,
                signature,
                representative,
            });
        }
        let mut by_pair_code: [Vec<PatternName>; 6] = Default::default();
        for k in 3..=5 {
            let pairs = k * (k - 1) / 2;
            let mut table = Vec::with_capacity(1 << pairs);
            for pc in 0..1u64 << pairs {
                let code = canonical_form(&Tournament::from_pair_code(k, pc))?;
                let name = entries
                    .iter()
                    .find(|e| e.name.order() == k && e.code == code)
                    .ok_or(Error::CalibrationAmbiguous("unnamed class"))?
                    .name;
                table.push(name);
            }
            by_pair_code[k] = table;
        }
        Ok(Catalog {
            entries,
            by_pair_code,
        })
    }

    /// The catalog bound by [`FROZEN_CODES`].
    pub fn frozen() -> Catalog {
        Catalog::from_codes(&FROZEN_CODES).expect("frozen code table is valid")
    }

    pub fn entries(&self) -> &[PatternEntry] {
        &self.entries
    }

    pub fn entry(&self, name: PatternName) -> &PatternEntry {
        &self.entries[name as usize]
    }

    pub fn representative(&self, name: PatternName) -> &Tournament {
        &self.entry(name).representative
    }

    /// Class of a labelled `k`-vertex tournament given by its pair code.
    #[inline]
    pub fn classify_pair_code(&self, k: usize, pair_code: u64) -> PatternName {
        self.by_pair_code[k][pair_code as usize]
    }

    /// Class of a tournament on 3, 4 or 5 vertices.
    pub fn classify(&self, t: &Tournament) -> Option<PatternName> {
        (3..=5)
            .contains(&t.n())
            .then(|| self.classify_pair_code(t.n(), t.pair_code()))
    }

    /// Name → code pairs in [`PatternName::ALL`] order.
    pub fn codes(&self) -> Vec<(PatternName, u64)> {
        self.entries.iter().map(|e| (e.name, e.code)).collect()
    }
}

static CATALOG: OnceBox<Catalog> = OnceBox::new();

/// Shared catalog built from [`FROZEN_CODES`] on first use.
pub fn catalog() -> &'static Catalog {
    CATALOG.get_or_init(|| Box::new(Catalog::frozen()))
}

/// Class of a tournament on 3, 4 or 5 vertices, `None` otherwise.
pub fn classify(t: &Tournament) -> Option<PatternName> {
    catalog().classify(t)
}

/// Distinct canonical codes of all labelled `k`-vertex tournaments, with one
/// labelled member each, in order of first appearance.
fn enumerate_classes(k: usize) -> Result<Vec<(u64, Tournament)>, Error> {
    let pairs = k * (k - 1) / 2;
    let mut classes: Vec<(u64, Tournament)> = Vec::new();
    for pc in 0..1u64 << pairs {
        let t = Tournament::from_pair_code(k, pc);
        let code = canonical_form(&t)?;
        if !classes.iter().any(|(c, _)| *c == code) {
            classes.push((code, t));
        }
    }
    Ok(classes)
}

fn unique_class(
    classes: &[(u64, Tournament)],
    what: &'static str,
    mut pred: impl FnMut(&Tournament) -> bool,
) -> Result<u64, Error> {
    let hits: Vec<u64> = classes
        .iter()
        .filter(|(_, t)| pred(t))
        .map(|(c, _)| *c)
        .collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::CalibrationAmbiguous(what)),
    }
}

fn dominates_all(t: &Tournament, u: usize, others: &[usize]) -> bool {
    others.iter().all(|&w| t.has_edge(u, w))
}

fn is_cycle(t: &Tournament, s: &[usize]) -> bool {
    s.len() == 3 && !t.induced_unchecked(s).is_transitive()
}

fn rest(n: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|v| !skip.contains(v)).collect()
}

/// Edge `u → v` with both ends dominating a directed triangle.
fn has_pair_over_triangle(t: &Tournament) -> bool {
    t.edges().any(|(u, v)| {
        let others = rest(5, &[u, v]);
        is_cycle(t, &others) && dominates_all(t, u, &others) && dominates_all(t, v, &others)
    })
}

/// A source and a sink around a directed triangle.
fn has_source_sink_over_triangle(t: &Tournament) -> bool {
    let degs = t.out_degrees();
    let (Some(s), Some(k)) = (
        degs.iter().position(|&d| d == 4),
        degs.iter().position(|&d| d == 0),
    ) else {
        return false;
    };
    is_cycle(t, &rest(5, &[s, k]))
}

/// A vertex with two out- and two in-neighbours where both out-neighbours
/// dominate both in-neighbours.
fn has_split_vertex(t: &Tournament) -> bool {
    (0..5).any(|e| {
        let outs: Vec<usize> = t.out_neighbors(e).collect();
        let ins: Vec<usize> = t.in_neighbors(e).collect();
        outs.len() == 2 && outs.iter().all(|&a| dominates_all(t, a, &ins))
    })
}

/// Edge statistics by direct scan, kept separate from the matrix engine.
fn scan_rhs(g: &Tournament) -> [i128; 20] {
    let n = g.n();
    let mut sums = [0i128; 20];
    for (u, v) in g.edges() {
        let (mut dp, mut dm, mut puv, mut pvu) = (0, 0, 0, 0);
        for w in (0..n).filter(|&w| w != u && w != v) {
            let (uw, vw) = (g.has_edge(u, w), g.has_edge(v, w));
            match (uw, vw) {
                (true, true) => dp += 1,
                (false, false) => dm += 1,
                (true, false) => puv += 1,
                (false, true) => pvu += 1,
            }
        }
        for (s, t) in sums.iter_mut().zip(five_terms(dp, dm, puv, pvu)) {
            *s += t as i128;
        }
    }
    sums
}

/// Per-class counts of five-vertex subsets, keyed by canonical code.
fn brute_class_counts(g: &Tournament, classes: &[(u64, Tournament)]) -> Result<Vec<i128>, Error> {
    let mut counts = vec![0i128; classes.len()];
    let n = g.n();
    let mut s = [0usize; 5];
    for_each_subset(n, 5, &mut s, 0, 0, &mut |s| {
        let code = canonical_form(&g.induced_unchecked(s)).expect("five vertices");
        let idx = classes.iter().position(|(c, _)| *c == code).expect("known class");
        counts[idx] += 1;
    });
    Ok(counts)
}

fn for_each_subset(
    n: usize,
    k: usize,
    buf: &mut [usize],
    depth: usize,
    start: usize,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(&buf[..k]);
        return;
    }
    for v in start..n {
        if n - v < k - depth {
            break;
        }
        buf[depth] = v;
        for_each_subset(n, k, buf, depth + 1, v + 1, f);
    }
}

/// Number of random nine-vertex instances used to pin the remaining names.
pub const CALIBRATION_INSTANCES: u64 = 20;

/// Recomputes the name binding from first principles.
///
/// Three- and four-vertex classes are named structurally. Among the twelve
/// five-vertex classes, `T5`, `R5`, `H1`, `H1T`, `H3` and `H8` are fixed by
/// their defining configurations; the other six names are assigned by
/// trying every bijection and keeping those under which all twenty census
/// equations hold on [`CALIBRATION_INSTANCES`] random nine-vertex
/// tournaments. Anything but exactly one survivor is an error.
pub fn calibrate_catalog() -> Result<Catalog, Error> {
    let mut codes: Vec<(PatternName, u64)> = Vec::new();

    let three = enumerate_classes(3)?;
    if three.len() != 2 {
        return Err(Error::CalibrationAmbiguous("expected 2 classes on 3 vertices"));
    }
    codes.push((T3, unique_class(&three, "T3", |t| t.is_transitive())?));
    codes.push((C3, unique_class(&three, "C3", |t| !t.is_transitive())?));

    let four = enumerate_classes(4)?;
    if four.len() != 4 {
        return Err(Error::CalibrationAmbiguous("expected 4 classes on 4 vertices"));
    }
    codes.push((T4, unique_class(&four, "T4", |t| t.is_transitive())?));
    codes.push((X4, unique_class(&four, "X4", |t| t.scc().len() == 1)?));
    codes.push((D, unique_class(&four, "D", |t| {
        !t.is_transitive() && t.out_degrees().contains(&3)
    })?));
    codes.push((DT, unique_class(&four, "DT", |t| {
        !t.is_transitive() && t.out_degrees().contains(&0)
    })?));

    let five = enumerate_classes(5)?;
    if five.len() != 12 {
        return Err(Error::CalibrationAmbiguous("expected 12 classes on 5 vertices"));
    }
    let t5 = unique_class(&five, "T5", |t| t.is_transitive())?;
    let r5 = unique_class(&five, "R5", |t| t.out_degrees().iter().all(|&d| d == 2))?;
    let h1 = unique_class(&five, "H1", has_pair_over_triangle)?;
    let h1t = unique_class(&five, "H1T", |t| has_pair_over_triangle(&t.transpose()))?;
    let h3 = unique_class(&five, "H3", has_source_sink_over_triangle)?;
    let h8 = unique_class(&five, "H8", has_split_vertex)?;
    let fixed = [(T5, t5), (H1, h1), (H1T, h1t), (H3, h3), (H8, h8), (R5, r5)];
    let mut fixed_codes: Vec<u64> = fixed.iter().map(|&(_, c)| c).collect();
    fixed_codes.sort_unstable();
    fixed_codes.dedup();
    if fixed_codes.len() != fixed.len() {
        return Err(Error::CalibrationAmbiguous("structural classes collide"));
    }
    let free: Vec<usize> = (0..five.len())
        .filter(|&i| !fixed_codes.contains(&five[i].0))
        .collect();
    let free_names = [H2, H2T, H4, H5, H6, H7];

    let samples: Vec<(Vec<i128>, [i128; 20])> = (0..CALIBRATION_INSTANCES)
        .map(|seed| {
            let g = random_tournament(9, seed);
            Ok((brute_class_counts(&g, &five)?, scan_rhs(&g)))
        })
        .collect::<Result<_, Error>>()?;

    let class_of = |name: PatternName, assign: &[usize]| -> usize {
        if let Some(&(_, c)) = fixed.iter().find(|(p, _)| *p == name) {
            five.iter().position(|(code, _)| *code == c).expect("fixed class")
        } else {
            let slot = free_names.iter().position(|&p| p == name).expect("free name");
            free[assign[slot]]
        }
    };

    let mut survivors: Vec<Vec<usize>> = Vec::new();
    let mut assign: Vec<usize> = (0..free.len()).collect();
    for_each_permutation(free.len(), |perm| {
        assign.copy_from_slice(perm);
        let columns: Vec<usize> = FIVE_COLUMNS.iter().map(|&p| class_of(p, &assign)).collect();
        let holds = samples.iter().all(|(counts, rhs)| {
            FIVE_MATRIX.iter().zip(rhs).all(|(row, &r)| {
                row.iter().zip(&columns).map(|(a, &c)| a * counts[c]).sum::<i128>() == r
            })
        });
        if holds {
            survivors.push(perm.to_vec());
        }
    });
    let [winner] = survivors.as_slice() else {
        return Err(Error::CalibrationAmbiguous(if survivors.is_empty() {
            "no name assignment satisfies the census equations"
        } else {
            "several name assignments satisfy the census equations"
        }));
    };
    for &name in FIVE_COLUMNS.iter() {
        codes.push((name, five[class_of(name, winner)].0));
    }
    Catalog::from_codes(&codes)
}

/// Upper bounds on `n` for exhaustive counting, indexed by `k`.
pub fn oracle_limit(k: usize) -> usize {
    match k {
        3 => 1024,
        4 => 256,
        _ => 64,
    }
}

/// Classifies every `k`-subset of `g` (`k` in 3..=5).
pub fn oracle_count(g: &Tournament, k: usize) -> Result<CountVector, Error> {
    if !(3..=5).contains(&k) {
        return Err(Error::UnsupportedOrder(k));
    }
    let limit = oracle_limit(k);
    if g.n() > limit {
        return Err(Error::TooLarge { limit, got: g.n() });
    }
    let cat = catalog();
    let mut counts = CountVector::zero(k);
    let n = g.n();
    let mut buf = [0usize; 5];
    for_each_subset(n, k, &mut buf, 0, 0, &mut |s| {
        let mut pc = 0u64;
        let mut bit = 0;
        for i in 0..k {
            for j in i + 1..k {
                pc |= (g.has_edge(s[i], s[j]) as u64) << bit;
                bit += 1;
            }
        }
        counts.add(cat.classify_pair_code(k, pc), 1);
    });
    Ok(counts)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_k_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut buf = vec![0usize; k];
    for_each_subset(n, k, &mut buf, 0, 0, &mut f);
}
