//! Quadratic-time detection of the four-vertex patterns, with witnesses.
//!
//! * `T4` is present in every tournament on eight or more vertices.
//! * `X4` is present iff some strong component has at least four vertices;
//!   a 4-cycle is extracted by one cycle-extension step from a triangle.
//! * `D` is decided by a seven-item structural test relative to any
//!   directed triangle; every failing item yields an explicit copy of `D`.
//!   `DT` is `D` in the transpose.

use alloc::vec;
use alloc::vec::Vec;

use crate::catalog::{catalog, for_each_k_subset};
use crate::{bits, Error, PatternName, Tournament};

/// Vertices of one copy of `pattern`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub pattern: PatternName,
}

impl Witness {
    /// True iff the vertices are distinct and induce `pattern` in `g`.
    pub fn verify(&self, g: &Tournament) -> bool {
        g.induced(&self.vertices)
            .ok()
            .and_then(|t| catalog().classify(&t))
            == Some(self.pattern)
    }
}

fn brute_force(g: &Tournament, pattern: PatternName) -> Option<Witness> {
    let mut found = None;
    for_each_k_subset(g.n(), pattern.order(), |s| {
        if found.is_none() && catalog().classify(&g.induced_unchecked(s)) == Some(pattern) {
            found = Some(s.to_vec());
        }
    });
    found.map(|vertices| Witness { vertices, pattern })
}

/// `T4`: on eight or more vertices one is found among the first eight by
/// the majority-neighborhood argument; smaller inputs are searched.
pub fn detect_t4(g: &Tournament) -> Option<Witness> {
    if g.n() >= 8 {
        let first: Vec<usize> = (0..8).collect();
        let sub = g.induced_unchecked(&first);
        let vertices = sub.find_transitive(4).expect("eight vertices contain T4");
        return Some(Witness {
            vertices,
            pattern: PatternName::T4,
        });
    }
    brute_force(g, PatternName::T4)
}

/// `X4`: a 4-cycle inside a strong component of size at least four.
pub fn detect_x4(g: &Tournament) -> Option<Witness> {
    let scc = g.scc();
    let comp = scc.largest().filter(|c| c.len() >= 4)?;
    let mask = bits::from_members(g.n(), comp.iter().copied());
    let [a, b, c] = g
        .order_within(&mask)
        .expect_err("a strong component on 4+ vertices has a triangle");
    let cycle = extend_triangle(g, &mask, [a, b, c]);
    debug_assert!((0..4).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % 4])));
    Some(Witness {
        vertices: cycle.to_vec(),
        pattern: PatternName::X4,
    })
}

/// Extends a triangle `a → b → c → a` inside a strong set to a 4-cycle.
///
/// If some outside vertex `x` has both in- and out-neighbours on the
/// triangle, there is a consecutive pair `t_i → x → t_{i+1}`. Otherwise every
/// outside vertex dominates the triangle or is dominated by it, and strong
/// connectivity gives an edge `y → x` from the dominated side to the
/// dominating side, so `a → y → x → c → a`.
fn extend_triangle(g: &Tournament, mask: &[u64], tri: [usize; 3]) -> [usize; 4] {
    let mut dominating = vec![0u64; mask.len()];
    let mut dominated = vec![0u64; mask.len()];
    for x in bits::ones(mask) {
        if tri.contains(&x) {
            continue;
        }
        let into: Vec<bool> = tri.iter().map(|&t| g.has_edge(t, x)).collect();
        if let Some(i) = (0..3).find(|&i| into[i] && !into[(i + 1) % 3]) {
            // t_i → x → t_{i+1}
            let (t0, t1, t2) = (tri[i], tri[(i + 1) % 3], tri[(i + 2) % 3]);
            return [t0, x, t1, t2];
        }
        if into[0] {
            bits::set(&mut dominated, x);
        } else {
            bits::set(&mut dominating, x);
        }
    }
    let [a, _, c] = tri;
    for x in bits::ones(&dominating) {
        if let Some(y) = bits::first_common(&dominated, g.in_row(x)) {
            return [a, y, x, c];
        }
    }
    unreachable!("strong component with four or more vertices")
}

/// The eight sets `N_S` of a directed triangle: `sets[mask]` holds the
/// vertices outside the triangle whose out-neighbours on it are exactly the
/// triangle positions in `mask` (bit 0 = `a`, bit 1 = `b`, bit 2 = `c`).
#[derive(Debug, Clone)]
pub struct TriangleDecomposition {
    pub triangle: [usize; 3],
    pub sets: [Vec<usize>; 8],
    masks: [Vec<u64>; 8],
}

impl TriangleDecomposition {
    pub fn new(g: &Tournament, triangle: [usize; 3]) -> Self {
        let mut sets: [Vec<usize>; 8] = Default::default();
        let mut masks: [Vec<u64>; 8] = core::array::from_fn(|_| vec![0; g.words()]);
        for x in 0..g.n() {
            if triangle.contains(&x) {
                continue;
            }
            let s = (0..3).fold(0, |acc, i| acc | (g.has_edge(x, triangle[i]) as usize) << i);
            sets[s].push(x);
            bits::set(&mut masks[s], x);
        }
        TriangleDecomposition {
            triangle,
            sets,
            masks,
        }
    }

    pub fn set(&self, mask: usize) -> &[usize] {
        &self.sets[mask]
    }

    pub fn mask(&self, mask: usize) -> &[u64] {
        &self.masks[mask]
    }
}

/// Running counts for the bad-triple scan of an ordered pair `(X, Y)`.
///
/// After processing `x_1..x_i`: `alpha[m]` is the number of in-neighbours of
/// `y_m` among `x_1..x_i`, and `beta[m]` the number of its out-neighbours
/// among `x_{i+1}..x_p`.
#[derive(Debug, Clone)]
pub struct ScanState {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

impl ScanState {
    fn start(g: &Tournament, xs: &[usize], ys: &[usize]) -> Self {
        let beta = ys
            .iter()
            .map(|&y| xs.iter().filter(|&&x| g.has_edge(y, x)).count() as u32)
            .collect();
        ScanState {
            alpha: vec![0; ys.len()],
            beta,
        }
    }

    fn advance(&mut self, g: &Tournament, x: usize, ys: &[usize]) {
        for (m, &y) in ys.iter().enumerate() {
            if g.has_edge(x, y) {
                self.alpha[m] += 1;
            } else {
                self.beta[m] -= 1;
            }
        }
    }
}

/// Finds `i < j` and `m` with `x_i → y_m → x_j`, where `xs` is in transitive
/// order. Returns `(x_i, x_j, y_m)`.
fn bad_triple(g: &Tournament, xs: &[usize], ys: &[usize]) -> Option<(usize, usize, usize)> {
    let mut state = ScanState::start(g, xs, ys);
    for (i, &x) in xs.iter().enumerate() {
        state.advance(g, x, ys);
        if let Some(m) = (0..ys.len()).find(|&m| state.alpha[m] > 0 && state.beta[m] > 0) {
            let y = ys[m];
            let first = xs[..=i].iter().copied().find(|&x| g.has_edge(x, y))?;
            let last = xs[i + 1..].iter().copied().find(|&x| g.has_edge(y, x))?;
            return Some((first, last, y));
        }
    }
    None
}

/// Why a tournament is `D`-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DFreeCertificate {
    /// No directed triangle at all.
    Transitive,
    /// Every structural condition holds relative to this triangle.
    Structured { triangle: [usize; 3] },
}

/// Outcome of [`check_d_free`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DFreeCheck {
    Free(DFreeCertificate),
    /// A copy of `D`, with the number (1..=7) of the failed condition.
    Found { witness: Witness, item: u8 },
}

const ALL3: usize = 0b111;

fn bit(pos: usize) -> usize {
    1 << (pos % 3)
}

/// Decides `D`-freeness in O(n²).
///
/// With a triangle `a → b → c → a` and the sets `N_S`, `G` is `D`-free iff:
/// 1. `N_{abc}` is empty;
/// 2. every `N_S` with `S` nonempty and proper dominates `N_∅`;
/// 3. every `N_S` with `S ≠ {a,b,c}` is transitive;
/// 4. `N_a → N_b → N_c → N_a`;
/// 5. `N_{ab} → N_{bc} → N_{ca} → N_{ab}`;
/// 6. `N_a → N_{ab} → N_b`, and its rotations;
/// 7. the pairs `(N_a, N_{bc})`, `(N_b, N_{ca})`, `(N_c, N_{ab})` have no bad
///    triple (a transitive triple with source and sink on one side and the
///    middle vertex on the other).
///
/// Conditions are checked in order and the first failure is reported.
pub fn check_d_free(g: &Tournament) -> DFreeCheck {
    let Err(triangle) = g.transitive_order() else {
        return DFreeCheck::Free(DFreeCertificate::Transitive);
    };
    let dec = TriangleDecomposition::new(g, triangle);
    let t = |pos: usize| triangle[pos % 3];
    let found = |vertices: [usize; 4], item: u8| DFreeCheck::Found {
        witness: Witness {
            vertices: vertices.to_vec(),
            pattern: PatternName::D,
        },
        item,
    };
    // x ∈ N_from, y ∈ N_to with y → x.
    let backward = |from: usize, to: usize| -> Option<(usize, usize)> {
        dec.set(from)
            .iter()
            .find_map(|&x| bits::first_common(dec.mask(to), g.in_row(x)).map(|y| (x, y)))
    };

    // 1
    if let Some(&x) = dec.set(ALL3).first() {
        return found([x, t(0), t(1), t(2)], 1);
    }
    // 2
    for s in 1..ALL3 {
        if let Some((x, y)) = backward(s, 0) {
            let e = (0..3)
                .find(|&p| s & bit(p) != 0 && s & bit(p + 2) == 0)
                .expect("nonempty proper subset");
            return found([t(e + 2), x, t(e), y], 2);
        }
    }
    // 3
    let mut orders: [Vec<usize>; 8] = Default::default();
    for s in 0..ALL3 {
        match g.order_within(dec.mask(s)) {
            Ok(order) => orders[s] = order,
            Err([x, y, z]) => {
                let d = (0..3).find(|&p| s & bit(p) == 0).expect("proper subset");
                return found([t(d), x, y, z], 3);
            }
        }
    }
    for r in 0..3 {
        // 4: N_{t_r} → N_{t_{r+1}}
        if let Some((x, y)) = backward(bit(r), bit(r + 1)) {
            return found([t(r + 2), x, t(r), y], 4);
        }
    }
    for r in 0..3 {
        // 5: N_{t_r t_{r+1}} → N_{t_{r+1} t_{r+2}}
        if let Some((x, y)) = backward(bit(r) | bit(r + 1), bit(r + 1) | bit(r + 2)) {
            return found([y, t(r + 1), t(r + 2), x], 5);
        }
    }
    for r in 0..3 {
        // 6: N_{t_r} → N_{t_r t_{r+1}} → N_{t_{r+1}}
        let pair = bit(r) | bit(r + 1);
        if let Some((x, y)) = backward(bit(r), pair) {
            return found([y, t(r), t(r + 1), x], 6);
        }
        if let Some((x, y)) = backward(pair, bit(r + 1)) {
            return found([t(r + 2), t(r), y, x], 6);
        }
    }
    for r in 0..3 {
        // 7: (N_{t_r}, N_{t_{r+1} t_{r+2}})
        let xs = &orders[bit(r)];
        let ys = &orders[bit(r + 1) | bit(r + 2)];
        if let Some((x1, x2, y)) = bad_triple(g, xs, ys) {
            return found([x1, x2, t(r), y], 7);
        }
        if let Some((y1, y2, x)) = bad_triple(g, ys, xs) {
            return found([y1, y2, t(r + 1), x], 7);
        }
    }
    DFreeCheck::Free(DFreeCertificate::Structured { triangle })
}

pub fn detect_d(g: &Tournament) -> Option<Witness> {
    match check_d_free(g) {
        DFreeCheck::Found { witness, .. } => Some(witness),
        DFreeCheck::Free(_) => None,
    }
}

/// `DT` in `g` is `D` in the transpose; labels carry over unchanged.
pub fn detect_dt(g: &Tournament) -> Option<Witness> {
    detect_d(&g.transpose()).map(|w| Witness {
        vertices: w.vertices,
        pattern: PatternName::DT,
    })
}

/// `T3`: among any four vertices; `C3`: from the transitive-order check.
pub fn detect_three(g: &Tournament, pattern: PatternName) -> Option<Witness> {
    let vertices = match pattern {
        PatternName::T3 if g.n() >= 4 => {
            let first: Vec<usize> = (0..4).collect();
            g.induced_unchecked(&first)
                .find_transitive(3)
                .expect("four vertices contain T3")
        }
        PatternName::T3 => return brute_force(g, pattern),
        PatternName::C3 => g.find_three_cycle()?.to_vec(),
        other => panic!("{other} is not a three-vertex pattern"),
    };
    Some(Witness { vertices, pattern })
}

/// Detection of any three- or four-vertex pattern.
pub fn detect(g: &Tournament, pattern: PatternName) -> Result<Option<Witness>, Error> {
    Ok(match pattern {
        PatternName::T3 | PatternName::C3 => detect_three(g, pattern),
        PatternName::T4 => detect_t4(g),
        PatternName::X4 => detect_x4(g),
        PatternName::D => detect_d(g),
        PatternName::DT => detect_dt(g),
        other => return Err(Error::UnsupportedOrder(other.order())),
    })
}

/// Exhaustive search over four-subsets; used for cross-checking.
pub fn detect_brute_force(g: &Tournament, pattern: PatternName) -> Option<Witness> {
    brute_force(g, pattern)
}
