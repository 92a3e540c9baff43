//! The linear census systems for four- and five-vertex patterns.
//!
//! Each equation states that a sum over the edges `(u, v)` of a polynomial
//! in the pair statistics equals a fixed integer combination of pattern
//! counts: the polynomial counts one spanning configuration on five (or four)
//! vertices, and the coefficient of a pattern is how many times that
//! configuration appears in it.

use alloc::vec::Vec;

use crate::linalg::IntMatrix;
use crate::PatternName::{self, *};

/// Column order of the four-vertex system.
pub const FOUR_COLUMNS: [PatternName; 4] = [T4, X4, D, DT];

/// Rows: `Σ C(d⁺,2)`, `Σ d⁺·d⁻`, `Σ d⁺·p(u,v)`, `C(n,4)`.
pub const FOUR_MATRIX: [[i128; 4]; 4] = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 0, 3, 0], [1, 1, 1, 1]];

/// Column order of the five-vertex system.
pub const FIVE_COLUMNS: [PatternName; 12] = [T5, H1, H1T, H2, H2T, H3, H4, H5, H6, H7, H8, R5];

/// The 20 × 12 coefficient matrix; row `r` pairs with `five_terms(..)[r]`.
#[rustfmt::skip]
pub const FIVE_MATRIX: [[i128; 12]; 20] = [
    //T5 H1 H1T H2 H2T H3 H4 H5 H6 H7 H8 R5
    [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 1, 0, 0, 0, 1, 0],
    [1, 0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0],
    [1, 0, 0, 2, 0, 3, 0, 0, 0, 0, 0, 0],
    [0, 0, 3, 0, 1, 0, 1, 1, 0, 0, 0, 0],
    [1, 0, 0, 0, 2, 3, 0, 0, 0, 0, 0, 0],
    [0, 3, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 2, 1, 0, 0, 1, 0],
    [1, 0, 3, 0, 2, 0, 0, 0, 0, 0, 0, 0],
    [1, 3, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 5],
    [0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 1, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 1, 1, 0],
    [1, 3, 3, 0, 0, 0, 1, 3, 0, 1, 0, 0],
    [0, 0, 0, 1, 1, 3, 0, 0, 3, 2, 1, 5],
    [0, 0, 0, 0, 2, 0, 1, 1, 3, 2, 1, 0],
    [0, 0, 0, 2, 0, 0, 1, 1, 3, 2, 1, 0],
];

/// Patterns counted directly (source/sink extension and four-cycles).
pub const FIVE_DIRECT: [PatternName; 7] = [T5, H1, H1T, H2, H2T, H3, H8];

/// Patterns recovered from the system.
pub const FIVE_SOLVED: [PatternName; 5] = [H4, H5, H6, H7, R5];

/// One-based equation numbers whose restriction to [`FIVE_SOLVED`] is square
/// and nonsingular.
pub const FIVE_SOLVE_ROWS: [usize; 5] = [3, 5, 8, 15, 18];

fn c2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

fn c3(x: u128) -> u128 {
    x * x.saturating_sub(1) * x.saturating_sub(2) / 6
}

/// Per-edge contributions to the three four-vertex sums, given `d⁺(u,v)`,
/// `d⁻(u,v)` and `p(u,v)`.
#[inline]
pub fn four_terms(dplus: u32, dminus: u32, p_uv: u32) -> [u128; 3] {
    let (dp, dm, puv) = (dplus as u128, dminus as u128, p_uv as u128);
    [c2(dp), dp * dm, dp * puv]
}

/// Per-edge contributions to the twenty five-vertex sums for an edge
/// `(u, v)` with statistics `d⁺, d⁻, p(u,v), p(v,u)`.
#[inline]
pub fn five_terms(dplus: u32, dminus: u32, p_uv: u32, p_vu: u32) -> [u128; 20] {
    let (dp, dm, a, b) = (dplus as u128, dminus as u128, p_uv as u128, p_vu as u128);
    [
        c3(dp),
        c3(dm),
        c3(b),
        c3(a),
        c2(dp) * dm,
        c2(dm) * dp,
        c2(dp) * a,
        c2(dp) * b,
        c2(dm) * a,
        c2(dm) * b,
        c2(a) * b,
        c2(a) * dm,
        c2(a) * dp,
        c2(b) * a,
        c2(b) * dm,
        c2(b) * dp,
        dp * dm * a,
        dp * dm * b,
        dp * a * b,
        dm * a * b,
    ]
}

/// A coefficient matrix together with its right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusSystem {
    pub columns: Vec<PatternName>,
    pub coefficients: IntMatrix,
    pub rhs: Vec<i128>,
}

impl CensusSystem {
    pub fn four(rhs: [i128; 4]) -> Self {
        CensusSystem {
            columns: FOUR_COLUMNS.to_vec(),
            coefficients: four_matrix(),
            rhs: rhs.to_vec(),
        }
    }

    pub fn five(rhs: [i128; 20]) -> Self {
        CensusSystem {
            columns: FIVE_COLUMNS.to_vec(),
            coefficients: five_matrix(),
            rhs: rhs.to_vec(),
        }
    }

    /// Indices of the equations violated by `counts` (in column order).
    pub fn violations(&self, counts: &[i128]) -> Vec<usize> {
        self.coefficients
            .mul_vec(counts)
            .iter()
            .zip(&self.rhs)
            .enumerate()
            .filter(|(_, (l, r))| l != r)
            .map(|(i, _)| i)
            .collect()
    }
}

pub fn four_matrix() -> IntMatrix {
    IntMatrix::from_rows(&FOUR_MATRIX)
}

pub fn five_matrix() -> IntMatrix {
    IntMatrix::from_rows(&FIVE_MATRIX)
}

/// Column index of a five-vertex pattern in [`FIVE_COLUMNS`].
pub fn five_column(name: PatternName) -> usize {
    FIVE_COLUMNS
        .iter()
        .position(|&c| c == name)
        .expect("five-vertex pattern")
}

/// The square block of rows [`FIVE_SOLVE_ROWS`] and columns [`FIVE_SOLVED`].
pub fn five_solve_block() -> IntMatrix {
    let rows: Vec<usize> = FIVE_SOLVE_ROWS.iter().map(|r| r - 1).collect();
    let cols: Vec<usize> = FIVE_SOLVED.iter().map(|&p| five_column(p)).collect();
    five_matrix().select(&rows, &cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_matrix_is_lower_triangular() {
        let m = four_matrix();
        assert_eq!(m.determinant(), 3);
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(m.get(i, j), 0);
            }
        }
    }

    #[test]
    fn five_matrix_ranks() {
        assert_eq!(five_matrix().rank(), 10);
        let rest: Vec<usize> = FIVE_COLUMNS
            .iter()
            .enumerate()
            .filter(|(_, p)| !matches!(p, T5 | H1 | H1T | H2 | H2T | H3))
            .map(|(i, _)| i)
            .collect();
        let rows: Vec<usize> = (0..20).collect();
        assert_eq!(five_matrix().select(&rows, &rest).rank(), 5);
    }

    #[test]
    fn solve_block_entries() {
        let b = five_solve_block();
        let expected = IntMatrix::from_rows(&[
            [1, 0, 1, 0, 0],
            [1, 0, 0, 0, 0],
            [1, 1, 0, 0, 0],
            [0, 1, 0, 1, 0],
            [0, 0, 3, 2, 5],
        ]);
        assert_eq!(b, expected);
        assert_ne!(b.determinant(), 0);
    }
}
