//! Exact integer linear algebra for the small census systems.
//!
//! Elimination is fraction-free (Bareiss): every intermediate entry is a
//! minor of the input, so divisions are exact and nothing leaves `i128`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveError {
    Singular,
    /// Component `index` of the solution is not an integer.
    NonInteger { index: usize },
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r.as_ref());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: i128) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Sub-matrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &[i128]) -> Vec<i128> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Reduces to fraction-free row echelon form; returns the rank and the
    /// sign of the row permutation used.
    fn bareiss(&mut self) -> (usize, i128) {
        let (r, c) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = 1i128;
        let mut sign = 1i128;
        for col in 0..c {
            if rank == r {
                break;
            }
            let Some(p) = (rank..r).find(|&i| self.get(i, col) != 0) else {
                continue;
            };
            if p != rank {
                for j in 0..c {
                    self.data.swap(p * c + j, rank * c + j);
                }
                sign = -sign;
            }
            let pivot = self.get(rank, col);
            for i in rank + 1..r {
                let lead = self.get(i, col);
                for j in col + 1..c {
                    let num = pivot * self.get(i, j) - lead * self.get(rank, j);
                    debug_assert_eq!(num % prev, 0);
                    self.set(i, j, num / prev);
                }
                self.set(i, col, 0);
            }
            prev = pivot;
            rank += 1;
        }
        (rank, sign)
    }

    pub fn rank(&self) -> usize {
        self.clone().bareiss().0
    }

    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return 1;
        }
        let mut m = self.clone();
        let (rank, sign) = m.bareiss();
        if rank < self.rows {
            return 0;
        }
        sign * m.get(self.rows - 1, self.cols - 1)
    }

    /// Solves `A x = b` for square nonsingular `A` by Cramer's rule over
    /// Bareiss determinants, requiring an integral solution.
    pub fn solve_integer(&self, b: &[i128]) -> Result<Vec<i128>, SolveError> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(b.len(), self.rows);
        let det = self.determinant();
        if det == 0 {
            return Err(SolveError::Singular);
        }
        (0..self.cols)
            .map(|j| {
                let mut m = self.clone();
                for (i, &bi) in b.iter().enumerate() {
                    m.set(i, j, bi);
                }
                let dj = m.determinant();
                if dj % det != 0 {
                    Err(SolveError::NonInteger { index: j })
                } else {
                    Ok(dj / det)
                }
            })
            .collect()
    }

    /// Forward substitution for a lower-triangular system.
    pub fn forward_substitute(&self, b: &[i128]) -> Result<Vec<i128>, SolveError> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut x = vec![0i128; n];
        for i in 0..n {
            debug_assert!((i + 1..n).all(|j| self.get(i, j) == 0), "not lower-triangular");
            let diag = self.get(i, i);
            if diag == 0 {
                return Err(SolveError::Singular);
            }
            let rest: i128 = (0..i).map(|j| self.get(i, j) * x[j]).sum();
            let num = b[i] - rest;
            if num % diag != 0 {
                return Err(SolveError::NonInteger { index: i });
            }
            x[i] = num / diag;
        }
        Ok(x)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: i128,
    pub den: i128,
}

impl Ratio {
    pub fn new(num: i128, den: i128) -> Ratio {
        assert!(den != 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()) as i128;
        let s = if den < 0 { -1 } else { 1 };
        Ratio {
            num: s * num / g.max(1),
            den: s * den / g.max(1),
        }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
