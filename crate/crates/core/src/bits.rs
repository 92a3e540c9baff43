//! Word-packed bit rows.
//!
//! A row over `n` vertices occupies `words_for(n)` `u64`s; bit `v % 64` of
//! word `v / 64` is vertex `v`. Bits at positions `>= n` are always zero.

use alloc::vec;
use alloc::vec::Vec;

#[inline]
pub fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
pub fn get(row: &[u64], v: usize) -> bool {
    row[v >> 6] >> (v & 63) & 1 == 1
}

#[inline]
pub fn set(row: &mut [u64], v: usize) {
    row[v >> 6] |= 1 << (v & 63);
}

#[inline]
pub fn clear(row: &mut [u64], v: usize) {
    row[v >> 6] &= !(1 << (v & 63));
}

#[inline]
pub fn count(row: &[u64]) -> usize {
    row.iter().map(|w| w.count_ones() as usize).sum()
}

/// `|a ∩ b|`.
#[inline]
pub fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// `|a ∩ b ∩ c|`.
#[inline]
pub fn and3_count(a: &[u64], b: &[u64], c: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .zip(c)
        .map(|((x, y), z)| (x & y & z).count_ones() as usize)
        .sum()
}

/// Smallest element of `a ∩ b`, if any.
pub fn first_common(a: &[u64], b: &[u64]) -> Option<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .find_map(|(i, (x, y))| {
            let w = x & y;
            (w != 0).then(|| i * 64 + w.trailing_zeros() as usize)
        })
}

/// Iterates over the set bits of a row in increasing order.
pub fn ones(row: &[u64]) -> Ones<'_> {
    Ones {
        row,
        idx: 0,
        cur: row.first().copied().unwrap_or(0),
    }
}

pub struct Ones<'a> {
    row: &'a [u64],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let t = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + t);
            }
            self.idx += 1;
            if self.idx >= self.row.len() {
                return None;
            }
            self.cur = self.row[self.idx];
        }
    }
}

/// A row with the given members set.
pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut row = vec![0; words_for(n)];
    for v in members {
        set(&mut row, v);
    }
    row
}

/// Row with bits `0..n` set.
pub fn full(n: usize) -> Vec<u64> {
    let mut row = vec![u64::MAX; words_for(n)];
    if !n.is_multiple_of(64) {
        if let Some(last) = row.last_mut() {
            *last = (1u64 << (n % 64)) - 1;
        }
    }
    row
}
