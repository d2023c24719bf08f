//! Bit-packed vectors and matrices over GF(2).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const WORD: usize = 64;

/// Largest column count accepted by [`BinaryMatrix`].
pub const MAX_COLUMNS: usize = 4096;

/// Direction of a cyclic shift. `Left` is σ, `Right` is ρ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryVector {
    len: usize,
    words: Vec<u64>,
}

impl BinaryVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters; spaces are ignored.
    pub fn parse(s: &str) -> Result<Self> {
        let mut bits = Vec::new();
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                other => return Err(Error::Parse(format!("unexpected character {other:?} in bit string"))),
            }
        }
        Ok(Self::from_bits(bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn or_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn dot(&self, other: &Self) -> bool {
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn last_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + (WORD - 1 - w.leading_zeros() as usize))
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Cyclic shift; `Left` by j gives `x[(i + j) mod n]` at position i.
    pub fn rotate(&self, j: usize, dir: Direction) -> Self {
        let n = self.len;
        if n == 0 {
            return self.clone();
        }
        let j = j % n;
        let mut out = Self::zeros(n);
        for i in self.ones() {
            let t = match dir {
                Direction::Left => (i + n - j) % n,
                Direction::Right => (i + j) % n,
            };
            out.set(t, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> Self {
        Self::from_bits((start..end).map(|i| self.get(i)))
    }
}

impl fmt::Display for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryVector({self})")
    }
}

impl Serialize for BinaryVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BinaryVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Reduced row echelon form plus pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: BinaryMatrix,
    pub pivots: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryMatrix {
    ncols: usize,
    rows: Vec<BinaryVector>,
}

impl BinaryMatrix {
    pub fn new(ncols: usize) -> Result<Self> {
        if ncols > MAX_COLUMNS {
            return Err(Error::Dimension(format!(
                "{ncols} columns exceeds the limit of {MAX_COLUMNS}"
            )));
        }
        Ok(Self {
            ncols,
            rows: Vec::new(),
        })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Result<Self> {
        let mut m = Self::new(ncols)?;
        m.rows = vec![BinaryVector::zeros(ncols); nrows];
        Ok(m)
    }

    pub fn from_rows(ncols: usize, rows: Vec<BinaryVector>) -> Result<Self> {
        let mut m = Self::new(ncols)?;
        for r in rows {
            m.push_row(r)?;
        }
        Ok(m)
    }

    /// Parses rows of `0`/`1` characters separated by newlines or `;`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows: Vec<BinaryVector> = s
            .split(['\n', ';'])
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(BinaryVector::parse)
            .collect::<Result<_>>()?;
        let ncols = rows.first().map_or(0, BinaryVector::len);
        Self::from_rows(ncols, rows)
    }

    pub fn push_row(&mut self, row: BinaryVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::Dimension(format!(
                "row of length {} pushed into a matrix with {} columns",
                row.len(),
                self.ncols
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &BinaryVector {
        &self.rows[i]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut BinaryVector {
        &mut self.rows[i]
    }

    pub fn rows(&self) -> &[BinaryVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<BinaryVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.rows[i].set(j, value);
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self {
            ncols: self.ncols,
            rows: idx.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self {
            ncols: self.nrows(),
            rows: vec![BinaryVector::zeros(self.nrows()); self.ncols],
        };
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    /// `self · otherᵀ`.
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.ncols != other.ncols {
            return Err(Error::Dimension(format!(
                "cannot multiply {}-column matrix by the transpose of a {}-column matrix",
                self.ncols, other.ncols
            )));
        }
        let mut out = Self::zeros(self.nrows(), other.nrows())?;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                if a.dot(b) {
                    out.rows[i].set(j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BinaryVector::is_zero)
    }

    /// Fully reduced row echelon form with zero rows removed.
    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot);
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref {
            matrix: Self {
                ncols: self.ncols,
                rows,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn row_space_equal(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rref().matrix == other.rref().matrix
    }

    /// Whether `v` lies in the row space.
    pub fn spans(&self, v: &BinaryVector) -> bool {
        let Rref { matrix, pivots } = self.rref();
        reduce_against(v, &matrix, &pivots).is_zero()
    }

    /// Basis of `{x : self · x = 0}`, one row per free column.
    pub fn null_space(&self) -> Self {
        let Rref { matrix, pivots } = self.rref();
        let mut basis = Self {
            ncols: self.ncols,
            rows: Vec::new(),
        };
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = BinaryVector::zeros(self.ncols);
            v.set(free, true);
            for (row, &p) in matrix.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            basis.rows.push(v);
        }
        basis
    }

    pub fn cyclic_shift(&self, j: usize, dir: Direction) -> Self {
        Self {
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.rotate(j, dir)).collect(),
        }
    }

    /// Minimal-span form: a basis with pairwise distinct first and last nonzero
    /// positions, sorted by start. Zero rows are dropped.
    pub fn minimal_span_form(&self) -> Self {
        let mut rows: Vec<BinaryVector> = self.rows.iter().filter(|r| !r.is_zero()).cloned().collect();
        let start = |v: &BinaryVector| v.first_one().unwrap_or(usize::MAX);
        let end = |v: &BinaryVector| v.last_one().unwrap_or(0);

        for c in 0..self.ncols {
            let group: Vec<usize> = (0..rows.len())
                .filter(|&i| !rows[i].is_zero() && start(&rows[i]) == c)
                .collect();
            if group.len() < 2 {
                continue;
            }
            let &p = group.iter().min_by_key(|&&i| (end(&rows[i]), i)).expect("nonempty");
            let pivot = rows[p].clone();
            for &i in group.iter().filter(|&&i| i != p) {
                rows[i].xor_assign(&pivot);
            }
        }
        rows.retain(|r| !r.is_zero());

        for c in (0..self.ncols).rev() {
            let group: Vec<usize> = (0..rows.len()).filter(|&i| end(&rows[i]) == c).collect();
            if group.len() < 2 {
                continue;
            }
            let &p = group
                .iter()
                .max_by_key(|&&i| (start(&rows[i]), std::cmp::Reverse(i)))
                .expect("nonempty");
            let pivot = rows[p].clone();
            for &i in group.iter().filter(|&&i| i != p) {
                rows[i].xor_assign(&pivot);
            }
        }
        rows.sort_by_key(|r| (start(r), end(r)));
        Self {
            ncols: self.ncols,
            rows,
        }
    }

    /// Rows rendered with a space between groups of `block` columns.
    pub fn render_blocks(&self, block: usize) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&render_row(r, block));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn render_row(r: &BinaryVector, block: usize) -> String {
    let mut s = String::new();
    for i in 0..r.len() {
        if block > 0 && i > 0 && i % block == 0 {
            s.push(' ');
        }
        s.push(if r.get(i) { '1' } else { '0' });
    }
    s
}

pub(crate) fn reduce_against(v: &BinaryVector, rref: &BinaryMatrix, pivots: &[usize]) -> BinaryVector {
    let mut v = v.clone();
    for (row, &p) in rref.rows().iter().zip(pivots) {
        if v.get(p) {
            v.xor_assign(row);
        }
    }
    v
}

impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix {}x{} [", self.nrows(), self.ncols)?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> BinaryMatrix {
        BinaryMatrix::parse(s).unwrap()
    }

    #[test]
    fn rank_of_example_tbgm() {
        let g = m("101111000;000101111;111000101");
        assert_eq!(g.rank(), 3);
        let dup = m("1100;1100;0011");
        assert_eq!(dup.rank(), 2);
    }

    #[test]
    fn null_space_is_orthogonal_and_complete() {
        let g = m("1110110000;0011101100;0000111011;1100001110;1011000011");
        let h = g.null_space();
        assert_eq!(h.nrows(), 10 - g.rank());
        assert!(g.mul_transpose(&h).unwrap().is_zero());
        assert_eq!(h.rank(), h.nrows());
    }

    #[test]
    fn msf_of_shifted_example_frame() {
        let g = m("101111000;000101111;111000101");
        let x0 = g.minimal_span_form();
        assert_eq!(x0, m("101111000;010010010;000101111"));
        let x1 = g.cyclic_shift(1, Direction::Left).minimal_span_form();
        assert_eq!(x1, m("100100100;011110001;001011110"));
        assert!(x1.row_space_equal(&g.cyclic_shift(1, Direction::Left)));
    }

    #[test]
    fn msf_spans_are_distinct() {
        let g = m("1110110000;0011101100;0000111011;1100001110;1011000011");
        let x = g.minimal_span_form();
        let starts: Vec<_> = x.rows().iter().map(|r| r.first_one().unwrap()).collect();
        let ends: Vec<_> = x.rows().iter().map(|r| r.last_one().unwrap()).collect();
        let mut s = starts.clone();
        s.dedup();
        assert_eq!(s.len(), starts.len());
        let mut e = ends.clone();
        e.sort();
        e.dedup();
        assert_eq!(e.len(), ends.len());
        assert!(x.row_space_equal(&g));
    }

    #[test]
    fn rotation_conventions() {
        let v = BinaryVector::parse("1100").unwrap();
        assert_eq!(v.rotate(1, Direction::Left).to_string(), "1001");
        assert_eq!(v.rotate(1, Direction::Right).to_string(), "0110");
        assert_eq!(v.rotate(3, Direction::Right).rotate(3, Direction::Left), v);
    }

    #[test]
    fn long_vectors_cross_word_boundaries() {
        let mut v = BinaryVector::zeros(130);
        v.set(0, true);
        v.set(129, true);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.last_one(), Some(129));
        let r = v.rotate(1, Direction::Right);
        assert_eq!(r.ones().collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn rejects_oversized_matrices() {
        assert!(BinaryMatrix::new(MAX_COLUMNS + 1).is_err());
        let mut g = BinaryMatrix::new(3).unwrap();
        assert!(g.push_row(BinaryVector::zeros(4)).is_err());
    }
}
