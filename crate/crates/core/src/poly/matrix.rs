use std::fmt;

use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};

/// A k0 × n0 matrix over GF(2)[D].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

/// The scalar coefficient matrices G_0 … G_L of `G(D) = Σ G_i D^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffExpansion {
    pub coefficients: Vec<BinaryMatrix>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<Self> {
        let k = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if k == 0 || n == 0 {
            return Err(Error::Dimension("polynomial matrix must be non-empty".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows have different lengths".into()));
        }
        Ok(Self {
            rows: k,
            cols: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Grid syntax: entries separated by `,`, rows by `;`, e.g. `1+D,D;D^2,0,1+D`.
    pub fn parse(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| r.split(',').map(Poly::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Octal tuple such as `(50,64)` or several `;`-separated tuples, one per row.
    ///
    /// Each digit expands to three bits, most significant first; read left to
    /// right the bits are the coefficients of D^0, D^1, ….
    pub fn parse_octal(s: &str) -> Result<Self> {
        let rows = s
            .split(';')
            .map(|r| {
                let r = r.trim().trim_start_matches('(').trim_end_matches(')');
                r.split(',').map(parse_octal_entry).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    /// Octal rendering, each row padded to a common multiple of three bits.
    pub fn to_octal(&self) -> String {
        (0..self.rows)
            .map(|i| {
                let width = self.row_degree(i).map_or(1, |d| d + 1).div_ceil(3) * 3;
                let digits: Vec<String> = self.row(i).iter().map(|p| format_octal_entry(p, width)).collect();
                format!("({})", digits.join(","))
            })
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Poly) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_degree(&self, i: usize) -> Option<usize> {
        self.row(i).iter().filter_map(Poly::degree).max()
    }

    pub fn row_degrees(&self) -> Vec<usize> {
        (0..self.rows).map(|i| self.row_degree(i).unwrap_or(0)).collect()
    }

    /// Memory length L: the largest entry degree.
    pub fn memory(&self) -> usize {
        self.entries.iter().filter_map(Poly::degree).max().unwrap_or(0)
    }

    /// Constraint length ν: the sum of the row degrees.
    pub fn constraint_length(&self) -> usize {
        self.row_degrees().iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn expand(&self) -> CoeffExpansion {
        let l = self.memory();
        let coefficients = (0..=l)
            .map(|m| {
                let rows = (0..self.rows)
                    .map(|i| BinaryVector::from_bits(self.row(i).iter().map(|p| p.coeff(m))))
                    .collect();
                BinaryMatrix::from_rows(self.cols, rows).expect("consistent widths")
            })
            .collect();
        CoeffExpansion { coefficients }
    }

    pub fn from_expansion(e: &CoeffExpansion) -> Result<Self> {
        let g0 = e
            .coefficients
            .first()
            .ok_or_else(|| Error::Dimension("empty coefficient list".into()))?;
        let (k, n) = (g0.nrows(), g0.ncols());
        let mut out = Self::zeros(k, n);
        for (m, gm) in e.coefficients.iter().enumerate() {
            if gm.nrows() != k || gm.ncols() != n {
                return Err(Error::Dimension("coefficient matrices differ in shape".into()));
            }
            for i in 0..k {
                for j in gm.row(i).ones() {
                    let mut p = out.get(i, j).clone();
                    p.set_coeff(m, true);
                    out.set(i, j, p);
                }
            }
        }
        Ok(out)
    }

    /// `self · otherᵀ` over GF(2)[D].
    pub fn mul_transpose(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "cannot form G·Hᵀ with {} and {} columns",
                self.cols, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                let mut acc = Poly::zero();
                for c in 0..self.cols {
                    acc = &acc + &(self.get(i, c) * other.get(j, c));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension("inner dimensions differ".into()));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Poly::zero();
                for t in 0..self.cols {
                    acc = &acc + &(self.get(i, t) * rhs.get(t, j));
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += factor · row[src]`, with no side conditions.
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + &(factor * self.get(src, j));
            self.set(dst, j, v);
        }
    }

    /// `col[dst] += factor · col[src]`.
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &Poly) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + &(factor * self.get(i, src));
            self.set(i, dst, v);
        }
    }

    /// The largest p such that D^p divides every entry of column j.
    pub fn column_monomial_factor(&self, j: usize) -> usize {
        let col = self.column(j);
        if col.iter().all(Poly::is_zero) {
            return 0;
        }
        col.iter()
            .filter(|p| !p.is_zero())
            .map(Poly::trailing_zeros)
            .min()
            .unwrap_or(0)
    }

    /// The largest p such that D^p divides every entry of row i.
    pub fn row_monomial_factor(&self, i: usize) -> usize {
        self.row(i)
            .iter()
            .filter(|p| !p.is_zero())
            .map(Poly::trailing_zeros)
            .min()
            .unwrap_or(0)
    }

    /// Divides column j by D^p.
    pub fn divide_column(&self, j: usize, p: usize) -> Result<Self> {
        self.check_col(j)?;
        if self.column_monomial_factor(j) < p && !self.column(j).iter().all(Poly::is_zero) {
            return Err(Error::NotDivisible { column: j, power: p });
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = self.get(i, j).shr(p).expect("divisibility checked");
            out.set(i, j, v);
        }
        Ok(out)
    }

    /// Multiplies column j by D^q; the result must still fit `q + L + 1 ≤ N`.
    pub fn multiply_column(&self, j: usize, q: usize, n: usize) -> Result<Self> {
        self.check_col(j)?;
        if q + self.memory() + 1 > n {
            return Err(Error::BudgetExceeded(format!(
                "multiplying column {j} by D^{q} needs N >= {}, have {n}",
                q + self.memory() + 1
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.set(i, j, self.get(i, j).shl(q));
        }
        Ok(out)
    }

    /// `g_dst += D^q g_src`, which keeps the tail-biting code unchanged when `q + L + 1 ≤ N`.
    pub fn row_add(&self, src: usize, dst: usize, q: usize, n: usize) -> Result<Self> {
        if src == dst {
            return Err(Error::InvalidRowOp(format!("row {src} added to itself")));
        }
        if src >= self.rows || dst >= self.rows {
            return Err(Error::InvalidRowOp(format!(
                "row index out of range for {} rows",
                self.rows
            )));
        }
        if q + self.memory() + 1 > n {
            return Err(Error::BudgetExceeded(format!(
                "adding D^{q} times row {src} needs N >= {}, have {n}",
                q + self.memory() + 1
            )));
        }
        let mut out = self.clone();
        out.add_row_multiple(dst, src, &Poly::monomial(q));
        Ok(out)
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j >= self.cols {
            return Err(Error::Dimension(format!(
                "column {j} out of range for {} columns",
                self.cols
            )));
        }
        Ok(())
    }

    /// Grid syntax accepted by [`PolyMatrix::parse`].
    pub fn to_grid(&self) -> String {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(Poly::to_string).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn parse_octal_entry(s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty octal entry".into()));
    }
    let mut bits = Vec::new();
    for c in s.chars() {
        let d = c
            .to_digit(8)
            .ok_or_else(|| Error::Parse(format!("{c:?} is not an octal digit in {s:?}")))?;
        bits.extend([d & 4 != 0, d & 2 != 0, d & 1 != 0]);
    }
    Ok(Poly::from_coeffs(bits))
}

fn format_octal_entry(p: &Poly, width: usize) -> String {
    (0..width)
        .step_by(3)
        .map(|i| {
            let d = (p.coeff(i) as u32) << 2 | (p.coeff(i + 1) as u32) << 1 | p.coeff(i + 2) as u32;
            char::from_digit(d, 8).expect("octal digit")
        })
        .collect()
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let e: Vec<String> = self.row(i).iter().map(Poly::to_string).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        if self.rows == 1 {
            write!(f, "({})", rows[0].trim_start_matches('[').trim_end_matches(']'))
        } else {
            write!(f, "[{}]", rows.join(", "))
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix{self}")
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_grid())
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::parse(&s).map_err(serde::de::Error::custom)
    }
}
