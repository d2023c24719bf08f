//! The block-circulant tail-biting generator matrix G_N^{tb}.

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector, Direction};
use crate::poly::{Poly, PolyMatrix};
use crate::span::Span;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tbgm {
    pub matrix: BinaryMatrix,
    pub n0: usize,
    pub k0: usize,
    pub sections: usize,
}

impl Tbgm {
    /// Length n = n0·N.
    pub fn n(&self) -> usize {
        self.n0 * self.sections
    }

    /// Nominal dimension k = k0·N.
    pub fn k(&self) -> usize {
        self.k0 * self.sections
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.k()
    }

    pub fn require_full_rank(&self) -> Result<()> {
        let rank = self.rank();
        if rank != self.k() {
            return Err(Error::DegenerateTailBiting {
                rank,
                expected: self.k(),
            });
        }
        Ok(())
    }

    /// Positions where every codeword is zero.
    pub fn zero_positions(&self) -> Vec<usize> {
        let mut cover = BinaryVector::zeros(self.n());
        for r in self.matrix.rows() {
            cover.or_assign(r);
        }
        (0..self.n()).filter(|&i| !cover.get(i)).collect()
    }

    pub fn require_full_support(&self) -> Result<()> {
        let zeros = self.zero_positions();
        if !zeros.is_empty() {
            return Err(Error::NotFullSupport(zeros));
        }
        Ok(())
    }

    /// Span of each row in its own frame: row block i is read after undoing
    /// its rotation by i·n0 and the resulting conventional span is rotated back.
    pub fn natural_spans(&self) -> Result<Vec<Span>> {
        let n = self.n();
        self.matrix
            .rows()
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let shift = (r / self.k0) * self.n0;
                let base = row.rotate(shift, Direction::Left);
                let (a, b) = base
                    .first_one()
                    .zip(base.last_one())
                    .ok_or_else(|| Error::RankDeficient(format!("row {r} of the tail-biting matrix is zero")))?;
                Ok(Span::new(a, b, n)?.shift(shift, Direction::Right))
            })
            .collect()
    }
}

/// Builds the k0N × n0N block-circulant matrix whose row block i is row block 0
/// rotated right by i·n0.
pub fn build_tbgm(g: &PolyMatrix, sections: usize) -> Result<Tbgm> {
    let need = g.memory() + 1;
    if sections < need.max(2) {
        return Err(Error::SectionLength {
            n: sections,
            need: need.max(2),
        });
    }
    let (k0, n0) = (g.nrows(), g.ncols());
    let n = n0 * sections;
    let mut block0 = Vec::with_capacity(k0);
    for i in 0..k0 {
        let mut row = BinaryVector::zeros(n);
        for (c, p) in g.row(i).iter().enumerate() {
            for m in p.terms() {
                row.set(m * n0 + c, true);
            }
        }
        block0.push(row);
    }
    let mut rows = Vec::with_capacity(k0 * sections);
    for blk in 0..sections {
        for r in &block0 {
            rows.push(r.rotate(blk * n0, Direction::Right));
        }
    }
    Ok(Tbgm {
        matrix: BinaryMatrix::from_rows(n, rows)?,
        n0,
        k0,
        sections,
    })
}

/// Recovers G(D) from a shift-structured row set.
///
/// The basic rows are those whose span starts before n0; each must occur
/// together with all its rotations by multiples of n0. Row order follows the
/// span start, and the coefficient of D^i is read from column block i.
pub fn rows_to_polymatrix(rows: &[BinaryVector], spans: &[Span], n0: usize, sections: usize) -> Result<PolyMatrix> {
    if rows.len() != spans.len() {
        return Err(Error::Dimension(format!(
            "{} rows but {} spans",
            rows.len(),
            spans.len()
        )));
    }
    let n = n0 * sections;
    if rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("rows must have length {n}")));
    }
    let mut basic: Vec<usize> = (0..rows.len()).filter(|&i| spans[i].start() < n0).collect();
    basic.sort_by_key(|&i| spans[i].start());
    if basic.is_empty() || basic.len() * sections != rows.len() {
        return Err(Error::NotShiftStructured(format!(
            "{} basic rows cannot produce {} rows over {sections} sections",
            basic.len(),
            rows.len()
        )));
    }
    for &b in &basic {
        for i in 1..sections {
            let (r, s) = (
                rows[b].rotate(i * n0, Direction::Right),
                spans[b].shift(i * n0, Direction::Right),
            );
            if !rows.iter().zip(spans).any(|(x, t)| *x == r && *t == s) {
                return Err(Error::NotShiftStructured(format!(
                    "row with span {} has no copy shifted by {} positions",
                    spans[b],
                    i * n0
                )));
            }
        }
    }
    let polys = basic
        .iter()
        .map(|&b| {
            let mut entries = vec![Poly::zero(); n0];
            for pos in rows[b].ones() {
                entries[pos % n0].set_coeff(pos / n0, true);
            }
            entries
        })
        .collect();
    PolyMatrix::from_rows(polys)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(s: &str) -> PolyMatrix {
        PolyMatrix::parse(s).unwrap()
    }

    #[test]
    fn example_one_matrix() {
        let t = build_tbgm(&pm("1+D,D,1+D"), 3).unwrap();
        assert_eq!(t.matrix, BinaryMatrix::parse("101111000;000101111;111000101").unwrap());
        assert!(t.is_full_rank());
        assert!(t.zero_positions().is_empty());
    }

    #[test]
    fn five_section_matrix() {
        let t = build_tbgm(&pm("1+D+D^2,1+D^2"), 5).unwrap();
        let want = "1110110000;0011101100;0000111011;1100001110;1011000011";
        assert_eq!(t.matrix, BinaryMatrix::parse(want).unwrap());
    }

    #[test]
    fn too_few_sections() {
        let g = pm("1+D+D^2,1+D^2");
        assert_eq!(build_tbgm(&g, 2), Err(Error::SectionLength { n: 2, need: 3 }));
        assert!(build_tbgm(&g, 3).is_ok());
    }

    #[test]
    fn natural_spans_of_six_sections() {
        let t = build_tbgm(&pm("1+D+D^2,1+D^2"), 6).unwrap();
        let got: Vec<String> = t.natural_spans().unwrap().iter().map(Span::to_string).collect();
        assert_eq!(got, ["(0, 5]", "(2, 7]", "(4, 9]", "(6, 11]", "(8, 1]", "(10, 3]"]);
    }

    #[test]
    fn rank_deficiency_is_reported_not_fatal() {
        let t = build_tbgm(&pm("1+D,1+D^2"), 4).unwrap();
        assert!(!t.is_full_rank());
        assert!(matches!(t.require_full_rank(), Err(Error::DegenerateTailBiting { .. })));
    }

    #[test]
    fn polymatrix_round_trip() {
        for (s, n) in [("1+D,D,1;D^2,1,1+D+D^2", 5), ("D^3,1+D", 5), ("1+D,D,1+D", 3)] {
            let g = pm(s);
            let t = build_tbgm(&g, n).unwrap();
            let spans = t.natural_spans().unwrap();
            let back = rows_to_polymatrix(t.matrix.rows(), &spans, g.ncols(), n).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn unstructured_rows_are_rejected() {
        let t = build_tbgm(&pm("1+D+D^2,1+D^2"), 5).unwrap();
        let spans = t.natural_spans().unwrap();
        let rows = &t.matrix.rows()[..4];
        assert!(matches!(
            rows_to_polymatrix(rows, &spans[..4], 2, 5),
            Err(Error::NotShiftStructured(_))
        ));
    }
}
