//! Characteristic generators of a tail-biting code and the structure of their spans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{render_row, BinaryMatrix, BinaryVector, Direction};
use crate::span::Span;
use crate::tbgm::Tbgm;

/// The minimal-span basis of σ_j(C), kept both in its own frame and rotated back.
#[derive(Debug, Clone)]
pub struct ShiftedBasis {
    pub shift: usize,
    /// X_j*: rows of the minimal-span form of σ_j(G^{tb}).
    pub frame_rows: Vec<BinaryVector>,
    /// Conventional spans of `frame_rows`.
    pub frame_spans: Vec<Span>,
    /// X̃_j = ρ_j(X_j*).
    pub rows: Vec<BinaryVector>,
    pub spans: Vec<Span>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Assembly {
    /// Every characteristic span already occurs among the shifts of X_0*.
    ShiftsOfFirstFrame,
    /// Union of all frames j < n0 and all block shifts.
    AllFrames,
}

/// n generators with spans, sorted by span start.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacteristicPair {
    pub rows: Vec<BinaryVector>,
    pub spans: Vec<Span>,
    pub n0: usize,
    pub sections: usize,
    /// Dimension of the code the rows generate.
    pub dimension: usize,
    pub assembly: Assembly,
}

impl CharacteristicPair {
    pub fn n(&self) -> usize {
        self.n0 * self.sections
    }

    pub fn matrix(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.n(), self.rows.clone()).expect("rows have length n")
    }

    pub fn index_of(&self, span: &Span) -> Option<usize> {
        self.spans.iter().position(|s| s == span)
    }

    pub fn span_set(&self) -> BTreeSet<Span> {
        self.spans.iter().copied().collect()
    }
}

impl fmt::Display for CharacteristicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.n() + self.sections.saturating_sub(1);
        for (r, s) in self.rows.iter().zip(&self.spans) {
            writeln!(f, "{:<width$}  {:>10}", render_row(r, self.n0), s.to_string())?;
        }
        Ok(())
    }
}

fn frame_span(row: &BinaryVector, n: usize) -> Result<Span> {
    let a = row
        .first_one()
        .ok_or_else(|| Error::RankDeficient("zero row in minimal-span form".into()))?;
    Span::new(a, row.last_one().expect("nonzero row"), n)
}

/// X_j* for every j < n0, each with its rotated copy X̃_j.
pub fn compute_msf_bases(t: &Tbgm) -> Result<Vec<ShiftedBasis>> {
    t.require_full_support()?;
    let n = t.n();
    (0..t.n0)
        .map(|j| {
            let x = t.matrix.cyclic_shift(j, Direction::Left).minimal_span_form();
            let frame_rows = x.into_rows();
            let frame_spans = frame_rows
                .iter()
                .map(|r| frame_span(r, n))
                .collect::<Result<Vec<_>>>()?;
            let rows = frame_rows.iter().map(|r| r.rotate(j, Direction::Right)).collect();
            let spans = frame_spans.iter().map(|s| s.shift(j, Direction::Right)).collect();
            Ok(ShiftedBasis {
                shift: j,
                frame_rows,
                frame_spans,
                rows,
                spans,
            })
        })
        .collect()
}

/// Collapses the shifted bases into one generator per span start.
///
/// Candidates are produced shift by shift (ρ_{i·n0} for i = 0, 1, …) and within
/// a shift frame by frame; the first generator seen for a span is kept for the
/// spans starting in block 0, and the remaining rows are their block rotations.
pub fn assemble_characteristic(bases: &[ShiftedBasis], n0: usize, sections: usize) -> Result<CharacteristicPair> {
    let first = bases
        .first()
        .ok_or_else(|| Error::Dimension("no bases to assemble".into()))?;
    let n = n0 * sections;
    let dimension = first.rows.len();

    let shifted = |frames: &[&ShiftedBasis]| -> BTreeMap<Span, BinaryVector> {
        let mut kept = BTreeMap::new();
        for i in 0..sections {
            for b in frames {
                for (r, s) in b.rows.iter().zip(&b.spans) {
                    kept.entry(s.shift(i * n0, Direction::Right))
                        .or_insert_with(|| r.rotate(i * n0, Direction::Right));
                }
            }
        }
        kept
    };

    let all: Vec<&ShiftedBasis> = bases.iter().collect();
    let everything = shifted(&all);
    let from_first = shifted(&[first]);
    let two_shifts: BTreeSet<Span> = first
        .spans
        .iter()
        .flat_map(|s| [*s, s.shift(n0, Direction::Right)])
        .collect();
    let corollary = bases.iter().flat_map(|b| &b.spans).all(|s| two_shifts.contains(s));

    let (kept, assembly) = if corollary {
        (from_first, Assembly::ShiftsOfFirstFrame)
    } else {
        (everything.clone(), Assembly::AllFrames)
    };

    let block0: Vec<(Span, BinaryVector)> = kept
        .iter()
        .filter(|(s, _)| s.start() < n0)
        .map(|(s, r)| (*s, r.clone()))
        .collect();
    let mut pairs: Vec<(Span, BinaryVector)> = (0..sections)
        .flat_map(|i| {
            block0
                .iter()
                .map(move |(s, r)| (s.shift(i * n0, Direction::Right), r.rotate(i * n0, Direction::Right)))
        })
        .collect();
    pairs.sort_by_key(|(s, _)| (s.start(), s.end()));

    let got: BTreeSet<Span> = pairs.iter().map(|(s, _)| *s).collect();
    let want: BTreeSet<Span> = everything.keys().copied().collect();
    if got != want || pairs.len() != n {
        return Err(Error::StructureViolation(format!(
            "expected {n} characteristic spans closed under block shifts, found {} distinct spans",
            want.len()
        )));
    }
    let starts: BTreeSet<usize> = pairs.iter().map(|(s, _)| s.start()).collect();
    if starts.len() != n {
        return Err(Error::StructureViolation(
            "characteristic span starts are not distinct".into(),
        ));
    }
    let (spans, rows) = pairs.into_iter().unzip();
    Ok(CharacteristicPair {
        rows,
        spans,
        n0,
        sections,
        dimension,
        assembly,
    })
}

/// MSF bases plus assembly, after checking rank and support.
pub fn characteristic_matrix(t: &Tbgm) -> Result<CharacteristicPair> {
    t.require_full_rank()?;
    let bases = compute_msf_bases(t)?;
    assemble_characteristic(&bases, t.n0, t.sections)
}

/// Outcome of the four defining checks of a characteristic matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CharacteristicCheck {
    /// The rows generate the code.
    pub generates: bool,
    /// Each span covers its row's support and both endpoints are nonzero.
    pub spans_fit_rows: bool,
    /// Starts are pairwise distinct, and so are ends.
    pub distinct_endpoints: bool,
    /// Every position lies in exactly n − k spans.
    pub uniform_coverage: bool,
}

impl CharacteristicCheck {
    pub fn passed(&self) -> bool {
        self.generates && self.spans_fit_rows && self.distinct_endpoints && self.uniform_coverage
    }
}

pub fn verify_characteristic(c: &CharacteristicPair, code: &BinaryMatrix) -> CharacteristicCheck {
    let n = c.n();
    let generates = c.rows.len() == c.spans.len() && c.matrix().row_space_equal(code);
    let spans_fit_rows = c
        .rows
        .iter()
        .zip(&c.spans)
        .all(|(r, s)| r.len() == n && r.get(s.start()) && r.get(s.end()) && r.ones().all(|j| s.closed_contains(j)));
    let starts: BTreeSet<usize> = c.spans.iter().map(Span::start).collect();
    let ends: BTreeSet<usize> = c.spans.iter().map(Span::end).collect();
    let distinct_endpoints = starts.len() == c.spans.len() && ends.len() == c.spans.len();
    let k = code.rank();
    let uniform_coverage = (0..n).all(|j| c.spans.iter().filter(|s| s.contains(j)).count() == n - k);
    CharacteristicCheck {
        generates,
        spans_fit_rows,
        distinct_endpoints,
        uniform_coverage,
    }
}

/// Basic spans, their inclusion sets and the derived counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanStructure {
    /// T0, by start.
    pub basic: Vec<Span>,
    /// Row index in the characteristic pair of each basic span.
    pub basic_rows: Vec<usize>,
    /// Θ_i: rows whose spans lie strictly inside basic span i.
    pub included: Vec<Vec<usize>>,
    pub theta: usize,
    pub sections: usize,
    /// Sum of the lengths of the basic spans.
    pub ell: usize,
    /// n0((n0 − k0)N + 1).
    pub ell_expected: usize,
}

impl SpanStructure {
    /// log2 of the number of characteristic matrices, θN.
    pub fn variant_exponent(&self) -> usize {
        self.theta * self.sections
    }

    pub fn variant_count(&self) -> Option<u128> {
        1u128.checked_shl(self.variant_exponent() as u32)
    }
}

pub fn included_rows(c: &CharacteristicPair, outer: &Span) -> Vec<usize> {
    (0..c.spans.len()).filter(|&r| outer.includes(&c.spans[r])).collect()
}

pub fn analyze_spans(c: &CharacteristicPair) -> Result<SpanStructure> {
    let n0 = c.n0;
    let n = c.n();
    let basic_rows: Vec<usize> = (0..c.spans.len()).filter(|&i| c.spans[i].start() < n0).collect();
    let basic: Vec<Span> = basic_rows.iter().map(|&i| c.spans[i]).collect();
    if basic.len() != n0 {
        return Err(Error::StructureViolation(format!(
            "{} basic spans, expected {n0}",
            basic.len()
        )));
    }
    let generated: BTreeSet<Span> = (0..c.sections)
        .flat_map(|i| basic.iter().map(move |s| s.shift(i * n0, Direction::Right)))
        .collect();
    if generated != c.span_set() {
        return Err(Error::StructureViolation(
            "span list is not the block rotations of the basic spans".into(),
        ));
    }
    let k0 = c.dimension / c.sections;
    if k0 * c.sections != c.dimension {
        return Err(Error::StructureViolation(format!(
            "code dimension {} is not a multiple of N = {}",
            c.dimension, c.sections
        )));
    }
    let total: usize = c.spans.iter().map(|s| s.length() - 1).sum();
    if total != n * (n - c.dimension) {
        return Err(Error::StructureViolation(format!(
            "span lengths sum to {total}, expected n(n-k) = {}",
            n * (n - c.dimension)
        )));
    }
    let included: Vec<Vec<usize>> = basic.iter().map(|s| included_rows(c, s)).collect();
    let theta = included.iter().map(Vec::len).sum();
    let ell = basic.iter().map(Span::length).sum();
    let ell_expected = n0 * ((n0 - k0) * c.sections + 1);
    if ell != ell_expected {
        return Err(Error::StructureViolation(format!(
            "basic spans have total length {ell}, expected {ell_expected}"
        )));
    }
    Ok(SpanStructure {
        basic,
        basic_rows,
        included,
        theta,
        sections: c.sections,
        ell,
        ell_expected,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VariantMode {
    /// The same subset choice in every block: 2^θ matrices.
    ShiftSymmetric,
    /// Independent choices for every row: 2^{θN} matrices.
    Full,
}

/// One characteristic matrix obtained by adding included generators.
#[derive(Debug, Clone)]
pub struct Variant {
    pub index: u64,
    /// For each modified row, the rows added to it.
    pub additions: Vec<(usize, Vec<usize>)>,
    pub pair: CharacteristicPair,
}

/// Choice slots in global bit order: the row modified, the rows that may be
/// added to it and the position of its first bit in the variant index.
fn variant_slots(c: &CharacteristicPair, s: &SpanStructure, mode: VariantMode) -> Vec<(usize, Vec<usize>, usize)> {
    let slots: Vec<(usize, Vec<usize>)> = match mode {
        VariantMode::ShiftSymmetric => s.basic_rows.iter().copied().zip(s.included.iter().cloned()).collect(),
        VariantMode::Full => (0..c.spans.len()).map(|l| (l, included_rows(c, &c.spans[l]))).collect(),
    };
    let mut offset = 0;
    slots
        .into_iter()
        .map(|(l, inc)| {
            let at = offset;
            offset += inc.len();
            (l, inc, at)
        })
        .collect()
}

fn variants_over<'a>(
    c: &'a CharacteristicPair,
    mode: VariantMode,
    slots: Vec<(usize, Vec<usize>, usize)>,
) -> impl Iterator<Item = Variant> + 'a {
    let bits: usize = slots.iter().map(|(_, v, _)| v.len()).sum();
    let n0 = c.n0;
    (0..1u64 << bits).map(move |mask| {
        let mut pair = c.clone();
        let mut additions = Vec::new();
        let mut index = 0u64;
        let mut bit = 0;
        for (l, inc, at) in &slots {
            let chosen: Vec<usize> = inc
                .iter()
                .enumerate()
                .filter(|(t, _)| mask >> (bit + t) & 1 == 1)
                .map(|(t, &r)| {
                    index |= 1 << (at + t);
                    r
                })
                .collect();
            bit += inc.len();
            if chosen.is_empty() {
                continue;
            }
            let copies = match mode {
                VariantMode::ShiftSymmetric => c.sections,
                VariantMode::Full => 1,
            };
            for i in 0..copies {
                let sh = |idx: usize| {
                    let span = c.spans[idx].shift(i * n0, Direction::Right);
                    c.index_of(&span).expect("span list is closed under block shifts")
                };
                let target = sh(*l);
                let mut row = c.rows[target].clone();
                for &r in &chosen {
                    row.xor_assign(&c.rows[sh(r)]);
                }
                pair.rows[target] = row;
            }
            additions.push((*l, chosen));
        }
        Variant { index, additions, pair }
    })
}

/// Lazily enumerates characteristic matrices in order of the choice mask; index 0 is `c` itself.
pub fn enumerate_variants<'a>(
    c: &'a CharacteristicPair,
    s: &SpanStructure,
    mode: VariantMode,
) -> Result<impl Iterator<Item = Variant> + 'a> {
    let slots = variant_slots(c, s, mode);
    let bits: usize = slots.iter().map(|(_, v, _)| v.len()).sum();
    if bits >= 63 {
        return Err(Error::EnumerationBudget(format!("2^{bits} variants")));
    }
    Ok(variants_over(c, mode, slots))
}

/// The variants that differ in the rows spanned by the chosen basic spans or
/// their block shifts; every other choice leaves those rows unchanged.
/// Indices are those of [`enumerate_variants`].
pub fn enumerate_local_variants<'a>(
    c: &'a CharacteristicPair,
    s: &SpanStructure,
    mode: VariantMode,
    basic: &[usize],
    max_bits: usize,
) -> Result<impl Iterator<Item = Variant> + 'a> {
    let slots = variant_slots(c, s, mode);
    let total: usize = slots.iter().map(|(_, v, _)| v.len()).sum();
    if total >= 63 {
        return Err(Error::EnumerationBudget(format!("2^{total} variants")));
    }
    let wanted: BTreeSet<Span> = basic
        .iter()
        .flat_map(|&b| (0..c.sections).map(move |i| s.basic[b].shift(i * c.n0, Direction::Right)))
        .collect();
    let slots: Vec<_> = slots
        .into_iter()
        .filter(|(l, inc, _)| !inc.is_empty() && wanted.contains(&c.spans[*l]))
        .collect();
    let bits: usize = slots.iter().map(|(_, v, _)| v.len()).sum();
    if bits > max_bits {
        return Err(Error::EnumerationBudget(format!(
            "2^{bits} variants for the chosen basic spans exceed 2^{max_bits}"
        )));
    }
    Ok(variants_over(c, mode, slots))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolyMatrix;
    use crate::tbgm::build_tbgm;

    fn tb(s: &str, n: usize) -> Tbgm {
        build_tbgm(&PolyMatrix::parse(s).unwrap(), n).unwrap()
    }

    fn spans(v: &[Span]) -> Vec<String> {
        v.iter().map(Span::to_string).collect()
    }

    fn bits(v: &[BinaryVector]) -> Vec<String> {
        v.iter().map(BinaryVector::to_string).collect()
    }

    #[test]
    fn example_one_frames() {
        let t = tb("1+D,D,1+D", 3);
        let b = compute_msf_bases(&t).unwrap();
        assert_eq!(bits(&b[0].rows), ["101111000", "010010010", "000101111"]);
        assert_eq!(spans(&b[0].spans), ["(0, 5]", "(1, 7]", "(3, 8]"]);
        assert_eq!(spans(&b[1].spans), ["(1, 7]", "(2, 0]", "(3, 8]"]);
        assert_eq!(bits(&b[1].rows), ["010010010", "101111000", "000101111"]);
        let mut s2 = spans(&b[2].spans);
        s2.sort();
        assert_eq!(s2, ["(2, 0]", "(3, 8]", "(4, 1]"]);
    }

    #[test]
    fn example_one_assembly() {
        let t = tb("1+D,D,1+D", 3);
        let c = characteristic_matrix(&t).unwrap();
        assert_eq!(c.assembly, Assembly::AllFrames);
        assert_eq!(
            spans(&c.spans),
            ["(0, 5]", "(1, 7]", "(2, 0]", "(3, 8]", "(4, 1]", "(5, 3]", "(6, 2]", "(7, 4]", "(8, 6]"]
        );
        assert_eq!(
            bits(&c.rows),
            [
                "101111000",
                "010010010",
                "101111000",
                "000101111",
                "010010010",
                "000101111",
                "111000101",
                "010010010",
                "111000101"
            ]
        );
        assert!(verify_characteristic(&c, &t.matrix).passed());
    }

    #[test]
    fn swapped_spans_fail_the_fit_check() {
        let t = tb("1+D,D,1+D", 3);
        let mut c = characteristic_matrix(&t).unwrap();
        c.spans.swap(0, 1);
        let chk = verify_characteristic(&c, &t.matrix);
        assert!(!chk.spans_fit_rows);
        assert!(chk.generates && chk.distinct_endpoints && chk.uniform_coverage);
    }

    #[test]
    fn example_two_structure() {
        let t = tb("1+D,D,1+D;D,1,1", 3);
        let c = characteristic_matrix(&t).unwrap();
        assert_eq!(
            spans(&c.spans),
            ["(0, 4]", "(1, 3]", "(2, 5]", "(3, 7]", "(4, 6]", "(5, 8]", "(6, 1]", "(7, 0]", "(8, 2]"]
        );
        assert!(verify_characteristic(&c, &t.matrix).passed());
        let s = analyze_spans(&c).unwrap();
        assert_eq!(spans(&s.basic), ["(0, 4]", "(1, 3]", "(2, 5]"]);
        assert_eq!(s.included, vec![vec![1], vec![], vec![]]);
        assert_eq!(s.theta, 1);
        assert_eq!(s.variant_count(), Some(8));
        assert_eq!((s.ell, s.ell_expected), (12, 12));
    }

    #[test]
    fn variant_counts() {
        let t = tb("1+D,D,1+D;D,1,1", 3);
        let c = characteristic_matrix(&t).unwrap();
        let s = analyze_spans(&c).unwrap();
        let sym: Vec<Variant> = enumerate_variants(&c, &s, VariantMode::ShiftSymmetric)
            .unwrap()
            .collect();
        assert_eq!(sym.len(), 2);
        assert_eq!(sym[0].pair, c);
        let full: Vec<Variant> = enumerate_variants(&c, &s, VariantMode::Full).unwrap().collect();
        assert_eq!(full.len(), 8);
        let distinct: BTreeSet<Vec<BinaryVector>> = full.iter().map(|v| v.pair.rows.clone()).collect();
        assert_eq!(distinct.len(), 8);
        for v in &full {
            assert!(verify_characteristic(&v.pair, &t.matrix).passed());
        }
    }

    #[test]
    fn five_section_matrix_uses_first_frame() {
        let t = tb("1+D+D^2,1+D^2", 5);
        let c = characteristic_matrix(&t).unwrap();
        let want = [
            "1110110000",
            "0101001000",
            "0011101100",
            "0001010010",
            "0000111011",
            "1000010100",
            "1100001110",
            "0010000101",
            "1011000011",
            "0100100001",
        ];
        assert_eq!(bits(&c.rows), want);
        for (i, s) in c.spans.iter().enumerate() {
            assert_eq!((s.start(), s.end()), (i, (i + 5) % 10));
        }
        assert!(verify_characteristic(&c, &t.matrix).passed());
    }

    #[test]
    fn rejects_codes_without_full_support() {
        let t = tb("1+D+D^3,0", 4);
        assert!(matches!(characteristic_matrix(&t), Err(Error::NotFullSupport(_))));
    }
}
