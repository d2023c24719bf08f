//! Brute-force ground truth: codeword enumeration, column shifts, tail-biting
//! trellises and minimal trellis-module profiles.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};
use crate::poly::PolyMatrix;

/// Largest dimension enumerated exhaustively.
pub const MAX_ENUMERATION_DIM: usize = 24;

/// Largest encoder state dimension turned into an explicit trellis.
pub const MAX_STATE_BITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSet {
    pub n: usize,
    pub words: BTreeSet<BinaryVector>,
}

impl CodeSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &BinaryVector) -> bool {
        self.words.contains(w)
    }
}

/// All `u · G` for a generator matrix of rank at most [`MAX_ENUMERATION_DIM`].
pub fn enumerate_code(g: &BinaryMatrix) -> Result<CodeSet> {
    let basis = g.rref().matrix;
    let k = basis.nrows();
    if k > MAX_ENUMERATION_DIM {
        return Err(Error::EnumerationBudget(format!(
            "2^{k} codewords exceeds the limit of 2^{MAX_ENUMERATION_DIM}"
        )));
    }
    let mut words = BTreeSet::new();
    let mut w = BinaryVector::zeros(g.ncols());
    words.insert(w.clone());
    for step in 1u64..(1u64 << k) {
        w.xor_assign(basis.row(step.trailing_zeros() as usize));
        words.insert(w.clone());
    }
    Ok(CodeSet { n: g.ncols(), words })
}

/// Moves output column j of every branch by `shifts[j]` branches, cyclically:
/// negative values shift left, positive right.
pub fn shift_word(w: &BinaryVector, shifts: &[i64], n0: usize) -> BinaryVector {
    let sections = w.len() / n0;
    let mut out = BinaryVector::zeros(w.len());
    for pos in w.ones() {
        let (t, j) = (pos / n0, pos % n0);
        let to = (t as i64 + shifts[j]).rem_euclid(sections as i64) as usize;
        out.set(to * n0 + j, true);
    }
    out
}

pub fn shift_code(c: &CodeSet, shifts: &[i64], n0: usize) -> Result<CodeSet> {
    if shifts.len() != n0 || !c.n.is_multiple_of(n0) {
        return Err(Error::Dimension(format!(
            "{} shifts for n0 = {n0} and length {}",
            shifts.len(),
            c.n
        )));
    }
    Ok(CodeSet {
        n: c.n,
        words: c.words.iter().map(|w| shift_word(w, shifts, n0)).collect(),
    })
}

/// Row-wise column shift of a scalar generator matrix; generates the shifted code.
pub fn shift_matrix(g: &BinaryMatrix, shifts: &[i64], n0: usize) -> BinaryMatrix {
    let rows = g.rows().iter().map(|r| shift_word(r, shifts, n0)).collect();
    BinaryMatrix::from_rows(g.ncols(), rows).expect("same width")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub input: u32,
    pub output: u32,
}

/// Time-invariant tail-biting trellis of the controller canonical realisation.
///
/// Input row i feeds a register of length ν_i; the state lists, row by row,
/// u_i(t−1), …, u_i(t−ν_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbTrellis {
    pub n0: usize,
    pub k0: usize,
    pub sections: usize,
    pub row_degrees: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl TbTrellis {
    pub fn state_bits(&self) -> usize {
        self.row_degrees.iter().sum()
    }

    pub fn num_states(&self) -> usize {
        1 << self.state_bits()
    }

    pub fn state_label(&self, s: usize) -> String {
        let nu = self.state_bits();
        (0..nu)
            .map(|p| if s >> (nu - 1 - p) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn output_bits(&self, output: u32) -> String {
        (0..self.n0)
            .map(|j| if output >> j & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    fn outgoing(&self, s: usize) -> &[Edge] {
        let per = 1usize << self.k0;
        &self.edges[s * per..(s + 1) * per]
    }

    /// Label sequences of all paths of N sections that end where they start.
    pub fn accepted_paths(&self) -> Result<CodeSet> {
        let budget = self.state_bits() + self.k0 * self.sections;
        if budget > MAX_ENUMERATION_DIM + 4 {
            return Err(Error::EnumerationBudget(format!("2^{budget} trellis paths")));
        }
        let n = self.n0 * self.sections;
        let mut words = BTreeSet::new();
        for start in 0..self.num_states() {
            let mut stack = vec![(start, 0usize, BinaryVector::zeros(n))];
            while let Some((s, t, w)) = stack.pop() {
                if t == self.sections {
                    if s == start {
                        words.insert(w);
                    }
                    continue;
                }
                for e in self.outgoing(s) {
                    let mut next = w.clone();
                    for j in 0..self.n0 {
                        if e.output >> j & 1 == 1 {
                            next.set(t * self.n0 + j, true);
                        }
                    }
                    stack.push((e.to, t + 1, next));
                }
            }
        }
        Ok(CodeSet { n, words })
    }

    /// A start state from which `w` is a tail-biting path, if any.
    pub fn accepts(&self, w: &BinaryVector) -> Option<usize> {
        if w.len() != self.n0 * self.sections {
            return None;
        }
        (0..self.num_states()).find(|&start| {
            let mut live = BTreeSet::from([start]);
            for t in 0..self.sections {
                let label: u32 = (0..self.n0).map(|j| (w.get(t * self.n0 + j) as u32) << j).sum();
                live = live
                    .iter()
                    .flat_map(|&s| self.outgoing(s).iter().filter(|e| e.output == label).map(|e| e.to))
                    .collect();
            }
            live.contains(&start)
        })
    }

    pub fn describe(&self) -> TrellisDescription {
        TrellisDescription {
            n0: self.n0,
            k0: self.k0,
            sections: self.sections,
            state_bits: self.state_bits(),
            states: (0..self.num_states()).map(|s| self.state_label(s)).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDescription {
                    from: self.state_label(e.from),
                    to: self.state_label(e.to),
                    input: (0..self.k0)
                        .map(|i| if e.input >> i & 1 == 1 { '1' } else { '0' })
                        .collect(),
                    output: self.output_bits(e.output),
                })
                .collect(),
        }
    }
}

/// Plot-ready trellis section: every section of a tail-biting trellis is identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrellisDescription {
    pub n0: usize,
    pub k0: usize,
    pub sections: usize,
    pub state_bits: usize,
    pub states: Vec<String>,
    pub edges: Vec<EdgeDescription>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDescription {
    pub from: String,
    pub to: String,
    pub input: String,
    pub output: String,
}

pub fn build_tb_trellis(g: &PolyMatrix, sections: usize) -> Result<TbTrellis> {
    let degrees = g.row_degrees();
    let nu: usize = degrees.iter().sum();
    if nu > MAX_STATE_BITS {
        return Err(Error::StateBudget(format!("2^{nu} states exceeds 2^{MAX_STATE_BITS}")));
    }
    if sections < g.memory() + 1 {
        return Err(Error::SectionLength {
            n: sections,
            need: g.memory() + 1,
        });
    }
    let (k0, n0) = (g.nrows(), g.ncols());
    // Bit offset of each row's register inside the state label, counted from the left.
    let offsets: Vec<usize> = degrees
        .iter()
        .scan(0, |acc, &d| Some(std::mem::replace(acc, *acc + d)))
        .collect();
    let get = |s: usize, pos: usize| s >> (nu - 1 - pos) & 1;
    let mut edges = Vec::with_capacity((1 << nu) << k0);
    for s in 0..1usize << nu {
        for input in 0..1u32 << k0 {
            let mut output = 0u32;
            for j in 0..n0 {
                let mut v = 0;
                for (i, &at) in offsets.iter().enumerate().take(k0) {
                    for m in g.get(i, j).terms() {
                        v ^= if m == 0 {
                            (input >> i & 1) as usize
                        } else {
                            get(s, at + m - 1)
                        };
                    }
                }
                output |= (v as u32) << j;
            }
            let mut to = 0usize;
            for i in 0..k0 {
                for p in 0..degrees[i] {
                    let bit = if p == 0 {
                        (input >> i & 1) as usize
                    } else {
                        get(s, offsets[i] + p - 1)
                    };
                    to |= bit << (nu - 1 - (offsets[i] + p));
                }
            }
            edges.push(Edge {
                from: s,
                to,
                input,
                output,
            });
        }
    }
    Ok(TbTrellis {
        n0,
        k0,
        sections,
        row_degrees: degrees,
        edges,
    })
}

/// The scalar generator matrix of the code terminated after `blocks` input blocks.
pub fn terminated_matrix(g: &PolyMatrix, blocks: usize) -> BinaryMatrix {
    let (k0, n0) = (g.nrows(), g.ncols());
    let width = (blocks + g.memory()) * n0;
    let mut rows = Vec::with_capacity(blocks * k0);
    for b in 0..blocks {
        for i in 0..k0 {
            let mut r = BinaryVector::zeros(width);
            for (c, p) in g.row(i).iter().enumerate() {
                for m in p.terms() {
                    r.set((b + m) * n0 + c, true);
                }
            }
            rows.push(r);
        }
    }
    BinaryMatrix::from_rows(width, rows).expect("consistent width")
}

/// State dimensions (V_0, …, V_{n0−1}) of the minimal trellis module.
///
/// Read off the minimal-span form of the code terminated after 2L + 1 blocks,
/// at a column block in the steady-state region.
pub fn state_profile(g: &PolyMatrix) -> Vec<usize> {
    let l = g.memory();
    let n0 = g.ncols();
    let msf = terminated_matrix(g, 2 * l + 1).minimal_span_form();
    let spans: Vec<(usize, usize)> = msf
        .rows()
        .iter()
        .map(|r| (r.first_one().expect("nonzero"), r.last_one().expect("nonzero")))
        .collect();
    let centre = (3 * l).div_ceil(2);
    (0..n0)
        .map(|i| {
            let t = centre * n0 + i;
            spans.iter().filter(|&&(a, b)| a < t && t <= b).count()
        })
        .collect()
}
