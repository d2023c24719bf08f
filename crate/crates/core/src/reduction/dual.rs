use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::Serialize;

use super::search::{preflight, select_candidate, verify_reduction, Rejection, SearchOptions};
use super::{Provenance, ReductionMode, ReductionReport, Verdict};
use crate::characteristic::{
    analyze_spans, characteristic_matrix, enumerate_local_variants, CharacteristicPair, SpanStructure, VariantMode,
};
use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::oracle::shift_matrix;
use crate::poly::{basic_equivalent, reciprocal_dual, Poly, PolyMatrix};
use crate::span::Span;
use crate::tbgm::build_tbgm;

/// Column shift suggested by a reciprocal dual encoder.
///
/// Every division `p_j ≤ f_j` of the columns of `h_tilde` is tried; the one
/// giving the smallest constraint length wins, ties going to the smallest
/// shift after centring on the median power. Returns the powers, the shift
/// `s_j = c − p_j` for the generator columns and the divided matrix.
pub fn dual_shift(h_tilde: &PolyMatrix) -> (Vec<usize>, Vec<i64>, PolyMatrix) {
    let factors: Vec<usize> = (0..h_tilde.ncols())
        .map(|j| h_tilde.column_monomial_factor(j))
        .collect();
    factors
        .iter()
        .map(|&f| 0..=f)
        .multi_cartesian_product()
        .map(|p| {
            let m = p
                .iter()
                .enumerate()
                .try_fold(h_tilde.clone(), |acc, (j, &pj)| acc.divide_column(j, pj))
                .expect("powers bounded by the column factors");
            let s = centred_shift(&p);
            let l1: u64 = s.iter().map(|x| x.unsigned_abs()).sum();
            (m.constraint_length(), l1, p, s, m)
        })
        .min_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)))
        .map(|(_, _, p, s, m)| (p, s, m))
        .expect("at least one division")
}

fn centred_shift(p: &[usize]) -> Vec<i64> {
    let mut sorted: Vec<i64> = p.iter().map(|&x| x as i64).collect();
    sorted.sort_unstable();
    let c = sorted[(sorted.len() - 1) / 2];
    p.iter().map(|&x| c - x as i64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// `g_dst += D^power g_src`.
    RowAdd {
        src: usize,
        dst: usize,
        power: usize,
    },
    DivideColumn {
        column: usize,
        power: usize,
    },
    MultiplyColumn {
        column: usize,
        power: usize,
    },
    /// Replacement by an equivalent basic encoder.
    Basic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    pub g: PolyMatrix,
    pub h: PolyMatrix,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            StepKind::RowAdd { src, dst, power } => format!("add D^{power} x row {src} to row {dst}"),
            StepKind::DivideColumn { column, power } => format!("divide column {column} by D^{power}"),
            StepKind::MultiplyColumn { column, power } => format!("multiply column {column} by D^{power}"),
            StepKind::Basic => "replace by a basic equivalent".to_string(),
        };
        write!(f, "{what:<34} G = {}  H = {}", self.g, self.h)
    }
}

/// A generator and check matrix reduced together, keeping `G · Hᵀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimultaneousReduction {
    pub steps: Vec<Step>,
    pub g: PolyMatrix,
    pub h: PolyMatrix,
    pub shift: Vec<i64>,
}

fn require_orthogonal(g: &PolyMatrix, h: &PolyMatrix, stage: &str) -> Result<()> {
    if g.mul_transpose(h)?.is_zero() {
        Ok(())
    } else {
        Err(Error::Orthogonality(format!("G and H are not orthogonal {stage}")))
    }
}

fn strip_row_factors(h: &mut PolyMatrix) {
    for i in 0..h.nrows() {
        let f = h.row_monomial_factor(i);
        if f > 0 {
            for j in 0..h.ncols() {
                let v = h.get(i, j).shr(f).expect("common factor");
                h.set(i, j, v);
            }
        }
    }
}

/// Row operations making the leading coefficients independent, where row i
/// leads at `d_i = max_j(deg g_ij + s_j)`.
fn weighted_row_reduce(
    g: &mut PolyMatrix,
    h: &PolyMatrix,
    shift: &[i64],
    sections: usize,
    steps: &mut Vec<Step>,
) -> Result<()> {
    let k0 = g.nrows();
    for _ in 0..64 * k0.max(1) {
        let lead = |g: &PolyMatrix, i: usize| -> Option<(i64, Vec<bool>)> {
            let d = (0..g.ncols())
                .filter_map(|j| g.get(i, j).degree().map(|e| e as i64 + shift[j]))
                .max()?;
            let coeffs = (0..g.ncols())
                .map(|j| {
                    let e = d - shift[j];
                    e >= 0 && g.get(i, j).coeff(e as usize)
                })
                .collect();
            Some((d, coeffs))
        };
        let mut order: Vec<(i64, usize, Vec<bool>)> = Vec::with_capacity(k0);
        for i in 0..k0 {
            let (d, c) = lead(g, i).ok_or_else(|| Error::RankDeficient(format!("row {i} became zero")))?;
            order.push((d, i, c));
        }
        order.sort_by_key(|(d, i, _)| (*d, *i));
        let mut basis: Vec<(Vec<bool>, Vec<bool>, usize)> = Vec::new();
        let mut op = None;
        for (d, i, c) in &order {
            let mut v = c.clone();
            let mut combo = vec![false; k0];
            combo[*i] = true;
            for (bv, bc, piv) in &basis {
                if v[*piv] {
                    v.iter_mut().zip(bv).for_each(|(x, y)| *x ^= y);
                    combo.iter_mut().zip(bc).for_each(|(x, y)| *x ^= y);
                }
            }
            match v.iter().position(|&x| x) {
                Some(piv) => basis.push((v, combo, piv)),
                None => {
                    op = Some((*d, *i, combo));
                    break;
                }
            }
        }
        let Some((d, dst, combo)) = op else {
            return Ok(());
        };
        for (src, _) in combo.iter().enumerate().filter(|(r, &x)| x && *r != dst) {
            let ds = order.iter().find(|(_, r, _)| *r == src).expect("row present").0;
            let power = (d - ds) as usize;
            *g = g.row_add(src, dst, power, sections)?;
            require_orthogonal(g, h, "after a row operation")?;
            steps.push(Step {
                kind: StepKind::RowAdd { src, dst, power },
                g: g.clone(),
                h: h.clone(),
            });
        }
    }
    Err(Error::StructureViolation("row reduction did not terminate".into()))
}

/// Reduces `g` and its check matrix `h` together along the column shift
/// suggested by `reciprocal_dual(h)`.
pub fn simultaneous_reduce(g: &PolyMatrix, h: &PolyMatrix, sections: usize) -> Result<SimultaneousReduction> {
    require_orthogonal(g, h, "on entry")?;
    let (_, shift, _) = dual_shift(&reciprocal_dual(h));
    let mut g = g.clone();
    let mut h = h.clone();
    let mut steps = Vec::new();

    weighted_row_reduce(&mut g, &h, &shift, sections, &mut steps)?;

    for (j, &s) in shift.iter().enumerate().filter(|(_, &s)| s < 0) {
        let power = s.unsigned_abs() as usize;
        g = g.divide_column(j, power)?;
        for i in 0..h.nrows() {
            h.set(i, j, h.get(i, j).shl(power));
        }
        strip_row_factors(&mut h);
        require_orthogonal(&g, &h, "after a column division")?;
        steps.push(Step {
            kind: StepKind::DivideColumn { column: j, power },
            g: g.clone(),
            h: h.clone(),
        });
    }

    for (j, &s) in shift.iter().enumerate().filter(|(_, &s)| s > 0) {
        let power = s as usize;
        g = g.multiply_column(j, power, sections)?;
        if h.column_monomial_factor(j) >= power || h.column(j).iter().all(Poly::is_zero) {
            h = h.divide_column(j, power)?;
        } else {
            for c in (0..h.ncols()).filter(|&c| c != j) {
                for i in 0..h.nrows() {
                    h.set(i, c, h.get(i, c).shl(power));
                }
            }
            strip_row_factors(&mut h);
        }
        require_orthogonal(&g, &h, "after a column multiplication")?;
        steps.push(Step {
            kind: StepKind::MultiplyColumn { column: j, power },
            g: g.clone(),
            h: h.clone(),
        });
    }

    let basic = basic_equivalent(&g)?;
    if basic != g {
        g = basic;
        require_orthogonal(&g, &h, "after the basic replacement")?;
        steps.push(Step {
            kind: StepKind::Basic,
            g: g.clone(),
            h: h.clone(),
        });
    }

    let zero = vec![0; g.ncols()];
    weighted_row_reduce(&mut g, &h, &zero, sections, &mut steps)?;
    Ok(SimultaneousReduction { steps, g, h, shift })
}

/// The six conditions under which independence of a dual selection implies
/// that the primal selection generates the code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DualSelectionCheck {
    pub primal_shift_structured: bool,
    pub primal_spans_minimal: bool,
    pub dual_independent: bool,
    pub dual_shift_structured: bool,
    pub dual_spans_minimal: bool,
    pub spans_complementary: bool,
    /// Rank k whenever all six conditions hold.
    pub concluded_rank: Option<usize>,
    /// Rank of the primal selection computed directly.
    pub direct_rank: usize,
}

impl DualSelectionCheck {
    pub fn all_hold(&self) -> bool {
        self.concluded_rank.is_some()
    }
}

fn selected(c: &CharacteristicPair, s: &SpanStructure, basic: &[usize]) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for &b in basic {
        for i in 0..c.sections {
            out.push(c.index_of(&s.basic[b].shift(i * c.n0, crate::gf2::Direction::Right))?);
        }
    }
    Some(out)
}

fn minimal_in(sel: &[Span], all: &[Span]) -> bool {
    sel.iter().all(|s| !all.iter().any(|t| s.includes(t)))
}

pub fn dual_selection_check(
    x: &CharacteristicPair,
    sx: &SpanStructure,
    x_basic: &[usize],
    y: &CharacteristicPair,
    sy: &SpanStructure,
    y_basic: &[usize],
) -> DualSelectionCheck {
    let k0 = sx.basic.len() - y_basic.len().min(sx.basic.len());
    let k = x.dimension;
    let xs = selected(x, sx, x_basic).unwrap_or_default();
    let ys = selected(y, sy, y_basic).unwrap_or_default();
    let s: Vec<Span> = xs.iter().map(|&i| x.spans[i]).collect();
    let s_hat: Vec<Span> = ys.iter().map(|&i| y.spans[i]).collect();
    let rank_of = |c: &CharacteristicPair, idx: &[usize]| {
        BinaryMatrix::from_rows(c.n(), idx.iter().map(|&i| c.rows[i].clone()).collect())
            .map(|m| m.rank())
            .unwrap_or(0)
    };
    let primal_shift_structured = x_basic.len() == k0 && xs.len() == k;
    let dual_shift_structured = ys.len() == x.n() - k;
    let dual_independent = dual_shift_structured && rank_of(y, &ys) == ys.len();
    let primal_set: BTreeSet<Span> = s.iter().copied().collect();
    let expected_hat: BTreeSet<Span> = y
        .spans
        .iter()
        .copied()
        .filter(|t| !primal_set.contains(&t.reversed()))
        .collect();
    let spans_complementary = expected_hat == s_hat.iter().copied().collect();
    let primal_spans_minimal = minimal_in(&s, &x.spans);
    let dual_spans_minimal = minimal_in(&s_hat, &y.spans);
    let all = primal_shift_structured
        && primal_spans_minimal
        && dual_independent
        && dual_shift_structured
        && dual_spans_minimal
        && spans_complementary;
    DualSelectionCheck {
        primal_shift_structured,
        primal_spans_minimal,
        dual_independent,
        dual_shift_structured,
        dual_spans_minimal,
        spans_complementary,
        concluded_rank: all.then_some(k),
        direct_rank: rank_of(x, &xs),
    }
}

/// One shift-structured choice of dual characteristic generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualSelection {
    pub variant: u64,
    pub basic: Vec<usize>,
    pub basic_spans: Vec<Span>,
    pub h_tilde_prime: Option<PolyMatrix>,
    pub rejection: Option<Rejection>,
    /// Primal basic spans paired through span reversal.
    pub primal_basic_spans: Vec<Span>,
    pub primal_variant: Option<u64>,
    pub g_prime: Option<PolyMatrix>,
    pub check: Option<DualSelectionCheck>,
    pub reduction: Option<SimultaneousReduction>,
    pub verdict: Option<Verdict>,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DualOutcome {
    pub check_matrix: PolyMatrix,
    pub reciprocal: PolyMatrix,
    pub characteristic: CharacteristicPair,
    pub structure: SpanStructure,
    pub primal: CharacteristicPair,
    pub primal_structure: SpanStructure,
    /// Whether the dual span list is the primal list with every span reversed.
    pub reversed_spans_match: bool,
    pub selections: Vec<DualSelection>,
    pub report: Option<ReductionReport>,
}

/// Simultaneously reduces `g_prime` with the check matrix of `h_tilde_prime`
/// and verifies the result against `original`.
pub fn dual_reduce(
    original: &PolyMatrix,
    g_prime: &PolyMatrix,
    h_tilde_prime: &PolyMatrix,
    sections: usize,
) -> Result<(SimultaneousReduction, Verdict)> {
    let h_prime = reciprocal_dual(h_tilde_prime);
    let red = simultaneous_reduce(g_prime, &h_prime, sections)?;
    let (verdict, _) = verify_reduction(original, &red.g, &red.shift, sections)?;
    Ok((red, verdict))
}

/// Searches dual characteristic matrices for a check-matrix selection whose
/// reciprocal suggests a column shift, pairs it with the complementary primal
/// selection and reduces both together.
pub fn dual_procedure(g: &PolyMatrix, sections: usize, opts: &SearchOptions) -> Result<DualOutcome> {
    let h =
        preflight(g, sections)?.ok_or_else(|| Error::Dimension("a rate-one code has no dual to work with".into()))?;
    let (k0, n0) = (g.nrows(), g.ncols());
    let nu = g.constraint_length();
    let h_tilde = reciprocal_dual(&h);
    let gt = build_tbgm(g, sections)?;
    let ht = build_tbgm(&h_tilde, sections)?;
    if !gt.matrix.mul_transpose(&ht.matrix)?.is_zero() || gt.rank() + ht.rank() != gt.n() {
        return Err(Error::Orthogonality(
            "the reciprocal dual does not generate the dual tail-biting code".into(),
        ));
    }
    let x = characteristic_matrix(&gt)?;
    let sx = analyze_spans(&x)?;
    let y = characteristic_matrix(&ht)?;
    let sy = analyze_spans(&y)?;
    let reversed: BTreeSet<Span> = x.spans.iter().map(Span::reversed).collect();
    let reversed_spans_match = reversed == y.span_set();

    let subsets: Vec<Vec<usize>> = (0..n0).combinations(n0 - k0).collect();
    let mut jobs: Vec<(u64, usize, Option<CharacteristicPair>)> = Vec::new();
    let mut over_budget = Vec::new();
    for (at, basic) in subsets.iter().enumerate() {
        match enumerate_local_variants(&y, &sy, VariantMode::ShiftSymmetric, basic, opts.max_variant_bits) {
            Ok(vs) => jobs.extend(vs.map(|v| (v.index, at, Some(v.pair)))),
            Err(Error::EnumerationBudget(msg)) => over_budget.push((at, msg)),
            Err(e) => return Err(e),
        }
    }
    jobs.sort_by_key(|(v, at, _)| (*v, *at));
    let mut selections = Vec::new();
    let mut best: Option<((usize, usize, u64, usize), ReductionReport)> = None;

    for (at, msg) in over_budget {
        let y_basic = &subsets[at];
        selections.push(DualSelection {
            variant: 0,
            basic: y_basic.clone(),
            basic_spans: y_basic.iter().map(|&b| sy.basic[b]).collect(),
            h_tilde_prime: None,
            rejection: Some(Rejection::Budget(msg)),
            primal_basic_spans: Vec::new(),
            primal_variant: None,
            g_prime: None,
            check: None,
            reduction: None,
            verdict: None,
            note: None,
        });
    }
    for (y_index, at, y_pair) in &jobs {
        let y_pair = y_pair.as_ref().expect("only enumerated selections are queued");
        let y_basic = subsets[*at].clone();
        {
            let mut sel = DualSelection {
                variant: *y_index,
                basic: y_basic.clone(),
                basic_spans: y_basic.iter().map(|&b| sy.basic[b]).collect(),
                h_tilde_prime: None,
                rejection: None,
                primal_basic_spans: Vec::new(),
                primal_variant: None,
                g_prime: None,
                check: None,
                reduction: None,
                verdict: None,
                note: None,
            };
            let cand = match select_candidate(y_pair, &sy, &ht.matrix, &y_basic) {
                Ok(c) => c,
                Err(r) => {
                    sel.rejection = Some(r);
                    selections.push(sel);
                    continue;
                }
            };
            sel.h_tilde_prime = Some(cand.g_prime.clone());
            let excluded: BTreeSet<Span> = cand.spans.iter().map(Span::reversed).collect();
            let x_basic: Vec<usize> = (0..n0).filter(|&b| !excluded.contains(&sx.basic[b])).collect();
            sel.primal_basic_spans = x_basic.iter().map(|&b| sx.basic[b]).collect();
            if x_basic.len() != k0 {
                sel.note = Some(format!("complement has {} basic spans, need {k0}", x_basic.len()));
                selections.push(sel);
                continue;
            }
            let h_prime = reciprocal_dual(&cand.g_prime);
            let x_variants =
                match enumerate_local_variants(&x, &sx, VariantMode::ShiftSymmetric, &x_basic, opts.max_variant_bits) {
                    Ok(vs) => vs,
                    Err(Error::EnumerationBudget(msg)) => {
                        sel.note = Some(msg);
                        selections.push(sel);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
            let paired = x_variants.into_iter().find_map(|xv| {
                let c = select_candidate(&xv.pair, &sx, &gt.matrix, &x_basic).ok()?;
                let orthogonal = c.g_prime.mul_transpose(&h_prime).ok()?.is_zero();
                orthogonal.then_some((xv, c))
            });
            let Some((xv, xc)) = paired else {
                sel.note = Some("no primal variant pairs with this selection".into());
                selections.push(sel);
                continue;
            };
            sel.primal_variant = Some(xv.index);
            sel.g_prime = Some(xc.g_prime.clone());
            sel.check = Some(dual_selection_check(&xv.pair, &sx, &x_basic, y_pair, &sy, &y_basic));
            let reduced = simultaneous_reduce(&xc.g_prime, &reciprocal_dual(&cand.g_prime), sections).and_then(|red| {
                let a = shift_matrix(&gt.matrix, &red.shift, n0);
                let b = build_tbgm(&red.g, sections)?.matrix;
                let verdict = if a.row_space_equal(&b) {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                };
                Ok((red, verdict))
            });
            match reduced {
                Err(e) => sel.note = Some(e.to_string()),
                Ok((red, verdict)) => {
                    let nu_reduced = red.g.constraint_length();
                    if verdict == Verdict::Pass && nu_reduced < nu {
                        let key = (
                            nu_reduced,
                            red.shift.iter().filter(|&&s| s != 0).count(),
                            red.shift.iter().map(|s| s.unsigned_abs()).sum::<u64>(),
                            selections.len(),
                        );
                        if best.as_ref().is_none_or(|(b, _)| key < *b) {
                            let (_, method) = verify_reduction(g, &red.g, &red.shift, sections)?;
                            let report = ReductionReport {
                                original: g.clone(),
                                original_octal: g.to_octal(),
                                sections,
                                nu,
                                reduced: red.g.clone(),
                                reduced_octal: red.g.to_octal(),
                                nu_reduced,
                                shift_vector: red.shift.clone(),
                                mode: ReductionMode::DualAssisted,
                                provenance: Provenance {
                                    variant: xv.index,
                                    basic: x_basic.clone(),
                                    basic_spans: sel.primal_basic_spans.clone(),
                                    g_prime: xc.g_prime.clone(),
                                    nu_prime: xc.g_prime.constraint_length(),
                                },
                                verification: verdict,
                                verified_by: method,
                            };
                            best = Some((key, report));
                        }
                    } else if verdict == Verdict::Fail {
                        sel.note = Some("reduced encoder does not generate the shifted code".into());
                    }
                    sel.verdict = Some(verdict);
                    sel.reduction = Some(red);
                }
            }
            selections.push(sel);
        }
    }

    Ok(DualOutcome {
        check_matrix: h,
        reciprocal: h_tilde,
        characteristic: y,
        structure: sy,
        primal: x,
        primal_structure: sx,
        reversed_spans_match,
        selections,
        report: best.map(|(_, r)| r),
    })
}
