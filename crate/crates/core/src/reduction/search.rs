use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    section_bound, BoundCheck, DivisionMode, Provenance, ReductionMode, ReductionReport, Verdict, VerificationMethod,
};
use crate::characteristic::{
    analyze_spans, characteristic_matrix, enumerate_local_variants, CharacteristicPair, SpanStructure, VariantMode,
};
use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector, Direction};
use crate::oracle::{enumerate_code, shift_code, shift_matrix, state_profile, MAX_ENUMERATION_DIM};
use crate::poly::{compute_check_matrix, validate_canonical, PolyMatrix};
use crate::span::Span;
use crate::tbgm::{build_tbgm, rows_to_polymatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub variants: VariantMode,
    pub division: DivisionMode,
    /// Worker threads for candidate evaluation; results do not depend on it.
    pub jobs: usize,
    /// Largest number of inclusion choices enumerated for one set of basic spans.
    pub max_variant_bits: usize,
}

pub const DEFAULT_VARIANT_BITS: usize = 12;

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            variants: VariantMode::ShiftSymmetric,
            division: DivisionMode::PerPower,
            jobs: 1,
            max_variant_bits: DEFAULT_VARIANT_BITS,
        }
    }
}

/// A shift-structured selection of characteristic generators and its encoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub basic: Vec<usize>,
    pub rows: Vec<BinaryVector>,
    pub spans: Vec<Span>,
    pub g_prime: PolyMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Rejection {
    RankDeficient {
        rank: usize,
        expected: usize,
    },
    NotEquivalent,
    Structure(String),
    /// Too many inclusion choices to enumerate.
    Budget(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Rejected(Rejection),
    /// Accepted, but neither G′(D) nor any column division beats ν.
    NoReduction {
        g_prime: PolyMatrix,
        nu_prime: usize,
        best_nu: usize,
    },
    Reduced {
        g_prime: PolyMatrix,
        nu_prime: usize,
        reduced: PolyMatrix,
        nu_reduced: usize,
        shift: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRecord {
    pub variant: u64,
    pub basic: Vec<usize>,
    pub basic_spans: Vec<Span>,
    pub outcome: Outcome,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub report: Option<ReductionReport>,
    pub records: Vec<CandidateRecord>,
    pub characteristic: CharacteristicPair,
    pub structure: SpanStructure,
    pub bound: BoundCheck,
}

/// Rows of `c` whose spans are the chosen basic spans and all their block shifts.
pub fn select_candidate(
    c: &CharacteristicPair,
    s: &SpanStructure,
    code: &BinaryMatrix,
    basic: &[usize],
) -> std::result::Result<Candidate, Rejection> {
    let n0 = c.n0;
    let mut picked: Vec<(Span, BinaryVector)> = Vec::new();
    for &b in basic {
        for i in 0..c.sections {
            let span = s.basic[b].shift(i * n0, Direction::Right);
            let idx = c
                .index_of(&span)
                .ok_or_else(|| Rejection::Structure(format!("span {span} missing from the characteristic list")))?;
            picked.push((span, c.rows[idx].clone()));
        }
    }
    picked.sort_by_key(|(s, _)| s.start());
    let (spans, rows): (Vec<Span>, Vec<BinaryVector>) = picked.into_iter().unzip();
    let m = BinaryMatrix::from_rows(c.n(), rows.clone()).map_err(|e| Rejection::Structure(e.to_string()))?;
    let rank = m.rank();
    if rank != code.rank() {
        return Err(Rejection::RankDeficient {
            rank,
            expected: code.rank(),
        });
    }
    if !m.row_space_equal(code) {
        return Err(Rejection::NotEquivalent);
    }
    let g_prime = rows_to_polymatrix(&rows, &spans, n0, c.sections).map_err(|e| Rejection::Structure(e.to_string()))?;
    Ok(Candidate {
        basic: basic.to_vec(),
        rows,
        spans,
        g_prime,
    })
}

/// Column divisions of `g` by D^{p_j}, 0 ≤ p_j ≤ f_j, ranked by resulting ν,
/// then total power, then lexicographically.
pub(crate) fn best_division(g: &PolyMatrix, mode: DivisionMode) -> (Vec<usize>, PolyMatrix) {
    let factors: Vec<usize> = (0..g.ncols()).map(|j| g.column_monomial_factor(j)).collect();
    let divide = |p: &[usize]| {
        p.iter()
            .enumerate()
            .try_fold(g.clone(), |acc, (j, &pj)| acc.divide_column(j, pj))
            .expect("powers bounded by the column factors")
    };
    match mode {
        DivisionMode::Full => {
            let m = divide(&factors);
            (factors, m)
        }
        DivisionMode::PerPower => factors
            .iter()
            .map(|&f| 0..=f)
            .multi_cartesian_product()
            .map(|p| {
                let m = divide(&p);
                (m.constraint_length(), p.iter().sum::<usize>(), p, m)
            })
            .min_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)))
            .map(|(_, _, p, m)| (p, m))
            .unwrap_or_else(|| (vec![], g.clone())),
    }
}

/// G′(D) itself when ν′ < ν, further divided by column monomials whenever that lowers ν again.
pub fn reduce_candidate(g_prime: &PolyMatrix, nu: usize, mode: DivisionMode) -> Outcome {
    let nu_prime = g_prime.constraint_length();
    let (powers, divided) = best_division(g_prime, mode);
    let nu_div = divided.constraint_length();
    let (reduced, nu_reduced, shift) = if nu_div < nu_prime {
        (divided, nu_div, powers.iter().map(|&p| -(p as i64)).collect())
    } else {
        (g_prime.clone(), nu_prime, vec![0; g_prime.ncols()])
    };
    if nu_reduced < nu {
        Outcome::Reduced {
            g_prime: g_prime.clone(),
            nu_prime,
            reduced,
            nu_reduced,
            shift,
        }
    } else {
        Outcome::NoReduction {
            g_prime: g_prime.clone(),
            nu_prime,
            best_nu: nu_reduced,
        }
    }
}

/// Checks that the reduced encoder generates the original code with its columns shifted.
pub fn verify_reduction(
    original: &PolyMatrix,
    reduced: &PolyMatrix,
    shift: &[i64],
    sections: usize,
) -> Result<(Verdict, VerificationMethod)> {
    if original.nrows() != reduced.nrows() || original.ncols() != reduced.ncols() || shift.len() != original.ncols() {
        return Err(Error::Dimension(format!(
            "encoders {}x{} and {}x{} with {} shifts",
            original.nrows(),
            original.ncols(),
            reduced.nrows(),
            reduced.ncols(),
            shift.len()
        )));
    }
    let n0 = original.ncols();
    let a = build_tbgm(original, sections)?.matrix;
    let b = build_tbgm(reduced, sections)?.matrix;
    let verdict = |ok: bool| if ok { Verdict::Pass } else { Verdict::Fail };
    if a.rank().max(b.rank()) <= MAX_ENUMERATION_DIM {
        let shifted = shift_code(&enumerate_code(&a)?, shift, n0)?;
        Ok((verdict(shifted == enumerate_code(&b)?), VerificationMethod::Enumeration))
    } else {
        let ok = shift_matrix(&a, shift, n0).row_space_equal(&b);
        Ok((verdict(ok), VerificationMethod::RowSpace))
    }
}

/// Checks the preconditions shared by the primal and dual searches; returns M.
pub(crate) fn preflight(g: &PolyMatrix, sections: usize) -> Result<Option<PolyMatrix>> {
    let canon = validate_canonical(g)?;
    if !canon.is_canonical() {
        return Err(Error::NonCanonical(format!(
            "basic = {}, reduced = {} (minor gcd {})",
            canon.basic, canon.reduced, canon.minor_gcd
        )));
    }
    let h = (g.ncols() > g.nrows()).then(|| compute_check_matrix(g)).transpose()?;
    let m = h.as_ref().map_or(0, PolyMatrix::memory);
    let need = g.memory().max(m) + 1;
    if sections < need.max(2) {
        return Err(Error::SectionLength {
            n: sections,
            need: need.max(2),
        });
    }
    Ok(h)
}

pub fn search_reduction(g: &PolyMatrix, sections: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    preflight(g, sections)?;
    let (k0, n0) = (g.nrows(), g.ncols());
    let nu = g.constraint_length();
    let t = build_tbgm(g, sections)?;
    let c = characteristic_matrix(&t)?;
    let s = analyze_spans(&c)?;
    let subsets: Vec<Vec<usize>> = (0..n0).combinations(k0).collect();
    let mut jobs: Vec<(u64, usize, Option<CharacteristicPair>)> = Vec::new();
    let mut over_budget = Vec::new();
    for (at, basic) in subsets.iter().enumerate() {
        match enumerate_local_variants(&c, &s, opts.variants, basic, opts.max_variant_bits) {
            Ok(vs) => jobs.extend(vs.map(|v| (v.index, at, Some(v.pair)))),
            Err(Error::EnumerationBudget(msg)) => over_budget.push((at, msg)),
            Err(e) => return Err(e),
        }
    }
    jobs.sort_by_key(|(v, at, _)| (*v, *at));
    for (at, _) in &over_budget {
        jobs.push((0, *at, None));
    }

    let evaluate = |(variant, at, pair): &(u64, usize, Option<CharacteristicPair>)| {
        let basic = &subsets[*at];
        let outcome = match pair {
            None => {
                let msg = &over_budget.iter().find(|(b, _)| b == at).expect("recorded above").1;
                Outcome::Rejected(Rejection::Budget(msg.clone()))
            }
            Some(pair) => match select_candidate(pair, &s, &t.matrix, basic) {
                Err(r) => Outcome::Rejected(r),
                Ok(cand) => reduce_candidate(&cand.g_prime, nu, opts.division),
            },
        };
        CandidateRecord {
            variant: *variant,
            basic: basic.clone(),
            basic_spans: basic.iter().map(|&b| s.basic[b]).collect(),
            outcome,
        }
    };
    let records: Vec<CandidateRecord> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Dimension(format!("thread pool: {e}")))?;
        pool.install(|| jobs.par_iter().map(evaluate).collect())
    } else {
        jobs.iter().map(evaluate).collect()
    };

    let mut ranked: Vec<(usize, &CandidateRecord)> = records
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r.outcome, Outcome::Reduced { .. }))
        .collect();
    ranked.sort_by_cached_key(|(i, r)| match &r.outcome {
        Outcome::Reduced {
            nu_reduced,
            shift,
            reduced,
            ..
        } => (
            *nu_reduced,
            shift.iter().filter(|&&x| x != 0).count(),
            shift.iter().map(|x| x.unsigned_abs()).sum::<u64>(),
            r.basic.clone(),
            state_profile(reduced).into_iter().max().unwrap_or(0),
            *i,
        ),
        _ => unreachable!(),
    });

    let mut report = None;
    for (_, rec) in ranked {
        let Outcome::Reduced {
            g_prime,
            nu_prime,
            reduced,
            nu_reduced,
            shift,
        } = &rec.outcome
        else {
            unreachable!()
        };
        let (verdict, method) = verify_reduction(g, reduced, shift, sections)?;
        if verdict == Verdict::Pass {
            report = Some(ReductionReport {
                original: g.clone(),
                original_octal: g.to_octal(),
                sections,
                nu,
                reduced: reduced.clone(),
                reduced_octal: reduced.to_octal(),
                nu_reduced: *nu_reduced,
                shift_vector: shift.clone(),
                mode: if shift.iter().all(|&x| x == 0) {
                    ReductionMode::Direct
                } else {
                    ReductionMode::Indirect
                },
                provenance: Provenance {
                    variant: rec.variant,
                    basic: rec.basic.clone(),
                    basic_spans: rec.basic_spans.clone(),
                    g_prime: g_prime.clone(),
                    nu_prime: *nu_prime,
                },
                verification: verdict,
                verified_by: method,
            });
            break;
        }
    }

    Ok(SearchOutcome {
        report,
        records,
        characteristic: c,
        structure: s,
        bound: section_bound(n0, k0, nu, sections),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(s: &str) -> PolyMatrix {
        PolyMatrix::parse(s).unwrap()
    }

    #[test]
    fn five_sections_reduce_by_division() {
        let out = search_reduction(&pm("1+D+D^2,1+D^2"), 5, &SearchOptions::default()).unwrap();
        let r = out.report.unwrap();
        assert_eq!(r.reduced, pm("D,1+D"));
        assert_eq!(r.shift_vector, vec![-2, 0]);
        assert_eq!(r.provenance.g_prime, pm("D^3,1+D"));
        assert_eq!(r.mode, ReductionMode::Indirect);
        assert_eq!(r.verification, Verdict::Pass);
        assert!(out.bound.holds);
    }

    #[test]
    fn six_sections_are_exhausted() {
        let out = search_reduction(&pm("1+D+D^2,1+D^2"), 6, &SearchOptions::default()).unwrap();
        assert!(out.report.is_none());
        assert!(!out.bound.holds);
        let t0: Vec<String> = out.structure.basic.iter().map(Span::to_string).collect();
        assert_eq!(t0, ["(0, 5]", "(1, 8]"]);
    }

    #[test]
    fn full_division_mode_divides_whole_factor() {
        let (p, m) = best_division(&pm("D^3,1+D"), DivisionMode::Full);
        assert_eq!((p, m), (vec![3, 0], pm("1,1+D")));
        let (p, m) = best_division(&pm("D^3,1+D"), DivisionMode::PerPower);
        assert_eq!((p, m), (vec![2, 0], pm("D,1+D")));
    }

    #[test]
    fn jobs_do_not_change_results() {
        let g = pm("1+D+D^2+D^3,1+D^2+D^3");
        let a = search_reduction(&g, 6, &SearchOptions::default()).unwrap();
        let b = search_reduction(
            &g,
            6,
            &SearchOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            search_reduction(&pm("1+D,1+D^2"), 5, &SearchOptions::default()),
            Err(Error::NonCanonical(_))
        ));
        assert!(matches!(
            search_reduction(&pm("1+D+D^2,1+D^2"), 2, &SearchOptions::default()),
            Err(Error::SectionLength { .. })
        ));
    }
}
