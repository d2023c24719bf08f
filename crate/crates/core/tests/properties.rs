mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use tbtrellis::characteristic::{analyze_spans, characteristic_matrix, verify_characteristic};
use tbtrellis::gf2::{BinaryMatrix, BinaryVector, Direction};
use tbtrellis::oracle::{build_tb_trellis, enumerate_code, shift_code, state_profile};
use tbtrellis::poly::reciprocal_dual;
use tbtrellis::reduction::{dual_procedure, search_reduction, verify_reduction, ReductionMode, SearchOptions, Verdict};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::{Poly, PolyMatrix};

use common::{corpus, rank_profile, CORPUS_SIZE};

#[test]
fn corpus_is_large_enough_and_deterministic() {
    let a = corpus();
    assert!(a.len() >= 20);
    assert_eq!(a.len(), CORPUS_SIZE);
    let b = corpus();
    assert!(a.iter().zip(&b).all(|(x, y)| x.g == y.g && x.sections == y.sections));
    for e in &a {
        assert!(e.g.ncols() <= 4 && e.g.constraint_length() <= 4 && e.sections <= 8);
    }
}

#[test]
fn characteristic_pairs_are_valid() {
    for e in corpus() {
        let t = build_tbgm(&e.g, e.sections).unwrap();
        let c = characteristic_matrix(&t).unwrap();
        assert!(
            verify_characteristic(&c, &t.matrix).passed(),
            "{} N={}",
            e.g,
            e.sections
        );
        let n = t.n();
        let total: usize = c.spans.iter().map(|s| s.length() - 1).sum();
        assert_eq!(total, n * (n - t.k()), "{}", e.g);
        let s = analyze_spans(&c).unwrap();
        let n0 = e.g.ncols();
        let shifted: BTreeSet<_> = (0..e.sections)
            .flat_map(|i| s.basic.iter().map(move |b| b.shift(i * n0, Direction::Right)))
            .collect();
        assert_eq!(shifted, c.span_set());
        let (k0, n0) = (e.g.nrows(), e.g.ncols());
        assert_eq!(s.ell, n0 * ((n0 - k0) * e.sections + 1));
    }
}

#[test]
fn reciprocal_dual_checks_the_code() {
    for e in corpus() {
        let h_tilde = reciprocal_dual(&e.h);
        let g = build_tbgm(&e.g, e.sections).unwrap();
        let h = build_tbgm(&h_tilde, e.sections).unwrap();
        assert!(g.matrix.mul_transpose(&h.matrix).unwrap().is_zero(), "{}", e.g);
        assert_eq!(g.rank() + h.rank(), g.n());
    }
}

#[test]
fn state_profiles_of_dual_pairs_agree() {
    for e in corpus() {
        let p = state_profile(&e.g);
        assert_eq!(p, state_profile(&reciprocal_dual(&e.h)), "{}", e.g);
        assert_eq!(p, rank_profile(&e.g), "{}", e.g);
    }
}

#[test]
fn column_division_and_multiplication_invert() {
    for e in corpus() {
        for j in 0..e.g.ncols() {
            let Ok(up) = e.g.multiply_column(j, 1, e.sections) else {
                continue;
            };
            assert_eq!(up.divide_column(j, 1).unwrap(), e.g);
            let code = enumerate_code(&build_tbgm(&e.g, e.sections).unwrap().matrix).unwrap();
            let moved = enumerate_code(&build_tbgm(&up, e.sections).unwrap().matrix).unwrap();
            let mut shift = vec![0; e.g.ncols()];
            shift[j] = 1;
            assert_eq!(shift_code(&code, &shift, e.g.ncols()).unwrap(), moved);
        }
    }
}

#[test]
fn row_addition_keeps_the_code() {
    for e in corpus().into_iter().filter(|e| e.g.nrows() > 1) {
        let base = build_tbgm(&e.g, e.sections).unwrap().matrix;
        for q in 0..e.sections {
            match e.g.row_add(0, 1, q, e.sections) {
                Ok(m) => assert!(base.row_space_equal(&build_tbgm(&m, e.sections).unwrap().matrix)),
                Err(_) => assert!(q + e.g.memory() + 1 > e.sections),
            }
        }
    }
}

#[test]
fn trellis_paths_are_the_code() {
    for e in corpus() {
        let trellis = build_tb_trellis(&e.g, e.sections).unwrap();
        let code = enumerate_code(&build_tbgm(&e.g, e.sections).unwrap().matrix).unwrap();
        assert_eq!(trellis.accepted_paths().unwrap(), code, "{}", e.g);
    }
}

#[test]
fn search_reports_verify_and_do_not_depend_on_jobs() {
    for e in corpus() {
        let serial = search_reduction(&e.g, e.sections, &SearchOptions::default()).unwrap();
        let parallel = search_reduction(
            &e.g,
            e.sections,
            &SearchOptions {
                jobs: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(serial.report, parallel.report);
        assert_eq!(serial.records, parallel.records);
        if let Some(r) = serial.report {
            assert!(r.nu_reduced < r.nu);
            assert_eq!(r.verification, Verdict::Pass);
            if r.mode == ReductionMode::Direct {
                assert!(r.shift_vector.iter().all(|&s| s == 0));
            }
            let (v, _) = verify_reduction(&e.g, &r.reduced, &r.shift_vector, e.sections).unwrap();
            assert_eq!(v, Verdict::Pass);
        }
    }
}

#[test]
fn dual_selection_conclusions_match_direct_rank() {
    for e in corpus() {
        let out = dual_procedure(&e.g, e.sections, &SearchOptions::default()).unwrap();
        for check in out.selections.iter().filter_map(|s| s.check) {
            if let Some(rank) = check.concluded_rank {
                assert_eq!(rank, check.direct_rank, "{}", e.g);
            }
        }
        if let Some(r) = out.report {
            let (v, _) = verify_reduction(&e.g, &r.reduced, &r.shift_vector, e.sections).unwrap();
            assert_eq!(v, Verdict::Pass);
        }
    }
}

fn poly_strategy(max_degree: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(any::<bool>(), 1..=max_degree + 1).prop_map(Poly::from_coeffs)
}

fn matrix_strategy() -> impl Strategy<Value = PolyMatrix> {
    (1usize..=2, 2usize..=4).prop_flat_map(|(k, n)| {
        prop::collection::vec(prop::collection::vec(poly_strategy(4), n), k)
            .prop_map(|rows| PolyMatrix::from_rows(rows).unwrap())
    })
}

proptest! {
    #[test]
    fn octal_round_trip(g in matrix_strategy()) {
        let back = PolyMatrix::parse_octal(&g.to_octal()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn grid_round_trip(g in matrix_strategy()) {
        prop_assert_eq!(PolyMatrix::parse(&g.to_grid()).unwrap(), g);
    }

    #[test]
    fn expansion_round_trip(g in matrix_strategy()) {
        prop_assume!(!g.is_zero());
        prop_assert_eq!(PolyMatrix::from_expansion(&g.expand()).unwrap(), g);
    }

    #[test]
    fn poly_division_identity(a in poly_strategy(12), b in poly_strategy(6)) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&(&q * &b) + &r, a.clone());
        prop_assert!(r.is_zero() || r.degree() < b.degree());
        let g = a.gcd(&b);
        prop_assert!(g.divides(&a) && g.divides(&b));
    }

    #[test]
    fn shifts_invert(g in matrix_strategy(), s0 in -3i64..=3, s1 in -3i64..=3) {
        let sections = g.memory() + 2;
        prop_assume!(g.nrows() * sections <= 12);
        let code = enumerate_code(&build_tbgm(&g, sections).unwrap().matrix).unwrap();
        let mut shift = vec![0; g.ncols()];
        shift[0] = s0;
        shift[1] = s1;
        let back: Vec<i64> = shift.iter().map(|s| -s).collect();
        let moved = shift_code(&code, &shift, g.ncols()).unwrap();
        prop_assert_eq!(moved.len(), code.len());
        prop_assert_eq!(shift_code(&moved, &back, g.ncols()).unwrap(), code);
    }

    #[test]
    fn rank_nullity(rows in prop::collection::vec(prop::collection::vec(any::<bool>(), 10), 1..8)) {
        let m = BinaryMatrix::from_rows(10, rows.into_iter().map(BinaryVector::from_bits).collect()).unwrap();
        let null = m.null_space();
        prop_assert_eq!(m.rank() + null.nrows(), 10);
        prop_assert!(m.mul_transpose(&null).unwrap().is_zero());
    }
}
