mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use tbtrellis::characteristic::{
    analyze_spans, characteristic_matrix, compute_msf_bases, enumerate_variants, verify_characteristic, VariantMode,
};
use tbtrellis::gf2::{BinaryVector, Direction};
use tbtrellis::oracle::{build_tb_trellis, enumerate_code, shift_code, shift_word, state_profile, CodeSet};
use tbtrellis::poly::{compute_check_matrix, reciprocal_dual};
use tbtrellis::reduction::{
    dual_procedure, search_reduction, section_bound, simultaneous_reduce, verify_reduction, Outcome, SearchOptions,
    Verdict,
};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::{PolyMatrix, Span};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pm(s: &str) -> PolyMatrix {
    PolyMatrix::parse(s).expect("valid grid")
}

fn octal(s: &str) -> PolyMatrix {
    PolyMatrix::parse_octal(s).expect("valid octal")
}

fn spans(n: usize, list: &[(usize, usize)]) -> BTreeSet<Span> {
    list.iter()
        .map(|&(a, b)| Span::new(a, b, n).expect("valid span"))
        .collect()
}

fn code_of(g: &PolyMatrix, sections: usize) -> Result<CodeSet, String> {
    let t = build_tbgm(g, sections).map_err(|e| e.to_string())?;
    enumerate_code(&t.matrix).map_err(|e| e.to_string())
}

fn err<E: ToString>(e: E) -> String {
    e.to_string()
}

fn example_one() -> Check {
    let t = build_tbgm(&pm("1+D,D,1+D"), 3).map_err(err)?;
    let x = characteristic_matrix(&t).map_err(err)?;
    let want = spans(
        9,
        &[(0, 5), (1, 7), (2, 0), (3, 8), (4, 1), (5, 3), (6, 2), (7, 4), (8, 6)],
    );
    ensure!(x.span_set() == want, "span list {:?}", x.spans);
    ensure!(
        verify_characteristic(&x, &t.matrix).passed(),
        "X fails a characteristic check"
    );
    let frames = [
        spans(9, &[(0, 5), (3, 8), (1, 7)]),
        spans(9, &[(2, 0), (3, 8), (1, 7)]),
        spans(9, &[(2, 0), (3, 8), (4, 1)]),
    ];
    for (b, want) in compute_msf_bases(&t).map_err(err)?.iter().zip(&frames) {
        let got: BTreeSet<Span> = b.spans.iter().copied().collect();
        ensure!(&got == want, "frame {} spans {:?}", b.shift, b.spans);
    }
    Ok(())
}

fn example_two() -> Check {
    let t = build_tbgm(&pm("1+D,D,1+D;D,1,1"), 3).map_err(err)?;
    let x = characteristic_matrix(&t).map_err(err)?;
    let s = analyze_spans(&x).map_err(err)?;
    let basic: BTreeSet<Span> = s.basic.iter().copied().collect();
    ensure!(basic == spans(9, &[(0, 4), (1, 3), (2, 5)]), "T0 {:?}", s.basic);
    ensure!(s.theta == 1, "theta {}", s.theta);
    ensure!(s.variant_count() == Some(8), "variant count {:?}", s.variant_count());
    ensure!(
        s.ell == 12 && s.ell_expected == 12,
        "ell {} expected {}",
        s.ell,
        s.ell_expected
    );
    Ok(())
}

fn direct_and_indirect_rate_half() -> Check {
    let g = octal("(7,5)");
    let r = search_reduction(&g, 5, &SearchOptions::default())
        .map_err(err)?
        .report
        .ok_or("no reduction")?;
    ensure!(r.reduced == pm("D,1+D"), "reduced {}", r.reduced);
    ensure!(r.nu == 2 && r.nu_reduced == 1, "nu {} -> {}", r.nu, r.nu_reduced);
    ensure!(r.shift_vector == [-2, 0], "shifts {:?}", r.shift_vector);
    let code = code_of(&g, 5)?;
    let reduced = code_of(&r.reduced, 5)?;
    ensure!(code.len() == 32, "{} codewords", code.len());
    ensure!(
        shift_code(&code, &r.shift_vector, 2).map_err(err)? == reduced,
        "shifted codes differ"
    );
    let w = BinaryVector::parse("1101100111").map_err(err)?;
    let w_m = BinaryVector::parse("1101101101").map_err(err)?;
    ensure!(code.contains(&w) && reduced.contains(&w_m), "w or w_m missing");
    ensure!(shift_word(&w, &r.shift_vector, 2) == w_m, "w does not map to w_m");
    let trellis = build_tb_trellis(&r.reduced, 5).map_err(err)?;
    let start = trellis.accepts(&w_m).map(|s| trellis.state_label(s));
    ensure!(start.as_deref() == Some("1"), "w_m accepted from {start:?}");
    Ok(())
}

fn alternative_characteristic_matrices() -> Check {
    let out = search_reduction(&pm("1+D+D^2+D^3,1+D^2+D^3"), 6, &SearchOptions::default()).map_err(err)?;
    let reducing = out.records.iter().find(|r| {
        matches!(&r.outcome, Outcome::Reduced { g_prime, reduced, .. }
            if *g_prime == pm("1+D^2,D^3") && *reduced == pm("1+D^2,D^2"))
    });
    let reducing = reducing.ok_or("no candidate reduces through (1+D^2, D^3)")?;
    let alternative = out.records.iter().find(|r| {
        r.variant != reducing.variant && r.basic == reducing.basic && matches!(r.outcome, Outcome::NoReduction { .. })
    });
    ensure!(
        alternative.is_some(),
        "the other characteristic matrix does not fail to reduce"
    );
    let r = out.report.ok_or("no report")?;
    ensure!(r.reduced == pm("1+D^2,D^2"), "reported {}", r.reduced);
    Ok(())
}

fn catalog() -> Check {
    let cases = [
        ("1+D+D^4,1+D^2+D^3+D^4", 6, "D^2,1+D", "D,1+D"),
        (
            "1+D+D^2+D^3+D^4+D^5,1+D^3+D^5",
            10,
            "D^4+D^5,1+D+D^4",
            "D^3+D^4,1+D+D^4",
        ),
        (
            "1+D+D^4+D^5+D^6,1+D^2+D^3+D^4+D^6",
            8,
            "D+D^2+D^3,1+D^2+D^3",
            "D+D^2+D^3,1+D^2+D^3",
        ),
        (
            "1+D+D^2+D^3+D^6,1+D^2+D^3+D^5+D^6",
            8,
            "1+D^2+D^3,D^2+D^3+D^4",
            "1+D^2+D^3,D+D^2+D^3",
        ),
        ("1+D+D^2+D^3,1+D+D^3,1+D^2+D^3", 5, "D+D^2,D^3,1", "1+D,D,1"),
        (
            "D+D^2,1+D,1+D+D^2;1,1+D^2,1+D^2",
            6,
            "D^2,1+D,D;D,0,1+D^2",
            "D,1+D,D;1,0,1+D^2",
        ),
    ];
    for (i, (g, n, g_prime, reduced)) in cases.into_iter().enumerate() {
        let g = pm(g);
        let r = search_reduction(&g, n, &SearchOptions::default())
            .map_err(err)?
            .report
            .ok_or(format!("case {} does not reduce", i + 1))?;
        ensure!(
            r.provenance.g_prime == pm(g_prime) && r.reduced == pm(reduced),
            "case {}: G' = {} -> {}",
            i + 1,
            r.provenance.g_prime,
            r.reduced
        );
        let (v, _) = verify_reduction(&g, &r.reduced, &r.shift_vector, n).map_err(err)?;
        ensure!(v == Verdict::Pass, "case {} fails verification", i + 1);
    }
    Ok(())
}

fn dual_pipeline() -> Check {
    let g = pm("1+D,D,1;D^2,1,1+D+D^2");
    let h_tilde = reciprocal_dual(&compute_check_matrix(&g).map_err(err)?);
    ensure!(h_tilde == pm("1+D+D^2+D^3,1+D+D^3,1+D^2+D^3"), "H~ = {h_tilde}");
    let out = dual_procedure(&g, 5, &SearchOptions::default()).map_err(err)?;
    let t_hat = spans(
        15,
        &[
            (0, 11),
            (1, 12),
            (2, 10),
            (3, 14),
            (4, 0),
            (5, 13),
            (6, 2),
            (7, 3),
            (8, 1),
            (9, 5),
            (10, 6),
            (11, 4),
            (12, 8),
            (13, 9),
            (14, 7),
        ],
    );
    ensure!(
        out.characteristic.span_set() == t_hat,
        "dual spans {:?}",
        out.characteristic.spans
    );
    let sel = out
        .selections
        .iter()
        .find(|s| s.h_tilde_prime.as_ref() == Some(&pm("D+D^2,D^3,1")) && s.g_prime.is_some())
        .ok_or("no paired selection with H~' = (D+D^2, D^3, 1)")?;
    let check = sel.check.ok_or("selection not checked")?;
    ensure!(check.all_hold(), "conditions {check:?}");
    ensure!(
        check.concluded_rank == Some(10) && check.direct_rank == 10,
        "ranks {check:?}"
    );

    let g_prime = sel.g_prime.as_ref().expect("paired");
    let red = simultaneous_reduce(g_prime, &reciprocal_dual(&pm("D+D^2,D^3,1")), 5).map_err(err)?;
    ensure!(red.g == pm("1+D,1,D;1,1,1"), "G(5) = {}", red.g);
    ensure!(red.shift == [0, -1, 1], "shifts {:?}", red.shift);
    let code = code_of(&g, 5)?;
    ensure!(code.len() == 1024, "{} codewords", code.len());
    ensure!(
        shift_code(&code, &red.shift, 3).map_err(err)? == code_of(&red.g, 5)?,
        "shifted codes differ"
    );
    let w = BinaryVector::parse("011001110001101").map_err(err)?;
    let w_m = shift_word(&w, &red.shift, 3);
    ensure!(code.contains(&w), "w missing");
    ensure!(
        w_m == BinaryVector::parse("001011101000111").map_err(err)?,
        "w_m = {w_m}"
    );
    let r = out.report.ok_or("no dual-assisted report")?;
    ensure!(
        r.reduced == red.g && r.verification == Verdict::Pass,
        "report {}",
        r.reduced
    );
    Ok(())
}

fn negative_control() -> Check {
    let out = search_reduction(&octal("(7,5)"), 6, &SearchOptions::default()).map_err(err)?;
    ensure!(out.report.is_none(), "unexpected reduction");
    ensure!(!out.bound.holds, "bound holds at N = 6");
    let basic: BTreeSet<Span> = out.structure.basic.iter().copied().collect();
    ensure!(basic == spans(12, &[(0, 5), (1, 8)]), "T0 {:?}", out.structure.basic);
    ensure!(
        !section_bound(2, 1, 2, 6).holds && section_bound(2, 1, 2, 5).holds,
        "bound edge"
    );
    Ok(())
}

/// Whether some cyclic column shift maps the code of `a` onto the code of `b`.
fn equal_up_to_shifts(a: &PolyMatrix, b: &PolyMatrix, sections: usize) -> Result<bool, String> {
    let (ca, cb) = (code_of(a, sections)?, code_of(b, sections)?);
    let n0 = a.ncols();
    let shifts = (0..n0).map(|_| 0..sections as i64).collect::<Vec<_>>();
    let mut t = vec![0i64; n0];
    loop {
        if shift_code(&ca, &t, n0).map_err(err)? == cb {
            return Ok(true);
        }
        let Some(j) = (0..n0).find(|&j| t[j] + 1 < shifts[j].end) else {
            return Ok(false);
        };
        t[j] += 1;
        t[..j].iter_mut().for_each(|x| *x = 0);
    }
}

fn table_claims() -> Check {
    for (g, n, target, nu) in [("(50,64)", 5, "(6,7)", 2), ("(46,60)", 6, "(54,60)", 3)] {
        let g = octal(g);
        let r = search_reduction(&g, n, &SearchOptions::default())
            .map_err(err)?
            .report
            .ok_or("no reduction")?;
        ensure!(r.nu_reduced == nu, "{g}: nu'' = {}", r.nu_reduced);
        ensure!(
            equal_up_to_shifts(&r.reduced, &octal(target), n)?,
            "{} is not {target} up to shifts",
            r.reduced
        );
        ensure!(
            equal_up_to_shifts(&g, &octal(target), n)?,
            "{g} is not {target} up to shifts"
        );
    }
    Ok(())
}

fn corpus_properties() -> Check {
    let corpus = common::corpus();
    ensure!(corpus.len() >= 20, "corpus of {}", corpus.len());
    for e in &corpus {
        let (k0, n0, n) = (e.g.nrows(), e.g.ncols(), e.sections);
        let t = build_tbgm(&e.g, n).map_err(err)?;
        let x = characteristic_matrix(&t).map_err(err)?;
        ensure!(
            verify_characteristic(&x, &t.matrix).passed(),
            "{}: characteristic checks",
            e.g
        );
        let total: usize = x.spans.iter().map(|s| s.length() - 1).sum();
        ensure!(total == t.n() * (t.n() - t.k()), "{}: span sum {total}", e.g);
        let s = analyze_spans(&x).map_err(err)?;
        let shifted: BTreeSet<Span> = (0..n)
            .flat_map(|i| s.basic.iter().map(move |b| b.shift(i * n0, Direction::Right)))
            .collect();
        ensure!(shifted == x.span_set(), "{}: span list is not the shifts of T0", e.g);
        ensure!(s.ell == n0 * ((n0 - k0) * n + 1), "{}: ell {}", e.g, s.ell);

        let h_tilde = reciprocal_dual(&e.h);
        let ht = build_tbgm(&h_tilde, n).map_err(err)?;
        ensure!(
            t.matrix.mul_transpose(&ht.matrix).map_err(err)?.is_zero(),
            "{}: not orthogonal",
            e.g
        );
        ensure!(
            state_profile(&e.g) == state_profile(&h_tilde),
            "{}: profiles differ",
            e.g
        );
        ensure!(
            state_profile(&e.g) == common::rank_profile(&e.g),
            "{}: profile oracle differs",
            e.g
        );

        for j in 0..n0 {
            if let Ok(up) = e.g.multiply_column(j, 1, n) {
                ensure!(
                    up.divide_column(j, 1).map_err(err)? == e.g,
                    "{}: column {j} round trip",
                    e.g
                );
            }
        }
        if k0 > 1 {
            if let Ok(m) = e.g.row_add(0, 1, 0, n) {
                let mt = build_tbgm(&m, n).map_err(err)?;
                ensure!(
                    t.matrix.row_space_equal(&mt.matrix),
                    "{}: row addition changed the code",
                    e.g
                );
            }
        }
        let code = enumerate_code(&t.matrix).map_err(err)?;
        let paths = build_tb_trellis(&e.g, n).map_err(err)?.accepted_paths().map_err(err)?;
        ensure!(paths == code, "{}: trellis paths differ from the code", e.g);
    }
    Ok(())
}

fn counting() -> Check {
    let t = build_tbgm(&pm("1+D,D,1+D;D,1,1"), 3).map_err(err)?;
    let x = characteristic_matrix(&t).map_err(err)?;
    let s = analyze_spans(&x).map_err(err)?;
    let mut distinct = BTreeSet::new();
    for v in enumerate_variants(&x, &s, VariantMode::Full).map_err(err)? {
        ensure!(
            verify_characteristic(&v.pair, &t.matrix).passed(),
            "variant {} invalid",
            v.index
        );
        distinct.insert(v.pair.rows);
    }
    ensure!(
        s.variant_exponent() == 3 && distinct.len() == 8,
        "{} distinct of 2^{}",
        distinct.len(),
        s.variant_exponent()
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("rate-1/3 characteristic matrix and frames", example_one),
        ("rate-2/3 span structure", example_two),
        ("(7,5) at N = 5 reduces to (D, 1+D)", direct_and_indirect_rate_half),
        (
            "alternative characteristic matrices",
            alternative_characteristic_matrices,
        ),
        ("catalog of six reductions", catalog),
        ("reduction through the reciprocal dual", dual_pipeline),
        ("(7,5) at N = 6 is exhausted", negative_control),
        ("table encoders up to column shifts", table_claims),
        ("corpus properties", corpus_properties),
        ("full variant count", counting),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
