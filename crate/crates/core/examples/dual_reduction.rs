// A rate-2/3 code whose G'(D) has no useful monomial factor: the reciprocal
// dual encoder shows which columns to shift, and G and H are reduced together.

use tbtrellis::poly::{compute_check_matrix, reciprocal_dual};
use tbtrellis::reduction::{dual_procedure, SearchOptions};
use tbtrellis::span::render_spans;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    let g = PolyMatrix::parse("1+D,D,1;D^2,1,1+D+D^2")?;
    let h = compute_check_matrix(&g)?;
    println!("H(D) = {h}\nH~(D) = {}", reciprocal_dual(&h));

    let out = dual_procedure(&g, 5, &SearchOptions::default())?;
    println!("dual span list {}", render_spans(&out.characteristic.spans));
    println!("reverse of the primal list: {}", out.reversed_spans_match);

    let sel = out
        .selections
        .iter()
        .find(|s| s.check.is_some_and(|c| c.all_hold()))
        .expect("a selection satisfying all six conditions");
    println!(
        "H~'(D) = {}  paired with G'(D) = {}",
        sel.h_tilde_prime.as_ref().expect("accepted"),
        sel.g_prime.as_ref().expect("paired")
    );
    for step in &sel.reduction.as_ref().expect("reduced").steps {
        println!("  {step}");
    }
    println!("{}", out.report.expect("dual-assisted reduction"));
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
