// Reduces the four-state (7,5) code at N = 5 to a two-state encoder by
// dividing a column of G'(D), then checks a codeword against both trellises.

use tbtrellis::gf2::BinaryVector;
use tbtrellis::oracle::{build_tb_trellis, enumerate_code, shift_word};
use tbtrellis::reduction::{search_reduction, SearchOptions};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    let g = PolyMatrix::parse_octal("(7,5)")?;
    let out = search_reduction(&g, 5, &SearchOptions::default())?;
    let report = out.report.expect("reducible at N = 5");
    println!("{report}");

    let w = BinaryVector::parse("1101100111")?;
    let code = enumerate_code(&build_tbgm(&g, 5)?.matrix)?;
    assert!(code.contains(&w));
    let w_m = shift_word(&w, &report.shift_vector, 2);
    println!("w   = {w}\nw_m = {w_m}");

    let before = build_tb_trellis(&g, 5)?;
    let after = build_tb_trellis(&report.reduced, 5)?;
    println!(
        "w accepted from state {:?} of {}; w_m from state {:?} of {}",
        before.accepts(&w).map(|s| before.state_label(s)),
        before.num_states(),
        after.accepts(&w_m).map(|s| after.state_label(s)),
        after.num_states()
    );
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
