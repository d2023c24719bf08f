// Octal codec, coefficient expansion, canonical form checks, check matrices
// and the tail-biting-preserving column and row operations.

use tbtrellis::oracle::state_profile;
use tbtrellis::poly::{basic_equivalent, compute_check_matrix, reciprocal_dual, smith_form, validate_canonical};
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    for octal in ["(7,5)", "(50,64)", "(46,60)"] {
        let g = PolyMatrix::parse_octal(octal)?;
        let h = compute_check_matrix(&g)?;
        println!(
            "{octal} = {g}  nu = {}  H = {h}  profiles {:?} / {:?}",
            g.constraint_length(),
            state_profile(&g),
            state_profile(&reciprocal_dual(&h))
        );
    }

    let g = PolyMatrix::parse("1+D,D,1;D^2,1,1+D+D^2")?;
    for (i, m) in g.expand().coefficients.iter().enumerate() {
        println!(
            "G_{i} = {}",
            m.rows().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        );
    }
    println!("{:?}", validate_canonical(&g)?);

    let g4 = PolyMatrix::parse("1+D,1,D;D,D,D")?;
    println!(
        "invariant factors of {g4}: {:?}",
        smith_form(&g4)
            .invariants
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("basic equivalent: {}", basic_equivalent(&g4)?);

    let g = PolyMatrix::parse("D^3,1+D")?;
    let divided = g.divide_column(0, 2)?;
    assert_eq!(divided.multiply_column(0, 2, 5)?, g);
    let added = g.row_add(0, 0, 1, 5);
    println!(
        "{g} / D^2 in column 0 = {divided}; self row addition rejected: {}",
        added.is_err()
    );

    let g = PolyMatrix::parse("1+D,D,1;D^2,1,1+D+D^2")?;
    let moved = g.row_add(0, 1, 1, 5)?;
    let same = build_tbgm(&g, 5)?
        .matrix
        .row_space_equal(&build_tbgm(&moved, 5)?.matrix);
    println!("{moved} generates the same tail-biting code: {same}");
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
