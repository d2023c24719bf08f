// Builds the tail-biting generator matrix of a rate-1/3 encoder, brings every
// cyclic frame to minimal-span form and assembles the characteristic matrix.

use tbtrellis::characteristic::{characteristic_matrix, compute_msf_bases, verify_characteristic};
use tbtrellis::span::render_spans;
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    let g = PolyMatrix::parse("1+D,D,1+D")?;
    let t = build_tbgm(&g, 3)?;
    println!("G(D) = {g}, N = 3");
    print!("{}", t.matrix.render_blocks(3));

    for b in compute_msf_bases(&t)? {
        println!("frame shifted by {}: {}", b.shift, render_spans(&b.frame_spans));
    }

    let x = characteristic_matrix(&t)?;
    println!("characteristic matrix ({:?})", x.assembly);
    print!("{x}");

    let check = verify_characteristic(&x, &t.matrix);
    println!(
        "generates {}, spans fit {}, distinct endpoints {}, uniform coverage {}",
        check.generates, check.spans_fit_rows, check.distinct_endpoints, check.uniform_coverage
    );
    assert!(check.passed());
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
