// Runs the reduction search over a catalog of encoders and tabulates the
// outcome, including one section length where no reduction exists.

use tbtrellis::reduction::{search_reduction, SearchOptions};
use tbtrellis::PolyMatrix;

const CATALOG: &[(&str, usize)] = &[
    ("1+D+D^2,1+D^2", 5),
    ("1+D+D^2,1+D^2", 6),
    ("1+D+D^2+D^3,1+D^2+D^3", 6),
    ("1+D+D^4,1+D^2+D^3+D^4", 6),
    ("1+D+D^2+D^3+D^4+D^5,1+D^3+D^5", 10),
    ("1+D+D^4+D^5+D^6,1+D^2+D^3+D^4+D^6", 8),
    ("1+D+D^2+D^3+D^6,1+D^2+D^3+D^5+D^6", 8),
    ("1+D+D^2+D^3,1+D+D^3,1+D^2+D^3", 5),
    ("D+D^2,1+D,1+D+D^2;1,1+D^2,1+D^2", 6),
];

pub fn run_example() -> tbtrellis::Result<()> {
    let opts = SearchOptions {
        jobs: 2,
        ..SearchOptions::default()
    };
    for &(grid, n) in CATALOG {
        let g = PolyMatrix::parse(grid)?;
        let out = search_reduction(&g, n, &opts)?;
        match out.report {
            Some(r) => println!(
                "N={n:<2} {g}  nu {} -> {}  via {}  =>  {}  shifts {:?} ({:?})",
                r.nu, r.nu_reduced, r.provenance.g_prime, r.reduced, r.shift_vector, r.mode
            ),
            None => println!(
                "N={n:<2} {g}  exhausted after {} candidates, bound holds: {}",
                out.records.len(),
                out.bound.holds
            ),
        }
    }
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
