// Largest section length for which a characteristic matrix can still hold a
// shift-structured generator set, compared with the actual search.

use tbtrellis::reduction::{search_reduction, section_bound, SearchOptions};
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    for (k0, n0) in [(1, 2), (1, 3), (2, 3)] {
        let limits: Vec<_> = (1..=6)
            .map(|nu| section_bound(n0, k0, nu, 1).max_sections.unwrap_or(0))
            .collect();
        println!("R = {k0}/{n0}: largest N for nu = 1..6: {limits:?}");
    }

    let g = PolyMatrix::parse_octal("(7,5)")?;
    for n in 3..=7 {
        let b = section_bound(2, 1, g.constraint_length(), n);
        let found = search_reduction(&g, n, &SearchOptions::default())?.report.is_some();
        println!(
            "(7,5) N = {n}: bound {} <= {} is {}, reduction found: {found}",
            b.lhs, b.rhs, b.holds
        );
    }
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
