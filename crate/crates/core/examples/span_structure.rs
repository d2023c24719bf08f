// Basic spans, inclusions and the number of characteristic matrices of a
// rate-2/3 code, followed by a full enumeration of those matrices.

use std::collections::BTreeSet;

use tbtrellis::characteristic::{
    analyze_spans, characteristic_matrix, enumerate_variants, verify_characteristic, VariantMode,
};
use tbtrellis::span::render_spans;
use tbtrellis::tbgm::build_tbgm;
use tbtrellis::PolyMatrix;

pub fn run_example() -> tbtrellis::Result<()> {
    let g = PolyMatrix::parse("1+D,D,1+D;D,1,1")?;
    let t = build_tbgm(&g, 3)?;
    let x = characteristic_matrix(&t)?;
    let s = analyze_spans(&x)?;

    println!("T  = {}", render_spans(&x.spans));
    println!("T0 = {}", render_spans(&s.basic));
    for (b, inc) in s.basic.iter().zip(&s.included) {
        let inner: Vec<_> = inc.iter().map(|&r| x.spans[r]).collect();
        println!("  {b} includes {}", render_spans(&inner));
    }
    println!("theta = {}, ell = {} (expected {})", s.theta, s.ell, s.ell_expected);

    for mode in [VariantMode::ShiftSymmetric, VariantMode::Full] {
        let mut distinct = BTreeSet::new();
        for v in enumerate_variants(&x, &s, mode)? {
            assert!(verify_characteristic(&v.pair, &t.matrix).passed());
            distinct.insert(v.pair.rows);
        }
        println!("{mode:?}: {} distinct characteristic matrices", distinct.len());
    }
    assert_eq!(s.variant_count(), Some(8));
    Ok(())
}

fn main() -> tbtrellis::Result<()> {
    run_example()
}
