#[allow(dead_code)]
mod characteristic_matrix_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/characteristic_matrix.rs"
    ));
}

#[test]
fn characteristic_matrix_example_runs() {
    characteristic_matrix_example::run_example().expect("characteristic_matrix example should run");
}

#[allow(dead_code)]
mod span_structure_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/span_structure.rs"));
}

#[test]
fn span_structure_example_runs() {
    span_structure_example::run_example().expect("span_structure example should run");
}

#[allow(dead_code)]
mod direct_reduction_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/direct_reduction.rs"));
}

#[test]
fn direct_reduction_example_runs() {
    direct_reduction_example::run_example().expect("direct_reduction example should run");
}

#[allow(dead_code)]
mod reduction_catalog_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/reduction_catalog.rs"));
}

#[test]
fn reduction_catalog_example_runs() {
    reduction_catalog_example::run_example().expect("reduction_catalog example should run");
}

#[allow(dead_code)]
mod dual_reduction_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dual_reduction.rs"));
}

#[test]
fn dual_reduction_example_runs() {
    dual_reduction_example::run_example().expect("dual_reduction example should run");
}

#[allow(dead_code)]
mod section_bound_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/section_bound.rs"));
}

#[test]
fn section_bound_example_runs() {
    section_bound_example::run_example().expect("section_bound example should run");
}

#[allow(dead_code)]
mod trellis_export_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/trellis_export.rs"));
}

#[test]
fn trellis_export_example_runs() {
    trellis_export_example::run_example().expect("trellis_export example should run");
}

#[allow(dead_code)]
mod polynomial_transforms_example {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/polynomial_transforms.rs"
    ));
}

#[test]
fn polynomial_transforms_example_runs() {
    polynomial_transforms_example::run_example().expect("polynomial_transforms example should run");
}
