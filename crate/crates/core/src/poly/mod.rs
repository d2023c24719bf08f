//! Polynomials and polynomial matrices over GF(2)[D].

mod algebra;
mod matrix;
mod scalar;

pub use algebra::{
    basic_equivalent, compute_check_matrix, determinant, full_minors, reciprocal_dual, smith_form, validate_canonical,
    Canonicality, SmithForm,
};
pub use matrix::{CoeffExpansion, PolyMatrix};
pub use scalar::Poly;
