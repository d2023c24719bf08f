//! Characteristic matrices, span analysis and trellis reduction for
//! tail-biting convolutional codes over GF(2).

pub mod characteristic;
pub mod cli;
pub mod error;
pub mod gf2;
pub mod oracle;
pub mod poly;
pub mod reduction;
pub mod span;
pub mod tbgm;

pub use error::{Error, Result};
pub use gf2::{BinaryMatrix, BinaryVector, Direction};
pub use poly::{Poly, PolyMatrix};
pub use span::Span;
