//! Finite-field arithmetic over GF(2^m) and polynomial arithmetic, both
//! univariate and modulo `(x_1^n - 1, ..., x_m^n - 1)`.

pub mod field;
pub mod linalg;
pub mod multipoly;
pub mod univariate;

pub use field::{Field, Gf};
pub use multipoly::MultiPoly;
