//! Product (tensor) codes over binary extension fields and their local
//! testability constants.
//!
//! The crate computes, exactly on small instances and as certified bounds on
//! larger ones, three quantities of a family of codes `C_1, ..., C_m`:
//!
//! * product expansion `rho`, via decompositions of words of `C_1 ⊞ ... ⊞ C_m`
//!   ([`expansion`]);
//! * robustness `rho_r` of the axis-parallel k-flat tests ([`testability`]);
//! * agreement testability `rho_a` ([`testability`]).
//!
//! It also builds the Reed-Solomon word on the cube `[n]^3` whose support
//! meets every axis-parallel line exactly once, which certifies
//! `rho(C, C, C) <= 1/n` for the rate-1/3 primitive RS code.

pub mod codes;
pub mod expansion;
pub mod gf_poly;
pub mod rational;
pub mod report;
pub mod tensor;
pub mod testability;

pub use codes::{CyclicCode, Distance, LinearCode, Strategy};
pub use gf_poly::{Field, Gf, MultiPoly};
pub use rational::{BigFrac, Frac};
pub use tensor::{CodeFamily, Flat, SumMethod, TensorWord};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("extension degree {0} outside the supported range 1..=8")]
    UnsupportedDegree(u32),
    #[error("field configuration: {0}")]
    FieldConfig(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("divisibility: {0}")]
    Divisibility(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("not decodable: distance exceeds the decoding radius {radius}")]
    NotDecodable { radius: usize },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("word is not a codeword of {0}")]
    NotInCode(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
