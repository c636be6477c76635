//! Product expansion: decompositions of sum-code words into direction-code
//! parts, the exact constant on small families, sampled upper bounds, and
//! line-cover certificates.

pub mod certificate;
pub mod counterexample;
pub mod decompose;
pub mod rho;

pub use certificate::{certify_upper_bound, verify_certificate, ExpansionCertificate, Verification};
pub use counterexample::{
    counterexample_field, counterexample_word, cover_lower_bound, line_disjoint_support, max_line_occupancy,
    non_collinear_packing,
};
pub use decompose::{min_decomposition, Decomposition, DecompositionResult, DecompositionSpace, SearchStrategy};
pub use rho::{counterexample_applies, rho_exact, rho_upper_sampled, sample_pool, RatioKind, RhoExact, RhoSampled};
