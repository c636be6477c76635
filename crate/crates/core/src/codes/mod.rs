//! Linear and cyclic codes: construction, duality, membership, distances and
//! nearest-codeword decoding.

pub mod cyclic;
pub mod decode;
pub mod linear;

pub use cyclic::{min_distance, CyclicCode, DistanceMode};
pub use decode::{
    bounded_distance_decode, decode_with_bounds, delta_to_code, hamming, nearest_brute, nearest_codeword, weight,
    Distance, LineDecode, Strategy,
};
pub use linear::{LinearCode, EXHAUSTIVE_LIMIT};
