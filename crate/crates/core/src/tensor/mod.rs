//! Words on an m-dimensional grid, axis-parallel lines and flats, and
//! membership in the tensor code, the sum code `C_1 ⊞ ... ⊞ C_m` and the
//! direction codes `C^(i)`.

pub mod family;
pub mod flat;
pub mod format;
pub mod word;

pub use family::{CodeFamily, NearestWord, SumMethod, TENSOR_BRUTE_LIMIT};
pub use flat::{enumerate_flats, subsets, Flat};
pub use format::{parse_word, write_word};
pub use word::TensorWord;
