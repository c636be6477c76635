use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::flat_test::{FlatTest, TestPlan};
use crate::codes::Strategy;
use crate::expansion::{counterexample_applies, counterexample_word};
use crate::gf_poly::Gf;
use crate::rational::{frac, Frac};
use crate::tensor::{CodeFamily, TensorWord, TENSOR_BRUTE_LIMIT};
use crate::{Error, Result};

/// Largest word space `q^N` enumerated exhaustively.
pub const WORD_SPACE_LIMIT: u64 = 1 << 24;

const CHUNK: u64 = 1 << 12;

/// The word with row-major entries given by the base-`q` digits of `index`,
/// most significant first.
pub(crate) fn word_from_index(shape: &[usize], q: usize, mut index: u64) -> TensorWord {
    let n: usize = shape.iter().product();
    let mut data = vec![Gf::ZERO; n];
    for slot in data.iter_mut().rev() {
        *slot = Gf((index % q as u64) as u8);
        index /= q as u64;
    }
    TensorWord::from_data(shape, data).expect("length matches shape")
}

pub(crate) fn word_space_size(family: &CodeFamily) -> Result<u64> {
    let q = family.field().size() as u64;
    u32::try_from(family.cells())
        .ok()
        .and_then(|n| q.checked_pow(n))
        .filter(|&s| s <= WORD_SPACE_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("word space {q}^{} exceeds 2^24", family.cells())))
}

/// Min-reduction over the word space in fixed-size chunks; ties go to the
/// smallest index, so the result does not depend on the number of workers.
pub(crate) fn min_over_words<F>(family: &CodeFamily, eval: F) -> Result<Option<(Frac, u64)>>
where
    F: Fn(&TensorWord) -> Result<Option<Frac>> + Sync,
{
    let total = word_space_size(family)?;
    let shape = family.shape();
    let q = family.field().size();
    let chunks: Vec<u64> = (0..total.div_ceil(CHUNK)).collect();
    let partial: Vec<Option<(Frac, u64)>> = chunks
        .par_iter()
        .map(|&c| {
            let mut best: Option<(Frac, u64)> = None;
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                if let Some(r) = eval(&word_from_index(&shape, q, idx))? {
                    if best.is_none_or(|(b, _)| r < b) {
                        best = Some((r, idx));
                    }
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    Ok(partial.into_iter().flatten().min_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1))))
}

#[derive(Clone, Debug)]
pub struct RhoRExact {
    pub value: Frac,
    /// Smallest word (in enumeration order) attaining the minimum.
    pub witness: TensorWord,
    pub words: u64,
}

/// `rho_r = min over x ∉ ⊗C of E_I delta(x|_I, (⊗C)|_I) / delta(x, ⊗C)`,
/// by enumerating every word.
pub fn rho_r_exact(test: &FlatTest, family: &CodeFamily) -> Result<RhoRExact> {
    if family.tensor_size() > TENSOR_BRUTE_LIMIT {
        return Err(Error::TooLarge("tensor code too large for exact distances".into()));
    }
    let words = word_space_size(family)?;
    let plan = TestPlan::new(test, family, Some(Strategy::Brute))?;
    let n = family.cells() as i64;
    let best = min_over_words(family, |x| {
        let d = family.tensor_distance(x, Some(Strategy::Brute))?;
        if d.upper == 0 {
            return Ok(None);
        }
        let e = plan.expectation(x)?;
        let e = e.value().ok_or_else(|| Error::TooLarge("inexact local distance in exact mode".into()))?;
        Ok(Some(e / frac(d.upper as i64, n)))
    })?;
    let (value, idx) = best.ok_or_else(|| Error::Degenerate("every word is a codeword".into()))?;
    Ok(RhoRExact { value, witness: word_from_index(&family.shape(), family.field().size(), idx), words })
}

#[derive(Clone, Debug)]
pub struct RhoRSampled {
    /// Certified upper bound on `rho_r`: the minimum over the pool of
    /// `E_upper / delta_lower`.
    pub upper: Frac,
    /// Minimum over the pool of `E_lower / delta_upper`, a lower bound on
    /// each pool word's own ratio.
    pub pool_min_lower: Frac,
    /// Pool word attaining `upper`.
    pub witness: TensorWord,
    pub pool_size: usize,
    pub codewords_skipped: usize,
    /// Every pool ratio was computed exactly.
    pub exact: bool,
    pub samples: usize,
    pub seed: u64,
}

/// Adversarial words followed by `samples` uniform words: single-line
/// corruptions of tensor codewords of every weight, single-cell corruptions,
/// diagonal patterns added to codewords, and the counterexample word when it
/// applies.
pub fn robustness_pool(family: &CodeFamily, samples: usize, seed: u64) -> Result<Vec<TensorWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = family.field().size();
    let nonzero = |rng: &mut ChaCha8Rng| Gf(rng.gen_range(1..q) as u8);
    let mut pool = Vec::new();
    if counterexample_applies(family) {
        pool.push(counterexample_word(family.field(), family.code(0).length() / 3)?);
    }
    let m = family.dims();
    for axis in 0..m {
        let n = family.code(axis).length();
        for errors in 1..=n {
            let mut w = family.random_tensor_word(&mut rng);
            let starts = w.line_starts(axis);
            let start = starts[rng.gen_range(0..starts.len())];
            let stride = w.strides()[axis];
            let mut pos: Vec<usize> = (0..n).collect();
            for e in 0..errors {
                let j = rng.gen_range(e..n);
                pos.swap(e, j);
                w.data_mut()[start + pos[e] * stride] += nonzero(&mut rng);
            }
            pool.push(w);
        }
    }
    for _ in 0..2 {
        let mut w = family.random_tensor_word(&mut rng);
        let i = rng.gen_range(0..w.len());
        w.data_mut()[i] += nonzero(&mut rng);
        pool.push(w);
    }
    let n0 = family.code(0).length();
    for shift in 0..2 {
        let mut w = family.random_tensor_word(&mut rng);
        for idx in 0..w.len() {
            let s: usize = w.coords_of(idx).iter().sum();
            if s % n0 == shift % n0 {
                w.data_mut()[idx] += nonzero(&mut rng);
            }
        }
        pool.push(w);
    }
    for _ in 0..samples {
        pool.push(family.random_word(&mut rng));
    }
    Ok(pool)
}

/// Ratios over [`robustness_pool`]. Local distances come from per-flat
/// decoding (exact or certified intervals); global distances from
/// [`CodeFamily::tensor_distance`].
pub fn rho_r_sampled_upper(test: &FlatTest, family: &CodeFamily, samples: usize, seed: u64) -> Result<RhoRSampled> {
    let pool = robustness_pool(family, samples, seed)?;
    let plan = TestPlan::new(test, family, None)?;
    let n = family.cells() as i64;
    let mut upper: Option<(Frac, usize)> = None;
    let mut pool_min_lower: Option<Frac> = None;
    let mut skipped = 0;
    let mut exact = true;
    for (i, x) in pool.iter().enumerate() {
        let d = family.tensor_distance(x, None)?;
        if d.upper == 0 {
            skipped += 1;
            continue;
        }
        let e = plan.expectation(x)?;
        exact &= d.is_exact() && e.is_exact();
        let d_lower = d.lower.max(1);
        let hi = e.upper / frac(d_lower as i64, n);
        let lo = e.lower / frac(d.upper as i64, n);
        if upper.is_none_or(|(u, _)| hi < u) {
            upper = Some((hi, i));
        }
        if pool_min_lower.is_none_or(|l| lo < l) {
            pool_min_lower = Some(lo);
        }
    }
    let (upper, at) = upper.ok_or_else(|| Error::Degenerate("every pool word is a codeword".into()))?;
    Ok(RhoRSampled {
        upper,
        pool_min_lower: pool_min_lower.expect("set with upper"),
        witness: pool[at].clone(),
        pool_size: pool.len(),
        codewords_skipped: skipped,
        exact,
        samples,
        seed,
    })
}
