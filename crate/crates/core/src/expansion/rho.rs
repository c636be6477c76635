use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::certificate::certify_upper_bound;
use super::counterexample::counterexample_word;
use super::decompose::{Decomposition, DecompositionSpace, SearchStrategy, AMBIGUITY_LIMIT};
use crate::codes::CyclicCode;
use crate::rational::{frac, Frac};
use crate::tensor::{CodeFamily, TensorWord};
use crate::{Error, Result};

/// Largest sum code enumerated by [`rho_exact`].
pub const SUM_LIMIT: u64 = 1 << 20;

/// Decomposition spaces are built for sampled words only up to this many
/// `variables x cells` entries.
pub const SPACE_LIMIT: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct RhoExact {
    pub value: Frac,
    /// First word of the sum code (in enumeration order) attaining the value.
    pub witness: TensorWord,
    pub decomposition: Decomposition,
    pub words: u64,
}

/// `rho = min over nonzero c ∈ ⊞ of ||c|| / min_decomposition_cost(c)`.
pub fn rho_exact(family: &CodeFamily) -> Result<RhoExact> {
    let space = DecompositionSpace::new(family)?;
    if space.sum_size() > SUM_LIMIT {
        return Err(Error::TooLarge(format!("sum code of size {} exceeds 2^20", space.sum_size())));
    }
    if space.ambiguity_size() > AMBIGUITY_LIMIT {
        return Err(Error::TooLarge(format!("ambiguity space of size {} exceeds 2^24", space.ambiguity_size())));
    }
    let n = family.cells() as i64;
    let mut best: Option<(Frac, Vec<crate::Gf>)> = None;
    let mut words = 0u64;
    space.for_each_sum_word(|x| {
        words += 1;
        let c = space.word_of(x);
        let w = c.weight();
        if w == 0 {
            return Ok(());
        }
        let (xmin, scaled) = space.min_cost_from(x)?;
        let ratio = frac(w as i64, n) / space.scaled_to_frac(scaled);
        if best.as_ref().is_none_or(|(b, _)| ratio < *b) {
            best = Some((ratio, xmin));
        }
        Ok(())
    })?;
    let (value, x) = best.ok_or_else(|| Error::Degenerate("the sum code is zero".into()))?;
    let decomposition = space.decomposition_of(&x);
    let witness = decomposition.sum();
    decomposition.validate(family, &witness)?;
    Ok(RhoExact { value, witness, decomposition, words })
}

/// How a pool word's ratio was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatioKind {
    /// `||c|| max|L_i| / L` from a line-cover lower bound: certified.
    Certificate,
    /// `||c|| / min cost` with the minimum found exhaustively: certified.
    Exact,
    /// `||c|| / cost` of a local-search decomposition: heuristic.
    Heuristic,
}

#[derive(Clone, Debug)]
pub struct RhoSampled {
    /// Minimum certified upper bound on `rho` over the pool.
    pub certified_upper: Frac,
    /// Minimum over the pool of `||c|| / best found cost`, including the
    /// certified ratios; not a bound on `rho` in general.
    pub heuristic: Frac,
    pub pool_size: usize,
    pub samples: usize,
    pub seed: u64,
    /// Kind of the ratio attaining `certified_upper`.
    pub certified_by: RatioKind,
}

/// True for `(C, C, C)` with `C` the rate-1/3 primitive RS code over a field
/// of even degree, where [`counterexample_word`] applies.
pub fn counterexample_applies(family: &CodeFamily) -> bool {
    let n = family.code(0).length();
    family.dims() == 3
        && n.is_multiple_of(3)
        && family
            .codes()
            .iter()
            .all(|c| c.length() == n && c.cyclic().and_then(CyclicCode::rs_dimension) == Some(n / 3))
}

/// Sample pool: the counterexample word when it applies, one single-line
/// word per axis, then `samples` uniform words of the sum code.
pub fn sample_pool(family: &CodeFamily, samples: usize, seed: u64) -> Result<Vec<TensorWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = Vec::new();
    if counterexample_applies(family) {
        pool.push(counterexample_word(family.field(), family.code(0).length() / 3)?);
    }
    for axis in 0..family.dims() {
        let code = family.code(axis);
        if code.dimension() == 0 {
            continue;
        }
        let mut line = CodeFamily::random_codeword_of(code, &mut rng);
        if line.iter().all(|c| c.is_zero()) {
            line = code.generator()[0].clone();
        }
        let mut w = family.zero_word();
        let start = w.line_starts(axis)[rng.gen_range(0..w.line_count(axis))];
        w.set_line(axis, start, &line);
        pool.push(w);
    }
    for _ in 0..samples {
        pool.push(family.random_sum_word(&mut rng));
    }
    Ok(pool)
}

/// Upper bound on `rho` from a sampled pool of sum-code words. Every word
/// yields a certified bound through its line-cover certificate, tightened to
/// the exact ratio when its ambiguity coset is small enough to search.
pub fn rho_upper_sampled(family: &CodeFamily, samples: usize, seed: u64) -> Result<RhoSampled> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let pool = sample_pool(family, samples, seed)?;
    let n = family.cells() as i64;
    let space = if family.cells().saturating_mul(family.cells()) <= SPACE_LIMIT {
        Some(DecompositionSpace::new(family)?)
    } else {
        None
    };
    let mut certified: Option<(Frac, RatioKind)> = None;
    let mut heuristic: Option<Frac> = None;
    for (i, word) in pool.iter().enumerate() {
        if word.is_zero() {
            continue;
        }
        let norm = frac(word.weight() as i64, n);
        let mut cands = vec![(certify_upper_bound(word, family)?.bound, RatioKind::Certificate)];
        if let Some(space) = &space {
            let strategy = if space.ambiguity_size() <= AMBIGUITY_LIMIT {
                SearchStrategy::Exhaustive
            } else {
                SearchStrategy::LocalSearch
            };
            let r = space.min_decomposition(word, strategy, seed.wrapping_add(i as u64))?;
            if !r.cost.is_zero() {
                let kind = if r.exact { RatioKind::Exact } else { RatioKind::Heuristic };
                cands.push((norm / r.cost, kind));
            }
        }
        for (ratio, kind) in cands {
            if heuristic.is_none_or(|h| ratio < h) {
                heuristic = Some(ratio);
            }
            if kind != RatioKind::Heuristic && certified.is_none_or(|(c, _)| ratio < c) {
                certified = Some((ratio, kind));
            }
        }
    }
    let (certified_upper, certified_by) =
        certified.ok_or_else(|| Error::Degenerate("sample pool has no nonzero word".into()))?;
    Ok(RhoSampled {
        certified_upper,
        heuristic: heuristic.expect("set together with certified"),
        pool_size: pool.len(),
        samples,
        seed,
        certified_by,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;
    use crate::gf_poly::Field;

    fn rep2(m: usize) -> CodeFamily {
        let f = Field::new(1).unwrap();
        CodeFamily::uniform(&LinearCode::repetition(&f, 2).unwrap(), m).unwrap()
    }

    #[test]
    fn rep2_square_is_one_half() {
        let r = rho_exact(&rep2(2)).unwrap();
        assert_eq!(r.value, frac(1, 2));
        assert_eq!(r.words, 8);
        assert_eq!(r.witness.weight(), 2);
    }

    #[test]
    fn full_factor_keeps_rho_at_most_one() {
        let f = Field::new(1).unwrap();
        let fam =
            CodeFamily::new(vec![LinearCode::full(&f, 2).unwrap(), LinearCode::repetition(&f, 2).unwrap()]).unwrap();
        assert!(rho_exact(&fam).unwrap().value <= frac(1, 1));
    }

    #[test]
    fn sampled_bound_is_above_exact_and_deterministic() {
        let fam = CodeFamily::reed_solomon(&Field::new(2).unwrap(), 1, 3, 2).unwrap();
        let exact = rho_exact(&fam).unwrap().value;
        let a = rho_upper_sampled(&fam, 30, 7).unwrap();
        let b = rho_upper_sampled(&fam, 30, 7).unwrap();
        assert!(exact <= a.certified_upper);
        assert_eq!(a.certified_upper, b.certified_upper);
        assert_eq!(a.heuristic, b.heuristic);
        assert_eq!(a.pool_size, 32);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(rho_upper_sampled(&rep2(2), 0, 1).is_err());
    }

    #[test]
    fn counterexample_in_pool_gives_one_third() {
        let fam = CodeFamily::reed_solomon(&Field::new(2).unwrap(), 1, 3, 3).unwrap();
        assert!(counterexample_applies(&fam));
        let r = rho_upper_sampled(&fam, 5, 3).unwrap();
        assert!(r.certified_upper <= frac(1, 3));
    }
}
