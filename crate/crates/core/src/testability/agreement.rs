use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::codes::hamming;
use crate::gf_poly::Gf;
use crate::rational::{frac, Frac};
use crate::tensor::{CodeFamily, TensorWord};
use crate::{Error, Result};

/// Largest tuple space `prod |C^(i)|` enumerated exhaustively.
pub const TUPLE_LIMIT: u64 = 1 << 24;

/// Product-code limit for the exhaustive inner minimum.
pub const INNER_LIMIT: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct RhoAExact {
    pub value: Frac,
    /// Minimizing tuple `(c_1, ..., c_m)` and a tensor codeword attaining the
    /// inner minimum.
    pub tuple: Vec<TensorWord>,
    pub common: TensorWord,
    pub tuples: u64,
}

/// Counts indexed by codeword positions.
pub(crate) type Table = Vec<Vec<u32>>;

/// Lookup tables shared by the exact computation and the chain check.
pub(crate) struct TupleTables {
    pub words: Vec<Vec<TensorWord>>,
    pub tensor: Vec<TensorWord>,
    /// `lines[i][a][t]`: lines along axis `i` where `words[i][a]` and
    /// `tensor[t]` differ.
    pub lines: Vec<Vec<Vec<u32>>>,
    /// `pairs[(i, j)][a][b]` for `i < j`: Hamming distance.
    pub pairs: Vec<((usize, usize), Table)>,
    /// `lcm(|L_i|) / |L_i|`.
    pub line_scale: Vec<u64>,
    pub lcm_lines: u64,
}

impl TupleTables {
    pub(crate) fn new(family: &CodeFamily) -> Result<TupleTables> {
        if family.tensor_size() > INNER_LIMIT {
            return Err(Error::TooLarge("tensor code too large for the exhaustive inner minimum".into()));
        }
        let m = family.dims();
        let shape = family.shape();
        let mut count: u64 = 1;
        let mut words = Vec::with_capacity(m);
        for axis in 0..m {
            let code = family.direction_code(axis)?;
            count = count
                .checked_mul(code.size())
                .filter(|&c| c <= TUPLE_LIMIT)
                .ok_or_else(|| Error::TooLarge("tuple space exceeds 2^24".into()))?;
            let cw = code.codewords()?;
            words.push(cw.iter().map(|c| TensorWord::from_data(&shape, c.clone())).collect::<Result<Vec<_>>>()?);
        }
        let tensor = family
            .tensor_code()?
            .codewords()?
            .iter()
            .map(|c| TensorWord::from_data(&shape, c.clone()))
            .collect::<Result<Vec<_>>>()?;
        let lines = (0..m)
            .map(|axis| {
                words[axis]
                    .iter()
                    .map(|w| {
                        tensor.iter().map(|t| Ok(w.sub(t)?.nonzero_lines(axis)? as u32)).collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let table = words[i]
                    .iter()
                    .map(|a| words[j].iter().map(|b| hamming(a.data(), b.data()) as u32).collect())
                    .collect();
                pairs.push(((i, j), table));
            }
        }
        let counts: Vec<u64> = (0..m).map(|a| family.zero_word().line_count(a) as u64).collect();
        let lcm_lines = counts.iter().fold(1u64, |acc, &c| acc.lcm(&c));
        Ok(TupleTables {
            words,
            tensor,
            lines,
            pairs,
            line_scale: counts.iter().map(|c| lcm_lines / c).collect(),
            lcm_lines,
        })
    }

    pub(crate) fn tuple_count(&self) -> u64 {
        self.words.iter().map(|w| w.len() as u64).product()
    }

    pub(crate) fn indices(&self, mut flat: u64) -> Vec<usize> {
        let mut idx = vec![0; self.words.len()];
        for (slot, w) in idx.iter_mut().zip(&self.words).rev() {
            *slot = (flat % w.len() as u64) as usize;
            flat /= w.len() as u64;
        }
        idx
    }

    /// Sum of pairwise Hamming distances over `i < j`.
    pub(crate) fn pair_sum(&self, idx: &[usize]) -> u64 {
        self.pairs.iter().map(|((i, j), t)| t[idx[*i]][idx[*j]] as u64).sum()
    }

    /// `min_t sum_i lines_i * lcm / |L_i|` and the minimizing codeword.
    pub(crate) fn inner_min(&self, idx: &[usize]) -> (u64, usize) {
        (0..self.tensor.len())
            .map(|t| {
                let s: u64 =
                    idx.iter().enumerate().map(|(i, &a)| self.lines[i][a][t] as u64 * self.line_scale[i]).sum();
                (s, t)
            })
            .min()
            .expect("tensor code is nonempty")
    }
}

/// `rho_a = min over tuples, not all agreeing, of
/// E_{i,j} ||c_i - c_j|| / min_c E_i ||c_i - c||_i`, with `i, j` uniform over
/// `[m]^2` and `c` ranging over the tensor code.
pub fn rho_a_exact(family: &CodeFamily) -> Result<RhoAExact> {
    let tables = TupleTables::new(family)?;
    let total = tables.tuple_count();
    const CHUNK: u64 = 1 << 10;
    // Ratios compared as pair_sum / inner; the constant factor is applied at the end.
    let best = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut best: Option<(u64, u64, u64)> = None;
            for flat in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let idx = tables.indices(flat);
                let h = tables.pair_sum(&idx);
                if h == 0 {
                    continue;
                }
                let (s, _) = tables.inner_min(&idx);
                if best.is_none_or(|(bh, bs, _)| (h as u128) * (bs as u128) < (bh as u128) * (s as u128)) {
                    best = Some((h, s, flat));
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .min_by(|a, b| ((a.0 as u128) * (b.1 as u128)).cmp(&((b.0 as u128) * (a.1 as u128))).then(a.2.cmp(&b.2)))
        .ok_or_else(|| Error::Degenerate("every tuple agrees".into()))?;
    let (h, s, flat) = best;
    if s == 0 {
        return Err(Error::Degenerate("a disagreeing tuple has zero distance to the tensor code".into()));
    }
    let idx = tables.indices(flat);
    let m = family.dims() as i64;
    let n = family.cells() as i64;
    let value = frac(2 * h as i64 * tables.lcm_lines as i64, m * n * s as i64);
    let (_, t) = tables.inner_min(&idx);
    Ok(RhoAExact {
        value,
        tuple: idx.iter().enumerate().map(|(i, &a)| tables.words[i][a].clone()).collect(),
        common: tables.tensor[t].clone(),
        tuples: total,
    })
}

/// `E_{i,j} ||c_i - c_j||` over `[m]^2`.
pub fn pairwise_disagreement(tuple: &[TensorWord]) -> Result<Frac> {
    let m = tuple.len() as i64;
    let n = tuple.first().map_or(1, |w| w.len()) as i64;
    let mut sum = 0i64;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            sum += 2 * tuple[i].distance(&tuple[j])? as i64;
        }
    }
    Ok(frac(sum, m * m * n))
}

/// `E_i ||c_i - c||_i`.
pub fn agreement_distance(tuple: &[TensorWord], common: &TensorWord) -> Result<Frac> {
    let mut sum = Frac::from_integer(0);
    for (axis, c) in tuple.iter().enumerate() {
        sum += c.sub(common)?.line_weight(axis)?;
    }
    Ok(sum / frac(tuple.len() as i64, 1))
}

#[derive(Clone, Debug)]
pub struct RhoASampled {
    /// Certified upper bound: minimum of `num / (E_i delta_lower(c_i, ⊗C))`.
    pub upper: Option<Frac>,
    /// Minimum of `num / E_i ||c_i - c||_i` with `c` the best tensor codeword
    /// decoded from some `c_i`; its denominator is an upper bound on the inner
    /// minimum, so this value is not a certified bound.
    pub heuristic: Frac,
    pub pool_size: usize,
    pub skipped: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Tuples around a common tensor codeword (each `c_i` perturbed by one
/// codeword of `C_i` on a random line), then `samples` uniform tuples.
pub fn agreement_pool(family: &CodeFamily, samples: usize, seed: u64) -> Vec<Vec<TensorWord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = family.dims();
    let mut pool = Vec::new();
    for round in 0..4 * m {
        let c = family.random_tensor_word(&mut rng);
        let tuple = (0..m)
            .map(|axis| {
                let mut w = c.clone();
                if round % m == axis || rng.gen_bool(0.5) {
                    let starts = w.line_starts(axis);
                    let start = starts[rng.gen_range(0..starts.len())];
                    let line: Vec<Gf> = w
                        .line_at(axis, start)
                        .iter()
                        .zip(CodeFamily::random_codeword_of(family.code(axis), &mut rng))
                        .map(|(&a, b)| a + b)
                        .collect();
                    w.set_line(axis, start, &line);
                }
                w
            })
            .collect();
        pool.push(tuple);
    }
    for _ in 0..samples {
        pool.push((0..m).map(|axis| family.random_direction_word(axis, &mut rng)).collect());
    }
    pool
}

pub fn rho_a_sampled_upper(family: &CodeFamily, samples: usize, seed: u64) -> Result<RhoASampled> {
    let pool = agreement_pool(family, samples, seed);
    let mut upper: Option<Frac> = None;
    let mut heuristic: Option<Frac> = None;
    let mut skipped = 0;
    let n = family.cells() as i64;
    let m = family.dims() as i64;
    for tuple in &pool {
        let num = pairwise_disagreement(tuple)?;
        if num == Frac::from_integer(0) {
            skipped += 1;
            continue;
        }
        let mut lower_sum = 0i64;
        let mut best_den: Option<Frac> = None;
        for c in tuple {
            let near = family.tensor_distance(c, None)?;
            lower_sum += near.lower as i64;
            let den = agreement_distance(tuple, &near.word)?;
            if best_den.is_none_or(|b| den < b) {
                best_den = Some(den);
            }
        }
        if lower_sum > 0 {
            let r = num / frac(lower_sum, m * n);
            if upper.is_none_or(|u| r < u) {
                upper = Some(r);
            }
        }
        let den = best_den.expect("m >= 1");
        if den > Frac::from_integer(0) {
            let r = num / den;
            if heuristic.is_none_or(|h| r < h) {
                heuristic = Some(r);
            }
        }
    }
    Ok(RhoASampled {
        upper,
        heuristic: heuristic.ok_or_else(|| Error::Degenerate("no usable tuple in the pool".into()))?,
        pool_size: pool.len(),
        skipped,
        samples,
        seed,
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
    fn exact_value_is_attained_by_its_witness() {
        for m in [2, 3] {
            let fam = rep2(m);
            let r = rho_a_exact(&fam).unwrap();
            let num = pairwise_disagreement(&r.tuple).unwrap();
            let den = agreement_distance(&r.tuple, &r.common).unwrap();
            assert_eq!(num / den, r.value);
            assert!(r.value <= frac(2, 1));
        }
    }

    #[test]
    fn sampled_is_at_least_exact() {
        let fam = CodeFamily::reed_solomon(&Field::new(2).unwrap(), 1, 3, 2).unwrap();
        let exact = rho_a_exact(&fam).unwrap().value;
        let s = rho_a_sampled_upper(&fam, 200, 3).unwrap();
        assert!(s.upper.unwrap() >= exact);
        assert!(s.heuristic <= s.upper.unwrap());
    }

    #[test]
    fn all_agreeing_tuples_are_skipped() {
        let ones = TensorWord::from_data(&[2, 2], vec![Gf(1); 4]).unwrap();
        assert_eq!(pairwise_disagreement(&[ones.clone(), ones]).unwrap(), Frac::from_integer(0));
    }
}
