use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf_poly::{linalg, Field, Gf};
use crate::rational::{frac, Frac};
use crate::tensor::{CodeFamily, TensorWord};
use crate::{Error, Result};

/// Largest ambiguity coset searched exhaustively.
pub const AMBIGUITY_LIMIT: u64 = 1 << 24;

/// Number of local-search restarts.
pub const RESTARTS: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchStrategy {
    Exhaustive,
    LocalSearch,
}

/// A word split as `a_1 + ... + a_m` with `a_i ∈ C^(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<TensorWord>,
}

impl Decomposition {
    /// `sum_i ||a_i||_i`.
    pub fn cost(&self) -> Frac {
        self.parts.iter().enumerate().map(|(i, a)| a.line_weight(i).expect("part has the family shape")).sum()
    }

    pub fn sum(&self) -> TensorWord {
        let mut it = self.parts.iter();
        let mut acc = it.next().expect("at least one part").clone();
        for p in it {
            acc.add_assign(p).expect("parts share a shape");
        }
        acc
    }

    /// Both invariants: `a_i ∈ C^(i)` and `sum a_i = word`.
    pub fn validate(&self, family: &CodeFamily, word: &TensorWord) -> Result<()> {
        if self.parts.len() != family.dims() {
            return Err(Error::Shape(format!("{} parts for {} axes", self.parts.len(), family.dims())));
        }
        for (axis, p) in self.parts.iter().enumerate() {
            if !family.direction_contains(p, axis)? {
                return Err(Error::NotInCode(format!("part {axis} is not in its direction code")));
            }
        }
        if &self.sum() != word {
            return Err(Error::NotInCode("parts do not sum to the word".into()));
        }
        Ok(())
    }
}

/// Result of a decomposition search. `exact` marks a global minimizer.
#[derive(Clone, Debug)]
pub struct DecompositionResult {
    pub decomposition: Decomposition,
    pub cost: Frac,
    pub exact: bool,
}

/// Coordinates for all decompositions at once: one variable per (axis,
/// line, generator row) of the direction codes, blocked per line so that a
/// line of `a_i` is nonzero exactly when its block is.
#[derive(Clone, Debug)]
pub struct DecompositionSpace {
    family: CodeFamily,
    field: Field,
    shape: Vec<usize>,
    /// `(axis, line start)` per block, axis-major.
    blocks: Vec<(usize, usize)>,
    block_len: Vec<usize>,
    block_offset: Vec<usize>,
    /// Scaled line weight of a block: `lcm_i |L_i| / |L_axis|`.
    block_weight: Vec<u64>,
    denom: u64,
    /// Column `v` of the system: the word of variable `v` (length `N`).
    columns: Vec<Vec<Gf>>,
    /// Rows of the `N x V` system matrix.
    matrix: Vec<Vec<Gf>>,
    /// Columns forming a basis of the sum code.
    pivots: Vec<usize>,
    /// Basis of the ambiguity space.
    kernel: Vec<Vec<Gf>>,
}

impl DecompositionSpace {
    pub fn new(family: &CodeFamily) -> Result<DecompositionSpace> {
        let shape = family.shape();
        let zero = family.zero_word();
        let n_cells = zero.len();
        let mut blocks = Vec::new();
        let mut block_len = Vec::new();
        let mut block_offset = Vec::new();
        let mut columns = Vec::new();
        for axis in 0..family.dims() {
            let code = family.code(axis);
            for start in zero.line_starts(axis) {
                blocks.push((axis, start));
                block_len.push(code.dimension());
                block_offset.push(columns.len());
                for g in code.generator() {
                    let mut w = zero.clone();
                    w.set_line(axis, start, g);
                    columns.push(w.into_data());
                }
            }
        }
        if columns.len() > 20_000 {
            return Err(Error::TooLarge(format!("{} decomposition variables", columns.len())));
        }
        let lines: Vec<u64> = (0..family.dims()).map(|a| zero.line_count(a) as u64).collect();
        let denom = lines.iter().fold(1u64, |acc, &l| acc.lcm(&l));
        let block_weight = blocks.iter().map(|&(axis, _)| denom / lines[axis]).collect();
        let v = columns.len();
        let matrix: Vec<Vec<Gf>> = (0..n_cells).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
        let field = family.field().clone();
        let kernel = linalg::nullspace(&field, &matrix, v);
        let pivots = linalg::rref(&field, &mut matrix.clone());
        Ok(DecompositionSpace {
            family: family.clone(),
            field,
            shape,
            blocks,
            block_len,
            block_offset,
            block_weight,
            denom,
            columns,
            matrix,
            pivots,
            kernel,
        })
    }

    pub fn family(&self) -> &CodeFamily {
        &self.family
    }

    pub fn variables(&self) -> usize {
        self.columns.len()
    }

    /// `dim ⊞`.
    pub fn sum_dimension(&self) -> usize {
        self.pivots.len()
    }

    /// Dimension of the ambiguity space.
    pub fn ambiguity_dimension(&self) -> usize {
        self.kernel.len()
    }

    pub fn ambiguity_size(&self) -> u64 {
        (self.field.size() as u64).checked_pow(self.kernel.len() as u32).unwrap_or(u64::MAX)
    }

    pub fn sum_size(&self) -> u64 {
        (self.field.size() as u64).checked_pow(self.pivots.len() as u32).unwrap_or(u64::MAX)
    }

    /// Scaled cost `denom * sum_i ||a_i||_i` of a coefficient vector.
    fn scaled_cost(&self, x: &[Gf]) -> u64 {
        let mut cost = 0;
        for b in 0..self.blocks.len() {
            let o = self.block_offset[b];
            if x[o..o + self.block_len[b]].iter().any(|c| !c.is_zero()) {
                cost += self.block_weight[b];
            }
        }
        cost
    }

    fn to_frac(&self, scaled: u64) -> Frac {
        frac(scaled as i64, self.denom as i64)
    }

    /// The word `M x`.
    pub fn word_of(&self, x: &[Gf]) -> TensorWord {
        let data = linalg::combine(&self.field, &self.columns, x, self.columns.first().map_or(0, Vec::len));
        TensorWord::from_data(&self.shape, data).expect("columns have the family shape")
    }

    pub fn decomposition_of(&self, x: &[Gf]) -> Decomposition {
        let zero = TensorWord::zeros(&self.shape).expect("valid shape");
        let mut parts = vec![zero; self.family.dims()];
        for (b, &(axis, start)) in self.blocks.iter().enumerate() {
            let o = self.block_offset[b];
            let code = self.family.code(axis);
            let coeffs = &x[o..o + self.block_len[b]];
            if coeffs.iter().all(|c| c.is_zero()) {
                continue;
            }
            let line = linalg::combine(&self.field, code.generator(), coeffs, code.length());
            parts[axis].set_line(axis, start, &line);
        }
        Decomposition { parts }
    }

    /// Some coefficient vector with `M x = word`.
    pub fn particular(&self, word: &TensorWord) -> Result<Vec<Gf>> {
        self.family.check_word(word)?;
        let (x, _) = linalg::solve(&self.field, &self.matrix, word.data(), self.variables())
            .ok_or_else(|| Error::NotInCode("word is not in the sum code".into()))?;
        Ok(x)
    }

    /// Minimum scaled cost over the coset `x + ambiguity space`, by
    /// enumeration in odometer order (first minimizer wins).
    fn exhaustive_from(&self, x0: &[Gf]) -> Result<(Vec<Gf>, u64)> {
        if self.ambiguity_size() > AMBIGUITY_LIMIT {
            return Err(Error::TooLarge(format!(
                "ambiguity space {}^{} exceeds 2^24",
                self.field.size(),
                self.kernel.len()
            )));
        }
        let q = self.field.size();
        let k = self.kernel.len();
        let mut digits = vec![0usize; k];
        let mut x = x0.to_vec();
        let mut best = (x.clone(), self.scaled_cost(&x));
        loop {
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(best);
                }
                i -= 1;
                let old = Gf(digits[i] as u8);
                digits[i] = (digits[i] + 1) % q;
                let delta = Gf(digits[i] as u8) - old;
                for (xv, &kv) in x.iter_mut().zip(&self.kernel[i]) {
                    *xv += self.field.mul(delta, kv);
                }
                if digits[i] != 0 {
                    break;
                }
            }
            let c = self.scaled_cost(&x);
            if c < best.1 {
                best = (x.clone(), c);
            }
        }
    }

    /// Greedy descent: repeatedly apply the single move `x + s k_j` that
    /// lowers the cost most.
    fn descend(&self, mut x: Vec<Gf>) -> (Vec<Gf>, u64) {
        let mut cost = self.scaled_cost(&x);
        loop {
            let mut best: Option<(usize, Gf, u64)> = None;
            for (j, kv) in self.kernel.iter().enumerate() {
                for s in self.field.elements().skip(1) {
                    let y: Vec<Gf> = x.iter().zip(kv).map(|(&a, &b)| a + self.field.mul(s, b)).collect();
                    let c = self.scaled_cost(&y);
                    if c < best.map_or(cost, |b| b.2) {
                        best = Some((j, s, c));
                    }
                }
            }
            match best {
                Some((j, s, c)) => {
                    for (a, &b) in x.iter_mut().zip(&self.kernel[j]) {
                        *a += self.field.mul(s, b);
                    }
                    cost = c;
                }
                None => return (x, cost),
            }
        }
    }

    /// Best of [`RESTARTS`] descents, the first from the particular solution
    /// and the rest from random coset points.
    fn local_search_from(&self, x0: &[Gf], seed: u64) -> (Vec<Gf>, u64) {
        let q = self.field.size();
        let mut best: Option<(Vec<Gf>, u64)> = None;
        for r in 0..RESTARTS {
            let mut x = x0.to_vec();
            if r > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ r.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                for kv in &self.kernel {
                    let s = Gf(rng.gen_range(0..q) as u8);
                    for (a, &b) in x.iter_mut().zip(kv) {
                        *a += self.field.mul(s, b);
                    }
                }
            }
            let cand = self.descend(x);
            if best.as_ref().is_none_or(|b| cand.1 < b.1) {
                best = Some(cand);
            }
        }
        best.expect("at least one restart")
    }

    /// Cheapest decomposition of `word`; exact under `Exhaustive`, an upper
    /// bound on the minimum cost under `LocalSearch`.
    pub fn min_decomposition(
        &self,
        word: &TensorWord,
        strategy: SearchStrategy,
        seed: u64,
    ) -> Result<DecompositionResult> {
        let x0 = self.particular(word)?;
        let ((x, scaled), exact) = match strategy {
            SearchStrategy::Exhaustive => (self.exhaustive_from(&x0)?, true),
            SearchStrategy::LocalSearch => (self.local_search_from(&x0, seed), self.kernel.is_empty()),
        };
        let decomposition = self.decomposition_of(&x);
        decomposition.validate(&self.family, word)?;
        let cost = self.to_frac(scaled);
        debug_assert_eq!(cost, decomposition.cost());
        Ok(DecompositionResult { decomposition, cost, exact })
    }

    /// Visits every word of the sum code with a coefficient vector for it.
    pub(crate) fn for_each_sum_word(&self, mut visit: impl FnMut(&[Gf]) -> Result<()>) -> Result<()> {
        let q = self.field.size();
        let r = self.pivots.len();
        let mut digits = vec![0usize; r];
        let mut x = vec![Gf::ZERO; self.variables()];
        loop {
            visit(&x)?;
            let mut i = r;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                digits[i] = (digits[i] + 1) % q;
                x[self.pivots[i]] = Gf(digits[i] as u8);
                if digits[i] != 0 {
                    break;
                }
            }
        }
    }

    /// Minimum cost over the coset of a coefficient vector.
    pub(crate) fn min_cost_from(&self, x0: &[Gf]) -> Result<(Vec<Gf>, u64)> {
        self.exhaustive_from(x0)
    }

    pub(crate) fn scaled_to_frac(&self, scaled: u64) -> Frac {
        self.to_frac(scaled)
    }
}

/// Cheapest decomposition of `word` over `family`.
pub fn min_decomposition(
    word: &TensorWord,
    family: &CodeFamily,
    strategy: SearchStrategy,
    seed: u64,
) -> Result<DecompositionResult> {
    DecompositionSpace::new(family)?.min_decomposition(word, strategy, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::LinearCode;
    use num_traits::Zero;

    fn rep2(m: usize) -> CodeFamily {
        let f = Field::new(1).unwrap();
        CodeFamily::uniform(&LinearCode::repetition(&f, 2).unwrap(), m).unwrap()
    }

    #[test]
    fn zero_word_has_zero_cost() {
        let fam = rep2(2);
        let r = min_decomposition(&fam.zero_word(), &fam, SearchStrategy::Exhaustive, 0).unwrap();
        assert!(r.cost.is_zero());
        assert!(r.decomposition.parts.iter().all(TensorWord::is_zero));
    }

    #[test]
    fn diagonal_word_costs_one() {
        let fam = rep2(2);
        let diag = TensorWord::from_data(&[2, 2], vec![Gf(1), Gf(0), Gf(0), Gf(1)]).unwrap();
        let r = min_decomposition(&diag, &fam, SearchStrategy::Exhaustive, 0).unwrap();
        assert_eq!(r.cost, frac(1, 1));
        r.decomposition.validate(&fam, &diag).unwrap();
    }

    #[test]
    fn space_dimensions_for_rep2() {
        let s = DecompositionSpace::new(&rep2(2)).unwrap();
        assert_eq!((s.variables(), s.sum_dimension(), s.ambiguity_dimension()), (4, 3, 1));
        let s3 = DecompositionSpace::new(&rep2(3)).unwrap();
        assert_eq!((s3.variables(), s3.sum_dimension(), s3.ambiguity_dimension()), (12, 7, 5));
    }

    #[test]
    fn word_outside_the_sum_is_rejected() {
        let fam = rep2(2);
        let w = TensorWord::from_data(&[2, 2], vec![Gf(1), Gf(0), Gf(0), Gf(0)]).unwrap();
        assert!(matches!(min_decomposition(&w, &fam, SearchStrategy::Exhaustive, 0), Err(Error::NotInCode(_))));
    }

    #[test]
    fn local_search_never_beats_exhaustive() {
        let f = Field::new(2).unwrap();
        let fam = CodeFamily::reed_solomon(&f, 1, 3, 2).unwrap();
        let space = DecompositionSpace::new(&fam).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..50 {
            let w = fam.random_sum_word(&mut rng);
            let ex = space.min_decomposition(&w, SearchStrategy::Exhaustive, i).unwrap();
            let ls = space.min_decomposition(&w, SearchStrategy::LocalSearch, i).unwrap();
            assert!(ex.cost <= ls.cost);
        }
    }
}
