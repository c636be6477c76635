use std::sync::{Arc, OnceLock};

use super::cyclic::CyclicCode;
use crate::gf_poly::{linalg, Field, Gf};
use crate::{Error, Result};

/// Largest code size `q^k` for exhaustive enumeration.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

/// Codeword lists are cached only while they stay this small (entries).
const CACHE_LIMIT: u64 = 1 << 25;

/// A linear code given by a generator basis (kept in reduced row echelon
/// form) and a basis of its dual.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    length: usize,
    generator: Vec<Vec<Gf>>,
    pivots: Vec<usize>,
    parity: Vec<Vec<Gf>>,
    cyclic: Option<CyclicCode>,
    codewords: OnceLock<Arc<Vec<Vec<Gf>>>>,
}

impl LinearCode {
    /// Span of the given rows; linearly dependent rows are allowed.
    pub fn from_generator(field: &Field, length: usize, rows: Vec<Vec<Gf>>) -> Result<LinearCode> {
        if let Some(bad) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::Shape(format!("generator row of length {} for a code of length {length}", bad.len())));
        }
        if rows.iter().flatten().any(|&c| !field.contains(c)) {
            return Err(Error::InvalidArgument("generator entry outside the field".into()));
        }
        let mut generator = rows;
        let pivots = linalg::rref(field, &mut generator);
        let parity = linalg::nullspace(field, &generator, length);
        Ok(LinearCode {
            field: field.clone(),
            length,
            generator,
            pivots,
            parity,
            cyclic: None,
            codewords: OnceLock::new(),
        })
    }

    /// Code whose dual is spanned by `rows`.
    pub fn from_parity(field: &Field, length: usize, rows: Vec<Vec<Gf>>) -> Result<LinearCode> {
        let dual = LinearCode::from_generator(field, length, rows)?;
        LinearCode::from_generator(field, length, dual.parity)
    }

    pub(crate) fn with_cyclic(mut self, cyclic: CyclicCode) -> LinearCode {
        self.cyclic = Some(cyclic);
        self
    }

    /// The `[n, 1]` repetition code.
    pub fn repetition(field: &Field, n: usize) -> Result<LinearCode> {
        LinearCode::from_generator(field, n, vec![vec![Gf::ONE; n]])
    }

    /// The whole space `F_q^n`.
    pub fn full(field: &Field, n: usize) -> Result<LinearCode> {
        let rows = (0..n)
            .map(|i| {
                let mut r = vec![Gf::ZERO; n];
                r[i] = Gf::ONE;
                r
            })
            .collect();
        LinearCode::from_generator(field, n, rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    /// Basis rows in reduced row echelon form.
    pub fn generator(&self) -> &[Vec<Gf>] {
        &self.generator
    }

    /// Basis of the dual code.
    pub fn parity(&self) -> &[Vec<Gf>] {
        &self.parity
    }

    /// Pivot columns of the generator: an information set.
    pub fn information_set(&self) -> &[usize] {
        &self.pivots
    }

    /// Cyclic structure, when the code was built from a check polynomial.
    pub fn cyclic(&self) -> Option<&CyclicCode> {
        self.cyclic.as_ref()
    }

    /// `q^k`, saturating.
    pub fn size(&self) -> u64 {
        (self.field.size() as u64).checked_pow(self.dimension() as u32).unwrap_or(u64::MAX)
    }

    pub fn contains(&self, word: &[Gf]) -> Result<bool> {
        self.check_len(word)?;
        Ok(self.parity.iter().all(|h| linalg::dot(&self.field, h, word).is_zero()))
    }

    pub(crate) fn check_len(&self, word: &[Gf]) -> Result<()> {
        if word.len() != self.length {
            return Err(Error::Shape(format!("word of length {} for a code of length {}", word.len(), self.length)));
        }
        Ok(())
    }

    pub fn encode(&self, message: &[Gf]) -> Result<Vec<Gf>> {
        if message.len() != self.dimension() {
            return Err(Error::Shape(format!(
                "message of length {} for dimension {}",
                message.len(),
                self.dimension()
            )));
        }
        Ok(linalg::combine(&self.field, &self.generator, message, self.length))
    }

    /// The codeword agreeing with `word` on the information set; its distance
    /// from `word` is at most `n - k`.
    pub fn agree_on_information_set(&self, word: &[Gf]) -> Result<Vec<Gf>> {
        self.check_len(word)?;
        let message: Vec<Gf> = self.pivots.iter().map(|&p| word[p]).collect();
        self.encode(&message)
    }

    /// The dual code.
    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::from_generator(&self.field, self.length, self.parity.clone())
    }

    fn ensure_enumerable(&self) -> Result<()> {
        if self.size() > EXHAUSTIVE_LIMIT {
            return Err(Error::TooLarge(format!(
                "code of size {}^{} exceeds the exhaustive limit 2^24",
                self.field.size(),
                self.dimension()
            )));
        }
        Ok(())
    }

    /// Visits every codeword in lexicographic order (messages in
    /// lexicographic order map to codewords in lexicographic order because
    /// the generator is in reduced echelon form).
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[Gf])) -> Result<()> {
        self.ensure_enumerable()?;
        if let Some(list) = self.codewords.get() {
            list.iter().for_each(|c| visit(c));
            return Ok(());
        }
        let q = self.field.size();
        let k = self.dimension();
        let mut message = vec![0usize; k];
        let mut word = vec![Gf::ZERO; self.length];
        loop {
            visit(&word);
            // Odometer increment, last digit fastest; update the word by the
            // difference so each step costs O(changed digits * n).
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                let old = Gf(message[i] as u8);
                message[i] = (message[i] + 1) % q;
                let delta = Gf(message[i] as u8) - old;
                for (w, &g) in word.iter_mut().zip(&self.generator[i]) {
                    *w += self.field.mul(delta, g);
                }
                if message[i] != 0 {
                    break;
                }
            }
        }
    }

    /// All codewords, cached when small enough.
    pub fn codewords(&self) -> Result<Arc<Vec<Vec<Gf>>>> {
        if let Some(list) = self.codewords.get() {
            return Ok(list.clone());
        }
        let mut list = Vec::new();
        self.for_each_codeword(|c| list.push(c.to_vec()))?;
        let list = Arc::new(list);
        if self.size().saturating_mul(self.length as u64) <= CACHE_LIMIT {
            let _ = self.codewords.set(list.clone());
        }
        Ok(list)
    }

    /// Minimum Hamming weight of a nonzero codeword, by enumeration.
    pub fn min_distance_exhaustive(&self) -> Result<usize> {
        let mut best = usize::MAX;
        self.for_each_codeword(|c| {
            let w = c.iter().filter(|x| !x.is_zero()).count();
            if w > 0 && w < best {
                best = w;
            }
        })?;
        if best == usize::MAX {
            return Err(Error::Degenerate("the zero code has no minimum distance".into()));
        }
        Ok(best)
    }

    pub fn same_code_as(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.length == other.length && self.generator == other.generator
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let f = Field::new(2).unwrap();
        let code =
            LinearCode::from_generator(&f, 3, vec![vec![Gf(1), Gf(0), Gf(2)], vec![Gf(0), Gf(1), Gf(3)]]).unwrap();
        let words = code.codewords().unwrap();
        assert_eq!(words.len(), 16);
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(words.iter().all(|w| code.contains(w).unwrap()));
    }

    #[test]
    fn generator_and_parity_are_orthogonal_and_complementary() {
        let f = Field::new(4).unwrap();
        let code = LinearCode::from_generator(
            &f,
            5,
            vec![vec![Gf(1), Gf(2), Gf(3), Gf(4), Gf(5)], vec![Gf(9), Gf(0), Gf(1), Gf(1), Gf(7)]],
        )
        .unwrap();
        for g in code.generator() {
            for h in code.parity() {
                assert!(linalg::dot(&f, g, h).is_zero());
            }
        }
        assert_eq!(code.dimension() + code.parity().len(), 5);
        assert!(code.dual().unwrap().dual().unwrap().same_code_as(&code));
    }

    #[test]
    fn repetition_distance() {
        let f = Field::new(1).unwrap();
        assert_eq!(LinearCode::repetition(&f, 2).unwrap().min_distance_exhaustive().unwrap(), 2);
    }

    #[test]
    fn information_set_agreement_is_within_redundancy() {
        let f = Field::new(2).unwrap();
        let code = LinearCode::repetition(&f, 3).unwrap();
        let w = vec![Gf(1), Gf(2), Gf(3)];
        let c = code.agree_on_information_set(&w).unwrap();
        assert!(code.contains(&c).unwrap());
        assert!(w.iter().zip(&c).filter(|(a, b)| a != b).count() <= 2);
    }
}
