use std::sync::OnceLock;

use rand::Rng;

use super::flat::Flat;
use super::word::TensorWord;
use crate::codes::{decode_with_bounds, min_distance, CyclicCode, DistanceMode, LinearCode, Strategy};
use crate::gf_poly::{Field, Gf, MultiPoly};
use crate::rational::{frac, Frac};
use crate::{Distance, Error, Result};

/// Tensor codes with at most this many codewords are searched exhaustively
/// by [`CodeFamily::tensor_distance`].
pub const TENSOR_BRUTE_LIMIT: u64 = 1 << 16;

/// How membership in `C_1 ⊞ ... ⊞ C_m` is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SumMethod {
    /// `a(x) * prod_i p_i(x_i) = 0` modulo `(x_1^n - 1, ..., x_m^n - 1)`.
    CheckPoly,
    /// Orthogonality to `C_1^⊥ ⊗ ... ⊗ C_m^⊥`: applying every parity matrix
    /// along its axis gives zero.
    DualTensor,
}

/// One code per axis.
#[derive(Clone, Debug)]
pub struct CodeFamily {
    field: Field,
    codes: Vec<LinearCode>,
    distances: OnceLock<Option<Vec<usize>>>,
    tensor: OnceLock<std::result::Result<LinearCode, String>>,
}

/// A word of `C^(axis)` (or of the tensor code) near a given word, with
/// absolute bounds on the true distance.
#[derive(Clone, Debug)]
pub struct NearestWord {
    pub word: TensorWord,
    pub lower: usize,
    pub upper: usize,
}

impl NearestWord {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn distance(&self) -> Distance {
        let n = self.word.len() as i64;
        Distance { lower: frac(self.lower as i64, n), upper: frac(self.upper as i64, n) }
    }
}

impl CodeFamily {
    pub fn new(codes: Vec<LinearCode>) -> Result<CodeFamily> {
        let first = codes.first().ok_or_else(|| Error::InvalidArgument("empty code family".into()))?;
        let field = first.field().clone();
        if codes.iter().any(|c| c.field() != &field) {
            return Err(Error::InvalidArgument("codes over different fields".into()));
        }
        Ok(CodeFamily { field, codes, distances: OnceLock::new(), tensor: OnceLock::new() })
    }

    /// `m` copies of one code.
    pub fn uniform(code: &LinearCode, m: usize) -> Result<CodeFamily> {
        CodeFamily::new(vec![code.clone(); m])
    }

    /// `m` copies of the primitive RS code of rate `num/den` over `field`.
    pub fn reed_solomon(field: &Field, num: usize, den: usize, m: usize) -> Result<CodeFamily> {
        CodeFamily::uniform(&CyclicCode::rs_primitive(field, num, den)?.to_linear(), m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn codes(&self) -> &[LinearCode] {
        &self.codes
    }

    pub fn code(&self, axis: usize) -> &LinearCode {
        &self.codes[axis]
    }

    pub fn dims(&self) -> usize {
        self.codes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.codes.iter().map(LinearCode::length).collect()
    }

    /// Number of grid cells `N = prod n_i`.
    pub fn cells(&self) -> usize {
        self.codes.iter().map(LinearCode::length).product()
    }

    pub fn zero_word(&self) -> TensorWord {
        TensorWord::zeros(&self.shape()).expect("code lengths are positive")
    }

    /// A family on a sub-grid.
    pub fn select(&self, axes: &[usize]) -> Result<CodeFamily> {
        CodeFamily::new(axes.iter().map(|&a| self.codes[a].clone()).collect())
    }

    pub fn check_word(&self, word: &TensorWord) -> Result<()> {
        if word.shape() != self.shape().as_slice() {
            return Err(Error::Shape(format!(
                "word of shape {:?} for a family of shape {:?}",
                word.shape(),
                self.shape()
            )));
        }
        if word.data().iter().any(|&x| !self.field.contains(x)) {
            return Err(Error::InvalidArgument("word entry outside the field".into()));
        }
        Ok(())
    }

    /// Minimum distances `d(C_i)`, when each is known or enumerable.
    pub fn min_distances(&self) -> Option<&[usize]> {
        self.distances
            .get_or_init(|| {
                self.codes
                    .iter()
                    .map(|c| {
                        let mode = if c.cyclic().is_some_and(CyclicCode::is_reed_solomon) {
                            DistanceMode::KnownRs
                        } else {
                            DistanceMode::Exhaustive
                        };
                        min_distance(c, mode).ok()
                    })
                    .collect()
            })
            .as_deref()
    }

    /// Minimum of the normalized distances `delta(C_i)`.
    pub fn min_relative_distance(&self) -> Result<Frac> {
        let d = self.min_distances().ok_or_else(|| Error::TooLarge("component distances unavailable".into()))?;
        Ok(d.iter()
            .zip(&self.codes)
            .map(|(&d, c)| frac(d as i64, c.length() as i64))
            .min()
            .expect("family is nonempty"))
    }

    /// `word ∈ C^(axis)`: every line in direction `axis` is a codeword.
    pub fn direction_contains(&self, word: &TensorWord, axis: usize) -> Result<bool> {
        self.check_word(word)?;
        word.check_axis(axis)?;
        let code = &self.codes[axis];
        if code.parity().is_empty() {
            return Ok(true);
        }
        Ok(word.apply_along_axis(&self.field, axis, code.parity())?.is_zero())
    }

    /// `word ∈ C_1 ⊗ ... ⊗ C_m`.
    pub fn product_contains(&self, word: &TensorWord) -> Result<bool> {
        for axis in 0..self.dims() {
            if !self.direction_contains(word, axis)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The check-polynomial method applies to equal-length cyclic families.
    pub fn check_poly_applicable(&self) -> bool {
        let n = self.codes[0].length();
        self.codes.iter().all(|c| c.length() == n && c.cyclic().is_some())
    }

    pub fn default_sum_method(&self) -> SumMethod {
        if self.check_poly_applicable() {
            SumMethod::CheckPoly
        } else {
            SumMethod::DualTensor
        }
    }

    /// `word ∈ C_1 ⊞ ... ⊞ C_m`.
    pub fn sum_contains(&self, word: &TensorWord, method: SumMethod) -> Result<bool> {
        self.check_word(word)?;
        match method {
            SumMethod::CheckPoly => self.sum_contains_check_poly(word),
            SumMethod::DualTensor => {
                let mut acc = word.clone();
                for (axis, code) in self.codes.iter().enumerate() {
                    if code.parity().is_empty() {
                        return Ok(true);
                    }
                    acc = acc.apply_along_axis(&self.field, axis, code.parity())?;
                }
                Ok(acc.is_zero())
            }
        }
    }

    fn sum_contains_check_poly(&self, word: &TensorWord) -> Result<bool> {
        if !self.check_poly_applicable() {
            return Err(Error::NotApplicable("check_poly membership needs equal-length cyclic codes".into()));
        }
        let n = self.codes[0].length();
        let m = self.dims();
        let mut acc = MultiPoly::from_dense(m, n, word.data())?;
        for (axis, code) in self.codes.iter().enumerate() {
            if acc.is_zero() {
                break;
            }
            let p = code.cyclic().expect("checked above").check_poly();
            acc = acc.mul_mod_ideal(&MultiPoly::in_variable(m, n, axis, p)?, &self.field)?;
        }
        Ok(acc.is_zero())
    }

    /// Line-by-line nearest decoding in direction `axis`; the distance to
    /// `C^(axis)` is the sum of the per-line distances.
    pub fn nearest_in_direction(
        &self,
        word: &TensorWord,
        axis: usize,
        strategy: Option<Strategy>,
    ) -> Result<NearestWord> {
        self.check_word(word)?;
        word.check_axis(axis)?;
        let code = &self.codes[axis];
        let strategy = match strategy {
            Some(s) => s,
            None => Strategy::auto(code)?,
        };
        let mut out = word.clone();
        let (mut lower, mut upper) = (0, 0);
        for (start, line) in word.lines(axis) {
            let dec = decode_with_bounds(&line, code, strategy)?;
            lower += dec.lower;
            upper += dec.upper;
            out.set_line(axis, start, &dec.codeword);
        }
        Ok(NearestWord { word: out, lower, upper })
    }

    /// Encodes a message tensor of shape `(k_1, ..., k_m)` into the tensor
    /// code, using each code's echelon generator.
    pub fn encode(&self, message: &TensorWord) -> Result<TensorWord> {
        let dims: Vec<usize> = self.codes.iter().map(LinearCode::dimension).collect();
        if message.shape() != dims.as_slice() {
            return Err(Error::Shape(format!("message of shape {:?} for dimensions {dims:?}", message.shape())));
        }
        let mut acc = message.clone();
        for (axis, code) in self.codes.iter().enumerate() {
            let transpose: Vec<Vec<Gf>> =
                (0..code.length()).map(|s| code.generator().iter().map(|g| g[s]).collect()).collect();
            acc = acc.apply_along_axis(&self.field, axis, &transpose)?;
        }
        Ok(acc)
    }

    /// The tensor codeword agreeing with `word` on the product of the
    /// information sets.
    pub fn agree_on_information_grid(&self, word: &TensorWord) -> Result<TensorWord> {
        self.check_word(word)?;
        if self.codes.iter().any(|c| c.dimension() == 0) {
            return Ok(self.zero_word());
        }
        let mut msg = word.clone();
        for (axis, code) in self.codes.iter().enumerate() {
            let select: Vec<Vec<Gf>> = code
                .information_set()
                .iter()
                .map(|&p| (0..code.length()).map(|s| if s == p { Gf::ONE } else { Gf::ZERO }).collect())
                .collect();
            msg = msg.apply_along_axis(&self.field, axis, &select)?;
        }
        self.encode(&msg)
    }

    /// `|C_1 ⊗ ... ⊗ C_m| = q^(prod k_i)`, saturating.
    pub fn tensor_size(&self) -> u64 {
        let k: u64 = self.codes.iter().map(|c| c.dimension() as u64).product();
        u32::try_from(k).ok().and_then(|k| (self.field.size() as u64).checked_pow(k)).unwrap_or(u64::MAX)
    }

    /// The tensor code as a code of length `N` on the row-major flattening,
    /// built once per family.
    pub fn tensor_code(&self) -> Result<LinearCode> {
        self.tensor.get_or_init(|| self.build_tensor_code().map_err(|e| e.to_string())).clone().map_err(Error::TooLarge)
    }

    fn build_tensor_code(&self) -> Result<LinearCode> {
        let dims: Vec<usize> = self.codes.iter().map(LinearCode::dimension).collect();
        let count: usize = dims.iter().product();
        if count > 4096 {
            return Err(Error::TooLarge(format!("tensor code of dimension {count}")));
        }
        let mut rows = Vec::with_capacity(count);
        for idx in 0..count {
            let mut msg = TensorWord::zeros(&dims.iter().map(|&d| d.max(1)).collect::<Vec<_>>())?;
            msg.data_mut()[idx] = Gf::ONE;
            rows.push(self.encode(&msg)?.into_data());
        }
        LinearCode::from_generator(&self.field, self.cells(), rows)
    }

    /// `C^(axis)` on the row-major flattening.
    pub fn direction_code(&self, axis: usize) -> Result<LinearCode> {
        let zero = self.zero_word();
        zero.check_axis(axis)?;
        let code = &self.codes[axis];
        let mut rows = Vec::new();
        for start in zero.line_starts(axis) {
            for g in code.generator() {
                let mut w = zero.clone();
                w.set_line(axis, start, g);
                rows.push(w.into_data());
            }
        }
        LinearCode::from_generator(&self.field, self.cells(), rows)
    }

    /// `C_1 ⊞ ... ⊞ C_m = C^(1) + ... + C^(m)` on the flattening.
    pub fn sum_code(&self) -> Result<LinearCode> {
        let mut rows = Vec::new();
        for axis in 0..self.dims() {
            rows.extend(self.direction_code(axis)?.generator().iter().cloned());
        }
        LinearCode::from_generator(&self.field, self.cells(), rows)
    }

    /// Distance to the tensor code. Exhaustive for small tensor codes;
    /// otherwise the best of the iterated line decodings and the
    /// information-grid codeword gives the upper bound, which is exact below
    /// half the tensor distance `prod d_i`, and the largest certified
    /// direction distance gives the lower bound.
    pub fn tensor_distance(&self, word: &TensorWord, strategy: Option<Strategy>) -> Result<NearestWord> {
        self.check_word(word)?;
        if self.tensor_size() <= TENSOR_BRUTE_LIMIT {
            let code = self.tensor_code()?;
            let (c, d) = crate::codes::nearest_brute(&code, word.data())?;
            return Ok(NearestWord { word: TensorWord::from_data(word.shape(), c)?, lower: d, upper: d });
        }
        if self.product_contains(word)? {
            return Ok(NearestWord { word: word.clone(), lower: 0, upper: 0 });
        }
        let mut best = self.agree_on_information_grid(word)?;
        let mut best_d = word.distance(&best)?;
        let mut lower = 0;
        for first in 0..self.dims() {
            let mut cur = word.clone();
            for round in 0..2 * self.dims() {
                let axis = (first + round) % self.dims();
                let dec = self.nearest_in_direction(&cur, axis, strategy)?;
                if round == 0 {
                    lower = lower.max(dec.lower);
                }
                cur = dec.word;
                if self.product_contains(&cur)? {
                    let d = word.distance(&cur)?;
                    if d < best_d {
                        best_d = d;
                        best = cur;
                    }
                    break;
                }
            }
        }
        if let Some(ds) = self.min_distances() {
            let tensor_d: usize = ds.iter().product();
            if 2 * best_d < tensor_d {
                lower = best_d;
            }
        }
        Ok(NearestWord { word: best, lower: lower.min(best_d), upper: best_d })
    }

    /// The tensor code of the free axes of `flat`, which is the restriction
    /// of the tensor code to the flat; `None` when the restriction is the
    /// zero code (a fixed coordinate where some code vanishes identically).
    pub fn restricted_family(&self, flat: &Flat) -> Result<Option<CodeFamily>> {
        flat.check_shape(&self.shape())?;
        for (axis, code) in self.codes.iter().enumerate() {
            if !flat.free_axes().contains(&axis) && code.generator().iter().all(|g| g[flat.base()[axis]].is_zero()) {
                return Ok(None);
            }
        }
        Ok(Some(self.select(flat.free_axes())?))
    }

    pub fn random_word<R: Rng>(&self, rng: &mut R) -> TensorWord {
        let q = self.field.size();
        let data = (0..self.cells()).map(|_| Gf(rng.gen_range(0..q) as u8)).collect();
        TensorWord::from_data(&self.shape(), data).expect("shape matches")
    }

    pub fn random_codeword_of<R: Rng>(code: &LinearCode, rng: &mut R) -> Vec<Gf> {
        let q = code.field().size();
        let msg: Vec<Gf> = (0..code.dimension()).map(|_| Gf(rng.gen_range(0..q) as u8)).collect();
        code.encode(&msg).expect("message length matches")
    }

    /// Uniform element of `C^(axis)`.
    pub fn random_direction_word<R: Rng>(&self, axis: usize, rng: &mut R) -> TensorWord {
        let mut w = self.zero_word();
        for start in w.line_starts(axis) {
            let c = CodeFamily::random_codeword_of(&self.codes[axis], rng);
            w.set_line(axis, start, &c);
        }
        w
    }

    /// Uniform element of the tensor code.
    pub fn random_tensor_word<R: Rng>(&self, rng: &mut R) -> TensorWord {
        let dims: Vec<usize> = self.codes.iter().map(|c| c.dimension().max(1)).collect();
        if self.codes.iter().any(|c| c.dimension() == 0) {
            return self.zero_word();
        }
        let q = self.field.size();
        let total: usize = dims.iter().product();
        let msg = TensorWord::from_data(&dims, (0..total).map(|_| Gf(rng.gen_range(0..q) as u8)).collect())
            .expect("shape matches");
        self.encode(&msg).expect("message shape matches")
    }

    /// Uniform element of the sum code (a sum of uniform direction words).
    pub fn random_sum_word<R: Rng>(&self, rng: &mut R) -> TensorWord {
        let mut w = self.zero_word();
        for axis in 0..self.dims() {
            w.add_assign(&self.random_direction_word(axis, rng)).expect("same shape");
        }
        w
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rep2(m: usize) -> CodeFamily {
        let f = Field::new(1).unwrap();
        CodeFamily::uniform(&LinearCode::repetition(&f, 2).unwrap(), m).unwrap()
    }

    fn gf4_31(m: usize) -> CodeFamily {
        CodeFamily::reed_solomon(&Field::new(2).unwrap(), 1, 3, m).unwrap()
    }

    fn word(shape: &[usize], bits: &[u8]) -> TensorWord {
        TensorWord::from_data(shape, bits.iter().map(|&b| Gf(b)).collect()).unwrap()
    }

    #[test]
    fn product_membership_basics() {
        let fam = rep2(2);
        assert!(fam.product_contains(&fam.zero_word()).unwrap());
        assert!(fam.product_contains(&word(&[2, 2], &[1, 1, 1, 1])).unwrap());
        assert!(!fam.product_contains(&word(&[2, 2], &[1, 0, 0, 0])).unwrap());
    }

    #[test]
    fn outer_product_of_codewords_is_in_product_code() {
        let fam = gf4_31(2);
        let f = fam.field().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = CodeFamily::random_codeword_of(fam.code(0), &mut rng);
        let v = CodeFamily::random_codeword_of(fam.code(1), &mut rng);
        let data = u.iter().flat_map(|&a| v.iter().map(move |&b| (a, b))).map(|(a, b)| f.mul(a, b)).collect();
        assert!(fam.product_contains(&TensorWord::from_data(&[3, 3], data).unwrap()).unwrap());
    }

    #[test]
    fn direction_words_are_in_the_sum() {
        let fam = gf4_31(3);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for axis in 0..3 {
            let w = fam.random_direction_word(axis, &mut rng);
            assert!(fam.direction_contains(&w, axis).unwrap());
            assert!(fam.sum_contains(&w, SumMethod::CheckPoly).unwrap());
            assert!(fam.sum_contains(&w, SumMethod::DualTensor).unwrap());
        }
    }

    #[test]
    fn flipping_an_entry_of_a_sum_word_fires_a_dual_check() {
        let fam = gf4_31(2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut w = fam.random_sum_word(&mut rng);
        w.data_mut()[4] += Gf::ONE;
        assert!(!fam.sum_contains(&w, SumMethod::DualTensor).unwrap());
        assert!(!fam.sum_contains(&w, SumMethod::CheckPoly).unwrap());
    }

    #[test]
    fn check_poly_needs_cyclic_codes() {
        let fam = rep2(2);
        assert!(matches!(fam.sum_contains(&fam.zero_word(), SumMethod::CheckPoly), Err(Error::NotApplicable(_))));
        assert_eq!(fam.default_sum_method(), SumMethod::DualTensor);
        assert_eq!(gf4_31(2).default_sum_method(), SumMethod::CheckPoly);
    }

    #[test]
    fn nearest_in_direction_on_unit_word() {
        let fam = rep2(2);
        let e = word(&[2, 2], &[1, 0, 0, 0]);
        let dec = fam.nearest_in_direction(&e, 0, None).unwrap();
        assert!(dec.word.is_zero());
        assert_eq!(dec.distance(), Distance::exact(frac(1, 4)));
        let same = fam.nearest_in_direction(&fam.zero_word(), 1, None).unwrap();
        assert_eq!((same.lower, same.upper), (0, 0));
    }

    #[test]
    fn encode_hits_information_grid() {
        let fam = CodeFamily::reed_solomon(&Field::new(4).unwrap(), 1, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let c = fam.random_tensor_word(&mut rng);
        assert!(fam.product_contains(&c).unwrap());
        assert_eq!(fam.agree_on_information_grid(&c).unwrap(), c);
    }

    #[test]
    fn flattened_codes_have_expected_dimensions() {
        let fam = gf4_31(2);
        assert_eq!(fam.tensor_code().unwrap().dimension(), 1);
        assert_eq!(fam.direction_code(0).unwrap().dimension(), 3);
        // dim(C ⊞ C) = N - (n - k)^2
        assert_eq!(fam.sum_code().unwrap().dimension(), 9 - 4);
    }

    #[test]
    fn tensor_distance_bounds_on_rs15() {
        let fam = CodeFamily::reed_solomon(&Field::new(4).unwrap(), 1, 3, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let c = fam.random_tensor_word(&mut rng);
        let mut w = c.clone();
        for i in [0usize, 17, 40, 99, 150, 224] {
            w.data_mut()[i] += Gf(3);
        }
        let d = fam.tensor_distance(&w, None).unwrap();
        assert_eq!((d.lower, d.upper), (6, 6));
        assert_eq!(d.word, c);
        let r = fam.random_word(&mut rng);
        let d = fam.tensor_distance(&r, None).unwrap();
        assert!(d.lower <= d.upper && fam.product_contains(&d.word).unwrap());
        assert_eq!(r.distance(&d.word).unwrap(), d.upper);
    }

    #[test]
    fn restricted_family_of_a_line() {
        let fam = gf4_31(3);
        let flat = Flat::new(vec![1], vec![2, 0, 1]).unwrap();
        let sub = fam.restricted_family(&flat).unwrap().unwrap();
        assert_eq!(sub.shape(), vec![3]);
    }
}
