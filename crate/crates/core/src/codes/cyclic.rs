use super::linear::LinearCode;
use crate::gf_poly::{univariate as upoly, Field, Gf, MultiPoly};
use crate::{Error, Result};

/// A length-`n` cyclic code `{a : p(x) a(x) = 0 mod x^n - 1}` given by its
/// check polynomial `p | x^n - 1`. The dimension is `deg p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    field: Field,
    length: usize,
    check_poly: Vec<Gf>,
    rs_dimension: Option<usize>,
}

impl CyclicCode {
    pub fn new(field: &Field, length: usize, check_poly: Vec<Gf>) -> Result<CyclicCode> {
        if length == 0 {
            return Err(Error::InvalidArgument("cyclic code of length 0".into()));
        }
        let mut p = check_poly;
        upoly::trim(&mut p);
        let deg = upoly::degree(&p).ok_or_else(|| Error::InvalidArgument("zero check polynomial".into()))?;
        if deg > length {
            return Err(Error::InvalidArgument(format!("check polynomial degree {deg} exceeds length {length}")));
        }
        let (_, r) = upoly::divrem(field, &upoly::x_n_minus_one(length), &p)?;
        if !r.is_empty() {
            return Err(Error::Divisibility(format!("check polynomial does not divide x^{length} - 1")));
        }
        Ok(CyclicCode { field: field.clone(), length, check_poly: p, rs_dimension: None })
    }

    /// Primitive Reed-Solomon code of length `n = 2^m - 1` and rate
    /// `num/den`, with check polynomial `(x - 1)(x - omega)...(x - omega^(k-1))`.
    pub fn rs_primitive(field: &Field, num: usize, den: usize) -> Result<CyclicCode> {
        let n = field.order();
        if den == 0 || num > den || !(n * num).is_multiple_of(den) {
            return Err(Error::Divisibility(format!("length {n} times rate {num}/{den} is not an integer dimension")));
        }
        CyclicCode::rs_with_dimension(field, n * num / den)
    }

    pub fn rs_with_dimension(field: &Field, k: usize) -> Result<CyclicCode> {
        let n = field.order();
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("RS dimension {k} outside 1..={n}")));
        }
        let roots: Vec<Gf> = (0..k as i64).map(|i| field.omega_pow(i)).collect();
        let mut code = CyclicCode::new(field, n, upoly::from_roots(field, &roots))?;
        code.rs_dimension = Some(k);
        Ok(code)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.check_poly.len() - 1
    }

    pub fn check_poly(&self) -> &[Gf] {
        &self.check_poly
    }

    pub fn check_multipoly(&self) -> MultiPoly {
        MultiPoly::univariate(self.length, &self.check_poly).expect("period >= 1")
    }

    /// `(x^n - 1) / p`.
    pub fn generator_poly(&self) -> Vec<Gf> {
        upoly::divrem(&self.field, &upoly::x_n_minus_one(self.length), &self.check_poly)
            .expect("check polynomial is nonzero")
            .0
    }

    /// `Some(k)` for a primitive RS code built by [`CyclicCode::rs_primitive`].
    pub fn rs_dimension(&self) -> Option<usize> {
        self.rs_dimension
    }

    pub fn is_reed_solomon(&self) -> bool {
        self.rs_dimension.is_some()
    }

    /// `p(x) a(x) = 0 mod x^n - 1`.
    pub fn contains(&self, word: &[Gf]) -> Result<bool> {
        if word.len() != self.length {
            return Err(Error::Shape(format!("word of length {} for a code of length {}", word.len(), self.length)));
        }
        Ok(upoly::mul_cyclic(&self.field, &self.check_poly, word, self.length).iter().all(|c| c.is_zero()))
    }

    /// The dual code. It is generated by `p*(x) = p(x^(n-1))`, which equals
    /// the reciprocal of `p` times a unit, so its check polynomial is the
    /// monic reciprocal of the generator polynomial `(x^n - 1)/p`.
    pub fn dual(&self) -> CyclicCode {
        let g = self.generator_poly();
        let check = upoly::monic(&self.field, &upoly::reciprocal(&g)).expect("generator is nonzero");
        CyclicCode::new(&self.field, self.length, check).expect("reciprocal of a divisor of x^n - 1 divides it")
    }

    /// Generator polynomial of the dual, via the substitution `x -> x^(n-1)`.
    pub fn dual_generator_star(&self) -> MultiPoly {
        self.check_multipoly().star()
    }

    /// Explicit generator basis `g, x g, ..., x^(k-1) g` as a [`LinearCode`].
    /// The parity basis is computed by elimination, independently of the
    /// check polynomial.
    pub fn to_linear(&self) -> LinearCode {
        let g = self.generator_poly();
        let rows = (0..self.dimension())
            .map(|shift| {
                let mut row = vec![Gf::ZERO; self.length];
                for (i, &c) in g.iter().enumerate() {
                    row[(i + shift) % self.length] += c;
                }
                row
            })
            .collect();
        LinearCode::from_generator(&self.field, self.length, rows)
            .expect("generator rows have the code length")
            .with_cyclic(self.clone())
    }
}

/// Minimum distance: exhaustive enumeration, or `n - k + 1` for RS codes
/// (cross-checked by enumeration when the code has at most `2^20` words).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistanceMode {
    Exhaustive,
    KnownRs,
}

pub fn min_distance(code: &LinearCode, mode: DistanceMode) -> Result<usize> {
    match mode {
        DistanceMode::Exhaustive => code.min_distance_exhaustive(),
        DistanceMode::KnownRs => {
            let k = code
                .cyclic()
                .and_then(CyclicCode::rs_dimension)
                .ok_or_else(|| Error::NotApplicable("known_rs distance on a non-RS code".into()))?;
            let d = code.length() - k + 1;
            if code.size() <= 1 << 20 {
                let exhaustive = code.min_distance_exhaustive()?;
                if exhaustive != d {
                    return Err(Error::FieldConfig(format!("RS distance {d} disagrees with enumeration {exhaustive}")));
                }
            }
            Ok(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_poly::linalg;

    fn gf(m: u32) -> Field {
        Field::new(m).unwrap()
    }

    #[test]
    fn rs_gf4_third_rate_is_3_1_with_check_x_minus_one() {
        let f = gf(2);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        assert_eq!((c.length(), c.dimension()), (3, 1));
        assert_eq!(c.check_poly(), &[Gf::ONE, Gf::ONE]);
        assert_eq!(min_distance(&c.to_linear(), DistanceMode::Exhaustive).unwrap(), 3);
    }

    #[test]
    fn rs_15_5_parameters() {
        let f = gf(4);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        assert_eq!((c.length(), c.dimension()), (15, 5));
        assert_eq!(min_distance(&c.to_linear(), DistanceMode::KnownRs).unwrap(), 11);
    }

    #[test]
    fn rate_divisibility_failure() {
        let f = gf(3); // n = 7
        assert!(matches!(CyclicCode::rs_primitive(&f, 1, 3), Err(Error::Divisibility(_))));
    }

    #[test]
    fn non_divisor_rejected() {
        let f = gf(2);
        assert!(CyclicCode::new(&f, 3, vec![Gf(2), Gf::ONE]).is_ok()); // x - w divides x^3 - 1
        assert!(CyclicCode::new(&f, 4, vec![Gf(2), Gf::ONE]).is_err());
    }

    #[test]
    fn constant_words_in_3_1_code() {
        let f = gf(2);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        for v in f.elements() {
            assert!(c.contains(&[v, v, v]).unwrap());
        }
        assert!(c.contains(&[Gf::ZERO; 3]).unwrap());
        assert!(!c.contains(&[Gf::ONE, Gf::ZERO, Gf::ZERO]).unwrap());
        assert!(c.contains(&[Gf::ONE]).is_err());
    }

    #[test]
    fn dual_of_full_code_is_zero_code() {
        let f = gf(2);
        let full = CyclicCode::new(&f, 3, upoly::x_n_minus_one(3)).unwrap();
        assert_eq!(full.dimension(), 3);
        assert_eq!(full.dual().dimension(), 0);
    }

    #[test]
    fn dual_of_3_1_is_3_2() {
        let f = gf(2);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        assert_eq!(c.dual().dimension(), 2);
    }

    #[test]
    fn dual_of_rs_15_5_is_orthogonal() {
        let f = gf(4);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        let d = c.dual();
        assert_eq!(d.dimension(), 10);
        let (cl, dl) = (c.to_linear(), d.to_linear());
        for g in cl.generator() {
            for h in dl.generator() {
                assert!(linalg::dot(&f, g, h).is_zero());
            }
        }
        assert!(d.dual().to_linear().same_code_as(&cl));
        // The dual equals the nullspace computed by elimination.
        assert!(dl.same_code_as(&cl.dual().unwrap()));
    }

    #[test]
    fn star_of_check_poly_generates_the_dual() {
        let f = gf(4);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap();
        let star = c.dual_generator_star().to_dense();
        let lin = c.to_linear();
        // Every cyclic shift of p* (the dual generator) is orthogonal to C.
        for shift in 0..15 {
            let row: Vec<Gf> = (0..15).map(|i| star[(i + 15 - shift) % 15]).collect();
            for g in lin.generator() {
                assert!(linalg::dot(&f, g, &row).is_zero());
            }
        }
        let shifts: Vec<Vec<Gf>> = (0..15).map(|s| (0..15).map(|i| star[(i + 15 - s) % 15]).collect()).collect();
        assert_eq!(linalg::rank(&f, &shifts), 10);
    }

    #[test]
    fn cyclic_shift_preserves_membership_exhaustive_n3() {
        let f = gf(2);
        for code in [CyclicCode::rs_primitive(&f, 1, 3).unwrap(), CyclicCode::rs_primitive(&f, 1, 3).unwrap().dual()] {
            code.to_linear()
                .for_each_codeword(|w| {
                    let shifted = vec![w[2], w[0], w[1]];
                    assert!(code.contains(&shifted).unwrap());
                })
                .unwrap();
        }
    }

    #[test]
    fn check_membership_matches_span_on_small_codes() {
        let f = gf(2);
        let c = CyclicCode::rs_primitive(&f, 1, 3).unwrap().dual();
        let lin = c.to_linear();
        for a in f.elements() {
            for b in f.elements() {
                for d in f.elements() {
                    let w = [a, b, d];
                    assert_eq!(c.contains(&w).unwrap(), lin.contains(&w).unwrap());
                }
            }
        }
    }
}
