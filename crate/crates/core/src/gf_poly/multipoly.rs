//! Sparse multivariate polynomials modulo the ideal `(x_1^n - 1, ..., x_m^n - 1)`.
//!
//! Every residue class has a unique representative with all exponents in
//! `[0, n)`; that is the only form stored. Exponent tuples are packed into a
//! mixed-radix `u64` key with variable 0 as the most significant digit, which
//! coincides with the row-major index of a cubic tensor word.

use std::collections::{BTreeMap, HashMap};

use super::field::{Field, Gf};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    period: usize,
    coeffs: BTreeMap<u64, Gf>,
}

impl MultiPoly {
    pub fn zero(num_vars: usize, period: usize) -> Result<MultiPoly> {
        if num_vars == 0 || period == 0 {
            return Err(Error::Shape("multivariate polynomial needs num_vars, period >= 1".into()));
        }
        (period as u64)
            .checked_pow(num_vars as u32)
            .ok_or_else(|| Error::Shape(format!("{period}^{num_vars} monomials overflow")))?;
        Ok(MultiPoly { num_vars, period, coeffs: BTreeMap::new() })
    }

    pub fn one(num_vars: usize, period: usize) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(num_vars, period)?;
        p.coeffs.insert(0, Gf::ONE);
        Ok(p)
    }

    /// A single monomial `c * x^exps`; exponents are reduced mod the period.
    pub fn monomial(num_vars: usize, period: usize, exps: &[usize], c: Gf) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(num_vars, period)?;
        p.add_term(exps, c)?;
        Ok(p)
    }

    /// `p(x_var)` for a dense univariate `p`, reduced mod `x_var^n - 1`.
    pub fn in_variable(num_vars: usize, period: usize, var: usize, p: &[Gf]) -> Result<MultiPoly> {
        if var >= num_vars {
            return Err(Error::Shape(format!("variable {var} out of range for {num_vars} variables")));
        }
        let mut out = MultiPoly::zero(num_vars, period)?;
        let mut exps = vec![0; num_vars];
        for (e, &c) in p.iter().enumerate() {
            exps[var] = e;
            out.add_term(&exps, c)?;
        }
        Ok(out)
    }

    pub fn univariate(period: usize, p: &[Gf]) -> Result<MultiPoly> {
        MultiPoly::in_variable(1, period, 0, p)
    }

    /// From a dense row-major coefficient array of length `period^num_vars`.
    pub fn from_dense(num_vars: usize, period: usize, dense: &[Gf]) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(num_vars, period)?;
        if dense.len() as u64 != out.monomial_count() {
            return Err(Error::Shape(format!(
                "dense array has {} entries, expected {}",
                dense.len(),
                out.monomial_count()
            )));
        }
        out.coeffs = dense.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i as u64, c)).collect();
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Gf> {
        let mut out = vec![Gf::ZERO; self.monomial_count() as usize];
        for (&k, &c) in &self.coeffs {
            out[k as usize] = c;
        }
        out
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn monomial_count(&self) -> u64 {
        (self.period as u64).pow(self.num_vars as u32)
    }

    fn pack(&self, exps: &[usize]) -> u64 {
        exps.iter().fold(0u64, |acc, &e| acc * self.period as u64 + (e % self.period) as u64)
    }

    fn unpack(&self, mut key: u64) -> Vec<usize> {
        let mut exps = vec![0; self.num_vars];
        for slot in exps.iter_mut().rev() {
            *slot = (key % self.period as u64) as usize;
            key /= self.period as u64;
        }
        exps
    }

    pub fn coeff(&self, exps: &[usize]) -> Gf {
        self.coeffs.get(&self.pack(exps)).copied().unwrap_or(Gf::ZERO)
    }

    /// Adds `c * x^exps` in place.
    pub fn add_term(&mut self, exps: &[usize], c: Gf) -> Result<()> {
        if exps.len() != self.num_vars {
            return Err(Error::Shape(format!(
                "exponent tuple of length {} for {} variables",
                exps.len(),
                self.num_vars
            )));
        }
        let key = self.pack(exps);
        let entry = self.coeffs.entry(key).or_insert(Gf::ZERO);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    /// Nonzero terms in ascending packed order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, Gf)> + '_ {
        self.coeffs.iter().map(|(&k, &c)| (self.unpack(k), c))
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.num_vars != other.num_vars || self.period != other.period {
            return Err(Error::Shape(format!(
                "polynomials in {} vars (period {}) and {} vars (period {})",
                self.num_vars, self.period, other.num_vars, other.period
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&k, &c) in &other.coeffs {
            let entry = out.coeffs.entry(k).or_insert(Gf::ZERO);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(&k);
            }
        }
        Ok(out)
    }

    /// Product reduced modulo the ideal: exponents add mod `n` per variable.
    pub fn mul_mod_ideal(&self, other: &MultiPoly, field: &Field) -> Result<MultiPoly> {
        self.check_compatible(other)?;
        let n = self.period;
        let rhs: Vec<(Vec<usize>, Gf)> = other.terms().collect();
        let mut acc: HashMap<u64, Gf> = HashMap::with_capacity(self.len().saturating_mul(rhs.len()).min(1 << 20));
        let mut sum = vec![0usize; self.num_vars];
        for (lk, &lc) in &self.coeffs {
            let lexp = self.unpack(*lk);
            for (rexp, rc) in &rhs {
                for (s, (a, b)) in sum.iter_mut().zip(lexp.iter().zip(rexp)) {
                    *s = (a + b) % n;
                }
                *acc.entry(self.pack(&sum)).or_insert(Gf::ZERO) += field.mul(lc, *rc);
            }
        }
        Ok(MultiPoly {
            num_vars: self.num_vars,
            period: n,
            coeffs: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Substitutes `x_i -> x_i^(n-1)` for every variable and reduces; since
    /// `x^n = 1` this maps each exponent `e` to `-e mod n`. An involution.
    pub fn star(&self) -> MultiPoly {
        let n = self.period;
        MultiPoly {
            num_vars: self.num_vars,
            period: n,
            coeffs: self
                .terms()
                .map(|(exps, c)| {
                    let neg: Vec<usize> = exps.iter().map(|&e| (n - e) % n).collect();
                    (self.pack(&neg), c)
                })
                .collect(),
        }
    }

    /// Evaluation vector `(p(1), p(omega^-1), ..., p(omega^(1-n)))` of a
    /// univariate polynomial with period `n = 2^m - 1`.
    pub fn dft_evaluate(&self, field: &Field) -> Result<Vec<Gf>> {
        let n = field.order();
        if self.num_vars != 1 || self.period != n {
            return Err(Error::Shape(format!(
                "evaluation needs a univariate polynomial of period {n}, got {} vars, period {}",
                self.num_vars, self.period
            )));
        }
        Ok((0..n)
            .map(|j| {
                self.coeffs
                    .iter()
                    .fold(Gf::ZERO, |acc, (&e, &c)| acc + field.mul(c, field.omega_pow(-(j as i64) * e as i64)))
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_poly::univariate;
    use proptest::prelude::*;

    fn gf4() -> Field {
        Field::new(2).unwrap()
    }

    #[test]
    fn one_is_identity() {
        let f = gf4();
        let mut b = MultiPoly::zero(2, 3).unwrap();
        b.add_term(&[1, 2], Gf(2)).unwrap();
        b.add_term(&[0, 1], Gf(3)).unwrap();
        let one = MultiPoly::one(2, 3).unwrap();
        assert_eq!(one.mul_mod_ideal(&b, &f).unwrap(), b);
    }

    #[test]
    fn x_to_n_wraps_to_one() {
        let f = gf4();
        let a = MultiPoly::monomial(1, 3, &[2], Gf::ONE).unwrap();
        let b = MultiPoly::monomial(1, 3, &[1], Gf::ONE).unwrap();
        assert_eq!(a.mul_mod_ideal(&b, &f).unwrap(), MultiPoly::one(1, 3).unwrap());
    }

    #[test]
    fn product_of_linear_factors_vanishes_mod_ideal() {
        // (x - 1)(x - w)(x - w^2) = x^3 - 1 = 0 mod (x^3 - 1)
        let f = gf4();
        let mut acc = MultiPoly::one(1, 3).unwrap();
        for i in 0..3 {
            let factor = MultiPoly::univariate(3, &[f.omega_pow(i), Gf::ONE]).unwrap();
            acc = acc.mul_mod_ideal(&factor, &f).unwrap();
        }
        assert!(acc.is_zero());
        // Dense oracle: the unreduced product is x^3 + 1.
        let roots: Vec<Gf> = (0..3).map(|i| f.omega_pow(i)).collect();
        assert_eq!(univariate::from_roots(&f, &roots), univariate::x_n_minus_one(3));
    }

    #[test]
    fn star_of_x_is_x_to_n_minus_one() {
        let x = MultiPoly::monomial(1, 7, &[1], Gf::ONE).unwrap();
        assert_eq!(x.star(), MultiPoly::monomial(1, 7, &[6], Gf::ONE).unwrap());
        let one = MultiPoly::one(1, 7).unwrap();
        assert_eq!(one.star(), one);
    }

    #[test]
    fn dft_of_constant_and_of_x() {
        let f = gf4();
        let one = MultiPoly::one(1, 3).unwrap();
        assert_eq!(one.dft_evaluate(&f).unwrap(), vec![Gf::ONE; 3]);
        let x = MultiPoly::monomial(1, 3, &[1], Gf::ONE).unwrap();
        let w = f.omega();
        assert_eq!(x.dft_evaluate(&f).unwrap(), vec![Gf::ONE, f.mul(w, w), w]);
    }

    #[test]
    fn mismatched_shapes_are_rejected() {
        let f = gf4();
        let a = MultiPoly::one(1, 3).unwrap();
        let b = MultiPoly::one(2, 3).unwrap();
        assert!(a.mul_mod_ideal(&b, &f).is_err());
        assert!(MultiPoly::one(1, 5).unwrap().mul_mod_ideal(&a, &f).is_err());
    }

    #[test]
    fn dense_round_trip() {
        let dense: Vec<Gf> = (0..27).map(|i| Gf((i * 5 % 4) as u8)).collect();
        let p = MultiPoly::from_dense(3, 3, &dense).unwrap();
        assert_eq!(p.to_dense(), dense);
        assert_eq!(p.coeff(&[1, 0, 2]), dense[9 + 2]);
    }

    fn arb_poly(vars: usize, n: usize) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0..n, vars), 0u8..16), 0..12).prop_map(move |terms| {
            let mut p = MultiPoly::zero(vars, n).unwrap();
            for (e, c) in terms {
                p.add_term(&e, Gf(c)).unwrap();
            }
            p
        })
    }

    proptest! {
        #[test]
        fn star_is_an_involution(p in arb_poly(3, 5)) {
            prop_assert_eq!(p.star().star(), p);
        }

        #[test]
        fn multiplication_commutes_and_associates(
            a in arb_poly(2, 4), b in arb_poly(2, 4), c in arb_poly(2, 4)
        ) {
            let f = Field::new(4).unwrap();
            prop_assert_eq!(a.mul_mod_ideal(&b, &f).unwrap(), b.mul_mod_ideal(&a, &f).unwrap());
            let left = a.mul_mod_ideal(&b, &f).unwrap().mul_mod_ideal(&c, &f).unwrap();
            let right = a.mul_mod_ideal(&b.mul_mod_ideal(&c, &f).unwrap(), &f).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn star_is_multiplicative(a in arb_poly(2, 5), b in arb_poly(2, 5)) {
            let f = Field::new(4).unwrap();
            prop_assert_eq!(
                a.mul_mod_ideal(&b, &f).unwrap().star(),
                a.star().mul_mod_ideal(&b.star(), &f).unwrap()
            );
        }
    }
}
