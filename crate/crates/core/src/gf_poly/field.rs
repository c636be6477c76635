//! Binary extension fields GF(2^m), 1 <= m <= 8, in polynomial basis.
//!
//! Elements are stored as the bit-vector of their coefficients over GF(2)
//! (bit `i` is the coefficient of `x^i`). Multiplication has a reference
//! carry-less implementation and a log/antilog fast path; both must agree
//! bit for bit, which is checked over all pairs in the tests.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;

/// Primitive moduli, indexed by extension degree. Bit `i` is the coefficient
/// of `x^i`, the leading term included.
const MODULI: [u16; 9] = [
    0,
    0b11,        // x + 1
    0b111,       // x^2 + x + 1
    0b1011,      // x^3 + x + 1
    0b1_0011,    // x^4 + x + 1
    0b10_0101,   // x^5 + x^2 + 1
    0b100_0011,  // x^6 + x + 1
    0b1000_0011, // x^7 + x + 1
    0x11d,       // x^8 + x^4 + x^3 + x^2 + 1
];

/// A field element in polynomial basis.
///
/// Addition is XOR and does not need the field; multiplication goes through
/// [`Field`]. The derived ordering (by bit-vector value) is the fixed element
/// order used for lexicographic tie-breaking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gf(pub u8);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn bits(self) -> u8 {
        self.0
    }
}

// Characteristic two: addition and subtraction are both XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Gf {
    type Output = Gf;
    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Sub for Gf {
    type Output = Gf;
    #[inline]
    fn sub(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl SubAssign for Gf {
    #[inline]
    fn sub_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

impl Neg for Gf {
    type Output = Gf;
    #[inline]
    fn neg(self) -> Gf {
        self
    }
}

impl fmt::Display for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// Carry-less multiply of two elements followed by reduction by `modulus`.
pub fn clmul_reduce(a: u8, b: u8, degree: u32, modulus: u16) -> u8 {
    let mut acc: u16 = 0;
    let mut a = a as u16;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
    }
    for bit in (degree..2 * degree).rev() {
        if acc & (1 << bit) != 0 {
            acc ^= modulus << (bit - degree);
        }
    }
    acc as u8
}

fn gf2_poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn gf2_poly_rem(mut a: u32, b: u32) -> u32 {
    let db = gf2_poly_degree(b);
    while a != 0 && gf2_poly_degree(a) >= db {
        a ^= b << (gf2_poly_degree(a) - db);
    }
    a
}

/// Irreducibility over GF(2) by trial division by every polynomial of degree
/// 1..=deg/2.
pub fn is_irreducible_gf2(p: u32) -> bool {
    let d = gf2_poly_degree(p);
    if d < 1 {
        return false;
    }
    (2u32..(1 << (d / 2 + 1))).all(|q| gf2_poly_degree(q) > d / 2 || gf2_poly_rem(p, q) != 0)
}

struct Tables {
    degree: u32,
    modulus: u16,
    /// exp[i] = omega^i for i in 0..2*order (doubled to skip a reduction).
    exp: Vec<u8>,
    /// log[a] for a != 0; log[0] unused.
    log: Vec<u16>,
}

/// The field GF(2^m) with the fixed modulus for `m` and its primitive
/// element `omega`, the residue class of `x`.
///
/// Cloning is cheap; the tables are shared.
#[derive(Clone)]
pub struct Field {
    tables: Arc<Tables>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.tables.degree)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.tables.degree == other.tables.degree
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(2^`degree`) from the fixed modulus table.
    pub fn new(degree: u32) -> Result<Field> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(Error::UnsupportedDegree(degree));
        }
        let modulus = MODULI[degree as usize];
        if !is_irreducible_gf2(modulus as u32) {
            return Err(Error::FieldConfig(format!("modulus {modulus:#x} is reducible")));
        }
        let order = (1usize << degree) - 1;
        let x: u8 = if degree == 1 { 1 } else { 2 };
        let mut exp = vec![0u8; 2 * order];
        let mut log = vec![0u16; order + 1];
        let mut cur: u8 = 1;
        for (i, slot) in exp.iter_mut().enumerate().take(order) {
            if i > 0 && cur == 1 {
                return Err(Error::FieldConfig(format!("x has order {i} < {order} modulo {modulus:#x}")));
            }
            *slot = cur;
            log[cur as usize] = i as u16;
            cur = clmul_reduce(cur, x, degree, modulus);
        }
        if cur != 1 {
            return Err(Error::FieldConfig(format!("x is not a unit modulo {modulus:#x}")));
        }
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        Ok(Field { tables: Arc::new(Tables { degree, modulus, exp, log }) })
    }

    /// Extension degree `m`.
    pub fn degree(&self) -> u32 {
        self.tables.degree
    }

    pub fn modulus(&self) -> u16 {
        self.tables.modulus
    }

    /// Number of elements, `2^m`.
    pub fn size(&self) -> usize {
        1 << self.tables.degree
    }

    /// Order of the multiplicative group, `2^m - 1`.
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    pub fn omega(&self) -> Gf {
        Gf(self.tables.exp[1 % self.order()])
    }

    pub fn contains(&self, a: Gf) -> bool {
        (a.0 as usize) < self.size()
    }

    /// All elements in ascending bit-vector order.
    pub fn elements(&self) -> impl Iterator<Item = Gf> + Clone {
        (0..self.size()).map(|v| Gf(v as u8))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        let t = &*self.tables;
        Gf(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    /// Reference multiplication: shift-and-add with modular reduction.
    pub fn mul_clmul(&self, a: Gf, b: Gf) -> Gf {
        Gf(clmul_reduce(a.0, b.0, self.tables.degree, self.tables.modulus))
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = &*self.tables;
        let order = self.order();
        Ok(Gf(t.exp[(order - t.log[a.0 as usize] as usize) % order]))
    }

    pub fn div(&self, a: Gf, b: Gf) -> Result<Gf> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: Gf, e: i64) -> Result<Gf> {
        if a.is_zero() {
            return match e {
                0 => Ok(Gf::ONE),
                e if e > 0 => Ok(Gf::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let order = self.order() as i64;
        let l = self.tables.log[a.0 as usize] as i64;
        Ok(Gf(self.tables.exp[(l * e).rem_euclid(order) as usize]))
    }

    /// `omega^e` for any integer exponent.
    #[inline]
    pub fn omega_pow(&self, e: i64) -> Gf {
        Gf(self.tables.exp[e.rem_euclid(self.order() as i64) as usize])
    }

    /// Discrete log base omega; `None` for zero.
    pub fn log(&self, a: Gf) -> Option<usize> {
        (!a.is_zero()).then(|| self.tables.log[a.0 as usize] as usize)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Gf) -> Option<usize> {
        if a.is_zero() {
            return None;
        }
        let mut cur = a;
        let mut k = 1;
        while cur != Gf::ONE {
            cur = self.mul_clmul(cur, a);
            k += 1;
        }
        Some(k)
    }

    /// Parses a hexadecimal bit-vector value, checking it lies in the field.
    pub fn parse_element(&self, s: &str) -> Result<Gf> {
        let v = u16::from_str_radix(s, 16).map_err(|_| Error::Parse(format!("bad element {s:?}")))?;
        if (v as usize) >= self.size() {
            return Err(Error::Parse(format!("element {s} outside GF(2^{})", self.degree())));
        }
        Ok(Gf(v as u8))
    }
}
