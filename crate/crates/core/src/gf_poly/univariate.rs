//! Dense univariate polynomials over GF(2^m), coefficients low degree first.

use super::field::{Field, Gf};
use crate::{Error, Result};

/// Drops trailing zero coefficients. The zero polynomial is the empty vector.
pub fn trim(p: &mut Vec<Gf>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Degree, or `None` for the zero polynomial.
pub fn degree(p: &[Gf]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn add(a: &[Gf], b: &[Gf]) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; a.len().max(b.len())];
    for (i, &c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[i] += c;
    }
    trim(&mut out);
    out
}

pub fn mul(field: &Field, a: &[Gf], b: &[Gf]) -> Vec<Gf> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Gf::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += field.mul(x, y);
        }
    }
    trim(&mut out);
    out
}

pub fn scale(field: &Field, a: &[Gf], s: Gf) -> Vec<Gf> {
    let mut out: Vec<Gf> = a.iter().map(|&c| field.mul(c, s)).collect();
    trim(&mut out);
    out
}

/// Euclidean division `a = q*b + r` with `deg r < deg b`.
pub fn divrem(field: &Field, a: &[Gf], b: &[Gf]) -> Result<(Vec<Gf>, Vec<Gf>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = field.inv(b[db])?;
    let mut r: Vec<Gf> = a.to_vec();
    trim(&mut r);
    let mut q = vec![Gf::ZERO; r.len().saturating_sub(db)];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let coef = field.mul(r[dr], lead_inv);
        q[dr - db] = coef;
        for (j, &bj) in b[..=db].iter().enumerate() {
            r[dr - db + j] -= field.mul(coef, bj);
        }
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}

/// Horner evaluation.
pub fn eval(field: &Field, p: &[Gf], x: Gf) -> Gf {
    p.iter().rev().fold(Gf::ZERO, |acc, &c| field.mul(acc, x) + c)
}

/// `prod (x - r)` over the given roots; monic.
pub fn from_roots(field: &Field, roots: &[Gf]) -> Vec<Gf> {
    roots.iter().fold(vec![Gf::ONE], |acc, &r| mul(field, &acc, &[r, Gf::ONE]))
}

/// `x^n - 1` (equal to `x^n + 1` in characteristic 2).
pub fn x_n_minus_one(n: usize) -> Vec<Gf> {
    let mut p = vec![Gf::ZERO; n + 1];
    p[0] = Gf::ONE;
    p[n] = Gf::ONE;
    p
}

/// Reduces modulo `x^n - 1`, returning exactly `n` coefficients.
pub fn reduce_cyclic(p: &[Gf], n: usize) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; n];
    for (i, &c) in p.iter().enumerate() {
        out[i % n] += c;
    }
    out
}

/// Product modulo `x^n - 1`; both inputs may have any length.
pub fn mul_cyclic(field: &Field, a: &[Gf], b: &[Gf], n: usize) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; n];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % n] += field.mul(x, y);
            }
        }
    }
    out
}

/// Coefficient-reversed polynomial `x^deg p * p(1/x)`.
pub fn reciprocal(p: &[Gf]) -> Vec<Gf> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let mut out: Vec<Gf> = p[..=d].iter().rev().copied().collect();
            trim(&mut out);
            out
        }
    }
}

/// Scales to a monic polynomial; the zero polynomial stays zero.
pub fn monic(field: &Field, p: &[Gf]) -> Result<Vec<Gf>> {
    match degree(p) {
        None => Ok(Vec::new()),
        Some(d) => Ok(scale(field, p, field.inv(p[d])?)),
    }
}
