//! Nearest-codeword search: exhaustive enumeration, and Berlekamp-Welch
//! bounded-distance decoding for primitive Reed-Solomon codes.

use super::linear::LinearCode;
use crate::gf_poly::{linalg, univariate as upoly, Gf};
use crate::rational::{frac, Frac};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Enumerate the code; ties go to the lexicographically smallest codeword.
    Brute,
    /// Unique decoding up to `floor((d - 1)/2)` errors; RS codes only.
    BoundedDistance,
}

/// Codes up to this size are decoded by enumeration when the caller does not
/// pin a strategy.
pub const AUTO_BRUTE_LIMIT: u64 = 1 << 12;

impl Strategy {
    /// Enumeration for small codes, bounded-distance decoding for larger RS
    /// codes, enumeration up to the hard limit otherwise.
    pub fn auto(code: &LinearCode) -> Result<Strategy> {
        if code.size() <= AUTO_BRUTE_LIMIT {
            Ok(Strategy::Brute)
        } else if code.cyclic().is_some_and(|c| c.is_reed_solomon()) {
            Ok(Strategy::BoundedDistance)
        } else if code.size() <= super::EXHAUSTIVE_LIMIT {
            Ok(Strategy::Brute)
        } else {
            Err(Error::TooLarge(format!("no decoder for a code of size {}", code.size())))
        }
    }
}

pub fn hamming(a: &[Gf], b: &[Gf]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

pub fn weight(a: &[Gf]) -> usize {
    a.iter().filter(|x| !x.is_zero()).count()
}

/// Exhaustive nearest codeword with lexicographic tie-breaking.
pub fn nearest_brute(code: &LinearCode, word: &[Gf]) -> Result<(Vec<Gf>, usize)> {
    code.check_len(word)?;
    let list = code.codewords()?;
    let mut best: Option<(usize, &Vec<Gf>)> = None;
    for c in list.iter() {
        let bound = best.map_or(usize::MAX, |(d, _)| d);
        let mut d = 0;
        for (x, y) in c.iter().zip(word) {
            if x != y {
                d += 1;
                if d >= bound {
                    break;
                }
            }
        }
        if d < bound {
            best = Some((d, c));
            if d == 0 {
                break;
            }
        }
    }
    let (d, c) = best.ok_or_else(|| Error::Degenerate("empty code".into()))?;
    Ok((c.clone(), d))
}

/// Unique-decoding radius `floor((n - k)/2)` of an RS code.
pub fn rs_radius(code: &LinearCode) -> Result<usize> {
    let k = rs_dimension(code)?;
    Ok((code.length() - k) / 2)
}

fn rs_dimension(code: &LinearCode) -> Result<usize> {
    code.cyclic()
        .and_then(|c| c.rs_dimension())
        .ok_or_else(|| Error::NotApplicable("bounded-distance decoding needs a primitive RS code".into()))
}

/// Berlekamp-Welch decoding. Codewords of the primitive RS code are the
/// evaluation vectors `(f(1), f(omega^-1), ..., f(omega^(1-n)))` of
/// polynomials `f` of degree below `k`.
///
/// Returns [`Error::NotDecodable`] when no codeword lies within the radius.
pub fn bounded_distance_decode(code: &LinearCode, word: &[Gf]) -> Result<(Vec<Gf>, usize)> {
    code.check_len(word)?;
    let k = rs_dimension(code)?;
    let field = code.field();
    let n = code.length();
    let t = (n - k) / 2;
    if code.contains(word)? {
        return Ok((word.to_vec(), 0));
    }
    if t == 0 {
        return Err(Error::NotDecodable { radius: 0 });
    }
    // Unknowns: Q_0..Q_{k+t-1}, then E_0..E_{t-1}; E is monic of degree t.
    // Equations: Q(x_j) - r_j E(x_j) = 0  =>  Q(x_j) - r_j sum_{i<t} E_i x_j^i = r_j x_j^t.
    let ncols = k + 2 * t;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for (j, &r) in word.iter().enumerate() {
        let x = field.omega_pow(-(j as i64));
        let mut row = Vec::with_capacity(ncols);
        let mut xp = Gf::ONE;
        let mut powers = Vec::with_capacity(k + t + 1);
        for _ in 0..=(k + t) {
            powers.push(xp);
            xp = field.mul(xp, x);
        }
        row.extend_from_slice(&powers[..k + t]);
        row.extend(powers[..t].iter().map(|&p| field.mul(r, p)));
        rows.push(row);
        rhs.push(field.mul(r, powers[t]));
    }
    let radius_err = Error::NotDecodable { radius: t };
    let Some((sol, _)) = linalg::solve(field, &rows, &rhs, ncols) else {
        return Err(radius_err);
    };
    let q_poly = sol[..k + t].to_vec();
    let mut e_poly = sol[k + t..].to_vec();
    e_poly.push(Gf::ONE);
    let (f_poly, rem) = upoly::divrem(field, &q_poly, &e_poly)?;
    if !rem.is_empty() || upoly::degree(&f_poly).is_some_and(|d| d >= k) {
        return Err(radius_err);
    }
    let codeword: Vec<Gf> = (0..n).map(|j| upoly::eval(field, &f_poly, field.omega_pow(-(j as i64)))).collect();
    let d = hamming(&codeword, word);
    if d > t {
        return Err(radius_err);
    }
    Ok((codeword, d))
}

pub fn nearest_codeword(word: &[Gf], code: &LinearCode, strategy: Strategy) -> Result<(Vec<Gf>, usize)> {
    match strategy {
        Strategy::Brute => nearest_brute(code, word),
        Strategy::BoundedDistance => bounded_distance_decode(code, word),
    }
}

/// Normalized distance to a code as an interval `[lower, upper]`; exact when
/// the endpoints coincide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Distance {
    pub lower: Frac,
    pub upper: Frac,
}

impl Distance {
    pub fn exact(x: Frac) -> Distance {
        Distance { lower: x, upper: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    /// The value, when exact.
    pub fn value(&self) -> Option<Frac> {
        self.is_exact().then_some(self.lower)
    }
}

/// Result of decoding one word: a codeword attaining `upper` errors and a
/// certified lower bound `lower` on the true distance (absolute counts).
#[derive(Clone, Debug)]
pub struct LineDecode {
    pub codeword: Vec<Gf>,
    pub lower: usize,
    pub upper: usize,
}

impl LineDecode {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// Decodes with the given strategy; a bounded-distance failure degrades to
/// the bound `distance > radius` plus the information-set codeword (at most
/// `n - k` away).
pub fn decode_with_bounds(word: &[Gf], code: &LinearCode, strategy: Strategy) -> Result<LineDecode> {
    match nearest_codeword(word, code, strategy) {
        Ok((codeword, d)) => Ok(LineDecode { codeword, lower: d, upper: d }),
        Err(Error::NotDecodable { radius }) => {
            let codeword = code.agree_on_information_set(word)?;
            let upper = hamming(&codeword, word);
            Ok(LineDecode { codeword, lower: radius + 1, upper: upper.max(radius + 1) })
        }
        Err(e) => Err(e),
    }
}

/// `delta(word, code)`: exact under brute force or successful bounded
/// decoding, otherwise the certified interval `((t+1)/n, (n-k)/n)`.
pub fn delta_to_code(word: &[Gf], code: &LinearCode, strategy: Strategy) -> Result<Distance> {
    let n = code.length() as i64;
    let dec = decode_with_bounds(word, code, strategy)?;
    Ok(Distance { lower: frac(dec.lower as i64, n), upper: frac(dec.upper as i64, n) })
}
