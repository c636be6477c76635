use std::collections::HashSet;

use crate::gf_poly::Field;
use crate::tensor::TensorWord;
use crate::{Error, Result};

/// The word on `[n]^3` with entry `omega^(-k j) omega^(-2k l)` at `(i, j, l)`
/// when `i + j + l = 0 mod n` and zero elsewhere, for `n = q - 1 = 3k`.
/// It lies in `C ⊞ C ⊞ C` for the RS code with check polynomial
/// `(x - 1)...(x - omega^(k-1))`, and every axis-parallel line meets its
/// support exactly once.
pub fn counterexample_word(field: &Field, k: usize) -> Result<TensorWord> {
    let n = field.order();
    if !n.is_multiple_of(3) {
        return Err(Error::Divisibility(format!("n = {n} is not divisible by 3")));
    }
    if 3 * k != n {
        return Err(Error::InvalidArgument(format!("k = {k} must equal n/3 = {}", n / 3)));
    }
    let mut w = TensorWord::zeros(&[n, n, n])?;
    let kk = k as i64;
    for i in 0..n {
        for j in 0..n {
            let l = (2 * n - i - j) % n;
            let v = field.omega_pow(-kk * j as i64 - 2 * kk * l as i64);
            w.set(&[i, j, l], v)?;
        }
    }
    Ok(w)
}

/// Field degree `2t` for the counterexample at parameter `t`.
pub fn counterexample_field(t: u32) -> Result<Field> {
    if t == 0 || 2 * t > crate::gf_poly::field::MAX_DEGREE {
        return Err(Error::InvalidArgument(format!("t = {t} outside 1..=4")));
    }
    Field::new(2 * t)
}

/// Maximum number of support cells on a single axis-parallel line.
pub fn max_line_occupancy(word: &TensorWord) -> usize {
    let mut best = 0;
    let stride = word.strides();
    for (axis, &step) in stride.iter().enumerate() {
        let n = word.shape()[axis];
        for start in word.line_starts(axis) {
            let c = (0..n).filter(|&s| !word.data()[start + s * step].is_zero()).count();
            best = best.max(c);
        }
    }
    best
}

/// Every axis-parallel line contains at most one support cell.
pub fn line_disjoint_support(word: &TensorWord) -> bool {
    max_line_occupancy(word) <= 1
}

/// Base cell of the direction-`axis` line through cell `index`.
pub(crate) fn line_id(word: &TensorWord, axis: usize, index: usize) -> usize {
    let stride = word.strides()[axis];
    let n = word.shape()[axis];
    index - ((index / stride) % n) * stride
}

/// Greedy set of support cells, no two on a common line. Every line cover
/// of the support needs a distinct line per chosen cell.
pub fn non_collinear_packing(word: &TensorWord) -> Vec<usize> {
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    let mut chosen = Vec::new();
    for idx in word.support() {
        let ids: Vec<(usize, usize)> = (0..word.dims()).map(|a| (a, line_id(word, a, idx))).collect();
        if ids.iter().all(|id| !used.contains(id)) {
            used.extend(ids);
            chosen.push(idx);
        }
    }
    chosen
}

/// Lower bound on the number of axis-parallel lines needed to cover the
/// support: the support size when lines are disjoint, otherwise the larger of
/// a non-collinear packing and `ceil(|supp| / max occupancy)`.
pub fn cover_lower_bound(word: &TensorWord) -> usize {
    let supp = word.weight();
    if supp == 0 {
        return 0;
    }
    let occ = max_line_occupancy(word);
    if occ <= 1 {
        return supp;
    }
    non_collinear_packing(word).len().max(supp.div_ceil(occ))
}
