//! Gaussian elimination over GF(2^m). Matrices are row lists.

use super::field::{Field, Gf};

/// Reduces `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref(field: &Field, rows: &mut Vec<Vec<Gf>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                *x -= field.mul(factor, pv);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(field: &Field, rows: &[Vec<Gf>]) -> usize {
    let mut m = rows.to_vec();
    rref(field, &mut m).len()
}

/// Basis of `{x : A x = 0}` for the `ncols`-column matrix `A`.
pub fn nullspace(field: &Field, rows: &[Vec<Gf>], ncols: usize) -> Vec<Vec<Gf>> {
    let mut m = rows.to_vec();
    let pivots = rref(field, &mut m);
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Gf::ZERO; ncols];
            v[free] = Gf::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[free];
            }
            v
        })
        .collect()
}

/// Solution set of `A x = b`: one particular solution plus a kernel basis,
/// or `None` when the system is inconsistent.
pub fn solve(field: &Field, rows: &[Vec<Gf>], rhs: &[Gf], ncols: usize) -> Option<(Vec<Gf>, Vec<Vec<Gf>>)> {
    let mut aug: Vec<Vec<Gf>> = rows
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let pivots = rref(field, &mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Gf::ZERO; ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols];
    }
    let kernel = nullspace(field, rows, ncols);
    Some((x, kernel))
}

/// `M v` for a row-list matrix.
pub fn mat_vec(field: &Field, rows: &[Vec<Gf>], v: &[Gf]) -> Vec<Gf> {
    rows.iter().map(|row| dot(field, row, v)).collect()
}

pub fn dot(field: &Field, a: &[Gf], b: &[Gf]) -> Gf {
    a.iter().zip(b).fold(Gf::ZERO, |acc, (&x, &y)| acc + field.mul(x, y))
}

/// `sum_i coeffs[i] * rows[i]`.
pub fn combine(field: &Field, rows: &[Vec<Gf>], coeffs: &[Gf], len: usize) -> Vec<Gf> {
    let mut out = vec![Gf::ZERO; len];
    for (row, &c) in rows.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o += field.mul(c, x);
        }
    }
    out
}
