use std::fmt;

use crate::gf_poly::{Field, Gf};
use crate::rational::{frac, Frac};
use crate::{Error, Result};

use super::flat::Flat;

/// A word on the grid `[n_1] x ... x [n_m]`, stored row-major (last axis
/// fastest). Entry `(i_1, ..., i_m)` is zero-based; a line in direction `j`
/// fixes every coordinate except the `j`-th.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorWord {
    shape: Vec<usize>,
    data: Vec<Gf>,
}

impl fmt::Debug for TensorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorWord{:?}[", self.shape)?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

pub(crate) fn strides(shape: &[usize]) -> Vec<usize> {
    let mut s = vec![1; shape.len()];
    for i in (0..shape.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * shape[i + 1];
    }
    s
}

impl TensorWord {
    pub fn zeros(shape: &[usize]) -> Result<TensorWord> {
        if shape.is_empty() || shape.contains(&0) {
            return Err(Error::Shape(format!("invalid shape {shape:?}")));
        }
        Ok(TensorWord { shape: shape.to_vec(), data: vec![Gf::ZERO; shape.iter().product()] })
    }

    pub fn from_data(shape: &[usize], data: Vec<Gf>) -> Result<TensorWord> {
        let mut w = TensorWord::zeros(shape)?;
        if data.len() != w.data.len() {
            return Err(Error::Shape(format!("{} entries for shape {shape:?}", data.len())));
        }
        w.data = data;
        Ok(w)
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn dims(&self) -> usize {
        self.shape.len()
    }

    /// Total number of entries.
    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Gf] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Gf] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Gf> {
        self.data
    }

    pub fn strides(&self) -> Vec<usize> {
        strides(&self.shape)
    }

    pub fn index_of(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.shape.len() || coords.iter().zip(&self.shape).any(|(c, n)| c >= n) {
            return Err(Error::Shape(format!("coordinates {coords:?} outside shape {:?}", self.shape)));
        }
        Ok(coords.iter().zip(self.strides()).map(|(c, s)| c * s).sum())
    }

    pub fn coords_of(&self, mut index: usize) -> Vec<usize> {
        let mut c = vec![0; self.shape.len()];
        for (slot, &n) in c.iter_mut().zip(&self.shape).rev() {
            *slot = index % n;
            index /= n;
        }
        c
    }

    pub fn get(&self, coords: &[usize]) -> Result<Gf> {
        Ok(self.data[self.index_of(coords)?])
    }

    pub fn set(&mut self, coords: &[usize], v: Gf) -> Result<()> {
        let i = self.index_of(coords)?;
        self.data[i] = v;
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Hamming weight `|x|`.
    pub fn weight(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    /// Normalized Hamming weight `||x||`.
    pub fn norm(&self) -> Frac {
        frac(self.weight() as i64, self.len() as i64)
    }

    pub fn support(&self) -> Vec<usize> {
        self.data.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
    }

    fn check_same_shape(&self, other: &TensorWord) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!("shapes {:?} and {:?}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorWord) -> Result<TensorWord> {
        self.check_same_shape(other)?;
        Ok(TensorWord {
            shape: self.shape.clone(),
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    /// Subtraction; identical to addition in characteristic 2.
    pub fn sub(&self, other: &TensorWord) -> Result<TensorWord> {
        self.add(other)
    }

    pub fn add_assign(&mut self, other: &TensorWord) -> Result<()> {
        self.check_same_shape(other)?;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        Ok(())
    }

    pub fn scale(&self, field: &Field, s: Gf) -> TensorWord {
        TensorWord { shape: self.shape.clone(), data: self.data.iter().map(|&x| field.mul(s, x)).collect() }
    }

    /// Hamming distance `|x - y|`.
    pub fn distance(&self, other: &TensorWord) -> Result<usize> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).filter(|(a, b)| a != b).count())
    }

    /// Number of lines in direction `axis`, `|L_axis| = N / n_axis`.
    pub fn line_count(&self, axis: usize) -> usize {
        self.len() / self.shape[axis]
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<()> {
        if axis >= self.shape.len() {
            return Err(Error::Shape(format!("axis {axis} out of range for {} dimensions", self.shape.len())));
        }
        Ok(())
    }

    /// Flat indices of the base cells (coordinate `axis` equal to zero) of
    /// the direction-`axis` lines, in row-major order.
    pub fn line_starts(&self, axis: usize) -> Vec<usize> {
        let stride = strides(&self.shape)[axis];
        let n = self.shape[axis];
        (0..self.len()).filter(|&i| (i / stride).is_multiple_of(n)).collect()
    }

    /// Entries of the line through base cell `start` in direction `axis`.
    pub fn line_at(&self, axis: usize, start: usize) -> Vec<Gf> {
        let stride = strides(&self.shape)[axis];
        (0..self.shape[axis]).map(|s| self.data[start + s * stride]).collect()
    }

    pub fn set_line(&mut self, axis: usize, start: usize, values: &[Gf]) {
        let stride = strides(&self.shape)[axis];
        for (s, &v) in values.iter().enumerate() {
            self.data[start + s * stride] = v;
        }
    }

    /// All lines in direction `axis`, paired with their base cell.
    pub fn lines(&self, axis: usize) -> impl Iterator<Item = (usize, Vec<Gf>)> + '_ {
        self.line_starts(axis).into_iter().map(move |s| (s, self.line_at(axis, s)))
    }

    /// `|x|_axis`: number of nonzero lines in direction `axis`.
    pub fn nonzero_lines(&self, axis: usize) -> Result<usize> {
        self.check_axis(axis)?;
        let stride = strides(&self.shape)[axis];
        let n = self.shape[axis];
        Ok(self
            .line_starts(axis)
            .into_iter()
            .filter(|&st| (0..n).any(|s| !self.data[st + s * stride].is_zero()))
            .count())
    }

    /// `||x||_axis`: fraction of nonzero lines in direction `axis`.
    pub fn line_weight(&self, axis: usize) -> Result<Frac> {
        Ok(frac(self.nonzero_lines(axis)? as i64, self.line_count(axis) as i64))
    }

    /// Restriction to a flat: a word of shape `(n_i)_{i in free axes}`,
    /// free axes in ascending order.
    pub fn restrict(&self, flat: &Flat) -> Result<TensorWord> {
        flat.check_shape(&self.shape)?;
        let sub_shape: Vec<usize> = flat.free_axes().iter().map(|&a| self.shape[a]).collect();
        let st = self.strides();
        let base: usize = flat.base().iter().zip(&st).map(|(c, s)| c * s).sum();
        let sub_strides: Vec<usize> = flat.free_axes().iter().map(|&a| st[a]).collect();
        let sub_len: usize = sub_shape.iter().product();
        let sub_st = strides(&sub_shape);
        let data = (0..sub_len)
            .map(|j| {
                let offset: usize =
                    sub_st.iter().zip(&sub_shape).zip(&sub_strides).map(|((&ss, &n), &gs)| ((j / ss) % n) * gs).sum();
                self.data[base + offset]
            })
            .collect();
        TensorWord::from_data(&sub_shape, data)
    }

    /// Multiplies every direction-`axis` line by `matrix` (rows of length
    /// `n_axis`); the result has `matrix.len()` entries along that axis.
    pub fn apply_along_axis(&self, field: &Field, axis: usize, matrix: &[Vec<Gf>]) -> Result<TensorWord> {
        self.check_axis(axis)?;
        let n = self.shape[axis];
        if matrix.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("matrix rows must have length {n}")));
        }
        let mut out_shape = self.shape.clone();
        out_shape[axis] = matrix.len();
        let out_len: usize = out_shape.iter().product();
        let mut out = TensorWord { shape: out_shape, data: vec![Gf::ZERO; out_len] };
        if out_len == 0 {
            return Ok(out);
        }
        let in_stride = strides(&self.shape)[axis];
        let out_strides = strides(&out.shape);
        let out_stride = out_strides[axis];
        for start in self.line_starts(axis) {
            let coords = self.coords_of(start);
            let out_start: usize = coords.iter().zip(&out_strides).map(|(c, s)| c * s).sum();
            for (r, row) in matrix.iter().enumerate() {
                let mut acc = Gf::ZERO;
                for (s, &m) in row.iter().enumerate() {
                    acc += field.mul(m, self.data[start + s * in_stride]);
                }
                out.data[out_start + r * out_stride] = acc;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w2x2() -> TensorWord {
        TensorWord::from_data(&[2, 2], vec![Gf(1), Gf(2), Gf(3), Gf(4)]).unwrap()
    }

    #[test]
    fn restrict_line_uses_fixed_convention() {
        // [[a, b], [c, d]], line varying the first axis at base (0, 1) -> (b, d)
        let flat = Flat::new(vec![0], vec![0, 1]).unwrap();
        let r = w2x2().restrict(&flat).unwrap();
        assert_eq!(r.data(), &[Gf(2), Gf(4)]);
        assert_eq!(r.shape(), &[2]);
    }

    #[test]
    fn restrict_to_full_flat_is_identity() {
        let w = w2x2();
        assert_eq!(w.restrict(&Flat::full(2)).unwrap(), w);
    }

    #[test]
    fn line_weights_of_simple_words() {
        let z = TensorWord::zeros(&[2, 2]).unwrap();
        assert_eq!(z.line_weight(0).unwrap(), frac(0, 1));
        let mut e = z.clone();
        e.set(&[1, 0], Gf(1)).unwrap();
        assert_eq!(e.line_weight(0).unwrap(), frac(1, 2));
        assert_eq!(e.line_weight(1).unwrap(), frac(1, 2));
    }

    #[test]
    fn lines_cover_every_cell_once() {
        let w = TensorWord::zeros(&[2, 3, 4]).unwrap();
        for axis in 0..3 {
            let mut seen = vec![0; w.len()];
            let stride = w.strides()[axis];
            for s in w.line_starts(axis) {
                for t in 0..w.shape()[axis] {
                    seen[s + t * stride] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
            assert_eq!(w.line_starts(axis).len(), w.line_count(axis));
        }
    }

    #[test]
    fn apply_identity_along_axis() {
        let f = Field::new(3).unwrap();
        let w = TensorWord::from_data(&[2, 3], (1..=6).map(|v| Gf(v as u8)).collect()).unwrap();
        let id = vec![vec![Gf(1), Gf(0), Gf(0)], vec![Gf(0), Gf(1), Gf(0)], vec![Gf(0), Gf(0), Gf(1)]];
        assert_eq!(w.apply_along_axis(&f, 1, &id).unwrap(), w);
        let sum_row = vec![vec![Gf(1), Gf(1)]];
        let s = w.apply_along_axis(&f, 0, &sum_row).unwrap();
        assert_eq!(s.shape(), &[1, 3]);
        assert_eq!(s.data(), &[Gf(1 ^ 4), Gf(2 ^ 5), Gf(3 ^ 6)]);
    }

    #[test]
    fn coords_round_trip() {
        let w = TensorWord::zeros(&[3, 4, 5]).unwrap();
        for i in 0..w.len() {
            assert_eq!(w.index_of(&w.coords_of(i)).unwrap(), i);
        }
        assert!(w.index_of(&[3, 0, 0]).is_err());
    }
}
