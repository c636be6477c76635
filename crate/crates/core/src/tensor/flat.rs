use crate::rational::{frac, Frac};
use crate::{Error, Result};

/// An axis-parallel flat: coordinates on `free_axes` vary, the rest are fixed
/// to `base` (whose free coordinates are zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flat {
    free_axes: Vec<usize>,
    base: Vec<usize>,
}

impl Flat {
    pub fn new(mut free_axes: Vec<usize>, base: Vec<usize>) -> Result<Flat> {
        free_axes.sort_unstable();
        free_axes.dedup();
        if free_axes.iter().any(|&a| a >= base.len()) {
            return Err(Error::Shape(format!("free axes {free_axes:?} outside {} dimensions", base.len())));
        }
        if free_axes.iter().any(|&a| base[a] != 0) {
            return Err(Error::Shape(format!("base {base:?} must be zero on free axes {free_axes:?}")));
        }
        Ok(Flat { free_axes, base })
    }

    /// The flat covering the whole grid.
    pub fn full(dims: usize) -> Flat {
        Flat { free_axes: (0..dims).collect(), base: vec![0; dims] }
    }

    pub fn free_axes(&self) -> &[usize] {
        &self.free_axes
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn dim(&self) -> usize {
        self.free_axes.len()
    }

    /// Number of cells, `prod_{i in free} n_i`.
    pub fn size(&self, shape: &[usize]) -> usize {
        self.free_axes.iter().map(|&a| shape[a]).product()
    }

    pub(crate) fn check_shape(&self, shape: &[usize]) -> Result<()> {
        if self.base.len() != shape.len() || self.base.iter().zip(shape).any(|(b, n)| b >= n) {
            return Err(Error::Shape(format!("flat with base {:?} does not fit shape {shape:?}", self.base)));
        }
        Ok(())
    }
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Every `k`-flat of the grid, grouped by direction set (lexicographic) and
/// then by base point (row-major), each weighted by its size over the total
/// size of all flats. The weights sum to one.
pub fn enumerate_flats(shape: &[usize], k: usize) -> Result<Vec<(Flat, Frac)>> {
    let m = shape.len();
    if k == 0 || k >= m {
        return Err(Error::InvalidArgument(format!("flat dimension {k} outside 1..={}", m.saturating_sub(1))));
    }
    let total_cells: usize = shape.iter().product();
    let dirs = subsets(m, k);
    let total = (dirs.len() * total_cells) as i64;
    let mut out = Vec::new();
    for free in dirs {
        let size: usize = free.iter().map(|&a| shape[a]).product();
        let fixed: Vec<usize> = (0..m).filter(|a| !free.contains(a)).collect();
        let count: usize = fixed.iter().map(|&a| shape[a]).product();
        for mut idx in 0..count {
            let mut base = vec![0; m];
            for &a in fixed.iter().rev() {
                base[a] = idx % shape[a];
                idx /= shape[a];
            }
            out.push((Flat { free_axes: free.clone(), base }, frac(size as i64, total)));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    #[test]
    fn lines_of_2x2() {
        let flats = enumerate_flats(&[2, 2], 1).unwrap();
        assert_eq!(flats.len(), 4);
        assert!(flats.iter().all(|(_, w)| *w == frac(1, 4)));
    }

    #[test]
    fn cube_lines_and_planes() {
        let lines = enumerate_flats(&[3, 3, 3], 1).unwrap();
        assert_eq!(lines.len(), 27);
        assert!(lines.iter().all(|(_, w)| *w == frac(1, 27)));
        let planes = enumerate_flats(&[3, 3, 3], 2).unwrap();
        assert_eq!(planes.len(), 9);
        assert!(planes.iter().all(|(_, w)| *w == frac(1, 9)));
    }

    #[test]
    fn weights_sum_to_one_on_uneven_shapes() {
        for k in 1..3 {
            let flats = enumerate_flats(&[2, 3, 5], k).unwrap();
            let total = flats.iter().fold(Frac::zero(), |acc, (_, w)| acc + w);
            assert!(total.is_one());
            assert!(flats.iter().all(|(f, _)| f.dim() == k && f.free_axes().iter().all(|&a| f.base()[a] == 0)));
        }
    }

    #[test]
    fn dimension_out_of_range() {
        assert!(enumerate_flats(&[2, 2], 0).is_err());
        assert!(enumerate_flats(&[2, 2], 2).is_err());
    }

    #[test]
    fn invalid_flats_rejected() {
        assert!(Flat::new(vec![0], vec![1, 0]).is_err());
        assert!(Flat::new(vec![2], vec![0, 0]).is_err());
        assert!(Flat::new(vec![0], vec![0, 5]).unwrap().check_shape(&[2, 2]).is_err());
    }
}
