//! Exhaustive oracles written from the definitions with plain vectors.

use num_rational::Ratio;

pub type Q = Ratio<i64>;

/// Words over a field of characteristic two, where addition is XOR.
pub struct Oracle {
    pub shape: Vec<usize>,
    pub q: usize,
    pub codes: Vec<Vec<Vec<u8>>>,
}

impl Oracle {
    fn cells(&self) -> usize {
        self.shape.iter().product()
    }

    fn coords(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.shape.len()];
        for a in (0..self.shape.len()).rev() {
            c[a] = i % self.shape[a];
            i /= self.shape[a];
        }
        c
    }

    fn index(&self, c: &[usize]) -> usize {
        c.iter().zip(&self.shape).fold(0, |acc, (&x, &n)| acc * n + x)
    }

    /// Cell lists of the lines along `axis`.
    fn lines(&self, axis: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.cells() {
            let c = self.coords(i);
            if c[axis] == 0 {
                out.push(
                    (0..self.shape[axis])
                        .map(|j| {
                            let mut d = c.clone();
                            d[axis] = j;
                            self.index(&d)
                        })
                        .collect(),
                );
            }
        }
        out
    }

    fn all_words(&self) -> Vec<Vec<u8>> {
        let n = self.cells();
        let total = self.q.pow(n as u32);
        (0..total)
            .map(|mut t| {
                let mut w = vec![0u8; n];
                for x in w.iter_mut().rev() {
                    *x = (t % self.q) as u8;
                    t /= self.q;
                }
                w
            })
            .collect()
    }

    fn in_direction(&self, w: &[u8], axis: usize) -> bool {
        self.lines(axis).iter().all(|l| {
            let v: Vec<u8> = l.iter().map(|&i| w[i]).collect();
            self.codes[axis].contains(&v)
        })
    }

    fn direction_words(&self, axis: usize) -> Vec<Vec<u8>> {
        self.all_words().into_iter().filter(|w| self.in_direction(w, axis)).collect()
    }

    fn tensor_words(&self) -> Vec<Vec<u8>> {
        self.all_words().into_iter().filter(|w| (0..self.shape.len()).all(|a| self.in_direction(w, a))).collect()
    }

    fn line_norm(&self, w: &[u8], axis: usize) -> Q {
        let lines = self.lines(axis);
        let hit = lines.iter().filter(|l| l.iter().any(|&i| w[i] != 0)).count();
        Q::new(hit as i64, lines.len() as i64)
    }

    fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
        a.iter().zip(b).map(|(x, y)| x ^ y).collect()
    }

    fn weight(w: &[u8]) -> usize {
        w.iter().filter(|&&x| x != 0).count()
    }

    pub fn rho(&self) -> Q {
        let dirs: Vec<Vec<Vec<u8>>> = (0..self.shape.len()).map(|a| self.direction_words(a)).collect();
        let mut best_cost: std::collections::HashMap<Vec<u8>, Q> = Default::default();
        let mut idx = vec![0usize; dirs.len()];
        loop {
            let mut sum = vec![0u8; self.cells()];
            let mut cost = Q::from_integer(0);
            for (a, &i) in idx.iter().enumerate() {
                sum = Self::xor(&sum, &dirs[a][i]);
                cost += self.line_norm(&dirs[a][i], a);
            }
            let e = best_cost.entry(sum).or_insert(cost);
            if cost < *e {
                *e = cost;
            }
            let mut a = 0;
            while a < idx.len() {
                idx[a] += 1;
                if idx[a] < dirs[a].len() {
                    break;
                }
                idx[a] = 0;
                a += 1;
            }
            if a == idx.len() {
                break;
            }
        }
        best_cost
            .iter()
            .filter(|(w, _)| Self::weight(w) > 0)
            .map(|(w, c)| Q::new(Self::weight(w) as i64, self.cells() as i64) / c)
            .min()
            .unwrap()
    }

    /// `(cells, weight)` for every k-flat.
    fn flats(&self, k: usize) -> Vec<(Vec<usize>, Q)> {
        let m = self.shape.len();
        let mut flats = Vec::new();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let free: Vec<usize> = (0..m).filter(|a| mask >> a & 1 == 1).collect();
            let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
            for i in 0..self.cells() {
                let c = self.coords(i);
                let key: Vec<usize> = (0..m).map(|a| if free.contains(&a) { usize::MAX } else { c[a] }).collect();
                groups.entry(key).or_default().push(i);
            }
            flats.extend(groups.into_values());
        }
        let total: usize = flats.iter().map(Vec::len).sum();
        flats.into_iter().map(|f| (f.clone(), Q::new(f.len() as i64, total as i64))).collect()
    }

    fn dist(a: &[u8], b: &[u8], cells: &[usize]) -> usize {
        cells.iter().filter(|&&i| a[i] != b[i]).count()
    }

    pub fn rho_r(&self, k: usize) -> Q {
        let tensor = self.tensor_words();
        let flats = self.flats(k);
        let all: Vec<usize> = (0..self.cells()).collect();
        let mut best: Option<Q> = None;
        for x in self.all_words() {
            let d = tensor.iter().map(|t| Self::dist(&x, t, &all)).min().unwrap();
            if d == 0 {
                continue;
            }
            let e: Q = flats
                .iter()
                .map(|(f, w)| {
                    let local = tensor.iter().map(|t| Self::dist(&x, t, f)).min().unwrap();
                    w * Q::new(local as i64, f.len() as i64)
                })
                .sum();
            let r = e / Q::new(d as i64, self.cells() as i64);
            best = Some(best.map_or(r, |b| b.min(r)));
        }
        best.unwrap()
    }

    pub fn rho_a(&self) -> Q {
        let m = self.shape.len();
        assert!(m == 2 || m == 3);
        let dirs: Vec<Vec<Vec<u8>>> = (0..m).map(|a| self.direction_words(a)).collect();
        let tensor = self.tensor_words();
        let n = self.cells() as i64;
        let mut best: Option<Q> = None;
        let mut visit = |tuple: &[&Vec<u8>]| {
            let mut num = Q::from_integer(0);
            for i in 0..m {
                for j in 0..m {
                    num += Q::new(Self::weight(&Self::xor(tuple[i], tuple[j])) as i64, n);
                }
            }
            num /= Q::from_integer((m * m) as i64);
            if num == Q::from_integer(0) {
                return;
            }
            let den = tensor
                .iter()
                .map(|t| {
                    (0..m).map(|i| self.line_norm(&Self::xor(tuple[i], t), i)).sum::<Q>() / Q::from_integer(m as i64)
                })
                .min()
                .unwrap();
            let r = num / den;
            best = Some(best.map_or(r, |b: Q| b.min(r)));
        };
        for a in &dirs[0] {
            for b in &dirs[1] {
                if m == 2 {
                    visit(&[a, b]);
                } else {
                    for c in &dirs[2] {
                        visit(&[a, b, c]);
                    }
                }
            }
        }
        best.unwrap()
    }
}

pub fn rep2_oracle(m: usize) -> Oracle {
    Oracle { shape: vec![2; m], q: 2, codes: vec![vec![vec![0, 0], vec![1, 1]]; m] }
}

// Fixture values, produced by the oracles above.
pub const RHO_REP2_M2: (i64, i64) = (1, 2);
pub const RHO_REP2_M3: (i64, i64) = (1, 3);
pub const RHO_R_REP2_T21: (i64, i64) = (1, 2);
pub const RHO_R_REP2_T31: (i64, i64) = (1, 3);
pub const RHO_R_REP2_T32: (i64, i64) = (1, 2);
pub const RHO_A_REP2_M2: (i64, i64) = (1, 2);
pub const RHO_A_REP2_M3: (i64, i64) = (4, 9);

pub fn fx(v: (i64, i64)) -> Q {
    Q::new(v.0, v.1)
}
