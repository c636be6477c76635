use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::checks::{CheckReport, Inequality, Mode};
use crate::codes::{LinearCode, Strategy};
use crate::gf_poly::{univariate, Gf};
use crate::rational::{frac, to_big, Frac};
use crate::tensor::{CodeFamily, TensorWord};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct PsTrial {
    /// Cells where `c_1` and `c_2` differ.
    pub disagreement: usize,
    /// Cells between `c_1` and the tensor codeword found.
    pub found_distance: Option<usize>,
    /// `c_1` is not itself a tensor codeword.
    pub nontrivial: bool,
    /// Perturbed lines dropped to meet the closeness precondition.
    pub dropped: usize,
}

impl PsTrial {
    pub fn passes(&self) -> bool {
        self.found_distance.is_some_and(|d| d <= 2 * self.disagreement)
    }
}

#[derive(Clone, Debug)]
pub struct PsReport {
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// `(1/2 - k/n)^2`.
    pub threshold: Frac,
    pub trials: Vec<PsTrial>,
}

impl PsReport {
    pub fn nontrivial(&self) -> usize {
        self.trials.iter().filter(|t| t.nontrivial).count()
    }

    pub fn violations(&self) -> usize {
        self.trials.iter().filter(|t| !t.passes()).count()
    }

    pub fn dropped(&self) -> usize {
        self.trials.iter().map(|t| t.dropped).sum()
    }

    pub fn to_check(&self, instance: &str) -> CheckReport {
        let mut report = CheckReport::new("ps-corollary", instance, Mode::Sampled);
        report.seed = Some(self.seed);
        report.samples = Some(self.trials.len());
        let cells = (self.n * self.n) as i64;
        // Worst trial by slack 2 * disagreement - found distance.
        let worst = self.trials.iter().min_by_key(|t| match t.found_distance {
            Some(d) => 2 * t.disagreement as i64 - d as i64,
            None => i64::MIN,
        });
        if let Some(t) = worst {
            let lhs = match t.found_distance {
                Some(d) => frac(d as i64, cells),
                None => frac(1, 1),
            };
            report.inequalities.push(Inequality::le(
                "worst trial: delta(c_1, z) <= 2 delta(c_1, c_2)",
                to_big(&lhs),
                to_big(&frac(2 * t.disagreement as i64, cells)),
            ));
        }
        report.note("trials", self.trials.len());
        report.note("nontrivial", self.nontrivial());
        report.note("violations", self.violations());
        report.note("dropped_lines", self.dropped());
        report.note("threshold", crate::rational::format_frac(&self.threshold));
        report
    }
}

/// A codeword of the RS code vanishing on `n - d` positions:
/// evaluations of `s * prod_{j in S} (x - omega^-j)` with `|S| = k - 1`.
fn min_weight_codeword(code: &LinearCode, rng: &mut ChaCha8Rng) -> Vec<Gf> {
    let field = code.field();
    let n = code.length();
    let k = code.dimension();
    let mut pos: Vec<usize> = (0..n).collect();
    pos.shuffle(rng);
    let roots: Vec<Gf> = pos[..k - 1].iter().map(|&j| field.omega_pow(-(j as i64))).collect();
    let s = Gf(rng.gen_range(1..field.size()) as u8);
    let f = univariate::scale(field, &univariate::from_roots(field, &roots), s);
    (0..n).map(|j| univariate::eval(field, &f, field.omega_pow(-(j as i64)))).collect()
}

fn perturbation(code: &LinearCode, rng: &mut ChaCha8Rng) -> Vec<Gf> {
    if rng.gen_bool(0.5) {
        min_weight_codeword(code, rng)
    } else {
        CodeFamily::random_codeword_of(code, rng)
    }
}

/// Planted trials for the two-direction closeness lemma on `C ⊗ C`. Each
/// trial draws `c` in the tensor code, adds codewords of `C` on up to two
/// random lines along axis 0 (giving `c_1`, whose axis-0 lines all lie in
/// `C`) and along axis 1 (giving `c_2`), drops the last added line until
/// `delta(c_1, c_2) <= (1/2 - k/n)^2`, and then looks for a tensor codeword
/// within `2 delta(c_1, c_2)` of `c_1`: by decoding `c_1` along axis 1, then
/// `c_2` along axis 0, then by [`CodeFamily::tensor_distance`].
pub fn check_ps_corollary(code: &LinearCode, trials: usize, seed: u64, strategy: Option<Strategy>) -> Result<PsReport> {
    let rs = code.cyclic().filter(|c| c.is_reed_solomon());
    let n = code.length();
    let k = code.dimension();
    if rs.is_none() || n != code.field().order() {
        return Err(Error::NotApplicable("the lemma is stated for primitive Reed-Solomon codes".into()));
    }
    if 2 * k >= n || k == 0 {
        return Err(Error::NotApplicable(format!("need 0 < k < n/2, got k={k} n={n}")));
    }
    let family = CodeFamily::uniform(code, 2)?;
    let cells = (n * n) as i64;
    let threshold = {
        let t = frac(1, 2) - frac(k as i64, n as i64);
        t * t
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let c = family.random_tensor_word(&mut rng);
        // (axis, start, codeword) for each perturbed line, in insertion order.
        let mut lines: Vec<(usize, usize, Vec<Gf>)> = Vec::new();
        for axis in 0..2 {
            let count = rng.gen_range(0..=2);
            let starts = c.line_starts(axis);
            let chosen: Vec<usize> = starts.choose_multiple(&mut rng, count).copied().collect();
            for start in chosen {
                lines.push((axis, start, perturbation(code, &mut rng)));
            }
        }
        lines.shuffle(&mut rng);
        let mut dropped = 0;
        let (c1, c2) = loop {
            let mut c1 = c.clone();
            let mut c2 = c.clone();
            for (axis, start, v) in &lines {
                let target = if *axis == 0 { &mut c1 } else { &mut c2 };
                let cur = target.line_at(*axis, *start);
                let sum: Vec<Gf> = cur.iter().zip(v).map(|(&a, &b)| a + b).collect();
                target.set_line(*axis, *start, &sum);
            }
            if frac(c1.distance(&c2)? as i64, cells) <= threshold {
                break (c1, c2);
            }
            lines.pop();
            dropped += 1;
        };
        let disagreement = c1.distance(&c2)?;
        let nontrivial = !family.product_contains(&c1)?;
        let close = |z: &TensorWord| -> Result<Option<usize>> {
            Ok(if family.product_contains(z)? { Some(c1.distance(z)?) } else { None })
        };
        let mut found = close(&family.nearest_in_direction(&c1, 1, strategy)?.word)?;
        if !found.is_some_and(|d| d <= 2 * disagreement) {
            found = found.into_iter().chain(close(&family.nearest_in_direction(&c2, 0, strategy)?.word)?).min();
        }
        if !found.is_some_and(|d| d <= 2 * disagreement) {
            found = found.into_iter().chain(close(&family.tensor_distance(&c1, strategy)?.word)?).min();
        }
        out.push(PsTrial { disagreement, found_distance: found, nontrivial, dropped });
    }
    Ok(PsReport { n, k, seed, threshold, trials: out })
}
