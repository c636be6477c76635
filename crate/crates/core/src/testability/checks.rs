use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::agreement::{agreement_distance, rho_a_exact};
use super::constants::{alpha_prop, hyperplane_bound, line_test_factor};
use super::flat_test::{FlatTest, TestPlan};
use super::robustness::{min_over_words, rho_r_exact, robustness_pool};
use crate::codes::{LinearCode, Strategy};
use crate::expansion::rho_exact;
use crate::rational::{format_big, frac, to_big, BigFrac, Frac};
use crate::tensor::{CodeFamily, TensorWord};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sampled,
    Certificate,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Sampled => "sampled",
            Mode::Certificate => "certificate",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Ge,
    Le,
    Eq,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Eq => "=",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Inequality {
    pub label: String,
    pub lhs: BigFrac,
    pub relation: Relation,
    pub rhs: BigFrac,
    pub holds: bool,
}

impl Inequality {
    pub fn ge(label: impl Into<String>, lhs: BigFrac, rhs: BigFrac) -> Inequality {
        let holds = lhs >= rhs;
        Inequality { label: label.into(), lhs, relation: Relation::Ge, rhs, holds }
    }

    pub fn le(label: impl Into<String>, lhs: BigFrac, rhs: BigFrac) -> Inequality {
        let holds = lhs <= rhs;
        Inequality { label: label.into(), lhs, relation: Relation::Le, rhs, holds }
    }

    pub fn eq(label: impl Into<String>, lhs: BigFrac, rhs: BigFrac) -> Inequality {
        let holds = lhs == rhs;
        Inequality { label: label.into(), lhs, relation: Relation::Eq, rhs, holds }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.label,
            format_big(&self.lhs),
            self.relation,
            format_big(&self.rhs),
            if self.holds { "holds" } else { "VIOLATED" }
        )
    }
}

/// Outcome of one executable inequality check.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub inequalities: Vec<Inequality>,
    /// Auxiliary values in insertion order.
    pub notes: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(check: &str, instance: &str, mode: Mode) -> CheckReport {
        CheckReport {
            check: check.into(),
            instance: instance.into(),
            mode,
            seed: None,
            samples: None,
            inequalities: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> bool {
        self.inequalities.iter().all(|i| i.holds)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Inequality> {
        self.inequalities.iter().filter(|i| !i.holds)
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.into(), value.to_string()));
    }
}

/// A constant with its provenance. Exact reports carry a point interval.
#[derive(Clone, Debug, PartialEq)]
pub struct TestReport {
    pub quantity: String,
    pub instance: String,
    pub mode: Mode,
    pub lower: Option<Frac>,
    pub upper: Option<Frac>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

impl TestReport {
    pub fn exact(quantity: &str, instance: &str, value: Frac) -> TestReport {
        TestReport {
            quantity: quantity.into(),
            instance: instance.into(),
            mode: Mode::Exact,
            lower: Some(value),
            upper: Some(value),
            seed: None,
            samples: None,
        }
    }

    pub fn upper_bound(quantity: &str, instance: &str, mode: Mode, upper: Frac) -> TestReport {
        TestReport {
            quantity: quantity.into(),
            instance: instance.into(),
            mode,
            lower: None,
            upper: Some(upper),
            seed: None,
            samples: None,
        }
    }

    pub fn with_sampling(mut self, samples: usize, seed: u64) -> TestReport {
        self.samples = Some(samples);
        self.seed = Some(seed);
        self
    }

    pub fn is_point(&self) -> bool {
        self.lower.is_some() && self.lower == self.upper
    }
}

fn big(x: Frac) -> BigFrac {
    to_big(&x)
}

fn line_test(family: &CodeFamily) -> Result<FlatTest> {
    FlatTest::new(&family.shape(), 1)
}

/// Both directions of the robustness/agreement lemma on exact values, the
/// trivial bounds `rho_r <= 1` and `rho_a <= 2`, and the word-level chain
/// `||x - z|| <= d_x (1 + 2 / rho_a)`, checked on every word.
pub fn check_lemma_robust_agreement(family: &CodeFamily, instance: &str) -> Result<CheckReport> {
    let rho_r = rho_r_exact(&line_test(family)?, family)?.value;
    let rho_a = rho_a_exact(family)?.value;
    let delta = family.min_relative_distance()?;
    let mut report = CheckReport::new("robust-agreement", instance, Mode::Exact);
    report.inequalities.push(Inequality::ge("rho_r >= rho_a / 4", big(rho_r), big(rho_a / frac(4, 1))));
    report.inequalities.push(Inequality::ge(
        "rho_a >= rho_r / (rho_r + 1) * min delta(C_i)",
        big(rho_a),
        big(rho_r / (rho_r + Frac::one()) * delta),
    ));
    report.inequalities.push(Inequality::le("rho_r <= 1", big(rho_r), BigFrac::one()));
    report.inequalities.push(Inequality::le("rho_a <= 2", big(rho_a), big(frac(2, 1))));
    report.inequalities.push(direction_one_chain(family, rho_a)?);
    report.note("rho_r", crate::rational::format_frac(&rho_r));
    report.note("rho_a", crate::rational::format_frac(&rho_a));
    report.note("min_delta", crate::rational::format_frac(&delta));
    Ok(report)
}

/// For every word `x`: `y_i` the nearest word of `C^(i)`, `d_x = E_i ||x - y_i||`,
/// `z` a tensor codeword minimizing `E_i ||y_i - z||_i`. Reports the word with
/// the largest `||x - z|| - d_x (1 + 2 / rho_a)`.
pub fn direction_one_chain(family: &CodeFamily, rho_a: Frac) -> Result<Inequality> {
    let tensor: Vec<TensorWord> = family
        .tensor_code()?
        .codewords()?
        .iter()
        .map(|c| TensorWord::from_data(&family.shape(), c.clone()))
        .collect::<Result<_>>()?;
    let factor = Frac::one() + frac(2, 1) / rho_a;
    let n = family.cells() as i64;
    let m = family.dims() as i64;
    // The smallest slack marks the worst word.
    let worst = min_over_words(family, |x| {
        let ys = (0..family.dims())
            .map(|axis| Ok(family.nearest_in_direction(x, axis, Some(Strategy::Brute))?.word))
            .collect::<Result<Vec<_>>>()?;
        let d_x = ys.iter().map(|y| x.distance(y)).sum::<Result<usize>>()?;
        let mut best: Option<(Frac, &TensorWord)> = None;
        for z in &tensor {
            let e = agreement_distance(&ys, z)?;
            if best.is_none_or(|(b, _)| e < b) {
                best = Some((e, z));
            }
        }
        let z = best.expect("tensor code is nonempty").1;
        let lhs = frac(x.distance(z)? as i64, n);
        let rhs = frac(d_x as i64, m * n) * factor;
        Ok(Some(rhs - lhs))
    })?;
    let (slack, _) = worst.ok_or_else(|| Error::Degenerate("empty word space".into()))?;
    Ok(Inequality::ge("min over words of d_x (1 + 2/rho_a) - ||x - z||", big(slack), BigFrac::zero()))
}

/// How [`check_composition`] evaluates the outer robustness values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompositionMode {
    Exact,
    Sampled { samples: usize, seed: u64 },
}

fn require_uniform(family: &CodeFamily) -> Result<()> {
    if family.codes().iter().any(|c| !c.same_code_as(family.code(0))) {
        return Err(Error::NotApplicable("composition is stated for a power of a single code".into()));
    }
    Ok(())
}

/// `rho_r(T_m^k1) >= rho_r(T_m^k2) * rho_r(T_k2^k1, C^k2)`. In sampled mode
/// the inner constant is still exact; the outer ones are replaced by
/// per-word checks of `E_k1(x) >= rho_r(T_k2^k1) E_k2(x)` and by the same
/// inequality on pool minima.
pub fn check_composition(
    family: &CodeFamily,
    k1: usize,
    k2: usize,
    mode: CompositionMode,
    instance: &str,
) -> Result<CheckReport> {
    let m = family.dims();
    if !(1 <= k1 && k1 < k2 && k2 < m) {
        return Err(Error::InvalidArgument(format!("need 1 <= k1 < k2 < m, got k1={k1} k2={k2} m={m}")));
    }
    require_uniform(family)?;
    let sub_family = family.select(&(0..k2).collect::<Vec<_>>())?;
    let sub = rho_r_exact(&FlatTest::new(&sub_family.shape(), k1)?, &sub_family)?.value;
    let t1 = FlatTest::new(&family.shape(), k1)?;
    let t2 = FlatTest::new(&family.shape(), k2)?;
    let mut report;
    match mode {
        CompositionMode::Exact => {
            report = CheckReport::new("composition", instance, Mode::Exact);
            let r1 = rho_r_exact(&t1, family)?.value;
            let r2 = rho_r_exact(&t2, family)?.value;
            report.inequalities.push(Inequality::ge(
                format!("rho_r(T_{m}^{k1}) >= rho_r(T_{m}^{k2}) * rho_r(T_{k2}^{k1})"),
                big(r1),
                big(r2 * sub),
            ));
            report.note("rho_r_k1", crate::rational::format_frac(&r1));
            report.note("rho_r_k2", crate::rational::format_frac(&r2));
        }
        CompositionMode::Sampled { samples, seed } => {
            report = CheckReport::new("composition", instance, Mode::Sampled);
            report.seed = Some(seed);
            report.samples = Some(samples);
            let pool = robustness_pool(family, samples, seed)?;
            let p1 = TestPlan::new(&t1, family, None)?;
            let p2 = TestPlan::new(&t2, family, None)?;
            let n = family.cells() as i64;
            let mut worst_slack: Option<(Frac, Frac, Frac)> = None;
            let mut min1: Option<Frac> = None;
            let mut min2: Option<Frac> = None;
            let mut exact = true;
            for x in &pool {
                let e1 = p1.expectation(x)?;
                let e2 = p2.expectation(x)?;
                let slack = e1.lower - sub * e2.upper;
                if worst_slack.is_none_or(|(s, _, _)| slack < s) {
                    worst_slack = Some((slack, e1.lower, sub * e2.upper));
                }
                let d = family.tensor_distance(x, None)?;
                exact &= e1.is_exact() && e2.is_exact() && d.is_exact();
                if d.upper == 0 {
                    continue;
                }
                let r1 = e1.lower / frac(d.upper as i64, n);
                let r2 = e2.upper / frac(d.lower.max(1) as i64, n);
                min1 = Some(min1.map_or(r1, |v| v.min(r1)));
                min2 = Some(min2.map_or(r2, |v| v.min(r2)));
            }
            let (_, lhs, rhs) = worst_slack.ok_or_else(|| Error::Degenerate("empty pool".into()))?;
            report.inequalities.push(Inequality::ge(
                format!("worst pool word: E_{k1}(x) >= rho_r(T_{k2}^{k1}) * E_{k2}(x)"),
                big(lhs),
                big(rhs),
            ));
            if let (Some(a), Some(b)) = (min1, min2) {
                report.inequalities.push(Inequality::ge(
                    format!("pool minima: min E_{k1}/delta >= min E_{k2}/delta * rho_r(T_{k2}^{k1})"),
                    big(a),
                    big(b * sub),
                ));
            }
            report.note("pool_size", pool.len());
            report.note("pool_exact", exact);
        }
    }
    report.note("rho_r_inner", crate::rational::format_frac(&sub));
    Ok(report)
}

/// The line test on `C^m` against the line test on `C^2`, and the
/// hyperplane bound `rho_r(T_k^(k-1), C^k) >= delta^k / 12` for
/// `k = 2..=m`, all on exact values.
pub fn check_robust_tm1(code: &LinearCode, m: usize, instance: &str) -> Result<CheckReport> {
    if m < 2 {
        return Err(Error::InvalidArgument("need m >= 2".into()));
    }
    let delta = BigFrac::new(BigInt::from(code.min_distance_exhaustive()?), BigInt::from(code.length()));
    let family = CodeFamily::uniform(code, m)?;
    let plane = CodeFamily::uniform(code, 2)?;
    let r_m = rho_r_exact(&line_test(&family)?, &family)?.value;
    let r_2 = rho_r_exact(&line_test(&plane)?, &plane)?.value;
    let mut report = CheckReport::new("robust-line-test", instance, Mode::Exact);
    report.inequalities.push(Inequality::ge(
        format!("rho_r(T_{m}^1) >= rho_r(T_2^1) * delta^M / 12^(m-2)"),
        big(r_m),
        big(r_2) * line_test_factor(m, delta.clone()),
    ));
    for k in 2..=m {
        let fam = CodeFamily::uniform(code, k)?;
        let r = rho_r_exact(&FlatTest::new(&fam.shape(), k - 1)?, &fam)?.value;
        report.inequalities.push(Inequality::ge(
            format!("rho_r(T_{k}^{}) >= delta^{k} / 12", k - 1),
            big(r),
            hyperplane_bound(k, delta.clone()),
        ));
    }
    report.note("rho_r_line_m", crate::rational::format_frac(&r_m));
    report.note("rho_r_line_2", crate::rational::format_frac(&r_2));
    Ok(report)
}

/// `rho_r(T_m^1, C^m) >= rho(C, ..., C)^(M+1) / (4 * 12^(m-2))` on exact values.
pub fn check_proposition(code: &LinearCode, m: usize, instance: &str) -> Result<CheckReport> {
    if m < 2 {
        return Err(Error::InvalidArgument("need m >= 2".into()));
    }
    let family = CodeFamily::uniform(code, m)?;
    let rho = rho_exact(&family)?.value;
    let r = rho_r_exact(&line_test(&family)?, &family)?.value;
    let mut report = CheckReport::new("expansion-to-robustness", instance, Mode::Exact);
    report.inequalities.push(Inequality::ge(
        format!("rho_r(T_{m}^1) >= rho^(M+1) / (4 * 12^(m-2))"),
        big(r),
        alpha_prop(m, big(rho)),
    ));
    report.note("rho", crate::rational::format_frac(&rho));
    report.note("rho_r", crate::rational::format_frac(&r));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf_poly::Field;

    fn rep2() -> LinearCode {
        LinearCode::repetition(&Field::new(1).unwrap(), 2).unwrap()
    }

    #[test]
    fn lemma_holds_on_rep2() {
        for m in [2, 3] {
            let fam = CodeFamily::uniform(&rep2(), m).unwrap();
            let r = check_lemma_robust_agreement(&fam, "rep2").unwrap();
            assert!(r.holds(), "{:?}", r.violations().collect::<Vec<_>>());
        }
    }

    #[test]
    fn composition_rejects_bad_dimensions() {
        let fam = CodeFamily::uniform(&rep2(), 3).unwrap();
        for (k1, k2) in [(1, 1), (2, 1), (1, 3), (0, 2)] {
            assert!(check_composition(&fam, k1, k2, CompositionMode::Exact, "").is_err());
        }
    }

    #[test]
    fn composition_exact_and_sampled_on_rep2() {
        let fam = CodeFamily::uniform(&rep2(), 3).unwrap();
        assert!(check_composition(&fam, 1, 2, CompositionMode::Exact, "").unwrap().holds());
        let s = check_composition(&fam, 1, 2, CompositionMode::Sampled { samples: 30, seed: 1 }, "").unwrap();
        assert!(s.holds());
        assert_eq!(s.mode, Mode::Sampled);
    }

    #[test]
    fn line_test_and_proposition_on_rep2() {
        assert!(check_robust_tm1(&rep2(), 3, "").unwrap().holds());
        assert!(check_proposition(&rep2(), 3, "").unwrap().holds());
    }

    #[test]
    fn exact_report_is_a_point() {
        let r = TestReport::exact("rho_r", "x", frac(1, 3));
        assert!(r.is_point());
        assert!(!TestReport::upper_bound("rho_r", "x", Mode::Sampled, frac(1, 3)).is_point());
    }
}
