//! Closed-form constants of the robustness and agreement bounds, generic over the scalar so the
//! same formulas evaluate exactly (`BigRational`) or approximately (`f64`).

use num_traits::{pow, Num};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ClosedFormConstants<T> {
    pub m: usize,
    /// `M = (m - 2)(m + 3) / 2`.
    pub big_m: usize,
    /// `alpha_r = (2/3)^M / (72 * 12^(m-2))`.
    pub alpha_r: T,
    /// `alpha_a = (2/3) alpha_r / (1 + alpha_r)`.
    pub alpha_a: T,
}

fn int<T: Num + Clone>(n: usize) -> T {
    (0..n).fold(T::zero(), |acc, _| acc + T::one())
}

pub fn big_m(m: usize) -> usize {
    (m.saturating_sub(2)) * (m + 3) / 2
}

/// `12^(m-2)`.
fn twelve_pow<T: Num + Clone>(m: usize) -> T {
    pow(int::<T>(12), m - 2)
}

pub fn closed_form_constants<T: Num + Clone>(m: usize) -> Result<ClosedFormConstants<T>> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("the constants need m >= 3, got {m}")));
    }
    let mm = big_m(m);
    let two_thirds = int::<T>(2) / int::<T>(3);
    let alpha_r = pow(two_thirds.clone(), mm) / (int::<T>(72) * twelve_pow::<T>(m));
    let alpha_a = two_thirds * alpha_r.clone() / (T::one() + alpha_r.clone());
    Ok(ClosedFormConstants { m, big_m: mm, alpha_r, alpha_a })
}

impl<T: Num + Clone> ClosedFormConstants<T> {
    /// `alpha(rho) = rho^(M + 1) / (4 * 12^(m-2))`.
    pub fn alpha(&self, rho: T) -> T {
        alpha_prop(self.m, rho)
    }
}

/// `rho^(M + 1) / (4 * 12^(m-2))` for `m >= 2`.
pub fn alpha_prop<T: Num + Clone>(m: usize, rho: T) -> T {
    pow(rho, big_m(m) + 1) / (int::<T>(4) * twelve_pow::<T>(m))
}

/// `delta^M / 12^(m-2)`, the factor relating the line test on `m` axes to
/// the line test on two.
pub fn line_test_factor<T: Num + Clone>(m: usize, delta: T) -> T {
    pow(delta, big_m(m)) / twelve_pow::<T>(m)
}

/// `delta^k / 12`, the hyperplane-test robustness bound on `k` axes.
pub fn hyperplane_bound<T: Num + Clone>(k: usize, delta: T) -> T {
    pow(delta, k) / int::<T>(12)
}
