//! Binary64 evaluation of Bernstein-form polynomials.
//!
//! Each arithmetic operation is rounded individually. Rust never contracts
//! `a * b + c` into a fused multiply-add, and neither routine calls
//! `mul_add`, so the computed bits are exactly those of the textbook
//! operation sequence.

use crate::bernstein::{binomial_row, BernsteinPoly};
use crate::rational;
use crate::{Error, Result};

/// All intermediates of a de Casteljau evaluation.
///
/// `level(k)` holds `b_j^(k)` for `j = 0..=k`; `level(n)` is the input and
/// `level(0)` is the single result.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalTriangle {
    s: f64,
    r_hat: f64,
    // levels[k], k = 0..=n
    levels: Vec<Vec<f64>>,
}

impl EvalTriangle {
    pub fn degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &[f64] {
        &self.levels[k]
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `1 - s` as computed (one rounding), shared by every level.
    pub fn r_hat(&self) -> f64 {
        self.r_hat
    }

    pub fn result(&self) -> f64 {
        self.levels[0][0]
    }

    #[cfg(test)]
    pub(crate) fn levels_mut(&mut self) -> &mut [Vec<f64>] {
        &mut self.levels
    }
}

fn check_inputs(p: &BernsteinPoly, s: f64) -> Result<()> {
    if s.is_nan() || !s.is_finite() {
        return Err(Error::Domain(format!("evaluation point {s} is not finite")));
    }
    debug_assert!(p.coeffs().iter().all(|c| c.is_finite()));
    Ok(())
}

/// de Casteljau evaluation, returning the value and the full triangle.
///
/// `r = 1 - s` is rounded once and reused; every entry is
/// `(r * b_j^(k+1)) + (s * b_(j+1)^(k+1))` with three roundings.
pub fn decasteljau(p: &BernsteinPoly, s: f64) -> Result<(f64, EvalTriangle)> {
    check_inputs(p, s)?;
    let n = p.degree();
    let r_hat = 1.0 - s;
    let mut levels = vec![Vec::new(); n + 1];
    levels[n] = p.coeffs().to_vec();
    for k in (0..n).rev() {
        let above = &levels[k + 1];
        let row: Vec<f64> = (0..=k).map(|j| r_hat * above[j] + s * above[j + 1]).collect();
        levels[k] = row;
    }
    let result = levels[0][0];
    Ok((result, EvalTriangle { s, r_hat, levels }))
}

/// In-place de Casteljau returning only the value. Bit-identical to
/// [`decasteljau`].
pub fn decasteljau_value(p: &BernsteinPoly, s: f64) -> Result<f64> {
    check_inputs(p, s)?;
    let r_hat = 1.0 - s;
    let mut b = p.coeffs().to_vec();
    for k in (0..p.degree()).rev() {
        for j in 0..=k {
            b[j] = r_hat * b[j] + s * b[j + 1];
        }
    }
    Ok(b[0])
}

/// VS evaluation: Horner's rule on the scaled coefficients in
/// `sigma = s / (1 - s)` (or `(1 - s) / s` with reversed coefficients when
/// `s >= 1/2`), then multiplication by `m^n` with `m = 1 - s` (or `s`).
///
/// Binomials are converted to binary64 with one rounding each; for
/// `n > 56` that rounding is real and the usual error bound no longer
/// applies (see [`crate::family::vs_bound`]).
pub fn vs(p: &BernsteinPoly, s: f64) -> Result<f64> {
    check_inputs(p, s)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("VS requires 0 <= s <= 1, got {s}")));
    }
    let n = p.degree();
    if n == 0 {
        return Ok(p.coeffs()[0]);
    }
    let r_hat = 1.0 - s;
    let (sigma, m, c): (f64, f64, Vec<f64>) = if s >= 0.5 {
        (r_hat / s, s, p.coeffs().iter().rev().copied().collect())
    } else {
        (s / r_hat, r_hat, p.coeffs().to_vec())
    };
    let binom: Vec<f64> = binomial_row(n as u64).iter().map(rational::bigint_to_f64).collect();

    let mut acc = c[n];
    for k in (0..n).rev() {
        acc = sigma * acc + binom[k] * c[k];
    }
    let mut power = m;
    for _ in 2..=n {
        power *= m;
    }
    Ok(power * acc)
}
