//! The family `p(s) = b0 [(1 - s) - 2^t s]^n` and the a priori error
//! bounds.
//!
//! Family coefficients satisfy `b_(j+1) = -2^t b_j` exactly in binary64,
//! and because multiplying by a power of two commutes with rounding, every
//! computed de Casteljau intermediate keeps the same ratio. The whole
//! triangle collapses to one column and the relative error obeys
//! `(1 + |phi| gamma_3)^n - 1`, where
//! `phi = ((1 - s) + 2^t s) / ((1 - s) - 2^t s)` and `cond = |phi|^n`.
//! Compare the general de Casteljau bound `gamma_3n * cond`.
//!
//! Bounds returned as `f64` are rounded upward; the `*_exact` variants
//! return the rational value computed from the (already conservative)
//! binary64 `gamma` values.

use num_traits::{One, Signed, Zero};

use crate::bernstein::{BernsteinPoly, RationalPoly};
use crate::evaluators::EvalTriangle;
use crate::fp_model::{self, gamma, neg_pow2, Check};
use crate::oracle::condition_number;
use crate::rational::{self, Magnitude, Rational};
use crate::{Error, Result};

/// Largest degree for which every `C(n, k)` is a binary64 integer.
pub const VS_MAX_EXACT_DEGREE: usize = 56;

/// `b0`, `t`, `n` of a family member whose coefficients are all finite,
/// nonzero and normal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub b0: f64,
    pub t: i32,
    pub n: usize,
}

impl FamilySpec {
    pub fn new(b0: f64, t: i32, n: usize) -> Result<Self> {
        let spec = FamilySpec { b0, t, n };
        spec.coefficients()?;
        Ok(spec)
    }

    /// `b0 (-2^t)^j` for `j = 0..=n`, each product exact.
    pub fn coefficients(&self) -> Result<Vec<f64>> {
        if self.n == 0 {
            return Err(Error::Domain("family degree must be at least 1".into()));
        }
        if !self.b0.is_normal() {
            return Err(Error::Domain(format!("b0 = {} must be a nonzero normal number", self.b0)));
        }
        let scale = neg_pow2(self.t)?;
        let mut out = Vec::with_capacity(self.n + 1);
        let mut c = self.b0;
        for j in 0..=self.n {
            if !c.is_normal() {
                return Err(Error::Range(format!("coefficient {j} leaves the normal range")));
            }
            out.push(c);
            c *= scale;
        }
        Ok(out)
    }

    pub fn poly(&self) -> Result<BernsteinPoly> {
        BernsteinPoly::new(self.coefficients()?)
    }

    /// The family root `1 / (1 + 2^t)`.
    pub fn root(&self) -> Rational {
        Rational::one() / (Rational::one() + rational::pow2(self.t))
    }
}

/// Recognise a family member by bit-exact ratios `b_(j+1) = -2^t b_j`.
pub fn detect_family(p: &BernsteinPoly) -> Option<FamilySpec> {
    let c = p.coeffs();
    if c.len() < 2 || c.iter().any(|&x| x == 0.0 || !x.is_normal()) {
        return None;
    }
    let q = c[1] / c[0];
    // -2^t: sign set, fraction bits clear, normal exponent
    let bits = q.to_bits();
    if !q.is_normal() || q > 0.0 || bits & ((1u64 << 52) - 1) != 0 {
        return None;
    }
    let t = ((bits >> 52) & 0x7ff) as i32 - 1023;
    let scale = neg_pow2(t).ok()?;
    let all = c.windows(2).all(|w| {
        let scaled = scale * w[0];
        scaled.is_normal() && scaled.to_bits() == w[1].to_bits()
    });
    all.then_some(FamilySpec { b0: c[0], t, n: p.degree() })
}

/// Exact `phi = ((1 - s) + 2^t s) / ((1 - s) - 2^t s)`.
pub fn phi(t: i32, s: &Rational) -> Result<Rational> {
    let r = Rational::one() - s;
    let scaled = rational::pow2(t) * s;
    let den = &r - &scaled;
    if den.is_zero() {
        return Err(Error::Pole(s.to_string()));
    }
    Ok((r + scaled) / den)
}

fn gamma_q(k: u64) -> Result<Rational> {
    rational::from_f64(gamma(k)?)
}

/// `(1 + |phi| gamma_3)^n - 1` in exact arithmetic.
pub fn improved_bound_exact(n: usize, t: i32, s: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::Domain("degree must be at least 1".into()));
    }
    let base = Rational::one() + phi(t, s)?.abs() * gamma_q(3)?;
    Ok(num_traits::pow(base, n) - Rational::one())
}

/// Relative error bound for de Casteljau on a family member, rounded up.
pub fn improved_bound(n: usize, t: i32, s: &Rational) -> Result<f64> {
    Ok(rational::to_f64_up(&improved_bound_exact(n, t, s)?))
}

/// `gamma_3n |phi|^n` in exact arithmetic.
pub fn naive_bound_exact(n: usize, t: i32, s: &Rational) -> Result<Rational> {
    let phi_abs = phi(t, s)?.abs();
    Ok(gamma_q(3 * n as u64)? * num_traits::pow(phi_abs, n))
}

/// The general de Casteljau bound specialised to the family, rounded up.
pub fn naive_bound(n: usize, t: i32, s: &Rational) -> Result<f64> {
    Ok(rational::to_f64_up(&naive_bound_exact(n, t, s)?))
}

/// Relative bound `gamma_3n * cond(p, s)` for de Casteljau, `s` in `[0, 1]`.
/// Infinite at roots of `p`.
pub fn decasteljau_bound(p: &RationalPoly, s: &Rational) -> Result<Magnitude> {
    let n = p.degree() as u64;
    if n == 0 {
        // no arithmetic is performed
        return Ok(Magnitude::Finite(Rational::zero()));
    }
    Ok(condition_number(p, s)?.scale(&gamma_q(3 * n)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VsBound {
    pub bound: Magnitude,
    /// False when `n > 56`: some binomial was rounded and the bound's
    /// premise fails.
    pub valid: bool,
}

/// Relative bound for VS: `gamma_6n * cond` for `s < 1/2`, `gamma_5n * cond`
/// for `s >= 1/2`.
pub fn vs_bound(p: &RationalPoly, s: &Rational) -> Result<VsBound> {
    let n = p.degree();
    let valid = n <= VS_MAX_EXACT_DEGREE;
    if n == 0 {
        return Ok(VsBound { bound: Magnitude::Finite(Rational::zero()), valid });
    }
    let factor = if *s >= rational::ratio(1, 2) { 5 } else { 6 };
    let g = gamma_q(factor * n as u64)?;
    Ok(VsBound { bound: condition_number(p, s)?.scale(&g), valid })
}

/// Verify `level(k)[j + 1] == -2^t * level(k)[j]` on every level of a
/// triangle computed from `spec`'s coefficients.
///
/// [`Check::Skipped`] when the triangle did not come from `spec` or when
/// any product, sum or scaled value overflowed or lost bits to underflow.
/// Signed zeros compare equal: `x + (-x)` is `+0` while `-2^t * 0` is `-0`.
pub fn check_triangle_ratio(triangle: &EvalTriangle, spec: &FamilySpec) -> Check {
    let Ok(coeffs) = spec.coefficients() else {
        return Check::Skipped;
    };
    let n = triangle.degree();
    let top = triangle.level(n);
    if n != spec.n || top.iter().zip(&coeffs).any(|(a, b)| a.to_bits() != b.to_bits()) {
        return Check::Skipped;
    }
    let scale = neg_pow2(spec.t).expect("validated by coefficients()");
    let (s, r) = (triangle.s(), triangle.r_hat());

    for k in 0..n {
        let above = triangle.level(k + 1);
        for (j, &b) in triangle.level(k).iter().enumerate() {
            let left = r * above[j];
            let right = s * above[j + 1];
            if !fp_model::product_is_clean(r, above[j], left)
                || !fp_model::product_is_clean(s, above[j + 1], right)
                || !fp_model::value_is_clean(b)
            {
                return Check::Skipped;
            }
        }
    }
    for k in 0..=n {
        for w in triangle.level(k).windows(2) {
            let scaled = scale * w[0];
            if !fp_model::product_is_clean(scale, w[0], scaled) {
                return Check::Skipped;
            }
            let same = if scaled == 0.0 && w[1] == 0.0 {
                true
            } else {
                scaled.to_bits() == w[1].to_bits()
            };
            if !same {
                return Check::Fails;
            }
        }
    }
    Check::Holds
}
