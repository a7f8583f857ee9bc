//! The standard floating-point model: unit roundoff, the `gamma_k`
//! accumulation bound, and exactness of scaling by `-2^t`.
//!
//! All arithmetic is IEEE-754 binary64 with round-to-nearest, ties-to-even.

use crate::Error;

/// Largest `k` accepted by [`gamma`].
pub const MAX_GAMMA_K: u64 = 1_000_000_000;

/// Unit roundoff `u = 2^-53` for binary64.
pub const fn unit_roundoff() -> f64 {
    f64::EPSILON / 2.0
}

/// Upper bound on `|theta_k|`, the relative perturbation produced by `k`
/// rounding factors `(1 + delta)^(+-1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaBound {
    pub k: u64,
    pub value: f64,
}

impl GammaBound {
    pub fn new(k: u64) -> Result<Self, Error> {
        Ok(GammaBound { k, value: gamma(k)? })
    }
}

/// `k u / (1 - k u)`, rounded so the result is never below the true value.
///
/// `k u` is exact and `1 - k u` is exact while `k u <= 1/2`, so the only
/// rounding is the division; stepping one ulp up covers it.
pub fn gamma(k: u64) -> Result<f64, Error> {
    if k > MAX_GAMMA_K {
        return Err(Error::Domain(format!("gamma({k}): k exceeds {MAX_GAMMA_K}")));
    }
    if k == 0 {
        return Ok(0.0);
    }
    let ku = k as f64 * unit_roundoff();
    let q = ku / (1.0 - ku);
    Ok(q.next_up())
}

/// `-2^t` as binary64. `t` must lie in the normal exponent range.
pub fn neg_pow2(t: i32) -> Result<f64, Error> {
    if !(-1022..=1023).contains(&t) {
        return Err(Error::Domain(format!("2^{t} is outside the normal range")));
    }
    Ok(-f64::from_bits(((t + 1023) as u64) << 52))
}

/// Nonzero and not subnormal, or an exact zero. Used to reject results
/// that lost bits to underflow.
fn normal_or_zero(x: f64) -> bool {
    x == 0.0 || x.is_normal()
}

/// Outcome of a check that only holds under a no-overflow/no-underflow
/// precondition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Holds,
    Fails,
    /// Precondition violated; the identity is not claimed.
    Skipped,
}

impl Check {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Check::Holds
        } else {
            Check::Fails
        }
    }
}

/// Test both identities bit-exactly:
/// `(-2^t a) * b == -2^t (a * b)` and `(-2^t a) + (-2^t b) == -2^t (a + b)`.
///
/// Every operand and every intermediate must be a normal number; otherwise
/// the result is [`Check::Skipped`].
pub fn exact_scaling_holds(a: f64, b: f64, t: i32) -> Check {
    let Ok(scale) = neg_pow2(t) else {
        return Check::Skipped;
    };
    let sa = scale * a;
    let sb = scale * b;
    let prod = a * b;
    let sum = a + b;
    let lhs_mul = sa * b;
    let rhs_mul = scale * prod;
    let lhs_add = sa + sb;
    let rhs_add = scale * sum;
    let all_normal = [a, b, sa, sb, prod, sum, lhs_mul, rhs_mul, lhs_add, rhs_add]
        .iter()
        .all(|x| x.is_normal());
    if !all_normal {
        return Check::Skipped;
    }
    Check::from_bool(
        lhs_mul.to_bits() == rhs_mul.to_bits() && lhs_add.to_bits() == rhs_add.to_bits(),
    )
}

/// `fl(a * b)` lost no information to underflow or overflow.
pub(crate) fn product_is_clean(a: f64, b: f64, p: f64) -> bool {
    p.is_finite() && normal_or_zero(p) && (p != 0.0 || a == 0.0 || b == 0.0)
}

pub(crate) fn value_is_clean(x: f64) -> bool {
    x.is_finite() && normal_or_zero(x)
}
