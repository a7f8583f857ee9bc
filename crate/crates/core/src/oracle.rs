//! Exact evaluation in rational arithmetic: `p(s)`, `p~(s)`, the
//! condition number `p~(s) / |p(s)|`, and forward errors of computed
//! values.

use num_traits::{One, Signed, Zero};

use crate::bernstein::{binomial_row, RationalPoly};
use crate::rational::{self, Magnitude, Rational};
use crate::{Error, Result};

/// `sum_j C(n, j) (1 - s)^(n - j) s^j * w(b_j)`.
fn bernstein_sum(p: &RationalPoly, s: &Rational, weight: impl Fn(&Rational) -> Rational) -> Rational {
    let n = p.degree();
    let r = Rational::one() - s;
    let mut s_pow = Vec::with_capacity(n + 1);
    let mut r_pow = Vec::with_capacity(n + 1);
    let (mut sp, mut rp) = (Rational::one(), Rational::one());
    for _ in 0..=n {
        s_pow.push(sp.clone());
        r_pow.push(rp.clone());
        sp *= s;
        rp *= &r;
    }
    binomial_row(n as u64)
        .into_iter()
        .zip(p.coeffs())
        .enumerate()
        .map(|(j, (c, b))| Rational::from_integer(c) * weight(b) * &r_pow[n - j] * &s_pow[j])
        .fold(Rational::zero(), |acc, term| acc + term)
}

fn check_unit_interval(s: &Rational) -> Result<()> {
    if s.is_negative() || *s > Rational::one() {
        return Err(Error::Domain(format!("s = {s} is outside [0, 1]")));
    }
    Ok(())
}

/// Exact `p(s)`. Defined for every rational `s`.
pub fn eval_exact(p: &RationalPoly, s: &Rational) -> Rational {
    bernstein_sum(p, s, Rational::clone)
}

/// Exact `p~(s) = sum |b_j| B_{j,n}(s)` for `s` in `[0, 1]`.
pub fn eval_abs_exact(p: &RationalPoly, s: &Rational) -> Result<Rational> {
    check_unit_interval(s)?;
    Ok(bernstein_sum(p, s, Rational::abs))
}

/// `p~(s) / |p(s)|`: infinite at a root of `p` where `p~` is nonzero, and
/// 1 when both vanish.
pub fn condition_number(p: &RationalPoly, s: &Rational) -> Result<Magnitude> {
    let tilde = eval_abs_exact(p, s)?;
    let value = eval_exact(p, s);
    Ok(quotient(&tilde, &value.abs()))
}

/// `num / den` for `num, den >= 0` with the `x / 0 = inf`, `0 / 0 = 1`
/// conventions.
pub(crate) fn quotient(num: &Rational, den: &Rational) -> Magnitude {
    match (num.is_zero(), den.is_zero()) {
        (true, true) => Magnitude::Finite(Rational::one()),
        (false, true) => Magnitude::Infinite,
        _ => Magnitude::Finite(num / den),
    }
}

/// Forward error of a computed binary64 value against an exact one.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub exact_value: Rational,
    pub computed_value: f64,
    /// `|exact - computed|`, exactly.
    pub abs_error: Rational,
    /// `abs_error / |exact|`; 0 when both are zero, infinite when only the
    /// exact value is zero.
    pub rel_error: Magnitude,
}

pub fn relative_error(exact: &Rational, computed: f64) -> Result<ErrorReport> {
    let c = rational::from_f64(computed)?;
    let abs_error = (exact - &c).abs();
    let rel_error = match (exact.is_zero(), abs_error.is_zero()) {
        (_, true) => Magnitude::Finite(Rational::zero()),
        (true, false) => Magnitude::Infinite,
        (false, false) => Magnitude::Finite(&abs_error / exact.abs()),
    };
    Ok(ErrorReport { exact_value: exact.clone(), computed_value: computed, abs_error, rel_error })
}
