//! Exact rational helpers for the oracle path.
//!
//! [`Rational`] is a reduced `BigRational` with a positive denominator.
//! The functions here move values between binary64 and rationals without
//! any intermediate floating-point rounding: `from_f64` is exact, and the
//! `to_f64_*` family performs exactly one correctly rounded conversion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = num_rational::BigRational;

/// A rational quantity that may be infinite (division of a nonzero value
/// by an exact zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Magnitude {
    Finite(Rational),
    Infinite,
}

impl Magnitude {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Magnitude::Infinite)
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Magnitude::Finite(q) => Some(q),
            Magnitude::Infinite => None,
        }
    }

    /// `self <= other`, with `Infinite` as the top element.
    pub fn le(&self, other: &Magnitude) -> bool {
        match (self, other) {
            (_, Magnitude::Infinite) => true,
            (Magnitude::Infinite, Magnitude::Finite(_)) => false,
            (Magnitude::Finite(a), Magnitude::Finite(b)) => a <= b,
        }
    }

    /// Multiply by a nonnegative finite factor; `0 * inf` is taken as `inf`.
    pub fn scale(&self, factor: &Rational) -> Magnitude {
        match self {
            Magnitude::Finite(q) => Magnitude::Finite(q * factor),
            Magnitude::Infinite => Magnitude::Infinite,
        }
    }

    /// Nearest binary64, `+inf` for the infinite flag.
    pub fn to_f64_nearest(&self) -> f64 {
        match self {
            Magnitude::Finite(q) => to_f64_nearest(q),
            Magnitude::Infinite => f64::INFINITY,
        }
    }

    /// Smallest binary64 not below the value, `+inf` for the infinite flag.
    pub fn to_f64_up(&self) -> f64 {
        match self {
            Magnitude::Finite(q) => to_f64_up(q),
            Magnitude::Infinite => f64::INFINITY,
        }
    }
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Exactly `2^t`.
pub fn pow2(t: i32) -> Rational {
    let p = BigInt::one() << t.unsigned_abs();
    if t >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// The exact rational value of a finite binary64.
pub fn from_f64(x: f64) -> Result<Rational, Error> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite value {x}")));
    }
    if x == 0.0 {
        return Ok(Rational::zero());
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let biased = ((bits >> 52) & 0x7ff) as i32;
    let fraction = bits & ((1u64 << 52) - 1);
    let (mantissa, exponent) = if biased == 0 {
        (fraction, -1074)
    } else {
        (fraction | (1u64 << 52), biased - 1075)
    };
    let m = Rational::from_integer(BigInt::from(mantissa)) * pow2(exponent);
    Ok(if negative { -m } else { m })
}

/// `floor(log2(|q|))` for nonzero `q`.
fn floor_log2(q: &Rational) -> i64 {
    let num = q.numer().abs();
    let den = q.denom().clone();
    let mut e = num.bits() as i64 - den.bits() as i64;
    // 2^e <= num/den < 2^(e+1) after at most one correction.
    let (lhs, rhs) = if e >= 0 {
        (num.clone(), &den << e as u64)
    } else {
        (&num << (-e) as u64, den.clone())
    };
    if lhs < rhs {
        e -= 1;
    }
    e
}

/// Round a rational to the nearest binary64, ties to even. Magnitudes
/// beyond the finite range become infinities.
pub fn to_f64_nearest(q: &Rational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let negative = q.is_negative();
    let a = q.abs();
    // Quantum of the target binade: ulp = 2^(e - 52), floored at 2^-1074.
    let e = floor_log2(&a).max(-1022);
    if e > 1023 {
        return if negative { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    let shift = 52 - e;
    let scaled = if shift >= 0 {
        a * Rational::from_integer(BigInt::one() << shift as u64)
    } else {
        a / Rational::from_integer(BigInt::one() << (-shift) as u64)
    };
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let twice_rem: BigInt = rem << 1;
    let mut m = quot;
    match twice_rem.cmp(scaled.denom()) {
        std::cmp::Ordering::Greater => m += 1,
        std::cmp::Ordering::Equal if m.is_odd() => m += 1,
        _ => {}
    }
    let m = m.to_u64().expect("mantissa fits in 54 bits");
    // m * 2^(e-52) with m <= 2^53; the product below is exact.
    let magnitude = if m >= 1u64 << 53 && e == 1023 {
        f64::INFINITY
    } else {
        (m as f64) * pow2_f64((e - 52) as i32)
    };
    if negative {
        -magnitude
    } else {
        magnitude
    }
}

/// Exact `2^k` as binary64 for `-1074 <= k <= 1023`, built from two normal
/// factors so the subnormal range is reachable without rounding.
fn pow2_f64(k: i32) -> f64 {
    if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        let hi = f64::from_bits(((k + 52 + 1023) as u64) << 52);
        hi * f64::from_bits((1023u64 - 52) << 52)
    }
}

/// Smallest binary64 `>= q`.
pub fn to_f64_up(q: &Rational) -> f64 {
    let x = to_f64_nearest(q);
    if x.is_infinite() {
        return x;
    }
    let back = from_f64(x).expect("finite");
    if &back < q {
        x.next_up()
    } else {
        x
    }
}

/// Whether `q` is exactly a binary64 value.
pub fn is_representable(q: &Rational) -> bool {
    let x = to_f64_nearest(q);
    x.is_finite() && from_f64(x).map(|b| &b == q).unwrap_or(false)
}

/// Nearest binary64 to an integer (one rounding).
pub fn bigint_to_f64(n: &BigInt) -> f64 {
    to_f64_nearest(&Rational::from_integer(n.clone()))
}
