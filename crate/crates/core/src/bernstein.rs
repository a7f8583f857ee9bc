//! Bernstein-form polynomials in binary64 and in exact rationals.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Largest `n` accepted by [`binomial`].
pub const MAX_BINOMIAL_N: u64 = 10_000;

/// `p(s) = sum_j coeffs[j] * C(n, j) (1 - s)^(n - j) s^j` with binary64
/// coefficients. Always at least one coefficient, all finite.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPoly {
    coeffs: Vec<f64>,
}

impl BernsteinPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial needs at least one coefficient".into()));
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::Domain(format!("non-finite coefficient {bad}")));
        }
        Ok(BernsteinPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The exact rational polynomial with the same coefficients.
    pub fn to_rational(&self) -> RationalPoly {
        RationalPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| rational::from_f64(c).expect("finite by construction"))
                .collect(),
        }
    }
}

/// Bernstein coefficients held exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Domain("polynomial needs at least one coefficient".into()));
        }
        Ok(RationalPoly { coeffs })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Scaled coefficients `C(n, j) b_j`.
    pub fn scaled_coeffs(&self) -> Vec<Rational> {
        let n = self.degree() as u64;
        binomial_row(n)
            .into_iter()
            .zip(&self.coeffs)
            .map(|(c, b)| Rational::from_integer(c) * b)
            .collect()
    }

    /// `alpha * self + other`, for equal degrees.
    pub fn axpy(&self, alpha: &Rational, other: &RationalPoly) -> Result<RationalPoly> {
        if self.degree() != other.degree() {
            return Err(Error::Domain("degree mismatch".into()));
        }
        Ok(RationalPoly {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| alpha * a + b).collect(),
        })
    }
}

/// Exact `C(n, k)` for `0 <= k <= n <= 10^4`.
pub fn binomial(n: u64, k: u64) -> Result<BigInt> {
    if n > MAX_BINOMIAL_N || k > n {
        return Err(Error::Domain(format!("binomial({n}, {k}) out of range")));
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// `C(n, 0), ..., C(n, n)`.
pub(crate) fn binomial_row(n: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// Exact Bernstein coefficients of `prod_j (s - roots[j])`.
///
/// Each linear factor `s - r` has degree-1 coefficients `(-r, 1 - r)`; the
/// product of a degree-`m` form `a` with a degree-1 form `d` has
/// `c_k = sum_j C(m, j) C(1, k - j) / C(m + 1, k) * a_j * d_(k - j)`.
/// An empty root list gives the constant 1.
pub fn poly_from_roots(roots: &[Rational]) -> RationalPoly {
    let mut acc = vec![Rational::one()];
    for r in roots {
        let d = [-r.clone(), Rational::one() - r];
        let m = acc.len() - 1;
        let m1 = m as i64 + 1;
        let mut next = Vec::with_capacity(m + 2);
        for k in 0..=m + 1 {
            let mut c = Rational::zero();
            // j = k pairs with d_0 (C(1,0) = 1), j = k - 1 with d_1 (C(1,1) = 1)
            if k <= m {
                // C(m, k) / C(m+1, k) = (m + 1 - k) / (m + 1)
                c += &acc[k] * &d[0] * rational::ratio(m1 - k as i64, m1);
            }
            if k >= 1 {
                // C(m, k-1) / C(m+1, k) = k / (m + 1)
                c += &acc[k - 1] * &d[1] * rational::ratio(k as i64, m1);
            }
            next.push(c);
        }
        acc = next;
    }
    RationalPoly { coeffs: acc }
}

/// Coefficients `b0 * (-2^t)^j` of `b0 [(1 - s) - 2^t s]^n`.
pub fn family_rational(b0: &Rational, t: i32, n: usize) -> Result<RationalPoly> {
    if n == 0 {
        return Err(Error::Domain("family degree must be at least 1".into()));
    }
    let ratio = -rational::pow2(t);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut c = b0.clone();
    for _ in 0..=n {
        coeffs.push(c.clone());
        c *= &ratio;
    }
    Ok(RationalPoly { coeffs })
}

/// Round each coefficient to the nearest binary64. The flag reports whether
/// every coefficient was already representable.
pub fn round_coeffs(p: &RationalPoly) -> Result<(BernsteinPoly, bool)> {
    let mut exact = true;
    let mut out = Vec::with_capacity(p.coeffs.len());
    for (j, q) in p.coeffs.iter().enumerate() {
        let x = rational::to_f64_nearest(q);
        if !x.is_finite() {
            return Err(Error::Range(format!("coefficient {j} overflows binary64")));
        }
        exact &= rational::from_f64(x)? == *q;
        out.push(x);
    }
    Ok((BernsteinPoly { coeffs: out }, exact))
}
