//! Seeded randomized invariant suites, shared by the acceptance tests and
//! the `check` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bernstein::poly_from_roots;
use crate::evaluators::decasteljau;
use crate::family::{check_triangle_ratio, FamilySpec};
use crate::fp_model::{exact_scaling_holds, Check};
use crate::oracle::eval_exact;
use crate::rational::{self, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub checked: u64,
    pub skipped: u64,
    pub failures: u64,
}

impl SuiteOutcome {
    fn new(name: &'static str) -> Self {
        SuiteOutcome { name, ..Default::default() }
    }

    fn record(&mut self, c: Check) {
        match c {
            Check::Holds => self.checked += 1,
            Check::Fails => {
                self.checked += 1;
                self.failures += 1;
            }
            Check::Skipped => self.skipped += 1,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

/// `sign * m * 2^e` with `m` uniform in `[1, 2)`.
fn random_normal(rng: &mut ChaCha8Rng, exp_range: std::ops::RangeInclusive<i32>) -> f64 {
    let m: f64 = rng.gen_range(1.0..2.0);
    let e = rng.gen_range(exp_range);
    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
    // m * 2^e computed as two exact scalings to stay clear of overflow in 2^e
    let half = e / 2;
    sign * m * 2f64.powi(half) * 2f64.powi(e - half)
}

/// Exact power-of-two scaling on random normal operands, `t` in `[-30, 30]`.
pub fn scaling_suite(cases: u64, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("exact power-of-two scaling");
    for _ in 0..cases {
        let a = random_normal(&mut rng, -300..=300);
        let b = random_normal(&mut rng, -300..=300);
        let t = rng.gen_range(-30..=30);
        out.record(exact_scaling_holds(a, b, t));
    }
    out
}

/// Family triangles keep the ratio `-2^t`: `b0` normal with exponent in
/// `[-1000, 1000]`, `t` in `[-8, 8]`, `n` in `[1, 20]`, `s` uniform in `[0, 1)`.
pub fn triangle_ratio_suite(cases: u64, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("computed triangle keeps ratio -2^t");
    for _ in 0..cases {
        let b0 = random_normal(&mut rng, -1000..=1000);
        let t = rng.gen_range(-8..=8);
        let n = rng.gen_range(1..=20);
        let s: f64 = rng.gen();
        let Ok(spec) = FamilySpec::new(b0, t, n) else {
            out.skipped += 1;
            continue;
        };
        let p = spec.poly().expect("validated");
        let (_, tri) = decasteljau(&p, s).expect("finite inputs");
        out.record(check_triangle_ratio(&tri, &spec));
    }
    out
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    rational::ratio(rng.gen_range(-60..=60), rng.gen_range(1..=60))
}

/// `eval_exact(poly_from_roots(R), s) == prod (s - r)` for random rational
/// roots (up to 10) and points.
pub fn oracle_cross_suite(cases: u64, seed: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("Bernstein oracle vs direct product");
    for _ in 0..cases {
        let n = rng.gen_range(0..=10);
        let roots: Vec<Rational> = (0..n).map(|_| random_rational(&mut rng)).collect();
        let s = if rng.gen_bool(0.2) {
            // hit a root now and then
            roots.first().cloned().unwrap_or_else(|| random_rational(&mut rng))
        } else {
            random_rational(&mut rng)
        };
        let p = poly_from_roots(&roots);
        let direct = roots.iter().fold(rational::int(1), |acc, r| acc * (&s - r));
        out.record(Check::from_bool(eval_exact(&p, &s) == direct && p.degree() == n));
    }
    out
}
