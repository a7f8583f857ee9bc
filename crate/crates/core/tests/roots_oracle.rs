//! `poly_from_roots` against an independent route: expand the product in
//! the monomial basis, then convert with `b_j = sum_{i<=j} C(j,i)/C(n,i) a_i`.

use bernstein_fp::experiments::{poly_f, poly_g};
use bernstein_fp::rational::{int, pow2, ratio, Rational};
use bernstein_fp::{binomial, poly_from_roots, RationalPoly};
use num_traits::Zero;

fn monomial_product(roots: &[Rational]) -> Vec<Rational> {
    let mut a = vec![int(1)];
    for r in roots {
        // (a_0 + a_1 s + ...) * (s - r)
        let mut next = vec![Rational::zero(); a.len() + 1];
        for (i, c) in a.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * r;
        }
        a = next;
    }
    a
}

fn monomial_to_bernstein(a: &[Rational]) -> RationalPoly {
    let n = a.len() as u64 - 1;
    let b = (0..=n)
        .map(|j| {
            (0..=j).fold(Rational::zero(), |acc, i| {
                let w = Rational::new(binomial(j, i).unwrap(), binomial(n, i).unwrap());
                acc + w * &a[i as usize]
            })
        })
        .collect();
    RationalPoly::new(b).unwrap()
}

#[test]
fn f_matches_monomial_route() {
    let roots: Vec<Rational> = (1..=20).map(|j| ratio(j, 20)).collect();
    assert_eq!(poly_f(), monomial_to_bernstein(&monomial_product(&roots)));
}

#[test]
fn g_matches_monomial_route() {
    let roots: Vec<Rational> = (1..=20).map(|j| pow2(1 - j)).collect();
    assert_eq!(poly_g(), monomial_to_bernstein(&monomial_product(&roots)));
}

#[test]
fn mixed_roots_match() {
    let roots = vec![ratio(-3, 7), int(2), ratio(1, 2), ratio(1, 2), ratio(5, 3)];
    assert_eq!(poly_from_roots(&roots), monomial_to_bernstein(&monomial_product(&roots)));
}
