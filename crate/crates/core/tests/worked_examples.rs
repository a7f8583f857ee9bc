//! Named examples: single points from the experiments and bound formulas.

use bernstein_fp::experiments::{self, fig1_experiment, fig2_experiment, fig2_reports, fig3_experiment, Flag};
use bernstein_fp::family::{improved_bound_exact, naive_bound_exact};
use bernstein_fp::rational::{self, from_f64, Magnitude};
use bernstein_fp::{
    condition_number, decasteljau, detect_family, eval_exact, gamma, improved_bound, naive_bound, relative_error,
    round_coeffs, unit_roundoff, vs, vs_bound, FamilySpec,
};

#[test]
fn first_fig2_point_within_improved_bound() {
    let p = FamilySpec::new(1.0, 2, 5).unwrap().poly().unwrap();
    let s = 1.0 / 5.0 + 8.0 / (25.0 * 2.1);
    let (dc, _) = decasteljau(&p, s).unwrap();
    let se = from_f64(s).unwrap();
    let exact = eval_exact(&p.to_rational(), &se);
    let err = relative_error(&exact, dc).unwrap();
    let bound = improved_bound_exact(5, 2, &se).unwrap();
    assert!(err.rel_error.le(&Magnitude::Finite(bound)));
    // well conditioned: a few units of roundoff at most
    assert!(err.rel_error.to_f64_nearest() <= 16.0 * unit_roundoff());
}

#[test]
fn vs_on_h_at_048() {
    let h = round_coeffs(&experiments::poly_h()).unwrap().0;
    let s = 0.48;
    let se = from_f64(s).unwrap();
    let exact_poly = h.to_rational();
    let exact = eval_exact(&exact_poly, &se);
    let err = relative_error(&exact, vs(&h, s).unwrap()).unwrap().rel_error;
    let cond = condition_number(&exact_poly, &se).unwrap();
    let want = cond.scale(&from_f64(gamma(120).unwrap()).unwrap());
    assert_eq!(vs_bound(&exact_poly, &se).unwrap().bound, want);
    assert!(err.le(&want));
}

#[test]
fn h_is_detected_as_family_member() {
    let h = round_coeffs(&experiments::poly_h()).unwrap().0;
    let spec = detect_family(&h).unwrap();
    assert_eq!((spec.b0, spec.t, spec.n), (2f64.powi(-20), 0, 20));
}

#[test]
fn f_and_g_coefficients_round() {
    assert!(!round_coeffs(&experiments::poly_f()).unwrap().1);
    assert!(!round_coeffs(&experiments::poly_g()).unwrap().1);
    assert!(round_coeffs(&experiments::poly_h()).unwrap().1);
}

#[test]
fn fig2_rows() {
    let rows = fig2_experiment().unwrap();
    assert_eq!(rows.len(), 45);
    for r in &rows {
        assert!(r.err_dc <= r.bound_improved.unwrap());
        assert!(r.bound_improved.unwrap() <= r.bound_naive.unwrap());
        assert!(r.err_dc <= r.bound_dc);
        assert!(!r.flags.contains(&Flag::Violation));
    }
    // well conditioned start, ill conditioned but still useful end
    // e = 1: phi = -2.7, cond = 2.7^5
    assert!((rows[0].cond - 2.7f64.powi(5)).abs() < 1e-9 * rows[0].cond);
    assert!(rows[0].err_dc <= 64.0 * unit_roundoff());
    let last = &rows[44];
    assert!(last.cond > 1e70);
    assert!(last.err_dc < 10.0);
    assert!(last.bound_improved.unwrap().is_finite());
}

#[test]
fn improved_strictly_below_naive_from_e2() {
    for r in fig2_reports().unwrap().iter().skip(1) {
        let imp = improved_bound_exact(5, 2, &r.s_exact).unwrap();
        let nai = naive_bound_exact(5, 2, &r.s_exact).unwrap();
        assert!(imp < nai, "e = {}", r.index);
    }
    let last = &fig2_reports().unwrap()[44];
    let ratio = naive_bound(5, 2, &last.s_exact).unwrap() / improved_bound(5, 2, &last.s_exact).unwrap();
    assert!(ratio > 1e50);
}

#[test]
fn fig1_rows_and_cond_growth() {
    let rows = fig1_experiment(45).unwrap();
    assert_eq!(rows.len(), 135);
    let g15 = gamma(15).unwrap();
    for r in &rows {
        assert!(r.err_dc <= r.bound_dc, "{} e={}", r.poly, r.index);
        assert!(r.cond >= 1.0);
        assert_eq!(r.bound_improved.is_some(), r.poly == "v");
        // bound_dc is gamma_15 * cond rounded up
        assert!(r.bound_dc >= g15 * r.cond * (1.0 - 1e-15));
    }
    // cond(u, s_u) / N^5 -> 1
    let u: Vec<_> = rows.iter().filter(|r| r.poly == "u").collect();
    let ratio = |e: usize| u[e - 1].cond / experiments::grid_n(e as u32).powi(5);
    assert!((ratio(20) - 1.0).abs() < (ratio(2) - 1.0).abs());
    assert!((ratio(20) - 1.0).abs() < 1e-4);
}

#[test]
fn fig3_rows() {
    let rows = fig3_experiment().unwrap();
    assert_eq!(rows.iter().filter(|r| r.poly == "f").count(), 36);
    assert_eq!(rows.iter().filter(|r| r.poly == "g").count(), 38);
    assert_eq!(rows.iter().filter(|r| r.poly == "h").count(), 24);
    for r in &rows {
        assert!(r.err_dc <= r.bound_dc);
        assert!(r.err_vs.unwrap() <= r.bound_vs.unwrap());
        assert!(r.flags.is_empty(), "{:?}", r.flags);
        if r.poly == "h" {
            assert!(r.err_dc <= r.bound_improved.unwrap());
        } else {
            assert!(r.bound_improved.is_none());
        }
    }
    // the h points are 4j/100
    let h: Vec<_> = rows.iter().filter(|r| r.poly == "h").collect();
    assert_eq!(h[11].s, 0.48);
    assert_eq!(h[23].s, 0.96);
}

#[test]
fn half_uses_five_n_branch() {
    let p = experiments::poly_h();
    let b = vs_bound(&p, &rational::ratio(1, 2)).unwrap();
    // s = 1/2 is the root of h: the bound is infinite there, but the branch
    // choice still shows in a well-conditioned polynomial
    assert!(b.bound.is_infinite());
    let ones = bernstein_fp::RationalPoly::new(vec![rational::int(1); 21]).unwrap();
    let b = vs_bound(&ones, &rational::ratio(1, 2)).unwrap();
    assert_eq!(b.bound, Magnitude::Finite(from_f64(gamma(100).unwrap()).unwrap()));
}
