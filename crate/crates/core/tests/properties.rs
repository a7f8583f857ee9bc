use bernstein_fp::experiments::{emit_csv, parse_csv, ExperimentRow, Flag};
use bernstein_fp::family::{improved_bound_exact, naive_bound_exact};
use bernstein_fp::rational::{self, from_f64, Magnitude, Rational};
use bernstein_fp::{
    check_triangle_ratio, condition_number, decasteljau, decasteljau_bound, decasteljau_value, eval_abs_exact,
    eval_exact, exact_scaling_holds, phi, relative_error, vs, vs_bound, BernsteinPoly, Check, FamilySpec,
    RationalPoly,
};
use num_traits::Signed;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e3..1e3f64,
        (-20i32..20, -1e3..1e3f64).prop_map(|(e, m)| m * 2f64.powi(e)),
        Just(0.0),
    ]
}

fn poly(max_degree: usize) -> impl Strategy<Value = BernsteinPoly> {
    prop::collection::vec(coeff(), 1..=max_degree + 1).prop_map(|c| BernsteinPoly::new(c).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..50).prop_map(|(p, q)| rational::ratio(p, q))
}

fn unit_point() -> impl Strategy<Value = f64> {
    prop_oneof![0.0..=1.0f64, Just(0.0), Just(0.5), Just(1.0)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    // Both algorithms stay within their a priori bounds against the oracle.
    #[test]
    fn evaluators_within_bounds(p in poly(24), s in unit_point()) {
        let exact_poly = p.to_rational();
        let se = from_f64(s).unwrap();
        let exact = eval_exact(&exact_poly, &se);

        let (dc, _) = decasteljau(&p, s).unwrap();
        let err = relative_error(&exact, dc).unwrap().rel_error;
        prop_assert!(err.le(&decasteljau_bound(&exact_poly, &se).unwrap()));

        let v = vs(&p, s).unwrap();
        let err = relative_error(&exact, v).unwrap().rel_error;
        let b = vs_bound(&exact_poly, &se).unwrap();
        prop_assert!(b.valid);
        prop_assert!(err.le(&b.bound));
    }

    #[test]
    fn evaluators_are_deterministic(p in poly(30), s in -2.0..3.0f64) {
        let (a, tri) = decasteljau(&p, s).unwrap();
        let (b, tri2) = decasteljau(&p, s).unwrap();
        prop_assert_eq!(a.to_bits(), b.to_bits());
        prop_assert_eq!(tri, tri2);
        prop_assert_eq!(decasteljau_value(&p, s).unwrap().to_bits(), a.to_bits());
    }

    #[test]
    fn abs_value_dominates(p in poly(12), s in unit_point()) {
        let q = p.to_rational();
        let se = from_f64(s).unwrap();
        prop_assert!(eval_exact(&q, &se).abs() <= eval_abs_exact(&q, &se).unwrap());
        match condition_number(&q, &se).unwrap() {
            Magnitude::Finite(c) => prop_assert!(c >= rational::int(1)),
            Magnitude::Infinite => {}
        }
    }

    #[test]
    fn oracle_is_linear(
        a in prop::collection::vec(small_rational(), 1..8),
        b_seed in prop::collection::vec(small_rational(), 8),
        alpha in small_rational(),
        s in small_rational(),
    ) {
        let b: Vec<Rational> = b_seed[..a.len()].to_vec();
        let pa = RationalPoly::new(a).unwrap();
        let pb = RationalPoly::new(b).unwrap();
        let combo = pa.axpy(&alpha, &pb).unwrap();
        prop_assert_eq!(eval_exact(&combo, &s), &alpha * eval_exact(&pa, &s) + eval_exact(&pb, &s));
    }

    #[test]
    fn family_improved_bound_holds(
        b0 in prop_oneof![0.1..10.0f64, -10.0..-0.1f64],
        t in -6i32..=6,
        n in 1usize..=16,
        s in 0.0..=1.0f64,
    ) {
        let spec = FamilySpec::new(b0, t, n).unwrap();
        let p = spec.poly().unwrap();
        let (dc, tri) = decasteljau(&p, s).unwrap();
        prop_assert_ne!(check_triangle_ratio(&tri, &spec), Check::Fails);
        let se = from_f64(s).unwrap();
        let exact = eval_exact(&p.to_rational(), &se);
        let err = relative_error(&exact, dc).unwrap().rel_error;
        match improved_bound_exact(n, t, &se) {
            Ok(b) => {
                prop_assert!(err.le(&Magnitude::Finite(b.clone())));
                // cond = |phi|^n
                let ph = phi(t, &se).unwrap().abs();
                let cond = condition_number(&p.to_rational(), &se).unwrap();
                prop_assert_eq!(cond, Magnitude::Finite(num_traits::pow(ph.clone(), n)));
                if ph >= rational::int(1) {
                    prop_assert!(b <= naive_bound_exact(n, t, &se).unwrap());
                }
            }
            Err(_) => prop_assert_eq!(se, spec.root()),
        }
    }

    #[test]
    fn scaling_identity(
        a in prop_oneof![1e-100..1e100f64, -1e100..-1e-100f64],
        b in prop_oneof![1e-100..1e100f64, -1e100..-1e-100f64],
        t in -30i32..=30,
    ) {
        prop_assert_ne!(exact_scaling_holds(a, b, t), Check::Fails);
    }

    #[test]
    fn csv_round_trip(rows in prop::collection::vec(row(), 0..20)) {
        let mut buf = Vec::new();
        emit_csv(&rows, &mut buf).unwrap();
        let back = parse_csv(buf.as_slice()).unwrap();
        let mut sorted = rows.clone();
        sorted.sort_by(|a, b| (&a.poly, a.index).cmp(&(&b.poly, b.index)));
        prop_assert_eq!(back.len(), sorted.len());
        for (x, y) in sorted.iter().zip(&back) {
            prop_assert_eq!(x.s.to_bits(), y.s.to_bits());
            prop_assert_eq!(x.err_dc.to_bits(), y.err_dc.to_bits());
            prop_assert_eq!(x.bound_vs.map(f64::to_bits), y.bound_vs.map(f64::to_bits));
            prop_assert_eq!(x, y);
        }
    }
}

fn any_pos() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()).prop_map(f64::abs),
        Just(f64::INFINITY),
    ]
}

fn row() -> impl Strategy<Value = ExperimentRow> {
    (
        (prop::sample::select(vec!["fig1", "fig2", "fig3"]), prop::sample::select(vec!["u", "v", "f"]), 0u32..50),
        (any::<f64>().prop_filter("finite", |x| x.is_finite()), any_pos(), any_pos()),
        (prop::option::of(any_pos()), any_pos(), prop::option::of(any_pos())),
        (prop::option::of(any_pos()), prop::option::of(any_pos())),
        prop::sample::subsequence(vec![Flag::Pole, Flag::ExactZero, Flag::BoundInvalid, Flag::Violation], 0..=4),
    )
        .prop_map(|((e, p, i), (s, cond, err_dc), (err_vs, bound_dc, bound_vs), (imp, nai), flags)| ExperimentRow {
            experiment: e.to_string(),
            poly: p.to_string(),
            index: i,
            s,
            cond,
            err_dc,
            err_vs,
            bound_dc,
            bound_vs,
            bound_improved: imp,
            bound_naive: nai,
            flags,
        })
}
