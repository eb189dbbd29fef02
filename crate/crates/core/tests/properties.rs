use proptest::prelude::*;

use hoconv::divdiff::{
    check_sign_pattern, divided_difference, divided_difference_det, newton_interpolant,
};
use hoconv::expr::{derive_expr, parse_expr, Expr};
use hoconv::function::corpus;
use hoconv::hadamard::{error_bound, verify_chain, InequalityChain};
use hoconv::orthopoly::WeightFunction;
use hoconv::quadrature::{build_gauss, build_radau_left, fixed_operator};
use hoconv::support::{self, AttachMethod};
use hoconv::{FixedOperator, Interval, Polynomial, TestFunction};

/// Increasing points with consecutive spacing at least 0.05.
fn spaced_points(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    (-1.0..-0.5f64, prop::collection::vec(0.05..0.3f64, 1..max_len)).prop_map(|(start, steps)| {
        let mut x = start;
        let mut out = vec![x];
        for s in steps {
            x += s;
            out.push(x);
        }
        out
    })
}

fn expr_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("x".to_string()),
        (0u32..50).prop_map(|k| format!("{}", k as f64 / 4.0)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), prop_oneof![Just("+"), Just("-"), Just("*"), Just("/")])
                .prop_map(|(a, b, op)| format!("({a}){op}({b})")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            (inner, prop_oneof![Just("exp"), Just("sin"), Just("cos"), Just("abs")])
                .prop_map(|(a, f)| format!("{f}({a})")),
        ]
    })
}

fn same_value(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a == b || (a - b).abs() <= 1e-12 * a.abs().max(1.0)
}

const DERIVATIVE_CORPUS: &[&str] = &[
    "exp(x)",
    "sin(x)*x^2",
    "sqrt(x + 2)",
    "cos(2*x)/(x + 3)",
    "x^5 - 3*x",
    "exp(-x^2)",
    "1/(2 - x)",
];

proptest! {
    #[test]
    fn recursive_and_determinant_divided_differences_agree(
        points in spaced_points(7),
        seed in prop::collection::vec(-1.0..1.0f64, 7),
    ) {
        let values: Vec<f64> = seed[..points.len()].to_vec();
        let a = divided_difference(&points, &values).unwrap();
        let b = divided_difference_det(&points, &values).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn newton_interpolant_hits_the_data(
        points in spaced_points(8),
        seed in prop::collection::vec(-2.0..2.0f64, 8),
    ) {
        let values = &seed[..points.len()];
        let p = newton_interpolant(&points, values).unwrap();
        for (x, y) in points.iter().zip(values) {
            prop_assert!((p.eval(*x) - y).abs() <= 1e-9 * (1.0 + y.abs()));
        }
    }

    #[test]
    fn divided_difference_of_a_monomial_is_its_leading_coefficient(points in spaced_points(7), c in -3.0..3.0f64) {
        let k = points.len() - 1;
        let values: Vec<f64> = points.iter().map(|&x| c * x.powi(k as i32)).collect();
        let d = divided_difference(&points, &values).unwrap();
        prop_assert!((d - c).abs() <= 1e-9 * c.abs().max(1.0));
    }

    #[test]
    fn display_round_trip_preserves_evaluation(src in expr_source()) {
        let e = parse_expr(&src).unwrap();
        let printed = e.to_string();
        let back = parse_expr(&printed).unwrap();
        for i in 0..20 {
            let x = -1.9 + 0.2 * i as f64;
            prop_assert!(same_value(e.eval(x), back.eval(x)), "{src} -> {printed} at {x}");
        }
    }

    #[test]
    fn derivatives_match_central_differences(idx in 0..DERIVATIVE_CORPUS.len(), x in -0.9..0.9f64) {
        let e = parse_expr(DERIVATIVE_CORPUS[idx]).unwrap();
        let h = 1e-5;
        for order in 1..=2 {
            let lower: Expr = derive_expr(&e, order - 1).unwrap();
            let d = derive_expr(&e, order).unwrap().eval(x);
            let fd = (lower.eval(x + h) - lower.eval(x - h)) / (2.0 * h);
            prop_assert!((d - fd).abs() <= 1e-6 * d.abs().max(1.0), "{} order {order} at {x}: {d} vs {fd}", DERIVATIVE_CORPUS[idx]);
        }
    }

    #[test]
    fn gauss_rules_have_positive_weights_and_full_mass(c in 0.0..3.0f64, n in 1usize..7) {
        let u = Interval::symmetric_unit();
        let w = WeightFunction::polynomial(Polynomial::new(vec![1.0, 0.0, c]), u).unwrap();
        let rule = build_gauss(&w, n).unwrap();
        let mass = 2.0 + 2.0 * c / 3.0;
        prop_assert!(rule.weights().iter().all(|&wi| wi > 0.0));
        prop_assert!((rule.weights().iter().sum::<f64>() - mass).abs() <= 1e-10 * mass);
        prop_assert!(rule.nodes().windows(2).all(|p| p[0] < p[1]));
        prop_assert!(rule.nodes().iter().all(|&x| u.contains_interior(x)));
    }

    #[test]
    fn radau_left_includes_the_left_endpoint(n in 2usize..6) {
        let u = Interval::symmetric_unit();
        let rule = build_radau_left(&WeightFunction::legendre(u), n).unwrap();
        prop_assert_eq!(rule.nodes()[0], -1.0);
        prop_assert!(rule.weights().iter().all(|&wi| wi > 0.0));
    }

    #[test]
    fn support_certificate_holds_off_grid(n in prop_oneof![Just(1usize), Just(3)], x1 in -0.8..0.8f64, probe in -1.0..1.0f64) {
        let u = Interval::symmetric_unit();
        let f = corpus::exp(u);
        let r = support::support_odd(&f, n, x1, Some(AttachMethod::Confluent)).unwrap();
        prop_assert!(f.eval(probe) - r.polynomial.eval(probe) >= -1e-9 * (1.0 + f.eval(probe).abs()));
        prop_assert!(r.recheck(&f, 0.37).unwrap().pass);
    }

    #[test]
    fn sign_check_rejects_a_shifted_support(x1 in -0.8..0.8f64, shift in 0.01..0.5f64) {
        let u = Interval::symmetric_unit();
        let f = corpus::exp(u);
        let r = support::support_odd(&f, 1, x1, None).unwrap();
        let raised = &r.polynomial + &Polynomial::constant(shift);
        let cert = check_sign_pattern(|x| f.eval(x), &raised, &r.pattern, u, 1000).unwrap();
        prop_assert!(!cert.pass);
    }

    #[test]
    fn hermite_hadamard_holds_for_convex_quadratics(a in 0.01..5.0f64, b in -3.0..3.0f64, c in -3.0..3.0f64) {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let f = TestFunction::from_polynomial("q", Polynomial::new(vec![c, b, a]), iv)
            .declare_orders(&[1])
            .unwrap();
        let chain = InequalityChain::hermite_hadamard(iv).unwrap();
        let report = verify_chain(&chain, &f, None).unwrap();
        prop_assert!(report.pass);
        // midpoint and trapezoid gaps are a/12 and a/6
        prop_assert!((report.comparisons[0].margin - a / 12.0).abs() <= 1e-12 * (1.0 + a));
        prop_assert!((report.comparisons[1].margin - a / 6.0).abs() <= 1e-12 * (1.0 + a));
    }

    #[test]
    fn blend_bound_scales_linearly(m in 0.0..1e4f64) {
        let blend = fixed_operator(FixedOperator::Blend).unwrap();
        let r = error_bound(&blend, 6, m, None).unwrap();
        prop_assert!((r.bound - m / 28350.0).abs() <= 1e-12 * (m / 28350.0).max(1e-300));
    }
}
