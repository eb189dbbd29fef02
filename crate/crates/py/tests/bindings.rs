use hoconv_py::{
    build_rule, divided_difference, divided_difference_det, error_bound, fixed_rule, interpolate,
    is_n_convex, support, verify_chain, PyExpr, PyPolynomial,
};

#[test]
fn rules_through_the_binding_layer() {
    let g = build_rule("gauss", 2, "legendre", (-1.0, 1.0)).unwrap();
    let s = 3f64.sqrt() / 3.0;
    assert!((g.nodes()[1] - s).abs() < 1e-12);
    assert_eq!(g.claimed_exactness(), 3);
    assert_eq!(g.exactness_degree().unwrap(), Some(3));
    let blend = fixed_rule("blend").unwrap();
    assert_eq!(blend.label(), "Blend");
    let x6 = PyPolynomial::new(vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    assert!((blend.apply(&x6) - 14.0 / 45.0).abs() < 1e-12);
    assert!(build_rule("simpsons", 2, "legendre", (-1.0, 1.0)).is_err());
}

#[test]
fn expressions_and_divided_differences() {
    let e = PyExpr::new("x^6").unwrap();
    assert_eq!(e.derive(1).unwrap().eval(1.0).unwrap(), 6.0);
    assert!(PyExpr::new("2*+x").is_err());
    assert!(PyExpr::new("1/x").unwrap().eval(0.0).is_err());
    let pts = vec![0.0, 0.5, 1.5];
    let vals = vec![1.0, 2.0, -1.0];
    let a = divided_difference(pts.clone(), vals.clone()).unwrap();
    let b = divided_difference_det(pts.clone(), vals.clone()).unwrap();
    assert!((a - b).abs() < 1e-14);
    let p = interpolate(pts, vals).unwrap();
    assert!((p.eval(0.5) - 2.0).abs() < 1e-14);
}

#[test]
fn chains_bounds_and_supports() {
    let r = verify_chain("fiveconv", "x^6", (-1.0, 1.0), "legendre", None, true).unwrap();
    assert!(r.passed());
    assert!((r.values()[2] - 26.0 / 75.0).abs() < 1e-12);
    assert!(verify_chain("hh", "-x^2", (0.0, 1.0), "legendre", None, true).is_err());
    let b = error_bound("blend", 6, 720.0, Some("x^6")).unwrap();
    assert!((b.bound() - 8.0 / 315.0).abs() < 1e-14);
    let s = support("exp(x)", 3, vec![0.0], vec![4], (-1.0, 1.0), None).unwrap();
    assert_eq!(s.method(), "confluent");
    assert!(s.certified());
    assert!((s.polynomial().coeffs()[3] - 1.0 / 6.0).abs() < 1e-12);
    assert!(support("x^6", 5, vec![0.5], vec![6], (-1.0, 1.0), Some("eps")).is_err());
    let (convex, witness) = is_n_convex("x^3", 1, 32, (-1.0, 1.0)).unwrap();
    assert!(!convex && witness.is_some());
}
