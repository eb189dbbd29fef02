//! Hermite-Hadamard style inequality chains between quadrature operators and the
//! weighted integral, the even-part reduction, and the error bounds the
//! one-sided chains imply.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::function::{FunctionError, RealFn, TestFunction};
use crate::integrate::{IntegrationError, Tolerance};
use crate::numfmt;
use crate::orthopoly::WeightFunction;
use crate::poly::{Interval, Polynomial};
use crate::quadrature::{self, Family, FixedOperator, QuadratureRule, RuleError};

/// Absolute slack for the symmetric-operator identity.
pub const INVARIANCE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HadamardError {
    #[error("a chain needs at least two operators, got {0}")]
    TooFewOperators(usize),
    #[error("{function} does not declare the {order}-convexity the chain requires")]
    NotDeclared { function: String, order: usize },
    #[error("{function} is given on {function_interval}, the chain runs on {chain_interval}")]
    IntervalMismatch {
        function: String,
        function_interval: Interval,
        chain_interval: Interval,
    },
    #[error("interval {0} is not symmetric about 0")]
    AsymmetricInterval(Interval),
    #[error("operator {0} is not symmetric about 0")]
    AsymmetricRule(String),
    #[error("no inequality chain for {operator} at convexity order {order} is on record")]
    NoChainOnRecord { operator: String, order: usize },
    #[error("derivative bound M must be finite and non-negative, got {0}")]
    BadBound(f64),
    #[error("unknown chain {0:?} (expected gauss-lobatto, radau, cheb, fiveconv or hh)")]
    UnknownChain(String),
    #[error("{chain} needs {requirement}")]
    ChainParameter {
        chain: &'static str,
        requirement: &'static str,
    },
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Function(#[from] FunctionError),
}

#[derive(Debug, Clone)]
pub enum ChainOperator {
    Rule(QuadratureRule),
    /// `∫ f w` over the chain's interval.
    Integral,
}

impl ChainOperator {
    pub fn label(&self) -> String {
        match self {
            ChainOperator::Rule(r) => r.label(),
            ChainOperator::Integral => "integral".to_string(),
        }
    }
}

/// `op_0(f) <= op_1(f) <= ...` for every f that is `order`-convex.
#[derive(Debug, Clone)]
pub struct InequalityChain {
    name: String,
    operators: Vec<ChainOperator>,
    order: usize,
    weight: WeightFunction,
}

impl InequalityChain {
    pub fn new(
        name: impl Into<String>,
        operators: Vec<ChainOperator>,
        order: usize,
        weight: WeightFunction,
    ) -> Result<Self, HadamardError> {
        if operators.len() < 2 {
            return Err(HadamardError::TooFewOperators(operators.len()));
        }
        Ok(InequalityChain {
            name: name.into(),
            operators,
            order,
            weight,
        })
    }

    /// `Gauss_n <= ∫ <= Lobatto_{n+1}` for (2n-1)-convex f.
    pub fn gauss_lobatto(w: &WeightFunction, n: usize) -> Result<Self, HadamardError> {
        if n < 2 {
            return Err(HadamardError::ChainParameter {
                chain: "gauss-lobatto",
                requirement: "n >= 2",
            });
        }
        let ops = vec![
            ChainOperator::Rule(quadrature::build_gauss(w, n)?),
            ChainOperator::Integral,
            ChainOperator::Rule(quadrature::build_lobatto(w, n + 1)?),
        ];
        InequalityChain::new(format!("gauss-lobatto(n={n})"), ops, 2 * n - 1, w.clone())
    }

    /// `RadauLeft_{n+1} <= ∫ <= RadauRight_{n+1}` for 2n-convex f.
    pub fn radau(w: &WeightFunction, n: usize) -> Result<Self, HadamardError> {
        if n < 1 {
            return Err(HadamardError::ChainParameter {
                chain: "radau",
                requirement: "n >= 1",
            });
        }
        let ops = vec![
            ChainOperator::Rule(quadrature::build_radau_left(w, n + 1)?),
            ChainOperator::Integral,
            ChainOperator::Rule(quadrature::build_radau_right(w, n + 1)?),
        ];
        InequalityChain::new(format!("radau(n={n})"), ops, 2 * n, w.clone())
    }

    /// `G2 <= Cheb3 <= ∫` on `[-1, 1]` for 3-convex f.
    pub fn cheb() -> Result<Self, HadamardError> {
        let ops = vec![
            ChainOperator::Rule(quadrature::fixed_operator(FixedOperator::G2)?),
            ChainOperator::Rule(quadrature::fixed_operator(FixedOperator::Cheb3)?),
            ChainOperator::Integral,
        ];
        InequalityChain::new("cheb", ops, 3, WeightFunction::legendre(Interval::symmetric_unit()))
    }

    /// `∫ <= Blend <= Lob4` on `[-1, 1]` for 5-convex f.
    pub fn fiveconv() -> Result<Self, HadamardError> {
        let ops = vec![
            ChainOperator::Integral,
            ChainOperator::Rule(quadrature::fixed_operator(FixedOperator::Blend)?),
            ChainOperator::Rule(quadrature::fixed_operator(FixedOperator::Lob4)?),
        ];
        InequalityChain::new("fiveconv", ops, 5, WeightFunction::legendre(Interval::symmetric_unit()))
    }

    /// `midpoint <= mean value <= trapezoid` for convex f, as
    /// `(b - a) f(m) <= ∫ f <= (b - a) (f(a) + f(b)) / 2`.
    pub fn hermite_hadamard(iv: Interval) -> Result<Self, HadamardError> {
        let ops = vec![
            ChainOperator::Rule(QuadratureRule::midpoint(iv)?),
            ChainOperator::Integral,
            ChainOperator::Rule(QuadratureRule::trapezoid(iv)?),
        ];
        InequalityChain::new("hh", ops, 1, WeightFunction::legendre(iv))
    }

    /// Chains by CLI name. `n` parametrizes gauss-lobatto (default 2) and radau (default 1).
    pub fn by_name(name: &str, w: &WeightFunction, n: Option<usize>) -> Result<Self, HadamardError> {
        match name {
            "gauss-lobatto" => InequalityChain::gauss_lobatto(w, n.unwrap_or(2)),
            "radau" => InequalityChain::radau(w, n.unwrap_or(1)),
            "cheb" => InequalityChain::cheb(),
            "fiveconv" => InequalityChain::fiveconv(),
            "hh" => InequalityChain::hermite_hadamard(w.interval()),
            other => Err(HadamardError::UnknownChain(other.to_string())),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn operators(&self) -> &[ChainOperator] {
        &self.operators
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn weight(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn interval(&self) -> Interval {
        self.weight.interval()
    }
}

/// `∫ f w`: closed form when both are polynomial, adaptive otherwise.
pub fn reference_integral(f: &TestFunction, w: &WeightFunction) -> Result<f64, IntegrationError> {
    match (f.polynomial(), w.is_polynomial()) {
        (Some(p), true) => w.integrate_poly(p),
        _ => {
            let eval = f.evaluator();
            w.integrate_fn(|x| eval(x), Tolerance::tight())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub lower: String,
    pub upper: String,
    pub lower_value: f64,
    pub upper_value: f64,
    /// `upper_value - lower_value`; the claim holds when `margin >= -tol`.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub chain: String,
    pub function: String,
    pub order: usize,
    pub operators: Vec<String>,
    pub values: Vec<f64>,
    pub comparisons: Vec<Comparison>,
    pub tol: f64,
    pub pass: bool,
}

impl ChainReport {
    pub fn margins(&self) -> Vec<f64> {
        self.comparisons.iter().map(|c| c.margin).collect()
    }

    pub fn worst_margin(&self) -> f64 {
        self.comparisons.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min)
    }

    /// One line per comparison, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.comparisons {
            out.push_str(&format!(
                "{} {} {}={} <= {}={} margin={} {}\n",
                self.chain,
                self.function,
                c.lower,
                numfmt::text(c.lower_value),
                c.upper,
                numfmt::text(c.upper_value),
                numfmt::text(c.margin),
                if c.pass { "PASS" } else { "FAIL" }
            ));
        }
        let values: Vec<String> = self.values.iter().map(|&v| numfmt::text(v)).collect();
        out.push_str(&format!(
            "{} {} values=[{}] tol={} {}\n",
            self.chain,
            self.function,
            values.join(", "),
            numfmt::text(self.tol),
            if self.pass { "PASS" } else { "FAIL" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(self)
    }
}

impl fmt::Display for ChainReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn check_interval(chain: &InequalityChain, f: &TestFunction) -> Result<(), HadamardError> {
    let (civ, fiv) = (chain.interval(), f.interval());
    if !(fiv.contains(civ.a()) && fiv.contains(civ.b())) {
        return Err(HadamardError::IntervalMismatch {
            function: f.name().to_string(),
            function_interval: fiv,
            chain_interval: civ,
        });
    }
    Ok(())
}

/// Evaluate every operator and compare neighbours, requiring `f` to declare the chain's order.
/// `tol = None` uses `1e-9 (1 + max |value|)`.
pub fn verify_chain(chain: &InequalityChain, f: &TestFunction, tol: Option<f64>) -> Result<ChainReport, HadamardError> {
    if !f.is_declared(chain.order()) {
        return Err(HadamardError::NotDeclared {
            function: f.name().to_string(),
            order: chain.order(),
        });
    }
    evaluate_chain(chain, f, tol)
}

/// [`verify_chain`] without the declaration check.
pub fn evaluate_chain(chain: &InequalityChain, f: &TestFunction, tol: Option<f64>) -> Result<ChainReport, HadamardError> {
    check_interval(chain, f)?;
    let mut values = Vec::with_capacity(chain.operators().len());
    for op in chain.operators() {
        values.push(match op {
            ChainOperator::Rule(rule) => rule.apply(|x| f.eval(x)),
            ChainOperator::Integral => reference_integral(f, chain.weight())?,
        });
    }
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tol = tol.unwrap_or(1e-9 * (1.0 + scale));
    let labels: Vec<String> = chain.operators().iter().map(ChainOperator::label).collect();
    let comparisons: Vec<Comparison> = (0..values.len() - 1)
        .map(|i| {
            let margin = values[i + 1] - values[i];
            Comparison {
                lower: labels[i].clone(),
                upper: labels[i + 1].clone(),
                lower_value: values[i],
                upper_value: values[i + 1],
                margin,
                pass: margin >= -tol,
            }
        })
        .collect();
    let pass = comparisons.iter().all(|c| c.pass);
    Ok(ChainReport {
        chain: chain.name().to_string(),
        function: f.name().to_string(),
        order: chain.order(),
        operators: labels,
        values,
        comparisons,
        tol,
        pass,
    })
}

/// `f_e(x) = (f(x) + f(-x)) / 2` with `f_e^(k)(x) = (f^(k)(x) + (-1)^k f^(k)(-x)) / 2`.
/// Odd declared orders of `f` carry over (re-checked); even ones are dropped.
pub fn even_part(f: &TestFunction) -> Result<TestFunction, HadamardError> {
    let iv = f.interval();
    if !iv.is_symmetric() {
        return Err(HadamardError::AsymmetricInterval(iv));
    }
    let eval = f.evaluator();
    let even: RealFn = Arc::new(move |x| 0.5 * (eval(x) + eval(-x)));
    let derivatives: Vec<RealFn> = f
        .derivative_fns()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let d = Arc::clone(d);
            let sign = if (i + 1) % 2 == 0 { 1.0 } else { -1.0 };
            Arc::new(move |x: f64| 0.5 * (d(x) + sign * d(-x))) as RealFn
        })
        .collect();
    let polynomial = f.polynomial().map(|p| {
        let coeffs = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c } else { 0.0 })
            .collect();
        Polynomial::new(coeffs)
    });
    let odd: Vec<usize> = f.declared_orders().iter().copied().filter(|n| n % 2 == 1).collect();
    let fe = TestFunction::from_parts(format!("even({})", f.name()), even, derivatives, polynomial, iv);
    Ok(fe.declare_orders(&odd)?)
}

/// `op(f) == op(f_e)` within [`INVARIANCE_TOL`] (scaled by `max(1, |op(f)|)`).
pub fn symmetric_operator_invariance(op: &QuadratureRule, f: &TestFunction) -> Result<bool, HadamardError> {
    if !op.interval().is_symmetric() || !op.is_symmetric(1e-14) {
        return Err(HadamardError::AsymmetricRule(op.label()));
    }
    let fe = even_part(f)?;
    let direct = op.apply(|x| f.eval(x));
    let reduced = op.apply(|x| fe.eval(x));
    Ok((direct - reduced).abs() <= INVARIANCE_TOL * direct.abs().max(1.0))
}

/// Which side of the integral a rule sits on for every f of the given convexity order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `op(f) <= ∫ f w`.
    Below,
    /// `op(f) >= ∫ f w`.
    Above,
}

/// The one-sided relation on record for `rule`, as `(side, convexity order)`.
pub fn chain_on_record(rule: &QuadratureRule) -> Option<(Side, usize)> {
    let p = rule.len();
    match rule.family() {
        Family::Gauss => Some((Side::Below, 2 * p - 1)),
        Family::Lobatto => Some((Side::Above, 2 * p - 3)),
        Family::RadauLeft => Some((Side::Below, 2 * p - 2)),
        Family::RadauRight => Some((Side::Above, 2 * p - 2)),
        Family::Fixed(op) => Some(match op {
            FixedOperator::G2 | FixedOperator::Cheb3 => (Side::Below, 3),
            FixedOperator::Simpson => (Side::Above, 3),
            FixedOperator::Lob4 | FixedOperator::Blend => (Side::Above, 5),
            FixedOperator::Midpoint => (Side::Below, 1),
            FixedOperator::Trapezoid => (Side::Above, 1),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorBoundResult {
    pub operator: String,
    pub derivative_order: usize,
    #[serde(rename = "M")]
    pub m: f64,
    pub side: Side,
    /// `|op(g) - ∫ g w|` for `g = M x^k / k!`.
    pub bound: f64,
    pub function: Option<String>,
    /// `|op(f) - ∫ f w|` when `f` is supplied.
    pub empirical_error: Option<f64>,
}

impl ErrorBoundResult {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "operator={} k={} M={} side={} bound={}",
            self.operator,
            self.derivative_order,
            numfmt::text(self.m),
            match self.side {
                Side::Below => "below",
                Side::Above => "above",
            },
            numfmt::text(self.bound)
        );
        if let (Some(name), Some(err)) = (&self.function, self.empirical_error) {
            out.push_str(&format!(" f={} empirical_error={}", name, numfmt::text(err)));
        }
        out.push('\n');
        out
    }

    pub fn to_json(&self) -> String {
        numfmt::to_json(self)
    }

    /// Empirical error within the bound, allowing `1e-12` slack.
    pub fn dominated(&self) -> Option<bool> {
        self.empirical_error.map(|e| e <= self.bound + 1e-12)
    }
}

/// Error bound for `|op(f) - ∫ f w|` when `|f^(k)| <= M`: the test function
/// `g = M x^k / k!` makes `g + f` and `g - f` both (k-1)-convex, so the chain
/// on record for `op` at that order gives `|op(f) - ∫ f w| <= |op(g) - ∫ g w|`.
pub fn error_bound(
    op: &QuadratureRule,
    k: usize,
    m: f64,
    f: Option<&TestFunction>,
) -> Result<ErrorBoundResult, HadamardError> {
    if !(m.is_finite() && m >= 0.0) {
        return Err(HadamardError::BadBound(m));
    }
    let side = match chain_on_record(op) {
        Some((side, order)) if k >= 1 && order == k - 1 => side,
        _ => {
            return Err(HadamardError::NoChainOnRecord {
                operator: op.label(),
                order: k.saturating_sub(1),
            })
        }
    };
    let factorial: f64 = (1..=k).map(|i| i as f64).product();
    let g = Polynomial::monomial(k, m / factorial);
    let w = op.weight_fn();
    let bound = (op.apply_poly(&g) - w.integrate_poly(&g)?).abs();
    let empirical_error = match f {
        Some(f) => Some((op.apply(|x| f.eval(x)) - reference_integral(f, w)?).abs()),
        None => None,
    };
    Ok(ErrorBoundResult {
        operator: op.label(),
        derivative_order: k,
        m,
        side,
        bound,
        function: f.map(|f| f.name().to_string()),
        empirical_error,
    })
}

/// Bounds for every rule in `chain` whose record matches order `k - 1`;
/// a chain with operators on both sides yields both one-sided bounds.
pub fn chain_error_bounds(
    chain: &InequalityChain,
    k: usize,
    m: f64,
    f: Option<&TestFunction>,
) -> Result<Vec<ErrorBoundResult>, HadamardError> {
    let mut out = Vec::new();
    for op in chain.operators() {
        if let ChainOperator::Rule(rule) = op {
            match error_bound(rule, k, m, f) {
                Ok(r) => out.push(r),
                Err(HadamardError::NoChainOnRecord { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::corpus;
    use approx::assert_abs_diff_eq;

    fn unit() -> Interval {
        Interval::symmetric_unit()
    }

    fn declared(f: TestFunction, n: usize) -> TestFunction {
        f.declare_orders(&[n]).unwrap()
    }

    fn assert_values(report: &ChainReport, want: &[f64]) {
        assert!(report.pass, "{}", report.to_text());
        for (got, want) in report.values.iter().zip(want) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn chain_examples() {
        let w = WeightFunction::legendre(unit());
        let gl = InequalityChain::gauss_lobatto(&w, 2).unwrap();
        let r = verify_chain(&gl, &declared(corpus::power(4, unit()), 3), None).unwrap();
        assert_values(&r, &[2.0 / 9.0, 2.0 / 5.0, 2.0 / 3.0]);

        let cheb = InequalityChain::cheb().unwrap();
        let r = verify_chain(&cheb, &declared(corpus::power(4, unit()), 3), None).unwrap();
        assert_values(&r, &[2.0 / 9.0, 1.0 / 3.0, 2.0 / 5.0]);

        let five = InequalityChain::fiveconv().unwrap();
        let r = verify_chain(&five, &declared(corpus::power(6, unit()), 5), None).unwrap();
        assert_values(&r, &[2.0 / 7.0, 14.0 / 45.0, 26.0 / 75.0]);

        let half = Interval::new(0.0, 1.0).unwrap();
        let hh = InequalityChain::hermite_hadamard(half).unwrap();
        let r = verify_chain(&hh, &declared(corpus::power(2, half), 1), None).unwrap();
        assert_values(&r, &[0.25, 1.0 / 3.0, 0.5]);
    }

    #[test]
    fn undeclared_order_is_refused() {
        let five = InequalityChain::fiveconv().unwrap();
        let f = corpus::power(6, unit());
        assert!(matches!(verify_chain(&five, &f, None), Err(HadamardError::NotDeclared { order: 5, .. })));
        assert!(evaluate_chain(&five, &f, None).unwrap().pass);
    }

    #[test]
    fn failing_chain_is_reported() {
        // -x^2 is concave, so both inequalities reverse
        let hh = InequalityChain::hermite_hadamard(unit()).unwrap();
        let f = TestFunction::new("-x^2", unit(), |x| -x * x);
        let r = evaluate_chain(&hh, &f, None).unwrap();
        assert!(!r.pass);
        assert!(r.to_text().contains("FAIL"));
    }

    #[test]
    fn report_forms() {
        let five = InequalityChain::fiveconv().unwrap();
        let r = verify_chain(&five, &declared(corpus::power(6, unit()), 5), None).unwrap();
        let text = r.to_text();
        assert_eq!(text.lines().count(), 3);
        assert!(text.lines().next().unwrap().starts_with("fiveconv x^6 integral=0.285714285714 <= Blend="));
        let doc: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(doc["pass"], true);
        assert_eq!(doc["values"][0].as_f64().unwrap(), r.values[0]);
    }

    #[test]
    fn even_part_examples() {
        let odd = even_part(&corpus::power(3, unit())).unwrap();
        assert_eq!(odd.eval(0.7), 0.0);
        assert!(odd.polynomial().unwrap().is_zero());

        let e = even_part(&corpus::exp(unit()).declare_orders(&[1, 2, 3]).unwrap()).unwrap();
        assert_abs_diff_eq!(e.eval(0.4), 0.4f64.cosh(), epsilon = 1e-15);
        assert_abs_diff_eq!(e.derivative(3, 0.4).unwrap(), 0.4f64.sinh(), epsilon = 1e-15);
        assert_eq!(e.declared_orders(), &[1, 3]);

        let sum = TestFunction::from_polynomial(
            "x^3+x^6",
            &Polynomial::monomial(3, 1.0) + &Polynomial::monomial(6, 1.0),
            unit(),
        );
        let w = WeightFunction::legendre(unit());
        assert_abs_diff_eq!(reference_integral(&sum, &w).unwrap(), 2.0 / 7.0, epsilon = 1e-15);
        let se = even_part(&sum).unwrap();
        assert_abs_diff_eq!(reference_integral(&se, &w).unwrap(), 2.0 / 7.0, epsilon = 1e-15);

        let half = Interval::new(0.0, 1.0).unwrap();
        assert!(matches!(even_part(&corpus::exp(half)), Err(HadamardError::AsymmetricInterval(_))));
    }

    #[test]
    fn invariance_examples() {
        let cheb = quadrature::fixed_operator(FixedOperator::Cheb3).unwrap();
        let f = TestFunction::from_polynomial("x^3+x^2", Polynomial::new(vec![0.0, 0.0, 1.0, 1.0]), unit());
        assert!(symmetric_operator_invariance(&cheb, &f).unwrap());
        let blend = quadrature::fixed_operator(FixedOperator::Blend).unwrap();
        assert!(symmetric_operator_invariance(&blend, &corpus::exp(unit())).unwrap());
        let g2 = quadrature::fixed_operator(FixedOperator::G2).unwrap();
        let odd = corpus::power(5, unit());
        assert!(symmetric_operator_invariance(&g2, &odd).unwrap());
        assert_abs_diff_eq!(g2.apply(|x| odd.eval(x)), 0.0, epsilon = 1e-16);

        let w = WeightFunction::legendre(unit());
        let radau = quadrature::build_radau_left(&w, 2).unwrap();
        assert!(matches!(
            symmetric_operator_invariance(&radau, &odd),
            Err(HadamardError::AsymmetricRule(_))
        ));
    }

    #[test]
    fn blend_bound() {
        let blend = quadrature::fixed_operator(FixedOperator::Blend).unwrap();
        let r = error_bound(&blend, 6, 1.0, None).unwrap();
        assert!((r.bound - 1.0 / 28350.0).abs() <= 1e-12 / 28350.0);
        assert_eq!(r.side, Side::Above);

        let sextic = corpus::power(6, unit());
        let r = error_bound(&blend, 6, 720.0, Some(&sextic)).unwrap();
        assert_abs_diff_eq!(r.bound, 8.0 / 315.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.empirical_error.unwrap(), r.bound, epsilon = 1e-14);

        assert_eq!(error_bound(&blend, 6, 0.0, None).unwrap().bound, 0.0);

        let r = error_bound(&blend, 6, 1.0, Some(&corpus::cos(unit()))).unwrap();
        assert_eq!(r.dominated(), Some(true));
    }

    #[test]
    fn bound_refusals() {
        let blend = quadrature::fixed_operator(FixedOperator::Blend).unwrap();
        assert!(matches!(
            error_bound(&blend, 4, 1.0, None),
            Err(HadamardError::NoChainOnRecord { order: 3, .. })
        ));
        assert_eq!(error_bound(&blend, 6, -1.0, None).unwrap_err(), HadamardError::BadBound(-1.0));
    }

    #[test]
    fn two_sided_bounds_from_a_chain() {
        let w = WeightFunction::legendre(unit());
        let gl = InequalityChain::gauss_lobatto(&w, 2).unwrap();
        let bounds = chain_error_bounds(&gl, 4, 24.0, Some(&corpus::power(4, unit()))).unwrap();
        assert_eq!(bounds.len(), 2);
        assert_eq!(bounds[0].side, Side::Below);
        assert_eq!(bounds[1].side, Side::Above);
        for b in &bounds {
            assert_eq!(b.dominated(), Some(true));
            assert_abs_diff_eq!(b.bound, b.empirical_error.unwrap(), epsilon = 1e-14);
        }
    }
}
