//! Gauss, Lobatto-type and Radau-type rules synthesized from orthogonal
//! polynomials, plus the fixed operators on `[-1, 1]`.
//!
//! Every weight integral has the form `∫ q(x) m(x) w(x) dx` for a polynomial
//! `q` and an endpoint modifier `m`; quotients like `P_n(x) / (x - x_i)` are
//! formed by synthetic division so no pointwise division near a node occurs.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::integrate::IntegrationError;
use crate::numfmt;
use crate::orthopoly::{self, Modifier, OrthoError, WeightFunction};
use crate::poly::{Interval, Polynomial};

const MASS_TOL: f64 = 1e-9;
const POSITIVITY_TOL: f64 = 1e-12;
/// Relative tolerance of the monomial scan in [`exactness_degree`].
pub const EXACTNESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleError {
    #[error("{family} rule needs at least {min} points, got {got}")]
    TooFewPoints {
        family: Family,
        min: usize,
        got: usize,
    },
    #[error("unknown fixed operator {0:?} (expected G2, Lob4, Cheb3, Simpson, Blend, Midpoint or Trapezoid)")]
    UnknownOperator(String),
    #[error("unknown rule family {0:?}")]
    UnknownFamily(String),
    #[error("weights sum to {sum} but the weight integrates to {mass}")]
    MassMismatch { sum: f64, mass: f64 },
    #[error("weight {weight} at node {node} is negative")]
    NegativeWeight { node: f64, weight: f64 },
    #[error("nodes are not strictly increasing inside the interval")]
    BadNodes,
    #[error(transparent)]
    Ortho(#[from] OrthoError),
    #[error(transparent)]
    Integration(#[from] IntegrationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixedOperator {
    G2,
    Lob4,
    Cheb3,
    Simpson,
    /// `2/5 Simpson + 3/5 G2`.
    Blend,
    Midpoint,
    Trapezoid,
}

impl FixedOperator {
    pub fn name(self) -> &'static str {
        match self {
            FixedOperator::G2 => "G2",
            FixedOperator::Lob4 => "Lob4",
            FixedOperator::Cheb3 => "Cheb3",
            FixedOperator::Simpson => "Simpson",
            FixedOperator::Blend => "Blend",
            FixedOperator::Midpoint => "Midpoint",
            FixedOperator::Trapezoid => "Trapezoid",
        }
    }
}

impl FromStr for FixedOperator {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "g2" => Ok(FixedOperator::G2),
            "lob4" => Ok(FixedOperator::Lob4),
            "cheb3" => Ok(FixedOperator::Cheb3),
            "simpson" | "smp" => Ok(FixedOperator::Simpson),
            "blend" => Ok(FixedOperator::Blend),
            "midpoint" => Ok(FixedOperator::Midpoint),
            "trapezoid" => Ok(FixedOperator::Trapezoid),
            _ => Err(RuleError::UnknownOperator(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Gauss,
    Lobatto,
    RadauLeft,
    RadauRight,
    Fixed(FixedOperator),
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gauss => "gauss",
            Family::Lobatto => "lobatto",
            Family::RadauLeft => "radau_left",
            Family::RadauRight => "radau_right",
            Family::Fixed(_) => "fixed",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = RuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "gauss" => Ok(Family::Gauss),
            "lobatto" => Ok(Family::Lobatto),
            "radau-l" | "radau_left" => Ok(Family::RadauLeft),
            "radau-r" | "radau_right" => Ok(Family::RadauRight),
            _ => Err(RuleError::UnknownFamily(s.to_string())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct QuadratureRule {
    family: Family,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    claimed_exactness: usize,
    weight_fn: WeightFunction,
}

impl QuadratureRule {
    fn checked(
        family: Family,
        nodes: Vec<f64>,
        weights: Vec<f64>,
        claimed_exactness: usize,
        weight_fn: WeightFunction,
    ) -> Result<Self, RuleError> {
        let iv = weight_fn.interval();
        let increasing = nodes.windows(2).all(|w| w[0] < w[1]);
        let inside = nodes.iter().all(|&x| iv.contains(x));
        let endpoints = match family {
            Family::Lobatto => nodes.first() == Some(&iv.a()) && nodes.last() == Some(&iv.b()),
            Family::RadauLeft => nodes.first() == Some(&iv.a()),
            Family::RadauRight => nodes.last() == Some(&iv.b()),
            _ => true,
        };
        if !(increasing && inside && endpoints) || nodes.len() != weights.len() {
            return Err(RuleError::BadNodes);
        }
        if !matches!(family, Family::Fixed(_)) {
            if let Some((&node, &weight)) = nodes
                .iter()
                .zip(weights.iter())
                .find(|(_, &w)| !(w >= -POSITIVITY_TOL))
            {
                return Err(RuleError::NegativeWeight { node, weight });
            }
        }
        let sum: f64 = weights.iter().sum();
        let mass = weight_fn.total_mass()?;
        if !((sum - mass).abs() <= MASS_TOL * mass.abs().max(1.0)) {
            return Err(RuleError::MassMismatch { sum, mass });
        }
        Ok(QuadratureRule {
            family,
            nodes,
            weights,
            claimed_exactness,
            weight_fn,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn claimed_exactness(&self) -> usize {
        self.claimed_exactness
    }

    pub fn weight_fn(&self) -> &WeightFunction {
        &self.weight_fn
    }

    pub fn interval(&self) -> Interval {
        self.weight_fn.interval()
    }

    /// Short display name: `G2`, `Blend`, `gauss(3)`, `radau_left(2)`, ...
    pub fn label(&self) -> String {
        match self.family {
            Family::Fixed(op) => op.name().to_string(),
            family => format!("{}({})", family.name(), self.len()),
        }
    }

    /// `Σ w_i f(x_i)`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(self.weights.iter())
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn apply_poly(&self, p: &Polynomial) -> f64 {
        self.apply(|x| p.eval(x))
    }

    /// Nodes symmetric about zero with equal mirrored weights.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        let n = self.len();
        (0..n).all(|i| {
            let j = n - 1 - i;
            (self.nodes[i] + self.nodes[j]).abs() <= tol && (self.weights[i] - self.weights[j]).abs() <= tol
        })
    }

    /// The midpoint rule `(b - a) f((a + b) / 2)`.
    pub fn midpoint(iv: Interval) -> Result<Self, RuleError> {
        QuadratureRule::checked(
            Family::Fixed(FixedOperator::Midpoint),
            vec![iv.midpoint()],
            vec![iv.length()],
            1,
            WeightFunction::legendre(iv),
        )
    }

    /// The trapezoid rule `(b - a) (f(a) + f(b)) / 2`.
    pub fn trapezoid(iv: Interval) -> Result<Self, RuleError> {
        let half = 0.5 * iv.length();
        QuadratureRule::checked(
            Family::Fixed(FixedOperator::Trapezoid),
            vec![iv.a(), iv.b()],
            vec![half, half],
            1,
            WeightFunction::legendre(iv),
        )
    }

    pub fn to_document(&self) -> RuleDocument {
        let iv = self.interval();
        RuleDocument {
            family: self.family.name().to_string(),
            operator: match self.family {
                Family::Fixed(op) => Some(op.name().to_string()),
                _ => None,
            },
            points: self.len(),
            claimed_exactness: self.claimed_exactness,
            weight: self.weight_fn.name().to_string(),
            interval: [iv.a(), iv.b()],
            nodes: self.nodes.clone(),
            weights: self.weights.clone(),
        }
    }

    /// Line-oriented table: one `#` header line, a column header, then one
    /// `node weight` pair per line (12 significant digits).
    pub fn to_text_table(&self) -> String {
        let iv = self.interval();
        let mut out = format!(
            "# family={} points={} claimed_exactness={} weight={} interval={} {}\n",
            match self.family {
                Family::Fixed(op) => format!("fixed:{}", op.name()),
                f => f.name().to_string(),
            },
            self.len(),
            self.claimed_exactness,
            self.weight_fn.name(),
            numfmt::text(iv.a()),
            numfmt::text(iv.b()),
        );
        out.push_str("node weight\n");
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            out.push_str(&format!("{} {}\n", numfmt::text(*x), numfmt::text(*w)));
        }
        out
    }

    /// The structured document as JSON with 17-digit floats.
    pub fn to_json(&self) -> String {
        numfmt::to_json(&self.to_document())
    }

    /// CSV with header `node,weight`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,weight\n");
        for (x, w) in self.nodes.iter().zip(self.weights.iter()) {
            out.push_str(&format!(
                "{},{}\n",
                numfmt::sig(*x, numfmt::JSON_DIGITS),
                numfmt::sig(*w, numfmt::JSON_DIGITS)
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RuleDocument {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
    pub points: usize,
    pub claimed_exactness: usize,
    pub weight: String,
    pub interval: [f64; 2],
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// `∫ q(x) m(x) w(x) dx` for the base of `w` with modifier `m`.
fn weighted(w: &WeightFunction, modifier: Modifier, q: &Polynomial) -> Result<f64, IntegrationError> {
    w.with_modifier(modifier).integrate_poly(q)
}

/// Orthogonal polynomial of the requested degree for the base weight with `modifier`.
fn orthogonal(w: &WeightFunction, modifier: Modifier, degree: usize) -> Result<Polynomial, RuleError> {
    let seq = orthopoly::build_ortho_sequence(&w.with_modifier(modifier), degree)?;
    Ok(seq.polys()[degree].clone())
}

/// Interpolatory weights `∫ P(x) / ((x - x_i) P'(x_i)) m(x) w(x) dx / scale_i`.
fn quotient_weights<S>(
    w: &WeightFunction,
    modifier: Modifier,
    p: &Polynomial,
    nodes: &[f64],
    scale: S,
) -> Result<Vec<f64>, RuleError>
where
    S: Fn(f64) -> f64,
{
    let dp = p.derivative();
    nodes
        .iter()
        .map(|&xi| {
            let (quotient, _) = p.divide_linear(xi);
            Ok(weighted(w, modifier, &quotient)? / (dp.eval(xi) * scale(xi)))
        })
        .collect()
}

fn base(w: &WeightFunction) -> WeightFunction {
    w.with_modifier(Modifier::None)
}

/// The n-point Gauss rule for `w`: nodes are the zeros of `P_n`.
pub fn build_gauss(w: &WeightFunction, n: usize) -> Result<QuadratureRule, RuleError> {
    if n < 1 {
        return Err(RuleError::TooFewPoints {
            family: Family::Gauss,
            min: 1,
            got: n,
        });
    }
    let w = base(w);
    let p = orthogonal(&w, Modifier::None, n)?;
    let nodes = orthopoly::nodes_of(&p, w.interval())?;
    let weights = quotient_weights(&w, Modifier::None, &p, &nodes, |_| 1.0)?;
    QuadratureRule::checked(Family::Gauss, nodes, weights, 2 * n - 1, w)
}

/// The `points`-point Lobatto-type rule: both endpoints plus the zeros of
/// `Q_{n-1}`, orthogonal for `(x - a)(b - x) w`, where `points = n + 1`.
pub fn build_lobatto(w: &WeightFunction, points: usize) -> Result<QuadratureRule, RuleError> {
    if points < 3 {
        return Err(RuleError::TooFewPoints {
            family: Family::Lobatto,
            min: 3,
            got: points,
        });
    }
    let n = points - 1;
    let w = base(w);
    let iv = w.interval();
    let (a, b) = (iv.a(), iv.b());
    let q = orthogonal(&w, Modifier::Both, n - 1)?;
    let interior = orthopoly::nodes_of(&q, iv)?;
    let q2 = &q * &q;

    let w_first = weighted(&w, Modifier::Right, &q2)? / ((b - a) * q.eval(a).powi(2));
    let w_last = weighted(&w, Modifier::Left, &q2)? / ((b - a) * q.eval(b).powi(2));
    let w_inner = quotient_weights(&w, Modifier::Both, &q, &interior, |xi| (b - xi) * (xi - a))?;

    let mut nodes = Vec::with_capacity(points);
    nodes.push(a);
    nodes.extend(interior);
    nodes.push(b);
    let mut weights = Vec::with_capacity(points);
    weights.push(w_first);
    weights.extend(w_inner);
    weights.push(w_last);
    QuadratureRule::checked(Family::Lobatto, nodes, weights, 2 * n - 1, w)
}

/// The `points`-point Radau-type rule fixing `a`: zeros of `P_n` orthogonal
/// for `(x - a) w`, where `points = n + 1`.
pub fn build_radau_left(w: &WeightFunction, points: usize) -> Result<QuadratureRule, RuleError> {
    if points < 2 {
        return Err(RuleError::TooFewPoints {
            family: Family::RadauLeft,
            min: 2,
            got: points,
        });
    }
    let n = points - 1;
    let w = base(w);
    let iv = w.interval();
    let a = iv.a();
    let p = orthogonal(&w, Modifier::Left, n)?;
    let interior = orthopoly::nodes_of(&p, iv)?;
    let w_first = weighted(&w, Modifier::None, &(&p * &p))? / p.eval(a).powi(2);
    let w_inner = quotient_weights(&w, Modifier::Left, &p, &interior, |xi| xi - a)?;

    let mut nodes = Vec::with_capacity(points);
    nodes.push(a);
    nodes.extend(interior);
    let mut weights = Vec::with_capacity(points);
    weights.push(w_first);
    weights.extend(w_inner);
    QuadratureRule::checked(Family::RadauLeft, nodes, weights, 2 * n, w)
}

/// The `points`-point Radau-type rule fixing `b`: zeros of `Q_n` orthogonal
/// for `(b - x) w`, where `points = n + 1`.
pub fn build_radau_right(w: &WeightFunction, points: usize) -> Result<QuadratureRule, RuleError> {
    if points < 2 {
        return Err(RuleError::TooFewPoints {
            family: Family::RadauRight,
            min: 2,
            got: points,
        });
    }
    let n = points - 1;
    let w = base(w);
    let iv = w.interval();
    let b = iv.b();
    let q = orthogonal(&w, Modifier::Right, n)?;
    let interior = orthopoly::nodes_of(&q, iv)?;
    let w_last = weighted(&w, Modifier::None, &(&q * &q))? / q.eval(b).powi(2);
    let mut weights = quotient_weights(&w, Modifier::Right, &q, &interior, |xi| b - xi)?;
    weights.push(w_last);
    let mut nodes = interior;
    nodes.push(b);
    QuadratureRule::checked(Family::RadauRight, nodes, weights, 2 * n, w)
}

/// Build a synthesized rule by family.
pub fn build_rule(family: Family, w: &WeightFunction, points: usize) -> Result<QuadratureRule, RuleError> {
    match family {
        Family::Gauss => build_gauss(w, points),
        Family::Lobatto => build_lobatto(w, points),
        Family::RadauLeft => build_radau_left(w, points),
        Family::RadauRight => build_radau_right(w, points),
        Family::Fixed(op) => fixed_operator(op),
    }
}

/// The hard-coded operators on `[-1, 1]` with `w = 1`.
pub fn fixed_operator(op: FixedOperator) -> Result<QuadratureRule, RuleError> {
    let unit = Interval::symmetric_unit();
    let g = 3f64.sqrt() / 3.0;
    let l = 5f64.sqrt() / 5.0;
    let c = std::f64::consts::FRAC_1_SQRT_2;
    let (nodes, weights, exact) = match op {
        FixedOperator::G2 => (vec![-g, g], vec![1.0, 1.0], 3),
        FixedOperator::Lob4 => (
            vec![-1.0, -l, l, 1.0],
            vec![1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0],
            5,
        ),
        FixedOperator::Cheb3 => (vec![-c, 0.0, c], vec![2.0 / 3.0; 3], 3),
        FixedOperator::Simpson => (vec![-1.0, 0.0, 1.0], vec![1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0], 3),
        FixedOperator::Blend => (
            vec![-1.0, -g, 0.0, g, 1.0],
            vec![2.0 / 15.0, 3.0 / 5.0, 8.0 / 15.0, 3.0 / 5.0, 2.0 / 15.0],
            5,
        ),
        FixedOperator::Midpoint => return QuadratureRule::midpoint(unit),
        FixedOperator::Trapezoid => return QuadratureRule::trapezoid(unit),
    };
    QuadratureRule::checked(
        Family::Fixed(op),
        nodes,
        weights,
        exact,
        WeightFunction::legendre(unit),
    )
}

/// Largest `d` such that the rule integrates `x^k` against `reference_w`
/// to within `1e-9 * scale` for every `k <= d`, scanning up to
/// `claimed + 3`. `None` when even constants fail.
pub fn exactness_degree(rule: &QuadratureRule, reference_w: &WeightFunction) -> Result<Option<usize>, IntegrationError> {
    let mut best = None;
    for k in 0..=rule.claimed_exactness() + 3 {
        let monomial = Polynomial::monomial(k, 1.0);
        let exact = reference_w.integrate_poly(&monomial)?;
        let approx = rule.apply_poly(&monomial);
        let spread: f64 = rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&x, &w)| (w * x.powi(k as i32)).abs())
            .sum();
        let scale = 1f64.max(exact.abs()).max(spread);
        if (approx - exact).abs() <= EXACTNESS_TOL * scale {
            best = Some(k);
        } else {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn legendre() -> WeightFunction {
        WeightFunction::legendre(Interval::symmetric_unit())
    }

    fn assert_rule(rule: &QuadratureRule, nodes: &[f64], weights: &[f64]) {
        assert_eq!(rule.len(), nodes.len());
        for (got, want) in rule.nodes().iter().zip(nodes) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-14);
        }
        for (got, want) in rule.weights().iter().zip(weights) {
            assert_abs_diff_eq!(got, want, epsilon = 1e-14);
        }
    }

    #[test]
    fn gauss_examples() {
        let g = 3f64.sqrt() / 3.0;
        assert_rule(&build_gauss(&legendre(), 2).unwrap(), &[-g, g], &[1.0, 1.0]);
        assert_rule(&build_gauss(&legendre(), 1).unwrap(), &[0.0], &[2.0]);
        let r = 0.6f64.sqrt();
        assert_rule(
            &build_gauss(&legendre(), 3).unwrap(),
            &[-r, 0.0, r],
            &[5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0],
        );
    }

    #[test]
    fn lobatto_examples() {
        let l = 5f64.sqrt() / 5.0;
        let rule = build_lobatto(&legendre(), 4).unwrap();
        assert_rule(&rule, &[-1.0, -l, l, 1.0], &[1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0]);
        assert_abs_diff_eq!(rule.apply(|_| 1.0), 2.0, epsilon = 1e-14);
        assert_rule(
            &build_lobatto(&legendre(), 3).unwrap(),
            &[-1.0, 0.0, 1.0],
            &[1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0],
        );
        assert_eq!(rule.claimed_exactness(), 5);
    }

    #[test]
    fn radau_examples() {
        let left = build_radau_left(&legendre(), 2).unwrap();
        assert_rule(&left, &[-1.0, 1.0 / 3.0], &[0.5, 1.5]);
        let right = build_radau_right(&legendre(), 2).unwrap();
        assert_rule(&right, &[-1.0 / 3.0, 1.0], &[1.5, 0.5]);
        assert_abs_diff_eq!(left.apply(|_| 1.0), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(right.apply(|_| 1.0), 2.0, epsilon = 1e-14);
        assert_eq!(left.claimed_exactness(), 2);
    }

    #[test]
    fn point_minimums() {
        assert!(matches!(build_gauss(&legendre(), 0), Err(RuleError::TooFewPoints { min: 1, .. })));
        assert!(matches!(build_lobatto(&legendre(), 2), Err(RuleError::TooFewPoints { min: 3, .. })));
        assert!(matches!(build_radau_left(&legendre(), 1), Err(RuleError::TooFewPoints { min: 2, .. })));
        assert!(matches!(build_radau_right(&legendre(), 1), Err(RuleError::TooFewPoints { min: 2, .. })));
    }

    #[test]
    fn fixed_examples() {
        let cheb = fixed_operator(FixedOperator::Cheb3).unwrap();
        assert_abs_diff_eq!(cheb.apply(|_| 1.0), 2.0, epsilon = 1e-15);
        let smp = fixed_operator(FixedOperator::Simpson).unwrap();
        assert_abs_diff_eq!(smp.apply(|x| x * x), 2.0 / 3.0, epsilon = 1e-15);
        let blend = fixed_operator(FixedOperator::Blend).unwrap();
        assert_abs_diff_eq!(blend.apply(|x| x.powi(6)), 14.0 / 45.0, epsilon = 1e-15);
        assert!("Gauss7".parse::<FixedOperator>().is_err());
        assert_eq!("blend".parse::<FixedOperator>().unwrap(), FixedOperator::Blend);
    }

    #[test]
    fn apply_examples() {
        let g2 = fixed_operator(FixedOperator::G2).unwrap();
        assert_abs_diff_eq!(g2.apply(|x| x.powi(4)), 2.0 / 9.0, epsilon = 1e-15);
        let lob4 = fixed_operator(FixedOperator::Lob4).unwrap();
        assert_abs_diff_eq!(lob4.apply(|x| x.powi(6)), 26.0 / 75.0, epsilon = 1e-15);
        assert_eq!(lob4.apply(|_| 0.0), 0.0);
    }

    #[test]
    fn exactness_examples() {
        let w = legendre();
        assert_eq!(exactness_degree(&build_gauss(&w, 2).unwrap(), &w).unwrap(), Some(3));
        assert_eq!(exactness_degree(&build_radau_left(&w, 2).unwrap(), &w).unwrap(), Some(2));
        let cheb = fixed_operator(FixedOperator::Cheb3).unwrap();
        assert_eq!(exactness_degree(&cheb, &w).unwrap(), Some(3));
        let blend = fixed_operator(FixedOperator::Blend).unwrap();
        assert_eq!(exactness_degree(&blend, &w).unwrap(), Some(5));
    }

    #[test]
    fn midpoint_trapezoid_on_any_interval() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let mid = QuadratureRule::midpoint(iv).unwrap();
        let trap = QuadratureRule::trapezoid(iv).unwrap();
        assert_eq!(mid.apply(|x| x * x), 0.25);
        assert_eq!(trap.apply(|x| x * x), 0.5);
    }

    #[test]
    fn non_unit_interval_and_weight() {
        let iv = Interval::new(0.0, 2.0).unwrap();
        let w = WeightFunction::from_spec("poly:1,0,1", iv).unwrap();
        for points in 2..=5 {
            let rule = build_radau_right(&w, points).unwrap();
            assert!(exactness_degree(&rule, &w).unwrap().unwrap() >= rule.claimed_exactness());
        }
    }

    #[test]
    fn numeric_weight_rules() {
        let w = WeightFunction::function("exp", f64::exp, Interval::symmetric_unit()).unwrap();
        let rule = build_gauss(&w, 3).unwrap();
        assert!(exactness_degree(&rule, &w).unwrap().unwrap() >= 5);
        let rule = build_lobatto(&w, 4).unwrap();
        assert!(exactness_degree(&rule, &w).unwrap().unwrap() >= 5);
    }

    #[test]
    fn text_and_json_forms() {
        let rule = build_gauss(&legendre(), 2).unwrap();
        let table = rule.to_text_table();
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(
            lines[0],
            "# family=gauss points=2 claimed_exactness=3 weight=legendre interval=-1.00000000000 1.00000000000"
        );
        assert_eq!(lines[1], "node weight");
        assert_eq!(lines[2], "-0.577350269190 1.00000000000");
        let doc: serde_json::Value = serde_json::from_str(&rule.to_json()).unwrap();
        assert_eq!(doc["family"], "gauss");
        assert_eq!(doc["claimed_exactness"], 3);
        assert_eq!(doc["nodes"][1].as_f64().unwrap(), rule.nodes()[1]);
        assert_eq!(rule.to_json(), rule.to_json());
    }
}
