//! The attaching method: polynomials of degree at most `n` that interpolate an
//! n-convex function at nodes with multiplicities, together with a sampled
//! certificate of the resulting sign pattern of `f - p`.

use std::fmt;

use thiserror::Error;

use crate::divdiff::{
    self, CertificateOptions, DivDiffError, Sign, SignCertificate, SignPattern,
};
use crate::function::TestFunction;
use crate::poly::{Interval, Polynomial};

/// Relative agreement of successive extrapolated coefficient vectors.
pub const STABILIZATION_TOL: f64 = 1e-9;
/// Agreement a stable estimate needs with the following spacing.
pub const CONFIRMATION_TOL: f64 = 1e-8;
/// Number of terms in the default schedule.
pub const SCHEDULE_LEN: usize = 40;
/// Neville extrapolation uses at most this many levels.
pub const EXTRAPOLATION_DEPTH: usize = 12;
/// Ratio between successive spacings of the default schedule.
pub const SCHEDULE_RATIO: f64 = 0.8;
/// Tolerance on `|p(x_j) - f(x_j)| / (1 + |f(x_j)|)`.
pub const NODE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SupportError {
    #[error("multiplicities sum to {got}, expected n + 1 = {expected}")]
    MultiplicitySum { expected: usize, got: usize },
    #[error("{nodes} nodes given with {mults} multiplicities")]
    LengthMismatch { nodes: usize, mults: usize },
    #[error("multiplicity must be positive at node {0}")]
    ZeroMultiplicity(f64),
    #[error("endpoint node {node} has multiplicity {mult}; points can only be attached to interior nodes")]
    EndpointMultiplicity { node: f64, mult: usize },
    #[error("{k} nodes exceed the order n = {n}")]
    TooManyNodes { k: usize, n: usize },
    #[error("order must be at least 1")]
    ZeroOrder,
    #[error("nodes must be strictly increasing")]
    NodesNotIncreasing,
    #[error("node {node} lies outside {interval}")]
    NodeOutside { node: f64, interval: Interval },
    #[error("order {0} is even; use the even-order constructors")]
    EvenOrder(usize),
    #[error("node {node} must lie strictly inside {interval}")]
    NotInterior { node: f64, interval: Interval },
    #[error("layout error: {0}")]
    Layout(String),
    #[error("no schedule value keeps the perturbed nodes apart (gap {gap})")]
    EmptySchedule { gap: f64 },
    #[error("schedule must be positive and strictly decreasing")]
    BadSchedule,
    #[error("coefficients did not stabilize; last two estimates {previous:?} and {last:?}")]
    NonConvergence { previous: Vec<f64>, last: Vec<f64> },
    #[error("interpolant misses f at node {node} by {residual:e}")]
    NodeMismatch { node: f64, residual: f64 },
    #[error("one-sided certificate failed: worst margin {worst_margin:e} at {worst_at:?}")]
    CertificateFailed {
        worst_margin: f64,
        worst_at: Option<f64>,
    },
    #[error(transparent)]
    DivDiff(#[from] DivDiffError),
}

/// Nodes `x_1 < ... < x_k` in `[a, b]` with multiplicities summing to `n + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSpec {
    interval: Interval,
    order: usize,
    nodes: Vec<f64>,
    mults: Vec<usize>,
}

impl NodeSpec {
    pub fn new(interval: Interval, order: usize, nodes: Vec<f64>, mults: Vec<usize>) -> Result<Self, SupportError> {
        if order == 0 {
            return Err(SupportError::ZeroOrder);
        }
        if nodes.len() != mults.len() {
            return Err(SupportError::LengthMismatch {
                nodes: nodes.len(),
                mults: mults.len(),
            });
        }
        if let Some(i) = mults.iter().position(|&l| l == 0) {
            return Err(SupportError::ZeroMultiplicity(nodes[i]));
        }
        let total: usize = mults.iter().sum();
        if total != order + 1 {
            return Err(SupportError::MultiplicitySum {
                expected: order + 1,
                got: total,
            });
        }
        if nodes.len() > order {
            return Err(SupportError::TooManyNodes { k: nodes.len(), n: order });
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(SupportError::NodesNotIncreasing);
        }
        if let Some(&node) = nodes.iter().find(|&&x| !interval.contains(x)) {
            return Err(SupportError::NodeOutside { node, interval });
        }
        for (&node, &mult) in nodes.iter().zip(&mults) {
            if (node == interval.a() || node == interval.b()) && mult != 1 {
                return Err(SupportError::EndpointMultiplicity { node, mult });
            }
        }
        Ok(NodeSpec {
            interval,
            order,
            nodes,
            mults,
        })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// Each node repeated by its multiplicity.
    pub fn expanded_nodes(&self) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.mults)
            .flat_map(|(&x, &l)| std::iter::repeat_n(x, l))
            .collect()
    }

    /// `x_j, x_j + eps, ..., x_j + (l_j - 1) eps` for every node.
    pub fn perturbed_nodes(&self, eps: f64) -> Vec<f64> {
        self.nodes
            .iter()
            .zip(&self.mults)
            .flat_map(|(&x, &l)| (0..l).map(move |i| x + i as f64 * eps))
            .collect()
    }

    /// Smallest distance from a node to the next node, or to `b` for the last one.
    pub fn gap(&self) -> f64 {
        let mut edges = self.nodes.clone();
        edges.push(self.interval.b());
        edges
            .windows(2)
            .map(|w| w[1] - w[0])
            .filter(|&d| d > 0.0)
            .fold(f64::INFINITY, f64::min)
    }

    fn max_mult(&self) -> usize {
        self.mults.iter().copied().max().unwrap_or(1)
    }

    /// `eps_m = 0.8^m * 0.95 * gap / (l_max - 1)` for `m = 0..40`, where `l_max`
    /// is the largest multiplicity; the widest cluster then spans 95% of the gap.
    pub fn default_schedule(&self) -> Vec<f64> {
        let first = 0.95 * self.gap() / (self.max_mult().max(2) - 1) as f64;
        (0..SCHEDULE_LEN as i32).map(|m| first * SCHEDULE_RATIO.powi(m)).collect()
    }

    /// The sign pattern `f - p` must follow.
    pub fn pattern(&self) -> SignPattern {
        SignPattern::attaching(self.order, &self.nodes, &self.mults)
    }
}

impl fmt::Display for NodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} on {}:", self.order, self.interval)?;
        for (x, l) in self.nodes.iter().zip(&self.mults) {
            write!(f, " {x}({l})")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttachMethod {
    EpsilonLimit,
    Confluent,
}

impl AttachMethod {
    pub fn name(self) -> &'static str {
        match self {
            AttachMethod::EpsilonLimit => "epsilon_limit",
            AttachMethod::Confluent => "confluent",
        }
    }

    /// Confluent when `f` has derivatives up to the largest multiplicity minus one, else the ε-limit.
    pub fn preferred(f: &TestFunction, spec: &NodeSpec) -> Self {
        if f.has_derivative(spec.max_mult() - 1) {
            AttachMethod::Confluent
        } else {
            AttachMethod::EpsilonLimit
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportResult {
    pub polynomial: Polynomial,
    pub spec: NodeSpec,
    pub pattern: SignPattern,
    pub certificate: SignCertificate,
    pub method: AttachMethod,
    /// Largest `|p(x_j) - f(x_j)| / (1 + |f(x_j)|)`.
    pub node_residual: f64,
    /// Schedule entries consumed; zero for the confluent method.
    pub iterations: usize,
}

impl SupportResult {
    /// Re-run the certificate on a fresh grid with the given offset in `(0, 1)`.
    pub fn recheck(&self, f: &TestFunction, offset: f64) -> Result<SignCertificate, SupportError> {
        let opts = CertificateOptions {
            offset,
            ..CertificateOptions::default()
        };
        Ok(divdiff::check_sign_pattern_with(
            |x| f.eval(x),
            &self.polynomial,
            &self.pattern,
            self.spec.interval(),
            opts,
        )?)
    }
}

fn finish(
    f: &TestFunction,
    spec: &NodeSpec,
    polynomial: Polynomial,
    method: AttachMethod,
    iterations: usize,
) -> Result<SupportResult, SupportError> {
    let mut node_residual = 0.0f64;
    for &x in spec.nodes() {
        let fx = f.eval(x);
        let residual = (polynomial.eval(x) - fx).abs() / (1.0 + fx.abs());
        if !(residual <= NODE_TOL) {
            return Err(SupportError::NodeMismatch { node: x, residual });
        }
        node_residual = node_residual.max(residual);
    }
    let pattern = spec.pattern();
    let certificate = divdiff::check_sign_pattern_with(
        |x| f.eval(x),
        &polynomial,
        &pattern,
        spec.interval(),
        CertificateOptions::default(),
    )?;
    Ok(SupportResult {
        polynomial,
        spec: spec.clone(),
        pattern,
        certificate,
        method,
        node_residual,
        iterations,
    })
}

fn padded(p: &Polynomial, len: usize) -> Vec<f64> {
    (0..len).map(|k| p.coeff(k)).collect()
}

fn relative_change(prev: &[f64], next: &[f64]) -> f64 {
    let diff = prev
        .iter()
        .zip(next)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let scale = next.iter().map(|c| c.abs()).fold(1.0, f64::max);
    diff / scale
}

/// Interpolate `f` on the perturbed sequences for a decreasing schedule of
/// spacings and extrapolate the coefficient vectors to zero spacing with a
/// Neville table. Each new table entry is compared with its two parents
/// (the previous level on the same spacing, and the same level one spacing
/// earlier); the first entry within [`STABILIZATION_TOL`] of both is returned.
///
/// Spacings that would push a perturbed point to or past the next node are dropped.
pub fn attach_epsilon_limit(
    f: &TestFunction,
    spec: &NodeSpec,
    schedule: Option<&[f64]>,
) -> Result<SupportResult, SupportError> {
    let schedule: Vec<f64> = match schedule {
        Some(s) => {
            if s.iter().any(|&e| !(e > 0.0)) || !s.windows(2).all(|w| w[0] > w[1]) {
                return Err(SupportError::BadSchedule);
            }
            s.to_vec()
        }
        None => spec.default_schedule(),
    };
    let gap = spec.gap();
    let stretch = (spec.max_mult() - 1) as f64;
    let usable: Vec<f64> = schedule.into_iter().filter(|&e| stretch * e < gap).collect();
    if usable.is_empty() {
        return Err(SupportError::EmptySchedule { gap });
    }

    let len = spec.order() + 1;
    let mut eps: Vec<f64> = Vec::with_capacity(usable.len());
    let mut previous_row: Vec<Vec<f64>> = Vec::new();
    let mut history: Vec<Vec<f64>> = Vec::new();
    let mut candidate: Option<Vec<f64>> = None;

    let cluster = spec.max_mult() - 1;
    let amplification = 2f64.powi(cluster as i32) / (1..=cluster).map(|i| i as f64).product::<f64>();
    let mut scale: Option<f64> = None;

    for (i, &e) in usable.iter().enumerate() {
        let points = spec.perturbed_nodes(e);
        let values: Vec<f64> = points.iter().map(|&x| f.eval(x)).collect();
        // rounding in f is amplified by eps^-(l-1) in the widest cluster; past
        // the tolerance every further spacing is noise
        let magnitude = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let noise = f64::EPSILON * magnitude * amplification / e.powi(cluster as i32);
        let p = divdiff::newton_interpolant(&points, &values)?;
        let scale = *scale.get_or_insert_with(|| p.coeffs().iter().fold(1.0f64, |m, c| m.max(c.abs())));
        if noise > STABILIZATION_TOL * scale {
            break;
        }
        eps.push(e);

        let depth = i.min(EXTRAPOLATION_DEPTH);
        let mut row = vec![padded(&p, len)];
        let mut stable: Option<Vec<f64>> = None;
        for k in 1..=depth {
            let upper = &previous_row[k - 1];
            let lower = &row[k - 1];
            let denom = eps[i - k] - eps[i];
            let t: Vec<f64> = lower
                .iter()
                .zip(upper)
                .map(|(lo, up)| lo + eps[i] * (lo - up) / denom)
                .collect();
            let change = relative_change(lower, &t).max(relative_change(upper, &t));
            if stable.is_none() && change < STABILIZATION_TOL {
                stable = Some(t.clone());
            }
            row.push(t);
        }
        // a stable entry counts once some entry of the next row confirms it
        if let Some(prev) = &candidate {
            if row[1..].iter().any(|t| relative_change(prev, t) < CONFIRMATION_TOL) {
                let estimate = candidate.take().expect("checked above");
                return finish(f, spec, Polynomial::new(estimate), AttachMethod::EpsilonLimit, i + 1);
            }
        }
        candidate = stable;
        history.push(row[depth].clone());
        previous_row = row;
    }

    let Some(last) = history.pop() else {
        return Err(SupportError::EmptySchedule { gap });
    };
    Err(SupportError::NonConvergence {
        previous: history.pop().unwrap_or_else(|| last.clone()),
        last,
    })
}

/// The Hermite interpolant matching `f^(i)(x_j)` for `i < l_j`.
pub fn attach_confluent(f: &TestFunction, spec: &NodeSpec) -> Result<SupportResult, SupportError> {
    let p = divdiff::confluent_interpolant(spec, f)?;
    finish(f, spec, p, AttachMethod::Confluent, 0)
}

pub fn attach(f: &TestFunction, spec: &NodeSpec, method: AttachMethod) -> Result<SupportResult, SupportError> {
    match method {
        AttachMethod::EpsilonLimit => attach_epsilon_limit(f, spec, None),
        AttachMethod::Confluent => attach_confluent(f, spec),
    }
}

fn one_sided(
    f: &TestFunction,
    spec: NodeSpec,
    method: Option<AttachMethod>,
    side: Sign,
) -> Result<SupportResult, SupportError> {
    debug_assert_eq!(spec.pattern().one_sided(spec.interval()), Some(side));
    let method = method.unwrap_or_else(|| AttachMethod::preferred(f, &spec));
    let result = attach(f, &spec, method)?;
    if !result.certificate.pass {
        return Err(SupportError::CertificateFailed {
            worst_margin: result.certificate.worst_margin,
            worst_at: result.certificate.worst_at,
        });
    }
    Ok(result)
}

fn require_interior(iv: Interval, nodes: &[f64]) -> Result<(), SupportError> {
    match nodes.iter().find(|&&x| !iv.contains_interior(x)) {
        Some(&node) => Err(SupportError::NotInterior { node, interval: iv }),
        None => Ok(()),
    }
}

/// Support from below at one interior point for odd `n`: `p(x1) = f(x1)`, `p <= f`.
pub fn support_odd(
    f: &TestFunction,
    n: usize,
    x1: f64,
    method: Option<AttachMethod>,
) -> Result<SupportResult, SupportError> {
    if n % 2 == 0 {
        return Err(SupportError::EvenOrder(n));
    }
    let iv = f.interval();
    require_interior(iv, &[x1])?;
    let spec = NodeSpec::new(iv, n, vec![x1], vec![n + 1])?;
    one_sided(f, spec, method, Sign::Positive)
}

/// Support from below touching at `m` interior points (order `2m - 1`, all multiplicities 2).
pub fn support_multi_odd(
    f: &TestFunction,
    nodes: &[f64],
    method: Option<AttachMethod>,
) -> Result<SupportResult, SupportError> {
    if nodes.is_empty() {
        return Err(SupportError::Layout("at least one interior node is required".into()));
    }
    let iv = f.interval();
    require_interior(iv, nodes)?;
    let spec = NodeSpec::new(iv, 2 * nodes.len() - 1, nodes.to_vec(), vec![2; nodes.len()])?;
    one_sided(f, spec, method, Sign::Positive)
}

/// Upper envelope through `a`, interior points and `b`
/// (order `2m - 1` for `m + 1` nodes, multiplicities `1, 2, ..., 2, 1`).
pub fn envelope_above_odd(
    f: &TestFunction,
    nodes: &[f64],
    method: Option<AttachMethod>,
) -> Result<SupportResult, SupportError> {
    let iv = f.interval();
    if nodes.len() < 3 {
        return Err(SupportError::Layout(
            "need a, at least one interior node, and b".into(),
        ));
    }
    if nodes[0] != iv.a() || nodes[nodes.len() - 1] != iv.b() {
        return Err(SupportError::Layout(format!(
            "first and last nodes must be the endpoints of {iv}"
        )));
    }
    require_interior(iv, &nodes[1..nodes.len() - 1])?;
    let mut mults = vec![2; nodes.len()];
    mults[0] = 1;
    mults[nodes.len() - 1] = 1;
    let spec = NodeSpec::new(iv, 2 * nodes.len() - 3, nodes.to_vec(), mults)?;
    one_sided(f, spec, method, Sign::Negative)
}

/// Support from below through `a` and interior points
/// (order `2m` for `m + 1` nodes, multiplicities `1, 2, ..., 2`).
pub fn support_even_left(
    f: &TestFunction,
    nodes: &[f64],
    method: Option<AttachMethod>,
) -> Result<SupportResult, SupportError> {
    let iv = f.interval();
    if nodes.len() < 2 {
        return Err(SupportError::Layout("need a and at least one interior node".into()));
    }
    if nodes[0] != iv.a() {
        return Err(SupportError::Layout(format!("first node must be the left endpoint of {iv}")));
    }
    require_interior(iv, &nodes[1..])?;
    let mut mults = vec![2; nodes.len()];
    mults[0] = 1;
    let spec = NodeSpec::new(iv, 2 * nodes.len() - 2, nodes.to_vec(), mults)?;
    one_sided(f, spec, method, Sign::Positive)
}

/// Upper envelope through interior points and `b`
/// (order `2m` for `m + 1` nodes, multiplicities `2, ..., 2, 1`).
pub fn envelope_even_right(
    f: &TestFunction,
    nodes: &[f64],
    method: Option<AttachMethod>,
) -> Result<SupportResult, SupportError> {
    let iv = f.interval();
    if nodes.len() < 2 {
        return Err(SupportError::Layout("need at least one interior node and b".into()));
    }
    let last = nodes.len() - 1;
    if nodes[last] != iv.b() {
        return Err(SupportError::Layout(format!("last node must be the right endpoint of {iv}")));
    }
    require_interior(iv, &nodes[..last])?;
    let mut mults = vec![2; nodes.len()];
    mults[last] = 1;
    let spec = NodeSpec::new(iv, 2 * nodes.len() - 2, nodes.to_vec(), mults)?;
    one_sided(f, spec, method, Sign::Negative)
}
