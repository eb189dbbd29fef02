//! Divided differences and Newton/confluent (Hermite) interpolation, plus
//! grid tests for n-convexity and sign-pattern certificates.

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::function::TestFunction;
use crate::poly::{Interval, Polynomial};
use crate::support::NodeSpec;

/// Points closer than this make the Vandermonde quotient ill-conditioned.
pub const VANDERMONDE_WARN_SPACING: f64 = 1e-10;
/// Number of random increasing tuples tested by [`is_n_convex_on_grid`].
pub const RANDOM_TUPLES: usize = 200;
/// Relative tolerance on `D / V` when testing n-convexity.
pub const CONVEXITY_TOL: f64 = 1e-10;
const TUPLE_SEED: u64 = 0x5eed_d1ff;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DivDiffError {
    #[error("duplicate interpolation point {0}")]
    DuplicatePoint(f64),
    #[error("{points} points but {values} values")]
    LengthMismatch { points: usize, values: usize },
    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("grid must be strictly increasing (violated at index {0})")]
    UnsortedGrid(usize),
    #[error("no derivative of order {order} available at node {node}")]
    MissingDerivative { node: f64, order: usize },
    #[error("sign pattern needs {expected} signs for {boundaries} boundaries, got {got}")]
    PatternLength {
        boundaries: usize,
        expected: usize,
        got: usize,
    },
    #[error("at least 2 samples per interval are required, got {0}")]
    TooFewSamples(usize),
}

fn check_lengths(points: &[f64], values: &[f64], needed: usize) -> Result<(), DivDiffError> {
    if points.len() != values.len() {
        return Err(DivDiffError::LengthMismatch {
            points: points.len(),
            values: values.len(),
        });
    }
    if points.len() < needed {
        return Err(DivDiffError::TooFewPoints {
            needed,
            got: points.len(),
        });
    }
    Ok(())
}

/// Sort `(point, value)` pairs ascending and reject duplicates.
fn sorted_pairs(points: &[f64], values: &[f64]) -> Result<(Vec<f64>, Vec<f64>), DivDiffError> {
    let mut pairs: Vec<(f64, f64)> = points.iter().copied().zip(values.iter().copied()).collect();
    pairs.sort_by(|l, r| l.0.total_cmp(&r.0));
    if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(DivDiffError::DuplicatePoint(w[0].0));
    }
    Ok(pairs.into_iter().unzip())
}

/// Triangular table of divided differences, `table[k][i] = [x_i, ..., x_{i+k}; f]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DividedDiffTable {
    points: Vec<f64>,
    table: Vec<Vec<f64>>,
}

impl DividedDiffTable {
    pub fn new(points: &[f64], values: &[f64]) -> Result<Self, DivDiffError> {
        check_lengths(points, values, 1)?;
        let (points, values) = sorted_pairs(points, values)?;
        let m = points.len();
        let mut table = Vec::with_capacity(m);
        table.push(values);
        for k in 1..m {
            let prev = &table[k - 1];
            let row: Vec<f64> = (0..m - k)
                .map(|i| (prev[i + 1] - prev[i]) / (points[i + k] - points[i]))
                .collect();
            table.push(row);
        }
        Ok(DividedDiffTable { points, table })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.table
    }

    /// `[x_i, ..., x_{i+k}; f]`.
    pub fn get(&self, k: usize, i: usize) -> Option<f64> {
        self.table.get(k).and_then(|row| row.get(i)).copied()
    }

    /// The full divided difference over all points.
    pub fn top(&self) -> f64 {
        self.table.last().and_then(|r| r.first()).copied().unwrap_or(0.0)
    }

    /// Newton coefficients `[x_1; f], [x_1, x_2; f], ...`.
    pub fn newton_coeffs(&self) -> Vec<f64> {
        self.table.iter().map(|row| row[0]).collect()
    }

    pub fn interpolant(&self) -> Polynomial {
        newton_to_monomial(&self.points, &self.newton_coeffs())
    }
}

/// Expand `c_0 + c_1 (x - z_0) + ... + c_m (x - z_0)...(x - z_{m-1})`.
pub fn newton_to_monomial(nodes: &[f64], coeffs: &[f64]) -> Polynomial {
    let Some((&last, rest)) = coeffs.split_last() else {
        return Polynomial::zero();
    };
    rest.iter()
        .enumerate()
        .rev()
        .fold(Polynomial::constant(last), |acc, (k, &c)| {
            &(&acc * &Polynomial::linear_factor(nodes[k])) + &Polynomial::constant(c)
        })
}

/// `[x_1, ..., x_m; f]` by the recursive definition; points are sorted first.
pub fn divided_difference(points: &[f64], values: &[f64]) -> Result<f64, DivDiffError> {
    Ok(DividedDiffTable::new(points, values)?.top())
}

/// Determinant form of a divided difference, `D(x; f) / V(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeterminantQuotient {
    pub value: f64,
    /// `D(x_1, ..., x_m; f)`.
    pub numerator: f64,
    /// The Vandermonde determinant `V(x_1, ..., x_m)`.
    pub vandermonde: f64,
    /// Set when two points are closer than [`VANDERMONDE_WARN_SPACING`].
    pub ill_conditioned: bool,
}

/// `V(x_1, ..., x_m) = prod_{i<j} (x_j - x_i)`, in the given order.
pub fn vandermonde(points: &[f64]) -> f64 {
    let mut v = 1.0;
    for j in 0..points.len() {
        for i in 0..j {
            v *= points[j] - points[i];
        }
    }
    v
}

/// Evaluate `D / V` from the determinants themselves.
///
/// `D` is expanded along its last row (the values of `f`); each cofactor is a
/// Vandermonde determinant of the remaining points, evaluated as a product.
pub fn divided_difference_det(
    points: &[f64],
    values: &[f64],
) -> Result<DeterminantQuotient, DivDiffError> {
    check_lengths(points, values, 2)?;
    sorted_pairs(points, values)?;
    let m = points.len();
    let mut numerator = 0.0;
    let mut minor_points = Vec::with_capacity(m - 1);
    for j in 0..m {
        minor_points.clear();
        minor_points.extend(points.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x));
        // cofactor sign for entry (m, j+1) of an m x m matrix
        let sign = if (m + j + 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        numerator += sign * values[j] * vandermonde(&minor_points);
    }
    let v = vandermonde(points);
    let mut min_gap = f64::INFINITY;
    for j in 0..m {
        for i in 0..j {
            min_gap = min_gap.min((points[j] - points[i]).abs());
        }
    }
    Ok(DeterminantQuotient {
        value: numerator / v,
        numerator,
        vandermonde: v,
        ill_conditioned: min_gap < VANDERMONDE_WARN_SPACING,
    })
}

/// The interpolation polynomial of degree `< m` through `m` distinct points.
pub fn newton_interpolant(points: &[f64], values: &[f64]) -> Result<Polynomial, DivDiffError> {
    Ok(DividedDiffTable::new(points, values)?.interpolant())
}

/// Hermite interpolant: node `x_j` repeated `l_j` times, with
/// `[x, ..., x (j+1 copies); f] = f^(j)(x) / j!`.
pub fn confluent_interpolant(spec: &NodeSpec, f: &TestFunction) -> Result<Polynomial, DivDiffError> {
    let z = spec.expanded_nodes();
    let m = z.len();
    let value_at = |x: f64, order: usize| -> Result<f64, DivDiffError> {
        let d = f
            .derivative(order, x)
            .ok_or(DivDiffError::MissingDerivative { node: x, order })?;
        let factorial: f64 = (1..=order).map(|i| i as f64).product();
        Ok(d / factorial)
    };
    let mut row: Vec<f64> = z.iter().map(|&x| f.eval(x)).collect();
    let mut coeffs = Vec::with_capacity(m);
    coeffs.push(row[0]);
    for k in 1..m {
        let mut next = Vec::with_capacity(m - k);
        for i in 0..m - k {
            if z[i + k] == z[i] {
                next.push(value_at(z[i], k)?);
            } else {
                next.push((row[i + 1] - row[i]) / (z[i + k] - z[i]));
            }
        }
        coeffs.push(next[0]);
        row = next;
    }
    Ok(newton_to_monomial(&z, &coeffs))
}

/// A tuple of grid points whose divided difference is negative.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityWitness {
    /// Grid indices, increasing.
    pub indices: Vec<usize>,
    pub tuple: Vec<f64>,
    /// `D(x_1, ..., x_{n+2}; f)`.
    pub determinant: f64,
    pub divided_difference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityVerdict {
    pub convex: bool,
    pub order: usize,
    pub tuples_tested: usize,
    /// Lexicographically smallest violating tuple, if any.
    pub witness: Option<ConvexityWitness>,
}

/// Grid evidence for n-convexity: every consecutive `(n+2)`-window of the grid
/// plus [`RANDOM_TUPLES`] seeded random increasing tuples must satisfy
/// `D >= -1e-10 * max(1, max|f|) * V`.
pub fn is_n_convex_on_grid(
    f: &TestFunction,
    n: usize,
    grid: &[f64],
) -> Result<ConvexityVerdict, DivDiffError> {
    let size = n + 2;
    if grid.len() < size {
        return Err(DivDiffError::TooFewPoints {
            needed: size,
            got: grid.len(),
        });
    }
    if let Some(i) = grid.windows(2).position(|w| w[0] >= w[1]) {
        return Err(DivDiffError::UnsortedGrid(i + 1));
    }
    let values: Vec<f64> = grid.iter().map(|&x| f.eval(x)).collect();
    let scale = values.iter().fold(1f64, |m, v| m.max(v.abs()));
    let threshold = -CONVEXITY_TOL * scale;

    let mut tuples: Vec<Vec<usize>> = (0..=grid.len() - size)
        .map(|start| (start..start + size).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(TUPLE_SEED ^ n as u64);
    for _ in 0..RANDOM_TUPLES {
        let mut idx = index::sample(&mut rng, grid.len(), size).into_vec();
        idx.sort_unstable();
        tuples.push(idx);
    }

    let mut witness: Option<ConvexityWitness> = None;
    for idx in &tuples {
        let xs: Vec<f64> = idx.iter().map(|&i| grid[i]).collect();
        let ys: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
        let dd = divided_difference(&xs, &ys)?;
        if dd >= threshold && !dd.is_nan() {
            continue;
        }
        if witness.as_ref().is_some_and(|w| w.indices <= *idx) {
            continue;
        }
        witness = Some(ConvexityWitness {
            indices: idx.clone(),
            determinant: dd * vandermonde(&xs),
            tuple: xs,
            divided_difference: dd,
        });
    }
    Ok(ConvexityVerdict {
        convex: witness.is_none(),
        order: n,
        tuples_tested: tuples.len(),
        witness,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    /// `(-1)^exponent`.
    pub fn alternating(exponent: usize) -> Sign {
        if exponent.is_multiple_of(2) {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Positive => 1.0,
            Sign::Negative => -1.0,
        }
    }
}

/// Prescribed sign of `f - p` on each interval cut out by the boundaries:
/// `I_0 = (-inf, x_1)`, `I_j = (x_j, x_{j+1})`, `I_k = (x_k, inf)`.
/// `None` leaves an interval unconstrained.
#[derive(Debug, Clone, PartialEq)]
pub struct SignPattern {
    boundaries: Vec<f64>,
    signs: Vec<Option<Sign>>,
}

impl SignPattern {
    pub fn new(boundaries: Vec<f64>, signs: Vec<Option<Sign>>) -> Result<Self, DivDiffError> {
        if signs.len() != boundaries.len() + 1 {
            return Err(DivDiffError::PatternLength {
                boundaries: boundaries.len(),
                expected: boundaries.len() + 1,
                got: signs.len(),
            });
        }
        Ok(SignPattern { boundaries, signs })
    }

    /// One sign everywhere.
    pub fn uniform(sign: Sign) -> Self {
        SignPattern {
            boundaries: Vec::new(),
            signs: vec![Some(sign)],
        }
    }

    /// Signs for an n-convex `f` and the attached polynomial: `I_j` carries
    /// `(-1)^(n + 1 - (l_1 + ... + l_j))`, so `I_0` gets `(-1)^(n+1)` and the last
    /// interval `+1` when the multiplicities sum to `n + 1`.
    pub fn attaching(n: usize, nodes: &[f64], mults: &[usize]) -> Self {
        let mut signs = Vec::with_capacity(nodes.len() + 1);
        let mut attached = 0usize;
        signs.push(Some(Sign::alternating(n + 1)));
        for &l in mults {
            attached += l;
            signs.push(Some(Sign::alternating((n + 1).abs_diff(attached))));
        }
        SignPattern {
            boundaries: nodes.to_vec(),
            signs,
        }
    }

    /// The alternation of an interpolant at `n + 1` simple nodes.
    pub fn interpolation(n: usize, nodes: &[f64]) -> Self {
        SignPattern::attaching(n, nodes, &vec![1; nodes.len()])
    }

    pub fn boundaries(&self) -> &[f64] {
        &self.boundaries
    }

    pub fn signs(&self) -> &[Option<Sign>] {
        &self.signs
    }

    /// The pieces `(lo, hi, sign)` of the pattern inside `iv`, skipping empty ones.
    pub fn pieces(&self, iv: Interval) -> Vec<(f64, f64, Option<Sign>)> {
        let mut edges = Vec::with_capacity(self.boundaries.len() + 2);
        edges.push(f64::NEG_INFINITY);
        edges.extend(self.boundaries.iter().copied());
        edges.push(f64::INFINITY);
        edges
            .windows(2)
            .zip(self.signs.iter())
            .filter_map(|(w, &s)| {
                let lo = w[0].max(iv.a());
                let hi = w[1].min(iv.b());
                (lo < hi).then_some((lo, hi, s))
            })
            .collect()
    }

    /// The single sign the pattern takes over the non-empty pieces in `iv`, if any.
    pub fn one_sided(&self, iv: Interval) -> Option<Sign> {
        let mut sign = None;
        for (_, _, s) in self.pieces(iv) {
            let s = s?;
            match sign {
                None => sign = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        sign
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertificateOptions {
    pub samples_per_interval: usize,
    /// Allowed violation of `sign * (f - p)`, relative to `1 + |f(x)|`.
    pub tol: f64,
    /// Samples within `exclusion * (b - a)` of a boundary are skipped.
    pub exclusion: f64,
    /// Grid shift in `[0, 1)`; zero includes interval endpoints.
    pub offset: f64,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions {
            samples_per_interval: 1000,
            tol: 1e-9,
            exclusion: 1e-6,
            offset: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignCertificate {
    pub pass: bool,
    /// Smallest normalized margin `sign * (f - p) / (1 + |f|)` seen.
    pub worst_margin: f64,
    pub worst_at: Option<f64>,
    pub samples: usize,
    pub tol: f64,
}

/// Sample `sign * (f - p) >= -tol` on each piece of the pattern inside `iv`.
pub fn check_sign_pattern<F: Fn(f64) -> f64>(
    f: F,
    p: &Polynomial,
    pattern: &SignPattern,
    iv: Interval,
    samples: usize,
) -> Result<SignCertificate, DivDiffError> {
    check_sign_pattern_with(
        f,
        p,
        pattern,
        iv,
        CertificateOptions {
            samples_per_interval: samples,
            ..CertificateOptions::default()
        },
    )
}

pub fn check_sign_pattern_with<F: Fn(f64) -> f64>(
    f: F,
    p: &Polynomial,
    pattern: &SignPattern,
    iv: Interval,
    opts: CertificateOptions,
) -> Result<SignCertificate, DivDiffError> {
    let samples = opts.samples_per_interval;
    if samples < 2 {
        return Err(DivDiffError::TooFewSamples(samples));
    }
    let radius = opts.exclusion * iv.length();
    let mut worst_margin = f64::INFINITY;
    let mut worst_at = None;
    let mut checked = 0usize;
    for (lo, hi, sign) in pattern.pieces(iv) {
        let Some(sign) = sign else { continue };
        for i in 0..samples {
            let t = if opts.offset == 0.0 {
                i as f64 / (samples - 1) as f64
            } else {
                (i as f64 + opts.offset) / samples as f64
            };
            let x = lo + (hi - lo) * t;
            if pattern.boundaries.iter().any(|&node| (x - node).abs() < radius) {
                continue;
            }
            let fx = f(x);
            let margin = sign.value() * (fx - p.eval(x)) / (1.0 + fx.abs());
            checked += 1;
            if margin < worst_margin || margin.is_nan() {
                worst_margin = margin;
                worst_at = Some(x);
            }
        }
    }
    Ok(SignCertificate {
        pass: worst_margin >= -opts.tol,
        worst_margin,
        worst_at,
        samples: checked,
        tol: opts.tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::corpus;
    use approx::assert_abs_diff_eq;

    fn values(points: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
        points.iter().map(|&x| f(x)).collect()
    }

    #[test]
    fn recursive_examples() {
        assert_eq!(divided_difference(&[0.0], &[7.0]).unwrap(), 7.0);
        let pts = [0.0, 1.0, 2.0];
        assert_abs_diff_eq!(divided_difference(&pts, &values(&pts, |x| x * x)).unwrap(), 1.0);
        let pts = [-1.0, 0.0, 1.0, 2.0];
        assert_abs_diff_eq!(
            divided_difference(&pts, &values(&pts, |x| x * x * x)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn determinant_examples() {
        let pts = [0.0, 1.0];
        assert_abs_diff_eq!(divided_difference_det(&pts, &[0.0, 1.0]).unwrap().value, 1.0);
        let pts = [0.0, 1.0, 2.0];
        let q = divided_difference_det(&pts, &values(&pts, |x| x * x)).unwrap();
        assert_abs_diff_eq!(q.value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.vandermonde, 2.0);
        assert!(!q.ill_conditioned);
        let q = divided_difference_det(&[0.0, 1e-11], &[0.0, 1e-11]).unwrap();
        assert!(q.ill_conditioned);
    }

    #[test]
    fn duplicates_are_named() {
        assert_eq!(
            divided_difference(&[0.5, 1.0, 0.5], &[1.0, 2.0, 3.0]),
            Err(DivDiffError::DuplicatePoint(0.5))
        );
        assert_eq!(
            divided_difference_det(&[2.0, 2.0], &[1.0, 1.0]),
            Err(DivDiffError::DuplicatePoint(2.0))
        );
        assert!(matches!(
            divided_difference_det(&[1.0], &[1.0]),
            Err(DivDiffError::TooFewPoints { .. })
        ));
    }

    #[test]
    fn newton_examples() {
        let p = newton_interpolant(&[-1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert!(p.approx_eq(&Polynomial::constant(1.0), 1e-15));
        let pts = [-1.0, 0.0, 1.0];
        let p = newton_interpolant(&pts, &values(&pts, |x| x.powi(3))).unwrap();
        assert!(p.approx_eq(&Polynomial::monomial(1, 1.0), 1e-15));
        let r = 3f64.sqrt() / 3.0;
        let p = newton_interpolant(&[-r, r], &[r.powi(4), r.powi(4)]).unwrap();
        assert!(p.approx_eq(&Polynomial::constant(1.0 / 9.0), 1e-15));
    }

    #[test]
    fn confluent_examples() {
        let unit = Interval::symmetric_unit();
        let sq = corpus::power(2, unit);
        let spec = NodeSpec::new(unit, 1, vec![0.0], vec![2]).unwrap();
        assert!(confluent_interpolant(&spec, &sq).unwrap().approx_eq(&Polynomial::zero(), 1e-15));

        let quartic = corpus::power(4, unit);
        let spec = NodeSpec::new(unit, 3, vec![-1.0, 0.0, 1.0], vec![1, 2, 1]).unwrap();
        let p = confluent_interpolant(&spec, &quartic).unwrap();
        assert!(p.approx_eq(&Polynomial::monomial(2, 1.0), 1e-14));

        let q = Polynomial::new(vec![0.5, -1.0, 2.0, 0.25]);
        let f = TestFunction::from_polynomial("q", q.clone(), unit);
        let spec = NodeSpec::new(unit, 3, vec![0.5], vec![4]).unwrap();
        assert!(confluent_interpolant(&spec, &f).unwrap().approx_eq(&q, 1e-14));
    }

    #[test]
    fn confluent_needs_oracles() {
        let unit = Interval::symmetric_unit();
        let f = TestFunction::new("bare", unit, f64::exp);
        let spec = NodeSpec::new(unit, 1, vec![0.25], vec![2]).unwrap();
        assert_eq!(
            confluent_interpolant(&spec, &f),
            Err(DivDiffError::MissingDerivative { node: 0.25, order: 1 })
        );
    }

    #[test]
    fn convexity_examples() {
        let unit = Interval::symmetric_unit();
        let grid = unit.linspace(12);
        assert!(is_n_convex_on_grid(&corpus::power(6, unit), 5, &grid).unwrap().convex);

        let verdict = is_n_convex_on_grid(&corpus::power(3, unit), 1, &grid).unwrap();
        assert!(!verdict.convex);
        let w = verdict.witness.unwrap();
        assert_eq!(w.indices, vec![0, 1, 2]);
        assert!(w.tuple.iter().any(|&x| x < 0.0));
        assert!(w.determinant < 0.0);

        let neg = TestFunction::from_polynomial("-x^4", Polynomial::monomial(4, -1.0), unit);
        assert!(!is_n_convex_on_grid(&neg, 3, &unit.linspace(5)).unwrap().convex);
    }

    #[test]
    fn convexity_preconditions() {
        let unit = Interval::symmetric_unit();
        let f = corpus::exp(unit);
        assert!(matches!(
            is_n_convex_on_grid(&f, 3, &[0.0, 0.1, 0.2]),
            Err(DivDiffError::TooFewPoints { needed: 5, got: 3 })
        ));
        assert_eq!(
            is_n_convex_on_grid(&f, 1, &[0.0, 0.2, 0.1, 0.3]),
            Err(DivDiffError::UnsortedGrid(2))
        );
    }

    #[test]
    fn attaching_signs() {
        // n = 6 with multiplicities 1, 3, 1, 2
        let pattern = SignPattern::attaching(6, &[-0.5, 0.0, 0.3, 0.7], &[1, 3, 1, 2]);
        let signs: Vec<f64> = pattern.signs().iter().map(|s| s.unwrap().value()).collect();
        assert_eq!(signs, vec![-1.0, 1.0, -1.0, 1.0, 1.0]);
    }

    #[test]
    fn sign_pattern_examples() {
        let wide = Interval::new(-2.0, 2.0).unwrap();
        let neg = Some(Sign::Negative);
        let pos = Some(Sign::Positive);
        let pattern = SignPattern::new(vec![-1.0, 0.0, 1.0], vec![pos, neg, neg, pos]).unwrap();
        let sextic = |x: f64| x.powi(6);
        for p in [Polynomial::monomial(4, 1.0), Polynomial::monomial(2, 1.0)] {
            let cert = check_sign_pattern(sextic, &p, &pattern, wide, 1000).unwrap();
            assert!(cert.pass, "{p}: {cert:?}");
        }
        let cert = check_sign_pattern(
            |x| x * x,
            &Polynomial::zero(),
            &SignPattern::uniform(Sign::Positive),
            Interval::symmetric_unit(),
            100,
        )
        .unwrap();
        assert!(cert.pass);
        // x^2 lies above x^4 inside (-1, 1)
        let cert = check_sign_pattern(
            |x| x.powi(4),
            &Polynomial::monomial(2, 1.0),
            &SignPattern::uniform(Sign::Positive),
            wide,
            100,
        )
        .unwrap();
        assert!(!cert.pass);
        assert!(cert.worst_margin < 0.0);
    }

    #[test]
    fn sign_pattern_validation() {
        assert!(matches!(
            SignPattern::new(vec![0.0], vec![None]),
            Err(DivDiffError::PatternLength { expected: 2, .. })
        ));
        let unit = Interval::symmetric_unit();
        assert_eq!(
            check_sign_pattern(|x| x, &Polynomial::zero(), &SignPattern::uniform(Sign::Positive), unit, 1),
            Err(DivDiffError::TooFewSamples(1))
        );
    }
}
