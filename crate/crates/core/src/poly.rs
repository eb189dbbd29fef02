//! Dense real polynomials and closed intervals.
//!
//! Coefficients are stored in ascending power order. The zero polynomial is
//! canonically the empty coefficient vector; constructors strip trailing
//! exact zeros but otherwise keep coefficients as given.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Bisection stops once the bracket is narrower than this (relative to `max(1, |x|)`).
const BISECT_WIDTH: f64 = 1e-14;
const BISECT_CAP: usize = 100;
const NEWTON_CAP: usize = 20;
/// Roots closer than `ROOT_SEPARATION * max(1, |a|, |b|)` are merged.
const ROOT_SEPARATION: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("invalid interval [{a}, {b}]: need finite a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("root isolation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error(
        "bisection did not converge after {iterations} steps: bracket [{lo}, {hi}], p(lo) = {p_lo}, p(hi) = {p_hi}"
    )]
    RootNonConvergence {
        lo: f64,
        hi: f64,
        p_lo: f64,
        p_hi: f64,
        iterations: usize,
    },
}

/// A closed interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, PolyError> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Interval { a, b })
        } else {
            Err(PolyError::InvalidInterval { a, b })
        }
    }

    /// The reference interval `[-1, 1]`.
    pub fn symmetric_unit() -> Self {
        Interval { a: -1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.a + self.b)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        self.a < x && x < self.b
    }

    pub fn is_symmetric(&self) -> bool {
        (self.a + self.b).abs() <= 1e-14 * self.b.abs().max(1.0)
    }

    /// `max(1, |a|, |b|)`, the scale used for absolute tolerances on abscissas.
    pub fn scale(&self) -> f64 {
        1f64.max(self.a.abs()).max(self.b.abs())
    }

    /// `count` equispaced points including both endpoints.
    pub fn linspace(&self, count: usize) -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![self.midpoint()],
            _ => {
                let step = self.length() / (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        if i + 1 == count {
                            self.b
                        } else {
                            self.a + step * i as f64
                        }
                    })
                    .collect()
            }
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(k: usize, c: f64) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// The monic linear factor `x - r`.
    pub fn linear_factor(r: f64) -> Self {
        Polynomial::new(vec![-r, 1.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    pub fn nth_derivative(&self, order: usize) -> Polynomial {
        (0..order).fold(self.clone(), |p, _| p.derivative())
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| c / (i + 1) as f64),
        );
        Polynomial::new(coeffs)
    }

    /// Exact definite integral over `iv`.
    pub fn integrate(&self, iv: Interval) -> f64 {
        let anti = self.antiderivative();
        anti.eval(iv.b) - anti.eval(iv.a)
    }

    pub fn scale(&self, factor: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
                .collect(),
        )
    }

    /// Synthetic division by `x - r`: returns the quotient and the remainder `p(r)`.
    pub fn divide_linear(&self, r: f64) -> (Polynomial, f64) {
        if self.coeffs.len() <= 1 {
            return (Polynomial::zero(), self.coeff(0));
        }
        let n = self.coeffs.len() - 1;
        let mut quotient = vec![0.0; n];
        let mut carry = 0.0;
        for i in (0..=n).rev() {
            carry = carry * r + self.coeffs[i];
            if i > 0 {
                quotient[i - 1] = carry;
            }
        }
        (Polynomial::new(quotient), carry)
    }

    /// Coefficient-wise comparison with tolerance `tol * (1 + max|coeff|)`.
    pub fn approx_eq(&self, other: &Polynomial, tol: f64) -> bool {
        let len = self.coeffs.len().max(other.coeffs.len());
        let scale = self
            .coeffs
            .iter()
            .chain(other.coeffs.iter())
            .fold(0.0f64, |m, c| m.max(c.abs()));
        (0..len).all(|k| (self.coeff(k) - other.coeff(k)).abs() <= tol * (1.0 + scale))
    }

    /// Largest coefficient-wise difference.
    pub fn max_coeff_diff(&self, other: &Polynomial) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|k| (self.coeff(k) - other.coeff(k)).abs())
            .fold(0.0, f64::max)
    }

    /// All real roots in the open interval `(a, b)`, ascending.
    ///
    /// Roots of the derivative (found recursively) split `[a, b]` into monotone
    /// brackets; each bracket with a sign change is bisected and the result is
    /// polished with Newton steps. Roots are assumed simple.
    pub fn roots_in(&self, iv: Interval) -> Result<Vec<f64>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        self.roots_nonzero(iv)
    }

    fn roots_nonzero(&self, iv: Interval) -> Result<Vec<f64>, PolyError> {
        match self.degree() {
            None | Some(0) => return Ok(Vec::new()),
            _ => {}
        }
        let critical = self.derivative().roots_nonzero(iv)?;
        let mut fences = Vec::with_capacity(critical.len() + 2);
        fences.push(iv.a);
        fences.extend(critical.iter().copied());
        fences.push(iv.b);

        let mut roots = Vec::new();
        for pair in fences.windows(2) {
            let (lo, hi) = (pair[0], pair[1]);
            let (p_lo, p_hi) = (self.eval(lo), self.eval(hi));
            if p_lo == 0.0 && iv.contains_interior(lo) {
                roots.push(lo);
            }
            if p_lo * p_hi < 0.0 {
                roots.push(self.refine_root(lo, hi, p_lo)?);
            }
        }

        let sep = ROOT_SEPARATION * iv.scale();
        let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
        for r in roots {
            if !iv.contains_interior(r) {
                continue;
            }
            match merged.last() {
                Some(&last) if (r - last).abs() <= sep => {}
                _ => merged.push(r),
            }
        }
        Ok(merged)
    }

    fn refine_root(&self, mut lo: f64, mut hi: f64, p_lo: f64) -> Result<f64, PolyError> {
        let lo_sign = p_lo.signum();
        let mut converged = false;
        for _ in 0..BISECT_CAP {
            if hi - lo <= BISECT_WIDTH * 1f64.max(lo.abs()).max(hi.abs()) {
                converged = true;
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                converged = true;
                break;
            }
            let p_mid = self.eval(mid);
            if p_mid == 0.0 {
                return Ok(mid);
            }
            if p_mid.signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if !converged {
            return Err(PolyError::RootNonConvergence {
                lo,
                hi,
                p_lo: self.eval(lo),
                p_hi: self.eval(hi),
                iterations: BISECT_CAP,
            });
        }

        let dp = self.derivative();
        let mut x = 0.5 * (lo + hi);
        for _ in 0..NEWTON_CAP {
            let px = self.eval(x);
            let dpx = dp.eval(x);
            if px == 0.0 || dpx == 0.0 {
                break;
            }
            let next = x - px / dpx;
            // stay inside the bracket
            if !(lo <= next && next <= hi) {
                break;
            }
            let step = (next - x).abs();
            x = next;
            if step <= f64::EPSILON * x.abs() {
                break;
            }
        }
        Ok(x)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c.abs())?,
                1 => write!(f, "{}*x", c.abs())?,
                _ => write!(f, "{}*x^{k}", c.abs())?,
            }
        }
        Ok(())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
