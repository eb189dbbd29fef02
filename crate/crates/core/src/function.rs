//! Test functions: evaluable `f` with optional derivative oracles and
//! declared orders of convexity.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::divdiff::{self, ConvexityVerdict};
use crate::poly::{Interval, Polynomial};

/// Shared real function handle.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Grid size used to spot-check declared convexity orders.
pub const DECLARATION_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FunctionError {
    #[error("{name} is not {order}-convex on the {points}-point grid over {interval}: {detail}")]
    DeclarationFailed {
        name: String,
        order: usize,
        points: usize,
        interval: Interval,
        detail: String,
    },
    #[error("declaring order {order} needs {needed} grid points, only {points} available")]
    GridTooSmall {
        order: usize,
        needed: usize,
        points: usize,
    },
}

#[derive(Clone)]
pub struct TestFunction {
    name: String,
    eval: RealFn,
    /// `derivatives[k - 1]` evaluates `f^(k)`.
    derivatives: Vec<RealFn>,
    polynomial: Option<Polynomial>,
    orders: Vec<usize>,
    interval: Interval,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("name", &self.name)
            .field("derivatives", &self.derivatives.len())
            .field("polynomial", &self.polynomial)
            .field("orders", &self.orders)
            .field("interval", &self.interval)
            .finish()
    }
}

impl TestFunction {
    pub fn new<F>(name: impl Into<String>, interval: Interval, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        TestFunction {
            name: name.into(),
            eval: Arc::new(f),
            derivatives: Vec::new(),
            polynomial: None,
            orders: Vec::new(),
            interval,
        }
    }

    /// A polynomial test function; derivatives of every order are available.
    pub fn from_polynomial(name: impl Into<String>, p: Polynomial, interval: Interval) -> Self {
        let q = p.clone();
        TestFunction {
            name: name.into(),
            eval: Arc::new(move |x| q.eval(x)),
            derivatives: Vec::new(),
            polynomial: Some(p),
            orders: Vec::new(),
            interval,
        }
    }

    pub fn with_derivatives(mut self, derivatives: Vec<RealFn>) -> Self {
        self.derivatives = derivatives;
        self
    }

    /// Attach a closed form used for exact integration.
    pub fn with_polynomial(mut self, p: Polynomial) -> Self {
        self.polynomial = Some(p);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Declare `f` to be n-convex for each listed order. Each declaration is
    /// spot-checked on a 16-point grid; any failure rejects the function.
    pub fn declare_orders(mut self, orders: &[usize]) -> Result<Self, FunctionError> {
        let grid = self.interval.linspace(DECLARATION_GRID);
        for &n in orders {
            if n + 2 > grid.len() {
                return Err(FunctionError::GridTooSmall {
                    order: n,
                    needed: n + 2,
                    points: grid.len(),
                });
            }
            let verdict = divdiff::is_n_convex_on_grid(&self, n, &grid)
                .expect("grid size checked above");
            if !verdict.convex {
                return Err(self.declaration_error(n, &verdict));
            }
            if !self.orders.contains(&n) {
                self.orders.push(n);
            }
        }
        self.orders.sort_unstable();
        Ok(self)
    }

    fn declaration_error(&self, n: usize, verdict: &ConvexityVerdict) -> FunctionError {
        let detail = match &verdict.witness {
            Some(w) => format!(
                "divided difference {:e} on tuple {:?}",
                w.divided_difference, w.tuple
            ),
            None => "no witness".to_string(),
        };
        FunctionError::DeclarationFailed {
            name: self.name.clone(),
            order: n,
            points: DECLARATION_GRID,
            interval: self.interval,
            detail,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn evaluator(&self) -> RealFn {
        Arc::clone(&self.eval)
    }

    /// `f^(order)(x)`; `order == 0` is `f` itself. `None` when no oracle exists.
    pub fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        if order == 0 {
            return Some(self.eval(x));
        }
        if let Some(p) = &self.polynomial {
            if self.derivatives.len() < order {
                return Some(p.nth_derivative(order).eval(x));
            }
        }
        self.derivatives.get(order - 1).map(|d| d(x))
    }

    /// Highest derivative order available; `None` means unlimited.
    pub fn derivative_order(&self) -> Option<usize> {
        if self.polynomial.is_some() {
            None
        } else {
            Some(self.derivatives.len())
        }
    }

    pub fn has_derivative(&self, order: usize) -> bool {
        self.derivative_order().is_none_or(|m| m >= order)
    }

    pub fn polynomial(&self) -> Option<&Polynomial> {
        self.polynomial.as_ref()
    }

    pub fn declared_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn is_declared(&self, order: usize) -> bool {
        self.orders.contains(&order)
    }

    pub(crate) fn derivative_fns(&self) -> &[RealFn] {
        &self.derivatives
    }

    pub(crate) fn from_parts(
        name: String,
        eval: RealFn,
        derivatives: Vec<RealFn>,
        polynomial: Option<Polynomial>,
        interval: Interval,
    ) -> Self {
        TestFunction {
            name,
            eval,
            derivatives,
            polynomial,
            orders: Vec::new(),
            interval,
        }
    }
}

/// Smooth functions with closed-form derivatives of every order up to
/// [`corpus::DERIVATIVES`].
pub mod corpus {
    use super::*;

    pub const DERIVATIVES: usize = 16;

    fn oracles<F>(make: F) -> Vec<RealFn>
    where
        F: Fn(usize) -> RealFn,
    {
        (1..=DERIVATIVES).map(make).collect()
    }

    /// `x^k`.
    pub fn power(k: usize, iv: Interval) -> TestFunction {
        TestFunction::from_polynomial(format!("x^{k}"), Polynomial::monomial(k, 1.0), iv)
    }

    /// `x^j + x^k`.
    pub fn power_sum(j: usize, k: usize, iv: Interval) -> TestFunction {
        let p = &Polynomial::monomial(j, 1.0) + &Polynomial::monomial(k, 1.0);
        TestFunction::from_polynomial(format!("x^{j}+x^{k}"), p, iv)
    }

    pub fn exp(iv: Interval) -> TestFunction {
        TestFunction::new("exp", iv, f64::exp)
            .with_derivatives(oracles(|_| Arc::new(f64::exp) as RealFn))
    }

    pub fn cosh(iv: Interval) -> TestFunction {
        TestFunction::new("cosh", iv, f64::cosh).with_derivatives(oracles(|k| {
            if k % 2 == 0 {
                Arc::new(f64::cosh) as RealFn
            } else {
                Arc::new(f64::sinh) as RealFn
            }
        }))
    }

    pub fn cos(iv: Interval) -> TestFunction {
        TestFunction::new("cos", iv, f64::cos).with_derivatives(oracles(|k| match k % 4 {
            0 => Arc::new(f64::cos) as RealFn,
            1 => Arc::new(|x: f64| -x.sin()) as RealFn,
            2 => Arc::new(|x: f64| -x.cos()) as RealFn,
            _ => Arc::new(f64::sin) as RealFn,
        }))
    }

    /// `1 / (2 - x)`, all of whose derivatives are positive on `x < 2`.
    pub fn reciprocal_two_minus(iv: Interval) -> TestFunction {
        TestFunction::new("1/(2-x)", iv, |x| 1.0 / (2.0 - x)).with_derivatives(oracles(|k| {
            let factorial: f64 = (1..=k).map(|i| i as f64).product();
            Arc::new(move |x: f64| factorial / (2.0 - x).powi(k as i32 + 1)) as RealFn
        }))
    }

    /// The smooth corpus used for order `n` on `iv`: `x^(n+1)`, `x^(n+3)`,
    /// `exp`, `1/(2-x)` and, for odd `n`, `cosh`; every member declared n-convex.
    pub fn smooth_for_order(n: usize, iv: Interval) -> Result<Vec<TestFunction>, FunctionError> {
        let mut members = vec![
            power(n + 1, iv),
            power(n + 3, iv),
            exp(iv),
            reciprocal_two_minus(iv),
        ];
        if n % 2 == 1 {
            members.push(cosh(iv));
        }
        members.into_iter().map(|f| f.declare_orders(&[n])).collect()
    }
}
