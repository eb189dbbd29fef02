//! Monic orthogonal polynomials for a weight on `[a, b]`, built by
//! Gram–Schmidt on the monomials `1, x, x^2, ...`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::integrate::{self, IntegrationError, Tolerance};
use crate::poly::{Interval, PolyError, Polynomial};

pub const MAX_DEGREE: usize = 12;
const ORTHOGONALITY_TOL: f64 = 1e-9;
const POSITIVITY_SAMPLES: usize = 257;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrthoError {
    #[error("weight {name} is negative at x = {x} (value {value})")]
    NegativeWeight { name: String, x: f64, value: f64 },
    #[error("weight {name} has integral {integral}, need > 1e-12")]
    DegenerateWeight { name: String, integral: f64 },
    #[error("unrecognised weight spec {0:?} (expected `legendre` or `poly:c0,c1,...`)")]
    BadWeightSpec(String),
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooLarge { degree: usize, max: usize },
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("orthogonality lost at degree {degree}: residual {residual:e} against degree {against}")]
    LostOrthogonality {
        degree: usize,
        against: usize,
        residual: f64,
    },
    #[error("expected {expected} zeros of the degree-{expected} polynomial in ({a}, {b}), found {found}")]
    RootCount {
        expected: usize,
        found: usize,
        a: f64,
        b: f64,
    },
    #[error(transparent)]
    Integration(#[from] IntegrationError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Polynomial factor applied on top of the base weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modifier {
    None,
    /// `(x - a)`
    Left,
    /// `(b - x)`
    Right,
    /// `(x - a)(b - x)`
    Both,
}

impl Modifier {
    pub fn polynomial(self, iv: Interval) -> Polynomial {
        let left = Polynomial::new(vec![-iv.a(), 1.0]);
        let right = Polynomial::new(vec![iv.b(), -1.0]);
        match self {
            Modifier::None => Polynomial::constant(1.0),
            Modifier::Left => left,
            Modifier::Right => right,
            Modifier::Both => &left * &right,
        }
    }
}

#[derive(Clone)]
enum Base {
    Polynomial(Polynomial),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

/// A nonnegative weight `w` on an interval, optionally multiplied by an
/// endpoint modifier.
#[derive(Clone)]
pub struct WeightFunction {
    name: String,
    base: Base,
    modifier: Modifier,
    interval: Interval,
    tolerance: Tolerance,
}

impl fmt::Debug for WeightFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightFunction")
            .field("name", &self.name)
            .field("modifier", &self.modifier)
            .field("interval", &self.interval)
            .finish()
    }
}

impl WeightFunction {
    /// `w = 1`.
    pub fn legendre(iv: Interval) -> Self {
        WeightFunction {
            name: "legendre".into(),
            base: Base::Polynomial(Polynomial::constant(1.0)),
            modifier: Modifier::None,
            interval: iv,
            tolerance: Tolerance::default(),
        }
    }

    pub fn polynomial(p: Polynomial, iv: Interval) -> Result<Self, OrthoError> {
        let coeffs: Vec<String> = p.coeffs().iter().map(|c| format!("{c}")).collect();
        let w = WeightFunction {
            name: format!("poly:{}", coeffs.join(",")),
            base: Base::Polynomial(p),
            modifier: Modifier::None,
            interval: iv,
            tolerance: Tolerance::default(),
        };
        w.validate()?;
        Ok(w)
    }

    /// A general weight; inner products go through the adaptive integrator.
    pub fn function<F>(name: impl Into<String>, f: F, iv: Interval) -> Result<Self, OrthoError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let w = WeightFunction {
            name: name.into(),
            base: Base::Function(Arc::new(f)),
            modifier: Modifier::None,
            interval: iv,
            tolerance: Tolerance::default(),
        };
        w.validate()?;
        Ok(w)
    }

    /// Parse `legendre` or `poly:c0,c1,...`.
    pub fn from_spec(spec: &str, iv: Interval) -> Result<Self, OrthoError> {
        let spec = spec.trim();
        if spec == "legendre" {
            return Ok(WeightFunction::legendre(iv));
        }
        let coeffs = spec
            .strip_prefix("poly:")
            .ok_or_else(|| OrthoError::BadWeightSpec(spec.to_string()))?;
        let coeffs: Result<Vec<f64>, _> = coeffs.split(',').map(|c| c.trim().parse::<f64>()).collect();
        let coeffs = coeffs.map_err(|_| OrthoError::BadWeightSpec(spec.to_string()))?;
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(OrthoError::BadWeightSpec(spec.to_string()));
        }
        WeightFunction::polynomial(Polynomial::new(coeffs), iv)
    }

    fn validate(&self) -> Result<(), OrthoError> {
        for x in self.interval.linspace(POSITIVITY_SAMPLES) {
            let value = self.base_eval(x);
            if !(value >= 0.0) {
                return Err(OrthoError::NegativeWeight {
                    name: self.name.clone(),
                    x,
                    value,
                });
            }
        }
        let integral = self.base_integral(&Polynomial::constant(1.0))?;
        if !(integral > 1e-12) {
            return Err(OrthoError::DegenerateWeight {
                name: self.name.clone(),
                integral,
            });
        }
        Ok(())
    }

    /// The same base weight with a different modifier.
    pub fn with_modifier(&self, modifier: Modifier) -> Self {
        WeightFunction {
            modifier,
            ..self.clone()
        }
    }

    pub fn with_tolerance(mut self, tolerance: Tolerance) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// The name of the base weight (`legendre`, `poly:...` or a user name).
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn modifier(&self) -> Modifier {
        self.modifier
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    /// The full weight as a polynomial, when the base is polynomial.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        match &self.base {
            Base::Polynomial(p) => Some(p * &self.modifier.polynomial(self.interval)),
            Base::Function(_) => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.base, Base::Polynomial(_))
    }

    /// Even base weight on an interval symmetric about zero (modifier ignored).
    pub fn is_even(&self) -> bool {
        if !self.interval.is_symmetric() {
            return false;
        }
        match &self.base {
            Base::Polynomial(p) => p.approx_eq(&p.reflect(), 1e-14),
            Base::Function(f) => self
                .interval
                .linspace(33)
                .iter()
                .all(|&x| (f(x) - f(-x)).abs() <= 1e-14 * (1.0 + f(x).abs())),
        }
    }

    fn base_eval(&self, x: f64) -> f64 {
        match &self.base {
            Base::Polynomial(p) => p.eval(x),
            Base::Function(f) => f(x),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.base_eval(x) * self.modifier.polynomial(self.interval).eval(x)
    }

    fn base_integral(&self, p: &Polynomial) -> Result<f64, IntegrationError> {
        match &self.base {
            Base::Polynomial(w) => Ok((p * w).integrate(self.interval)),
            Base::Function(f) => {
                integrate::integrate(|x| p.eval(x) * f(x), self.interval, self.tolerance)
            }
        }
    }

    /// `∫ p(x) w(x) dx`, closed form when the base weight is polynomial.
    pub fn integrate_poly(&self, p: &Polynomial) -> Result<f64, IntegrationError> {
        let modified = p * &self.modifier.polynomial(self.interval);
        self.base_integral(&modified)
    }

    /// `∫ f(x) w(x) dx` by adaptive integration.
    pub fn integrate_fn<F: Fn(f64) -> f64>(&self, f: F, tol: Tolerance) -> Result<f64, IntegrationError> {
        integrate::integrate(|x| f(x) * self.eval(x), self.interval, tol)
    }

    /// `∫ w(x) dx`.
    pub fn total_mass(&self) -> Result<f64, IntegrationError> {
        self.integrate_poly(&Polynomial::constant(1.0))
    }
}

/// `<f, g>_w` for general evaluables.
pub fn inner_product<F, G>(f: F, g: G, w: &WeightFunction) -> Result<f64, IntegrationError>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    w.integrate_fn(|x| f(x) * g(x), w.tolerance)
}

/// `<p, q>_w` for polynomials, closed form when `w` is polynomial.
pub fn inner_product_poly(p: &Polynomial, q: &Polynomial, w: &WeightFunction) -> Result<f64, IntegrationError> {
    w.integrate_poly(&(p * q))
}

#[derive(Debug, Clone)]
pub struct OrthoSequence {
    weight: WeightFunction,
    polys: Vec<Polynomial>,
    gram_norms: Vec<f64>,
}

impl OrthoSequence {
    pub fn weight(&self) -> &WeightFunction {
        &self.weight
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn gram_norms(&self) -> &[f64] {
        &self.gram_norms
    }

    pub fn get(&self, degree: usize) -> Option<&Polynomial> {
        self.polys.get(degree)
    }
}

/// Monic orthogonal polynomials of degrees `0..=max_degree` for `w`.
///
/// Modified Gram–Schmidt with one re-orthogonalization pass; the finished
/// sequence is checked for pairwise orthogonality.
pub fn build_ortho_sequence(w: &WeightFunction, max_degree: usize) -> Result<OrthoSequence, OrthoError> {
    if max_degree > MAX_DEGREE {
        return Err(OrthoError::DegreeTooLarge {
            degree: max_degree,
            max: MAX_DEGREE,
        });
    }
    let mut polys: Vec<Polynomial> = Vec::with_capacity(max_degree + 1);
    let mut norms: Vec<f64> = Vec::with_capacity(max_degree + 1);
    for k in 0..=max_degree {
        let mut v = Polynomial::monomial(k, 1.0);
        for _pass in 0..2 {
            for (pj, &nj) in polys.iter().zip(norms.iter()) {
                let c = inner_product_poly(&v, pj, w)? / nj;
                v = &v - &pj.scale(c);
            }
        }
        // the leading coefficient is untouched by lower-degree corrections
        let norm = inner_product_poly(&v, &v, w)?;
        polys.push(v);
        norms.push(norm);
    }

    for i in 0..polys.len() {
        for j in 0..i {
            let ip = inner_product_poly(&polys[i], &polys[j], w)?;
            let residual = ip.abs() / (norms[i] * norms[j]).sqrt();
            if !(residual <= ORTHOGONALITY_TOL) {
                return Err(OrthoError::LostOrthogonality {
                    degree: i,
                    against: j,
                    residual,
                });
            }
        }
    }
    Ok(OrthoSequence {
        weight: w.clone(),
        polys,
        gram_norms: norms,
    })
}

/// Zeros of the degree-`degree` orthogonal polynomial, ascending, all in `(a, b)`.
pub fn ortho_nodes(w: &WeightFunction, degree: usize) -> Result<Vec<f64>, OrthoError> {
    if degree == 0 {
        return Err(OrthoError::DegreeZero);
    }
    let seq = build_ortho_sequence(w, degree)?;
    nodes_of(&seq.polys[degree], w.interval())
}

pub(crate) fn nodes_of(p: &Polynomial, iv: Interval) -> Result<Vec<f64>, OrthoError> {
    let degree = p.degree().unwrap_or(0);
    let roots = p.roots_in(iv)?;
    if roots.len() != degree {
        return Err(OrthoError::RootCount {
            expected: degree,
            found: roots.len(),
            a: iv.a(),
            b: iv.b(),
        });
    }
    Ok(roots)
}
