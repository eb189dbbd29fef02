//! Adaptive Gauss–Kronrod (7/15) integration for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::poly::Interval;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss weights for the odd-indexed Kronrod abscissas (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_panels: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-12,
            rel: 1e-10,
            max_panels: 1 << 14,
        }
    }
}

impl Tolerance {
    pub fn tight() -> Self {
        Tolerance {
            abs: 1e-13,
            rel: 1e-13,
            ..Tolerance::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntegrationError {
    #[error(
        "adaptive integration did not converge within {panels} panels (last estimates {previous} and {last}, error estimate {error})"
    )]
    NonConvergence {
        previous: f64,
        last: f64,
        error: f64,
        panels: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFinite { x: f64 },
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod_panel<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Panel, IntegrationError> {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(IntegrationError::NonFinite { x })
        }
    };
    let fc = eval(centre)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = eval(centre - dx)? + eval(centre + dx)?;
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    Ok(Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    })
}

/// Integrate `f` over `iv`, bisecting the panel with the largest error estimate
/// until the total estimate falls below `max(abs, rel * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    iv: Interval,
    tol: Tolerance,
) -> Result<f64, IntegrationError> {
    let first = kronrod_panel(&f, iv.a(), iv.b())?;
    let mut total = first.value;
    let mut total_err = first.error;
    let mut previous = f64::NAN;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    while total_err > tol.abs.max(tol.rel * total.abs()) {
        if heap.len() >= tol.max_panels {
            return Err(IntegrationError::NonConvergence {
                previous,
                last: total,
                error: total_err,
                panels: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // cannot split further in floating point; accept what we have
            heap.push(worst);
            break;
        }
        let left = kronrod_panel(&f, worst.lo, mid)?;
        let right = kronrod_panel(&f, mid, worst.hi)?;
        previous = total;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // recompute the sum from panels to shed accumulated update rounding
    Ok(heap.iter().map(|p| p.value).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn smooth_integrands() {
        let unit = Interval::symmetric_unit();
        let v = integrate(f64::exp, unit, Tolerance::default()).unwrap();
        assert_relative_eq!(v, 1f64.exp() - (-1f64).exp(), max_relative = 1e-14);
        let v = integrate(f64::cos, unit, Tolerance::tight()).unwrap();
        assert_relative_eq!(v, 2.0 * 1f64.sin(), max_relative = 1e-14);
    }

    #[test]
    fn endpoint_sqrt_behaviour_is_resolved() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let v = integrate(f64::sqrt, iv, Tolerance::default()).unwrap();
        assert_relative_eq!(v, 2.0 / 3.0, max_relative = 1e-10);
    }

    #[test]
    fn panel_cap_reports_estimates() {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let tol = Tolerance {
            abs: 0.0,
            rel: 0.0,
            max_panels: 4,
        };
        let err = integrate(|x: f64| x.abs().sqrt(), iv, tol).unwrap_err();
        assert!(matches!(err, IntegrationError::NonConvergence { panels: 4, .. }));
    }

    #[test]
    fn non_finite_integrand() {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        let err = integrate(|x: f64| 1.0 / x, iv, Tolerance::default()).unwrap_err();
        assert!(matches!(err, IntegrationError::NonFinite { .. }));
    }
}
