use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::turn;

/// Relative tolerance on `a·b/h` when deciding whether the area is quantized.
pub const QUANTIZATION_TOLERANCE: f64 = 1e-9;

/// A rectangle of side `b` in `q` and `a` in `p`, with Planck constant `h`.
///
/// `n()` is `Some(N)` exactly when `|a·b - N·h| <= 1e-9 · a·b` for a positive
/// integer `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusGeometry {
    a: f64,
    b: f64,
    h: f64,
    n: Option<u64>,
}

impl TorusGeometry {
    pub fn new(a: f64, b: f64, h: f64) -> Result<Self> {
        for (name, value) in [("a", a), ("b", b), ("h", h)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositive { name, value });
            }
        }
        let ratio = a * b / h;
        let nearest = ratio.round();
        let n = (nearest >= 1.0 && (ratio - nearest).abs() <= QUANTIZATION_TOLERANCE * ratio)
            .then_some(nearest as u64);
        Ok(Self { a, b, h, n })
    }

    /// The square geometry `a = b = √(N·h)`.
    pub fn symmetric(n: u64, h: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadDimension(0));
        }
        let side = (n as f64 * h).sqrt();
        Self::new(side, side, h)
    }

    /// Period in `p`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Period in `q`.
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn hbar(&self) -> f64 {
        self.h / TAU
    }

    pub fn n(&self) -> Option<u64> {
        self.n
    }

    /// `a·b/h`.
    pub fn area_ratio(&self) -> f64 {
        self.a * self.b / self.h
    }

    pub fn is_quantized(&self) -> bool {
        self.n.is_some()
    }

    pub fn require_quantized(&self) -> Result<u64> {
        self.n.ok_or(Error::NotQuantized {
            ratio: self.area_ratio(),
        })
    }
}

/// Phase picked up around the boundary of the fundamental domain,
/// `e^{iab/ħ} = e^{2πi·ab/h}`.
pub fn holonomy(geometry: &TorusGeometry) -> Complex64 {
    turn(geometry.area_ratio())
}

/// Gauge factor matching the two charts on the strip around `q ≡ 0`:
/// `ψ_II(q + b, p) = e^{ibp/ħ} ψ_I(q, p)`.
pub fn transition_function(geometry: &TorusGeometry, p: f64) -> Complex64 {
    turn(geometry.b * p / geometry.h)
}

/// Factor `e^{iaq/ħ}` relating the Q-basis states at `p + a` and `p`.
pub fn p_period_phase(geometry: &TorusGeometry, q: f64) -> Complex64 {
    turn(geometry.a * q / geometry.h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_areas() {
        assert_eq!(TorusGeometry::new(2.0, 3.0, 1.0).unwrap().n(), Some(6));
        assert_eq!(TorusGeometry::new(1.0, 1.0, 1.0).unwrap().n(), Some(1));
        assert_eq!(TorusGeometry::new(1.0, 0.5, 1.0).unwrap().n(), None);
        assert_eq!(TorusGeometry::new(0.1, 0.1, 1.0).unwrap().n(), None);
    }

    #[test]
    fn decimal_inputs_are_quantized() {
        let g = TorusGeometry::new(0.1, 30.0, 0.5).unwrap();
        assert_eq!(g.n(), Some(6));
        let g = TorusGeometry::symmetric(7, 0.3).unwrap();
        assert_eq!(g.n(), Some(7));
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(
            TorusGeometry::new(-1.0, 1.0, 1.0),
            Err(Error::NonPositive { name: "a", .. })
        ));
        assert!(TorusGeometry::new(1.0, 0.0, 1.0).is_err());
        assert!(TorusGeometry::new(1.0, 1.0, f64::INFINITY).is_err());
        assert!(TorusGeometry::symmetric(0, 1.0).is_err());
    }

    #[test]
    fn holonomy_values() {
        let g = TorusGeometry::new(2.0, 3.0, 1.0).unwrap();
        assert!((holonomy(&g) - 1.0).norm() < 1e-12);
        let g = TorusGeometry::new(1.0, 0.5, 1.0).unwrap();
        assert!((holonomy(&g) + 1.0).norm() < 1e-12);
    }

    #[test]
    fn holonomy_squares_when_b_doubles() {
        let g = TorusGeometry::new(0.7, 0.45, 1.1).unwrap();
        let g2 = TorusGeometry::new(0.7, 0.9, 1.1).unwrap();
        assert!((holonomy(&g2) - holonomy(&g).powu(2)).norm() < 1e-12);
    }

    #[test]
    fn transition_function_values() {
        let g = TorusGeometry::new(1.0, 0.5, 1.0).unwrap();
        assert_eq!(transition_function(&g, 0.0), Complex64::new(1.0, 0.0));
        let ratio = transition_function(&g, 1.0) / transition_function(&g, 0.0);
        assert!((ratio + 1.0).norm() < 1e-12);

        let q = TorusGeometry::new(2.0, 1.5, 1.0).unwrap();
        for &p in &[0.0, 0.3, 1.7] {
            let shifted = transition_function(&q, p + q.a());
            assert!((shifted - transition_function(&q, p)).norm() < 1e-12);
        }
    }
}
