use num_complex::Complex64;

use crate::symbolic::WaveFunction;

/// The constant-field gauge potential `A_q = 0`, `A_p = q/ħ` behind the
/// physical operators: `Q← = iħ(∂_p - iA_p)` and `P← = -iħ(∂_q - iA_q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeField {
    hbar: f64,
}

impl GaugeField {
    pub fn new(hbar: f64) -> Self {
        Self { hbar }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn a_q(&self, _q: f64, _p: f64) -> f64 {
        0.0
    }

    pub fn a_p(&self, q: f64, _p: f64) -> f64 {
        q / self.hbar
    }

    /// `∂_q A_p - ∂_p A_q`; for this potential the constant `1/ħ`.
    pub fn field_strength(&self, _q: f64, _p: f64) -> f64 {
        1.0 / self.hbar
    }

    /// `∫ A·dξ` along the polyline through `points`, midpoint rule with
    /// `steps` sub-intervals per leg.
    pub fn line_integral(&self, points: &[(f64, f64)], steps: usize) -> f64 {
        let steps = steps.max(1);
        points
            .windows(2)
            .map(|leg| {
                let (q0, p0) = leg[0];
                let (q1, p1) = leg[1];
                let (dq, dp) = ((q1 - q0) / steps as f64, (p1 - p0) / steps as f64);
                (0..steps)
                    .map(|i| {
                        let t = i as f64 + 0.5;
                        let (q, p) = (q0 + t * dq, p0 + t * dp);
                        self.a_q(q, p) * dq + self.a_p(q, p) * dp
                    })
                    .sum::<f64>()
            })
            .sum()
    }

    /// The standard two-leg path from the origin: along the q-axis to
    /// `(q, 0)`, then parallel to the p-axis to `(q, p)`.
    ///
    /// Taking the q-leg first is what produces `e^{ipq/ħ}`; going up the
    /// p-axis first would pick up nothing since `A_p` vanishes at `q = 0`.
    pub fn standard_path(endpoint: (f64, f64)) -> [(f64, f64); 3] {
        [(0.0, 0.0), (endpoint.0, 0.0), endpoint]
    }

    /// `exp(i ∫_C A·dξ)` along [`GaugeField::standard_path`], in closed form:
    /// `e^{ipq/ħ}`.
    pub fn path_phase(&self, endpoint: (f64, f64)) -> Complex64 {
        let (q, p) = endpoint;
        Complex64::cis(q * p / self.hbar)
    }

    /// Same as [`GaugeField::path_phase`] but by numerical line integration.
    pub fn path_phase_numerical(&self, endpoint: (f64, f64), steps: usize) -> Complex64 {
        Complex64::cis(self.line_integral(&Self::standard_path(endpoint), steps))
    }
}

/// `iħ(∂_p - iA_p) wf` at `(q, p)`.
pub fn covariant_q_left(field: &GaugeField, wf: &WaveFunction, q: f64, p: f64) -> Complex64 {
    let hbar = wf.hbar();
    let d = wf.partial_p().evaluate(q, p);
    let a = field.a_p(q, p);
    Complex64::new(0.0, hbar) * (d - Complex64::new(0.0, a) * wf.evaluate(q, p))
}

/// `-iħ(∂_q - iA_q) wf` at `(q, p)`.
pub fn covariant_p_left(field: &GaugeField, wf: &WaveFunction, q: f64, p: f64) -> Complex64 {
    let hbar = wf.hbar();
    let d = wf.partial_q().evaluate(q, p);
    let a = field.a_q(q, p);
    Complex64::new(0.0, -hbar) * (d - Complex64::new(0.0, a) * wf.evaluate(q, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::plane_q_basis;
    use crate::symbolic::{apply_operator, OperatorKind};
    use crate::Form;

    #[test]
    fn field_strength_is_inverse_hbar() {
        assert_eq!(GaugeField::new(1.0).field_strength(0.3, 0.1), 1.0);
        assert_eq!(GaugeField::new(2.0).field_strength(5.0, -3.0), 0.5);
        let f = GaugeField::new(1.0);
        assert_eq!(f.field_strength(1.0, 2.0), f.field_strength(-4.0, 7.5));
    }

    #[test]
    fn field_strength_matches_finite_difference_of_potential() {
        let f = GaugeField::new(0.7);
        let h = 1e-4;
        for &(q, p) in &[(0.0, 0.0), (1.5, -2.0), (-3.0, 0.25)] {
            let d_q_ap = (f.a_p(q + h, p) - f.a_p(q - h, p)) / (2.0 * h);
            let d_p_aq = (f.a_q(q, p + h) - f.a_q(q, p - h)) / (2.0 * h);
            assert!((d_q_ap - d_p_aq - f.field_strength(q, p)).abs() < 1e-9);
        }
    }

    #[test]
    fn path_phase_on_axes_is_one() {
        let f = GaugeField::new(1.0);
        assert_eq!(f.path_phase((0.0, 3.7)), Complex64::new(1.0, 0.0));
        assert_eq!(f.path_phase((-2.2, 0.0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn path_phase_value() {
        let f = GaugeField::new(1.0);
        let exact = f.path_phase((2.0, 3.0));
        assert!((exact - Complex64::cis(6.0)).norm() < 1e-15);
        let numeric = f.path_phase_numerical((2.0, 3.0), 10_000);
        assert!((exact - numeric).norm() < 1e-10);
    }

    #[test]
    fn path_phase_is_first_exponential_of_q_basis() {
        let f = GaugeField::new(1.3);
        let psi = plane_q_basis(0.0, 0.0, 1.3, Form::Plain).unwrap();
        for &(q, p) in &[(0.4, -1.1), (2.0, 3.0)] {
            let r = f.path_phase((q, p)) * psi.evaluate(q, p).conj();
            assert!((r - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn covariant_derivatives_match_operators() {
        let hbar = 0.8;
        let f = GaugeField::new(hbar);
        let psi = plane_q_basis(0.3, -1.2, hbar, Form::Primed)
            .unwrap()
            .mul_p();
        let ql = apply_operator(OperatorKind::QLeft, &psi);
        let pl = apply_operator(OperatorKind::PLeft, &psi);
        for &(q, p) in &[(0.1, 0.2), (-1.0, 2.5)] {
            assert!((covariant_q_left(&f, &psi, q, p) - ql.evaluate(q, p)).norm() < 1e-12);
            assert!((covariant_p_left(&f, &psi, q, p) - pl.evaluate(q, p)).norm() < 1e-12);
        }
    }
}
