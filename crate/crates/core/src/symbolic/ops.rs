use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::wave::WaveFunction;

/// Relative tolerance of the eigenvalue ratio test.
pub const EIGEN_TOLERANCE: f64 = 1e-10;

/// The four first-order operators on phase-space wave functions.
///
/// | kind     | action                 | invariance     |
/// |----------|------------------------|----------------|
/// | `QLeft`  | `q + iħ ∂/∂p`          | left, physical |
/// | `PLeft`  | `-iħ ∂/∂q`             | left, physical |
/// | `QRight` | `iħ ∂/∂p`              | right, shadow  |
/// | `PRight` | `p + iħ ∂/∂q`          | right, shadow  |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OperatorKind {
    QLeft,
    PLeft,
    QRight,
    PRight,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 4] = [
        OperatorKind::QLeft,
        OperatorKind::PLeft,
        OperatorKind::QRight,
        OperatorKind::PRight,
    ];

    pub fn is_physical(self) -> bool {
        matches!(self, OperatorKind::QLeft | OperatorKind::PLeft)
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OperatorKind::QLeft => "Q_LEFT",
            OperatorKind::PLeft => "P_LEFT",
            OperatorKind::QRight => "Q_RIGHT",
            OperatorKind::PRight => "P_RIGHT",
        };
        f.write_str(s)
    }
}

/// Exact image of `wf` under the operator.
pub fn apply_operator(kind: OperatorKind, wf: &WaveFunction) -> WaveFunction {
    let i_hbar = Complex64::new(0.0, wf.hbar());
    match kind {
        OperatorKind::QLeft => wf.mul_q().plus(&wf.partial_p().scale(i_hbar)),
        OperatorKind::PLeft => wf.partial_q().scale(-i_hbar),
        OperatorKind::QRight => wf.partial_p().scale(i_hbar),
        OperatorKind::PRight => wf.mul_p().plus(&wf.partial_q().scale(i_hbar)),
    }
}

/// `(AB - BA) wf`, computed symbolically.
pub fn commutator_apply(a: OperatorKind, b: OperatorKind, wf: &WaveFunction) -> WaveFunction {
    let ab = apply_operator(a, &apply_operator(b, wf));
    let ba = apply_operator(b, &apply_operator(a, wf));
    ab.plus(&ba.scale(Complex64::new(-1.0, 0.0)))
}

/// `exp(i·s·Op/ħ) wf`, evaluated as a translation plus a linear phase.
///
/// Each operator is a multiplication part plus a constant-coefficient
/// derivative that commute with each other, so the exponential factorises:
///
/// * `Q_LEFT`:  `f(q,p) → e^{isq/ħ} f(q, p-s)`
/// * `P_LEFT`:  `f(q,p) → f(q+s, p)`
/// * `Q_RIGHT`: `f(q,p) → f(q, p-s)`
/// * `P_RIGHT`: `f(q,p) → e^{isp/ħ} f(q-s, p)`
///
/// Translations and linear phases keep the family closed, so this agrees
/// with the Taylor series term by term.
pub fn exp_operator_apply(kind: OperatorKind, s: f64, wf: &WaveFunction) -> WaveFunction {
    match kind {
        OperatorKind::QLeft => wf.translate(0.0, -s).multiply_phase(s, 0.0),
        OperatorKind::PLeft => wf.translate(s, 0.0),
        OperatorKind::QRight => wf.translate(0.0, -s),
        OperatorKind::PRight => wf.translate(-s, 0.0).multiply_phase(0.0, s),
    }
}

/// The eigenvalue `λ` when `Op wf = λ wf`, otherwise `None`.
pub fn is_eigenstate(kind: OperatorKind, wf: &WaveFunction) -> Option<Complex64> {
    if wf.is_zero() {
        return None;
    }
    let image = apply_operator(kind, wf);
    if image.is_zero() {
        return Some(Complex64::new(0.0, 0.0));
    }

    // Pivot on the largest coefficient of wf to read off λ.
    let (pivot_phase, pivot_key, pivot) = wf
        .terms()
        .iter()
        .flat_map(|t| t.prefactor().iter().map(move |(k, c)| (t.phase(), k, c)))
        .fold(None, |best: Option<(_, _, Complex64)>, cand| match best {
            Some(b) if b.2.norm() >= cand.2.norm() => Some(b),
            _ => Some(cand),
        })?;
    let image_coeff = image
        .terms()
        .iter()
        .find(|t| {
            t.phase()
                .approx_eq(&pivot_phase, super::wave::MERGE_TOLERANCE)
        })
        .map(|t| t.prefactor().coeff(pivot_key.0, pivot_key.1))
        .unwrap_or(Complex64::new(0.0, 0.0));
    let lambda = image_coeff / pivot;

    let residual = image.distance(&wf.scale(lambda)).ok()?;
    let scale = image
        .max_abs_coefficient()
        .max(lambda.norm() * wf.max_abs_coefficient());
    (residual <= EIGEN_TOLERANCE * scale).then_some(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::wave::BilinearPhaseTerm;
    use crate::symbolic::{Phase, Poly};

    // ψ_{lk} = e^{ipq/ħ} e^{-i(kq+lp)/ħ}
    fn q_basis(l: f64, k: f64, hbar: f64) -> WaveFunction {
        WaveFunction::exponential(hbar, Phase::new(0.0, -k, -l, 1.0)).unwrap()
    }

    #[test]
    fn q_left_on_q_basis_is_label() {
        let psi = q_basis(3.0, 2.0, 1.0);
        assert_eq!(
            apply_operator(OperatorKind::QLeft, &psi),
            psi.scale(3.0.into())
        );
    }

    #[test]
    fn q_right_kills_constants() {
        let one = WaveFunction::one(1.0).unwrap();
        assert!(apply_operator(OperatorKind::QRight, &one).is_zero());
    }

    #[test]
    fn p_left_on_q_basis_raises_degree() {
        let (l, k) = (1.0, 2.0);
        let psi = q_basis(l, k, 1.0);
        let image = apply_operator(OperatorKind::PLeft, &psi);
        // (p - k) ψ
        let expected = WaveFunction::new(
            1.0,
            vec![BilinearPhaseTerm::new(
                Complex64::new(1.0, 0.0),
                Phase::new(0.0, -k, -l, 1.0),
                Poly::from_entries([((0, 1), 1.0.into()), ((0, 0), (-k).into())]),
            )],
        )
        .unwrap();
        assert_eq!(image, expected);
        assert_eq!(is_eigenstate(OperatorKind::PLeft, &psi), None);
    }

    #[test]
    fn eigenvalues_on_bases() {
        let psi = q_basis(5.0, 0.0, 1.0);
        assert_eq!(is_eigenstate(OperatorKind::QLeft, &psi), Some(5.0.into()));
        let phi = WaveFunction::exponential(1.0, Phase::new(0.0, 7.0, -0.0, 0.0)).unwrap();
        assert_eq!(is_eigenstate(OperatorKind::PLeft, &phi), Some(7.0.into()));
    }

    #[test]
    fn self_commutator_vanishes() {
        let psi = q_basis(0.5, -1.25, 2.0);
        for kind in OperatorKind::ALL {
            assert!(commutator_apply(kind, kind, &psi).is_zero());
        }
    }

    #[test]
    fn canonical_pair_commutator() {
        let psi = q_basis(0.5, -1.25, 2.0);
        let i_hbar = Complex64::new(0.0, 2.0);
        assert_eq!(
            commutator_apply(OperatorKind::QLeft, OperatorKind::PLeft, &psi),
            psi.scale(i_hbar)
        );
        assert_eq!(
            commutator_apply(OperatorKind::QRight, OperatorKind::PRight, &psi),
            psi.scale(i_hbar)
        );
        assert!(commutator_apply(OperatorKind::QLeft, OperatorKind::PRight, &psi).is_zero());
    }

    #[test]
    fn exp_at_zero_is_identity() {
        let psi = q_basis(0.5, -1.25, 2.0).mul_q();
        for kind in OperatorKind::ALL {
            assert_eq!(exp_operator_apply(kind, 0.0, &psi), psi);
        }
    }

    #[test]
    fn zero_state_has_no_eigenvalue() {
        let zero = WaveFunction::zero(1.0).unwrap();
        assert_eq!(is_eigenstate(OperatorKind::QLeft, &zero), None);
    }
}
