use crate::error::Result;
use crate::symbolic::{Phase, WaveFunction};
use crate::Form;

use super::TorusGeometry;

/// P-basis state on the torus, `exp(2πi(mq/b - np/a))`.
///
/// [`Form::Primed`] multiplies by the constant `e^{2πi·nm/N}`; with that
/// dressing the shift actions of all four operators match the tabulated
/// ones exactly, including the label-shifting rows.
pub fn torus_p_basis(geometry: &TorusGeometry, n: i64, m: i64, form: Form) -> Result<WaveFunction> {
    let big_n = geometry.require_quantized()?;
    let h = geometry.h();
    let c0 = label_phase(h, n, m, big_n, form);
    let phase = Phase::new(
        c0,
        m as f64 * h / geometry.b(),
        -(n as f64) * h / geometry.a(),
        0.0,
    );
    WaveFunction::exponential(geometry.hbar(), phase)
}

/// Q-basis state on the torus.
///
/// * [`Form::Plain`]: `exp(2πi(pq/h - mq/b - np/a))`
/// * [`Form::Primed`]: `exp(2πiN(p/a - m/N)(q/b - n/N))`, the plain form times
///   `e^{2πi·nm/N}`.
///
/// Eigenvalue `n·b/N` of `Q←` and `m·a/N` of `P→`.
pub fn torus_q_basis(geometry: &TorusGeometry, n: i64, m: i64, form: Form) -> Result<WaveFunction> {
    let big_n = geometry.require_quantized()?;
    let h = geometry.h();
    let c0 = label_phase(h, n, m, big_n, form);
    // 2πN/(ab) = 2π/h = 1/ħ under quantization, so the bilinear coefficient is exactly 1.
    let phase = Phase::new(
        c0,
        -(m as f64) * h / geometry.b(),
        -(n as f64) * h / geometry.a(),
        1.0,
    );
    WaveFunction::exponential(geometry.hbar(), phase)
}

// c0 with c0/ħ = 2π·nm/N.
fn label_phase(h: f64, n: i64, m: i64, big_n: u64, form: Form) -> f64 {
    match form {
        Form::Plain => 0.0,
        Form::Primed => h * (n * m) as f64 / big_n as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::{is_eigenstate, OperatorKind};
    use crate::turn;
    use num_complex::Complex64;

    fn close(a: Option<Complex64>, b: f64) -> bool {
        matches!(a, Some(z) if (z - b).norm() < 1e-10)
    }

    #[test]
    fn refuses_non_quantized() {
        let g = TorusGeometry::new(1.0, 0.5, 1.0).unwrap();
        assert!(torus_p_basis(&g, 0, 0, Form::Plain).is_err());
        assert!(torus_q_basis(&g, 0, 0, Form::Primed).is_err());
    }

    #[test]
    fn p_basis_basics() {
        let g = TorusGeometry::new(3.0, 1.0, 1.0).unwrap();
        assert_eq!(
            torus_p_basis(&g, 0, 0, Form::Plain).unwrap(),
            WaveFunction::one(g.hbar()).unwrap()
        );
        let phi = torus_p_basis(&g, 0, 2, Form::Plain).unwrap();
        assert!(close(is_eigenstate(OperatorKind::PLeft, &phi), 2.0));
        let phi = torus_p_basis(&g, 1, 0, Form::Plain).unwrap();
        for &q in &[0.0, 0.3, 0.8] {
            assert!((phi.evaluate(q, g.a()) - phi.evaluate(q, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn q_basis_value_at_its_lattice_point() {
        let g = TorusGeometry::new(2.0, 2.0, 1.0).unwrap();
        let big_n = 4;
        for n in 0..big_n {
            for m in 0..big_n {
                let psi = torus_q_basis(&g, n, m, Form::Primed).unwrap();
                let q = n as f64 * g.b() / big_n as f64;
                let p = m as f64 * g.a() / big_n as f64;
                assert!((psi.evaluate(q, p) - 1.0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn q_basis_eigenvalues() {
        // N = 4, b = 1
        let g = TorusGeometry::new(4.0, 1.0, 1.0).unwrap();
        let psi = torus_q_basis(&g, 1, 0, Form::Primed).unwrap();
        assert!(close(is_eigenstate(OperatorKind::QLeft, &psi), 0.25));
        // a = h = 1 so b = N and the eigenvalue n·h/a = 1
        let g = TorusGeometry::new(1.0, 3.0, 1.0).unwrap();
        let psi = torus_q_basis(&g, 1, 2, Form::Plain).unwrap();
        assert!(close(is_eigenstate(OperatorKind::QLeft, &psi), 1.0));
        assert!(close(is_eigenstate(OperatorKind::PRight, &psi), 2.0 / 3.0));
    }

    #[test]
    fn forms_differ_by_label_phase() {
        let g = TorusGeometry::new(1.5, 2.0, 1.0).unwrap();
        for (n, m) in [(1, 2), (2, 2), (-1, 5)] {
            let plain = torus_q_basis(&g, n, m, Form::Plain).unwrap();
            let primed = torus_q_basis(&g, n, m, Form::Primed).unwrap();
            let ratio = primed.evaluate(0.37, 1.21) / plain.evaluate(0.37, 1.21);
            assert!((ratio - turn((n * m) as f64 / 3.0)).norm() < 1e-12);
        }
    }
}
