//! Q-basis states on the plane, label shifts by the exponentiated operators,
//! displacement composition and the gauge potential behind the physical
//! operators.

use torusq::plane::{
    covariant_q_left, displacement_compose, plane_p_basis, plane_q_basis, DisplacementLabel,
    GaugeField,
};
use torusq::symbolic::{apply_operator, exp_operator_apply, is_eigenstate, OperatorKind};
use torusq::{Form, Result};

fn main() -> Result<()> {
    let hbar = 1.0;
    let (l, k) = (0.5, -1.25);
    let psi = plane_q_basis(l, k, hbar, Form::Primed)?;
    println!(
        "Q_LEFT eigenvalue {:?}, P_RIGHT eigenvalue {:?}",
        is_eigenstate(OperatorKind::QLeft, &psi),
        is_eigenstate(OperatorKind::PRight, &psi)
    );
    let phi = plane_p_basis(l, k, hbar)?;
    println!(
        "P basis: P_LEFT eigenvalue {:?}, Q_RIGHT eigenvalue {:?}",
        is_eigenstate(OperatorKind::PLeft, &phi),
        is_eigenstate(OperatorKind::QRight, &phi)
    );

    let (a, b) = (0.375, 2.0);
    let k_shift = exp_operator_apply(OperatorKind::QRight, a, &psi);
    let l_shift = exp_operator_apply(OperatorKind::PLeft, -b, &psi);
    println!(
        "e^(ia Q_RIGHT/hbar) psi'(l,k) == psi'(l,k+a): {}",
        k_shift == plane_q_basis(l, k + a, hbar, Form::Primed)?
    );
    println!(
        "e^(-ib P_LEFT/hbar) psi'(l,k) == psi'(l+b,k): {}",
        l_shift == plane_q_basis(l + b, k, hbar, Form::Primed)?
    );

    let d1 = DisplacementLabel::new(1.0, 0.0);
    let d2 = DisplacementLabel::new(0.0, 1.0);
    let d12 = displacement_compose(&d1, &d2, hbar);
    let d21 = displacement_compose(&d2, &d1, hbar);
    println!(
        "D(1,0)D(0,1) phase {:.6}, D(0,1)D(1,0) phase {:.6}",
        d12.phase(),
        d21.phase()
    );

    let field = GaugeField::new(hbar);
    let (q, p) = (0.7, -0.4);
    let wf = psi.mul_p();
    let covariant = covariant_q_left(&field, &wf, q, p);
    let direct = apply_operator(OperatorKind::QLeft, &wf).evaluate(q, p);
    println!(
        "covariant derivative vs Q_LEFT: {:.1e}",
        (covariant - direct).norm()
    );
    println!(
        "path phase {:.6}, numerical {:.6}",
        field.path_phase((q, p)),
        field.path_phase_numerical((q, p), 10_000)
    );
    Ok(())
}
