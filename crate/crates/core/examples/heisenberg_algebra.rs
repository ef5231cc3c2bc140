//! The four first-order operators on a phase-space wave function, their
//! commutators and their exponentials, all computed symbolically.

use torusq::symbolic::{
    apply_operator, commutator_apply, exp_operator_apply, BilinearPhaseTerm, OperatorKind, Phase,
    Poly, WaveFunction,
};
use torusq::{Complex64, Result};

fn main() -> Result<()> {
    let hbar = 0.5;
    // (1 + q p) e^{i(q/4 - p/2 + qp/4)/ħ}
    let prefactor = Poly::from_entries([
        ((0, 0), Complex64::new(1.0, 0.0)),
        ((1, 1), Complex64::new(1.0, 0.0)),
    ]);
    let term = BilinearPhaseTerm::new(
        Complex64::new(1.0, 0.0),
        Phase::new(0.0, 0.25, -0.5, 0.25),
        prefactor,
    );
    let wf = WaveFunction::new(hbar, vec![term])?;

    for kind in OperatorKind::ALL {
        let image = apply_operator(kind, &wf);
        println!(
            "{kind:>7} wf at (0.3, -0.2) = {:.6}",
            image.evaluate(0.3, -0.2)
        );
    }

    let i_hbar_wf = wf.scale(Complex64::new(0.0, hbar));
    for (a, b) in [
        (OperatorKind::QLeft, OperatorKind::PLeft),
        (OperatorKind::QRight, OperatorKind::PRight),
    ] {
        let residual = commutator_apply(a, b, &wf)
            .checked_sub(&i_hbar_wf)?
            .max_abs_coefficient();
        println!("[{a}, {b}] - i hbar: largest coefficient {residual:e}");
    }
    for a in [OperatorKind::QLeft, OperatorKind::PLeft] {
        for b in [OperatorKind::QRight, OperatorKind::PRight] {
            let c = commutator_apply(a, b, &wf);
            println!("[{a}, {b}] is zero: {}", c.is_zero());
        }
    }

    // exp(isQ←/ħ) is a translation in p times a phase linear in q.
    let s = 0.75;
    let shifted = exp_operator_apply(OperatorKind::QLeft, s, &wf);
    let (q, p) = (0.4, 1.1);
    let by_hand = Complex64::cis(s * q / hbar) * wf.evaluate(q, p - s);
    println!(
        "exp(i s Q_LEFT / hbar) wf vs e^(isq/hbar) wf(q, p - s): {:.1e}",
        (shifted.evaluate(q, p) - by_hand).norm()
    );
    Ok(())
}
