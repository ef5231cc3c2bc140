//! The area condition a·b/h = N: holonomy, periodicity of the transition
//! function and what goes wrong at a half-integer ratio.

use torusq::plane::plane_q_basis;
use torusq::torus::{
    chart_consistency_check, chart_mismatch, holonomy, torus_q_basis, transition_function, Gluing,
    TorusGeometry,
};
use torusq::{Form, Result};

fn main() -> Result<()> {
    for (a, b, h) in [
        (2.0, 3.0, 1.0),
        (1.0, 0.5, 1.0),
        (1.0, 2.5, 1.0),
        (0.5, 4.0, 0.25),
    ] {
        let g = TorusGeometry::new(a, b, h)?;
        let p = 0.3 * a;
        let jump = (transition_function(&g, p + a) - transition_function(&g, p)).norm();
        println!(
            "a={a} b={b} h={h}: ab/h = {:.3}, N = {:?}, holonomy = {:.3}, transition jump over one period = {jump:.3}",
            g.area_ratio(),
            g.n(),
            holonomy(&g)
        );
    }

    let g = TorusGeometry::new(1.0, 2.0, 1.0)?;
    let psi = torus_q_basis(&g, 1, 1, Form::Primed)?;
    let check = chart_consistency_check(&g, 1, 1, g.b() / 8.0)?;
    println!(
        "N = 2, chart consistency residual {:.1e}",
        check.max_residual
    );
    let omitted = chart_mismatch(&psi, &psi, &g, g.b() / 8.0, Gluing::Omitted)?;
    println!("N = 2, gluing without the transition factor: mismatch {omitted:.3}");

    let half = TorusGeometry::new(1.0, 2.5, 1.0)?;
    let wf = plane_q_basis(0.0, 0.0, half.hbar(), Form::Plain)?;
    let omitted = chart_mismatch(&wf, &wf, &half, half.b() / 8.0, Gluing::Omitted)?;
    println!("ab/h = 2.5, gluing without the transition factor: mismatch {omitted:.3}");
    match torus_q_basis(&half, 0, 0, Form::Primed) {
        Ok(_) => println!("unexpected: basis built on a non-quantized torus"),
        Err(e) => println!("torus basis refused: {e}"),
    }
    Ok(())
}
