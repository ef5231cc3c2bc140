//! Sampling the torus bases on a grid and checking orthonormality, plus a
//! CSV dump of one state.

use std::io;

use torusq::torus::{
    gram_matrix, identity_residual, inner_product, sample, torus_p_basis, torus_q_basis,
    TorusGeometry,
};
use torusq::Form;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3u64;
    let g = TorusGeometry::symmetric(n, 1.0)?;
    let size = 8 * n as usize;
    let d = n as i64;

    let mut q_states = Vec::new();
    let mut p_states = Vec::new();
    for a in 0..d {
        for b in 0..d {
            q_states.push(sample(&torus_q_basis(&g, a, b, Form::Primed)?, &g, size)?);
            p_states.push(sample(&torus_p_basis(&g, a, b, Form::Plain)?, &g, size)?);
        }
    }
    println!(
        "N = {n}, M = {size}: Q-basis Gram - I = {:.1e}, P-basis Gram - I = {:.1e}",
        identity_residual(&gram_matrix(&q_states)?),
        identity_residual(&gram_matrix(&p_states)?)
    );
    println!(
        "<Psi'_00 | Phi_00> on the M grid = {:.6}",
        inner_product(&q_states[0], &p_states[0])?
    );
    println!(
        "boundary behaviour of Psi'_11: {:?}",
        q_states[d as usize + 1].boundary()
    );

    let small = TorusGeometry::symmetric(1, 1.0)?;
    let grid = sample(&torus_q_basis(&small, 0, 0, Form::Primed)?, &small, 2)?;
    grid.write_csv(io::stdout().lock())?;
    Ok(())
}
