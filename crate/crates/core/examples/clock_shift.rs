//! Clock and shift matrices, the Weyl phase and why [Q, P] = iħ has no
//! finite-dimensional realisation.

use torusq::physical::{
    clock_matrix, shift_matrix, trace_obstruction_demo, weyl_commutation_check, BasisTag,
    FiniteOperator,
};
use torusq::Result;

fn main() -> Result<()> {
    for n in [2i64, 3, 5, 7] {
        let omega = weyl_commutation_check(n)?;
        println!(
            "N = {n}: CS = w SC with w = {omega:.6}, w^N = {:.6}",
            omega.powu(n as u32)
        );
    }

    let n = 5;
    let s = shift_matrix(n)?;
    let id = FiniteOperator::identity(BasisTag::Q, n as usize)?;
    println!(
        "shift^{n} - I = {:e}, clock unitarity residual {:.1e}",
        s.pow(n as u32).max_abs_diff(&id)?,
        clock_matrix(n)?.unitarity_residual()
    );

    for n in [2, 3, 8] {
        let check = trace_obstruction_demo(n, 100, 7)?;
        println!(
            "N = {n}: max |tr[A,B]| / (|A||B|) over 100 random pairs = {:.1e}, while tr(i hbar I) = i hbar N",
            check.max_residual
        );
    }
    Ok(())
}
