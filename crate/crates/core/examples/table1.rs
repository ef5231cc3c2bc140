//! The shift actions of the four exponentiated operators on both torus bases,
//! checked on the grid, and the matrices they induce on the physical space.

use torusq::physical::BasisTag;
use torusq::physical::{physical_grid_matrix, physical_matrix, power_identities, table1_verify};
use torusq::torus::{ShiftOperator, TorusGeometry};
use torusq::Result;

fn main() -> Result<()> {
    let g = TorusGeometry::symmetric(4, 1.0)?;
    let size = 32;
    for check in table1_verify(&g, size, 1e-12)? {
        println!(
            "{:<24} {:<26} residual {:.1e}",
            check.check,
            check.params["expected"].as_str().unwrap_or(""),
            check.max_residual
        );
    }
    for check in power_identities(&g, size, 1e-12)? {
        println!("{:<30} residual {:.1e}", check.check, check.max_residual);
    }

    let g = TorusGeometry::symmetric(3, 1.0)?;
    for basis in [BasisTag::Q, BasisTag::P] {
        let from_grid = physical_grid_matrix(&g, ShiftOperator::ExpPLeft, basis, 24, 0)?;
        let closed = physical_matrix(ShiftOperator::ExpPLeft, basis, 3)?;
        println!(
            "exp_p_left in the {basis} basis, N = 3, grid vs closed form {:.1e}:\n{}",
            from_grid.max_abs_diff(&closed)?,
            closed.to_json()
        );
    }
    Ok(())
}
