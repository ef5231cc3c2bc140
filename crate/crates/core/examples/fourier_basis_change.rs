//! The discrete Fourier transform relating Q- and P-basis coefficients, with
//! the inner products on the N×N lattice as the reference.

use torusq::physical::{
    dft_basis_change, lattice_basis_change, lattice_overlap_oracle, physical_matrix,
    sign_flagged_labels, BasisTag,
};
use torusq::torus::{ShiftOperator, TorusGeometry};
use torusq::Result;

fn main() -> Result<()> {
    let n = 4i64;
    let g = TorusGeometry::symmetric(n as u64, 1.0)?;

    let numeric = lattice_overlap_oracle(&g)?;
    let closed = lattice_basis_change(n)?;
    println!(
        "N = {n}: lattice inner products vs (1/N) e^(2 pi i (nr - ms)/N): {:.1e}",
        numeric.max_abs_diff(&closed)?
    );

    let k = dft_basis_change(n)?;
    println!(
        "reduced map K, unitarity residual {:.1e}",
        k.unitarity_residual()
    );
    for row in 0..n as usize {
        let entries: Vec<String> = (0..n as usize)
            .map(|col| format!("{:+.3}", k.get(row, col)))
            .collect();
        println!("  {}", entries.join("  "));
    }
    for op in ShiftOperator::ALL {
        let lhs = physical_matrix(op, BasisTag::Q, n)?.matmul(&k)?;
        let rhs = k.matmul(&physical_matrix(op, BasisTag::P, n)?)?;
        println!(
            "{op}: A_Q K - K A_P = {:.1e}",
            lhs.with_basis(BasisTag::Q)
                .max_abs_diff(&rhs.with_basis(BasisTag::Q))?
        );
    }
    println!(
        "labels where an e^(-2 pi i (nr + ms)/N) kernel would differ: {:?}",
        sign_flagged_labels(n)?
    );
    Ok(())
}
