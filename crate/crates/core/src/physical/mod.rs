//! The `N`-dimensional physical space left after the equivalences of the
//! torus are imposed.
//!
//! Physical states are labelled by `n mod N` (Q-basis) or `r mod N`
//! (P-basis). The physical operators `exp(2πi Q←/b)` and `exp(-2πi P←/a)`
//! become clock and shift matrices obeying the Weyl relation
//! `C·S = e^{2πi/N} S·C`, the shadow operators become the identity, and the
//! two bases are related by a discrete Fourier transform.

mod fourier;
mod label;
mod matrix;
mod table;
mod weyl;

pub use fourier::{
    dft_basis_change, dft_normalization, ket_expansion_kernel, lattice_basis_change, lattice_index,
    lattice_matrix, lattice_overlap_oracle, physical_matrix, physical_matrix_in_gauge,
    sign_flagged_labels,
};
pub use label::{reduce_label, EquivalenceLabel};
pub use matrix::{BasisTag, FiniteOperator, FiniteState};
pub use table::{
    basis_state, class_functional, gauge_labels, physical_grid_matrix, power_identities,
    table1_verify, ClassProjector, TABLE_TOLERANCE,
};
pub use weyl::{
    clock_matrix, shift_matrix, trace_obstruction_demo, weyl_commutation_check, TRACE_TOLERANCE,
    WEYL_TOLERANCE,
};
