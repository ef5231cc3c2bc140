//! The torus phase space `[0,b) × [0,a)` with opposite edges identified.
//!
//! The constant field `1/ħ` of the plane survives on the torus only when the
//! area `a·b` is an integer multiple `N` of Planck's constant; otherwise the
//! holonomy around the fundamental domain is a nontrivial phase and the
//! two-chart gluing cannot be periodic in `p`. Basis factories and grid shift
//! operators therefore refuse non-quantized geometries, while the holonomy
//! and transition diagnostics accept any geometry.

mod basis;
mod charts;
mod geometry;
mod grid;

pub use basis::{torus_p_basis, torus_q_basis};
pub use charts::{
    chart_consistency_check, chart_mismatch, ChartPair, Gluing, DEFAULT_OVERLAP_FRACTION,
};
pub use geometry::{
    holonomy, p_period_phase, transition_function, TorusGeometry, QUANTIZATION_TOLERANCE,
};
pub use grid::{
    gram_matrix, grid_shift_operator, identity_residual, inner_product, sample, Boundary,
    GridFunction, ShiftOperator,
};
