//! Quantum mechanics on the R² phase space: the two plane-wave bases, the
//! displacement group law and the constant-field gauge potential behind the
//! physical operators.

mod basis;
mod displacement;
mod gauge;

pub use basis::{plane_p_basis, plane_q_basis};
pub use displacement::{displacement_compose, DisplacementLabel};
pub use gauge::{covariant_p_left, covariant_q_left, GaugeField};
