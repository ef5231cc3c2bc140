//! Exact algebra on the family `P(q,p) · exp(i(c0 + cq·q + cp·p + cqp·q·p)/ħ)`.
//!
//! The family is closed under multiplication by `q` and `p`, differentiation,
//! translation and multiplication by linear phases, which is all the
//! Heisenberg operators and their exponentials ever need.

mod ops;
mod poly;
mod wave;

pub use ops::{
    apply_operator, commutator_apply, exp_operator_apply, is_eigenstate, OperatorKind,
    EIGEN_TOLERANCE,
};
pub use poly::{Exponents, Poly};
pub use wave::{BilinearPhaseTerm, Phase, WaveFunction, MERGE_TOLERANCE};
