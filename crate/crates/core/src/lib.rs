//! Phase-space quantization of the plane and of the torus.
//!
//! The crate is organised bottom-up:
//!
//! * [`symbolic`]: exact algebra on wave functions of the form
//!   `P(q,p) · exp(i(c0 + cq·q + cp·p + cqp·q·p)/ħ)` and the four first-order
//!   operators `Q←, P←` (left invariant, physical) and `Q→, P→` (right
//!   invariant, shadow), together with their exponentials.
//! * [`plane`]: the P- and Q-bases on R², displacement labels with their
//!   cocycle phase, and the constant-field gauge potential.
//! * [`torus`]: torus geometry, the area quantization condition, the two
//!   chart gluing, torus bases, grid sampling and the quantized inner product.
//! * [`physical`]: the N-dimensional physical space: clock and shift
//!   matrices, the Weyl commutation phase, the trace obstruction and the
//!   discrete Fourier change between Q- and P-bases.
//! * [`report`] / [`suites`]: structured verification reports and the
//!   check suites driven by the `torusq` binary.

pub mod error;
pub mod physical;
pub mod plane;
pub mod report;
pub mod suites;
pub mod symbolic;
pub mod torus;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Which of the two equivalent label conventions a basis factory returns.
///
/// `Plain` is the form with the label-free phase split off (`e^{ipq/ħ} e^{-i(kq+lp)/ħ}`
/// on the plane); `Primed` is the factorised form `e^{i(p-k)(q-l)/ħ}`, which
/// differs from `Plain` by a constant, label-dependent phase and is the form
/// in which the shift actions are pure label translations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Form {
    Plain,
    Primed,
}

/// `e^{2πi·x}` with the argument reduced modulo 1 first, so that large
/// integer parts do not cost precision.
pub(crate) fn turn(x: f64) -> Complex64 {
    let frac = x - x.round();
    Complex64::cis(std::f64::consts::TAU * frac)
}
