use crate::error::Result;
use crate::symbolic::{Phase, WaveFunction};
use crate::Form;

/// P-basis plane wave `e^{i(kq - lp)/ħ}`: eigenvalue `k` of `P←` and `l` of `Q→`.
pub fn plane_p_basis(l: f64, k: f64, hbar: f64) -> Result<WaveFunction> {
    WaveFunction::exponential(hbar, Phase::new(0.0, k, -l, 0.0))
}

/// Q-basis state: eigenvalue `l` of `Q←` and `k` of `P→`.
///
/// * [`Form::Plain`]: `e^{ipq/ħ} e^{-i(kq + lp)/ħ}`
/// * [`Form::Primed`]: `e^{i(p - k)(q - l)/ħ}`, i.e. the plain form times `e^{ikl/ħ}`.
pub fn plane_q_basis(l: f64, k: f64, hbar: f64, form: Form) -> Result<WaveFunction> {
    let c0 = match form {
        Form::Plain => 0.0,
        Form::Primed => k * l,
    };
    WaveFunction::exponential(hbar, Phase::new(c0, -k, -l, 1.0))
}
