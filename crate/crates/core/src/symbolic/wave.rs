use std::cmp::Ordering;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Two phase tuples closer than this (entrywise, absolute) are the same phase.
pub const MERGE_TOLERANCE: f64 = 1e-12;

/// Coefficients of the bilinear phase `c0 + cq·q + cp·p + cqp·q·p`, in action
/// units (divided by ħ on evaluation).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Phase {
    pub c0: f64,
    pub cq: f64,
    pub cp: f64,
    pub cqp: f64,
}

impl Phase {
    pub const ZERO: Phase = Phase {
        c0: 0.0,
        cq: 0.0,
        cp: 0.0,
        cqp: 0.0,
    };

    pub fn new(c0: f64, cq: f64, cp: f64, cqp: f64) -> Self {
        Self { c0, cq, cp, cqp }
    }

    pub fn value(&self, q: f64, p: f64) -> f64 {
        self.c0 + self.cq * q + self.cp * p + self.cqp * q * p
    }

    pub fn approx_eq(&self, other: &Phase, tol: f64) -> bool {
        (self.c0 - other.c0).abs() <= tol
            && (self.cq - other.cq).abs() <= tol
            && (self.cp - other.cp).abs() <= tol
            && (self.cqp - other.cqp).abs() <= tol
    }

    fn total_cmp(&self, other: &Phase) -> Ordering {
        self.c0
            .total_cmp(&other.c0)
            .then(self.cq.total_cmp(&other.cq))
            .then(self.cp.total_cmp(&other.cp))
            .then(self.cqp.total_cmp(&other.cqp))
    }

    // -0.0 + 0.0 == +0.0, so signed zeros cannot perturb the sort order.
    fn normalized(self) -> Phase {
        Phase::new(self.c0 + 0.0, self.cq + 0.0, self.cp + 0.0, self.cqp + 0.0)
    }

    /// Phase of `f(q + dq, p + dp)`.
    fn translated(&self, dq: f64, dp: f64) -> Phase {
        Phase {
            c0: self.c0 + self.cq * dq + self.cp * dp + self.cqp * dq * dp,
            cq: self.cq + self.cqp * dp,
            cp: self.cp + self.cqp * dq,
            cqp: self.cqp,
        }
    }
}

/// One member of the closed family: `amplitude · P(q,p) · exp(i·phase(q,p)/ħ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearPhaseTerm {
    amplitude: Complex64,
    phase: Phase,
    prefactor: Poly,
}

impl BilinearPhaseTerm {
    pub fn new(amplitude: Complex64, phase: Phase, prefactor: Poly) -> Self {
        Self {
            amplitude,
            phase,
            prefactor,
        }
    }

    /// A pure exponential `exp(i·phase/ħ)`.
    pub fn exponential(phase: Phase) -> Self {
        Self::new(Complex64::new(1.0, 0.0), phase, Poly::one())
    }

    pub fn amplitude(&self) -> Complex64 {
        self.amplitude
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn prefactor(&self) -> &Poly {
        &self.prefactor
    }

    pub fn is_zero(&self) -> bool {
        self.amplitude == Complex64::new(0.0, 0.0) || self.prefactor.is_zero()
    }

    pub fn evaluate(&self, q: f64, p: f64, hbar: f64) -> Complex64 {
        self.amplitude * self.prefactor.eval(q, p) * Complex64::cis(self.phase.value(q, p) / hbar)
    }

    // Amplitude folded into the prefactor.
    fn effective_prefactor(&self) -> Poly {
        if self.amplitude == Complex64::new(1.0, 0.0) {
            self.prefactor.clone()
        } else {
            self.prefactor.scale(self.amplitude)
        }
    }
}

/// Finite sum of [`BilinearPhaseTerm`]s sharing one ħ, kept in canonical form:
/// amplitudes folded into prefactors, terms with the same phase (within
/// [`MERGE_TOLERANCE`]) merged, zero terms dropped, terms sorted by
/// `(c0, cq, cp, cqp)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "WaveFunctionRepr", try_from = "WaveFunctionRepr")]
pub struct WaveFunction {
    hbar: f64,
    terms: Vec<BilinearPhaseTerm>,
}

impl WaveFunction {
    pub fn new(hbar: f64, terms: Vec<BilinearPhaseTerm>) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::NonPositiveHbar(hbar));
        }
        Ok(Self::from_raw(hbar, terms))
    }

    pub fn zero(hbar: f64) -> Result<Self> {
        Self::new(hbar, Vec::new())
    }

    /// The constant function 1.
    pub fn one(hbar: f64) -> Result<Self> {
        Self::exponential(hbar, Phase::ZERO)
    }

    pub fn exponential(hbar: f64, phase: Phase) -> Result<Self> {
        Self::new(hbar, vec![BilinearPhaseTerm::exponential(phase)])
    }

    pub(crate) fn from_raw(hbar: f64, terms: Vec<BilinearPhaseTerm>) -> Self {
        Self {
            hbar,
            terms: canonicalize(terms),
        }
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn terms(&self) -> &[BilinearPhaseTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn evaluate(&self, q: f64, p: f64) -> Complex64 {
        self.terms.iter().map(|t| t.evaluate(q, p, self.hbar)).sum()
    }

    /// Largest coefficient modulus over all terms.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.amplitude.norm() * t.prefactor.max_abs())
            .fold(0.0, f64::max)
    }

    pub fn checked_add(&self, other: &WaveFunction) -> Result<WaveFunction> {
        self.same_hbar(other)?;
        Ok(self.plus(other))
    }

    pub fn checked_sub(&self, other: &WaveFunction) -> Result<WaveFunction> {
        self.same_hbar(other)?;
        Ok(self.plus(&other.scale(Complex64::new(-1.0, 0.0))))
    }

    fn same_hbar(&self, other: &WaveFunction) -> Result<()> {
        if self.hbar == other.hbar {
            Ok(())
        } else {
            Err(Error::HbarMismatch {
                left: self.hbar,
                right: other.hbar,
            })
        }
    }

    pub(crate) fn plus(&self, other: &WaveFunction) -> WaveFunction {
        debug_assert_eq!(self.hbar, other.hbar);
        let terms = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .cloned()
            .collect();
        Self::from_raw(self.hbar, terms)
    }

    pub fn scale(&self, s: Complex64) -> WaveFunction {
        self.map_prefactors(|p| p.scale(s))
    }

    /// Multiplication by `q`.
    pub fn mul_q(&self) -> WaveFunction {
        self.map_prefactors(Poly::mul_q)
    }

    /// Multiplication by `p`.
    pub fn mul_p(&self) -> WaveFunction {
        self.map_prefactors(Poly::mul_p)
    }

    /// Multiplication by `exp(i(alpha·q + beta·p)/ħ)`.
    pub fn multiply_phase(&self, alpha: f64, beta: f64) -> WaveFunction {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut phase = t.phase;
                phase.cq += alpha;
                phase.cp += beta;
                BilinearPhaseTerm::new(t.amplitude, phase, t.prefactor.clone())
            })
            .collect();
        Self::from_raw(self.hbar, terms)
    }

    /// `g(q, p) = f(q + dq, p + dp)`.
    pub fn translate(&self, dq: f64, dp: f64) -> WaveFunction {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                BilinearPhaseTerm::new(
                    t.amplitude,
                    t.phase.translated(dq, dp),
                    t.prefactor.translate(dq, dp),
                )
            })
            .collect();
        Self::from_raw(self.hbar, terms)
    }

    /// Exact `∂f/∂q`.
    pub fn partial_q(&self) -> WaveFunction {
        let i_over_hbar = Complex64::new(0.0, 1.0 / self.hbar);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let gradient = t
                    .prefactor
                    .scale(Complex64::new(t.phase.cq, 0.0))
                    .add(&t.prefactor.mul_p().scale(Complex64::new(t.phase.cqp, 0.0)));
                let prefactor = t.prefactor.d_dq().add(&gradient.scale(i_over_hbar));
                BilinearPhaseTerm::new(t.amplitude, t.phase, prefactor)
            })
            .collect();
        Self::from_raw(self.hbar, terms)
    }

    /// Exact `∂f/∂p`.
    pub fn partial_p(&self) -> WaveFunction {
        let i_over_hbar = Complex64::new(0.0, 1.0 / self.hbar);
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let gradient = t
                    .prefactor
                    .scale(Complex64::new(t.phase.cp, 0.0))
                    .add(&t.prefactor.mul_q().scale(Complex64::new(t.phase.cqp, 0.0)));
                let prefactor = t.prefactor.d_dp().add(&gradient.scale(i_over_hbar));
                BilinearPhaseTerm::new(t.amplitude, t.phase, prefactor)
            })
            .collect();
        Self::from_raw(self.hbar, terms)
    }

    /// Max coefficient modulus of `self - other`; phases are matched with
    /// [`MERGE_TOLERANCE`].
    pub fn distance(&self, other: &WaveFunction) -> Result<f64> {
        Ok(self.checked_sub(other)?.max_abs_coefficient())
    }

    pub fn approx_eq(&self, other: &WaveFunction, tol: f64) -> bool {
        matches!(self.distance(other), Ok(d) if d <= tol)
    }

    fn map_prefactors(&self, f: impl Fn(&Poly) -> Poly) -> WaveFunction {
        let terms = self
            .terms
            .iter()
            .map(|t| BilinearPhaseTerm::new(t.amplitude, t.phase, f(&t.prefactor)))
            .collect();
        Self::from_raw(self.hbar, terms)
    }
}

fn canonicalize(terms: Vec<BilinearPhaseTerm>) -> Vec<BilinearPhaseTerm> {
    let mut groups: Vec<(Phase, Poly)> = Vec::new();
    for term in terms {
        if term.is_zero() {
            continue;
        }
        let prefactor = term.effective_prefactor();
        match groups
            .iter_mut()
            .find(|(phase, _)| phase.approx_eq(&term.phase, MERGE_TOLERANCE))
        {
            Some((_, acc)) => *acc = acc.add(&prefactor),
            None => groups.push((term.phase.normalized(), prefactor)),
        }
    }
    groups.retain(|(_, p)| !p.is_zero());
    groups.sort_by(|a, b| a.0.total_cmp(&b.0));
    groups
        .into_iter()
        .map(|(phase, prefactor)| {
            BilinearPhaseTerm::new(Complex64::new(1.0, 0.0), phase, prefactor)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    amp: [f64; 2],
    c0: f64,
    cq: f64,
    cp: f64,
    cqp: f64,
    prefactor: Vec<(u32, u32, f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct WaveFunctionRepr {
    hbar: f64,
    terms: Vec<TermRepr>,
}

impl From<WaveFunction> for WaveFunctionRepr {
    fn from(wf: WaveFunction) -> Self {
        let terms = wf
            .terms
            .iter()
            .map(|t| TermRepr {
                amp: [t.amplitude.re, t.amplitude.im],
                c0: t.phase.c0,
                cq: t.phase.cq,
                cp: t.phase.cp,
                cqp: t.phase.cqp,
                prefactor: t
                    .prefactor
                    .iter()
                    .map(|((a, b), c)| (a, b, c.re, c.im))
                    .collect(),
            })
            .collect();
        WaveFunctionRepr {
            hbar: wf.hbar,
            terms,
        }
    }
}

impl TryFrom<WaveFunctionRepr> for WaveFunction {
    type Error = Error;

    fn try_from(repr: WaveFunctionRepr) -> Result<Self> {
        let terms = repr
            .terms
            .into_iter()
            .map(|t| {
                let prefactor = Poly::from_entries(
                    t.prefactor
                        .into_iter()
                        .map(|(a, b, re, im)| ((a, b), Complex64::new(re, im))),
                );
                BilinearPhaseTerm::new(
                    Complex64::new(t.amp[0], t.amp[1]),
                    Phase::new(t.c0, t.cq, t.cp, t.cqp),
                    prefactor,
                )
            })
            .collect();
        WaveFunction::new(repr.hbar, terms)
    }
}
