use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const UNIT_TOLERANCE: f64 = 1e-12;

/// A displacement `D(q, p)` carried as its shift labels plus the accumulated
/// cocycle phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LabelRepr")]
pub struct DisplacementLabel {
    #[serde(rename = "dq")]
    q_shift: f64,
    #[serde(rename = "dp")]
    p_shift: f64,
    #[serde(with = "complex_pair")]
    phase: Complex64,
}

impl DisplacementLabel {
    pub fn new(q_shift: f64, p_shift: f64) -> Self {
        Self {
            q_shift,
            p_shift,
            phase: Complex64::new(1.0, 0.0),
        }
    }

    pub fn with_phase(q_shift: f64, p_shift: f64, phase: Complex64) -> Result<Self> {
        let modulus = phase.norm();
        if (modulus - 1.0).abs() > UNIT_TOLERANCE {
            return Err(Error::NonUnitPhase(modulus));
        }
        Ok(Self {
            q_shift,
            p_shift,
            phase,
        })
    }

    pub fn q_shift(&self) -> f64 {
        self.q_shift
    }

    pub fn p_shift(&self) -> f64 {
        self.p_shift
    }

    pub fn phase(&self) -> Complex64 {
        self.phase
    }
}

/// `D(b,a) · D(q,p) = D(q+b, p+a) · e^{i(aq - bp)/(2ħ)}` with `first = D(b,a)`
/// (the left factor) and `second = D(q,p)`.
pub fn displacement_compose(
    first: &DisplacementLabel,
    second: &DisplacementLabel,
    hbar: f64,
) -> DisplacementLabel {
    let (b, a) = (first.q_shift, first.p_shift);
    let (q, p) = (second.q_shift, second.p_shift);
    let cocycle = Complex64::cis((a * q - b * p) / (2.0 * hbar));
    let phase = first.phase * second.phase * cocycle;
    DisplacementLabel {
        q_shift: q + b,
        p_shift: p + a,
        // renormalise so unit modulus survives long products
        phase: phase / phase.norm(),
    }
}

#[derive(Deserialize)]
struct LabelRepr {
    dq: f64,
    dp: f64,
    phase: [f64; 2],
}

impl TryFrom<LabelRepr> for DisplacementLabel {
    type Error = Error;

    fn try_from(r: LabelRepr) -> Result<Self> {
        DisplacementLabel::with_phase(r.dq, r.dp, Complex64::new(r.phase[0], r.phase[1]))
    }
}

mod complex_pair {
    use num_complex::Complex64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &Complex64, s: S) -> Result<S::Ok, S::Error> {
        [c.re, c.im].serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_element() {
        let d = DisplacementLabel::with_phase(0.3, -1.2, Complex64::cis(0.4)).unwrap();
        let e = DisplacementLabel::new(0.0, 0.0);
        let out = displacement_compose(&e, &d, 1.0);
        assert_eq!((out.q_shift(), out.p_shift()), (0.3, -1.2));
        assert!((out.phase() - d.phase()).norm() < 1e-15);
    }

    #[test]
    fn cocycle_phase() {
        // a=0, b=1, q=0, p=1 -> (aq - bp)/(2ħ) = -1/2
        let first = DisplacementLabel::new(1.0, 0.0);
        let second = DisplacementLabel::new(0.0, 1.0);
        let out = displacement_compose(&first, &second, 1.0);
        assert_eq!((out.q_shift(), out.p_shift()), (1.0, 1.0));
        assert!((out.phase() - Complex64::cis(-0.5)).norm() < 1e-15);
    }

    #[test]
    fn inverse_pair_has_trivial_phase() {
        let d = DisplacementLabel::new(1.7, -0.4);
        let inv = DisplacementLabel::new(-1.7, 0.4);
        let out = displacement_compose(&d, &inv, 0.7);
        assert_eq!((out.q_shift(), out.p_shift()), (0.0, 0.0));
        assert!((out.phase() - 1.0).norm() < 1e-15);
    }

    #[test]
    fn rejects_non_unit_phase() {
        assert!(matches!(
            DisplacementLabel::with_phase(0.0, 0.0, Complex64::new(1.1, 0.0)),
            Err(Error::NonUnitPhase(_))
        ));
    }

    #[test]
    fn json_layout() {
        let d = DisplacementLabel::new(1.0, -2.0);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"{"dq":1.0,"dp":-2.0,"phase":[1.0,0.0]}"#);
        assert_eq!(serde_json::from_str::<DisplacementLabel>(&text).unwrap(), d);
        let bad = r#"{"dq":1.0,"dp":-2.0,"phase":[2.0,0.0]}"#;
        assert!(serde_json::from_str::<DisplacementLabel>(bad).is_err());
    }
}
