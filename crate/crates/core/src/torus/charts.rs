use crate::error::{Error, Result};
use crate::report::CheckResult;
use crate::symbolic::WaveFunction;
use crate::Form;

use super::{torus_q_basis, transition_function, TorusGeometry};

/// Default overlap half-width as a fraction of `b`.
pub const DEFAULT_OVERLAP_FRACTION: f64 = 1.0 / 8.0;

const CHART_TOLERANCE: f64 = 1e-12;
const STRIP_SAMPLES: usize = 16;

/// Two charts covering the torus in `q` (all `p`):
/// chart I on `(-δ, b/2 + δ)` and chart II on `(b/2 - δ, b + δ)`.
///
/// They overlap on the interior strip around `q = b/2`, where coordinates
/// agree, and on the seam strip around `q ≡ 0`, where a chart-I coordinate
/// `q` is the chart-II coordinate `q + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartPair {
    b: f64,
    delta: f64,
}

impl ChartPair {
    pub fn new(geometry: &TorusGeometry, delta: f64) -> Result<Self> {
        let b = geometry.b();
        if !(delta > 0.0 && delta < b / 4.0) {
            return Err(Error::BadOverlap { delta, b });
        }
        Ok(Self { b, delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn chart_one(&self) -> (f64, f64) {
        (-self.delta, self.b / 2.0 + self.delta)
    }

    pub fn chart_two(&self) -> (f64, f64) {
        (self.b / 2.0 - self.delta, self.b + self.delta)
    }

    /// Interior points of the seam strip, in chart-I coordinates.
    pub fn seam_points(&self) -> impl Iterator<Item = f64> + '_ {
        strip_points(-self.delta, self.delta)
    }

    /// Interior points of the strip around `b/2`, shared coordinates.
    pub fn interior_points(&self) -> impl Iterator<Item = f64> + '_ {
        strip_points(self.b / 2.0 - self.delta, self.b / 2.0 + self.delta)
    }
}

fn strip_points(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    (0..STRIP_SAMPLES).map(move |i| lo + (hi - lo) * (i as f64 + 0.5) / STRIP_SAMPLES as f64)
}

/// How chart II is matched to chart I on the seam strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gluing {
    /// `ψ_II = e^{ibp/ħ} ψ_I`
    Transition,
    /// `ψ_II = ψ_I`, i.e. ignoring the string at `q ≡ 0`.
    Omitted,
}

/// Largest `|ψ_II - g·ψ_I|` over both overlap strips, where `chart_one` and
/// `chart_two` are the local expressions of the wave function in each chart.
/// The gluing `g` is the identity on the interior strip.
pub fn chart_mismatch(
    chart_one: &WaveFunction,
    chart_two: &WaveFunction,
    geometry: &TorusGeometry,
    delta: f64,
    gluing: Gluing,
) -> Result<f64> {
    let charts = ChartPair::new(geometry, delta)?;
    let a = geometry.a();
    let b = geometry.b();
    let p_samples = 16 * (geometry.area_ratio().ceil() as usize).max(1);
    let mut worst = 0.0f64;
    for i in 0..p_samples {
        let p = a * i as f64 / p_samples as f64;
        let glue = match gluing {
            Gluing::Transition => transition_function(geometry, p),
            Gluing::Omitted => 1.0.into(),
        };
        for q in charts.seam_points() {
            let two = chart_two.evaluate(q + b, p);
            let one = chart_one.evaluate(q, p);
            worst = worst.max((two - glue * one).norm());
        }
        for q in charts.interior_points() {
            worst = worst.max((chart_two.evaluate(q, p) - chart_one.evaluate(q, p)).norm());
        }
    }
    Ok(worst)
}

/// Chart agreement of the Q-basis state `(n, m)` in both label forms, with
/// the same closed-form expression used as the local wave function in both
/// charts.
pub fn chart_consistency_check(
    geometry: &TorusGeometry,
    n: i64,
    m: i64,
    delta: f64,
) -> Result<CheckResult> {
    geometry.require_quantized()?;
    let mut worst = 0.0f64;
    for form in [Form::Plain, Form::Primed] {
        let psi = torus_q_basis(geometry, n, m, form)?;
        worst = worst.max(chart_mismatch(
            &psi,
            &psi,
            geometry,
            delta,
            Gluing::Transition,
        )?);
    }
    Ok(
        CheckResult::at_most("charts.consistency", worst, CHART_TOLERANCE)
            .with_param("n", n)
            .with_param("m", m)
            .with_param("delta", delta),
    )
}
