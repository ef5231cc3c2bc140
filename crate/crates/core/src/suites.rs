//! Verification suites run by `torusq verify`.
//!
//! Each suite returns a list of [`CheckResult`]s. Residuals that are exact
//! by construction (symbolic identities on dyadic inputs, permutation
//! matrices) are checked against a tolerance of zero; floating-point
//! identities use the configured tolerance, `1e-12` by default.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::physical::{
    clock_matrix, dft_basis_change, lattice_basis_change, lattice_matrix, lattice_overlap_oracle,
    physical_matrix, physical_matrix_in_gauge, power_identities, shift_matrix, sign_flagged_labels,
    table1_verify, trace_obstruction_demo, weyl_commutation_check, BasisTag, ClassProjector,
    FiniteOperator,
};
use crate::plane::{
    covariant_p_left, covariant_q_left, displacement_compose, plane_q_basis, DisplacementLabel,
    GaugeField,
};
use crate::report::CheckResult;
use crate::symbolic::{
    apply_operator, commutator_apply, exp_operator_apply, BilinearPhaseTerm, OperatorKind, Phase,
    Poly, WaveFunction,
};
use crate::torus::{
    chart_consistency_check, chart_mismatch, gram_matrix, holonomy, identity_residual, sample,
    torus_p_basis, torus_q_basis, transition_function, Gluing, ShiftOperator, TorusGeometry,
    DEFAULT_OVERLAP_FRACTION,
};
use crate::Form;

pub const DEFAULT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_SEED: u64 = 20_240_601;

/// Tolerance of comparisons against independent numerical oracles.
pub const ORACLE_TOLERANCE: f64 = 1e-10;

/// Separation required when a missing gauge factor must be visible.
pub const DETECTION_THRESHOLD: f64 = 0.1;

const FD_STEP: f64 = 1e-5;
const FD_TOLERANCE: f64 = 1e-6;
const LINE_STEPS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Orthonormality,
    Table1,
    Weyl,
    Dft,
    Charts,
    Commutators,
    All,
}

impl Suite {
    /// Every suite except `All`, in the order `All` runs them.
    pub const EACH: [Suite; 6] = [
        Suite::Commutators,
        Suite::Charts,
        Suite::Orthonormality,
        Suite::Table1,
        Suite::Weyl,
        Suite::Dft,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthonormality => "orthonormality",
            Suite::Table1 => "table1",
            Suite::Weyl => "weyl",
            Suite::Dft => "dft",
            Suite::Charts => "charts",
            Suite::Commutators => "commutators",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub geometry: TorusGeometry,
    /// Samples per axis, `M`.
    pub grid_size: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl SuiteConfig {
    /// Defaults for a quantized geometry: `M = 8N`, tolerance `1e-12`.
    pub fn new(geometry: TorusGeometry) -> Result<Self> {
        let n = geometry.require_quantized()? as usize;
        Ok(Self {
            geometry,
            grid_size: 8 * n,
            tolerance: DEFAULT_TOLERANCE,
            seed: DEFAULT_SEED,
        })
    }

    /// The square geometry `a = b = √(N·h)`.
    pub fn symmetric(n: u64, h: f64) -> Result<Self> {
        Self::new(TorusGeometry::symmetric(n, h)?)
    }

    fn dim(&self) -> i64 {
        self.geometry.n().unwrap_or(1) as i64
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    config.geometry.require_quantized()?;
    match suite {
        Suite::Orthonormality => orthonormality(config),
        Suite::Table1 => table1(config),
        Suite::Weyl => weyl(config),
        Suite::Dft => dft(config),
        Suite::Charts => charts(config),
        Suite::Commutators => commutators(config),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, config)?);
            }
            Ok(out)
        }
    }
}

fn orthonormality(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let g = &config.geometry;
    let n = config.dim();
    let labels: Vec<(i64, i64)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for (name, basis, form) in [
        ("orthonormality.q_basis", BasisTag::Q, Form::Primed),
        ("orthonormality.p_basis", BasisTag::P, Form::Plain),
    ] {
        let states = labels
            .iter()
            .map(|&(a, b)| {
                let wf = match basis {
                    BasisTag::Q => torus_q_basis(g, a, b, form)?,
                    BasisTag::P => torus_p_basis(g, a, b, form)?,
                };
                sample(&wf, g, config.grid_size)
            })
            .collect::<Result<Vec<_>>>()?;
        let gram = gram_matrix(&states)?;
        out.push(
            CheckResult::at_most(name, identity_residual(&gram), config.tolerance)
                .with_param("N", n)
                .with_param("M", config.grid_size)
                .with_param("states", states.len()),
        );
    }
    Ok(out)
}

fn table1(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let g = &config.geometry;
    let n = config.dim();
    let mut out = table1_verify(g, config.grid_size, config.tolerance)?;
    out.extend(power_identities(g, config.grid_size, config.tolerance)?);

    // Matrix elements between sampled states against the reduced matrices,
    // for several values of the gauge label.
    let gauges = crate::physical::gauge_labels(n as usize);
    for basis in [BasisTag::Q, BasisTag::P] {
        let projector = ClassProjector::new(g, basis, config.grid_size)?;
        for op in ShiftOperator::ALL {
            let mut worst: f64 = 0.0;
            for &gauge in &gauges {
                let got = projector.matrix(op, gauge)?;
                let expected = physical_matrix_in_gauge(op, basis, n, gauge)?;
                worst = worst.max(got.max_abs_diff(&expected)?);
            }
            out.push(
                CheckResult::at_most(
                    format!("physical.grid_matrix.{op}.{basis}"),
                    worst,
                    config.tolerance,
                )
                .with_param("N", n)
                .with_param("M", config.grid_size)
                .with_param("gauge_labels", gauges.clone()),
            );
        }
    }
    Ok(out)
}

fn weyl(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.dim();
    let tol = config.tolerance;
    let clock = clock_matrix(n)?;
    let shift = shift_matrix(n)?;
    let identity = FiniteOperator::identity(BasisTag::Q, n as usize)?;
    let omega = weyl_commutation_check(n)?;

    let mut out = vec![
        CheckResult::at_most(
            "weyl.commutation",
            clock
                .matmul(&shift)?
                .max_abs_diff(&shift.matmul(&clock)?.scale(omega))?,
            tol,
        )
        .with_param("N", n)
        .with_param("omega", json!([omega.re, omega.im])),
        CheckResult::at_most("weyl.omega_power", (omega.powu(n as u32) - 1.0).norm(), tol)
            .with_param("N", n),
    ];
    if n > 1 {
        let closest = (1..n)
            .map(|k| (omega.powu(k as u32) - 1.0).norm())
            .fold(f64::INFINITY, f64::min);
        out.push(CheckResult::at_least("weyl.omega_primitive", closest, tol).with_param("N", n));
    }
    let shift_n = shift.pow(n as u32);
    let clock_n = clock.pow(n as u32);
    out.extend([
        CheckResult::at_most("weyl.shift_power", shift_n.max_abs_diff(&identity)?, 0.0)
            .with_param("N", n),
        CheckResult::at_most("weyl.clock_power", clock_n.max_abs_diff(&identity)?, tol)
            .with_param("N", n),
        CheckResult::at_most(
            "weyl.power_commutes",
            clock.commutator(&shift_n)?.norm(),
            tol,
        )
        .with_param("N", n),
        CheckResult::at_most(
            "weyl.unitarity",
            clock.unitarity_residual().max(shift.unitarity_residual()),
            tol,
        )
        .with_param("N", n),
        trace_obstruction_demo(n, 100, config.seed)?,
    ]);
    Ok(out)
}

fn dft(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let n = config.dim();
    let tol = config.tolerance;
    let k = dft_basis_change(n)?;
    let u = lattice_basis_change(n)?;
    let mut out = vec![
        CheckResult::at_most("dft.unitarity", k.unitarity_residual(), tol).with_param("N", n),
        CheckResult::at_most("dft.lattice_unitarity", u.unitarity_residual(), tol)
            .with_param("N", n),
    ];
    for op in ShiftOperator::ALL {
        let reduced = k
            .matmul(&physical_matrix(op, BasisTag::P, n)?)?
            .max_abs_diff(&physical_matrix(op, BasisTag::Q, n)?.matmul(&k)?)?;
        let lattice = u
            .matmul(&lattice_matrix(op, BasisTag::P, n)?)?
            .max_abs_diff(&lattice_matrix(op, BasisTag::Q, n)?.matmul(&u)?)?;
        out.push(
            CheckResult::at_most(format!("dft.intertwine.{op}"), reduced, tol).with_param("N", n),
        );
        out.push(
            CheckResult::at_most(format!("dft.lattice_intertwine.{op}"), lattice, tol)
                .with_param("N", n),
        );
    }

    // Sampled inner products on the N × N lattice against both closed forms.
    let oracle = lattice_overlap_oracle(&config.geometry)?;
    let dim = n as usize;
    let scale = (dim as f64).sqrt();
    let mut reduced_worst: f64 = 0.0;
    for a in 0..dim {
        for s in 0..dim {
            for r in 0..dim {
                let sampled = oracle.get(a * dim, s * dim + r) * scale;
                reduced_worst = reduced_worst.max((sampled - k.get(a, r)).norm());
            }
        }
    }
    let flagged: Vec<[i64; 2]> = sign_flagged_labels(n)?
        .into_iter()
        .map(|(a, b)| [a, b])
        .collect();
    out.push(
        CheckResult::at_most("dft.oracle", oracle.max_abs_diff(&u)?, ORACLE_TOLERANCE)
            .with_param("N", n)
            .with_param("normalization", 1.0 / dim as f64)
            .with_param("sign_flagged_labels", flagged),
    );
    out.push(
        CheckResult::at_most("dft.reduced_oracle", reduced_worst, ORACLE_TOLERANCE)
            .with_param("N", n)
            .with_param("normalization", 1.0 / scale),
    );
    Ok(out)
}

fn charts(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let g = &config.geometry;
    let n = config.dim();
    let delta = DEFAULT_OVERLAP_FRACTION * g.b();
    let mut out = Vec::new();

    let mut worst: f64 = 0.0;
    let mut labels = vec![(0, 0), (1 % n, 1 % n), (n - 1, 0)];
    labels.dedup();
    for &(a, b) in &labels {
        worst = worst.max(chart_consistency_check(g, a, b, delta)?.max_residual);
    }
    out.push(
        CheckResult::at_most("charts.consistency", worst, config.tolerance)
            .with_param("N", n)
            .with_param("delta", delta)
            .with_param(
                "labels",
                labels.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            ),
    );
    out.push(
        CheckResult::at_most(
            "charts.holonomy",
            (holonomy(g) - 1.0).norm(),
            config.tolerance,
        )
        .with_param("N", n),
    );
    out.push(
        CheckResult::at_most(
            "charts.transition_periodic",
            transition_defect(g),
            config.tolerance,
        )
        .with_param("N", n),
    );

    // Half-integer area: the same closed form, glued without the transition factor.
    let half = TorusGeometry::new(g.a() * (n as f64 + 0.5) / n as f64, g.b(), g.h())?;
    let psi = plane_q_basis(g.h() / half.a(), g.h() / half.b(), half.hbar(), Form::Plain)?;
    let omitted = chart_mismatch(&psi, &psi, &half, delta, Gluing::Omitted)?;
    out.push(
        CheckResult::at_least(
            "charts.omitted_transition_detected",
            omitted,
            DETECTION_THRESHOLD,
        )
        .with_param("area_over_h", half.area_ratio())
        .with_param("holonomy", json!([holonomy(&half).re, holonomy(&half).im])),
    );
    out.push(
        CheckResult::at_least(
            "charts.half_integer_aperiodic",
            transition_defect(&half),
            DETECTION_THRESHOLD,
        )
        .with_param("area_over_h", half.area_ratio()),
    );

    let sweep = quantization_sweep(config.seed, 100);
    let violations = sweep
        .iter()
        .filter(|g| !dichotomy_holds(g, config.tolerance))
        .count();
    out.push(
        CheckResult::at_most("charts.quantization_dichotomy", violations as f64, 0.0)
            .with_param("triples", sweep.len()),
    );
    Ok(out)
}

/// `max_p |T(p + a) - T(p)|` over a fixed set of momenta in `[0, a)`.
pub fn transition_defect(geometry: &TorusGeometry) -> f64 {
    (0..64)
        .map(|i| {
            let p = geometry.a() * (i as f64 + 0.5) / 64.0;
            (transition_function(geometry, p + geometry.a()) - transition_function(geometry, p))
                .norm()
        })
        .fold(0.0, f64::max)
}

/// `N present ⇔ |holonomy - 1| ≤ tol ⇔ transition function periodic within tol`.
pub fn dichotomy_holds(geometry: &TorusGeometry, tolerance: f64) -> bool {
    let quantized = geometry.is_quantized();
    let trivial_holonomy = (holonomy(geometry) - 1.0).norm() <= tolerance;
    let periodic = transition_defect(geometry) <= tolerance;
    quantized == trivial_holonomy && trivial_holonomy == periodic
}

/// Seeded `(a, b, h)` geometries: even entries have `a·b/h` an integer in
/// `1..=12`, odd entries have a fractional part in `[0.05, 0.95]`.
pub fn quantization_sweep(seed: u64, count: usize) -> Vec<TorusGeometry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let h = rng.gen_range(0.25..4.0);
            let b = rng.gen_range(0.25..4.0);
            let ratio = if i % 2 == 0 {
                rng.gen_range(1..=12) as f64
            } else {
                rng.gen_range(0..12) as f64 + rng.gen_range(0.05..0.95)
            };
            TorusGeometry::new(ratio * h / b, b, h).expect("positive sides")
        })
        .collect()
}

fn commutators(config: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();

    let states: Vec<WaveFunction> = (0..50)
        .map(|_| {
            let hbar = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
            random_wave_function(&mut rng, hbar)
        })
        .collect();

    let mut canonical: f64 = 0.0;
    let mut mixed: f64 = 0.0;
    let mut semigroup: f64 = 0.0;
    for wf in &states {
        let i_hbar = wf.scale(Complex64::new(0.0, wf.hbar()));
        for (x, y) in [
            (OperatorKind::QLeft, OperatorKind::PLeft),
            (OperatorKind::QRight, OperatorKind::PRight),
        ] {
            canonical = canonical.max(commutator_apply(x, y, wf).distance(&i_hbar)?);
        }
        for x in [OperatorKind::QLeft, OperatorKind::PLeft] {
            for y in [OperatorKind::QRight, OperatorKind::PRight] {
                mixed = mixed.max(commutator_apply(x, y, wf).max_abs_coefficient());
            }
        }
        let s = dyadic(&mut rng, 8, 8);
        for kind in OperatorKind::ALL {
            let twice = exp_operator_apply(kind, s, &exp_operator_apply(kind, s, wf));
            semigroup = semigroup.max(twice.distance(&exp_operator_apply(kind, 2.0 * s, wf))?);
        }
    }
    out.push(
        CheckResult::at_most("symbolic.canonical_commutators", canonical, 0.0)
            .with_param("states", states.len()),
    );
    out.push(
        CheckResult::at_most("symbolic.mixed_commutators", mixed, 0.0)
            .with_param("states", states.len()),
    );
    out.push(
        CheckResult::at_most("symbolic.exp_semigroup", semigroup, 0.0)
            .with_param("states", states.len()),
    );

    let mut fd: f64 = 0.0;
    for (idx, wf) in states.iter().enumerate().take(25) {
        for _ in 0..4 {
            let (q, p) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let kind = OperatorKind::ALL[idx % 4];
            fd = fd.max(finite_difference_error(kind, wf, q, p));
        }
    }
    out.push(
        CheckResult::at_most("symbolic.finite_difference", fd, FD_TOLERANCE)
            .with_param("points", 100)
            .with_param("step", FD_STEP),
    );

    // Label shifts of the primed plane Q-basis.
    let mut shifts: f64 = 0.0;
    for _ in 0..20 {
        let hbar = [0.5, 1.0, 2.0][rng.gen_range(0..3)];
        let (l, k, a, b) = (
            dyadic(&mut rng, 4, 16),
            dyadic(&mut rng, 4, 16),
            dyadic(&mut rng, 4, 16),
            dyadic(&mut rng, 4, 16),
        );
        let psi = plane_q_basis(l, k, hbar, Form::Primed)?;
        let k_shift = exp_operator_apply(OperatorKind::QRight, a, &psi);
        let l_shift = exp_operator_apply(OperatorKind::PLeft, -b, &psi);
        shifts = shifts
            .max(k_shift.distance(&plane_q_basis(l, k + a, hbar, Form::Primed)?)?)
            .max(l_shift.distance(&plane_q_basis(l + b, k, hbar, Form::Primed)?)?);
    }
    out.push(CheckResult::at_most("plane.label_shifts", shifts, 0.0).with_param("tuples", 20));

    let mut assoc: f64 = 0.0;
    for _ in 0..100 {
        let hbar = rng.gen_range(0.25..2.0);
        let mut label =
            || DisplacementLabel::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let (d1, d2, d3) = (label(), label(), label());
        let left = displacement_compose(&displacement_compose(&d1, &d2, hbar), &d3, hbar);
        let right = displacement_compose(&d1, &displacement_compose(&d2, &d3, hbar), hbar);
        assoc = assoc
            .max((left.phase() - right.phase()).norm())
            .max((left.q_shift() - right.q_shift()).abs())
            .max((left.p_shift() - right.p_shift()).abs());
    }
    out.push(
        CheckResult::at_most("plane.displacement_associativity", assoc, config.tolerance)
            .with_param("triples", 100),
    );

    let mut covariant: f64 = 0.0;
    let mut strength: f64 = 0.0;
    for wf in states.iter().take(20) {
        let field = GaugeField::new(wf.hbar());
        let (q, p) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        covariant = covariant
            .max(
                (covariant_q_left(&field, wf, q, p)
                    - apply_operator(OperatorKind::QLeft, wf).evaluate(q, p))
                .norm(),
            )
            .max(
                (covariant_p_left(&field, wf, q, p)
                    - apply_operator(OperatorKind::PLeft, wf).evaluate(q, p))
                .norm(),
            );
        strength = strength.max((field.field_strength(q, p) - 1.0 / wf.hbar()).abs());
    }
    out.push(
        CheckResult::at_most("plane.covariant_derivatives", covariant, ORACLE_TOLERANCE)
            .with_param("states", 20),
    );
    out.push(CheckResult::at_most("plane.field_strength", strength, 0.0));

    let mut path: f64 = 0.0;
    for _ in 0..10 {
        let hbar = rng.gen_range(0.5..2.0);
        let field = GaugeField::new(hbar);
        let end = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let first_exponential = Complex64::cis(end.0 * end.1 / hbar);
        path = path
            .max((field.path_phase(end) - first_exponential).norm())
            .max((field.path_phase_numerical(end, LINE_STEPS) - first_exponential).norm());
    }
    out.push(
        CheckResult::at_most("plane.path_phase", path, ORACLE_TOLERANCE)
            .with_param("endpoints", 10)
            .with_param("steps", LINE_STEPS),
    );
    Ok(out)
}

/// `k / denom` with `k` uniform in `[-range·denom, range·denom]`.
pub fn dyadic<R: Rng>(rng: &mut R, range: i64, denom: i64) -> f64 {
    rng.gen_range(-range * denom..=range * denom) as f64 / denom as f64
}

/// A random member of the symbolic family with dyadic coefficients: one to
/// three terms, each with a polynomial prefactor of degree at most two.
/// Dyadic inputs keep every operator identity exact in floating point.
pub fn random_wave_function<R: Rng>(rng: &mut R, hbar: f64) -> WaveFunction {
    let n_terms = rng.gen_range(1..=3);
    let terms = (0..n_terms)
        .map(|_| {
            let phase = Phase::new(
                dyadic(rng, 2, 8),
                dyadic(rng, 2, 8),
                dyadic(rng, 2, 8),
                dyadic(rng, 1, 4),
            );
            let n_mono = rng.gen_range(1..=3);
            let prefactor = Poly::from_entries((0..n_mono).map(|_| {
                (
                    (rng.gen_range(0..=2), rng.gen_range(0..=2)),
                    Complex64::new(dyadic(rng, 2, 4), dyadic(rng, 2, 4)),
                )
            }));
            BilinearPhaseTerm::new(Complex64::new(1.0, 0.0), phase, prefactor)
        })
        .collect();
    WaveFunction::new(hbar, terms).expect("hbar is positive")
}

/// Relative error of a central difference against the symbolic image at one point.
pub fn finite_difference_error(kind: OperatorKind, wf: &WaveFunction, q: f64, p: f64) -> f64 {
    let i_hbar = Complex64::new(0.0, wf.hbar());
    let dq = (wf.evaluate(q + FD_STEP, p) - wf.evaluate(q - FD_STEP, p)) / (2.0 * FD_STEP);
    let dp = (wf.evaluate(q, p + FD_STEP) - wf.evaluate(q, p - FD_STEP)) / (2.0 * FD_STEP);
    let f = wf.evaluate(q, p);
    let numeric = match kind {
        OperatorKind::QLeft => q * f + i_hbar * dp,
        OperatorKind::PLeft => -i_hbar * dq,
        OperatorKind::QRight => i_hbar * dp,
        OperatorKind::PRight => p * f + i_hbar * dq,
    };
    let image = apply_operator(kind, wf);
    let exact = image.evaluate(q, p);
    (numeric - exact).norm() / majorant(&image, q, p).max(f64::MIN_POSITIVE)
}

// Σ |c|·|q|^a·|p|^b over all monomials: the size of the value before phases cancel.
fn majorant(wf: &WaveFunction, q: f64, p: f64) -> f64 {
    wf.terms()
        .iter()
        .map(|t| {
            t.amplitude().norm()
                * t.prefactor()
                    .iter()
                    .map(|((a, b), c)| c.norm() * q.abs().powi(a as i32) * p.abs().powi(b as i32))
                    .sum::<f64>()
        })
        .sum()
}
