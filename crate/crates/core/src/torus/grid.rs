use std::fmt;
use std::io::{self, Write};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::symbolic::{OperatorKind, WaveFunction};
use crate::turn;

use super::{p_period_phase, transition_function, TorusGeometry};

/// How a sampled function continues past the edges of the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// `f(q + b, p) = f(q, p)` and `f(q, p + a) = f(q, p)`.
    Periodic,
    /// `f(q + b, p) = e^{ibp/ħ} f(q, p)` and `f(q, p + a) = e^{iaq/ħ} f(q, p)`,
    /// the continuation obeyed by the Q-basis states.
    Twisted,
    /// Neither; edges are wrapped as if periodic.
    Open,
}

/// Samples `f(q = j·b/M, p = i·a/M)` on the uniform `M × M` grid over the
/// fundamental domain, stored row-major (`i` is the row).
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    geometry: TorusGeometry,
    size: usize,
    values: Vec<Complex64>,
    boundary: Boundary,
}

impl GridFunction {
    pub fn from_values(
        geometry: TorusGeometry,
        size: usize,
        values: Vec<Complex64>,
        boundary: Boundary,
    ) -> Result<Self> {
        check_size(&geometry, size)?;
        if values.len() != size * size {
            return Err(Error::DimensionMismatch {
                expected: size * size,
                found: values.len(),
            });
        }
        Ok(Self {
            geometry,
            size,
            values,
            boundary,
        })
    }

    pub fn geometry(&self) -> &TorusGeometry {
        &self.geometry
    }

    /// Samples per axis, `M`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.size + j]
    }

    pub fn q_at(&self, j: usize) -> f64 {
        j as f64 * self.geometry.b() / self.size as f64
    }

    pub fn p_at(&self, i: usize) -> f64 {
        i as f64 * self.geometry.a() / self.size as f64
    }

    pub fn scale(&self, s: Complex64) -> GridFunction {
        GridFunction {
            values: self.values.iter().map(|v| v * s).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction> {
        self.compatible(other)?;
        let boundary = if self.boundary == other.boundary {
            self.boundary
        } else {
            Boundary::Open
        };
        Ok(GridFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
            boundary,
            ..self.clone()
        })
    }

    /// Largest elementwise `|f - g|`.
    pub fn max_abs_diff(&self, other: &GridFunction) -> Result<f64> {
        self.compatible(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    fn compatible(&self, other: &GridFunction) -> Result<()> {
        if self.size == other.size && self.geometry == other.geometry {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// CSV with header `i,j,q,p,re,im`, one row per sample, `i` outermost.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "i,j,q,p,re,im")?;
        for i in 0..self.size {
            for j in 0..self.size {
                let v = self.get(i, j);
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    i,
                    j,
                    self.q_at(j),
                    self.p_at(i),
                    v.re,
                    v.im
                )?;
            }
        }
        Ok(())
    }
}

fn check_size(geometry: &TorusGeometry, size: usize) -> Result<()> {
    let n = geometry.n().unwrap_or(1);
    if size == 0 || !(size as u64).is_multiple_of(n) {
        return Err(Error::BadGridSize { size, n });
    }
    Ok(())
}

/// Samples `wf` on the `size × size` grid. For quantized geometries `size`
/// must be a multiple of `N`, so that `b/N` and `a/N` are whole grid steps.
pub fn sample(wf: &WaveFunction, geometry: &TorusGeometry, size: usize) -> Result<GridFunction> {
    check_size(geometry, size)?;
    let (a, b) = (geometry.a(), geometry.b());
    let values = (0..size * size)
        .map(|idx| {
            let (i, j) = (idx / size, idx % size);
            wf.evaluate(j as f64 * b / size as f64, i as f64 * a / size as f64)
        })
        .collect();
    Ok(GridFunction {
        geometry: *geometry,
        size,
        values,
        boundary: detect_boundary(wf, geometry),
    })
}

fn detect_boundary(wf: &WaveFunction, geometry: &TorusGeometry) -> Boundary {
    const PROBES: [(f64, f64); 3] = [(0.31, 0.73), (0.67, 0.19), (0.11, 0.47)];
    const TOL: f64 = 1e-9;
    let (a, b) = (geometry.a(), geometry.b());
    let obeys = |q_factor: &dyn Fn(f64) -> Complex64, p_factor: &dyn Fn(f64) -> Complex64| {
        PROBES.iter().all(|&(u, v)| {
            let (q, p) = (u * b, v * a);
            let f = wf.evaluate(q, p);
            let fq = wf.evaluate(q + b, p);
            let fp = wf.evaluate(q, p + a);
            let scale = f
                .norm()
                .max(fq.norm())
                .max(fp.norm())
                .max(f64::MIN_POSITIVE);
            (fq - q_factor(p) * f).norm() <= TOL * scale
                && (fp - p_factor(q) * f).norm() <= TOL * scale
        })
    };
    let one = |_: f64| Complex64::new(1.0, 0.0);
    if obeys(&one, &one) {
        Boundary::Periodic
    } else if obeys(&|p| transition_function(geometry, p), &|q| {
        p_period_phase(geometry, q)
    }) {
        Boundary::Twisted
    } else {
        Boundary::Open
    }
}

/// `⟨f, g⟩ = Σ conj(f)·g · dq·dp/(ab)` as a left-endpoint sum. On the periodic
/// domain this is the trapezoid rule and is exact for pure phases below the
/// grid Nyquist limit.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.compatible(g)?;
    let sum: Complex64 = f
        .values
        .iter()
        .zip(&g.values)
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(sum / (f.size * f.size) as f64)
}

/// Gram matrix `G[r][c] = ⟨states[r], states[c]⟩`, rows evaluated in parallel.
pub fn gram_matrix(states: &[GridFunction]) -> Result<Vec<Vec<Complex64>>> {
    states
        .par_iter()
        .map(|row| states.iter().map(|col| inner_product(row, col)).collect())
        .collect()
}

/// Largest `|G - I|` entry.
pub fn identity_residual(gram: &[Vec<Complex64>]) -> f64 {
    gram.iter()
        .enumerate()
        .flat_map(|(r, row)| {
            row.iter().enumerate().map(move |(c, v)| {
                let target = if r == c { 1.0 } else { 0.0 };
                (v - target).norm()
            })
        })
        .fold(0.0, f64::max)
}

/// The unit-step exponentials of the four operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiftOperator {
    /// `exp(-2πi P←/a)`
    ExpPLeft,
    /// `exp(2πi Q←/b)`
    ExpQLeft,
    /// `exp(-2πi P→/a)`
    ExpPRight,
    /// `exp(2πi Q→/b)`
    ExpQRight,
}

impl ShiftOperator {
    pub const ALL: [ShiftOperator; 4] = [
        ShiftOperator::ExpPLeft,
        ShiftOperator::ExpQLeft,
        ShiftOperator::ExpPRight,
        ShiftOperator::ExpQRight,
    ];

    /// The same operator as `exp(i·s·Op/ħ)`: returns `(Op, s)`.
    pub fn as_exponential(self, geometry: &TorusGeometry) -> (OperatorKind, f64) {
        let h = geometry.h();
        match self {
            ShiftOperator::ExpPLeft => (OperatorKind::PLeft, -h / geometry.a()),
            ShiftOperator::ExpQLeft => (OperatorKind::QLeft, h / geometry.b()),
            ShiftOperator::ExpPRight => (OperatorKind::PRight, -h / geometry.a()),
            ShiftOperator::ExpQRight => (OperatorKind::QRight, h / geometry.b()),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ShiftOperator::ExpPLeft => "exp_p_left",
            ShiftOperator::ExpQLeft => "exp_q_left",
            ShiftOperator::ExpPRight => "exp_p_right",
            ShiftOperator::ExpQRight => "exp_q_right",
        }
    }
}

impl fmt::Display for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Applies one of the unit-step operators to grid samples exactly.
///
/// * `exp(-2πi P←/a)`: `f(q - b/N, p)`
/// * `exp(2πi Q←/b)`: `e^{2πiq/b} f(q, p - a/N)`
/// * `exp(-2πi P→/a)`: `e^{-2πip/a} f(q + b/N, p)`
/// * `exp(2πi Q→/b)`: `f(q, p - a/N)`
///
/// The translations are whole multiples `M/N` of the grid step. Samples that
/// cross an edge of the fundamental domain are continued according to the
/// grid's [`Boundary`].
pub fn grid_shift_operator(op: ShiftOperator, f: &GridFunction) -> Result<GridFunction> {
    let n = f.geometry.require_quantized()? as usize;
    let size = f.size;
    let step = (size / n) as isize;
    let values = (0..size * size)
        .map(|idx| {
            let (i, j) = (idx / size, idx % size);
            match op {
                ShiftOperator::ExpPLeft => f.along_q(i, j as isize - step),
                ShiftOperator::ExpQLeft => {
                    turn(j as f64 / size as f64) * f.along_p(i as isize - step, j)
                }
                ShiftOperator::ExpPRight => {
                    turn(-(i as f64) / size as f64) * f.along_q(i, j as isize + step)
                }
                ShiftOperator::ExpQRight => f.along_p(i as isize - step, j),
            }
        })
        .collect();
    Ok(GridFunction {
        values,
        ..f.clone()
    })
}

impl GridFunction {
    // Row i, column jj possibly outside [0, M) by less than one period.
    fn along_q(&self, i: usize, jj: isize) -> Complex64 {
        let m = self.size as isize;
        let p = self.p_at(i);
        if jj < 0 {
            self.get(i, (jj + m) as usize) * self.q_wrap(p).conj()
        } else if jj >= m {
            self.get(i, (jj - m) as usize) * self.q_wrap(p)
        } else {
            self.get(i, jj as usize)
        }
    }

    fn along_p(&self, ii: isize, j: usize) -> Complex64 {
        let m = self.size as isize;
        let q = self.q_at(j);
        if ii < 0 {
            self.get((ii + m) as usize, j) * self.p_wrap(q).conj()
        } else if ii >= m {
            self.get((ii - m) as usize, j) * self.p_wrap(q)
        } else {
            self.get(ii as usize, j)
        }
    }

    // f(q + b, p) / f(q, p)
    fn q_wrap(&self, p: f64) -> Complex64 {
        match self.boundary {
            Boundary::Twisted => transition_function(&self.geometry, p),
            Boundary::Periodic | Boundary::Open => Complex64::new(1.0, 0.0),
        }
    }

    // f(q, p + a) / f(q, p)
    fn p_wrap(&self, q: f64) -> Complex64 {
        match self.boundary {
            Boundary::Twisted => p_period_phase(&self.geometry, q),
            Boundary::Periodic | Boundary::Open => Complex64::new(1.0, 0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::exp_operator_apply;
    use crate::torus::{torus_p_basis, torus_q_basis};
    use crate::Form;

    fn geom(n: u64) -> TorusGeometry {
        TorusGeometry::symmetric(n, 1.0).unwrap()
    }

    #[test]
    fn size_must_be_multiple_of_n() {
        let g = geom(3);
        let one = WaveFunction::one(g.hbar()).unwrap();
        assert!(matches!(
            sample(&one, &g, 8),
            Err(Error::BadGridSize { size: 8, n: 3 })
        ));
        assert!(sample(&one, &g, 0).is_err());
        assert!(sample(&one, &g, 9).is_ok());
    }

    #[test]
    fn constant_samples_to_ones() {
        let g = geom(2);
        let grid = sample(&WaveFunction::one(g.hbar()).unwrap(), &g, 6).unwrap();
        assert!(grid.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        assert_eq!(grid.boundary(), Boundary::Periodic);
    }

    #[test]
    fn q_basis_samples_on_unit_torus() {
        let g = geom(1);
        let grid = sample(&torus_q_basis(&g, 0, 0, Form::Primed).unwrap(), &g, 4).unwrap();
        assert_eq!(grid.boundary(), Boundary::Twisted);
        for i in 0..4 {
            for j in 0..4 {
                let expected = turn(i as f64 * j as f64 / 16.0);
                assert!((grid.get(i, j) - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn polynomial_prefactor_is_open() {
        let g = geom(2);
        let wf = torus_p_basis(&g, 1, 0, Form::Plain).unwrap().mul_q();
        assert_eq!(sample(&wf, &g, 4).unwrap().boundary(), Boundary::Open);
    }

    #[test]
    fn inner_products_of_bases() {
        let g = geom(2);
        let m = 16;
        let s = |wf: WaveFunction| sample(&wf, &g, m).unwrap();
        let psi00 = s(torus_q_basis(&g, 0, 0, Form::Primed).unwrap());
        let psi10 = s(torus_q_basis(&g, 1, 0, Form::Primed).unwrap());
        assert!((inner_product(&psi00, &psi00).unwrap() - 1.0).norm() < 1e-12);
        assert!(inner_product(&psi00, &psi10).unwrap().norm() < 1e-12);
        let phi00 = s(torus_p_basis(&g, 0, 0, Form::Plain).unwrap());
        let phi01 = s(torus_p_basis(&g, 0, 1, Form::Plain).unwrap());
        assert!(inner_product(&phi00, &phi01).unwrap().norm() < 1e-12);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let g = geom(2);
        let one = WaveFunction::one(g.hbar()).unwrap();
        let a = sample(&one, &g, 4).unwrap();
        let b = sample(&one, &g, 8).unwrap();
        assert_eq!(inner_product(&a, &b), Err(Error::GridMismatch));
        let other = TorusGeometry::new(2.0, 1.0, 1.0).unwrap();
        let c = sample(&WaveFunction::one(other.hbar()).unwrap(), &other, 4).unwrap();
        assert_eq!(a.max_abs_diff(&c), Err(Error::GridMismatch));
    }

    #[test]
    fn grid_shift_agrees_with_symbolic_exponential() {
        let g = TorusGeometry::new(2.0, 1.5, 1.0).unwrap();
        for form in [Form::Plain, Form::Primed] {
            for wf in [
                torus_q_basis(&g, 1, 2, form).unwrap(),
                torus_p_basis(&g, 2, 1, form).unwrap(),
            ] {
                let grid = sample(&wf, &g, 12).unwrap();
                for op in ShiftOperator::ALL {
                    let (kind, s) = op.as_exponential(&g);
                    let expected = sample(&exp_operator_apply(kind, s, &wf), &g, 12).unwrap();
                    let got = grid_shift_operator(op, &grid).unwrap();
                    assert!(
                        got.max_abs_diff(&expected).unwrap() < 1e-12,
                        "{op} {form:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn csv_layout() {
        let g = geom(1);
        let grid = sample(&WaveFunction::one(g.hbar()).unwrap(), &g, 2).unwrap();
        let mut buf = Vec::new();
        grid.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "i,j,q,p,re,im");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[2], "0,1,0.5,0,1,0");
    }
}
