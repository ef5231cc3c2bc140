//! The tabulated shift actions checked on sampled torus states.

use rayon::prelude::*;

use crate::error::Result;
use crate::report::CheckResult;
use crate::symbolic::WaveFunction;
use crate::torus::{
    grid_shift_operator, inner_product, sample, torus_p_basis, torus_q_basis, GridFunction,
    ShiftOperator, TorusGeometry,
};
use crate::Form;

use super::fourier::table_entry;
use super::{BasisTag, FiniteOperator};

/// Default tolerance of the grid identities.
pub const TABLE_TOLERANCE: f64 = 1e-12;

/// `Ψ'_{nm}` for [`BasisTag::Q`], `Φ_{nm}` (phase-dressed) for [`BasisTag::P`].
pub fn basis_state(
    geometry: &TorusGeometry,
    basis: BasisTag,
    n: i64,
    m: i64,
) -> Result<WaveFunction> {
    match basis {
        BasisTag::Q => torus_q_basis(geometry, n, m, Form::Primed),
        BasisTag::P => torus_p_basis(geometry, n, m, Form::Primed),
    }
}

fn sampled(
    geometry: &TorusGeometry,
    basis: BasisTag,
    n: i64,
    m: i64,
    size: usize,
) -> Result<GridFunction> {
    sample(&basis_state(geometry, basis, n, m)?, geometry, size)
}

fn describe(op: ShiftOperator, basis: BasisTag) -> &'static str {
    match (basis, op) {
        (BasisTag::Q, ShiftOperator::ExpPLeft) => "Psi_{n+1,m}",
        (BasisTag::Q, ShiftOperator::ExpQLeft) => "e^{2 pi i n/N} Psi_{n,m}",
        (BasisTag::Q, ShiftOperator::ExpPRight) => "e^{-2 pi i m/N} Psi_{n,m}",
        (BasisTag::Q, ShiftOperator::ExpQRight) => "Psi_{n,m+1}",
        (BasisTag::P, ShiftOperator::ExpPLeft) => "e^{-2 pi i m/N} Phi_{n,m}",
        (BasisTag::P, ShiftOperator::ExpQLeft) => "Phi_{n,m+1}",
        (BasisTag::P, ShiftOperator::ExpPRight) => "Phi_{n+1,m}",
        (BasisTag::P, ShiftOperator::ExpQRight) => "e^{2 pi i n/N} Phi_{n,m}",
    }
}

/// One residual per table cell: the grid operator applied to every sampled
/// basis state with `0 ≤ n, m < N`, against the tabulated phase times the
/// sampled image state. Image labels are not reduced.
pub fn table1_verify(
    geometry: &TorusGeometry,
    size: usize,
    tolerance: f64,
) -> Result<Vec<CheckResult>> {
    let dim = geometry.require_quantized()? as usize;
    let mut out = Vec::with_capacity(8);
    for basis in [BasisTag::Q, BasisTag::P] {
        for op in ShiftOperator::ALL {
            let residual = labels(dim)
                .into_par_iter()
                .map(|(n, m)| -> Result<f64> {
                    let (phase, (tn, tm)) = table_entry(op, basis, n, m, dim);
                    let got = grid_shift_operator(op, &sampled(geometry, basis, n, m, size)?)?;
                    let expected = sampled(geometry, basis, tn, tm, size)?.scale(phase);
                    got.max_abs_diff(&expected)
                })
                .collect::<Result<Vec<f64>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            out.push(
                CheckResult::at_most(format!("table1.{}.{}", op, basis), residual, tolerance)
                    .with_param("N", dim)
                    .with_param("M", size)
                    .with_param("expected", describe(op, basis)),
            );
        }
    }
    Ok(out)
}

fn labels(dim: usize) -> Vec<(i64, i64)> {
    let d = dim as i64;
    (0..d).flat_map(|n| (0..d).map(move |m| (n, m))).collect()
}

/// `N`-fold powers that act as the identity.
///
/// On the `M`-grid the shadow operators return `Ψ'` and the physical
/// operators return `Φ` exactly. The remaining four powers move a label by a
/// whole period, which lands on the same state only on the `N × N` lattice,
/// so they are checked there.
pub fn power_identities(
    geometry: &TorusGeometry,
    size: usize,
    tolerance: f64,
) -> Result<Vec<CheckResult>> {
    let dim = geometry.require_quantized()? as usize;
    let cases = [
        (ShiftOperator::ExpPRight, BasisTag::Q, size),
        (ShiftOperator::ExpQLeft, BasisTag::Q, size),
        (ShiftOperator::ExpPLeft, BasisTag::P, size),
        (ShiftOperator::ExpQRight, BasisTag::P, size),
        (ShiftOperator::ExpPLeft, BasisTag::Q, dim),
        (ShiftOperator::ExpQRight, BasisTag::Q, dim),
        (ShiftOperator::ExpQLeft, BasisTag::P, dim),
        (ShiftOperator::ExpPRight, BasisTag::P, dim),
    ];
    cases
        .iter()
        .map(|&(op, basis, grid)| {
            let mut worst: f64 = 0.0;
            for (n, m) in labels(dim) {
                let start = sampled(geometry, basis, n, m, grid)?;
                let mut state = start.clone();
                for _ in 0..dim {
                    state = grid_shift_operator(op, &state)?;
                }
                worst = worst.max(state.max_abs_diff(&start)?);
            }
            Ok(
                CheckResult::at_most(format!("table1.power.{}.{}", op, basis), worst, tolerance)
                    .with_param("N", dim)
                    .with_param("M", grid),
            )
        })
        .collect()
}

/// Sum of the sampled states equivalent to physical label `k`: all
/// `Ψ'_{k+jN, m}` (Q) or `Φ_{n, k+jN}` (P) with labels in `[0, M)`.
pub fn class_functional(
    geometry: &TorusGeometry,
    basis: BasisTag,
    k: i64,
    size: usize,
) -> Result<GridFunction> {
    let dim = geometry.require_quantized()? as i64;
    let mut members = Vec::new();
    for j in 0..size as i64 / dim {
        for other in 0..size as i64 {
            members.push(match basis {
                BasisTag::Q => (k + j * dim, other),
                BasisTag::P => (other, k + j * dim),
            });
        }
    }
    let grids = members
        .par_iter()
        .map(|&(n, m)| sampled(geometry, basis, n, m, size))
        .collect::<Result<Vec<_>>>()?;
    let mut acc = grids[0].clone();
    for g in &grids[1..] {
        acc = acc.add(g)?;
    }
    Ok(acc)
}

/// Reads physical matrices off sampled states: `A[k][k'] = ⟨class_k | op · state(k')⟩`.
#[derive(Debug, Clone)]
pub struct ClassProjector {
    geometry: TorusGeometry,
    basis: BasisTag,
    size: usize,
    classes: Vec<GridFunction>,
}

impl ClassProjector {
    pub fn new(geometry: &TorusGeometry, basis: BasisTag, size: usize) -> Result<Self> {
        let dim = geometry.require_quantized()? as i64;
        let classes = (0..dim)
            .map(|k| class_functional(geometry, basis, k, size))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            geometry: *geometry,
            basis,
            size,
            classes,
        })
    }

    /// Matrix of `op` on column states whose gauge label is `gauge`.
    pub fn matrix(&self, op: ShiftOperator, gauge: i64) -> Result<FiniteOperator> {
        let dim = self.classes.len();
        let images = (0..dim as i64)
            .map(|k| {
                let (n, m) = match self.basis {
                    BasisTag::Q => (k, gauge),
                    BasisTag::P => (gauge, k),
                };
                grid_shift_operator(op, &sampled(&self.geometry, self.basis, n, m, self.size)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut entries = Vec::with_capacity(dim * dim);
        for class in &self.classes {
            for image in &images {
                entries.push(inner_product(class, image)?);
            }
        }
        FiniteOperator::from_entries(self.basis, dim, entries)
    }
}

/// One-off [`ClassProjector::matrix`].
pub fn physical_grid_matrix(
    geometry: &TorusGeometry,
    op: ShiftOperator,
    basis: BasisTag,
    size: usize,
    gauge: i64,
) -> Result<FiniteOperator> {
    ClassProjector::new(geometry, basis, size)?.matrix(op, gauge)
}

/// A few gauge labels (`0`, `1`, `N-1`) for checking that the physical
/// matrices do not depend on the gauge label.
pub fn gauge_labels(dim: usize) -> Vec<i64> {
    let mut g = vec![0, 1 % dim as i64, dim as i64 - 1];
    g.dedup();
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::physical_matrix_in_gauge;

    fn geom(n: u64) -> TorusGeometry {
        TorusGeometry::symmetric(n, 1.0).unwrap()
    }

    #[test]
    fn all_cells_hold() {
        for n in [1, 2, 3] {
            let g = geom(n);
            for c in table1_verify(&g, 8 * n as usize, TABLE_TOLERANCE).unwrap() {
                assert!(c.pass, "{} {}", c.check, c.max_residual);
            }
        }
    }

    #[test]
    fn one_off_matrix_matches_projector() {
        let g = geom(2);
        let m = physical_grid_matrix(&g, ShiftOperator::ExpPLeft, BasisTag::Q, 8, 1).unwrap();
        assert!(
            m.max_abs_diff(&crate::physical::shift_matrix(2).unwrap())
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn powers_are_identity() {
        let g = TorusGeometry::new(2.0, 1.5, 1.0).unwrap();
        for c in power_identities(&g, 24, TABLE_TOLERANCE).unwrap() {
            assert!(c.pass, "{} {}", c.check, c.max_residual);
        }
    }

    #[test]
    fn n_fold_p_left_on_fine_grid_changes_the_q_state() {
        // Ψ'_{n+N,m} = e^{-2πiNp/a} Ψ'_{nm} off the lattice.
        let g = geom(2);
        let start = sampled(&g, BasisTag::Q, 0, 0, 16).unwrap();
        let twice = grid_shift_operator(
            ShiftOperator::ExpPLeft,
            &grid_shift_operator(ShiftOperator::ExpPLeft, &start).unwrap(),
        )
        .unwrap();
        assert!(twice.max_abs_diff(&start).unwrap() > 0.1);
        let expected = sampled(&g, BasisTag::Q, 2, 0, 16).unwrap();
        assert!(twice.max_abs_diff(&expected).unwrap() < 1e-12);
    }

    #[test]
    fn grid_matrices_reproduce_reduced_ones() {
        let n = 3u64;
        let g = geom(n);
        let projectors: std::collections::HashMap<_, _> = [BasisTag::Q, BasisTag::P]
            .into_iter()
            .map(|b| (b, ClassProjector::new(&g, b, 8 * n as usize).unwrap()))
            .collect();
        for basis in [BasisTag::Q, BasisTag::P] {
            for op in ShiftOperator::ALL {
                for gauge in gauge_labels(n as usize) {
                    let expected = physical_matrix_in_gauge(op, basis, n as i64, gauge).unwrap();
                    let got = projectors[&basis].matrix(op, gauge).unwrap();
                    assert!(
                        got.max_abs_diff(&expected).unwrap() < 1e-12,
                        "{op} {basis} {gauge}"
                    );
                }
            }
        }
    }
}
