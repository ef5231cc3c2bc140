use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::CheckResult;
use crate::turn;

use super::{BasisTag, FiniteOperator};

/// Tolerance on `clock·shift - ω·shift·clock` when extracting `ω`.
pub const WEYL_TOLERANCE: f64 = 1e-12;

/// Relative bound on `|tr[A,B]| / (‖A‖·‖B‖)` for random pairs.
pub const TRACE_TOLERANCE: f64 = 1e-10;

pub(crate) fn dimension(n: i64) -> Result<usize> {
    if n < 1 {
        Err(Error::BadDimension(n))
    } else {
        Ok(n as usize)
    }
}

/// `diag(e^{2πin/N})` in the Q-basis: the action of `exp(2πi Q←/b)`.
pub fn clock_matrix(n: i64) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    let diag: Vec<Complex64> = (0..dim).map(|k| turn(k as f64 / dim as f64)).collect();
    FiniteOperator::diagonal(BasisTag::Q, &diag)
}

/// Cyclic shift `e_k → e_{k+1 mod N}` in the Q-basis: the action of
/// `exp(-2πi P←/a)`.
pub fn shift_matrix(n: i64) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    FiniteOperator::from_fn(BasisTag::Q, dim, |r, c| {
        if r == (c + 1) % dim {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// The scalar `ω` with `clock·shift = ω·shift·clock`, read off from the two
/// products and then checked on every entry.
pub fn weyl_commutation_check(n: i64) -> Result<Complex64> {
    let clock = clock_matrix(n)?;
    let shift = shift_matrix(n)?;
    let cs = clock.matmul(&shift)?;
    let sc = shift.matmul(&clock)?;

    let pivot = (0..sc.entries().len())
        .max_by(|&x, &y| sc.entries()[x].norm().total_cmp(&sc.entries()[y].norm()))
        .expect("dim >= 1");
    let omega = cs.entries()[pivot] / sc.entries()[pivot];
    let residual = cs.max_abs_diff(&sc.scale(omega))?;
    if residual > WEYL_TOLERANCE {
        return Err(Error::NonScalarCommutator(residual));
    }
    Ok(omega)
}

fn random_matrix(rng: &mut ChaCha8Rng, dim: usize) -> FiniteOperator {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    FiniteOperator::from_entries(BasisTag::Q, dim, entries).expect("dim >= 1")
}

/// `|tr[A,B]| / (‖A‖·‖B‖)` over `trials` seeded random pairs.
///
/// The trace of any finite commutator vanishes, while `tr(iħ·I) = iħN`, so
/// the canonical relation `[Q, P] = iħ` has no `N`-dimensional realization.
pub fn trace_obstruction_demo(n: i64, trials: usize, seed: u64) -> Result<CheckResult> {
    let dim = dimension(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let a = random_matrix(&mut rng, dim);
        let b = random_matrix(&mut rng, dim);
        let tr = a.commutator(&b)?.trace().norm();
        worst = worst.max(tr / (a.norm() * b.norm()));
    }
    Ok(
        CheckResult::at_most("weyl.trace_obstruction", worst, TRACE_TOLERANCE)
            .with_param("N", dim)
            .with_param("trials", trials)
            .with_param("seed", seed)
            .with_param("trace_of_identity_over_i_hbar", dim),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let one = FiniteOperator::identity(BasisTag::Q, 1).unwrap();
        assert_eq!(clock_matrix(1).unwrap(), one);
        assert_eq!(shift_matrix(1).unwrap(), one);
        let c2 = clock_matrix(2).unwrap();
        assert!((c2.get(1, 1) + 1.0).norm() < 1e-15);
        assert!(clock_matrix(0).is_err() && shift_matrix(-3).is_err());
    }

    #[test]
    fn shift_wraps_around() {
        let s = shift_matrix(3).unwrap();
        let e2 = super::super::FiniteState::basis_vector(BasisTag::Q, 3, 2).unwrap();
        let image = s.apply(&e2).unwrap();
        assert_eq!(image.components()[0], Complex64::new(1.0, 0.0));
        assert_eq!(s.pow(3), FiniteOperator::identity(BasisTag::Q, 3).unwrap());
    }

    #[test]
    fn omega_matches_brute_force() {
        // Entry (1, 0) of clock·shift is ω^1 while shift·clock has ω^0 = 1.
        for n in 1..=9 {
            let omega = weyl_commutation_check(n).unwrap();
            let c = clock_matrix(n).unwrap();
            let s = shift_matrix(n).unwrap();
            let row = 1 % n as usize;
            let brute = c.matmul(&s).unwrap().get(row, 0) / s.matmul(&c).unwrap().get(row, 0);
            assert!((omega - brute).norm() < 1e-15);
            assert!((omega - turn(1.0 / n as f64)).norm() < 1e-15);
        }
    }

    #[test]
    fn clock_shift_trace_commutator() {
        let c = clock_matrix(2).unwrap();
        let s = shift_matrix(2).unwrap();
        assert!(c.commutator(&s).unwrap().trace().norm() < 1e-12);
        assert!(c.commutator(&c).unwrap().norm() == 0.0);
    }

    #[test]
    fn trace_demo_is_seeded() {
        let a = trace_obstruction_demo(3, 20, 7).unwrap();
        let b = trace_obstruction_demo(3, 20, 7).unwrap();
        assert!(a.pass);
        assert_eq!(a, b);
    }
}
