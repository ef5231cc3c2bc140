//! The change between Q- and P-basis coefficients.
//!
//! Two spaces are involved. On the `N × N` sampling lattice of the torus the
//! `N²` states `Ψ'_{nm}` and the `N²` states `Φ_{nm}` are each orthonormal
//! bases, and
//!
//! ```text
//! ⟨Ψ'_{nm} | Φ_{sr}⟩ = (1/N) e^{2πi(nr - ms)/N}.
//! ```
//!
//! In the reduced physical space the label `m` of `Ψ'` and the label `s` of
//! `Φ` are gauge, so the physical labels are `n` and `r`, and the coefficient
//! map becomes the `N × N` unitary `K[n][r] = e^{2πinr/N}/√N`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::Result;
use crate::torus::{
    inner_product, sample, torus_p_basis, torus_q_basis, ShiftOperator, TorusGeometry,
};
use crate::{turn, Form};

use super::weyl::dimension;
use super::{BasisTag, FiniteOperator};

/// Normalization of the reduced coefficient map, `1/√N`.
pub fn dft_normalization(n: i64) -> Result<f64> {
    Ok(1.0 / (dimension(n)? as f64).sqrt())
}

/// `K[n][r] = e^{2πinr/N}/√N`, taking P-basis coefficients (index `r`) to
/// Q-basis coefficients (index `n`) in the physical space.
pub fn dft_basis_change(n: i64) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    let c = dft_normalization(n)?;
    FiniteOperator::from_fn(BasisTag::Q, dim, |row, col| {
        turn((row * col % dim) as f64 / dim as f64) * c
    })
}

/// Expansion of the Q-basis kets in P-basis kets, `|n⟩_Q = Σ_r E[n][r] |r⟩_P`.
/// This is the conjugate of the coefficient map, `E = K̄`.
pub fn ket_expansion_kernel(n: i64) -> Result<FiniteOperator> {
    let k = dft_basis_change(n)?;
    let dim = k.dim();
    FiniteOperator::from_fn(BasisTag::P, dim, |row, col| k.get(row, col).conj())
}

/// How a unit-step operator acts on the physical space of one basis, with
/// the gauge label (`m` of `Ψ'`, `n` of `Φ`) set to zero.
///
/// | operator          | Q-basis | P-basis              |
/// |-------------------|---------|----------------------|
/// | `exp(-2πi P←/a)`  | shift   | `diag(e^{-2πir/N})`  |
/// | `exp(2πi Q←/b)`   | clock   | shift                |
/// | shadow operators  | `I`     | `I`                  |
pub fn physical_matrix(op: ShiftOperator, basis: BasisTag, n: i64) -> Result<FiniteOperator> {
    physical_matrix_in_gauge(op, basis, n, 0)
}

/// As [`physical_matrix`] for states carrying gauge label `gauge`. The
/// physical operators do not depend on it; the shadow operators become a
/// constant phase times the identity.
pub fn physical_matrix_in_gauge(
    op: ShiftOperator,
    basis: BasisTag,
    n: i64,
    gauge: i64,
) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for k in 0..dim as i64 {
        let (phase, target) = match basis {
            BasisTag::Q => {
                let (phase, (tn, _)) = table_entry(op, basis, k, gauge, dim);
                (phase, tn)
            }
            BasisTag::P => {
                let (phase, (_, tm)) = table_entry(op, basis, gauge, k, dim);
                (phase, tm)
            }
        };
        let row = target.rem_euclid(dim as i64) as usize;
        entries[row * dim + k as usize] = phase;
    }
    FiniteOperator::from_entries(basis, dim, entries)
}

/// Index of label `(n, m)` in the `N²`-dimensional lattice space.
pub fn lattice_index(n: i64, m: i64, dim: usize) -> usize {
    let d = dim as i64;
    (n.rem_euclid(d) * d + m.rem_euclid(d)) as usize
}

/// The tabulated action of a unit-step operator on the lattice basis
/// `Ψ'_{nm}` (Q) or `Φ_{nm}` (P), labels taken modulo `N`.
///
/// | operator          | on `Φ`             | on `Ψ'`               |
/// |-------------------|--------------------|-----------------------|
/// | `exp(-2πi P←/a)`  | `e^{-2πim/N} Φ`    | `Ψ'_{n+1,m}`          |
/// | `exp(2πi Q←/b)`   | `Φ_{n,m+1}`        | `e^{2πin/N} Ψ'`       |
/// | `exp(-2πi P→/a)`  | `Φ_{n+1,m}`        | `e^{-2πim/N} Ψ'`      |
/// | `exp(2πi Q→/b)`   | `e^{2πin/N} Φ`     | `Ψ'_{n,m+1}`          |
pub fn lattice_matrix(op: ShiftOperator, basis: BasisTag, n: i64) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    let big = dim * dim;
    let mut entries = vec![Complex64::new(0.0, 0.0); big * big];
    for a in 0..dim as i64 {
        for b in 0..dim as i64 {
            let (factor, target) = table_entry(op, basis, a, b, dim);
            let col = lattice_index(a, b, dim);
            entries[lattice_index(target.0, target.1, dim) * big + col] = factor;
        }
    }
    FiniteOperator::from_entries(basis, big, entries)
}

/// `(phase, image label)` for one cell of the table.
pub(crate) fn table_entry(
    op: ShiftOperator,
    basis: BasisTag,
    n: i64,
    m: i64,
    dim: usize,
) -> (Complex64, (i64, i64)) {
    let root = |k: i64| turn(k as f64 / dim as f64);
    let one = Complex64::new(1.0, 0.0);
    match (basis, op) {
        (BasisTag::Q, ShiftOperator::ExpPLeft) => (one, (n + 1, m)),
        (BasisTag::Q, ShiftOperator::ExpQLeft) => (root(n), (n, m)),
        (BasisTag::Q, ShiftOperator::ExpPRight) => (root(-m), (n, m)),
        (BasisTag::Q, ShiftOperator::ExpQRight) => (one, (n, m + 1)),
        (BasisTag::P, ShiftOperator::ExpPLeft) => (root(-m), (n, m)),
        (BasisTag::P, ShiftOperator::ExpQLeft) => (one, (n, m + 1)),
        (BasisTag::P, ShiftOperator::ExpPRight) => (one, (n + 1, m)),
        (BasisTag::P, ShiftOperator::ExpQRight) => (root(n), (n, m)),
    }
}

/// `U[(n,m)][(s,r)] = ⟨Ψ'_{nm} | Φ_{sr}⟩ = e^{2πi(nr - ms)/N}/N`, the unitary
/// taking lattice P-coefficients to lattice Q-coefficients.
pub fn lattice_basis_change(n: i64) -> Result<FiniteOperator> {
    let dim = dimension(n)?;
    let d = dim as i64;
    let big = dim * dim;
    FiniteOperator::from_fn(BasisTag::Q, big, |row, col| {
        let (a, b) = ((row / dim) as i64, (row % dim) as i64);
        let (s, r) = ((col / dim) as i64, (col % dim) as i64);
        turn((a * r - b * s).rem_euclid(d) as f64 / dim as f64) / dim as f64
    })
}

/// Inner products `⟨Ψ'_{nm} | Φ_{sr}⟩` of the sampled torus states on the
/// `N × N` lattice, arranged like [`lattice_basis_change`].
pub fn lattice_overlap_oracle(geometry: &TorusGeometry) -> Result<FiniteOperator> {
    let dim = geometry.require_quantized()? as usize;
    let d = dim as i64;
    let labels: Vec<(i64, i64)> = (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).collect();
    let q_states = labels
        .iter()
        .map(|&(a, b)| sample(&torus_q_basis(geometry, a, b, Form::Primed)?, geometry, dim))
        .collect::<Result<Vec<_>>>()?;
    let p_states = labels
        .iter()
        .map(|&(a, b)| sample(&torus_p_basis(geometry, a, b, Form::Primed)?, geometry, dim))
        .collect::<Result<Vec<_>>>()?;
    let entries = q_states
        .par_iter()
        .map(|q| {
            p_states
                .iter()
                .map(|p| inner_product(q, p))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .concat();
    FiniteOperator::from_entries(BasisTag::Q, dim * dim, entries)
}

/// Labels `(n, m)` whose expansion coefficients would disagree with the ones
/// obtained from `e^{-2πi(nr + ms)/N}`, i.e. those with `2m ≢ 0 (mod N)`.
/// For them the ratio of the two kernels depends on `s`.
pub fn sign_flagged_labels(n: i64) -> Result<Vec<(i64, i64)>> {
    let d = dimension(n)? as i64;
    Ok((0..d)
        .flat_map(|a| (0..d).map(move |b| (a, b)))
        .filter(|&(_, b)| (2 * b).rem_euclid(d) != 0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physical::{clock_matrix, shift_matrix};

    #[test]
    fn one_dimensional_case() {
        let k = dft_basis_change(1).unwrap();
        assert_eq!(k.dim(), 1);
        assert!((k.get(0, 0).norm() - 1.0).abs() < 1e-15);
        assert!(sign_flagged_labels(1).unwrap().is_empty());
    }

    #[test]
    fn reduced_map_is_unitary_and_intertwines() {
        for n in [1, 2, 3, 4, 8] {
            let k = dft_basis_change(n).unwrap();
            assert!(k.unitarity_residual() < 1e-12);
            for op in ShiftOperator::ALL {
                let lhs = k
                    .matmul(&physical_matrix(op, BasisTag::P, n).unwrap())
                    .unwrap();
                let rhs = physical_matrix(op, BasisTag::Q, n)
                    .unwrap()
                    .matmul(&k)
                    .unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12, "{op} N={n}");
            }
        }
    }

    #[test]
    fn physical_matrices_are_clock_and_shift() {
        let n = 5;
        assert_eq!(
            physical_matrix(ShiftOperator::ExpPLeft, BasisTag::Q, n).unwrap(),
            shift_matrix(n).unwrap()
        );
        assert_eq!(
            physical_matrix(ShiftOperator::ExpQLeft, BasisTag::Q, n).unwrap(),
            clock_matrix(n).unwrap()
        );
    }

    #[test]
    fn lattice_change_matches_oracle() {
        for n in [1u64, 2, 3, 4] {
            let g = TorusGeometry::symmetric(n, 1.0).unwrap();
            let oracle = lattice_overlap_oracle(&g).unwrap();
            let closed = lattice_basis_change(n as i64).unwrap();
            assert!(oracle.max_abs_diff(&closed).unwrap() < 1e-12, "N={n}");
            assert!(closed.unitarity_residual() < 1e-12);
        }
    }

    #[test]
    fn lattice_change_intertwines_table() {
        for n in [1, 2, 3, 4] {
            let u = lattice_basis_change(n).unwrap();
            for op in ShiftOperator::ALL {
                let lhs = u
                    .matmul(&lattice_matrix(op, BasisTag::P, n).unwrap())
                    .unwrap();
                let rhs = lattice_matrix(op, BasisTag::Q, n)
                    .unwrap()
                    .matmul(&u)
                    .unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12, "{op} N={n}");
            }
        }
    }

    #[test]
    fn printed_sign_flags() {
        assert_eq!(sign_flagged_labels(2).unwrap(), vec![]);
        assert_eq!(sign_flagged_labels(3).unwrap().len(), 6);
        // N = 4: m = 1, 3 are flagged, m = 2 is not.
        let flagged = sign_flagged_labels(4).unwrap();
        assert!(flagged.iter().all(|&(_, m)| m % 2 == 1));
        assert_eq!(flagged.len(), 8);
    }

    #[test]
    fn ket_kernel_is_conjugate() {
        let e = ket_expansion_kernel(3).unwrap();
        let k = dft_basis_change(3).unwrap();
        assert!((e.get(1, 1) - k.get(1, 1).conj()).norm() == 0.0);
    }
}
