use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Which basis the components of a finite state or operator refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisTag {
    Q,
    P,
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisTag::Q => "Q",
            BasisTag::P => "P",
        })
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 {
        Err(Error::BadDimension(0))
    } else {
        Ok(())
    }
}

/// Coefficient vector of a state in the `N`-dimensional physical space.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteState {
    basis: BasisTag,
    components: Vec<Complex64>,
}

impl FiniteState {
    pub fn new(basis: BasisTag, components: Vec<Complex64>) -> Result<Self> {
        check_dim(components.len())?;
        if components
            .iter()
            .any(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::Malformed("state has non-finite components".into()));
        }
        Ok(Self { basis, components })
    }

    /// The state concentrated at `index`.
    pub fn basis_vector(basis: BasisTag, dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut components = vec![ZERO; dim];
        components[index] = ONE;
        Ok(Self { basis, components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn components(&self) -> &[Complex64] {
        &self.components
    }

    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &FiniteState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

/// Dense `N × N` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "OperatorRepr", into = "OperatorRepr")]
pub struct FiniteOperator {
    dim: usize,
    basis: BasisTag,
    entries: Vec<Complex64>,
}

#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    dim: usize,
    basis: BasisTag,
    entries: Vec<[f64; 2]>,
}

impl From<FiniteOperator> for OperatorRepr {
    fn from(op: FiniteOperator) -> Self {
        Self {
            dim: op.dim,
            basis: op.basis,
            entries: op.entries.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TryFrom<OperatorRepr> for FiniteOperator {
    type Error = Error;

    fn try_from(repr: OperatorRepr) -> Result<Self> {
        let entries = repr
            .entries
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect();
        FiniteOperator::from_entries(repr.basis, repr.dim, entries)
    }
}

impl FiniteOperator {
    pub fn from_entries(basis: BasisTag, dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        Ok(Self {
            dim,
            basis,
            entries,
        })
    }

    /// Builds the matrix from `f(row, col)`.
    pub fn from_fn(
        basis: BasisTag,
        dim: usize,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Result<Self> {
        check_dim(dim)?;
        let entries = (0..dim * dim).map(|k| f(k / dim, k % dim)).collect();
        Ok(Self {
            dim,
            basis,
            entries,
        })
    }

    pub fn identity(basis: BasisTag, dim: usize) -> Result<Self> {
        Self::from_fn(basis, dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn diagonal(basis: BasisTag, diag: &[Complex64]) -> Result<Self> {
        Self::from_fn(
            basis,
            diag.len(),
            |r, c| if r == c { diag[r] } else { ZERO },
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// The same matrix relabelled as acting in another basis.
    pub fn with_basis(mut self, basis: BasisTag) -> Self {
        self.basis = basis;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("operator is always serializable")
    }

    fn same_dim(&self, other: &FiniteOperator) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    /// `self · other`; rows are computed in parallel, each with a fixed
    /// summation order.
    pub fn matmul(&self, other: &FiniteOperator) -> Result<FiniteOperator> {
        self.same_dim(other)?;
        let n = self.dim;
        let entries: Vec<Complex64> = (0..n)
            .into_par_iter()
            .flat_map_iter(|r| {
                let row = &self.entries[r * n..(r + 1) * n];
                (0..n).map(move |c| {
                    row.iter()
                        .enumerate()
                        .map(|(k, a)| a * other.entries[k * n + c])
                        .sum::<Complex64>()
                })
            })
            .collect();
        Ok(FiniteOperator {
            dim: n,
            basis: self.basis,
            entries,
        })
    }

    pub fn apply(&self, state: &FiniteState) -> Result<FiniteState> {
        if state.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: state.dim(),
            });
        }
        let n = self.dim;
        let components = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| self.entries[r * n + c] * state.components[c])
                    .sum()
            })
            .collect();
        Ok(FiniteState {
            basis: self.basis,
            components,
        })
    }

    pub fn adjoint(&self) -> FiniteOperator {
        let n = self.dim;
        FiniteOperator {
            dim: n,
            basis: self.basis,
            entries: (0..n * n)
                .map(|k| self.entries[(k % n) * n + k / n].conj())
                .collect(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u32) -> FiniteOperator {
        let mut result = FiniteOperator::identity(self.basis, self.dim).expect("dim >= 1");
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.matmul(&base).expect("same dim");
            }
            k >>= 1;
            if k > 0 {
                base = base.matmul(&base).expect("same dim");
            }
        }
        result
    }

    pub fn scale(&self, s: Complex64) -> FiniteOperator {
        FiniteOperator {
            entries: self.entries.iter().map(|e| e * s).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &FiniteOperator) -> Result<FiniteOperator> {
        self.same_dim(other)?;
        Ok(FiniteOperator {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
            ..self.clone()
        })
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &FiniteOperator) -> Result<FiniteOperator> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &FiniteOperator) -> Result<f64> {
        self.same_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Largest entry of `|U†U - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.adjoint().matmul(self).expect("same dim");
        let id = FiniteOperator::identity(self.basis, self.dim).expect("dim >= 1");
        gram.max_abs_diff(&id).expect("same dim")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample_op() -> FiniteOperator {
        FiniteOperator::from_entries(
            BasisTag::Q,
            2,
            vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 1.0), c(3.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn zero_dimension_is_rejected() {
        assert_eq!(
            FiniteOperator::identity(BasisTag::Q, 0),
            Err(Error::BadDimension(0))
        );
        assert!(FiniteState::new(BasisTag::P, vec![]).is_err());
    }

    #[test]
    fn matmul_by_hand() {
        let a = sample_op();
        let sq = a.matmul(&a).unwrap();
        // [[1, 2i], [-1+i, 3]]^2
        assert_eq!(sq.get(0, 0), c(1.0, 0.0) + c(0.0, 2.0) * c(-1.0, 1.0));
        assert_eq!(sq.get(1, 1), c(-1.0, 1.0) * c(0.0, 2.0) + c(9.0, 0.0));
        assert_eq!(a.pow(2), sq);
        assert_eq!(a.pow(0), FiniteOperator::identity(BasisTag::Q, 2).unwrap());
    }

    #[test]
    fn adjoint_and_trace() {
        let a = sample_op();
        assert_eq!(a.adjoint().get(0, 1), c(-1.0, -1.0));
        assert_eq!(a.trace(), c(4.0, 0.0));
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn apply_to_basis_vector_reads_column() {
        let a = sample_op();
        let e1 = FiniteState::basis_vector(BasisTag::Q, 2, 1).unwrap();
        assert_eq!(
            a.apply(&e1).unwrap().components(),
            &[c(0.0, 2.0), c(3.0, 0.0)]
        );
    }

    #[test]
    fn json_round_trip() {
        let a = sample_op().with_basis(BasisTag::P);
        let text = a.to_json();
        assert_eq!(
            text,
            r#"{"dim":2,"basis":"P","entries":[[1.0,0.0],[0.0,2.0],[-1.0,1.0],[3.0,0.0]]}"#
        );
        let back: FiniteOperator = serde_json::from_str(&text).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<FiniteOperator>(
            r#"{"dim":2,"basis":"Q","entries":[[1,0]]}"#
        )
        .is_err());
    }
}
