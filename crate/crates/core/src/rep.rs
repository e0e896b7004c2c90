//! Linear actions of an (almost) Lie algebra on a finite-dimensional space.

use crate::algebra::AlmostLieAlgebra;
use crate::linalg::{LinAlgError, RatMat};

/// One `space_dim x space_dim` rational matrix per basis element of the
/// acting algebra. For genuinely almost-Lie actions the representation
/// identity is not required; `is_representation` checks it when wanted.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearRep {
    algebra: AlmostLieAlgebra,
    space_dim: usize,
    matrices: Vec<RatMat>,
}

impl LinearRep {
    pub fn new(
        algebra: AlmostLieAlgebra,
        space_dim: usize,
        matrices: Vec<RatMat>,
    ) -> Result<Self, LinAlgError> {
        if matrices.len() != algebra.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: algebra.dim(),
                got: matrices.len(),
            });
        }
        for m in &matrices {
            if m.rows() != space_dim || m.cols() != space_dim {
                return Err(LinAlgError::DimensionMismatch { expected: space_dim, got: m.rows() });
            }
        }
        Ok(LinearRep { algebra, space_dim, matrices })
    }

    /// Trivial (zero) action on a `space_dim`-dimensional space.
    pub fn zero(algebra: AlmostLieAlgebra, space_dim: usize) -> Self {
        let mats = (0..algebra.dim()).map(|_| RatMat::zeros(space_dim, space_dim)).collect();
        LinearRep { algebra, space_dim, matrices: mats }
    }

    pub fn algebra(&self) -> &AlmostLieAlgebra {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn matrix(&self, basis_index: usize) -> &RatMat {
        &self.matrices[basis_index]
    }

    pub fn matrices(&self) -> &[RatMat] {
        &self.matrices
    }

    /// Matrix of the action of an arbitrary algebra element.
    pub fn apply(&self, element: &[crate::linalg::Rational]) -> RatMat {
        assert_eq!(element.len(), self.algebra.dim());
        let mut out = RatMat::zeros(self.space_dim, self.space_dim);
        for (a, c) in element.iter().enumerate() {
            if !num::Zero::is_zero(c) {
                out = out.add(&self.matrices[a].scale(c));
            }
        }
        out
    }

    /// `rho([a,b]) = rho(a) rho(b) - rho(b) rho(a)` on all basis pairs.
    pub fn is_representation(&self) -> bool {
        let d = self.algebra.dim();
        for a in 0..d {
            for b in (a + 1)..d {
                let lhs = self.apply(&self.algebra.bracket_basis(a, b));
                let rhs = self.matrices[a].commutator(&self.matrices[b]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}
