use num_rational::Ratio;

use crate::error::{Error, Result};

use super::normal_form::{hnf, integer_kernel, row_lattice_basis, saturation};
use super::{dot, rank, IntScalar, Matrix};

/// The quotient `Z^n / (Z^n ∩ span_Q(sub))` together with its dual.
///
/// `projection` is the Hermite basis of the annihilator of `sub` in the dual
/// lattice. Read as a map `x ↦ projection · x` it is onto `Z^quotient_rank`
/// with kernel exactly the saturated sublattice, so its rows are also the
/// dual basis: `⟨dual_basis[i], x⟩` is the `i`-th quotient coordinate of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientLattice<T> {
    pub ambient_rank: usize,
    pub sub_basis: Matrix<T>,
    pub quotient_rank: usize,
    pub projection: Matrix<T>,
    pub dual_basis: Matrix<T>,
}

impl<T: IntScalar> QuotientLattice<T> {
    /// `sub` rows must be linearly independent.
    pub fn new(ambient_rank: usize, sub: &Matrix<T>) -> Result<Self> {
        if sub.cols() != ambient_rank {
            return Err(Error::AmbientMismatch(sub.cols(), ambient_rank));
        }
        if rank(sub) != sub.rows() {
            return Err(Error::DependentRows);
        }
        Ok(Self::build(ambient_rank, sub))
    }

    /// Quotient by the span of arbitrary (possibly dependent) generators.
    pub fn spanned_by(ambient_rank: usize, generators: &Matrix<T>) -> Result<Self> {
        if generators.cols() != ambient_rank {
            return Err(Error::AmbientMismatch(generators.cols(), ambient_rank));
        }
        Ok(Self::build(ambient_rank, &row_lattice_basis(generators)))
    }

    fn build(ambient_rank: usize, sub: &Matrix<T>) -> Self {
        let sub_basis = saturation(sub);
        let projection = if sub.rows() == 0 {
            Matrix::identity(ambient_rank)
        } else {
            hnf(&integer_kernel(sub)).0
        };
        QuotientLattice {
            ambient_rank,
            quotient_rank: projection.rows(),
            sub_basis,
            dual_basis: projection.clone(),
            projection,
        }
    }

    pub fn project(&self, v: &[T]) -> Vec<T> {
        self.projection.row_iter().map(|r| dot(r, v)).collect()
    }

    pub fn project_rational(&self, v: &[Ratio<T>]) -> Vec<Ratio<T>> {
        self.projection
            .row_iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Ratio::from_integer(T::zero()), |acc, (a, x)| {
                        acc + x.clone() * Ratio::from_integer(a.clone())
                    })
            })
            .collect()
    }
}
