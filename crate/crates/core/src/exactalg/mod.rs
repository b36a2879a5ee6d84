//! Exact integer and rational linear algebra.
//!
//! Everything is generic over the scalar: field-style routines (rank, kernel,
//! row-space tests) accept any exact [`Scalar`] whose division is exact on the
//! values that elimination produces (integers, rationals), and the normal forms
//! accept any [`IntScalar`]. The crate root fixes the arbitrary-precision
//! instantiations used everywhere else.

mod elimination;
mod lattice;
mod matrix;
mod normal_form;

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

pub use elimination::{
    determinant, in_row_space, kernel_basis, rank, reduced_echelon, solve_unique, Echelon,
};
pub use lattice::QuotientLattice;
pub use matrix::{dot, Matrix};
pub use normal_form::{
    ext_gcd, hnf, integer_kernel, invariant_factors, is_unimodular, primitive,
    row_lattice_basis, saturation, snf,
};

use crate::error::Result;

pub trait Scalar: Clone + Debug + Display + PartialEq + Num + Signed {}

impl<T> Scalar for T where T: Clone + Debug + Display + PartialEq + Num + Signed {}

pub trait IntScalar: Scalar + Integer + Ord {}

impl<T> IntScalar for T where T: Scalar + Integer + Ord {}

/// Scales each row by the lcm of its denominators. Row scaling changes
/// neither the rank, the kernel, nor the row space over the rationals.
pub fn clear_denominators(m: &Matrix<BigRational>) -> Matrix<BigInt> {
    let mut out = Matrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        let lcm = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        for (j, x) in row.iter().enumerate() {
            out[(i, j)] = x.numer() * (&lcm / x.denom());
        }
    }
    out
}

pub fn clear_vector_denominators(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Rank of a rational matrix, eliminated fraction-free over the integers.
pub fn rank_q(m: &Matrix<BigRational>) -> usize {
    rank(&clear_denominators(m))
}

/// Kernel basis of a rational matrix; the returned vectors are integral.
pub fn kernel_q(m: &Matrix<BigRational>) -> Vec<Vec<BigRational>> {
    kernel_basis(&clear_denominators(m))
        .into_iter()
        .map(|v| {
            let v = primitive(&v).expect("kernel vectors are nonzero");
            v.into_iter().map(BigRational::from_integer).collect()
        })
        .collect()
}

pub fn in_row_space_q(m: &Matrix<BigRational>, v: &[BigRational]) -> Result<bool> {
    in_row_space(&clear_denominators(m), &clear_vector_denominators(v))
}

pub fn to_rational(m: &Matrix<BigInt>) -> Matrix<BigRational> {
    m.map(|x| BigRational::from_integer(x.clone()))
}

pub fn is_zero_vector<T: Zero>(v: &[T]) -> bool {
    v.iter().all(Zero::is_zero)
}
