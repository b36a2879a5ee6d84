//! Chow groups of proper regular toric schemes over a discrete valuation ring,
//! computed from the combinatorics of a complete regular strongly convex
//! rational polyhedral complex.
//!
//! The layers build on each other:
//!
//! * [`exactalg`]: exact linear algebra, generic over the scalar type;
//! * [`polyhedron`]: rational polyhedra, cones, faces and facet presentations;
//! * [`complex`]: validated polyhedral complexes, fans, orbit lattices and
//!   star constructions, plus the built-in fixtures;
//! * [`chow`]: generators, relation matrices and dimensions of the Chow
//!   groups, the rank polynomial, and the specialization map;
//! * [`divisors`]: piecewise affine functions and invariant Weil divisors.
//!
//! All geometry is carried out over the arbitrary-precision aliases below.

pub mod chow;
pub mod complex;
pub mod divisors;
pub mod error;
pub mod exactalg;
pub mod polyhedron;

pub use error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rat = num_rational::BigRational;
pub type ZVec = Vec<Int>;
pub type QVec = Vec<Rat>;
pub type ZMat = exactalg::Matrix<Int>;
pub type QMat = exactalg::Matrix<Rat>;
pub type ZQuotient = exactalg::QuotientLattice<Int>;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(Int::from(numer), Int::from(denom))
}

pub fn zvec(xs: &[i64]) -> ZVec {
    xs.iter().map(|&x| Int::from(x)).collect()
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

pub fn zmat(rows: &[&[i64]]) -> ZMat {
    let cols = rows.first().map_or(0, |r| r.len());
    ZMat::from_rows(cols, rows.iter().map(|r| zvec(r)).collect()).expect("rectangular rows")
}

pub fn qmat(rows: &[&[i64]]) -> QMat {
    let cols = rows.first().map_or(0, |r| r.len());
    QMat::from_rows(cols, rows.iter().map(|r| qvec(r)).collect()).expect("rectangular rows")
}
