//! Fraction-free (Bareiss-style) elimination.
//!
//! Every update has the form `(p * a_ij - a_ic * a_rj) / p_prev`, where the
//! division is exact over any integral domain: each intermediate entry is a
//! minor of the input. Over the integers entries therefore stay bounded by
//! Hadamard's inequality rather than growing doubly exponentially. The same
//! code runs unchanged over a field, where the divisions are trivially exact.

use num_traits::Zero;

use crate::error::{Error, Result};

use super::{Matrix, Scalar};

/// Fraction-free reduced row echelon form.
///
/// `reduced` equals `scale` times the usual reduced row echelon form: every
/// pivot entry is `scale`, every other entry of a pivot column is zero, and
/// the zero rows sit at the bottom. `pivots[i]` is the pivot column of row `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
    pub scale: T,
}

impl<T: Scalar> Echelon<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.reduced.cols()).filter(|c| !self.pivots.contains(c)).collect()
    }
}

fn eliminate<T: Scalar>(m: &Matrix<T>, jordan: bool) -> (Matrix<T>, Vec<usize>, T, bool) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut prev = T::one();
    let mut pivots = Vec::new();
    let mut negated = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            negated = !negated;
        }
        let pivot = a[(r, c)].clone();
        let targets: Vec<usize> = if jordan {
            (0..rows).filter(|&i| i != r).collect()
        } else {
            (r + 1..rows).collect()
        };
        for i in targets {
            let factor = a[(i, c)].clone();
            for j in 0..cols {
                let updated = (pivot.clone() * a[(i, j)].clone()
                    - factor.clone() * a[(r, j)].clone())
                    / prev.clone();
                a[(i, j)] = updated;
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (a, pivots, prev, negated)
}

/// Fraction-free Gauss-Jordan reduction.
pub fn reduced_echelon<T: Scalar>(m: &Matrix<T>) -> Echelon<T> {
    let (reduced, pivots, scale, _) = eliminate(m, true);
    Echelon { reduced, pivots, scale }
}

/// Rank by fraction-free forward elimination.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    eliminate(m, false).1.len()
}

/// Determinant by Bareiss elimination. The last pivot of a full-rank square
/// matrix is its determinant up to the sign of the row permutation.
pub fn determinant<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if m.rows() != m.cols() {
        return Err(Error::ShapeMismatch {
            expected: "square matrix".into(),
            actual: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    if m.rows() == 0 {
        return Ok(T::one());
    }
    let (_, pivots, last, negated) = eliminate(m, false);
    if pivots.len() < m.rows() {
        return Ok(T::zero());
    }
    Ok(if negated { -last } else { last })
}

/// Basis of `{ v : m v = 0 }`, one vector per free column of the echelon form.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let ech = reduced_echelon(m);
    let cols = m.cols();
    ech.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![T::zero(); cols];
            v[f] = ech.scale.clone();
            for (i, &p) in ech.pivots.iter().enumerate() {
                v[p] = -ech.reduced[(i, f)].clone();
            }
            v
        })
        .collect()
}

/// Whether `v` is a linear combination of the rows of `m`.
pub fn in_row_space<T: Scalar>(m: &Matrix<T>, v: &[T]) -> Result<bool> {
    if v.len() != m.cols() {
        return Err(Error::ShapeMismatch {
            expected: format!("vector of length {}", m.cols()),
            actual: format!("{}", v.len()),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let mut ext = m.clone();
    ext.push_row(v)?;
    Ok(rank(&ext) == rank(m))
}

/// Solves `m x = b` when the solution exists and is unique.
pub fn solve_unique<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    if b.len() != m.rows() {
        return None;
    }
    let mut aug = Matrix::zeros(m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols())] = b[i].clone();
    }
    let ech = reduced_echelon(&aug);
    if ech.pivots.len() != m.cols() || ech.pivots.contains(&m.cols()) {
        return None;
    }
    Some(
        (0..m.cols())
            .map(|i| ech.reduced[(i, m.cols())].clone() / ech.scale.clone())
            .collect(),
    )
}
