//! Hermite and Smith normal forms over a Euclidean ring of integers.
//!
//! Row Hermite normal form convention: `h = u * m` with `u` unimodular, the
//! nonzero rows of `h` on top, each pivot (leading nonzero entry) positive and
//! strictly to the right of the pivot above, and every entry above a pivot
//! reduced into `[0, pivot)`. The form is unique for a given row lattice,
//! which makes every downstream basis choice deterministic.

use num_traits::Zero;

use crate::error::{Error, Result};

use super::{IntScalar, Matrix};

/// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `x*a + y*b = g`.
pub fn ext_gcd<T: IntScalar>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Replaces rows `(a, b)` by `(x*a + y*b, -(q/g)*a + (p/g)*b)`; the 2x2 block
/// has determinant one.
fn combine_rows<T: IntScalar>(m: &mut Matrix<T>, a: usize, b: usize, coeffs: &[T; 4]) {
    let [x, y, z, w] = coeffs;
    for j in 0..m.cols() {
        let (ea, eb) = (m[(a, j)].clone(), m[(b, j)].clone());
        m[(a, j)] = x.clone() * ea.clone() + y.clone() * eb.clone();
        m[(b, j)] = z.clone() * ea + w.clone() * eb;
    }
}

fn combine_cols<T: IntScalar>(m: &mut Matrix<T>, a: usize, b: usize, coeffs: &[T; 4]) {
    let [x, y, z, w] = coeffs;
    for i in 0..m.rows() {
        let (ea, eb) = (m[(i, a)].clone(), m[(i, b)].clone());
        m[(i, a)] = x.clone() * ea.clone() + y.clone() * eb.clone();
        m[(i, b)] = z.clone() * ea + w.clone() * eb;
    }
}

fn gcd_block<T: IntScalar>(p: &T, q: &T) -> [T; 4] {
    // An exact multiple is cleared without touching the pivot row/column.
    if !p.is_zero() && q.is_multiple_of(p) {
        return [T::one(), T::zero(), -(q.clone() / p.clone()), T::one()];
    }
    let (g, x, y) = ext_gcd(p, q);
    [x, y, -(q.clone() / g.clone()), p.clone() / g]
}

fn add_row_multiple<T: IntScalar>(m: &mut Matrix<T>, target: usize, source: usize, factor: &T) {
    for j in 0..m.cols() {
        let delta = factor.clone() * m[(source, j)].clone();
        m[(target, j)] = m[(target, j)].clone() + delta;
    }
}

fn negate_row<T: IntScalar>(m: &mut Matrix<T>, i: usize) {
    for e in m.row_mut(i) {
        *e = -e.clone();
    }
}

/// Row Hermite normal form: returns `(h, u)` with `u * m = h`.
pub fn hnf<T: IntScalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>) {
    let mut h = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut r = 0;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        for i in r + 1..h.rows() {
            if h[(i, c)].is_zero() {
                continue;
            }
            let block = gcd_block(&h[(r, c)], &h[(i, c)]);
            combine_rows(&mut h, r, i, &block);
            combine_rows(&mut u, r, i, &block);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            if !q.is_zero() {
                add_row_multiple(&mut h, i, r, &-q.clone());
                add_row_multiple(&mut u, i, r, &-q);
            }
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(s, u, v)` with `u * m * v = s`, `s` diagonal,
/// nonnegative, and `s[i][i]` dividing `s[i+1][i+1]`.
pub fn snf<T: IntScalar>(m: &Matrix<T>) -> (Matrix<T>, Matrix<T>, Matrix<T>) {
    let mut s = m.clone();
    let mut u = Matrix::identity(m.rows());
    let mut v = Matrix::identity(m.cols());
    let (rows, cols) = (s.rows(), s.cols());
    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if s[(i, j)].is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            for i in t + 1..rows {
                if !s[(i, t)].is_zero() {
                    let block = gcd_block(&s[(t, t)], &s[(i, t)]);
                    combine_rows(&mut s, t, i, &block);
                    combine_rows(&mut u, t, i, &block);
                }
            }
            for j in t + 1..cols {
                if !s[(t, j)].is_zero() {
                    let block = gcd_block(&s[(t, t)], &s[(t, j)]);
                    combine_cols(&mut s, t, j, &block);
                    combine_cols(&mut v, t, j, &block);
                }
            }
            let column_clear = (t + 1..rows).all(|i| s[(i, t)].is_zero());
            if !column_clear {
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    add_row_multiple(&mut s, t, i, &T::one());
                    add_row_multiple(&mut u, t, i, &T::one());
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            negate_row(&mut s, t);
            negate_row(&mut u, t);
        }
    }
    (s, u, v)
}

/// Invariant factors: the diagonal of the Smith form, without trailing zeros
/// beyond the rank.
pub fn invariant_factors<T: IntScalar>(m: &Matrix<T>) -> Vec<T> {
    let (s, _, _) = snf(m);
    s.diagonal().into_iter().filter(|d| !d.is_zero()).collect()
}

/// `v / gcd(v)`.
pub fn primitive<T: IntScalar>(v: &[T]) -> Result<Vec<T>> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x.clone() / g.clone()).collect())
}

/// Basis of the integer kernel `{ x in Z^n : m x = 0 }`, in Hermite normal form.
pub fn integer_kernel<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.cols();
    let (h, u) = hnf(&m.transpose());
    let zero_rows: Vec<usize> = (0..h.rows())
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .collect();
    let basis = u.select_rows(&zero_rows);
    let canonical = hnf(&basis).0;
    nonzero_rows(&canonical, n)
}

fn nonzero_rows<T: IntScalar>(m: &Matrix<T>, cols: usize) -> Matrix<T> {
    let keep: Vec<Vec<T>> = m
        .row_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| r.to_vec())
        .collect();
    Matrix::from_rows(cols, keep).expect("rows share the column count")
}

/// Hermite basis of the row lattice (zero rows dropped).
pub fn row_lattice_basis<T: IntScalar>(m: &Matrix<T>) -> Matrix<T> {
    nonzero_rows(&hnf(m).0, m.cols())
}

/// Basis of `span_Q(rows) ∩ Z^n`: the annihilator of the annihilator.
pub fn saturation<T: IntScalar>(rows: &Matrix<T>) -> Matrix<T> {
    let n = rows.cols();
    if rows.rows() == 0 || rows.is_zero() {
        return Matrix::zeros(0, n);
    }
    let annihilator = integer_kernel(rows);
    if annihilator.rows() == 0 {
        return Matrix::identity(n);
    }
    integer_kernel(&annihilator)
}

/// Whether a square integer matrix has determinant ±1.
pub fn is_unimodular<T: IntScalar>(m: &Matrix<T>) -> bool {
    super::determinant(m).map_or(false, |d| d.abs().is_one())
}
