//! Invariant divisors and piecewise affine functions.
//!
//! An invariant Q-Weil divisor is a combination of the horizontal prime
//! divisors `V(τ)`, `τ ∈ Σ(1)`, and the vertical components `V(v)`,
//! `v ∈ Π(0)`. Continuous functions on `|Π|` that are affine on each cell
//! correspond one-to-one to such divisors via
//! `D_φ = Σ_v −φ(v) V(v) + Σ_τ −ψ(v_τ) V(τ)`, `ψ` the recession function.
//! The unit in a monomial function `u ϖ^ℓ χ^m` does not affect its divisor
//! and is not modeled.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::complex::ToricModel;
use crate::error::{Error, Result};
use crate::exactalg::{dot, solve_unique};
use crate::polyhedron::fmt_vector;
use crate::{Int, QMat, QVec, Rat, ZVec};

fn zq(v: &[Int]) -> QVec {
    v.iter().cloned().map(Rat::from_integer).collect()
}

/// Coefficients on `Σ(1)` then `Π(0)`, both in canonical order: the same
/// order as the generators of `CH_n(X/S)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TWeilDivisor {
    pub horizontal: QVec,
    pub vertical: QVec,
}

impl TWeilDivisor {
    pub fn zero(model: &ToricModel) -> Self {
        TWeilDivisor {
            horizontal: vec![Rat::zero(); model.fan().skeleton(1).len()],
            vertical: vec![Rat::zero(); model.complex().skeleton(0).len()],
        }
    }

    /// Splits a coefficient vector laid out as `Σ(1)` then `Π(0)`.
    pub fn from_coefficients(model: &ToricModel, coefficients: &[Rat]) -> Result<Self> {
        let h = model.fan().skeleton(1).len();
        let expected = h + model.complex().skeleton(0).len();
        if coefficients.len() != expected {
            return Err(Error::ShapeMismatch { expected: format!("{expected} coefficients"), actual: coefficients.len().to_string() });
        }
        Ok(TWeilDivisor { horizontal: coefficients[..h].to_vec(), vertical: coefficients[h..].to_vec() })
    }

    pub fn coefficients(&self) -> QVec {
        self.horizontal.iter().chain(&self.vertical).cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.horizontal.iter().chain(&self.vertical).all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        TWeilDivisor {
            horizontal: self.horizontal.iter().map(|x| x * c).collect(),
            vertical: self.vertical.iter().map(|x| x * c).collect(),
        }
    }
}

fn zip_with(a: &[Rat], b: &[Rat], f: impl Fn(&Rat, &Rat) -> Rat) -> QVec {
    a.iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

impl Add for &TWeilDivisor {
    type Output = TWeilDivisor;
    fn add(self, o: &TWeilDivisor) -> TWeilDivisor {
        TWeilDivisor {
            horizontal: zip_with(&self.horizontal, &o.horizontal, |x, y| x + y),
            vertical: zip_with(&self.vertical, &o.vertical, |x, y| x + y),
        }
    }
}

impl Sub for &TWeilDivisor {
    type Output = TWeilDivisor;
    fn sub(self, o: &TWeilDivisor) -> TWeilDivisor {
        TWeilDivisor {
            horizontal: zip_with(&self.horizontal, &o.horizontal, |x, y| x - y),
            vertical: zip_with(&self.vertical, &o.vertical, |x, y| x - y),
        }
    }
}

impl Neg for &TWeilDivisor {
    type Output = TWeilDivisor;
    fn neg(self) -> TWeilDivisor {
        self.scale(&-Rat::from_integer(Int::from(1)))
    }
}

/// `u ϖ^ℓ χ^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialFunction {
    pub m: ZVec,
    pub l: Int,
}

/// `φ|_Λ(u) = ⟨m_Λ, u⟩ + ℓ_Λ` on each maximal cell, continuous.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewiseAffine {
    /// Maximal cell indices, in canonical order.
    cells: Vec<usize>,
    pieces: Vec<(QVec, Rat)>,
}

impl PiecewiseAffine {
    /// Pieces listed in the order of [`crate::complex::PolyhedralComplex::maximal_cells`].
    pub fn new(model: &ToricModel, pieces: Vec<(QVec, Rat)>) -> Result<Self> {
        let cells = model.complex().maximal_cells().to_vec();
        if pieces.len() != cells.len() {
            return Err(Error::ShapeMismatch { expected: format!("{} pieces", cells.len()), actual: pieces.len().to_string() });
        }
        let n = model.rank();
        if let Some((m, _)) = pieces.iter().find(|(m, _)| m.len() != n) {
            return Err(Error::AmbientMismatch(m.len(), n));
        }
        let phi = PiecewiseAffine { cells, pieces };
        phi.check_continuity(model)?;
        Ok(phi)
    }

    /// Pieces keyed by maximal cell index; every maximal cell must appear.
    pub fn from_cell_map(model: &ToricModel, map: &BTreeMap<usize, (QVec, Rat)>) -> Result<Self> {
        let mut pieces = Vec::new();
        for &c in model.complex().maximal_cells() {
            match map.get(&c) {
                Some(p) => pieces.push(p.clone()),
                None => return Err(Error::UnknownCell(format!("no affine piece given for maximal cell {c}"))),
            }
        }
        if let Some(extra) = map.keys().find(|k| !model.complex().maximal_cells().contains(k)) {
            return Err(Error::UnknownCell(format!("cell {extra} is not a maximal cell")));
        }
        Self::new(model, pieces)
    }

    /// The same affine function `⟨m, ·⟩ + ℓ` on every cell.
    pub fn affine(model: &ToricModel, m: QVec, l: Rat) -> Result<Self> {
        let k = model.complex().maximal_cells().len();
        Self::new(model, vec![(m, l); k])
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn pieces(&self) -> &[(QVec, Rat)] {
        &self.pieces
    }

    pub fn piece(&self, cell: usize) -> Option<&(QVec, Rat)> {
        self.cells.iter().position(|&c| c == cell).map(|i| &self.pieces[i])
    }

    pub fn is_affine(&self) -> bool {
        self.pieces.windows(2).all(|w| w[0] == w[1])
    }

    fn check_continuity(&self, model: &ToricModel) -> Result<()> {
        let complex = model.complex();
        for f in 0..complex.len() {
            let owners: Vec<usize> =
                (0..self.cells.len()).filter(|&i| complex.faces_of(self.cells[i]).binary_search(&f).is_ok()).collect();
            let cell = complex.cell(f);
            for w in owners.windows(2) {
                let (a, b) = (&self.pieces[w[0]], &self.pieces[w[1]]);
                let vertex_ok = cell.vertices().iter().all(|v| dot(&a.0, v) + &a.1 == dot(&b.0, v) + &b.1);
                let ray_ok = cell.rays().iter().all(|r| dot(&a.0, &zq(r)) == dot(&b.0, &zq(r)));
                if !(vertex_ok && ray_ok) {
                    return Err(Error::Discontinuous(format!(
                        "pieces on cells {} and {} disagree on {}",
                        self.cells[w[0]],
                        self.cells[w[1]],
                        cell
                    )));
                }
            }
        }
        Ok(())
    }

    /// The piece at position `owner` evaluated at `x`.
    fn eval_on(&self, owner: usize, x: &[Rat]) -> Rat {
        let (m, l) = &self.pieces[owner];
        dot(m, x) + l
    }
}

/// Position in `φ.cells` of some maximal cell having cell `c` as a face.
fn owner_of(model: &ToricModel, phi: &PiecewiseAffine, c: usize) -> usize {
    (0..phi.cells.len())
        .find(|&i| model.complex().faces_of(phi.cells[i]).binary_search(&c).is_ok())
        .expect("every cell lies in a maximal cell")
}

/// `ψ = rec(φ)` by its values `ψ(v_τ)` on the rays of `Σ`, canonical order.
pub fn recession_function(model: &ToricModel, phi: &PiecewiseAffine) -> Result<QVec> {
    let fan = model.fan();
    let mut values = Vec::new();
    for tau in fan.skeleton(1) {
        let v = zq(&fan.cone(tau).generators()[0]);
        let mut seen: Option<Rat> = None;
        for (i, &c) in phi.cells.iter().enumerate() {
            let rec = model.rec(c);
            if fan.complex().faces_of(rec).binary_search(&tau).is_err() {
                continue;
            }
            let val = dot(&phi.pieces[i].0, &v);
            match &seen {
                None => seen = Some(val),
                Some(s) if *s != val => {
                    return Err(Error::NotRecessionFunction(format!(
                        "slopes {} and {} along {}",
                        s,
                        val,
                        fmt_vector(&v)
                    )))
                }
                Some(_) => {}
            }
        }
        values.push(seen.expect("every ray of the recession fan lies in some maximal recession cone"));
    }
    Ok(values)
}

/// `D_φ`.
pub fn divisor_of(model: &ToricModel, phi: &PiecewiseAffine) -> Result<TWeilDivisor> {
    let horizontal = recession_function(model, phi)?.into_iter().map(|x| -x).collect();
    let vertical = model
        .complex()
        .skeleton(0)
        .into_iter()
        .map(|v| -phi.eval_on(owner_of(model, phi, v), &model.complex().cell(v).vertices()[0]))
        .collect();
    Ok(TWeilDivisor { horizontal, vertical })
}

/// `div(u ϖ^ℓ χ^m) = Σ_τ ⟨m, v_τ⟩ V(τ) + Σ_v (⟨m, v⟩ + ℓ) V(v)`.
pub fn principal_divisor(model: &ToricModel, f: &MonomialFunction) -> TWeilDivisor {
    let fan = model.fan();
    let mq = zq(&f.m);
    let horizontal = fan.skeleton(1).into_iter().map(|t| Rat::from_integer(dot(&f.m, &fan.cone(t).generators()[0]))).collect();
    let l = Rat::from_integer(f.l.clone());
    let vertical = model
        .complex()
        .skeleton(0)
        .into_iter()
        .map(|v| dot(&mq, &model.complex().cell(v).vertices()[0]) + &l)
        .collect();
    TWeilDivisor { horizontal, vertical }
}

/// The unique `φ` with `D_φ = D`, solved cell by cell from
/// `φ(v) = −D[v]` at the vertices and `⟨m_Λ, v_τ⟩ = −D[τ]` along the rays.
pub fn function_of(model: &ToricModel, d: &TWeilDivisor) -> Result<PiecewiseAffine> {
    let n = model.rank();
    let complex = model.complex();
    let fan = model.fan();
    let rays = fan.skeleton(1);
    let vertices = complex.skeleton(0);
    if d.horizontal.len() != rays.len() || d.vertical.len() != vertices.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} coefficients", rays.len() + vertices.len()),
            actual: (d.horizontal.len() + d.vertical.len()).to_string(),
        });
    }
    let mut pieces = Vec::new();
    for &c in complex.maximal_cells() {
        let cell = complex.cell(c);
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for v in cell.vertices() {
            let mut row = v.clone();
            row.push(Rat::from_integer(Int::from(1)));
            rows.push(row);
            let idx = vertices
                .iter()
                .position(|&i| complex.cell(i).vertices()[0] == *v)
                .expect("vertices of cells are vertices of the complex");
            rhs.push(-d.vertical[idx].clone());
        }
        for r in cell.rays() {
            let mut row = zq(r);
            row.push(Rat::zero());
            rows.push(row);
            let idx = rays
                .iter()
                .position(|&t| fan.cone(t).generators()[0] == *r)
                .expect("rays of cells are rays of the recession fan");
            rhs.push(-d.horizontal[idx].clone());
        }
        let system = QMat::from_rows(n + 1, rows)?;
        let sol = solve_unique(&system, &rhs)
            .ok_or_else(|| Error::InconsistentSystem(format!("no unique affine function on {cell}")))?;
        pieces.push((sol[..n].to_vec(), sol[n].clone()));
    }
    PiecewiseAffine::new(model, pieces)
}

/// `D1 ∼ D2` iff `φ_{D1} − φ_{D2}` is globally affine.
pub fn rationally_equivalent(model: &ToricModel, d1: &TWeilDivisor, d2: &TWeilDivisor) -> Result<bool> {
    Ok(function_of(model, &(d1 - d2))?.is_affine())
}
