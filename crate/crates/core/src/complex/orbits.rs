//! Orbit lattices, star constructions and lattice normal vectors.

use super::{recession_fan, Fan, PolyhedralComplex, DEFAULT_AUDIT_SEED};
use crate::error::{Error, Result};
use crate::exactalg::{is_zero_vector, primitive};
use crate::polyhedron::{Cone, Polyhedron};
use crate::{QVec, ZQuotient, ZVec};

fn cone_lattice(cone: &Cone) -> ZQuotient {
    ZQuotient::spanned_by(cone.ambient_rank(), &cone.generator_matrix()).expect("generators live in N")
}

/// `N(σ)` per cone of `rec(Π)` and `Ñ(Λ)` per cell, indexed like the fan
/// and the complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitLattices {
    cones: Vec<ZQuotient>,
    cells: Vec<ZQuotient>,
}

impl OrbitLattices {
    pub fn new(complex: &PolyhedralComplex, fan: &Fan) -> Self {
        OrbitLattices {
            cones: fan.cones().iter().map(cone_lattice).collect(),
            cells: complex.cells().iter().map(|c| cone_lattice(c.cone_over())).collect(),
        }
    }

    pub fn cone(&self, sigma: usize) -> &ZQuotient {
        &self.cones[sigma]
    }

    pub fn cell(&self, lambda: usize) -> &ZQuotient {
        &self.cells[lambda]
    }
}

/// First nonzero image under the quotient, made primitive. All images of
/// the generators of a one-dimensional quotient cone are positive multiples
/// of the same ray.
fn ray_image(q: &ZQuotient, generators: &[ZVec]) -> Result<ZVec> {
    let image = generators
        .iter()
        .map(|g| q.project(g))
        .find(|v| !is_zero_vector(v))
        .ok_or(Error::ZeroVector)?;
    primitive(&image)
}

/// `v_{σ/τ}`: primitive generator of `π_τ(σ)` in `N(τ)`.
pub fn normal_vector(tau: &Cone, sigma: &Cone) -> Result<ZVec> {
    check_cone_step(tau, sigma)?;
    ray_image(&cone_lattice(tau), sigma.generators())
}

fn check_cone_step(tau: &Cone, sigma: &Cone) -> Result<()> {
    if sigma.dim() != tau.dim() + 1 || !tau.is_face_of(sigma) {
        return Err(Error::DimensionMismatch(format!("{tau} is not a facet of {sigma}")));
    }
    Ok(())
}

/// `v_Γ = π_τ(Γ)` for a cell with `rec(Γ) = τ` and `dim Γ = dim τ`.
pub fn vertex_image(gamma: &Polyhedron, tau: &Cone) -> Result<QVec> {
    check_vertex(gamma, tau)?;
    Ok(cone_lattice(tau).project_rational(&gamma.vertices()[0]))
}

fn check_vertex(gamma: &Polyhedron, tau: &Cone) -> Result<()> {
    if gamma.recession_cone() != *tau {
        return Err(Error::DimensionMismatch(format!("recession cone of {gamma} is not {tau}")));
    }
    if gamma.dim() != tau.dim() {
        return Err(Error::DimensionMismatch(format!("{gamma} does not project to a point along {tau}")));
    }
    Ok(())
}

/// `v_{Λ'/Λ}`: primitive generator of `π_Λ(c(Λ'))` in `Ñ(Λ)`.
pub fn edge_normal(lambda: &Polyhedron, coface: &Polyhedron) -> Result<ZVec> {
    check_cell_step(lambda, coface)?;
    ray_image(&cone_lattice(lambda.cone_over()), coface.cone_over().generators())
}

fn check_cell_step(lambda: &Polyhedron, coface: &Polyhedron) -> Result<()> {
    if coface.dim() != lambda.dim() + 1 || !lambda.is_face_of(coface) {
        return Err(Error::DimensionMismatch(format!("{lambda} is not a facet of {coface}")));
    }
    Ok(())
}

/// `Π(σ)` together with the lattice `N(σ)` it lives in.
#[derive(Clone, Debug)]
pub struct StarComplex {
    pub lattice: ZQuotient,
    pub complex: PolyhedralComplex,
}

/// `Π(Λ)` together with the lattice `Ñ(Λ)` it lives in.
#[derive(Clone, Debug)]
pub struct StarFan {
    pub lattice: ZQuotient,
    pub fan: Fan,
}

pub fn star_complex(c: &PolyhedralComplex, sigma: &Cone) -> Result<StarComplex> {
    if !c.cells().iter().any(|cell| cell.recession_cone() == *sigma) {
        return Err(Error::UnknownCone(sigma.to_string()));
    }
    let lattice = cone_lattice(sigma);
    let cells = c
        .maximal_polyhedra()
        .iter()
        .filter(|cell| sigma.is_face_of(&cell.recession_cone()))
        .map(|cell| cell.project(&lattice))
        .collect::<Result<Vec<_>>>()?;
    let complex = PolyhedralComplex::build(lattice.quotient_rank, &cells, c.completeness_audit().seed)?;
    Ok(StarComplex { lattice, complex })
}

pub fn star_fan(c: &PolyhedralComplex, lambda: &Polyhedron) -> Result<StarFan> {
    let i = c.index_of(lambda).ok_or_else(|| Error::UnknownCell(lambda.to_string()))?;
    let lattice = cone_lattice(lambda.cone_over());
    let cones = c
        .cofaces_of(i)
        .into_iter()
        .filter(|&j| c.cofacets_of(j).is_empty())
        .map(|j| {
            let gens: Vec<ZVec> = c.cell(j).cone_over().generators().iter().map(|g| lattice.project(g)).collect();
            Cone::new(lattice.quotient_rank, &gens)
        })
        .collect::<Result<Vec<_>>>()?;
    let fan = Fan::new(lattice.quotient_rank, &cones)?;
    Ok(StarFan { lattice, fan })
}

/// A complete (and, unless forced, regular) complex with its recession fan
/// and orbit lattices precomputed. Cells and cones are addressed by their
/// indices in [`PolyhedralComplex::cells`] and [`Fan::cones`].
#[derive(Clone, Debug)]
pub struct ToricModel {
    complex: PolyhedralComplex,
    fan: Fan,
    rec: Vec<usize>,
    lattices: OrbitLattices,
    forced: bool,
}

impl ToricModel {
    pub fn new(complex: &PolyhedralComplex, force: bool) -> Result<Self> {
        if !complex.is_complete() {
            return Err(Error::NotComplete);
        }
        if !complex.is_regular() && !force {
            return Err(Error::NotRegular);
        }
        let fan = recession_fan(complex)?;
        let rec = complex
            .cells()
            .iter()
            .map(|c| fan.index_of(&c.recession_cone()).expect("recession cones are in the fan"))
            .collect();
        let lattices = OrbitLattices::new(complex, &fan);
        Ok(ToricModel { complex: complex.clone(), fan, rec, lattices, forced: force && !complex.is_regular() })
    }

    /// `Π = rec(Π) = Σ` viewed as its own canonical model.
    pub fn from_fan(fan: &Fan, force: bool) -> Result<Self> {
        let complex = PolyhedralComplex::build(fan.ambient_rank(), &fan.complex().maximal_polyhedra(), DEFAULT_AUDIT_SEED)?;
        Self::new(&complex, force)
    }

    pub fn complex(&self) -> &PolyhedralComplex {
        &self.complex
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn lattices(&self) -> &OrbitLattices {
        &self.lattices
    }

    /// Relative dimension: the rank of `N`.
    pub fn rank(&self) -> usize {
        self.complex.ambient_rank()
    }

    /// Whether regularity was bypassed for a non-regular complex.
    pub fn is_forced(&self) -> bool {
        self.forced
    }

    /// Fan index of `rec(Λ)`.
    pub fn rec(&self, cell: usize) -> usize {
        self.rec[cell]
    }

    /// `v_{σ/τ}` by fan indices; `σ` must cover `τ`.
    pub fn normal_vector(&self, tau: usize, sigma: usize) -> Result<ZVec> {
        check_cone_step(self.fan.cone(tau), self.fan.cone(sigma))?;
        ray_image(self.lattices.cone(tau), self.fan.cone(sigma).generators())
    }

    /// `v_Γ` in `N(rec(Γ))`.
    pub fn vertex_image(&self, gamma: usize) -> Result<QVec> {
        let cell = self.complex.cell(gamma);
        let tau = self.rec[gamma];
        check_vertex(cell, self.fan.cone(tau))?;
        Ok(self.lattices.cone(tau).project_rational(&cell.vertices()[0]))
    }

    /// `v_{Λ'/Λ}` by cell indices.
    pub fn edge_normal(&self, lambda: usize, coface: usize) -> Result<ZVec> {
        let (a, b) = (self.complex.cell(lambda), self.complex.cell(coface));
        if b.dim() != a.dim() + 1 || self.complex.faces_of(coface).binary_search(&lambda).is_err() {
            return Err(Error::DimensionMismatch(format!("{a} is not a facet of {b}")));
        }
        ray_image(self.lattices.cell(lambda), b.cone_over().generators())
    }

    /// Cells whose recession cone is exactly fan cone `sigma` and whose
    /// dimension is `d`.
    pub fn cells_over(&self, sigma: usize, d: usize) -> Vec<usize> {
        (0..self.complex.len()).filter(|&i| self.rec[i] == sigma && self.complex.cell(i).dim() == d).collect()
    }

    /// Number of cells whose star fan has full rank `n`.
    pub fn full_rank_star_count(&self) -> usize {
        (0..self.complex.len()).filter(|&i| self.lattices.cell(i).quotient_rank == self.rank()).count()
    }
}
