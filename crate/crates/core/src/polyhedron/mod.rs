//! Strongly convex rational polyhedra.
//!
//! A polyhedron is kept in V-form: irredundant rational vertices plus
//! primitive integral rays. Everything else is derived from the cone over it,
//! `c(Λ) = closure of R_{>0} (Λ × {1})` in one dimension higher, whose
//! extreme rays at positive height are the lifted vertices and whose extreme
//! rays at height zero are the rays. Faces of the polyhedron are exactly the
//! faces of `c(Λ)` that leave the height-zero hyperplane.

mod cone;

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use cone::{Cone, Facet};

use crate::error::{Error, Result};
use crate::exactalg::{clear_vector_denominators, primitive, QuotientLattice};
use crate::{Int, QVec, Rat, ZMat, ZVec};

pub(crate) use cone::{fmt_vector, fmt_vectors};
use cone::rays_from_inequalities;

#[derive(Clone, Debug)]
pub struct Polyhedron {
    ambient_rank: usize,
    vertices: Vec<QVec>,
    rays: Vec<ZVec>,
    lift: Cone,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.vertices == other.vertices
            && self.rays == other.rays
    }
}

impl Eq for Polyhedron {}

impl std::hash::Hash for Polyhedron {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.vertices.hash(state);
        self.rays.hash(state);
    }
}

impl PartialOrd for Polyhedron {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical cell order: dimension, then sorted vertices, then sorted rays.
impl Ord for Polyhedron {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim(), &self.vertices, &self.rays).cmp(&(other.dim(), &other.vertices, &other.rays))
    }
}

/// `(v·d, d)` made primitive, `d` the common denominator of `v`.
pub fn lift_point(v: &QVec) -> ZVec {
    let mut scaled = clear_vector_denominators(v);
    let den = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    scaled.push(den);
    primitive(&scaled).expect("height coordinate is positive")
}

impl Polyhedron {
    /// Normalizes the input: duplicate and non-extreme vertices are dropped,
    /// rays are made primitive and redundant rays removed.
    pub fn new(ambient_rank: usize, vertices: &[QVec], rays: &[ZVec]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidPolyhedron("a polyhedron needs at least one vertex".into()));
        }
        let mut lifted = Vec::with_capacity(vertices.len() + rays.len());
        for v in vertices {
            if v.len() != ambient_rank {
                return Err(Error::AmbientMismatch(v.len(), ambient_rank));
            }
            lifted.push(lift_point(v));
        }
        for r in rays {
            if r.len() != ambient_rank {
                return Err(Error::AmbientMismatch(r.len(), ambient_rank));
            }
            let mut g = r.clone();
            g.push(Int::zero());
            lifted.push(g);
        }
        let lift = Cone::new(ambient_rank + 1, &lifted).map_err(|_| {
            Error::InvalidPolyhedron(format!("recession cone of {} contains a line", fmt_vectors(rays)))
        })?;
        Ok(Self::from_lift(ambient_rank, lift))
    }

    fn from_lift(ambient_rank: usize, lift: Cone) -> Self {
        let mut vertices = Vec::new();
        let mut rays = Vec::new();
        for g in lift.generators() {
            let h = &g[ambient_rank];
            if h.is_zero() {
                rays.push(g[..ambient_rank].to_vec());
            } else {
                vertices.push(g[..ambient_rank].iter().map(|x| Rat::new(x.clone(), h.clone())).collect());
            }
        }
        vertices.sort();
        rays.sort();
        Polyhedron { ambient_rank, vertices, rays, lift }
    }

    /// The cone `σ` viewed as a polyhedron with the single vertex `0`.
    pub fn from_cone(cone: &Cone) -> Self {
        let n = cone.ambient_rank();
        Self::new(n, &[vec![Rat::zero(); n]], cone.generators()).expect("cones are pointed")
    }

    pub fn point(v: QVec) -> Self {
        let n = v.len();
        Self::new(n, &[v], &[]).expect("a point is a polyhedron")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn vertices(&self) -> &[QVec] {
        &self.vertices
    }

    pub fn rays(&self) -> &[ZVec] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.lift.dim().saturating_sub(1)
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// A cone through the origin: single vertex at `0`.
    pub fn is_conical(&self) -> bool {
        self.vertices.len() == 1 && self.vertices[0].iter().all(Zero::is_zero)
    }

    pub fn recession_cone(&self) -> Cone {
        Cone::from_extreme(self.ambient_rank, self.rays.clone())
    }

    /// `c(Λ)` in rank `n + 1`.
    pub fn cone_over(&self) -> &Cone {
        &self.lift
    }

    pub fn as_cone(&self) -> Option<Cone> {
        self.is_conical().then(|| self.recession_cone())
    }

    /// All faces of dimension `d` in canonical order (empty when out of range).
    pub fn faces(&self, d: usize) -> Vec<Polyhedron> {
        self.all_faces().into_iter().filter(|f| f.dim() == d).collect()
    }

    /// All nonempty faces, the polyhedron itself included.
    pub fn all_faces(&self) -> Vec<Polyhedron> {
        let n = self.ambient_rank;
        let mut out: Vec<Polyhedron> = self
            .lift
            .faces()
            .into_iter()
            .filter(|c| c.generators().iter().any(|g| g[n].is_positive()))
            .map(|c| Self::from_lift(n, c))
            .collect();
        out.sort();
        out
    }

    /// The unique irredundant list of `(u_F, a_F)` with
    /// `Λ = { m : ⟨m, u_F⟩ >= -a_F }`, `u_F` primitive; sorted.
    pub fn facet_presentation(&self) -> Result<Vec<(ZVec, Rat)>> {
        let n = self.ambient_rank;
        if self.dim() != n {
            return Err(Error::NotFullDimensional { span: self.affine_span_description() });
        }
        let mut out = Vec::new();
        for f in self.lift.facets() {
            let u = &f.normal[..n];
            if u.iter().all(Zero::is_zero) {
                // the face at infinity, rec(Λ) × {0}
                continue;
            }
            let g = u.iter().fold(Int::zero(), |g, x| g.gcd(x));
            let normal: ZVec = u.iter().map(|x| x / &g).collect();
            out.push((normal, Rat::new(f.normal[n].clone(), g)));
        }
        out.sort();
        Ok(out)
    }

    /// Rebuilds a full-dimensional polyhedron from a facet presentation.
    pub fn from_facets(ambient_rank: usize, facets: &[(ZVec, Rat)]) -> Result<Self> {
        let mut ineqs: Vec<ZVec> = facets
            .iter()
            .map(|(u, a)| {
                let mut row: QVec = u.iter().map(|x| Rat::from_integer(x.clone())).collect();
                row.push(a.clone());
                clear_vector_denominators(&row)
            })
            .collect();
        let mut height = vec![Int::zero(); ambient_rank + 1];
        height[ambient_rank] = Int::one();
        ineqs.push(height);
        let rays = rays_from_inequalities(ambient_rank + 1, &[], &ineqs);
        Self::from_homogeneous(ambient_rank, &rays)?
            .ok_or_else(|| Error::InvalidPolyhedron("facet system is infeasible".into()))
    }

    /// Polyhedron sliced from the cone generated by `(x, h)` vectors with
    /// `h >= 0`; `None` when the cone never leaves height zero.
    pub fn from_homogeneous(ambient_rank: usize, generators: &[ZVec]) -> Result<Option<Self>> {
        if !generators.iter().any(|g| g[ambient_rank].is_positive()) {
            return Ok(None);
        }
        let lift = Cone::new(ambient_rank + 1, generators)?;
        Ok(Some(Self::from_lift(ambient_rank, lift)))
    }

    pub fn contains(&self, x: &QVec) -> bool {
        if x.len() != self.ambient_rank {
            return false;
        }
        let mut lifted = x.clone();
        lifted.push(Rat::one());
        self.lift.contains(&lifted)
    }

    /// Exact intersection; `None` is the empty polyhedron.
    pub fn intersect(&self, other: &Polyhedron) -> Result<Option<Polyhedron>> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientMismatch(self.ambient_rank, other.ambient_rank));
        }
        let meet = self.lift.intersect(&other.lift)?;
        Self::from_homogeneous(self.ambient_rank, meet.generators())
    }

    pub fn is_face_of(&self, other: &Polyhedron) -> bool {
        self.ambient_rank == other.ambient_rank
            && self.dim() <= other.dim()
            && other.faces(self.dim()).contains(self)
    }

    /// Integer generators of the direction space of the affine span.
    pub fn direction_generators(&self) -> Vec<ZVec> {
        let base = &self.vertices[0];
        let mut dirs: Vec<ZVec> = self.vertices[1..]
            .iter()
            .map(|v| clear_vector_denominators(&v.iter().zip(base).map(|(a, b)| a - b).collect::<QVec>()))
            .collect();
        dirs.extend(self.rays.iter().cloned());
        dirs
    }

    /// `min { t >= 1 : t·aff(Λ) meets the lattice }`: the common denominator
    /// of any vertex's image in the quotient by the saturated direction lattice.
    pub fn multiplicity(&self) -> Int {
        let n = self.ambient_rank;
        let dirs = ZMat::from_rows(n, self.direction_generators()).expect("directions live in N");
        let quotient = QuotientLattice::spanned_by(n, &dirs).expect("ranks agree");
        quotient
            .project_rational(&self.vertices[0])
            .iter()
            .fold(Int::one(), |l, x| l.lcm(x.denom()))
    }

    pub fn has_lattice_vertex(&self) -> bool {
        self.vertices.iter().any(|v| v.iter().all(|x| x.is_integer()))
    }

    /// Image under the quotient map of a lattice.
    pub fn project(&self, quotient: &QuotientLattice<Int>) -> Result<Polyhedron> {
        let vertices: Vec<QVec> = self.vertices.iter().map(|v| quotient.project_rational(v)).collect();
        let rays: Vec<ZVec> = self.rays.iter().map(|r| quotient.project(r)).collect();
        Polyhedron::new(quotient.quotient_rank, &vertices, &rays)
    }

    /// Image under `x ↦ g x` for an invertible integer matrix `g`.
    pub fn transform(&self, g: &ZMat) -> Result<Polyhedron> {
        let gq = crate::exactalg::to_rational(g);
        let vertices: Vec<QVec> = self.vertices.iter().map(|v| gq.mul_vec(v)).collect::<Result<_>>()?;
        let rays: Vec<ZVec> = self.rays.iter().map(|r| g.mul_vec(r)).collect::<Result<_>>()?;
        Polyhedron::new(g.rows(), &vertices, &rays)
    }

    fn affine_span_description(&self) -> String {
        let basis = crate::exactalg::row_lattice_basis(
            &ZMat::from_rows(self.ambient_rank, self.direction_generators()).expect("directions live in N"),
        );
        format!("{} + span{}", fmt_vector(&self.vertices[0]), fmt_vectors(&basis.to_rows()))
    }
}

impl fmt::Display for Polyhedron {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{}", fmt_vectors(&self.vertices))?;
        if !self.rays.is_empty() {
            write!(f, " + cone{}", fmt_vectors(&self.rays))?;
        }
        Ok(())
    }
}
