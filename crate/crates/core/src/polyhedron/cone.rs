//! Rational polyhedral cones.
//!
//! Facets are found combinatorially: every facet of a `d`-dimensional cone is
//! spanned by `d - 1` independent generators, so each such subset determines
//! one candidate normal inside the linear span, kept when all generators lie
//! on one side. The cost is `O(C(g, d - 1))` rank computations for `g`
//! generators, which is fine in the small ambient ranks this crate targets.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{
    clear_vector_denominators, dot, in_row_space, integer_kernel, kernel_basis, primitive, rank,
    row_lattice_basis,
};
use crate::{Int, QVec, ZMat, ZVec};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Facet {
    /// Inward normal, primitive, chosen inside the linear span of the cone.
    pub normal: ZVec,
    /// Indices of the generators lying on the facet.
    pub incidence: Vec<usize>,
}

/// Facet structure of the cone spanned by a list of nonzero integer vectors.
#[derive(Clone, Debug)]
pub(crate) struct ConeGeometry {
    pub span: ZMat,
    pub dim: usize,
    pub facets: Vec<Facet>,
    pub pointed: bool,
}

pub(crate) fn matrix_of(ambient: usize, rows: &[ZVec]) -> ZMat {
    ZMat::from_rows(ambient, rows.to_vec()).expect("vectors share the ambient rank")
}

fn subset_rank(ambient: usize, generators: &[ZVec], idx: &[usize]) -> usize {
    let rows: Vec<ZVec> = idx.iter().map(|&i| generators[i].clone()).collect();
    rank(&matrix_of(ambient, &rows))
}

/// Rank of a set of covectors restricted to the span `L` (rows of `span`).
fn restricted_rank(ambient: usize, covectors: &[ZVec], span: &ZMat) -> usize {
    let m = matrix_of(ambient, covectors);
    rank(&m.mul(&span.transpose()).expect("shapes agree"))
}

pub(crate) fn analyze(ambient: usize, generators: &[ZVec]) -> ConeGeometry {
    let span = row_lattice_basis(&matrix_of(ambient, generators));
    let dim = span.rows();
    if dim == 0 {
        return ConeGeometry { span, dim, facets: Vec::new(), pointed: true };
    }
    let span_t = span.transpose();
    let mut seen = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in (0..generators.len()).combinations(dim - 1) {
        if subset_rank(ambient, generators, &subset) != dim - 1 {
            continue;
        }
        let rows: Vec<ZVec> = subset.iter().map(|&i| generators[i].clone()).collect();
        let restricted = matrix_of(ambient, &rows).mul(&span_t).expect("shapes agree");
        let Some(coeffs) = kernel_basis(&restricted).into_iter().next() else {
            continue;
        };
        let raw: ZVec = (0..ambient)
            .map(|j| {
                coeffs
                    .iter()
                    .enumerate()
                    .fold(Int::zero(), |acc, (i, c)| acc + c * &span[(i, j)])
            })
            .collect();
        let Ok(mut normal) = primitive(&raw) else { continue };
        let values: Vec<Int> = generators.iter().map(|g| dot(&normal, g)).collect();
        let nonneg = values.iter().all(|v| !v.is_negative());
        let nonpos = values.iter().all(|v| !v.is_positive());
        if !(nonneg || nonpos) {
            continue;
        }
        if !nonneg {
            normal = normal.into_iter().map(|x| -x).collect();
        }
        let incidence: Vec<usize> = (0..generators.len()).filter(|&i| values[i].is_zero()).collect();
        if incidence.len() == generators.len() {
            continue;
        }
        if seen.insert(incidence.clone()) {
            facets.push(Facet { normal, incidence });
        }
    }
    let normals: Vec<ZVec> = facets.iter().map(|f| f.normal.clone()).collect();
    let pointed = !normals.is_empty() && restricted_rank(ambient, &normals, &span) == dim;
    ConeGeometry { span, dim, facets, pointed }
}

/// Indices of the generators that span extreme rays of a pointed cone.
pub(crate) fn extreme_indices(ambient: usize, generators: &[ZVec], geo: &ConeGeometry) -> Vec<usize> {
    (0..generators.len())
        .filter(|&g| {
            let normals: Vec<ZVec> = geo
                .facets
                .iter()
                .filter(|f| f.incidence.contains(&g))
                .map(|f| f.normal.clone())
                .collect();
            restricted_rank(ambient, &normals, &geo.span) + 1 == geo.dim
        })
        .collect()
}

/// Generator index sets of all faces, including the whole cone and the apex.
pub(crate) fn face_sets(ambient: usize, generators: &[ZVec], geo: &ConeGeometry) -> Vec<Vec<usize>> {
    let all: Vec<usize> = (0..generators.len()).collect();
    let mut out = BTreeSet::new();
    out.insert(all.clone());
    let mut level = vec![(all, geo.dim)];
    while !level.is_empty() {
        let mut next = BTreeSet::new();
        for (face, d) in &level {
            if *d == 0 {
                continue;
            }
            for f in &geo.facets {
                let meet: Vec<usize> = face.iter().copied().filter(|i| f.incidence.contains(i)).collect();
                if subset_rank(ambient, generators, &meet) + 1 == *d {
                    next.insert(meet);
                }
            }
        }
        level = next
            .into_iter()
            .filter(|s| out.insert(s.clone()))
            .map(|s| {
                let d = subset_rank(ambient, generators, &s);
                (s, d)
            })
            .collect();
    }
    out.into_iter().collect()
}

/// Extreme rays of the pointed cone `{x : eq·x = 0, ineq·x >= 0}`.
///
/// Every extreme ray is cut out by the equalities plus a set of tight
/// inequalities of total rank `ambient - 1`; all such subsets are scanned.
pub(crate) fn rays_from_inequalities(ambient: usize, eqs: &[ZVec], ineqs: &[ZVec]) -> Vec<ZVec> {
    let eq_rank = rank(&matrix_of(ambient, eqs));
    if eq_rank >= ambient {
        return Vec::new();
    }
    let need = ambient - 1 - eq_rank;
    let mut found = BTreeSet::new();
    for subset in (0..ineqs.len()).combinations(need) {
        let mut rows = eqs.to_vec();
        rows.extend(subset.iter().map(|&i| ineqs[i].clone()));
        let m = matrix_of(ambient, &rows);
        let kernel = kernel_basis(&m);
        if kernel.len() != 1 {
            continue;
        }
        let Ok(dir) = primitive(&kernel[0]) else { continue };
        for candidate in [dir.clone(), dir.iter().map(|x| -x).collect::<ZVec>()] {
            if ineqs.iter().all(|u| !dot(u, &candidate).is_negative()) {
                found.insert(candidate);
            }
        }
    }
    found.into_iter().collect()
}

/// A strongly convex rational polyhedral cone, stored by its primitive
/// extreme ray generators in sorted order.
#[derive(Clone, Debug)]
pub struct Cone {
    ambient_rank: usize,
    generators: Vec<ZVec>,
    dim: usize,
    span: ZMat,
    facets: Vec<Facet>,
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.generators == other.generators
    }
}

impl Eq for Cone {}

impl std::hash::Hash for Cone {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.generators.hash(state);
    }
}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.dim, &self.generators).cmp(&(other.dim, &other.generators))
    }
}

pub(crate) fn normalize_generators(ambient: usize, raw: &[ZVec]) -> Result<Vec<ZVec>> {
    let mut set = BTreeSet::new();
    for g in raw {
        if g.len() != ambient {
            return Err(Error::AmbientMismatch(g.len(), ambient));
        }
        if g.iter().all(Zero::is_zero) {
            continue;
        }
        set.insert(primitive(g)?);
    }
    Ok(set.into_iter().collect())
}

impl Cone {
    /// Normalizes the generators (primitive, deduplicated, redundant ones
    /// dropped). Zero vectors are ignored.
    pub fn new(ambient_rank: usize, generators: &[ZVec]) -> Result<Self> {
        let gens = normalize_generators(ambient_rank, generators)?;
        let geo = analyze(ambient_rank, &gens);
        if !geo.pointed {
            return Err(Error::InvalidPolyhedron(format!(
                "cone generated by {} contains a line",
                fmt_vectors(&gens)
            )));
        }
        let keep = extreme_indices(ambient_rank, &gens, &geo);
        let extreme: Vec<ZVec> = keep.into_iter().map(|i| gens[i].clone()).collect();
        Ok(Self::from_extreme(ambient_rank, extreme))
    }

    /// Generators already known to be the primitive extreme rays.
    pub(crate) fn from_extreme(ambient_rank: usize, mut generators: Vec<ZVec>) -> Self {
        generators.sort();
        let geo = analyze(ambient_rank, &generators);
        Cone { ambient_rank, generators, dim: geo.dim, span: geo.span, facets: geo.facets }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Self::from_extreme(ambient_rank, Vec::new())
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[ZVec] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Hermite basis of the linear span.
    pub fn span(&self) -> &ZMat {
        &self.span
    }

    pub fn generator_matrix(&self) -> ZMat {
        matrix_of(self.ambient_rank, &self.generators)
    }

    pub fn contains(&self, x: &QVec) -> bool {
        if x.len() != self.ambient_rank {
            return false;
        }
        let xi = clear_vector_denominators(x);
        in_row_space(&self.span, &xi).unwrap_or(false)
            && self.facets.iter().all(|f| !dot(&f.normal, &xi).is_negative())
    }

    pub fn contains_integral(&self, x: &ZVec) -> bool {
        x.len() == self.ambient_rank
            && in_row_space(&self.span, x).unwrap_or(false)
            && self.facets.iter().all(|f| !dot(&f.normal, x).is_negative())
    }

    /// All faces, as cones, in canonical order.
    pub fn faces(&self) -> Vec<Cone> {
        let geo = ConeGeometry {
            span: self.span.clone(),
            dim: self.dim,
            facets: self.facets.clone(),
            pointed: true,
        };
        let mut out: Vec<Cone> = face_sets(self.ambient_rank, &self.generators, &geo)
            .into_iter()
            .map(|s| {
                let gens = s.iter().map(|&i| self.generators[i].clone()).collect();
                Cone::from_extreme(self.ambient_rank, gens)
            })
            .collect();
        out.sort();
        out
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        self.ambient_rank == other.ambient_rank && other.faces().contains(self)
    }

    /// Equalities of the span and inward facet normals: an H-description.
    pub fn halfspaces(&self) -> (Vec<ZVec>, Vec<ZVec>) {
        let eqs = integer_kernel(&self.span).to_rows();
        let ineqs = self.facets.iter().map(|f| f.normal.clone()).collect();
        (eqs, ineqs)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::AmbientMismatch(self.ambient_rank, other.ambient_rank));
        }
        let (mut eqs, mut ineqs) = self.halfspaces();
        let (e2, i2) = other.halfspaces();
        eqs.extend(e2);
        ineqs.extend(i2);
        let rays = rays_from_inequalities(self.ambient_rank, &eqs, &ineqs);
        Cone::new(self.ambient_rank, &rays)
    }

    /// Whether the generators are part of a lattice basis: as many
    /// generators as the dimension, all invariant factors equal to one.
    pub fn is_unimodular(&self) -> bool {
        if self.generators.len() != self.dim {
            return false;
        }
        crate::exactalg::invariant_factors(&self.generator_matrix())
            .iter()
            .all(|d| d == &Int::from(1))
    }
}

pub(crate) fn fmt_vector<T: fmt::Display>(v: &[T]) -> String {
    format!("({})", v.iter().map(|x| x.to_string()).join(","))
}

pub(crate) fn fmt_vectors<T: fmt::Display>(vs: &[Vec<T>]) -> String {
    format!("{{{}}}", vs.iter().map(|v| fmt_vector(v)).join(", "))
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            write!(f, "cone{{0}}")
        } else {
            write!(f, "cone{}", fmt_vectors(&self.generators))
        }
    }
}
