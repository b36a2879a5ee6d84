//! Strongly convex rational polyhedral complexes and fans.

mod fixtures;
mod orbits;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use fixtures::{
    blp2_fan, blp2_model, canonical_model, fixture, fixture_names, p1, p1_half, p2_model,
    projective_fan, Fixture, Labels,
};
pub use orbits::{
    edge_normal, normal_vector, star_complex, star_fan, vertex_image, OrbitLattices, StarComplex,
    StarFan, ToricModel,
};

use crate::error::{Error, Result};
use crate::polyhedron::{Cone, Polyhedron};
use crate::{Int, QVec, Rat, ZMat};

/// Seed of the completeness audit when none is given.
pub const DEFAULT_AUDIT_SEED: u64 = 0x5eed_c0de;

/// Outcome of the completeness certification.
///
/// The combinatorial conditions (pure of full dimension, every codimension-one
/// cell shared by exactly two maximal cells, connected adjacency graph) are
/// necessary but not sufficient in general, so they are backed by a sampling
/// audit: `samples` random rational points, drawn from a ChaCha8 stream seeded
/// with `seed` in a box around the vertices and scaled ray directions, must
/// each lie in some maximal cell. A passing audit is evidence, not proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessAudit {
    pub complete: bool,
    pub samples: usize,
    pub seed: u64,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralComplex {
    ambient_rank: usize,
    cells: Vec<Polyhedron>,
    faces: Vec<Vec<usize>>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    maximal: Vec<usize>,
    audit: CompletenessAudit,
    regular: bool,
}

/// Builds and validates a complex from (at least) its maximal cells.
pub fn build_complex(ambient_rank: usize, maximal_cells: &[Polyhedron]) -> Result<PolyhedralComplex> {
    PolyhedralComplex::build(ambient_rank, maximal_cells, DEFAULT_AUDIT_SEED)
}

impl PolyhedralComplex {
    pub fn build(ambient_rank: usize, cells: &[Polyhedron], seed: u64) -> Result<Self> {
        for c in cells {
            if c.ambient_rank() != ambient_rank {
                return Err(Error::AmbientMismatch(c.ambient_rank(), ambient_rank));
            }
        }
        let input: Vec<Polyhedron> = cells.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        for (i, p) in input.iter().enumerate() {
            for q in &input[i + 1..] {
                if let Some(meet) = p.intersect(q)? {
                    if !(meet.is_face_of(p) && meet.is_face_of(q)) {
                        return Err(Error::ComplexAxiom { first: p.to_string(), second: q.to_string() });
                    }
                }
            }
        }
        let mut closure = BTreeSet::new();
        let mut face_lists = Vec::new();
        for p in &input {
            let fs = p.all_faces();
            closure.extend(fs.iter().cloned());
            face_lists.push(fs);
        }
        let cells: Vec<Polyhedron> = closure.into_iter().collect();
        let index: BTreeMap<&Polyhedron, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut faces: Vec<Option<Vec<usize>>> = vec![None; cells.len()];
        for (p, fs) in input.iter().zip(&face_lists) {
            // faces of a face are the members of fs that it contains as faces
            for f in fs {
                let fi = index[f];
                if faces[fi].is_some() {
                    continue;
                }
                let sub: Vec<usize> = if f == p {
                    fs.iter().map(|g| index[g]).collect()
                } else {
                    f.all_faces().iter().map(|g| index[g]).collect()
                };
                faces[fi] = Some(sub);
            }
        }
        let faces: Vec<Vec<usize>> = faces
            .into_iter()
            .map(|f| {
                let mut f = f.expect("every cell is a face of an input cell");
                f.sort_unstable();
                f
            })
            .collect();
        let mut facets = vec![Vec::new(); cells.len()];
        let mut cofacets = vec![Vec::new(); cells.len()];
        for (i, fs) in faces.iter().enumerate() {
            for &j in fs {
                if cells[j].dim() + 1 == cells[i].dim() {
                    facets[i].push(j);
                    cofacets[j].push(i);
                }
            }
        }
        let maximal = (0..cells.len()).filter(|&i| cofacets[i].is_empty()).collect();
        let regular = cells.iter().all(|c| c.cone_over().is_unimodular());
        let mut complex = PolyhedralComplex {
            ambient_rank,
            cells,
            faces,
            facets,
            cofacets,
            maximal,
            audit: CompletenessAudit { complete: false, samples: 0, seed, failure: None },
            regular,
        };
        complex.audit = complex.certify_completeness(seed);
        Ok(complex)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn cells(&self) -> &[Polyhedron] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Polyhedron {
        &self.cells[i]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, p: &Polyhedron) -> Option<usize> {
        self.cells.binary_search(p).ok()
    }

    /// All faces of cell `i` (itself included), as cell indices.
    pub fn faces_of(&self, i: usize) -> &[usize] {
        &self.faces[i]
    }

    pub fn facets_of(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    pub fn cofacets_of(&self, i: usize) -> &[usize] {
        &self.cofacets[i]
    }

    /// Cells having cell `i` as a face (itself included).
    pub fn cofaces_of(&self, i: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|&j| self.faces[j].binary_search(&i).is_ok()).collect()
    }

    pub fn maximal_cells(&self) -> &[usize] {
        &self.maximal
    }

    pub fn maximal_polyhedra(&self) -> Vec<Polyhedron> {
        self.maximal.iter().map(|&i| self.cells[i].clone()).collect()
    }

    /// Indices of the `k`-dimensional cells in canonical order.
    pub fn skeleton(&self, k: i64) -> Vec<usize> {
        if k < 0 {
            return Vec::new();
        }
        (0..self.cells.len()).filter(|&i| self.cells[i].dim() as i64 == k).collect()
    }

    pub fn skeleton_sizes(&self) -> Vec<usize> {
        let top = self.cells.iter().map(Polyhedron::dim).max().unwrap_or(0);
        (0..=top).map(|d| self.skeleton(d as i64).len()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.audit.complete
    }

    pub fn completeness_audit(&self) -> &CompletenessAudit {
        &self.audit
    }

    /// Every cone of `c(Π)` is generated by part of a lattice basis.
    pub fn is_regular(&self) -> bool {
        self.regular
    }

    /// Every vertex is a lattice point (reduced special fiber).
    pub fn is_reduced(&self) -> bool {
        self.skeleton(0).iter().all(|&i| self.cells[i].has_lattice_vertex())
    }

    pub fn is_conical(&self) -> bool {
        self.cells.iter().all(Polyhedron::is_conical)
    }

    fn certify_completeness(&self, seed: u64) -> CompletenessAudit {
        let fail = |why: String| CompletenessAudit { complete: false, samples: 0, seed, failure: Some(why) };
        let n = self.ambient_rank;
        if let Some(&i) = self.maximal.iter().find(|&&i| self.cells[i].dim() != n) {
            return fail(format!("maximal cell {} has dimension {} < {n}", self.cells[i], self.cells[i].dim()));
        }
        if n > 0 {
            for i in self.skeleton(n as i64 - 1) {
                let k = self.cofacets[i].len();
                if k != 2 {
                    return fail(format!("cell {} is a facet of {k} maximal cells", self.cells[i]));
                }
            }
        }
        if !self.maximal_graph_connected() {
            return fail("maximal cells are not connected through common facets".into());
        }
        let samples = 10 * self.cells.len().max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radius = self.audit_radius();
        for _ in 0..samples {
            let x: QVec = (0..n)
                .map(|_| {
                    let den: i64 = rng.gen_range(1..=16);
                    let num: i64 = rng.gen_range(-radius * den..=radius * den);
                    Rat::new(Int::from(num), Int::from(den))
                })
                .collect();
            if !self.maximal.iter().any(|&i| self.cells[i].contains(&x)) {
                return CompletenessAudit {
                    complete: false,
                    samples,
                    seed,
                    failure: Some(format!("sample point {} lies in no cell", crate::polyhedron::fmt_vector(&x))),
                };
            }
        }
        CompletenessAudit { complete: true, samples, seed, failure: None }
    }

    /// Half-width of the audit box: covers every vertex plus twice the
    /// longest ray direction.
    fn audit_radius(&self) -> i64 {
        let mut v_max = Rat::zero();
        let mut r_max = Int::zero();
        for c in &self.cells {
            for v in c.vertices() {
                for x in v {
                    if x.abs() > v_max {
                        v_max = x.abs();
                    }
                }
            }
            for r in c.rays() {
                for x in r {
                    if x.abs() > r_max {
                        r_max = x.abs();
                    }
                }
            }
        }
        let v = v_max.ceil().to_integer().to_i64().unwrap_or(i64::MAX / 64);
        let r = r_max.to_i64().unwrap_or(i64::MAX / 64);
        v + 2 * r + 1
    }

    fn maximal_graph_connected(&self) -> bool {
        if self.maximal.len() <= 1 {
            return true;
        }
        let n = self.ambient_rank;
        let mut seen = BTreeSet::from([self.maximal[0]]);
        let mut queue = VecDeque::from([self.maximal[0]]);
        while let Some(i) = queue.pop_front() {
            for &f in &self.facets[i] {
                if self.cells[f].dim() + 1 != n {
                    continue;
                }
                for &j in &self.cofacets[f] {
                    if seen.insert(j) {
                        queue.push_back(j);
                    }
                }
            }
        }
        seen.len() == self.maximal.len()
    }

    /// Applies `x ↦ g x` to every cell and rebuilds.
    pub fn transform(&self, g: &ZMat) -> Result<PolyhedralComplex> {
        let cells = self.maximal_polyhedra().iter().map(|c| c.transform(g)).collect::<Result<Vec<_>>>()?;
        PolyhedralComplex::build(self.ambient_rank, &cells, self.audit.seed)
    }

    /// Same cells, completeness re-audited with another seed.
    pub fn with_audit_seed(&self, seed: u64) -> PolyhedralComplex {
        let mut out = self.clone();
        out.audit = out.certify_completeness(seed);
        out
    }
}

pub fn is_complete(c: &PolyhedralComplex) -> bool {
    c.is_complete()
}

pub fn is_regular(c: &PolyhedralComplex) -> bool {
    c.is_regular()
}

pub fn skeleton(c: &PolyhedralComplex, k: i64) -> Vec<usize> {
    c.skeleton(k)
}

/// A complex all of whose cells are cones through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    complex: PolyhedralComplex,
    cones: Vec<Cone>,
}

impl Fan {
    pub fn new(ambient_rank: usize, cones: &[Cone]) -> Result<Fan> {
        let cells: Vec<Polyhedron> = cones.iter().map(Polyhedron::from_cone).collect();
        Self::from_complex(PolyhedralComplex::build(ambient_rank, &cells, DEFAULT_AUDIT_SEED)?)
    }

    pub fn from_complex(complex: PolyhedralComplex) -> Result<Fan> {
        let cones = complex
            .cells()
            .iter()
            .map(|c| {
                c.as_cone()
                    .ok_or_else(|| Error::InvalidPolyhedron(format!("{c} is not a cone through the origin")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Fan { complex, cones })
    }

    pub fn complex(&self) -> &PolyhedralComplex {
        &self.complex
    }

    pub fn into_complex(self) -> PolyhedralComplex {
        self.complex
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cone(&self, i: usize) -> &Cone {
        &self.cones[i]
    }

    pub fn index_of(&self, cone: &Cone) -> Option<usize> {
        self.complex.index_of(&Polyhedron::from_cone(cone))
    }

    pub fn ambient_rank(&self) -> usize {
        self.complex.ambient_rank()
    }

    pub fn skeleton(&self, k: i64) -> Vec<usize> {
        self.complex.skeleton(k)
    }

    pub fn is_complete(&self) -> bool {
        self.complex.is_complete()
    }

    /// Cone counts by dimension, `0..=ambient_rank`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        (0..=self.ambient_rank()).map(|d| self.skeleton(d as i64).len()).collect()
    }
}

/// `rec(Π)`; only defined for complete complexes.
pub fn recession_fan(c: &PolyhedralComplex) -> Result<Fan> {
    if !c.is_complete() {
        return Err(Error::NotComplete);
    }
    if c.cells().iter().all(|p| p.as_cone().is_some()) {
        return Fan::from_complex(c.clone());
    }
    let cones: BTreeSet<Cone> = c.maximal_cells().iter().map(|&i| c.cell(i).recession_cone()).collect();
    Fan::new(c.ambient_rank(), &cones.into_iter().collect::<Vec<_>>())
}

/// `c(Π)` in rank `n + 1`: the cones over all cells together with the
/// recession cones placed at height zero. The latter are the height-zero faces
/// of the cones over maximal cells, so those cones generate everything.
pub fn cone_complex(c: &PolyhedralComplex) -> Result<Fan> {
    if !c.is_complete() {
        return Err(Error::NotComplete);
    }
    let n = c.ambient_rank();
    let cones: BTreeSet<Cone> = c.maximal_cells().iter().map(|&i| c.cell(i).cone_over().clone()).collect();
    Fan::new(n + 1, &cones.into_iter().collect::<Vec<_>>())
}
