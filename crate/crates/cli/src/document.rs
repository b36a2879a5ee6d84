//! JSON input documents.
//!
//! A complex is given as
//!
//! ```json
//! {
//!   "lattice_rank": 1,
//!   "vertices": [["0"], ["1/2"], [1]],
//!   "rays": [[-1], [1]],
//!   "maximal_cells": [{"vertices": [0], "rays": [0]}, {"vertices": [0, 1], "rays": []}]
//! }
//! ```
//!
//! Vertex coordinates are integers or strings `"p/q"`; ray entries are
//! integers. Cells reference vertices and rays by index.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use toric_chow::complex::{PolyhedralComplex, ToricModel, DEFAULT_AUDIT_SEED};
use toric_chow::divisors::PiecewiseAffine;
use toric_chow::polyhedron::Polyhedron;
use toric_chow::{Int, QVec, Rat, ZVec};

/// A parse or validation failure, with the location in the document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocumentError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.location.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.location, self.message)
        }
    }
}

impl std::error::Error for DocumentError {}

fn err(location: impl Into<String>, message: impl fmt::Display) -> DocumentError {
    DocumentError { location: location.into(), message: message.to_string() }
}

/// An exact number written either as a JSON integer or as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Integer(i64),
    Text(String),
}

impl Number {
    pub fn from_rat(x: &Rat) -> Self {
        Number::Text(x.to_string())
    }

    pub fn to_rat(&self, location: &str) -> Result<Rat, DocumentError> {
        match self {
            Number::Integer(i) => Ok(Rat::from_integer(Int::from(*i))),
            Number::Text(s) => parse_rat(s).ok_or_else(|| err(location, format!("malformed rational {s:?}"))),
        }
    }
}

/// Parses `"p"`, `"p/q"` with `q ≠ 0`, surrounding whitespace allowed.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        None => Int::from_str(s).ok().map(Rat::from_integer),
        Some((p, q)) => {
            let p = Int::from_str(p.trim()).ok()?;
            let q = Int::from_str(q.trim()).ok()?;
            if q == Int::from(0) {
                None
            } else {
                Some(Rat::new(p, q))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub vertices: Vec<usize>,
    #[serde(default)]
    pub rays: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub lattice_rank: usize,
    pub vertices: Vec<Vec<Number>>,
    #[serde(default)]
    pub rays: Vec<Vec<i64>>,
    pub maximal_cells: Vec<CellRecord>,
}

impl ComplexDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    /// The document listing the maximal cells of `c`, vertices and rays in
    /// sorted order.
    pub fn from_complex(c: &PolyhedralComplex) -> Result<Self, DocumentError> {
        let mut vertices: BTreeSet<QVec> = BTreeSet::new();
        let mut rays: BTreeSet<ZVec> = BTreeSet::new();
        let cells: Vec<&Polyhedron> = c.maximal_cells().iter().map(|&i| c.cell(i)).collect();
        for p in &cells {
            vertices.extend(p.vertices().iter().cloned());
            rays.extend(p.rays().iter().cloned());
        }
        let vertices: Vec<QVec> = vertices.into_iter().collect();
        let rays: Vec<ZVec> = rays.into_iter().collect();
        let maximal_cells = cells
            .iter()
            .map(|p| CellRecord {
                vertices: p.vertices().iter().map(|v| vertices.binary_search(v).expect("collected above")).collect(),
                rays: p.rays().iter().map(|r| rays.binary_search(r).expect("collected above")).collect(),
            })
            .collect();
        let rays = rays
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .map(|x| i64::try_from(x).map_err(|_| err(format!("rays[{i}]"), "entry does not fit in 64 bits")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ComplexDocument {
            lattice_rank: c.ambient_rank(),
            vertices: vertices.iter().map(|v| v.iter().map(Number::from_rat).collect()).collect(),
            rays,
            maximal_cells,
        })
    }

    pub fn parse(&self) -> Result<PolyhedralComplex, DocumentError> {
        self.parse_with_seed(DEFAULT_AUDIT_SEED)
    }

    pub fn parse_with_seed(&self, seed: u64) -> Result<PolyhedralComplex, DocumentError> {
        let n = self.lattice_rank;
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.iter().enumerate() {
            if v.len() != n {
                return Err(err(format!("vertices[{i}]"), format!("expected {n} coordinates, got {}", v.len())));
            }
            let coords =
                v.iter().enumerate().map(|(j, x)| x.to_rat(&format!("vertices[{i}][{j}]"))).collect::<Result<QVec, _>>()?;
            vertices.push(coords);
        }
        for (i, r) in self.rays.iter().enumerate() {
            if r.len() != n {
                return Err(err(format!("rays[{i}]"), format!("expected {n} entries, got {}", r.len())));
            }
        }
        if self.maximal_cells.is_empty() {
            return Err(err("maximal_cells", "no cells given"));
        }
        let mut cells = Vec::with_capacity(self.maximal_cells.len());
        for (i, cell) in self.maximal_cells.iter().enumerate() {
            let at = format!("maximal_cells[{i}]");
            if cell.vertices.is_empty() {
                return Err(err(&at, "a cell needs at least one vertex"));
            }
            let mut vs = Vec::new();
            for (j, &v) in cell.vertices.iter().enumerate() {
                let p = vertices.get(v).ok_or_else(|| {
                    err(format!("{at}.vertices[{j}]"), format!("index {v} out of range ({} vertices)", vertices.len()))
                })?;
                vs.push(p.clone());
            }
            let mut rs = Vec::new();
            for (j, &r) in cell.rays.iter().enumerate() {
                let d = self.rays.get(r).ok_or_else(|| {
                    err(format!("{at}.rays[{j}]"), format!("index {r} out of range ({} rays)", self.rays.len()))
                })?;
                rs.push(d.iter().map(|&x| Int::from(x)).collect::<ZVec>());
            }
            cells.push(Polyhedron::new(n, &vs, &rs).map_err(|e| err(&at, e))?);
        }
        PolyhedralComplex::build(n, &cells, seed).map_err(|e| err("maximal_cells", e))
    }
}

/// One affine piece of a piecewise affine function, keyed by cell id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    pub cell: usize,
    pub m: Vec<Number>,
    pub l: Number,
}

/// `{"pieces": [{"cell": 7, "m": ["1/2", 0], "l": 0}, ...]}`, one piece per
/// maximal cell, cell ids as printed by the `orbits` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseDocument {
    pub pieces: Vec<PieceRecord>,
}

impl PiecewiseDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| err(format!("line {} column {}", e.line(), e.column()), e))
    }

    pub fn to_function(&self, model: &ToricModel) -> Result<PiecewiseAffine, DocumentError> {
        let mut map = BTreeMap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let at = format!("pieces[{i}]");
            let m = p.m.iter().enumerate().map(|(j, x)| x.to_rat(&format!("{at}.m[{j}]"))).collect::<Result<QVec, _>>()?;
            let l = p.l.to_rat(&format!("{at}.l"))?;
            if map.insert(p.cell, (m, l)).is_some() {
                return Err(err(at, format!("cell {} listed twice", p.cell)));
            }
        }
        PiecewiseAffine::from_cell_map(model, &map).map_err(|e| err("pieces", e))
    }
}
