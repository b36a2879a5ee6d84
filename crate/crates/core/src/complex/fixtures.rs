//! Built-in complexes: toric models of P¹, P² and the blow-up of P² at a
//! fixed point, and canonical models of fans.

use std::collections::BTreeMap;

use itertools::Itertools;

use super::{build_complex, Fan, PolyhedralComplex};
use crate::error::{Error, Result};
use crate::polyhedron::{Cone, Polyhedron};
use crate::{qvec, rat, zvec, QVec, ZVec};

/// Human-readable names attached to some cells and cones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labels {
    pub cells: BTreeMap<Polyhedron, String>,
    pub cones: BTreeMap<Cone, String>,
}

impl Labels {
    pub fn cell(&self, p: &Polyhedron) -> Option<&str> {
        self.cells.get(p).map(String::as_str)
    }

    pub fn cone(&self, c: &Cone) -> Option<&str> {
        self.cones.get(c).map(String::as_str)
    }

    /// The cell carrying `label`.
    pub fn find_cell(&self, label: &str) -> Option<&Polyhedron> {
        self.cells.iter().find(|(_, l)| l.as_str() == label).map(|(p, _)| p)
    }

    pub fn find_cone(&self, label: &str) -> Option<&Cone> {
        self.cones.iter().find(|(_, l)| l.as_str() == label).map(|(c, _)| c)
    }

    fn add_cell(&mut self, p: Polyhedron, label: &str) {
        self.cells.insert(p, label.to_string());
    }

    fn add_cone(&mut self, c: Cone, label: &str) {
        self.cones.insert(c, label.to_string());
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub complex: PolyhedralComplex,
    pub labels: Labels,
}

pub fn fixture_names() -> &'static [&'static str] {
    &["p1:<r>", "p1-half", "p2-model", "blp2-model", "canonical:<p<n>|blp2>", "projective:<n>"]
}

pub fn fixture(name: &str) -> Result<Fixture> {
    let complex_of = |(complex, labels): (PolyhedralComplex, Labels)| Fixture {
        name: name.to_string(),
        complex,
        labels,
    };
    let parse_count = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .ok()
            .filter(|&r| r >= 1)
            .ok_or_else(|| Error::InvalidFixtureParams(format!("{name}: expected a positive integer, got {s:?}")))
    };
    match name.split_once(':') {
        None => match name {
            "p1-half" => Ok(complex_of(p1_half()?)),
            "p2-model" => Ok(complex_of(p2_model()?)),
            "blp2-model" => Ok(complex_of(blp2_model()?)),
            _ => Err(Error::UnknownFixture(name.to_string())),
        },
        Some(("p1", r)) => Ok(complex_of(p1(parse_count(r)?)?)),
        Some(("projective", n)) => {
            let fan = projective_fan(parse_count(n)?)?;
            Ok(complex_of((canonical_model(&fan)?, Labels::default())))
        }
        Some(("canonical", which)) => {
            let fan = match which {
                "blp2" => blp2_fan()?,
                _ => match which.strip_prefix('p') {
                    Some(n) => projective_fan(parse_count(n)?)?,
                    None => return Err(Error::InvalidFixtureParams(format!("{name}: unknown fan {which:?}"))),
                },
            };
            Ok(complex_of((canonical_model(&fan)?, Labels::default())))
        }
        Some(_) => Err(Error::UnknownFixture(name.to_string())),
    }
}

fn point(xs: &[i64]) -> QVec {
    qvec(xs)
}

fn cell(vertices: &[QVec], rays: &[&[i64]]) -> Result<Polyhedron> {
    let n = vertices[0].len();
    let rays: Vec<ZVec> = rays.iter().map(|r| zvec(r)).collect();
    Polyhedron::new(n, vertices, &rays)
}

fn ray(n: usize, r: &[i64]) -> Result<Cone> {
    Cone::new(n, &[zvec(r)])
}

/// Toric model of P¹ with vertices `0, 1, …, r − 1`.
pub fn p1(r: usize) -> Result<(PolyhedralComplex, Labels)> {
    if r == 0 {
        return Err(Error::InvalidFixtureParams("p1 needs at least one vertex".into()));
    }
    let v = |i: usize| point(&[i as i64]);
    let mut cells = vec![cell(&[v(0)], &[&[-1]])?, cell(&[v(r - 1)], &[&[1]])?];
    for i in 0..r - 1 {
        cells.push(cell(&[v(i), v(i + 1)], &[])?);
    }
    let complex = build_complex(1, &cells)?;
    let mut labels = Labels::default();
    for i in 0..r {
        labels.add_cell(Polyhedron::point(v(i)), &format!("v{}", i + 1));
    }
    labels.add_cone(ray(1, &[-1])?, "τ1");
    labels.add_cone(ray(1, &[1])?, "τ2");
    Ok((complex, labels))
}

/// Vertices `0, 1/2, 1` on the line: complete and regular, not reduced.
pub fn p1_half() -> Result<(PolyhedralComplex, Labels)> {
    let half = vec![rat(1, 2)];
    let cells = vec![
        cell(&[point(&[0])], &[&[-1]])?,
        cell(&[point(&[0]), half.clone()], &[])?,
        cell(&[half.clone(), point(&[1])], &[])?,
        cell(&[point(&[1])], &[&[1]])?,
    ];
    let complex = build_complex(1, &cells)?;
    let mut labels = Labels::default();
    labels.add_cell(Polyhedron::point(point(&[0])), "v1");
    labels.add_cell(Polyhedron::point(half), "v2");
    labels.add_cell(Polyhedron::point(point(&[1])), "v3");
    Ok((complex, labels))
}

/// Toric model of P² with vertices `v1 = (0,1)`, `v2 = (0,0)`.
pub fn p2_model() -> Result<(PolyhedralComplex, Labels)> {
    let v1 = point(&[0, 1]);
    let v2 = point(&[0, 0]);
    let both = [v1.clone(), v2.clone()];
    let cells = vec![
        cell(&both, &[&[1, 0]])?,
        cell(&[v1.clone()], &[&[1, 0], &[0, 1]])?,
        cell(&[v1.clone()], &[&[0, 1], &[-1, -1]])?,
        cell(&both, &[&[-1, -1]])?,
        cell(&[v2.clone()], &[&[-1, -1], &[1, 0]])?,
    ];
    let complex = build_complex(2, &cells)?;
    let mut labels = Labels::default();
    labels.add_cell(Polyhedron::point(v1), "v1");
    labels.add_cell(Polyhedron::point(v2), "v2");
    labels.add_cell(cell(&both, &[])?, "γ");
    labels.add_cone(Cone::new(2, &[zvec(&[1, 0]), zvec(&[0, 1])])?, "σ");
    labels.add_cone(ray(2, &[0, 1])?, "τ");
    Ok((complex, labels))
}

/// Toric model of the blow-up of P² with vertices
/// `ω1 = (0,0)`, `ω2 = (1,0)`, `ω3 = (1,1)`.
pub fn blp2_model() -> Result<(PolyhedralComplex, Labels)> {
    let w1 = point(&[0, 0]);
    let w2 = point(&[1, 0]);
    let w3 = point(&[1, 1]);
    let cells = vec![
        cell(&[w1.clone(), w2.clone(), w3.clone()], &[])?,
        cell(&[w3.clone()], &[&[1, 0], &[0, 1]])?,
        cell(&[w2.clone(), w3.clone()], &[&[1, 0]])?,
        cell(&[w1.clone(), w3.clone()], &[&[0, 1]])?,
        cell(&[w1.clone()], &[&[0, 1], &[-1, -1]])?,
        cell(&[w1.clone()], &[&[-1, -1], &[0, -1]])?,
        cell(&[w1.clone(), w2.clone()], &[&[0, -1]])?,
        cell(&[w2.clone()], &[&[0, -1], &[1, 0]])?,
    ];
    let complex = build_complex(2, &cells)?;
    let mut labels = Labels::default();
    for (i, w) in [&w1, &w2, &w3].into_iter().enumerate() {
        labels.add_cell(Polyhedron::point(w.clone()), &format!("ω{}", i + 1));
    }
    let edges: [(&[&QVec], &[i64]); 10] = [
        (&[&w3], &[1, 0]),
        (&[&w3], &[0, 1]),
        (&[&w1], &[0, 1]),
        (&[&w1], &[-1, -1]),
        (&[&w1], &[0, -1]),
        (&[&w2], &[0, -1]),
        (&[&w2], &[1, 0]),
        (&[&w2, &w3], &[]),
        (&[&w1, &w3], &[]),
        (&[&w1, &w2], &[]),
    ];
    for (i, (vs, r)) in edges.iter().enumerate() {
        let vs: Vec<QVec> = vs.iter().map(|v| (*v).clone()).collect();
        let rays: Vec<&[i64]> = if r.is_empty() { vec![] } else { vec![*r] };
        labels.add_cell(cell(&vs, &rays)?, &format!("γ{}", i + 1));
    }
    label_blp2_fan(&mut labels)?;
    Ok((complex, labels))
}

const BLP2_RAYS: [[i64; 2]; 4] = [[0, 1], [-1, -1], [0, -1], [1, 0]];

fn label_blp2_fan(labels: &mut Labels) -> Result<()> {
    for (i, r) in BLP2_RAYS.iter().enumerate() {
        labels.add_cone(ray(2, r)?, &format!("τ{}", i + 1));
    }
    for (a, b) in [(1, 2), (2, 3), (3, 4), (1, 4)] {
        let c = Cone::new(2, &[zvec(&BLP2_RAYS[a - 1]), zvec(&BLP2_RAYS[b - 1])])?;
        labels.add_cone(c, &format!("σ{a}{b}"));
    }
    Ok(())
}

/// The fan of the blow-up of P² at a fixed point.
pub fn blp2_fan() -> Result<Fan> {
    let cones = [(0, 1), (1, 2), (2, 3), (0, 3)]
        .iter()
        .map(|&(a, b)| Cone::new(2, &[zvec(&BLP2_RAYS[a]), zvec(&BLP2_RAYS[b])]))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(2, &cones)
}

/// The fan of Pⁿ: rays `e1, …, en, −(e1 + … + en)`.
pub fn projective_fan(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::InvalidFixtureParams("projective space needs n >= 1".into()));
    }
    let mut rays: Vec<ZVec> = (0..n)
        .map(|i| (0..n).map(|j| crate::int(i64::from(i == j))).collect())
        .collect();
    rays.push(vec![crate::int(-1); n]);
    let cones = rays
        .iter()
        .cloned()
        .combinations(n)
        .map(|gens| Cone::new(n, &gens))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(n, &cones)
}

/// `Σ` regarded as a polyhedral complex: the canonical model.
pub fn canonical_model(fan: &Fan) -> Result<PolyhedralComplex> {
    build_complex(fan.ambient_rank(), &fan.complex().maximal_polyhedra())
}
