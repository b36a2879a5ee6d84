use num_traits::Zero;

use super::*;
use crate::{qvec, rat, zmat, zvec, ZQuotient, ZVec};

fn poly(vs: &[QVec], rays: &[&[i64]]) -> Polyhedron {
    let rays: Vec<ZVec> = rays.iter().map(|r| zvec(r)).collect();
    Polyhedron::new(vs[0].len(), vs, &rays).unwrap()
}

fn cone(gens: &[&[i64]]) -> Cone {
    let n = gens[0].len();
    Cone::new(n, &gens.iter().map(|g| zvec(g)).collect::<Vec<_>>()).unwrap()
}

fn all_fixtures() -> Vec<Fixture> {
    ["p1:1", "p1:2", "p1:3", "p1:5", "p1-half", "p2-model", "blp2-model", "canonical:p1", "canonical:p2", "canonical:blp2", "projective:3"]
        .iter()
        .map(|n| fixture(n).unwrap())
        .collect()
}

#[test]
fn build_examples() {
    assert_eq!(p1(3).unwrap().0.skeleton_sizes(), vec![3, 4]);
    assert_eq!(blp2_model().unwrap().0.skeleton_sizes(), vec![3, 10, 8]);

    let sq = |x: i64| poly(&[qvec(&[x, 0]), qvec(&[x + 2, 0]), qvec(&[x, 2]), qvec(&[x + 2, 2])], &[]);
    let shifted = poly(&[qvec(&[1, 0]), qvec(&[3, 0]), qvec(&[1, 2]), qvec(&[3, 2])], &[]);
    match build_complex(2, &[sq(0), shifted.clone()]) {
        Err(Error::ComplexAxiom { first, second }) => {
            assert!(first.contains("(0,0)") || second.contains("(0,0)"));
            assert!(first.contains("(3,2)") || second.contains("(3,2)"));
        }
        other => panic!("expected an axiom violation, got {other:?}"),
    }
    // offsets by a half are caught the same way
    let half = Polyhedron::new(2, &[vec![rat(1, 2), rat(0, 1)], vec![rat(3, 2), rat(0, 1)], vec![rat(1, 2), rat(1, 1)], vec![rat(3, 2), rat(1, 1)]], &[]).unwrap();
    let unit = poly(&[qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[0, 1]), qvec(&[1, 1])], &[]);
    assert!(matches!(build_complex(2, &[unit, half]), Err(Error::ComplexAxiom { .. })));

    let mixed = build_complex(2, &[poly(&[qvec(&[0, 0])], &[]), poly(&[qvec(&[0])], &[])]);
    assert!(matches!(mixed, Err(Error::AmbientMismatch(..))));
}

#[test]
fn completeness_examples() {
    for r in 1..=5 {
        assert!(p1(r).unwrap().0.is_complete());
    }
    let quadrant = build_complex(2, &[poly(&[qvec(&[0, 0])], &[&[1, 0], &[0, 1]])]).unwrap();
    assert!(!quadrant.is_complete());
    assert!(quadrant.completeness_audit().failure.is_some());
    assert!(p2_model().unwrap().0.is_complete());

    // (a)-(c) hold for a half line plus a segment only if nothing is missing
    let gap = build_complex(1, &[poly(&[qvec(&[0])], &[&[-1]]), poly(&[qvec(&[0]), qvec(&[1])], &[])]).unwrap();
    assert!(!gap.is_complete());
    assert!(matches!(recession_fan(&gap), Err(Error::NotComplete)));
    assert!(matches!(cone_complex(&gap), Err(Error::NotComplete)));
}

#[test]
fn audit_is_seeded_and_sized() {
    let c = blp2_model().unwrap().0;
    let audit = c.completeness_audit();
    assert_eq!(audit.seed, DEFAULT_AUDIT_SEED);
    assert!(audit.samples >= 10 * c.len());
    let other = c.with_audit_seed(7);
    assert!(other.is_complete());
    assert_eq!(other.completeness_audit().seed, 7);
}

#[test]
fn regularity_examples() {
    assert!(canonical_model(&projective_fan(2).unwrap()).unwrap().is_regular());
    let two = build_complex(
        1,
        &[
            poly(&[qvec(&[0])], &[&[-1]]),
            Polyhedron::new(1, &[qvec(&[0]), vec![rat(1, 2)]], &[]).unwrap(),
            Polyhedron::new(1, &[vec![rat(1, 2)]], &[zvec(&[1])]).unwrap(),
        ],
    )
    .unwrap();
    assert!(two.is_complete());
    assert!(!two.is_regular());
    assert!(blp2_model().unwrap().0.is_regular());
    assert!(p1_half().unwrap().0.is_regular());
}

#[test]
fn recession_examples() {
    let fan = recession_fan(&p1(4).unwrap().0).unwrap();
    assert_eq!(fan.counts_by_dim(), vec![1, 2]);
    let (c, labels) = blp2_model().unwrap();
    let fan = recession_fan(&c).unwrap();
    let mut rays: Vec<ZVec> = fan.skeleton(1).iter().map(|&i| fan.cone(i).generators()[0].clone()).collect();
    rays.sort();
    let mut expected = vec![zvec(&[0, 1]), zvec(&[-1, -1]), zvec(&[0, -1]), zvec(&[1, 0])];
    expected.sort();
    assert_eq!(rays, expected);
    assert!(fan.is_complete());
    for l in ["τ1", "τ2", "τ3", "τ4", "σ12", "σ23", "σ34", "σ14"] {
        assert!(fan.index_of(labels.find_cone(l).unwrap()).is_some(), "{l}");
    }
    let p2 = projective_fan(2).unwrap();
    let again = recession_fan(p2.complex()).unwrap();
    assert_eq!(again.cones(), p2.cones());
}

#[test]
fn cone_complex_examples() {
    let cc = cone_complex(&p1(1).unwrap().0).unwrap();
    let expected = vec![
        Cone::zero(2),
        cone(&[&[0, 1]]),
        cone(&[&[1, 0]]),
        cone(&[&[-1, 0]]),
        cone(&[&[0, 1], &[1, 0]]),
        cone(&[&[0, 1], &[-1, 0]]),
    ];
    let mut got = cc.cones().to_vec();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
    for r in 1..=5 {
        let counts = cone_complex(&p1(r).unwrap().0).unwrap().counts_by_dim();
        assert_eq!(counts, vec![1, r + 2, r + 1]);
    }
    assert_eq!(cone_complex(&blp2_model().unwrap().0).unwrap().counts_by_dim(), vec![1, 7, 14, 8]);
    assert_eq!(cone_complex(&p2_model().unwrap().0).unwrap().counts_by_dim(), vec![1, 5, 9, 5]);
}

#[test]
fn slices_of_the_cone_complex() {
    for f in all_fixtures() {
        let c = &f.complex;
        let n = c.ambient_rank();
        let cc = cone_complex(c).unwrap();
        let mut top = Vec::new();
        let mut bottom = Vec::new();
        for k in cc.cones() {
            match Polyhedron::from_homogeneous(n, k.generators()).unwrap() {
                Some(p) => top.push(p),
                None => {
                    let gens: Vec<ZVec> = k.generators().iter().map(|g| g[..n].to_vec()).collect();
                    bottom.push(Cone::new(n, &gens).unwrap());
                }
            }
        }
        top.sort();
        assert_eq!(top, c.cells(), "{}", f.name);
        bottom.sort();
        assert_eq!(bottom, recession_fan(c).unwrap().cones(), "{}", f.name);
    }
}

#[test]
fn skeleton_examples() {
    let c = p1(3).unwrap().0;
    assert_eq!(skeleton(&c, 0).len(), 3);
    assert!(skeleton(&c, -1).is_empty());
    assert!(skeleton(&c, 7).is_empty());
    assert_eq!(blp2_model().unwrap().0.skeleton(1).len(), 10);
}

#[test]
fn star_complex_examples() {
    let c = p2_model().unwrap().0;
    let s = star_complex(&c, &Cone::zero(2)).unwrap();
    assert_eq!(s.complex.cells(), c.cells());

    let s = star_complex(&c, &cone(&[&[1, 0]])).unwrap();
    let vs: Vec<QVec> = s.complex.skeleton(0).iter().map(|&i| s.complex.cell(i).vertices()[0].clone()).collect();
    assert_eq!(vs, vec![qvec(&[0]), qvec(&[1])]);
    assert!(s.complex.is_complete() && s.complex.is_regular());

    let (p, labels) = p1(4).unwrap();
    let s = star_complex(&p, labels.find_cone("τ1").unwrap()).unwrap();
    assert_eq!(s.complex.ambient_rank(), 0);
    assert_eq!(s.complex.len(), 1);

    assert!(matches!(star_complex(&c, &cone(&[&[1, 1]])), Err(Error::UnknownCone(_))));
}

#[test]
fn star_fan_examples() {
    let c = blp2_model().unwrap().0;
    let top = c.cell(c.maximal_cells()[0]).clone();
    let s = star_fan(&c, &top).unwrap();
    assert_eq!(s.fan.ambient_rank(), 0);
    assert_eq!(s.fan.cones(), &[Cone::zero(0)]);

    let p = p1(3).unwrap().0;
    let s = star_fan(&p, &Polyhedron::point(qvec(&[1]))).unwrap();
    assert_eq!(s.fan.counts_by_dim(), vec![1, 2]);
    assert!(s.fan.is_complete());

    let (q, labels) = p2_model().unwrap();
    let s = star_fan(&q, labels.find_cell("v2").unwrap()).unwrap();
    assert_eq!(s.fan.counts_by_dim(), vec![1, 3, 3]);
    assert!(s.fan.is_complete());
    let s = star_fan(&q, labels.find_cell("v1").unwrap()).unwrap();
    assert_eq!(s.fan.counts_by_dim(), vec![1, 4, 4]);

    assert!(matches!(star_fan(&q, &Polyhedron::point(qvec(&[5, 5]))), Err(Error::UnknownCell(_))));
}

#[test]
fn normal_vector_examples() {
    assert_eq!(normal_vector(&Cone::zero(2), &cone(&[&[1, 2]])).unwrap(), zvec(&[1, 2]));
    assert_eq!(normal_vector(&cone(&[&[1, 0]]), &cone(&[&[1, 0], &[0, 1]])).unwrap(), zvec(&[1]));
    let labels = blp2_model().unwrap().1;
    let (t4, s34) = (labels.find_cone("τ4").unwrap(), labels.find_cone("σ34").unwrap());
    let q = ZQuotient::new(2, &zmat(&[&[1, 0]])).unwrap();
    assert_eq!(normal_vector(t4, s34).unwrap(), q.project(&zvec(&[0, -1])));
    assert!(matches!(normal_vector(&Cone::zero(2), &cone(&[&[1, 0], &[0, 1]])), Err(Error::DimensionMismatch(_))));
}

#[test]
fn vertex_image_examples() {
    let v = Polyhedron::point(qvec(&[2, 3]));
    assert_eq!(vertex_image(&v, &Cone::zero(2)).unwrap(), qvec(&[2, 3]));
    let r1 = poly(&[qvec(&[0, 1])], &[&[1, 0]]);
    assert_eq!(vertex_image(&r1, &cone(&[&[1, 0]])).unwrap(), qvec(&[1]));
    let seg = poly(&[qvec(&[0, 0]), qvec(&[0, 1])], &[]);
    assert!(vertex_image(&seg, &Cone::zero(2)).is_err());
    assert!(vertex_image(&r1, &cone(&[&[0, 1]])).is_err());
}

#[test]
fn edge_normal_examples() {
    for i in 1..3i64 {
        let v = Polyhedron::point(qvec(&[i]));
        let right = poly(&[qvec(&[i]), qvec(&[i + 1])], &[]);
        let left = poly(&[qvec(&[i - 1]), qvec(&[i])], &[]);
        assert_eq!(edge_normal(&v, &right).unwrap(), zvec(&[1]));
        assert_eq!(edge_normal(&v, &left).unwrap(), zvec(&[-1]));
    }
    let labels = p2_model().unwrap().1;
    let (v2, gamma) = (labels.find_cell("v2").unwrap(), labels.find_cell("γ").unwrap());
    assert_eq!(edge_normal(v2, gamma).unwrap(), zvec(&[0, 1]));
    assert!(matches!(edge_normal(gamma, gamma), Err(Error::DimensionMismatch(_))));
}

#[test]
fn fixture_examples() {
    let f = fixture("p1:3").unwrap();
    assert!(f.complex.is_complete() && f.complex.is_regular());
    assert_eq!(f.complex.skeleton(0).len(), 3);
    let f = fixture("blp2-model").unwrap();
    assert!(f.complex.is_complete() && f.complex.is_regular());
    assert_eq!(recession_fan(&f.complex).unwrap().cones(), blp2_fan().unwrap().cones());
    assert_eq!(fixture("canonical:p1").unwrap().complex, p1(1).unwrap().0);
    assert_eq!(fixture("projective:2").unwrap().complex, fixture("canonical:p2").unwrap().complex);
    let half = fixture("p1-half").unwrap();
    let vs: Vec<QVec> = half.complex.skeleton(0).iter().map(|&i| half.complex.cell(i).vertices()[0].clone()).collect();
    assert_eq!(vs, vec![qvec(&[0]), vec![rat(1, 2)], qvec(&[1])]);
    assert_eq!(fixture("p2-model").unwrap().complex.skeleton_sizes(), vec![2, 6, 5]);
    assert!(matches!(fixture("nope"), Err(Error::UnknownFixture(_))));
    assert!(matches!(fixture("p1:0"), Err(Error::InvalidFixtureParams(_))));
    assert!(matches!(fixture("p1:x"), Err(Error::InvalidFixtureParams(_))));
    assert!(matches!(fixture("canonical:q3"), Err(Error::InvalidFixtureParams(_))));
}

#[test]
fn rebuild_is_idempotent() {
    for f in all_fixtures() {
        let again = build_complex(f.complex.ambient_rank(), &f.complex.maximal_polyhedra()).unwrap();
        assert_eq!(again, f.complex, "{}", f.name);
    }
}

#[test]
fn stars_of_fixtures_are_complete_and_regular() {
    for f in all_fixtures() {
        let c = &f.complex;
        let fan = recession_fan(c).unwrap();
        for sigma in fan.cones() {
            let s = star_complex(c, sigma).unwrap();
            assert!(s.complex.is_complete() && s.complex.is_regular(), "{}: {sigma}", f.name);
            assert_eq!(s.complex.ambient_rank() + sigma.dim(), c.ambient_rank());
        }
        for cell in c.cells() {
            let s = star_fan(c, cell).unwrap();
            assert!(s.fan.is_complete(), "{}: {cell}", f.name);
        }
    }
}

#[test]
fn orbit_lattice_ranks() {
    for f in all_fixtures() {
        let model = ToricModel::new(&f.complex, false).unwrap();
        let n = model.rank();
        for (i, sigma) in model.fan().cones().iter().enumerate() {
            assert_eq!(model.lattices().cone(i).quotient_rank + sigma.dim(), n);
        }
        for (i, cell) in f.complex.cells().iter().enumerate() {
            assert_eq!(model.lattices().cell(i).quotient_rank + cell.dim(), n);
        }
        assert_eq!(model.full_rank_star_count(), f.complex.skeleton(0).len());
    }
}

#[test]
fn reducedness() {
    for f in all_fixtures() {
        assert_eq!(f.complex.is_reduced(), f.name != "p1-half", "{}", f.name);
    }
}

#[test]
fn unimodular_changes_preserve_structure() {
    let gs = [zmat(&[&[1, 1], &[0, 1]]), zmat(&[&[0, 1], &[1, 0]]), zmat(&[&[2, 1], &[1, 1]]), zmat(&[&[1, 0], &[-3, 1]])];
    for name in ["p2-model", "blp2-model", "canonical:p2"] {
        let c = fixture(name).unwrap().complex;
        for g in &gs {
            let t = c.transform(g).unwrap();
            assert_eq!(t.skeleton_sizes(), c.skeleton_sizes());
            assert_eq!(t.is_complete(), c.is_complete());
            assert_eq!(t.is_regular(), c.is_regular());
            assert_eq!(t.is_reduced(), c.is_reduced());
        }
    }
    let c = p1(3).unwrap().0;
    let t = c.transform(&zmat(&[&[-1]])).unwrap();
    assert_eq!(t.skeleton_sizes(), c.skeleton_sizes());
}

#[test]
fn forced_models() {
    let two = build_complex(
        1,
        &[
            poly(&[qvec(&[0])], &[&[-1]]),
            Polyhedron::new(1, &[qvec(&[0]), vec![rat(1, 2)]], &[]).unwrap(),
            Polyhedron::new(1, &[vec![rat(1, 2)]], &[zvec(&[1])]).unwrap(),
        ],
    )
    .unwrap();
    assert!(matches!(ToricModel::new(&two, false), Err(Error::NotRegular)));
    let m = ToricModel::new(&two, true).unwrap();
    assert!(m.is_forced());
    let quadrant = build_complex(2, &[poly(&[qvec(&[0, 0])], &[&[1, 0], &[0, 1]])]).unwrap();
    assert!(matches!(ToricModel::new(&quadrant, true), Err(Error::NotComplete)));
    assert!(ToricModel::from_fan(&projective_fan(2).unwrap(), false).is_ok());
    let v = m.vertex_image(m.complex().skeleton(0)[1]).unwrap();
    assert!(!v[0].is_zero());
}
