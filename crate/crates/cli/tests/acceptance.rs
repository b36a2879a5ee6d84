//! Acceptance suite: one line per criterion, exact comparisons throughout.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_chow::chow::*;
use toric_chow::complex::{cone_complex, fixture, p1_half, recession_fan, PolyhedralComplex, ToricModel};
use toric_chow::divisors::*;
use toric_chow::exactalg::*;
use toric_chow::polyhedron::{Cone, Polyhedron};
use toric_chow::{int, qvec, rat, zvec, Int, QMat, QVec, Rat, ZMat, ZVec};
use toric_chow_cli::run_from;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

const ALL_FIXTURES: [&str; 11] = [
    "p1:1", "p1:2", "p1:3", "p1:5", "p1-half", "p2-model", "blp2-model", "canonical:p1", "canonical:p2", "canonical:p3",
    "canonical:blp2",
];

fn model(name: &str) -> ToricModel {
    ToricModel::new(&fixture(name).unwrap().complex, false).unwrap()
}

fn dims(m: &ToricModel) -> Vec<usize> {
    (0..=m.rank() as i64 + 1).map(|k| chow_dim(m, k).unwrap()).collect()
}

fn ints(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| int(x)).collect()
}

/// Rank over Q by Gaussian elimination on reduced i128 fractions.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    fn norm(a: i128, b: i128) -> (i128, i128) {
        let (mut x, mut y) = (a.abs(), b.abs());
        while y != 0 {
            (x, y) = (y, x % y);
        }
        let g = x.max(1) * b.signum();
        (a / g, b / g)
    }
    let mut m: Vec<Vec<(i128, i128)>> = rows.iter().map(|r| r.iter().map(|&x| (x as i128, 1)).collect()).collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c].0 != 0) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i == rank || m[i][c].0 == 0 {
                continue;
            }
            let f = norm(m[i][c].0 * m[rank][c].1, m[i][c].1 * m[rank][c].0);
            for j in 0..cols {
                let ((a, b), (x, y)) = (m[i][j], m[rank][j]);
                m[i][j] = norm(a * f.1 * y - f.0 * x * b, b * f.1 * y);
            }
        }
        rank += 1;
    }
    rank
}

fn column_of_ray(m: &ToricModel, basis: &CycleBasis, r: &[i64]) -> usize {
    let sigma = m.fan().index_of(&Cone::new(r.len(), &[zvec(r)]).unwrap()).unwrap();
    basis.horizontal_column(sigma).unwrap()
}

fn column_of_vertex(m: &ToricModel, basis: &CycleBasis, v: &[Rat]) -> usize {
    basis.vertical_column(m.complex().index_of(&Polyhedron::point(v.to_vec())).unwrap()).unwrap()
}

fn criterion_1() -> Check {
    for r in [1usize, 2, 3, 5] {
        let m = model(&format!("p1:{r}"));
        ensure!(dims(&m) == vec![0, r, 1], "p1:{r} dims {:?}", dims(&m));
        let special: Vec<usize> = (0..=1).map(|k| special_fiber_dim(&m, k).unwrap()).collect();
        ensure!(special == vec![1, r], "p1:{r} special {special:?}");
        let rel = relations(&m, 1).unwrap();
        let len = rel.basis.len();
        let labels = fixture(&format!("p1:{r}")).unwrap().labels;
        let t1 = rel.basis.horizontal_column(m.fan().index_of(labels.find_cone("τ1").unwrap()).unwrap()).unwrap();
        let t2 = rel.basis.horizontal_column(m.fan().index_of(labels.find_cone("τ2").unwrap()).unwrap()).unwrap();
        let mut sum = vec![Rat::zero(); len];
        let mut tau = vec![Rat::zero(); len];
        tau[t1] = Rat::one();
        tau[t2] = -Rat::one();
        for i in 0..r {
            let c = column_of_vertex(&m, &rel.basis, &qvec(&[i as i64]));
            sum[c] = Rat::one();
            tau[c] = rat(-(i as i64), 1);
        }
        ensure!(in_row_space_q(&rel.matrix, &sum).unwrap(), "p1:{r}: sum of vertices not a relation");
        ensure!(in_row_space_q(&rel.matrix, &tau).unwrap(), "p1:{r}: ray relation not in the row space");
        let p = rank_polynomial(&m).unwrap();
        ensure!(p.coefficients == ints(&[1, r as i64, 0]), "p1:{r} polynomial {p}");
    }
    Ok(())
}

fn criterion_2() -> Check {
    let m = model("blp2-model");
    ensure!(dims(&m) == vec![0, 3, 4, 1], "dims {:?}", dims(&m));
    let r1 = relations(&m, 1).unwrap();
    ensure!(r1.basis.len() == 14 && rank_q(&r1.matrix) == 11, "k=1: {} generators, rank {}", r1.basis.len(), rank_q(&r1.matrix));
    let r2 = relations(&m, 2).unwrap();
    ensure!(r2.basis.len() == 7 && rank_q(&r2.matrix) == 3, "k=2: {} generators, rank {}", r2.basis.len(), rank_q(&r2.matrix));
    let p = rank_polynomial(&m).unwrap();
    ensure!(p.coefficients == ints(&[1, 4, 3, 0]), "polynomial {p}");

    // columns of the printed matrix A, generators τ1..τ4 then the vertices
    // (1,1), (0,0), (1,0)
    let rays: [[i64; 2]; 4] = [[0, 1], [-1, -1], [0, -1], [1, 0]];
    let verts: [[i64; 2]; 3] = [[1, 1], [0, 0], [1, 0]];
    let printed: [[i64; 7]; 3] = [[0, -1, 0, 1, 1, 0, 1], [1, -1, -1, 0, 1, 0, 0], [0, 0, 0, 0, 1, 1, 1]];
    let mut cols: Vec<usize> = rays.iter().map(|r| column_of_ray(&m, &r2.basis, r)).collect();
    cols.extend(verts.iter().map(|v| column_of_vertex(&m, &r2.basis, &qvec(v))));
    let relabeled: Vec<QVec> = printed
        .iter()
        .map(|row| {
            let mut v = vec![Rat::zero(); 7];
            for (j, &c) in cols.iter().enumerate() {
                v[c] = rat(row[j], 1);
            }
            v
        })
        .collect();
    let printed_matrix = QMat::from_rows(7, relabeled.clone()).unwrap();
    for (i, v) in relabeled.iter().enumerate() {
        ensure!(in_row_space_q(&r2.matrix, v).unwrap(), "printed relation {i} not in the computed row space");
    }
    for (i, row) in r2.matrix.row_iter().enumerate() {
        ensure!(in_row_space_q(&printed_matrix, row).unwrap(), "computed relation {i} not spanned by the printed ones");
    }
    Ok(())
}

fn criterion_3() -> Check {
    let m = model("p2-model");
    ensure!(chow_dim(&m, 0).unwrap() == 0 && chow_dim(&m, 3).unwrap() == 1, "end dims {:?}", dims(&m));
    let special: Vec<usize> = (0..=2).map(|k| special_fiber_dim(&m, k).unwrap()).collect();
    ensure!(special == vec![1, 2, 2], "special {special:?}");
    let check = verify_rank_formula(&m).unwrap();
    ensure!(check.ok, "rank formula {} vs {:?}", check.polynomial, check.dims);
    // the ten relations on the nine generators (three rays, γ, five
    // unbounded edges), written out by hand from the vertex and edge data
    let oracle = vec![
        vec![1, 0, -1, 0, 0, 1, 0, 0, 0],
        vec![0, 0, 0, 0, 1, 1, 0, 0, 0],
        vec![1, -1, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1, 0, 0],
        vec![0, -1, 1, 0, 0, 0, 0, -1, 0],
        vec![0, 0, 0, 0, 0, 0, 0, 1, 1],
        vec![0, 0, 0, 0, 0, 1, 0, -1, 0],
        vec![0, 0, 0, 1, 0, 0, -1, 1, 0],
        vec![0, 0, 0, 0, 1, 0, 0, 0, -1],
        vec![0, 0, 0, 1, 0, 0, 0, 0, -1],
    ];
    let expected = 9 - oracle_rank(&oracle);
    ensure!(expected == 2, "oracle gives {expected}");
    ensure!(chow_dim(&m, 1).unwrap() == expected, "chow_dim(1) = {}", chow_dim(&m, 1).unwrap());
    let report = run_from(["toric-chow", "chow", "--fixture", "p2-model"]);
    ensure!(report.stdout.contains("computed dim CH_1 is 2"), "report does not flag the discrepancy");
    Ok(())
}

fn criterion_4() -> Check {
    for name in ALL_FIXTURES {
        let m = model(name);
        let n = m.rank() as i64;
        ensure!(chow_dim(&m, 0).unwrap() == 0, "{name}: CH_0 = {}", chow_dim(&m, 0).unwrap());
        ensure!(chow_dim(&m, n + 1).unwrap() == 1, "{name}: CH_(n+1) = {}", chow_dim(&m, n + 1).unwrap());
        ensure!(ch0_special_incidence(m.complex()) == 1, "{name}: incidence CH_0 = {}", ch0_special_incidence(m.complex()));
        let top = special_fiber_dim(&m, n).unwrap();
        ensure!(top == m.complex().skeleton(0).len(), "{name}: special CH_n = {top}");
        for k in 0..=n + 1 {
            let (g, d, s) = (generic_fiber_dim(&m, k).unwrap(), chow_dim(&m, k).unwrap(), special_fiber_dim(&m, k).unwrap());
            ensure!(g <= d && d <= g + s, "{name} k={k}: {g} <= {d} <= {g} + {s} fails");
        }
    }
    Ok(())
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    rat(rng.gen_range(-12..=12), rng.gen_range(1..=6))
}

fn unit(n: usize, i: usize) -> ZVec {
    (0..n).map(|j| int(i64::from(i == j))).collect()
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for name in ALL_FIXTURES {
        let m = model(name);
        let n = m.rank();
        let len = TWeilDivisor::zero(&m).coefficients().len();
        for trial in 0..100 {
            // a random continuous function: random values on the vertices
            // and rays, extended affinely over each cell, plus a random
            // global affine term
            let coeffs: Vec<Rat> = (0..len).map(|_| random_rat(&mut rng)).collect();
            let base = function_of(&m, &TWeilDivisor::from_coefficients(&m, &coeffs).unwrap()).unwrap();
            let shift_m: QVec = (0..n).map(|_| random_rat(&mut rng)).collect();
            let shift_l = random_rat(&mut rng);
            let pieces: Vec<(QVec, Rat)> = base
                .pieces()
                .iter()
                .map(|(a, b)| (a.iter().zip(&shift_m).map(|(x, y)| x + y).collect(), b + &shift_l))
                .collect();
            let phi = PiecewiseAffine::new(&m, pieces).map_err(|e| format!("{name}: generated function rejected: {e}"))?;
            let d = divisor_of(&m, &phi).unwrap();
            let back = function_of(&m, &d).unwrap();
            ensure!(back == phi, "{name} trial {trial}: function_of(divisor_of(φ)) differs");
            ensure!(divisor_of(&m, &back).unwrap() == d, "{name} trial {trial}: divisor_of(function_of(D)) differs");
        }
        let rel = relations(&m, n as i64).unwrap();
        for (row, origin) in rel.matrix.row_iter().zip(&rel.origins) {
            let f = match origin {
                RowOrigin::Cone { tau, index } if m.fan().cone(*tau).dim() == 0 => MonomialFunction { m: unit(n, *index), l: int(0) },
                RowOrigin::Uniformizer { tau } if m.fan().cone(*tau).dim() == 0 => MonomialFunction { m: vec![int(0); n], l: int(1) },
                other => return Err(format!("{name}: unexpected row {other:?} at k = n")),
            };
            ensure!(principal_divisor(&m, &f).coefficients() == row, "{name}: row {origin:?} is not div of its monomial");
        }
        ensure!(rel.origins.len() == n + 1, "{name}: {} rows at k = n", rel.origins.len());
        for _ in 0..20 {
            let f = MonomialFunction { m: (0..n).map(|_| Int::from(rng.gen_range(-9..=9))).collect(), l: Int::from(rng.gen_range(-9..=9)) };
            let d = principal_divisor(&m, &f);
            ensure!(rationally_equivalent(&m, &d, &TWeilDivisor::zero(&m)).unwrap(), "{name}: {f:?} not equivalent to 0");
            ensure!(in_row_space_q(&rel.matrix, &d.coefficients()).unwrap(), "{name}: {f:?} not in the row space");
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for name in ["canonical:p1", "canonical:p2", "canonical:p3", "canonical:blp2"] {
        let m = model(name);
        for k in 0..=m.rank() as i64 {
            let s = specialize(&m, k);
            ensure!(s.entries == ZMat::identity(s.entries.rows()), "{name} k={k}: not the identity");
            ensure!(s.entries.rows() == s.entries.cols(), "{name} k={k}: not square");
        }
    }
    let (c, _) = p1_half().unwrap();
    let m = ToricModel::new(&c, false).unwrap();
    let s = specialize(&m, 1);
    let order: Vec<Rat> = s.rows.iter().map(|&i| c.cell(i).vertices()[0][0].clone()).collect();
    ensure!(order == vec![rat(0, 1), rat(1, 2), rat(1, 1)], "row order {order:?}");
    let column: Vec<Int> = (0..3).map(|i| s.entries[(i, 0)].clone()).collect();
    ensure!(column == ints(&[1, 2, 1]), "column {column:?}");
    // smallest t in 1..=16 with t · (1/2) integral
    let brute = (1..=16i64).find(|t| (rat(*t, 1) * rat(1, 2)).is_integer()).unwrap();
    ensure!(int(brute) == column[1], "brute force multiplicity {brute}");
    Ok(())
}

fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> ZMat {
    let mut g = ZMat::identity(n);
    if n == 1 {
        if rng.gen_bool(0.5) {
            g[(0, 0)] = int(-1);
        }
        return g;
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let c = int(rng.gen_range(-2..=2));
        for col in 0..n {
            let add = &g[(j, col)] * &c;
            g[(i, col)] += add;
        }
    }
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    for col in 0..n {
        let t = g[(a, col)].clone();
        g[(a, col)] = g[(b, col)].clone();
        g[(b, col)] = t;
    }
    g
}

fn invariants(m: &ToricModel) -> (Vec<usize>, Vec<usize>, Vec<usize>, RankPolynomial) {
    let n = m.rank() as i64;
    (
        dims(m),
        (0..=n + 1).map(|k| generic_fiber_dim(m, k).unwrap()).collect(),
        (0..=n + 1).map(|k| special_fiber_dim(m, k).unwrap()).collect(),
        rank_polynomial(m).unwrap(),
    )
}

fn slice_roundtrip(c: &PolyhedralComplex) -> Check {
    let n = c.ambient_rank();
    let cc = cone_complex(c).map_err(|e| e.to_string())?;
    let mut top = Vec::new();
    let mut bottom = Vec::new();
    for k in cc.cones() {
        match Polyhedron::from_homogeneous(n, k.generators()).map_err(|e| e.to_string())? {
            Some(p) => top.push(p),
            None => {
                let gens: Vec<ZVec> = k.generators().iter().map(|g| g[..n].to_vec()).collect();
                bottom.push(Cone::new(n, &gens).map_err(|e| e.to_string())?);
            }
        }
    }
    top.sort();
    bottom.sort();
    ensure!(top == c.cells(), "height-1 slice differs from the complex");
    let fan = recession_fan(c).map_err(|e| e.to_string())?;
    ensure!(bottom == fan.cones(), "height-0 slice differs from the recession fan");
    Ok(())
}

fn gcd_of_minors(m: &[Vec<i64>], r: usize) -> i64 {
    fn det(m: &[Vec<i64>]) -> i64 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
                (if j % 2 == 0 { 1 } else { -1 }) * m[0][j] * det(&minor)
            })
            .sum()
    }
    let mut g = 0i64;
    for rows in (0..m.len()).combinations(r) {
        for cols in (0..m[0].len()).combinations(r) {
            let sub: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j]).collect()).collect();
            let d = det(&sub).abs();
            let (mut a, mut b) = (g, d);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            g = a;
        }
    }
    g
}

fn exactalg_laws(rng: &mut ChaCha8Rng) -> Check {
    for case in 0..200 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let raw: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let m = ZMat::from_rows(c, raw.iter().map(|row| ints(row)).collect()).unwrap();
        let q = to_rational(&m);
        let rk = rank(&m);
        ensure!(rk == rank(&m.transpose()), "case {case}: rank of transpose");
        ensure!(rk == oracle_rank(&raw), "case {case}: rank disagrees with the oracle");
        let ker = kernel_q(&q);
        ensure!(ker.len() + rk == c, "case {case}: rank-nullity");
        for v in &ker {
            ensure!(is_zero_vector(&q.mul_vec(v).unwrap()), "case {case}: kernel vector not annihilated");
        }
        let ik = integer_kernel(&m);
        ensure!(ik.rows() + rk == c, "case {case}: integer kernel rank");
        for v in ik.row_iter() {
            ensure!(is_zero_vector(&m.mul_vec(v).unwrap()), "case {case}: integer kernel vector");
        }

        let (h, u) = hnf(&m);
        ensure!(is_unimodular(&u) && u.mul(&m).unwrap() == h, "case {case}: hnf transform");
        let mut last: Option<usize> = None;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => last = Some(usize::MAX),
                Some(p) => {
                    ensure!(last.map_or(true, |l| l != usize::MAX && p > l), "case {case}: hnf not echelon");
                    ensure!(h[(i, p)].is_positive(), "case {case}: hnf pivot sign");
                    for k in 0..i {
                        ensure!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)], "case {case}: hnf not reduced above pivot");
                    }
                    last = Some(p);
                }
            }
        }

        let (s, su, sv) = snf(&m);
        ensure!(is_unimodular(&su) && is_unimodular(&sv), "case {case}: snf transforms");
        ensure!(su.mul(&m).unwrap().mul(&sv).unwrap() == s, "case {case}: u m v != s");
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                ensure!(i == j || s[(i, j)].is_zero(), "case {case}: snf not diagonal");
            }
        }
        let f = invariant_factors(&m);
        ensure!(f.len() == rk, "case {case}: invariant factor count");
        for w in f.windows(2) {
            ensure!((&w[1] % &w[0]).is_zero(), "case {case}: divisibility chain");
        }
        let g1 = random_unimodular(r, rng);
        let g2 = random_unimodular(c, rng);
        let moved = g1.mul(&m).unwrap().mul(&g2).unwrap();
        ensure!(invariant_factors(&moved) == f && rank(&moved) == rk, "case {case}: not invariant under GL(Z)");
        if r <= 4 && c <= 4 && rk > 0 {
            let prod: Int = f.iter().product();
            ensure!(prod == int(gcd_of_minors(&raw, rk)), "case {case}: product of factors vs gcd of minors");
        }

        let sat = saturation(&m);
        ensure!(rank(&sat) == rk && sat.rows() == rk, "case {case}: saturation rank");
        for row in m.row_iter() {
            ensure!(in_row_space(&sat, row).unwrap(), "case {case}: rows leave the saturation");
        }
        ensure!(invariant_factors(&sat).iter().all(One::is_one), "case {case}: saturation not saturated");
        ensure!(saturation(&sat) == sat, "case {case}: saturation not idempotent");
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ALL_FIXTURES {
        let c = fixture(name).unwrap().complex;
        let base = invariants(&ToricModel::new(&c, false).unwrap());
        for trial in 0..5 {
            let g = random_unimodular(c.ambient_rank(), &mut rng);
            ensure!(is_unimodular(&g), "generated change is not unimodular");
            let t = c.transform(&g).map_err(|e| e.to_string())?;
            let moved = ToricModel::new(&t, false).map_err(|e| format!("{name} trial {trial}: {e}"))?;
            ensure!(invariants(&moved) == base, "{name} trial {trial}: dimensions moved under {g:?}");
        }
    }
    exactalg_laws(&mut rng).map_err(|e| format!("exactalg: {e}"))?;
    for name in ALL_FIXTURES {
        slice_roundtrip(&fixture(name).unwrap().complex).map_err(|e| format!("{name}: {e}"))?;
    }
    for name in ALL_FIXTURES {
        for fmt in ["text", "json"] {
            let args = ["toric-chow", "chow", "--fixture", name, "--format", fmt];
            let (a, b) = (run_from(args), run_from(args));
            ensure!(a == b, "{name} {fmt}: reports differ between runs");
            ensure!(a.code == 0, "{name} {fmt}: exit code {}", a.code);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 7] = [
        ("P1 family, r in {1, 2, 3, 5}", criterion_1),
        ("blow-up model", criterion_2),
        ("P2 model with the derived CH_1 oracle", criterion_3),
        ("universal postconditions on every fixture", criterion_4),
        ("divisor calculus", criterion_5),
        ("specialization", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut failed = 0;
    for (i, (what, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {what} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {what} ({ms} ms): {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
