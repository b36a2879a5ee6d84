//! Chow groups `CH_k(X/S)` of a complete regular toric scheme, by the
//! invariant-cycle presentation.
//!
//! `k` is the `S`-absolute dimension. With `n` the rank of `N`, the
//! generators of `CH_k` are the horizontal cycles `V(σ)`, `σ ∈ Σ(n−k+1)`,
//! followed by the vertical cycles `V(Λ)`, `Λ ∈ Π(n−k)`, each in canonical
//! order. Relations come from rational functions on invariant subvarieties
//! of dimension `k + 1`:
//!
//! * for `τ ∈ Σ(n−k)` and `(m, ℓ) ∈ M(τ) ⊕ Z`, the row with
//!   `⟨m, v_{σ/τ}⟩` at `V(σ)` for `σ ≻ τ` and `⟨m, v_Λ⟩ + ℓ` at `V(Λ)` for
//!   `rec(Λ) = τ`;
//! * for `Λ ∈ Π(n−k−1)` and `m ∈ M̃(Λ)`, the row with `⟨m, v_{Λ'/Λ}⟩` at
//!   `V(Λ')` for every cofacet `Λ'`.
//!
//! Bases of `M(τ)` and `M̃(Λ)` are the dual bases of the orbit lattices, so
//! a pairing with the `i`-th basis element is the `i`-th quotient coordinate.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::complex::{PolyhedralComplex, ToricModel};
use crate::error::{Error, Result};
use crate::exactalg::{clear_denominators, rank, rank_q, reduced_echelon};
use crate::{Int, QMat, QVec, Rat, ZMat};

fn n_of(model: &ToricModel) -> i64 {
    model.rank() as i64
}

/// Generators of `CH_k(X/S)`, horizontal then vertical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub k: i64,
    /// Indices into the recession fan.
    pub horizontal: Vec<usize>,
    /// Indices into the complex.
    pub vertical: Vec<usize>,
    pub labels: Vec<String>,
}

impl CycleBasis {
    pub fn len(&self) -> usize {
        self.horizontal.len() + self.vertical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column of `V(σ)` for fan cone `sigma`.
    pub fn horizontal_column(&self, sigma: usize) -> Option<usize> {
        self.horizontal.iter().position(|&s| s == sigma)
    }

    /// Column of `V(Λ)` for cell `lambda`.
    pub fn vertical_column(&self, lambda: usize) -> Option<usize> {
        self.vertical.iter().position(|&c| c == lambda).map(|i| i + self.horizontal.len())
    }
}

pub fn horizontal_label(model: &ToricModel, sigma: usize) -> String {
    let gens = model.fan().cone(sigma).generators();
    if gens.is_empty() {
        "H[0]".to_string()
    } else {
        format!("H[{}]", gens.iter().map(|g| format!("({})", g.iter().join(","))).join(""))
    }
}

pub fn vertical_label(lambda: usize) -> String {
    format!("V[{lambda}]")
}

pub fn cycle_basis(model: &ToricModel, k: i64) -> CycleBasis {
    let n = n_of(model);
    let horizontal = model.fan().skeleton(n.saturating_sub(k).saturating_add(1));
    let vertical = model.complex().skeleton(n.saturating_sub(k));
    let labels = horizontal
        .iter()
        .map(|&s| horizontal_label(model, s))
        .chain(vertical.iter().map(|&c| vertical_label(c)))
        .collect();
    CycleBasis { k, horizontal, vertical, labels }
}

/// Where a relation row comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOrigin {
    /// The `index`-th dual basis element of `M(τ)`, `τ` a fan index.
    Cone { tau: usize, index: usize },
    /// The uniformizer `ϖ` on `V(τ)`.
    Uniformizer { tau: usize },
    /// The `index`-th dual basis element of `M̃(Λ)`, `Λ` a cell index.
    Cell { lambda: usize, index: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    pub basis: CycleBasis,
    pub matrix: QMat,
    pub origins: Vec<RowOrigin>,
}

pub fn relations(model: &ToricModel, k: i64) -> Result<Relations> {
    let basis = cycle_basis(model, k);
    let n = n_of(model);
    let fan = model.fan();
    let complex = model.complex();
    let cols = basis.len();
    let mut rows: Vec<QVec> = Vec::new();
    let mut origins = Vec::new();
    for tau in fan.skeleton(n.saturating_sub(k)) {
        let r = model.lattices().cone(tau).quotient_rank;
        let mut block = vec![vec![Rat::zero(); cols]; r + 1];
        for (j, &sigma) in basis.horizontal.iter().enumerate() {
            if fan.complex().faces_of(sigma).binary_search(&tau).is_ok() {
                let v = model.normal_vector(tau, sigma)?;
                for i in 0..r {
                    block[i][j] = Rat::from_integer(v[i].clone());
                }
            }
        }
        for &lambda in &basis.vertical {
            if model.rec(lambda) != tau {
                continue;
            }
            let j = basis.vertical_column(lambda).expect("vertical generator");
            let v = model.vertex_image(lambda)?;
            for i in 0..r {
                block[i][j] = v[i].clone();
            }
            block[r][j] = Rat::one();
        }
        rows.extend(block);
        origins.extend((0..r).map(|index| RowOrigin::Cone { tau, index }));
        origins.push(RowOrigin::Uniformizer { tau });
    }
    for lambda in complex.skeleton(n.saturating_sub(k).saturating_sub(1)) {
        let r = model.lattices().cell(lambda).quotient_rank;
        let mut block = vec![vec![Rat::zero(); cols]; r];
        for &coface in complex.cofacets_of(lambda) {
            let j = basis.vertical_column(coface).expect("cofacets are vertical generators");
            let v = model.edge_normal(lambda, coface)?;
            for i in 0..r {
                block[i][j] = Rat::from_integer(v[i].clone());
            }
        }
        rows.extend(block);
        origins.extend((0..r).map(|index| RowOrigin::Cell { lambda, index }));
    }
    let matrix = QMat::from_rows(cols, rows)?;
    Ok(Relations { basis, matrix, origins })
}

pub fn relation_matrix(model: &ToricModel, k: i64) -> Result<QMat> {
    Ok(relations(model, k)?.matrix)
}

pub fn chow_dim(model: &ToricModel, k: i64) -> Result<usize> {
    let rel = relations(model, k)?;
    Ok(rel.basis.len() - rank_q(&rel.matrix))
}

/// Generators that stay free and how the rest are expressed in them.
///
/// Pivoting rule: reduced row echelon form with the leftmost available
/// pivot in each column scan; the free generators are the non-pivot
/// columns, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowPresentation {
    pub basis: CycleBasis,
    pub relations: QMat,
    pub rank: usize,
    pub dim: usize,
    pub free_generators: Vec<usize>,
    /// `(g, c)`: generator `g` equals `Σ c_i · free_generators[i]`.
    pub expressions: Vec<(usize, QVec)>,
}

impl ChowPresentation {
    /// Whether substituting the expressions annihilates every relation row.
    pub fn expressions_consistent(&self) -> bool {
        let mut value: Vec<QVec> = vec![vec![Rat::zero(); self.free_generators.len()]; self.basis.len()];
        for (i, &f) in self.free_generators.iter().enumerate() {
            value[f][i] = Rat::one();
        }
        for (g, c) in &self.expressions {
            value[*g] = c.clone();
        }
        self.relations.row_iter().all(|row| {
            (0..self.free_generators.len()).all(|i| {
                row.iter().zip(&value).fold(Rat::zero(), |acc, (r, v)| acc + r * &v[i]).is_zero()
            })
        })
    }
}

pub fn presentation(model: &ToricModel, k: i64) -> Result<ChowPresentation> {
    let rel = relations(model, k)?;
    let ech = reduced_echelon(&clear_denominators(&rel.matrix));
    let free = ech.free_columns();
    let scale = Rat::from_integer(ech.scale.clone());
    let expressions = ech
        .pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let coeffs = free.iter().map(|&f| -Rat::from_integer(ech.reduced[(i, f)].clone()) / &scale).collect();
            (p, coeffs)
        })
        .sorted_by_key(|(p, _)| *p)
        .collect();
    Ok(ChowPresentation {
        dim: free.len(),
        rank: ech.rank(),
        free_generators: free,
        expressions,
        relations: rel.matrix,
        basis: rel.basis,
    })
}

/// `dim CH_{k−1}(X_η/K)`: horizontal generators, `m`-rows only.
pub fn generic_fiber_dim(model: &ToricModel, k: i64) -> Result<usize> {
    let rel = relations(model, k)?;
    let rows: Vec<usize> =
        (0..rel.origins.len()).filter(|&i| matches!(rel.origins[i], RowOrigin::Cone { .. })).collect();
    let cols: Vec<usize> = (0..rel.basis.horizontal.len()).collect();
    let block = rel.matrix.select_rows(&rows).select_cols(&cols);
    Ok(cols.len() - rank_q(&block))
}

/// `dim CH_k(X_s/κ)`: vertical generators, rows from `M̃(Λ)` only.
pub fn special_fiber_dim(model: &ToricModel, k: i64) -> Result<usize> {
    let rel = relations(model, k)?;
    let rows: Vec<usize> =
        (0..rel.origins.len()).filter(|&i| matches!(rel.origins[i], RowOrigin::Cell { .. })).collect();
    let h = rel.basis.horizontal.len();
    let cols: Vec<usize> = (h..rel.basis.len()).collect();
    let block = rel.matrix.select_rows(&rows).select_cols(&cols);
    Ok(cols.len() - rank_q(&block))
}

/// Cokernel dimension of `e_Λ ↦ e_{v¹_Λ} − e_{v²_Λ}` from bounded edges to
/// vertices: `CH_0` of the special fiber from the component presentation.
pub fn ch0_special_incidence(c: &PolyhedralComplex) -> usize {
    let vertices = c.skeleton(0);
    let edges: Vec<usize> = c.skeleton(1).into_iter().filter(|&e| c.cell(e).is_bounded()).collect();
    let mut m = ZMat::zeros(edges.len(), vertices.len());
    for (i, &e) in edges.iter().enumerate() {
        let ends = c.facets_of(e);
        let (a, b) = (ends[0], ends[1]);
        let col = |v: usize| vertices.binary_search(&v).expect("endpoints are vertices");
        m[(i, col(a))] = Int::one();
        m[(i, col(b))] = -Int::one();
    }
    vertices.len() - rank(&m)
}

/// `Σ_{σ ∈ c(Π)} z^{dim σ} (1 − z)^{n + 1 − dim σ}`, coefficients `c_0..c_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankPolynomial {
    pub coefficients: Vec<Int>,
}

impl RankPolynomial {
    pub fn from_cone_counts(counts: &[usize]) -> Self {
        let top = counts.len().saturating_sub(1);
        let mut coefficients = vec![Int::zero(); counts.len()];
        for (d, &f) in counts.iter().enumerate() {
            // z^d (1 − z)^{top − d} = Σ_j C(top − d, j) (−1)^j z^{d + j}
            let e = top - d;
            let mut binom = Int::one();
            for j in 0..=e {
                let term = Int::from(f) * &binom;
                if j % 2 == 0 {
                    coefficients[d + j] += term;
                } else {
                    coefficients[d + j] -= term;
                }
                binom = binom * Int::from(e - j) / Int::from(j + 1);
            }
        }
        RankPolynomial { coefficients }
    }

    pub fn eval_at_one(&self) -> Int {
        self.coefficients.iter().sum()
    }
}

impl fmt::Display for RankPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let body = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -Int::one() {
                format!("-{mono}")
            } else {
                format!("{c}{mono}")
            };
            terms.push(body);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => out.push_str(&format!(" - {rest}")),
                None => out.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{out}")
    }
}

pub fn rank_polynomial(model: &ToricModel) -> Result<RankPolynomial> {
    if !model.complex().is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(RankPolynomial::from_cone_counts(&cone_counts(model)))
}

/// Cone counts of `c(Π)` by dimension, read off the cells and the recession
/// fan: a cone of dimension `d` is either over a cell of dimension `d − 1` or
/// a fan cone of dimension `d` at height zero.
pub fn cone_counts(model: &ToricModel) -> Vec<usize> {
    let n = n_of(model);
    (0..=n + 1)
        .map(|d| {
            let over = if d == 0 { 0 } else { model.complex().skeleton(d as i64 - 1).len() };
            over + model.fan().skeleton(d as i64).len()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCheck {
    pub ok: bool,
    pub polynomial: RankPolynomial,
    /// `chow_dim(n + 1 − j)` at position `j`, aligned with the coefficients.
    pub dims: Vec<usize>,
}

pub fn verify_rank_formula(model: &ToricModel) -> Result<RankCheck> {
    let polynomial = rank_polynomial(model)?;
    let n = n_of(model);
    let dims = (0..=n + 1).map(|j| chow_dim(model, n + 1 - j)).collect::<Result<Vec<_>>>()?;
    let ok = polynomial.coefficients.len() == dims.len()
        && polynomial.coefficients.iter().zip(&dims).all(|(c, &d)| *c == Int::from(d));
    Ok(RankCheck { ok, polynomial, dims })
}

/// `sp: V(σ) ↦ Σ_{rec(Λ) = σ} mult(Λ) V(Λ)` on `Π(n−k) × Σ(n−k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationMatrix {
    pub k: i64,
    /// Cell indices.
    pub rows: Vec<usize>,
    /// Fan indices.
    pub cols: Vec<usize>,
    pub entries: ZMat,
}

pub fn specialize(model: &ToricModel, k: i64) -> SpecializationMatrix {
    let d = n_of(model).saturating_sub(k);
    let rows = model.complex().skeleton(d);
    let cols = model.fan().skeleton(d);
    let mut entries = ZMat::zeros(rows.len(), cols.len());
    for (i, &lambda) in rows.iter().enumerate() {
        if let Some(j) = cols.iter().position(|&s| s == model.rec(lambda)) {
            entries[(i, j)] = model.complex().cell(lambda).multiplicity();
        }
    }
    SpecializationMatrix { k, rows, cols, entries }
}
