//! Reports: one serializable structure per run, rendered as text or JSON.
//! The text form is derived from the same structure, so both carry the
//! same numbers.

use std::fmt::Write;

use serde::Serialize;

/// Matrices larger than this in either direction are elided in text.
pub const TEXT_MATRIX_LIMIT: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub source: String,
    pub summary: Summary,
    pub body: Body,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub lattice_rank: usize,
    pub skeleton_sizes: Vec<usize>,
    pub maximal_cells: usize,
    pub complete: bool,
    pub regular: bool,
    pub reduced: bool,
    pub audit_samples: usize,
    pub audit_seed: u64,
}

/// A generator or index with its canonical label and, for fixtures, its name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Generator {
    pub fn display(&self) -> String {
        match &self.name {
            Some(n) => format!("{}={}", self.label, n),
            None => self.label.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixData {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expression {
    pub generator: String,
    /// `(coefficient, free generator label)`, zero coefficients omitted.
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowGroup {
    pub k: i64,
    pub generators: Vec<Generator>,
    pub relations: MatrixData,
    pub rank: usize,
    pub dim: usize,
    pub free_generators: Vec<String>,
    pub expressions: Vec<Expression>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Localization {
    pub k: i64,
    pub generic: usize,
    pub total: usize,
    pub special: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub rank_polynomial: String,
    pub coefficients: Vec<String>,
    /// `dim CH_{n+1−j}` at position `j`.
    pub dims: Vec<usize>,
    pub rank_formula_ok: bool,
    pub localization: Vec<Localization>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KDim {
    pub k: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub generator: Generator,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializationData {
    pub k: i64,
    pub rows: Vec<Generator>,
    pub cols: Vec<Generator>,
    pub entries: MatrixData,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeInfo {
    pub id: usize,
    pub label: Generator,
    pub dim: usize,
    pub generators: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellInfo {
    pub id: usize,
    pub label: Generator,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
    pub rays: Vec<Vec<String>>,
    pub recession_cone: String,
    pub multiplicity: String,
    pub star_fan_rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Body {
    Check { recession_fan: Option<Vec<usize>>, cone_complex: Option<Vec<usize>>, audit_failure: Option<String> },
    Chow { groups: Vec<ChowGroup>, cross_check: Option<CrossCheck> },
    Fiber { fiber: String, dims: Vec<KDim> },
    RankPoly { polynomial: String, coefficients: Vec<String> },
    Verify { ok: bool, polynomial: String, coefficients: Vec<String>, dims: Vec<usize> },
    Divisor { m: Vec<String>, l: String, coefficients: Vec<Coefficient>, principal: bool },
    PaDivisor { recession: Vec<Coefficient>, coefficients: Vec<Coefficient>, principal: bool },
    Specialize { maps: Vec<SpecializationData> },
    Orbits { cones: Vec<ConeInfo>, cells: Vec<CellInfo> },
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "source: {}", self.source);
        let _ = writeln!(
            out,
            "complex: rank {}, skeleton sizes {}, {} maximal cells",
            s.lattice_rank,
            list(&s.skeleton_sizes),
            s.maximal_cells
        );
        let _ = writeln!(
            out,
            "complete: {}, regular: {}, reduced special fiber: {}",
            yes_no(s.complete),
            yes_no(s.regular),
            yes_no(s.reduced)
        );
        let _ = writeln!(out, "audit: {} samples, seed {}", s.audit_samples, s.audit_seed);
        out.push('\n');
        self.body_text(&mut out);
        if !self.warnings.is_empty() {
            out.push('\n');
            for w in &self.warnings {
                let _ = writeln!(out, "warning: {w}");
            }
        }
        out
    }

    fn body_text(&self, out: &mut String) {
        match &self.body {
            Body::Check { recession_fan, cone_complex, audit_failure } => {
                if let Some(f) = recession_fan {
                    let _ = writeln!(out, "recession fan cones by dimension: {}", list(f));
                }
                if let Some(c) = cone_complex {
                    let _ = writeln!(out, "cone complex cones by dimension: {}", list(c));
                }
                if let Some(a) = audit_failure {
                    let _ = writeln!(out, "completeness failure: {a}");
                }
            }
            Body::Chow { groups, cross_check } => {
                for g in groups {
                    chow_text(out, g);
                }
                if let Some(c) = cross_check {
                    let _ = writeln!(out, "rank polynomial: {}", c.rank_polynomial);
                    let _ = writeln!(out, "coefficients: {}", list(&c.coefficients));
                    let _ = writeln!(out, "dims CH_(n+1-j): {}", list(&c.dims));
                    let _ = writeln!(out, "rank formula: {}", if c.rank_formula_ok { "OK" } else { "FAILED" });
                    for l in &c.localization {
                        let _ = writeln!(
                            out,
                            "localization k={}: generic {} <= total {} <= generic + special {} + {}: {}",
                            l.k,
                            l.generic,
                            l.total,
                            l.generic,
                            l.special,
                            if l.ok { "OK" } else { "FAILED" }
                        );
                    }
                }
            }
            Body::Fiber { fiber, dims } => {
                for d in dims {
                    let _ = writeln!(out, "{fiber} fiber k={}: dim {}", d.k, d.dim);
                }
            }
            Body::RankPoly { polynomial, coefficients } => {
                let _ = writeln!(out, "rank polynomial: {polynomial}");
                let _ = writeln!(out, "coefficients: {}", list(coefficients));
            }
            Body::Verify { ok, polynomial, coefficients, dims } => {
                if *ok {
                    let _ = writeln!(out, "rank formula: OK ({polynomial})");
                } else {
                    let _ = writeln!(out, "rank formula: FAILED ({polynomial})");
                }
                let _ = writeln!(out, "coefficients: {}", list(coefficients));
                let _ = writeln!(out, "dims CH_(n+1-j): {}", list(dims));
            }
            Body::Divisor { m, l, coefficients, principal } => {
                let _ = writeln!(out, "div of monomial m = {}, l = {l}", list(m));
                coefficients_text(out, coefficients);
                let _ = writeln!(out, "in relation row space: {}", yes_no(*principal));
            }
            Body::PaDivisor { recession, coefficients, principal } => {
                let _ = writeln!(out, "recession function on rays:");
                coefficients_text(out, recession);
                let _ = writeln!(out, "divisor:");
                coefficients_text(out, coefficients);
                let _ = writeln!(out, "principal (globally affine): {}", yes_no(*principal));
            }
            Body::Specialize { maps } => {
                for m in maps {
                    let _ = writeln!(out, "specialization k={} ({} x {}):", m.k, m.rows.len(), m.cols.len());
                    let cols: Vec<String> = m.cols.iter().map(Generator::display).collect();
                    let rows: Vec<String> = m.rows.iter().map(Generator::display).collect();
                    matrix_text(out, &m.entries, &cols, Some(&rows));
                    out.push('\n');
                }
            }
            Body::Orbits { cones, cells } => {
                let _ = writeln!(out, "cones of the recession fan:");
                for c in cones {
                    let _ = writeln!(out, "  {}: dim {}, generators {}", c.label.display(), c.dim, vectors(&c.generators));
                }
                let _ = writeln!(out, "cells:");
                for c in cells {
                    let _ = writeln!(
                        out,
                        "  {}: dim {}, vertices {}, rays {}, rec {}, mult {}, star fan rank {}",
                        c.label.display(),
                        c.dim,
                        vectors(&c.vertices),
                        vectors(&c.rays),
                        c.recession_cone,
                        c.multiplicity,
                        c.star_fan_rank
                    );
                }
            }
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    format!("[{}]", xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

fn vectors(vs: &[Vec<String>]) -> String {
    if vs.is_empty() {
        return "none".to_string();
    }
    vs.iter().map(|v| format!("({})", v.join(","))).collect::<Vec<_>>().join(" ")
}

fn coefficients_text(out: &mut String, cs: &[Coefficient]) {
    for c in cs {
        let _ = writeln!(out, "  {}: {}", c.generator.display(), c.value);
    }
}

fn chow_text(out: &mut String, g: &ChowGroup) {
    let _ = writeln!(out, "CH_{}: {} generators, rank {}, dim {}", g.k, g.generators.len(), g.rank, g.dim);
    let labels: Vec<String> = g.generators.iter().map(Generator::display).collect();
    if !labels.is_empty() {
        let _ = writeln!(out, "generators: {}", labels.join(" "));
    }
    let _ = writeln!(out, "relations ({} x {}):", g.relations.rows, g.relations.cols);
    matrix_text(out, &g.relations, &labels, None);
    if !g.free_generators.is_empty() {
        let _ = writeln!(out, "free: {}", g.free_generators.join(" "));
    }
    for e in &g.expressions {
        let mut rhs = String::new();
        for (i, (c, l)) in e.terms.iter().enumerate() {
            let (neg, abs) = match c.strip_prefix('-') {
                Some(a) => (true, a),
                None => (false, c.as_str()),
            };
            rhs.push_str(match (i, neg) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            });
            if abs != "1" {
                rhs.push_str(abs);
                rhs.push('*');
            }
            rhs.push_str(l);
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        let _ = writeln!(out, "  {} = {}", e.generator, rhs);
    }
    out.push('\n');
}

fn matrix_text(out: &mut String, m: &MatrixData, cols: &[String], rows: Option<&[String]>) {
    if m.rows == 0 || m.cols == 0 {
        let _ = writeln!(out, "  (empty)");
        return;
    }
    if m.rows > TEXT_MATRIX_LIMIT || m.cols > TEXT_MATRIX_LIMIT {
        let _ = writeln!(out, "  (matrix {} x {} elided; use --format json)", m.rows, m.cols);
        return;
    }
    let row_w = rows.map_or(0, |r| r.iter().map(|s| s.chars().count()).max().unwrap_or(0));
    let widths: Vec<usize> = (0..m.cols)
        .map(|j| {
            let head = cols.get(j).map_or(0, |s| s.chars().count());
            m.entries.iter().map(|r| r[j].chars().count()).max().unwrap_or(0).max(head)
        })
        .collect();
    let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w.saturating_sub(s.chars().count())), s);
    let mut line = format!("  {}", " ".repeat(row_w));
    for (j, w) in widths.iter().enumerate() {
        line.push(' ');
        line.push_str(&pad(cols.get(j).map_or("", String::as_str), *w));
    }
    let _ = writeln!(out, "{}", line.trim_end());
    for (i, r) in m.entries.iter().enumerate() {
        let head = rows.map_or(String::new(), |rs| pad(&rs[i], row_w));
        let mut line = format!("  {head}");
        for (j, w) in widths.iter().enumerate() {
            line.push(' ');
            line.push_str(&pad(&r[j], *w));
        }
        let _ = writeln!(out, "{line}");
    }
}
