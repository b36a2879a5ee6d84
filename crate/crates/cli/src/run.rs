//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use toric_chow::chow::{
    chow_dim, cycle_basis, generic_fiber_dim, horizontal_label, presentation, rank_polynomial, relation_matrix,
    special_fiber_dim, specialize, vertical_label, verify_rank_formula,
};
use toric_chow::complex::{cone_complex, fixture, fixture_names, recession_fan, Labels, PolyhedralComplex, ToricModel};
use toric_chow::divisors::{divisor_of, principal_divisor, recession_function, MonomialFunction};
use toric_chow::exactalg::in_row_space_q;
use toric_chow::{Error, Int, QMat, Rat};

use crate::document::{ComplexDocument, PiecewiseDocument};
use crate::report::*;

#[derive(Parser, Clone, Debug)]
#[command(name = "toric-chow", version, about = "Chow groups of toric schemes over a DVR from polyhedral complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Common {
    /// Complex document (JSON).
    #[arg(long, conflicts_with = "fixture")]
    pub input: Option<PathBuf>,
    /// Built-in fixture, e.g. p1:3, blp2-model, canonical:p2.
    #[arg(long)]
    pub fixture: Option<String>,
    /// A single S-absolute dimension.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "all")]
    pub k: Option<i64>,
    /// Every meaningful dimension (the default).
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Compute on non-regular complexes.
    #[arg(long)]
    pub force: bool,
    /// Seed of the completeness sampling audit.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Subcommand, Clone, Debug)]
pub enum Command {
    /// Validate a complex and summarize it.
    Check(Common),
    /// Presentations of CH_k(X/S).
    Chow(Common),
    /// Dimensions of the Chow groups of the generic fiber.
    GenericFiber(Common),
    /// Dimensions of the Chow groups of the special fiber.
    SpecialFiber(Common),
    /// The rank polynomial of the cone complex.
    RankPoly(Common),
    /// Compare the rank polynomial with the computed dimensions.
    Verify(Common),
    /// Divisor of the monomial function ϖ^l χ^m.
    Divisor {
        #[command(flatten)]
        common: Common,
        /// Exponent vector, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        m: Vec<i64>,
        /// Exponent of the uniformizer.
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        l: i64,
    },
    /// Divisor of a piecewise affine function given by a JSON file.
    PaDivisor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pa: PathBuf,
    },
    /// The specialization map from the generic to the special fiber.
    Specialize(Common),
    /// Cones, cells, recession cones and multiplicities.
    Orbits(Common),
    /// Print a fixture as a complex document, or list fixtures.
    Fixture {
        name: Option<String>,
    },
}

/// What a run produced: text for stdout and stderr and an exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn fail(message: impl std::fmt::Display, code: i32) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {message}\n"), code }
    }
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::NotRegular => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let text = e.render().to_string();
            match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { stdout: String::new(), stderr: text, code: 1 },
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (common, name) = match &cli.command {
        Command::Fixture { name } => return run_fixture(name.as_deref()),
        Command::Check(c) => (c, "check"),
        Command::Chow(c) => (c, "chow"),
        Command::GenericFiber(c) => (c, "generic-fiber"),
        Command::SpecialFiber(c) => (c, "special-fiber"),
        Command::RankPoly(c) => (c, "rank-poly"),
        Command::Verify(c) => (c, "verify"),
        Command::Divisor { common, .. } => (common, "divisor"),
        Command::PaDivisor { common, .. } => (common, "pa-divisor"),
        Command::Specialize(c) => (c, "specialize"),
        Command::Orbits(c) => (c, "orbits"),
    };
    let input = match load(common) {
        Ok(i) => i,
        Err(o) => return o,
    };
    let echo = echo(name, cli);
    let result = match &cli.command {
        Command::Check(_) => Ok(check(&input)),
        _ => build(cli, common, &input),
    };
    match result {
        Ok((body, mut warnings, code)) => {
            warnings.extend(standard_warnings(&input, common.force));
            let report = Report { command: echo, source: input.source.clone(), summary: summary(&input.complex), body, warnings };
            let stdout = match common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) => Outcome::fail(&e, code_of(&e)),
    }
}

fn run_fixture(name: Option<&str>) -> Outcome {
    match name {
        None => Outcome::ok(fixture_names().iter().map(|n| format!("{n}\n")).collect()),
        Some(n) => match fixture(n) {
            Ok(f) => match ComplexDocument::from_complex(&f.complex) {
                Ok(doc) => Outcome::ok(doc.to_json() + "\n"),
                Err(e) => Outcome::fail(e, 1),
            },
            Err(e) => Outcome::fail(e, 1),
        },
    }
}

struct Input {
    source: String,
    fixture: Option<String>,
    complex: PolyhedralComplex,
    labels: Option<Labels>,
}

fn load(common: &Common) -> Result<Input, Outcome> {
    match (&common.input, &common.fixture) {
        (Some(path), None) => {
            let text =
                fs::read_to_string(path).map_err(|e| Outcome::fail(format!("cannot read {}: {e}", path.display()), 1))?;
            let doc = ComplexDocument::from_json(&text).map_err(|e| Outcome::fail(format!("{}: {e}", path.display()), 1))?;
            let complex = match common.seed {
                Some(s) => doc.parse_with_seed(s),
                None => doc.parse(),
            }
            .map_err(|e| Outcome::fail(format!("{}: {e}", path.display()), 1))?;
            Ok(Input { source: format!("file {}", path.display()), fixture: None, complex, labels: None })
        }
        (None, Some(name)) => {
            let f = fixture(name).map_err(|e| Outcome::fail(e, 1))?;
            let complex = match common.seed {
                Some(s) => f.complex.with_audit_seed(s),
                None => f.complex,
            };
            Ok(Input { source: format!("fixture {name}"), fixture: Some(name.clone()), complex, labels: Some(f.labels) })
        }
        _ => Err(Outcome::fail("exactly one of --input or --fixture is required", 1)),
    }
}

fn echo(name: &str, cli: &Cli) -> String {
    let common = match &cli.command {
        Command::Check(c)
        | Command::Chow(c)
        | Command::GenericFiber(c)
        | Command::SpecialFiber(c)
        | Command::RankPoly(c)
        | Command::Verify(c)
        | Command::Specialize(c)
        | Command::Orbits(c) => c,
        Command::Divisor { common, .. } | Command::PaDivisor { common, .. } => common,
        Command::Fixture { .. } => unreachable!("fixture is handled before reports"),
    };
    let mut parts = vec![name.to_string()];
    if let Some(p) = &common.input {
        parts.push(format!("--input {}", p.display()));
    }
    if let Some(f) = &common.fixture {
        parts.push(format!("--fixture {f}"));
    }
    if matches!(name, "chow" | "generic-fiber" | "special-fiber" | "specialize") {
        match common.k {
            Some(k) => parts.push(format!("--k {k}")),
            None => parts.push("--all".to_string()),
        }
    }
    if common.force {
        parts.push("--force".to_string());
    }
    if let Some(s) = common.seed {
        parts.push(format!("--seed {s}"));
    }
    match &cli.command {
        Command::Divisor { m, l, .. } => {
            parts.push(format!("--m {}", m.iter().map(i64::to_string).collect::<Vec<_>>().join(",")));
            parts.push(format!("--l {l}"));
        }
        Command::PaDivisor { pa, .. } => parts.push(format!("--pa {}", pa.display())),
        _ => {}
    }
    parts.join(" ")
}

fn summary(c: &PolyhedralComplex) -> Summary {
    let audit = c.completeness_audit();
    Summary {
        lattice_rank: c.ambient_rank(),
        skeleton_sizes: c.skeleton_sizes(),
        maximal_cells: c.maximal_cells().len(),
        complete: c.is_complete(),
        regular: c.is_regular(),
        reduced: c.is_reduced(),
        audit_samples: audit.samples,
        audit_seed: audit.seed,
    }
}

const P2_MODEL_NOTE: &str = "p2-model: a previously printed value dim CH_1 = 1 for this model comes from an \
8 x 10 relation matrix of rank 7, but the complex has 9 generators in that degree; the computed dim CH_1 is 2, \
in agreement with the rank polynomial 1 + 2z + 2z^2";

fn standard_warnings(input: &Input, force: bool) -> Vec<String> {
    let c = &input.complex;
    let mut out = Vec::new();
    if force && !c.is_regular() {
        out.push(
            "complex is not regular; results were computed because of --force and lie outside the regular setting \
             the presentation is proved for"
                .to_string(),
        );
    }
    let audit = c.completeness_audit();
    if audit.complete {
        out.push(format!(
            "completeness rests on the combinatorial conditions plus {} sampled points (seed {}); sampling is evidence, not proof",
            audit.samples, audit.seed
        ));
    }
    if input.fixture.as_deref() == Some("p2-model") {
        out.push(P2_MODEL_NOTE.to_string());
    }
    out
}

fn check(input: &Input) -> (Body, Vec<String>, i32) {
    let c = &input.complex;
    let fan = recession_fan(c).ok().map(|f| f.counts_by_dim());
    let cc = cone_complex(c).ok().map(|f| f.counts_by_dim());
    (Body::Check { recession_fan: fan, cone_complex: cc, audit_failure: c.completeness_audit().failure.clone() }, vec![], 0)
}

fn h_gen(model: &ToricModel, labels: Option<&Labels>, sigma: usize) -> Generator {
    Generator {
        label: horizontal_label(model, sigma),
        name: labels.and_then(|l| l.cone(model.fan().cone(sigma))).map(str::to_string),
    }
}

fn v_gen(model: &ToricModel, labels: Option<&Labels>, lambda: usize) -> Generator {
    Generator { label: vertical_label(lambda), name: labels.and_then(|l| l.cell(model.complex().cell(lambda))).map(str::to_string) }
}

fn basis_generators(model: &ToricModel, labels: Option<&Labels>, k: i64) -> Vec<Generator> {
    let b = cycle_basis(model, k);
    b.horizontal.iter().map(|&s| h_gen(model, labels, s)).chain(b.vertical.iter().map(|&c| v_gen(model, labels, c))).collect()
}

fn matrix_data(m: &QMat) -> MatrixData {
    MatrixData { rows: m.rows(), cols: m.cols(), entries: m.row_iter().map(|r| r.iter().map(Rat::to_string).collect()).collect() }
}

fn int_matrix_data(m: &toric_chow::ZMat) -> MatrixData {
    MatrixData { rows: m.rows(), cols: m.cols(), entries: m.row_iter().map(|r| r.iter().map(Int::to_string).collect()).collect() }
}

fn ks(common: &Common, lo: i64, hi: i64) -> Vec<i64> {
    match common.k {
        Some(k) => vec![k],
        None => (lo..=hi).collect(),
    }
}

fn coefficients(gens: &[Generator], values: &[Rat]) -> Vec<Coefficient> {
    gens.iter().zip(values).map(|(g, v)| Coefficient { generator: g.clone(), value: v.to_string() }).collect()
}

fn build(cli: &Cli, common: &Common, input: &Input) -> toric_chow::Result<(Body, Vec<String>, i32)> {
    let model = ToricModel::new(&input.complex, common.force)?;
    let labels = input.labels.as_ref();
    let n = model.rank() as i64;
    let body = match &cli.command {
        Command::Chow(_) => {
            let mut groups = Vec::new();
            for k in ks(common, 0, n + 1) {
                let p = presentation(&model, k)?;
                let generators = basis_generators(&model, labels, k);
                let free_generators: Vec<String> = p.free_generators.iter().map(|&f| generators[f].label.clone()).collect();
                let expressions = p
                    .expressions
                    .iter()
                    .map(|(g, cs)| Expression {
                        generator: generators[*g].label.clone(),
                        terms: cs
                            .iter()
                            .zip(&free_generators)
                            .filter(|(c, _)| !c.is_zero())
                            .map(|(c, l)| (c.to_string(), l.clone()))
                            .collect(),
                    })
                    .collect();
                groups.push(ChowGroup {
                    k,
                    relations: matrix_data(&p.relations),
                    rank: p.rank,
                    dim: p.dim,
                    generators,
                    free_generators,
                    expressions,
                });
            }
            let cross_check = if common.k.is_none() { Some(cross_check(&model)?) } else { None };
            Body::Chow { groups, cross_check }
        }
        Command::GenericFiber(_) => Body::Fiber {
            fiber: "generic".to_string(),
            dims: ks(common, 1, n + 1)
                .into_iter()
                .map(|k| Ok(KDim { k, dim: generic_fiber_dim(&model, k)? }))
                .collect::<toric_chow::Result<_>>()?,
        },
        Command::SpecialFiber(_) => Body::Fiber {
            fiber: "special".to_string(),
            dims: ks(common, 0, n)
                .into_iter()
                .map(|k| Ok(KDim { k, dim: special_fiber_dim(&model, k)? }))
                .collect::<toric_chow::Result<_>>()?,
        },
        Command::RankPoly(_) => {
            let p = rank_polynomial(&model)?;
            Body::RankPoly { polynomial: p.to_string(), coefficients: p.coefficients.iter().map(Int::to_string).collect() }
        }
        Command::Verify(_) => {
            let check = verify_rank_formula(&model)?;
            let code = if check.ok { 0 } else { 1 };
            let body = Body::Verify {
                ok: check.ok,
                polynomial: check.polynomial.to_string(),
                coefficients: check.polynomial.coefficients.iter().map(Int::to_string).collect(),
                dims: check.dims,
            };
            return Ok((body, vec![], code));
        }
        Command::Divisor { m, l, .. } => {
            if m.len() != model.rank() {
                return Err(Error::DimensionMismatch(format!("--m has {} entries, the lattice has rank {n}", m.len())));
            }
            let f = MonomialFunction { m: m.iter().map(|&x| Int::from(x)).collect(), l: Int::from(*l) };
            let d = principal_divisor(&model, &f);
            let gens = basis_generators(&model, labels, n);
            let principal = in_row_space_q(&relation_matrix(&model, n)?, &d.coefficients())?;
            Body::Divisor {
                m: m.iter().map(i64::to_string).collect(),
                l: l.to_string(),
                coefficients: coefficients(&gens, &d.coefficients()),
                principal,
            }
        }
        Command::PaDivisor { pa, .. } => {
            let text = fs::read_to_string(pa)
                .map_err(|e| Error::InvalidPolyhedron(format!("cannot read {}: {e}", pa.display())))?;
            let doc = PiecewiseDocument::from_json(&text)
                .map_err(|e| Error::InvalidPolyhedron(format!("{}: {e}", pa.display())))?;
            let phi = doc.to_function(&model).map_err(|e| Error::InvalidPolyhedron(format!("{}: {e}", pa.display())))?;
            let gens = basis_generators(&model, labels, n);
            let rays = cycle_basis(&model, n).horizontal.len();
            let psi = recession_function(&model, &phi)?;
            let d = divisor_of(&model, &phi)?;
            Body::PaDivisor {
                recession: coefficients(&gens[..rays], &psi),
                coefficients: coefficients(&gens, &d.coefficients()),
                principal: phi.is_affine(),
            }
        }
        Command::Specialize(_) => Body::Specialize {
            maps: ks(common, 0, n)
                .into_iter()
                .map(|k| {
                    let s = specialize(&model, k);
                    SpecializationData {
                        k,
                        rows: s.rows.iter().map(|&c| v_gen(&model, labels, c)).collect(),
                        cols: s.cols.iter().map(|&c| h_gen(&model, labels, c)).collect(),
                        entries: int_matrix_data(&s.entries),
                    }
                })
                .collect(),
        },
        Command::Orbits(_) => orbits(&model, labels),
        Command::Check(_) | Command::Fixture { .. } => unreachable!("handled without a model"),
    };
    Ok((body, vec![], 0))
}

fn cross_check(model: &ToricModel) -> toric_chow::Result<CrossCheck> {
    let check = verify_rank_formula(model)?;
    let n = model.rank() as i64;
    let localization = (0..=n + 1)
        .map(|k| {
            let (generic, total, special) =
                (generic_fiber_dim(model, k)?, chow_dim(model, k)?, special_fiber_dim(model, k)?);
            Ok(Localization { k, generic, total, special, ok: generic <= total && total <= generic + special })
        })
        .collect::<toric_chow::Result<_>>()?;
    Ok(CrossCheck {
        rank_polynomial: check.polynomial.to_string(),
        coefficients: check.polynomial.coefficients.iter().map(Int::to_string).collect(),
        dims: check.dims,
        rank_formula_ok: check.ok,
        localization,
    })
}

fn orbits(model: &ToricModel, labels: Option<&Labels>) -> Body {
    let fan = model.fan();
    let cones = (0..fan.cones().len())
        .map(|i| ConeInfo {
            id: i,
            label: h_gen(model, labels, i),
            dim: fan.cone(i).dim(),
            generators: fan.cone(i).generators().iter().map(|g| g.iter().map(Int::to_string).collect()).collect(),
        })
        .collect();
    let c = model.complex();
    let cells = (0..c.len())
        .map(|i| {
            let p = c.cell(i);
            CellInfo {
                id: i,
                label: v_gen(model, labels, i),
                dim: p.dim(),
                vertices: p.vertices().iter().map(|v| v.iter().map(Rat::to_string).collect()).collect(),
                rays: p.rays().iter().map(|r| r.iter().map(Int::to_string).collect()).collect(),
                recession_cone: horizontal_label(model, model.rec(i)),
                multiplicity: p.multiplicity().to_string(),
                star_fan_rank: model.lattices().cell(i).quotient_rank,
            }
        })
        .collect();
    Body::Orbits { cones, cells }
}
