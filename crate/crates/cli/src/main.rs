//! `kleene-mv`: JSON front end to the kleene-mv library.
//!
//! Every command prints one `CommandReport` on stdout. Exit codes: 0 ok,
//! 1 semantic rejection, 2 parse or I/O error, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use kleene_mv::algebra::{self, FiniteKleeneAlgebra, MalformedAlgebra};
use kleene_mv::complex;
use kleene_mv::geom::{self, RationalTriangulation, DEFAULT_MAX_KLEENE_DIM};
use kleene_mv::io;
use kleene_mv::mvalg::{self, SchauderBasis};
use kleene_mv::pipeline::{self, FlipSearch, PipelineError, DEFAULT_FLIP_BUDGET};
use kleene_mv::space::{self, KleeneSpace, SpaceError};
use kleene_mv::{seeded_rng, tri, DEFAULT_SEED};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Parser)]
#[command(name = "kleene-mv", version, about = "Free MV-algebras over finite Kleene algebras")]
struct Cli {
    /// Seed for every randomized sampling check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Override the dimension guard of `geometry kleene-triangulation`.
    #[arg(long, global = true)]
    max_n: Option<usize>,
    /// Number of triangulations the flip search of `demo section6` may examine.
    #[arg(long, global = true, default_value_t = DEFAULT_FLIP_BUDGET)]
    budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Algebra,
    Space,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    /// Algebra to space.
    #[value(name = "D", alias = "d")]
    D,
    /// Space to algebra.
    #[value(name = "E", alias = "e")]
    E,
}

#[derive(Subcommand)]
enum Command {
    /// Check a file against the laws of its kind.
    Validate { kind: Kind, file: PathBuf },
    /// Dualize an algebra (D) or a space (E).
    Dual {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Direction::D)]
        direction: Direction,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Build the presentation of the MV-algebra free over an algebra.
    FreeMv {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Find an algebra whose free MV-algebra a weighted complex presents.
    /// Accepts a complex file or a presentation bundle.
    Recognize {
        file: PathBuf,
        /// Where to write the witness algebra.
        #[arg(short = 'o')]
        output: Option<PathBuf>,
        /// Where to write the reconstructed bundle; defaults to
        /// `<output stem>.bundle.json` next to the algebra.
        #[arg(long)]
        bundle: Option<PathBuf>,
    },
    #[command(subcommand)]
    Geometry(Geometry),
    #[command(subcommand)]
    Demo(Demo),
}

#[derive(Subcommand)]
enum Geometry {
    /// The Kleene triangulation of the n-cube.
    KleeneTriangulation {
        n: usize,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Check that every simplex of a triangulation file is regular.
    RegularCheck { file: PathBuf },
    /// Realize a weighted complex as a triangulation.
    Realize {
        file: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// The two counterexamples: K^2 versus K', and the nine-point space W.
    Section6,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Rejected,
    Error,
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct CommandReport {
    command: String,
    inputs: Vec<InputDigest>,
    status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    condition: Option<String>,
    payload: Value,
    timing_ms: f64,
}

/// Why a command did not succeed, with its exit code.
#[derive(Debug)]
enum Failure {
    Parse(String),
    Rejected(String, Value),
    Budget(String, Value),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Parse(format!("{e:#}"))
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::Parse(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx {
    seed: u64,
    max_n: Option<usize>,
    budget: usize,
    inputs: Vec<InputDigest>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
        self.inputs.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| Failure::Parse(format!("{} is not UTF-8", path.display())))
    }
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn write_opt(path: &Option<PathBuf>, text: &str) -> Result<Value, Failure> {
    match path {
        Some(p) => {
            write(p, text)?;
            Ok(json!(p.display().to_string()))
        }
        None => Ok(Value::Null),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn load_algebra(ctx: &mut Ctx, file: &Path) -> Result<FiniteKleeneAlgebra, Failure> {
    let spec = io::parse_algebra(&ctx.read(file)?)?;
    FiniteKleeneAlgebra::from_spec(&spec).map_err(|e| match e {
        algebra::AlgebraError::Malformed(m) => Failure::Parse(m.to_string()),
        other => Failure::Rejected(other.to_string(), Value::Null),
    })
}

fn load_space(ctx: &mut Ctx, file: &Path) -> Result<KleeneSpace, Failure> {
    let spec = io::parse_space(&ctx.read(file)?)?;
    KleeneSpace::from_spec(&spec).map_err(|e| match e {
        SpaceError::Malformed(m) => Failure::Parse(m.to_string()),
        other => Failure::Rejected(other.to_string(), Value::Null),
    })
}

fn pipeline_failure(e: PipelineError) -> Failure {
    Failure::Rejected(e.to_string(), Value::Null)
}

/// Partition of unity at the vertices and at seeded random points.
fn partition_check(basis: &SchauderBasis, seed: u64) -> Value {
    let mut rng = seeded_rng(seed);
    let t = &basis.triangulation;
    let samples: Vec<_> = if t.simplices.is_empty() {
        Vec::new()
    } else {
        (0..20).map(|_| geom::random_point_in(&mut rng, t, 6)).collect()
    };
    let one = geom::q(1);
    let holds = t.vertices.iter().chain(&samples).all(|x| basis.partition_sum(x).is_ok_and(|s| s == one));
    json!({ "points": t.vertices.len() + samples.len(), "holds": holds })
}

fn presentation_summary(p: &pipeline::MVPresentation, seed: u64) -> Value {
    json!({
        "vertices": p.complex.complex.vertices(),
        "weights": p.complex.weights,
        "facets": p.complex.complex.named_facets(),
        "f_vector": p.complex.complex.f_vector(),
        "ambient_dim": p.realization.dim,
        "regular": p.realization.is_regular(),
        "partition_of_unity": partition_check(&p.basis, seed),
    })
}

fn validate(ctx: &mut Ctx, kind: Kind, file: &Path) -> Outcome {
    let text = ctx.read(file)?;
    match kind {
        Kind::Algebra => {
            let spec = io::parse_algebra(&text)?;
            let report = algebra::validate_kleene_algebra(&spec).map_err(|e: MalformedAlgebra| Failure::Parse(e.to_string()))?;
            let payload = json!({ "elements": spec.elements.len(), "report": report });
            match report.violations.first() {
                None => Ok(payload),
                Some(v) => Err(Failure::Rejected(v.to_string(), payload)),
            }
        }
        Kind::Space => {
            let spec = io::parse_space(&text)?;
            let report = space::validate_space(&spec).map_err(|e| Failure::Parse(e.to_string()))?;
            let payload = json!({ "points": spec.points.len(), "report": report });
            match report.violations.first() {
                None => Ok(payload),
                Some(v) => Err(Failure::Rejected(v.to_string(), payload)),
            }
        }
        Kind::Complex => {
            let wc = io::parse_complex(&text)?;
            let kleene = match complex::is_kleene_complex(&wc) {
                Ok(_) => json!({ "ok": true }),
                Err(v) => json!({ "ok": false, "condition": v.to_string() }),
            };
            Ok(json!({
                "vertices": wc.complex.vertex_count(),
                "f_vector": wc.complex.f_vector(),
                "weights": wc.weight_multiset(),
                "kleene_complex": kleene,
            }))
        }
    }
}

fn dual(ctx: &mut Ctx, file: &Path, direction: Direction, output: &Option<PathBuf>) -> Outcome {
    match direction {
        Direction::D => {
            let b = load_algebra(ctx, file)?;
            let spec = space::dual_d(&b).space.to_spec();
            let written = write_opt(output, &io::space_to_json(&spec))?;
            Ok(json!({ "direction": "D", "space": spec, "output": written }))
        }
        Direction::E => {
            let x = load_space(ctx, file)?;
            let e = space::dual_e(&x).map_err(|e| Failure::Rejected(e.to_string(), Value::Null))?;
            let spec = e.algebra.to_spec();
            let written = write_opt(output, &io::algebra_to_json(&spec))?;
            Ok(json!({ "direction": "E", "algebra": spec, "output": written }))
        }
    }
}

fn free_mv(ctx: &mut Ctx, file: &Path, output: &Option<PathBuf>) -> Outcome {
    let b = load_algebra(ctx, file)?;
    let mut p = pipeline::free_over(&b).map_err(pipeline_failure)?;
    p.provenance.algebra_file = Some(file.display().to_string());
    let written = write_opt(output, &io::bundle_to_json(&p))?;
    let mut payload = presentation_summary(&p, ctx.seed);
    payload["algebra_size"] = json!(b.len());
    payload["output"] = written;
    Ok(payload)
}

fn default_bundle_path(output: &Path) -> PathBuf {
    let stem = output.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "algebra".into());
    output.with_file_name(format!("{stem}.bundle.json"))
}

/// A complex file, or the complex of a presentation bundle.
fn parse_complex_or_bundle(text: &str) -> Result<complex::WeightedComplex, Failure> {
    let value: Value = serde_json::from_str(text).map_err(|e| Failure::Parse(format!("invalid JSON: {e}")))?;
    if value.get("complex").is_some() {
        Ok(io::parse_bundle(text)?.complex)
    } else {
        Ok(io::parse_complex(text)?)
    }
}

fn recognize(ctx: &mut Ctx, file: &Path, output: &Option<PathBuf>, bundle: &Option<PathBuf>) -> Outcome {
    let wc = parse_complex_or_bundle(&ctx.read(file)?)?;
    let r = match pipeline::recognize(&wc) {
        Ok(r) => r,
        Err(PipelineError::Rejected(v)) => {
            return Err(Failure::Rejected(v.to_string(), json!({ "condition": v.condition().to_string() })))
        }
        Err(e) => return Err(pipeline_failure(e)),
    };
    let spec = r.algebra.to_spec();
    let alg_written = write_opt(output, &io::algebra_to_json(&spec))?;
    let bundle_path = bundle.clone().or_else(|| output.as_deref().map(default_bundle_path));
    let bundle_written = write_opt(&bundle_path, &io::bundle_to_json(&r.presentation))?;
    let names = wc.complex.vertices();
    let rebuilt = r.presentation.complex.complex.vertices();
    Ok(json!({
        "algebra_size": r.algebra.len(),
        "algebra": spec,
        "embedding": names.iter().zip(&r.embedding).map(|(n, p)| (n.clone(), tri::point_name(p))).collect::<Vec<_>>(),
        "isomorphism": names.iter().zip(&r.iso).map(|(n, &j)| (n.clone(), rebuilt[j].clone())).collect::<Vec<_>>(),
        "presentation": presentation_summary(&r.presentation, ctx.seed),
        "output": alg_written,
        "bundle": bundle_written,
    }))
}

fn irregular_simplices(t: &RationalTriangulation) -> Vec<Vec<String>> {
    t.simplices
        .iter()
        .filter(|s| !geom::is_regular_simplex(&t.simplex_points(s)))
        .map(|s| s.iter().map(|&v| geom::format_point(&t.vertices[v])).collect())
        .collect()
}

fn geometry(ctx: &mut Ctx, cmd: &Geometry) -> Outcome {
    match cmd {
        Geometry::KleeneTriangulation { n, output } => {
            let limit = ctx.max_n.unwrap_or(DEFAULT_MAX_KLEENE_DIM);
            let t = geom::kleene_triangulation_with_limit(*n, limit)
                .map_err(|e| Failure::Rejected(e.to_string(), json!({ "limit": limit })))?;
            let written = write_opt(output, &io::triangulation_to_json(&t))?;
            Ok(json!({
                "n": n,
                "f_vector": t.f_vector(),
                "regular": t.is_regular(),
                "volume": t.volume().to_string(),
                "output": written,
            }))
        }
        Geometry::RegularCheck { file } => {
            let t = io::parse_triangulation(&ctx.read(file)?)?;
            let bad = irregular_simplices(&t);
            let improper = t.improper_pair().map(|(a, b)| [a, b]);
            let payload = json!({
                "regular": bad.is_empty(),
                "irregular_simplices": bad,
                "improper_pair": improper,
                "f_vector": t.f_vector(),
            });
            if let Some(s) = bad.first() {
                Err(Failure::Rejected(format!("simplex [{}] is not regular", s.join(", ")), payload))
            } else if let Some([a, b]) = improper {
                Err(Failure::Rejected(format!("simplices {a} and {b} do not meet in a common face"), payload))
            } else {
                Ok(payload)
            }
        }
        Geometry::Realize { file, output } => {
            let wc = io::parse_complex(&ctx.read(file)?)?;
            let t = Arc::new(geom::realize(&wc));
            let basis = mvalg::schauder_basis(t.clone()).map_err(|e| Failure::Rejected(e.to_string(), Value::Null))?;
            let written = write_opt(output, &io::triangulation_to_json(&t))?;
            Ok(json!({
                "dim": t.dim,
                "vertices": t.vertices.iter().map(|v| geom::format_point(v)).collect::<Vec<_>>(),
                "simplices": t.simplices,
                "denominators": basis.mult,
                "regular": t.is_regular(),
                "output": written,
            }))
        }
    }
}

fn demo(ctx: &mut Ctx, cmd: &Demo) -> Outcome {
    match cmd {
        Demo::Section6 => {
            let r = pipeline::demo_section6(ctx.budget).map_err(pipeline_failure)?;
            let payload = to_value(&r);
            if r.pass() {
                Ok(payload)
            } else if let FlipSearch::BudgetExhausted { explored } = r.q2.search {
                Err(Failure::Budget(format!("flip budget exhausted after {explored} triangulations"), payload))
            } else {
                let which = if r.q1.pass { "Q2" } else { "Q1" };
                Err(Failure::Rejected(format!("{which} assertions failed"), payload))
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate { kind: Kind::Algebra, .. } => "validate algebra",
        Command::Validate { kind: Kind::Space, .. } => "validate space",
        Command::Validate { kind: Kind::Complex, .. } => "validate complex",
        Command::Dual { .. } => "dual",
        Command::FreeMv { .. } => "free-mv",
        Command::Recognize { .. } => "recognize",
        Command::Geometry(Geometry::KleeneTriangulation { .. }) => "geometry kleene-triangulation",
        Command::Geometry(Geometry::RegularCheck { .. }) => "geometry regular-check",
        Command::Geometry(Geometry::Realize { .. }) => "geometry realize",
        Command::Demo(Demo::Section6) => "demo section6",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Format::Json = cli.format;
    let start = Instant::now();
    let mut ctx = Ctx { seed: cli.seed, max_n: cli.max_n, budget: cli.budget, inputs: Vec::new() };
    let outcome = match &cli.command {
        Command::Validate { kind, file } => validate(&mut ctx, *kind, file),
        Command::Dual { file, direction, output } => dual(&mut ctx, file, *direction, output),
        Command::FreeMv { file, output } => free_mv(&mut ctx, file, output),
        Command::Recognize { file, output, bundle } => recognize(&mut ctx, file, output, bundle),
        Command::Geometry(g) => geometry(&mut ctx, g),
        Command::Demo(d) => demo(&mut ctx, d),
    };
    let (status, condition, payload, code) = match outcome {
        Ok(p) => (Status::Ok, None, p, 0),
        Err(Failure::Rejected(c, p)) => (Status::Rejected, Some(c), p, 1),
        Err(Failure::Parse(c)) => (Status::Error, Some(c), Value::Null, 2),
        Err(Failure::Budget(c, p)) => (Status::Error, Some(c), p, 3),
    };
    let report = CommandReport {
        command: command_name(&cli.command).into(),
        inputs: ctx.inputs,
        status,
        condition,
        payload,
        timing_ms: start.elapsed().as_secs_f64() * 1000.0,
    };
    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    ExitCode::from(code)
}
