//! Command-line front end. [`run`] takes the argument list and returns what
//! the process should print and its exit status, so it can be driven from
//! tests without spawning processes.

use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::algebra::{HSeries, Rational};
use crate::bridge::{exp_star, hair, jhalf, nu_coefficients, phi, qdim, PhiInput, Prefactor};
use crate::character::{haar_average, CharacterCombo};
use crate::diagram::dsl::{parse_bead_combo, parse_leg_combo, print_leg_combo};
use crate::diagram::{BeadDiagram, DiagramCombo, HermitianMatrixClass};
use crate::error::{Error, Result};
use crate::lie::{AlgebraJson, CartanVector, LieAlgebraData};
use crate::verify::{lambda_grid, run_suite, VerifyConfig, SUITES};
use crate::weight::{weight_full, weight_group, weight_group_exact, weight_lie, weight_matrix_part};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "beads", version, about = "Weight systems for beaded and unitrivalent diagrams over sl_n")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate a weight system on a diagram file and/or matrix file.
    Weight(WeightArgs),
    /// Run a verification suite and print its report.
    Verify(VerifyArgs),
    /// Evaluate kappa, tau or a lambda grid on rational-form data.
    Invariants(InvariantArgs),
    /// Print the hair map image of a beaded diagram file.
    Hair(HairArgs),
    /// Print the wheel coefficients of nu.
    Nu(OrderArgs),
    /// Quantum dimension of lambda as a series.
    Qdim(PointArgs),
    /// `j^{1/2}(hλ)` as a series.
    Jhalf(PointArgs),
    /// Apply Phi to a character file.
    Phi(PhiArgs),
    /// Export an algebra as JSON.
    Algebra(AlgebraArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// `sl2`, `sl3`, ... or a path to an algebra JSON file.
    #[arg(long, default_value = "sl2")]
    algebra: String,
    /// Comma-separated fundamental-weight coordinates; defaults to rho.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long, default_value_t = 4)]
    degree: usize,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Lie,
    Group,
    Matrix,
    Full,
    Exact,
}

#[derive(Args, Debug)]
struct WeightArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    diagram: Option<String>,
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long)]
    suite: String,
    /// Comma-separated list of algebras.
    #[arg(long, default_value = "sl2")]
    algebra: String,
    #[arg(long, default_value_t = 8)]
    degree: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Include wall-clock durations in the report.
    #[arg(long)]
    timing: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Evaluate {
    Kappa,
    Tau,
    LambdaGrid,
}

#[derive(Args, Debug)]
struct InvariantArgs {
    #[arg(long, value_enum)]
    evaluate: Evaluate,
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    diagram: Option<String>,
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Args, Debug)]
struct HairArgs {
    #[arg(long)]
    diagram: String,
    #[arg(long, default_value_t = 4)]
    degree: usize,
}

#[derive(Args, Debug)]
struct OrderArgs {
    #[arg(long, default_value_t = 8)]
    degree: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrefactorArg {
    None,
    Qdim,
    JRatio,
}

#[derive(Args, Debug)]
struct PhiArgs {
    #[command(flatten)]
    common: Common,
    /// Character JSON file.
    #[arg(long)]
    character: String,
    #[arg(long, value_enum, default_value_t = PrefactorArg::None)]
    prefactor: PrefactorArg,
}

#[derive(Args, Debug)]
struct AlgebraArgs {
    #[arg(long, default_value = "sl2")]
    algebra: String,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((stdout, code)) => Outcome { stdout, stderr: String::new(), code },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: if e.is_parse() { EXIT_PARSE } else { EXIT_PRECONDITION },
        },
    }
}

fn dispatch(cmd: Command) -> Result<(String, i32)> {
    let ok = |v: Value| Ok((render(&v), EXIT_OK));
    match cmd {
        Command::Weight(a) => ok(weight(&a)?),
        Command::Verify(a) => verify(&a),
        Command::Invariants(a) => ok(invariants(&a)?),
        Command::Hair(a) => {
            let s = read_beads(Some(&a.diagram))?;
            Ok((print_leg_combo(&hair(&s, a.degree)), EXIT_OK))
        }
        Command::Nu(a) => {
            let b = nu_coefficients(a.degree);
            let coeffs: Vec<String> = (0..=a.degree).map(|n| b.coeff(n).to_string()).collect();
            ok(json!({ "order": a.degree, "wheel_coeffs": coeffs }))
        }
        Command::Qdim(a) => {
            let (l, lambda) = point(&a.common)?;
            ok(series_json(&qdim(&l, &lambda, a.common.degree)?))
        }
        Command::Jhalf(a) => {
            let (l, lambda) = point(&a.common)?;
            ok(series_json(&jhalf(&l, &lambda, a.common.degree)))
        }
        Command::Phi(a) => {
            let (l, lambda) = point(&a.common)?;
            let f = CharacterCombo::from_json(&read(&a.character)?)?;
            let n = a.common.degree;
            let s = match a.prefactor {
                PrefactorArg::None => exp_star(&f, &l, &lambda, n),
                PrefactorArg::Qdim => phi(&PhiInput::Character(f), &l, &lambda, n, Prefactor::Qdim)?,
                PrefactorArg::JRatio => phi(&PhiInput::Character(f), &l, &lambda, n, Prefactor::JRatio)?,
            };
            ok(series_json(&s))
        }
        Command::Algebra(a) => {
            let l = algebra(&a.algebra)?;
            ok(serde_json::to_value(l.to_json()).expect("algebra serializes"))
        }
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

pub fn series_json(s: &HSeries) -> Value {
    json!({ "order": s.order(), "coeffs": s.coeff_strings() })
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read `{path}`: {e}")))
}

fn algebra(spec: &str) -> Result<LieAlgebraData> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let j: AlgebraJson =
            serde_json::from_str(&read(spec)?).map_err(|e| Error::Parse(format!("algebra JSON: {e}")))?;
        LieAlgebraData::from_json(&j)
    } else {
        LieAlgebraData::by_name(spec)
    }
}

fn point(c: &Common) -> Result<(LieAlgebraData, CartanVector)> {
    let l = algebra(&c.algebra)?;
    let lambda = match &c.lambda {
        Some(s) => s.parse()?,
        None => CartanVector::rho(l.rank()),
    };
    if lambda.rank() != l.rank() {
        return Err(Error::DimensionMismatch(format!(
            "lambda has {} coordinates, {} needs {}",
            lambda.rank(),
            l.name(),
            l.rank()
        )));
    }
    Ok((l, lambda))
}

fn read_beads(path: Option<&String>) -> Result<DiagramCombo<BeadDiagram>> {
    match path {
        Some(p) => parse_bead_combo(&read(p)?),
        None => Ok(DiagramCombo::one(None)),
    }
}

fn read_matrix(path: Option<&String>) -> Result<HermitianMatrixClass> {
    match path {
        Some(p) => HermitianMatrixClass::from_json(&read(p)?),
        None => Ok(HermitianMatrixClass::identity(1)),
    }
}

fn exact_json(exact: &std::collections::BTreeMap<usize, CharacterCombo>) -> Value {
    let degrees: Vec<Value> = exact
        .iter()
        .map(|(k, f)| {
            let c: Value = serde_json::from_str(&f.to_json()).expect("character json");
            json!({ "degree": k, "character": c })
        })
        .collect();
    json!({ "degrees": degrees })
}

fn weight(a: &WeightArgs) -> Result<Value> {
    let (l, lambda) = point(&a.common)?;
    let n = a.common.degree;
    Ok(match a.mode {
        Mode::Lie => {
            let d = match &a.diagram {
                Some(p) => parse_leg_combo(&read(p)?)?,
                None => DiagramCombo::one(None),
            };
            series_json(&weight_lie(&d, &l, &lambda, n)?)
        }
        Mode::Group => series_json(&weight_group(&read_beads(a.diagram.as_ref())?, &l, &lambda, n)?),
        Mode::Matrix => series_json(&weight_matrix_part(&read_matrix(a.matrix.as_ref())?, &l, &lambda, n)?),
        Mode::Full => {
            let s = read_beads(a.diagram.as_ref())?;
            series_json(&weight_full(&read_matrix(a.matrix.as_ref())?, &s, &l, &lambda, n)?)
        }
        Mode::Exact => exact_json(&weight_group_exact(&read_beads(a.diagram.as_ref())?, &l)?),
    })
}

fn verify(a: &VerifyArgs) -> Result<(String, i32)> {
    let algebras = a.algebra.split(',').map(|s| algebra(s.trim())).collect::<Result<Vec<_>>>()?;
    let cfg = VerifyConfig {
        algebras,
        degree: a.degree,
        seed: a.seed,
        timing: a.timing,
    };
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![a.suite.as_str()]
    };
    let mut reports = Vec::new();
    for name in names {
        reports.push(run_suite(name, &cfg)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let v = if reports.len() == 1 {
        serde_json::to_value(&reports[0])
    } else {
        serde_json::to_value(&reports)
    }
    .expect("report serializes");
    Ok((render(&v), if pass { EXIT_OK } else { EXIT_VERIFY_FAILED }))
}

fn invariants(a: &InvariantArgs) -> Result<Value> {
    let l = algebra(&a.common.algebra)?;
    let n = a.common.degree;
    let m = read_matrix(a.matrix.as_ref())?;
    let s = read_beads(a.diagram.as_ref())?;
    Ok(match a.evaluate {
        Evaluate::Kappa => {
            let v = weight_full(&m, &s, &l, &CartanVector::zero(l.rank()), n)?;
            json!({ "kappa": v.coeff_strings() })
        }
        Evaluate::Tau => {
            let trivial = m.normalized_det().0.terms().count() == 1;
            let polynomial = s.terms().all(|(d, _)| d.is_polynomial());
            if !trivial || !polynomial {
                return Err(Error::TauRequiresTrivialAlexander);
            }
            let exact = weight_group_exact(&s, &l)?;
            let mut out = vec![Rational::zero(); n + 1];
            for (k, f) in exact {
                if k <= n {
                    out[k] = haar_average(&f, &l)?;
                }
            }
            json!({ "tau": out.iter().map(ToString::to_string).collect::<Vec<_>>() })
        }
        Evaluate::LambdaGrid => {
            let grid: Vec<CartanVector> = match &a.common.lambda {
                Some(s) => s.split(';').map(str::parse).collect::<Result<_>>()?,
                None => lambda_grid(l.rank()),
            };
            let mut rows = Vec::new();
            for lambda in grid {
                let v = weight_full(&m, &s, &l, &lambda, n)?;
                rows.push(json!({ "lambda": lambda.to_string(), "series": series_json(&v) }));
            }
            json!({ "grid": rows })
        }
    })
}
