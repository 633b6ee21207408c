//! Command-line front end: verify algebra tables, discover idempotent
//! systems, solve polynomial equations, check Cauchy-Riemann residuals,
//! and compare Taylor sums against direct evaluation.
//!
//! Exit status: 0 on success/pass, 1 on a mathematical failure (axioms
//! fail, no complete idempotent system, verdict false), 2 on input errors.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hypalg::{
    check_cauchy_riemann, find_idempotent_system, parse_algebra, parse_element, parse_idempotents,
    parse_polynomial, solve, taylor_eval, verify_idempotent_system, write_idempotents,
    AlgebraFunction, AlgebraTable, Element, FieldTag, IdempotentSystem, Provenance, Scalar,
    SolveOptions, SpectralConfig, SpectralError,
};
use output::{
    pack_element, pack_scalar, show_element, AxiomResiduals, ComponentDoc, CrCheckDoc, ErrorDoc,
    IdempotentsDoc, OutputFormat, SolveDoc, SystemResiduals, TaylorDoc, VerifyDoc,
};

const AXIOM_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "hypalg",
    version,
    about = "Computation in finite-dimensional commutative unitary algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a structure-constant table.
    Verify(VerifyArgs),
    /// Discover (or verify from a file) a complete orthogonal idempotent system.
    Idempotents(IdempotentsArgs),
    /// Solve p(w) = 0 by reduction through an idempotent system.
    Solve(SolveArgs),
    /// Sample the Cauchy-Riemann-type residuals of a function.
    #[command(name = "cr-check")]
    CrCheck(CrCheckArgs),
    /// Compare a Taylor sum against direct evaluation.
    Taylor(TaylorArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Algebra file.
    #[arg(long)]
    algebra: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value = "human")]
    format: OutputFormat,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Axiom tolerance.
    #[arg(long, default_value_t = AXIOM_TOL)]
    tol: f64,
}

#[derive(Args)]
struct IdempotentsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Verify this idempotent-system file instead of discovering one.
    #[arg(long)]
    idempotents: Option<PathBuf>,
    /// Discovery seed (HYPALG_SEED overrides this default).
    #[arg(long)]
    seed: Option<u64>,
    /// Idempotent residual tolerance.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Write the system to this file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Polynomial file.
    #[arg(long)]
    poly: PathBuf,
    /// Idempotent-system file; discovered from the algebra when absent.
    #[arg(long)]
    idempotents: Option<PathBuf>,
    /// Discovery seed (HYPALG_SEED overrides this default).
    #[arg(long)]
    seed: Option<u64>,
    /// Max residual an enumerated root may have.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    /// Cap on the enumerated cartesian product.
    #[arg(long, default_value_t = 4096)]
    max_roots: usize,
}

#[derive(Args)]
struct CrCheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Polynomial file for the function under test.
    #[arg(long, conflicts_with = "builtin")]
    poly: Option<PathBuf>,
    /// Built-in function name (`conj`, dimension-2 algebras only).
    #[arg(long)]
    builtin: Option<String>,
    /// Number of sample points.
    #[arg(long, default_value_t = 16)]
    points: usize,
    /// Sampling seed (HYPALG_SEED overrides this default).
    #[arg(long)]
    seed: Option<u64>,
    /// Central-difference step.
    #[arg(long, default_value_t = 1e-5)]
    step: f64,
    /// Verdict tolerance on the max residual.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
}

#[derive(Args)]
struct TaylorArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Polynomial file.
    #[arg(long)]
    poly: PathBuf,
    /// Expansion point: dim whitespace-separated scalars.
    #[arg(long, allow_hyphen_values = true)]
    point: String,
    /// Displacement: dim whitespace-separated scalars.
    #[arg(long, allow_hyphen_values = true)]
    disp: String,
    /// Expansion order.
    #[arg(long)]
    order: u32,
}

/// Input problems: exit code 2, message on stderr, no document.
struct InputError(String);

enum Outcome {
    Pass,
    MathFail,
}

fn fail(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn read_file(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<AlgebraTable, InputError> {
    let text = read_file(path)?;
    parse_algebra(&text).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn load_polynomial(
    path: &Path,
    table: &AlgebraTable,
) -> Result<hypalg::AlgebraPolynomial, InputError> {
    let text = read_file(path)?;
    parse_polynomial(&text, table).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn check_tol(tol: f64, what: &str) -> Result<f64, InputError> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(fail(format!(
            "{what} must be a nonnegative number, got {tol}"
        )));
    }
    Ok(tol)
}

/// CLI seed, then HYPALG_SEED, then 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64, InputError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("HYPALG_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| fail(format!("HYPALG_SEED must be a u64, got `{text}`"))),
        Err(_) => Ok(0),
    }
}

/// Axiom gate shared by every subcommand that computes on the table.
fn require_axioms(
    table: &AlgebraTable,
    command: &'static str,
    format: OutputFormat,
) -> Option<Outcome> {
    let report = table.verify(AXIOM_TOL);
    if report.pass() {
        return None;
    }
    ErrorDoc {
        command,
        kind: "axioms_failed",
        error: format!(
            "the table violates the algebra axioms (commutativity {:e}, unit {:e}, \
             associativity {:e} at tolerance {:e})",
            report.commutativity, report.unit, report.associativity, AXIOM_TOL
        ),
    }
    .print(format);
    Some(Outcome::MathFail)
}

fn spectral_error_kind(err: &SpectralError) -> &'static str {
    match err {
        SpectralError::NonSplit { .. } => "non_split",
        SpectralError::NotSemisimpleOrDegenerate { .. } => "not_semisimple_or_degenerate",
        SpectralError::VerificationFailed { .. } => "verification_failed",
        _ => "spectral_error",
    }
}

fn random_point(table: &AlgebraTable, rng: &mut ChaCha8Rng) -> Element {
    let coeffs = (0..table.dim())
        .map(|_| {
            let re = rng.random_range(-1.0..1.0);
            let im = match table.field() {
                FieldTag::RealField => 0.0,
                FieldTag::ComplexField => rng.random_range(-1.0..1.0),
            };
            Scalar::new(re, im)
        })
        .collect();
    Element::new(coeffs)
}

fn cmd_verify(args: VerifyArgs) -> Result<Outcome, InputError> {
    let tol = check_tol(args.tol, "--tol")?;
    let table = load_algebra(&args.common.algebra)?;
    let report = table.verify(tol);
    VerifyDoc {
        command: "verify",
        field: table.field().symbol().to_string(),
        dim: table.dim(),
        residuals: AxiomResiduals {
            commutativity: report.commutativity,
            unit: report.unit,
            associativity: report.associativity,
        },
        tolerance: tol,
        pass: report.pass(),
    }
    .print(args.common.format);
    Ok(if report.pass() {
        Outcome::Pass
    } else {
        Outcome::MathFail
    })
}

fn cmd_idempotents(args: IdempotentsArgs) -> Result<Outcome, InputError> {
    let tol = check_tol(args.tol, "--tol")?;
    let seed = resolve_seed(args.seed)?;
    let table = load_algebra(&args.common.algebra)?;
    let format = args.common.format;

    let supplied = match &args.idempotents {
        Some(path) => {
            let text = read_file(path)?;
            Some(
                parse_idempotents(&text, &table)
                    .map_err(|e| fail(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    if let Some(outcome) = require_axioms(&table, "idempotents", format) {
        return Ok(outcome);
    }

    let (system, provenance) = match supplied {
        Some(elems) => (
            IdempotentSystem::from_parts(elems, Provenance::UserSupplied, tol),
            "file",
        ),
        None => {
            let config = SpectralConfig {
                seed,
                tol_idem: tol,
                ..Default::default()
            };
            match find_idempotent_system(&table, &config) {
                Ok(sys) => (sys, "discovered"),
                Err(err) => {
                    ErrorDoc {
                        command: "idempotents",
                        kind: spectral_error_kind(&err),
                        error: err.to_string(),
                    }
                    .print(format);
                    return Ok(Outcome::MathFail);
                }
            }
        }
    };

    let report = verify_idempotent_system(&table, system.idempotents(), tol)
        .map_err(|e| fail(e.to_string()))?;
    if let Some(out) = &args.out {
        std::fs::write(out, write_idempotents(&system))
            .map_err(|e| fail(format!("{}: {e}", out.display())))?;
    }
    let pass = report.pass() && report.is_complete();
    IdempotentsDoc {
        command: "idempotents",
        provenance,
        seed,
        dim: table.dim(),
        count: system.len(),
        idempotents: system.idempotents().iter().map(pack_element).collect(),
        residuals: SystemResiduals {
            idempotency: report.idempotency,
            orthogonality: report.orthogonality,
            completeness: report.completeness,
        },
        rank: report.rank,
        complete: report.is_complete(),
        pass,
        pretty: system.idempotents().iter().map(show_element).collect(),
    }
    .print(format);
    Ok(if pass {
        Outcome::Pass
    } else {
        Outcome::MathFail
    })
}

fn cmd_solve(args: SolveArgs) -> Result<Outcome, InputError> {
    let tol = check_tol(args.tol, "--tol")?;
    let seed = resolve_seed(args.seed)?;
    let table = load_algebra(&args.common.algebra)?;
    let poly = load_polynomial(&args.poly, &table)?;
    let format = args.common.format;
    let supplied = match &args.idempotents {
        Some(path) => {
            let text = read_file(path)?;
            Some(
                parse_idempotents(&text, &table)
                    .map_err(|e| fail(format!("{}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    if let Some(outcome) = require_axioms(&table, "solve", format) {
        return Ok(outcome);
    }

    let system = match supplied {
        Some(elems) => {
            let report =
                verify_idempotent_system(&table, &elems, 1e-8).map_err(|e| fail(e.to_string()))?;
            if !report.pass() || !report.is_complete() {
                ErrorDoc {
                    command: "solve",
                    kind: "bad_idempotent_system",
                    error: format!(
                        "supplied idempotent system fails verification \
                         (idempotency {:e}, orthogonality {:e}, completeness {:e}, \
                         rank {}/{}, count {} for dim {})",
                        report.idempotency,
                        report.orthogonality,
                        report.completeness,
                        report.rank,
                        report.count,
                        report.count,
                        table.dim()
                    ),
                }
                .print(format);
                return Ok(Outcome::MathFail);
            }
            IdempotentSystem::from_parts(elems, Provenance::UserSupplied, 1e-8)
        }
        None => match find_idempotent_system(&table, &SpectralConfig::with_seed(seed)) {
            Ok(sys) => sys,
            Err(err) => {
                ErrorDoc {
                    command: "solve",
                    kind: spectral_error_kind(&err),
                    error: err.to_string(),
                }
                .print(format);
                return Ok(Outcome::MathFail);
            }
        },
    };

    let opts = SolveOptions {
        tol_root: tol,
        max_roots: args.max_roots,
        ..Default::default()
    };
    let root_set = match solve(&table, &poly, &system, &opts) {
        Ok(rs) => rs,
        Err(err) => {
            ErrorDoc {
                command: "solve",
                kind: "incomplete_system",
                error: err.to_string(),
            }
            .print(format);
            return Ok(Outcome::MathFail);
        }
    };
    let components = root_set
        .components
        .iter()
        .map(|c| match &c.kind {
            hypalg::ComponentKind::Finite(roots) => ComponentDoc {
                kind: "finite",
                roots: Some(roots.iter().map(|&r| pack_scalar(r)).collect()),
                residuals: Some(c.residuals.clone()),
            },
            hypalg::ComponentKind::AllOfK => ComponentDoc {
                kind: "all_of_k",
                roots: None,
                residuals: None,
            },
            hypalg::ComponentKind::Empty => ComponentDoc {
                kind: "empty",
                roots: None,
                residuals: None,
            },
        })
        .collect();
    SolveDoc {
        command: "solve",
        dim: table.dim(),
        roots: root_set.roots.iter().map(pack_element).collect(),
        residuals: root_set.residuals.clone(),
        components,
        truncated: root_set.truncated,
        parametric: root_set.parametric,
        pretty_roots: root_set.roots.iter().map(show_element).collect(),
    }
    .print(format);
    Ok(Outcome::Pass)
}

fn cmd_cr_check(args: CrCheckArgs) -> Result<Outcome, InputError> {
    let tol = check_tol(args.tol, "--tol")?;
    if !args.step.is_finite() || args.step <= 0.0 {
        return Err(fail(format!("--step must be positive, got {}", args.step)));
    }
    let seed = resolve_seed(args.seed)?;
    let table = load_algebra(&args.common.algebra)?;
    let format = args.common.format;

    enum Function {
        Poly(hypalg::AlgebraPolynomial),
        Conj,
    }
    let function = match (&args.poly, args.builtin.as_deref()) {
        (Some(path), None) => Function::Poly(load_polynomial(path, &table)?),
        (None, Some("conj")) => {
            if table.dim() != 2 {
                return Err(fail("builtin `conj` needs a dimension-2 algebra"));
            }
            Function::Conj
        }
        (None, Some(other)) => {
            return Err(fail(format!("unknown builtin `{other}` (available: conj)")))
        }
        (None, None) | (Some(_), Some(_)) => {
            return Err(fail("cr-check needs exactly one of --poly or --builtin"))
        }
    };
    if let Some(outcome) = require_axioms(&table, "cr-check", format) {
        return Ok(outcome);
    }

    let conj_fn = |x: &Element| -> Result<Element, String> {
        Ok(Element::new(vec![x.coeffs()[0], -x.coeffs()[1]]))
    };
    let (f, name) = match &function {
        Function::Poly(p) => (AlgebraFunction::Poly(p.clone()), "poly"),
        Function::Conj => (AlgebraFunction::BlackBox(&conj_fn), "conj"),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_direction = vec![0.0f64; table.dim() - 1];
    for _ in 0..args.points {
        let x = random_point(&table, &mut rng);
        let report =
            check_cauchy_riemann(&table, &f, &x, args.step).map_err(|e| fail(e.to_string()))?;
        for (acc, r) in per_direction.iter_mut().zip(&report.residuals) {
            *acc = acc.max(*r);
        }
    }
    let max_residual = per_direction.iter().copied().fold(0.0, f64::max);
    let verdict = max_residual <= tol;
    CrCheckDoc {
        command: "cr-check",
        function: name.to_string(),
        points: args.points,
        seed,
        step: args.step,
        tolerance: tol,
        per_direction,
        max_residual,
        verdict,
    }
    .print(format);
    Ok(if verdict {
        Outcome::Pass
    } else {
        Outcome::MathFail
    })
}

fn cmd_taylor(args: TaylorArgs) -> Result<Outcome, InputError> {
    let table = load_algebra(&args.common.algebra)?;
    let poly = load_polynomial(&args.poly, &table)?;
    let point = parse_element(&args.point, &table).map_err(|e| fail(format!("--point: {e}")))?;
    let disp = parse_element(&args.disp, &table).map_err(|e| fail(format!("--disp: {e}")))?;
    if let Some(outcome) = require_axioms(&table, "taylor", args.common.format) {
        return Ok(outcome);
    }

    let f = AlgebraFunction::Poly(poly);
    let taylor =
        taylor_eval(&table, &f, &point, &disp, args.order).map_err(|e| fail(e.to_string()))?;
    let shifted = table.add(&point, &disp).map_err(|e| fail(e.to_string()))?;
    let direct = f.eval(&table, &shifted).map_err(|e| fail(e.to_string()))?;
    let difference = table
        .sub(&taylor, &direct)
        .map_err(|e| fail(e.to_string()))?;
    TaylorDoc {
        command: "taylor",
        order: args.order,
        taylor: pack_element(&taylor),
        direct: pack_element(&direct),
        difference: pack_element(&difference),
        max_abs_difference: difference.inf_norm(),
        pretty: [
            show_element(&taylor),
            show_element(&direct),
            show_element(&difference),
        ],
    }
    .print(args.common.format);
    Ok(Outcome::Pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args),
        Command::Idempotents(args) => cmd_idempotents(args),
        Command::Solve(args) => cmd_solve(args),
        Command::CrCheck(args) => cmd_cr_check(args),
        Command::Taylor(args) => cmd_taylor(args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::MathFail) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
