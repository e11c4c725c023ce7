//! Command-line front end: resolve algebras from catalog labels or JSON
//! files, dispatch to the library, and print deterministic text, JSON, or
//! DOT reports.
//!
//! Exit codes: 0 = success (boolean queries answering "false" included),
//! 1 = domain failure (a degeneration that does not verify, a search that
//! finds nothing, a failed batch verification), 2 = usage or input errors.
//! Reports go to stdout, diagnostics to stderr.

mod files;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use evokit::catalog;
use evokit::cohomology;
use evokit::deformation::{self, ConstructionBranch, FirstOrderDeformation};
use evokit::degeneration::{self, DegenerationStatus, MatchPolicy, SearchBounds};
use evokit::evolution::EvolutionAlgebra;
use evokit::scalars::parse_scalar;
use evokit::{CycScalar, Matrix, Ring};

use files::{matrix_strings, FamilyFile, MatrixFile};

/// An input problem: bad flags, unreadable files, malformed data, unknown
/// labels. Always exits 2; domain outcomes are reported on stdout with
/// exit 1 instead.
#[derive(Debug)]
pub struct UsageError(pub String);

pub fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

impl From<evokit::Error> for UsageError {
    fn from(e: evokit::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

/// Exact computations on finite-dimensional evolution algebras: annihilator
/// series and nilpotency type, second cohomology, infinitesimal deformations
/// and their equivalence, and formal degenerations, over a built-in catalog
/// of small algebras and explicit degeneration witnesses.
///
/// ALGEBRA arguments accept either a catalog label (`mu_3_4`, `E5(1,0)`,
/// `ex1_mu2`, ...) or a path to a JSON file `{"dim": n, "matrix": [[...]]}`
/// whose entries use the exact scalar grammar (rationals, `i`, `zeta`,
/// `sqrt_i`; no `t`). Family files use the same shape with Laurent entries.
#[derive(Parser)]
#[command(name = "evokit", version)]
struct Cli {
    /// Output format (dot is available for `hasse` only).
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Summary of the standard invariants of one algebra.
    Info { algebra: String },
    /// Dimensions and bases of the upper annihilating series.
    AnnSeries { algebra: String },
    /// The type: dimension jumps of the annihilating series.
    Type { algebra: String },
    /// Whether the algebra is nilpotent.
    Nilpotent { algebra: String },
    /// Dimension of the span of all products.
    SquareDim { algebra: String },
    /// Basis of the coboundary space B^2, as structure-shaped matrices.
    B2 { algebra: String },
    /// Cohomology dimensions and complement representative positions.
    H2 { algebra: String },
    /// Basis of the derivation space, as endomorphism matrices.
    Derivations { algebra: String },
    /// Complement representatives enumerating the infinitesimal
    /// deformations up to equivalence.
    Infdef { algebra: String },
    /// Whether the first-order deformation by NU1 is trivial.
    DeformTrivial {
        algebra: String,
        /// Infinitesimal as a matrix file (scalar entries).
        #[arg(long)]
        nu1: PathBuf,
    },
    /// Whether two first-order deformations over ALGEBRA are equivalent;
    /// prints the equivalence morphism when they are.
    DeformEquiv {
        algebra: String,
        #[arg(long)]
        nu1: PathBuf,
        #[arg(long)]
        nu2: PathBuf,
    },
    /// A certified nontrivial infinitesimal deformation of the algebra.
    Nonrigid { algebra: String },
    /// Verify that a family carries one algebra onto another as t -> 0.
    Degenerate {
        #[arg(long)]
        from: String,
        /// Basis-change family as a matrix file (Laurent entries).
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        to: String,
        /// Accept limits that match the target up to a basis permutation
        /// and rescaling by eighth roots of unity.
        #[arg(long)]
        match_up_to_permutation: bool,
    },
    /// The five degeneration obstructions for an ordered pair.
    Obstructions {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Search for a degeneration witness within bounds.
    Search {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Bounds as `exp=E,coeffs=c1;c2;...,offdiag=K`: exponents range
        /// over [-E, E], coefficients over the listed scalars, and at most
        /// K off-diagonal entries are nonzero.
        #[arg(long, default_value = "exp=2,coeffs=1,offdiag=0")]
        bounds: String,
        /// Enumerate even when the obstruction suite already rules the
        /// pair out.
        #[arg(long)]
        skip_obstructions: bool,
    },
    /// List the built-in algebras.
    Catalog {
        /// Keep only algebras of this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The degeneration Hasse diagram of one dimension (2, 3 or 4), each
    /// edge re-verified live.
    Hasse {
        #[arg(long)]
        dim: usize,
    },
    /// Re-verify everything built in: all witnesses and all recorded
    /// invariants. Exits 1 if anything fails.
    VerifyCatalog,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// EVOKIT_THREADS bounds the worker count of parallel operations; parsed
/// and validated even in sequential builds, where it is then ignored.
fn configure_threads() -> Result<(), UsageError> {
    let Some(raw) = std::env::var_os("EVOKIT_THREADS") else {
        return Ok(());
    };
    let text = raw.to_string_lossy();
    let n: usize = text.parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        usage(format!(
            "EVOKIT_THREADS must be a positive integer, got {text:?}"
        ))
    })?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| usage(format!("thread pool: {e}")))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cli: Cli) -> Result<(String, u8), UsageError> {
    let format = cli.format;
    if format == Format::Dot && !matches!(cli.command, Command::Hasse { .. }) {
        return Err(usage("--format dot is only supported by `hasse`"));
    }
    match cli.command {
        Command::Info { algebra } => info(&load_algebra(&algebra)?, format),
        Command::AnnSeries { algebra } => ann_series(&load_algebra(&algebra)?, format),
        Command::Type { algebra } => type_of(&load_algebra(&algebra)?, format),
        Command::Nilpotent { algebra } => nilpotent(&load_algebra(&algebra)?, format),
        Command::SquareDim { algebra } => square_dim(&load_algebra(&algebra)?, format),
        Command::B2 { algebra } => b2(&load_algebra(&algebra)?, format),
        Command::H2 { algebra } => h2(&load_algebra(&algebra)?, format),
        Command::Derivations { algebra } => derivations(&load_algebra(&algebra)?, format),
        Command::Infdef { algebra } => infdef(&load_algebra(&algebra)?, format),
        Command::DeformTrivial { algebra, nu1 } => {
            deform_trivial(&load_algebra(&algebra)?, &load_matrix(&nu1)?, format)
        }
        Command::DeformEquiv { algebra, nu1, nu2 } => deform_equiv(
            &load_algebra(&algebra)?,
            &load_matrix(&nu1)?,
            &load_matrix(&nu2)?,
            format,
        ),
        Command::Nonrigid { algebra } => nonrigid(&load_algebra(&algebra)?, format),
        Command::Degenerate {
            from,
            g,
            to,
            match_up_to_permutation,
        } => degenerate(
            &load_algebra(&from)?,
            &load_family(&g)?,
            &load_algebra(&to)?,
            match_up_to_permutation,
            format,
        ),
        Command::Obstructions { from, to } => {
            obstructions(&load_algebra(&from)?, &load_algebra(&to)?, format)
        }
        Command::Search {
            from,
            to,
            bounds,
            skip_obstructions,
        } => search(
            &load_algebra(&from)?,
            &load_algebra(&to)?,
            &parse_bounds(&bounds)?,
            skip_obstructions,
            format,
        ),
        Command::Catalog { dim } => catalog_listing(dim, format),
        Command::Hasse { dim } => hasse(dim, format),
        Command::VerifyCatalog => verify_catalog(format),
    }
}

// ---------------------------------------------------------------------------
// Input resolution

fn load_algebra(spec: &str) -> Result<EvolutionAlgebra, UsageError> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{spec}: {e}")))?;
        let file: MatrixFile =
            serde_json::from_str(&text).map_err(|e| usage(format!("{spec}: {e}")))?;
        file.to_algebra()
            .map_err(|e| usage(format!("{spec}: {}", e.0)))
    } else {
        catalog::get(spec)
            .map(|entry| entry.algebra)
            .map_err(|e| usage(format!("{spec}: {e} (and no such file)")))
    }
}

fn load_matrix(path: &Path) -> Result<Matrix<CycScalar>, UsageError> {
    let name = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{name}: {e}")))?;
    let file: MatrixFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    file.to_matrix()
        .map_err(|e| usage(format!("{name}: {}", e.0)))
}

fn load_family(path: &Path) -> Result<degeneration::BasisChangeFamily, UsageError> {
    let name = path.display();
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{name}: {e}")))?;
    let file: FamilyFile =
        serde_json::from_str(&text).map_err(|e| usage(format!("{name}: {e}")))?;
    file.to_family()
        .map_err(|e| usage(format!("{name}: {}", e.0)))
}

fn parse_bounds(text: &str) -> Result<SearchBounds, UsageError> {
    let mut bounds = SearchBounds {
        max_abs_exponent: 2,
        coefficient_set: vec![CycScalar::one()],
        max_offdiag_nonzeros: 0,
    };
    for part in text.split(',') {
        let Some((key, value)) = part.split_once('=') else {
            return Err(usage(format!(
                "bounds entry {part:?} is not `key=value`; expected `exp=E,coeffs=c1;c2,offdiag=K`"
            )));
        };
        match key.trim() {
            "exp" => {
                bounds.max_abs_exponent = value
                    .trim()
                    .parse::<i64>()
                    .ok()
                    .filter(|&e| e >= 0)
                    .ok_or_else(|| {
                        usage(format!(
                            "bounds exponent {value:?} is not a nonnegative integer"
                        ))
                    })?;
            }
            "coeffs" => {
                bounds.coefficient_set = value
                    .split(';')
                    .map(|s| parse_scalar(s.trim()))
                    .collect::<evokit::Result<Vec<_>>>()
                    .map_err(|e| usage(format!("bounds coefficient: {e}")))?;
            }
            "offdiag" => {
                bounds.max_offdiag_nonzeros = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("bounds offdiag {value:?} is not an integer")))?;
            }
            other => return Err(usage(format!("unknown bounds key {other:?}"))),
        }
    }
    Ok(bounds)
}

// ---------------------------------------------------------------------------
// Rendering helpers

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are serializable");
    s.push('\n');
    s
}

fn matrix_lines<F: Ring + std::fmt::Display>(m: &Matrix<F>) -> String {
    let mut out = String::new();
    for row in matrix_strings(m) {
        let _ = writeln!(out, "  [{}]", row.join(", "));
    }
    out
}

fn unflatten(n: usize, flat: &[CycScalar]) -> Matrix<CycScalar> {
    Matrix::from_flat(n, n, flat.to_vec())
}

fn matrix_json<F: Ring + std::fmt::Display>(m: &Matrix<F>) -> Value {
    serde_json::to_value(matrix_strings(m)).expect("strings are serializable")
}

fn ok(out: String) -> Result<(String, u8), UsageError> {
    Ok((out, 0))
}

// ---------------------------------------------------------------------------
// Single-algebra reports

fn info(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let report = cohomology::h2(alg);
    let series = alg.ann_series();
    if format == Format::Json {
        return ok(json_out(&json!({
            "label": alg.label(),
            "dim": alg.dim(),
            "structure": matrix_json(alg.structure()),
            "nilpotent": alg.is_nilpotent(),
            "type": alg.type_sequence().parts,
            "ann_dims": series.dims(),
            "square_dim": alg.square_dim(),
            "regular": alg.is_regular(),
            "b2_dim": report.b2_dim,
            "h2_dim": report.h2_dim,
        })));
    }
    let mut out = String::new();
    if let Some(label) = alg.label() {
        let _ = writeln!(out, "label: {label}");
    }
    let _ = writeln!(out, "dim: {}", alg.dim());
    let _ = writeln!(out, "structure:");
    out.push_str(&matrix_lines(alg.structure()));
    let _ = writeln!(out, "nilpotent: {}", alg.is_nilpotent());
    let _ = writeln!(out, "type: {}", alg.type_sequence());
    let _ = writeln!(out, "ann dims: {:?}", series.dims());
    let _ = writeln!(out, "square dim: {}", alg.square_dim());
    let _ = writeln!(out, "regular: {}", alg.is_regular());
    let _ = writeln!(out, "b2 dim: {}", report.b2_dim);
    let _ = writeln!(out, "h2 dim: {}", report.h2_dim);
    ok(out)
}

fn ann_series(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let series = alg.ann_series();
    if format == Format::Json {
        let terms: Vec<Value> = series
            .subspaces
            .iter()
            .map(|s| {
                let vectors: Vec<Vec<String>> = s
                    .vectors()
                    .iter()
                    .map(|v| v.iter().map(ToString::to_string).collect())
                    .collect();
                serde_json::to_value(vectors).expect("strings are serializable")
            })
            .collect();
        return ok(json_out(&json!({
            "dims": series.dims(),
            "stabilized_at": series.stabilized_at,
            "terms": terms,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "dims: {:?}", series.dims());
    let _ = writeln!(out, "strictly increasing terms: {}", series.stabilized_at);
    for (k, s) in series.subspaces.iter().enumerate() {
        let _ = writeln!(out, "term {} (dim {}):", k + 1, s.dim());
        for v in s.vectors() {
            let coords: Vec<String> = v.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  [{}]", coords.join(", "));
        }
    }
    ok(out)
}

fn type_of(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    if format == Format::Json {
        return ok(json_out(&json!({ "type": alg.type_sequence().parts })));
    }
    ok(format!("type: {}\n", alg.type_sequence()))
}

fn nilpotent(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    if format == Format::Json {
        return ok(json_out(&json!({ "nilpotent": alg.is_nilpotent() })));
    }
    ok(format!("nilpotent: {}\n", alg.is_nilpotent()))
}

fn square_dim(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    if format == Format::Json {
        return ok(json_out(&json!({ "square_dim": alg.square_dim() })));
    }
    ok(format!("square dim: {}\n", alg.square_dim()))
}

fn b2(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let basis = cohomology::b2_basis(alg);
    let n = alg.dim();
    if format == Format::Json {
        let mats: Vec<Value> = basis
            .vectors()
            .iter()
            .map(|v| matrix_json(&unflatten(n, v)))
            .collect();
        return ok(json_out(&json!({ "dim": basis.dim(), "basis": mats })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "b2 dim: {}", basis.dim());
    for (k, v) in basis.vectors().iter().enumerate() {
        let _ = writeln!(out, "generator {}:", k + 1);
        out.push_str(&matrix_lines(&unflatten(n, v)));
    }
    ok(out)
}

fn h2(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let report = cohomology::h2(alg);
    let positions = report.representative_positions();
    if format == Format::Json {
        return ok(json_out(&json!({
            "b2_dim": report.b2_dim,
            "h2_dim": report.h2_dim,
            "representative_positions": positions,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "b2 dim: {}", report.b2_dim);
    let _ = writeln!(out, "h2 dim: {}", report.h2_dim);
    let _ = writeln!(out, "representative positions: {positions:?}");
    ok(out)
}

fn derivations(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let space = cohomology::derivation_space(alg);
    let n = alg.dim();
    if format == Format::Json {
        let mats: Vec<Value> = space
            .vectors()
            .iter()
            .map(|v| matrix_json(&unflatten(n, v)))
            .collect();
        return ok(json_out(&json!({ "dim": space.dim(), "basis": mats })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "derivation space dim: {}", space.dim());
    for (k, v) in space.vectors().iter().enumerate() {
        let _ = writeln!(out, "basis {}:", k + 1);
        out.push_str(&matrix_lines(&unflatten(n, v)));
    }
    ok(out)
}

fn infdef(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let reps = deformation::infdef_representatives(alg);
    if format == Format::Json {
        let mats: Vec<Value> = reps.iter().map(matrix_json).collect();
        return ok(json_out(&json!({
            "count": reps.len(),
            "representatives": mats,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "count: {}", reps.len());
    for (k, m) in reps.iter().enumerate() {
        let _ = writeln!(out, "representative {}:", k + 1);
        out.push_str(&matrix_lines(m));
    }
    ok(out)
}

// ---------------------------------------------------------------------------
// Deformations

fn deform_trivial(
    alg: &EvolutionAlgebra,
    nu1: &Matrix<CycScalar>,
    format: Format,
) -> Result<(String, u8), UsageError> {
    let d = FirstOrderDeformation::new(alg.clone(), nu1.clone())?;
    let trivial = deformation::is_trivial_infinitesimal(&d);
    if format == Format::Json {
        return ok(json_out(&json!({ "trivial": trivial })));
    }
    ok(format!("trivial: {trivial}\n"))
}

fn deform_equiv(
    alg: &EvolutionAlgebra,
    nu1: &Matrix<CycScalar>,
    nu2: &Matrix<CycScalar>,
    format: Format,
) -> Result<(String, u8), UsageError> {
    let d1 = FirstOrderDeformation::new(alg.clone(), nu1.clone())?;
    let d2 = FirstOrderDeformation::new(alg.clone(), nu2.clone())?;
    let witness = deformation::equivalence_witness(&d1, &d2)?;
    if format == Format::Json {
        return ok(json_out(&json!({
            "equivalent": witness.is_some(),
            "xi": witness.as_ref().map(|w| matrix_json(w.xi())),
        })));
    }
    match witness {
        Some(w) => {
            let mut out = String::from("equivalent: true\nxi:\n");
            out.push_str(&matrix_lines(w.xi()));
            ok(out)
        }
        None => ok("equivalent: false\n".into()),
    }
}

fn branch_name(branch: ConstructionBranch) -> &'static str {
    match branch {
        ConstructionBranch::RegularZeroRow => "regular-zero-row",
        ConstructionBranch::RegularViolatingEntry => "regular-violating-entry",
        ConstructionBranch::NonregularSignVector => "nonregular-sign-vector",
    }
}

fn nonrigid(alg: &EvolutionAlgebra, format: Format) -> Result<(String, u8), UsageError> {
    let cert = deformation::nontrivial_infinitesimal(alg)?;
    if format == Format::Json {
        // `nu1` is a complete matrix file, ready for `deform-trivial --nu1`.
        let nu1_file = MatrixFile {
            dim: alg.dim(),
            matrix: matrix_strings(cert.deformation.nu1()),
            label: None,
        };
        return ok(json_out(&json!({
            "branch": branch_name(cert.construction_branch),
            "sign_vector": cert.sign_vector,
            "nu1": nu1_file,
        })));
    }
    let mut out = String::new();
    let _ = writeln!(out, "branch: {}", branch_name(cert.construction_branch));
    if let Some(signs) = &cert.sign_vector {
        let _ = writeln!(out, "sign vector: {signs:?}");
    }
    let _ = writeln!(out, "nu1:");
    out.push_str(&matrix_lines(cert.deformation.nu1()));
    ok(out)
}

// ---------------------------------------------------------------------------
// Degenerations

fn degenerate(
    from: &EvolutionAlgebra,
    g: &degeneration::BasisChangeFamily,
    to: &EvolutionAlgebra,
    up_to_permutation: bool,
    format: Format,
) -> Result<(String, u8), UsageError> {
    let policy = if up_to_permutation {
        MatchPolicy::UpToPermutation
    } else {
        MatchPolicy::Exact
    };
    let report = degeneration::verify_degeneration_with(from, g, to, policy)?;
    let code = u8::from(report.status != DegenerationStatus::Verified);
    if format == Format::Json {
        let offending: Vec<Value> = report
            .offending_entries
            .iter()
            .map(|e| json!({ "row": e.row, "col": e.col, "detail": e.detail }))
            .collect();
        return Ok((
            json_out(&json!({
                "status": report.status.to_string(),
                "limit": report.limit_algebra.as_ref().map(|a| matrix_json(a.structure())),
                "offending": offending,
                "warnings": report.warnings,
            })),
            code,
        ));
    }
    let mut out = String::new();
    let _ = writeln!(out, "status: {}", report.status);
    if let Some(lim) = &report.limit_algebra {
        let _ = writeln!(out, "limit:");
        out.push_str(&matrix_lines(lim.structure()));
    }
    if !report.offending_entries.is_empty() {
        let _ = writeln!(out, "offending entries:");
        for e in &report.offending_entries {
            let _ = writeln!(out, "  ({}, {}): {}", e.row, e.col, e.detail);
        }
    }
    if !report.warnings.is_empty() {
        let _ = writeln!(out, "warnings:");
        for w in &report.warnings {
            let _ = writeln!(out, "  {w}");
        }
    }
    Ok((out, code))
}

fn obstructions(
    from: &EvolutionAlgebra,
    to: &EvolutionAlgebra,
    format: Format,
) -> Result<(String, u8), UsageError> {
    let r = degeneration::obstructions(from, to)?;
    if format == Format::Json {
        return ok(json_out(&json!({
            "ann": { "from": r.ann_dims.0, "to": r.ann_dims.1, "pass": r.ann_pass() },
            "type": { "from": r.type_lex.0.parts, "to": r.type_lex.1.parts, "pass": r.type_pass() },
            "square": { "from": r.square_dims.0, "to": r.square_dims.1, "pass": r.square_pass() },
            "b2": { "from": r.b2_dims.0, "to": r.b2_dims.1, "pass": r.b2_pass() },
            "h2": { "from": r.h2_dims.0, "to": r.h2_dims.1, "pass": r.h2_pass() },
            "all_pass": r.all_pass,
        })));
    }
    let verdict = |pass: bool| if pass { "pass" } else { "fail" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "ann dims: from {} <= to {}: {}",
        r.ann_dims.0,
        r.ann_dims.1,
        verdict(r.ann_pass())
    );
    let _ = writeln!(
        out,
        "type: {} lex<= {}: {}",
        r.type_lex.0,
        r.type_lex.1,
        verdict(r.type_pass())
    );
    let _ = writeln!(
        out,
        "square dims: to {} <= from {}: {}",
        r.square_dims.1,
        r.square_dims.0,
        verdict(r.square_pass())
    );
    let _ = writeln!(
        out,
        "b2 dims: from {} >= to {}: {}",
        r.b2_dims.0,
        r.b2_dims.1,
        verdict(r.b2_pass())
    );
    let _ = writeln!(
        out,
        "h2 dims: from {} <= to {}: {}",
        r.h2_dims.0,
        r.h2_dims.1,
        verdict(r.h2_pass())
    );
    let _ = writeln!(out, "all pass: {}", r.all_pass);
    ok(out)
}

fn search(
    from: &EvolutionAlgebra,
    to: &EvolutionAlgebra,
    bounds: &SearchBounds,
    skip_obstructions: bool,
    format: Format,
) -> Result<(String, u8), UsageError> {
    let found = degeneration::search_witness(from, to, bounds, skip_obstructions)?;
    match found {
        None => {
            if format == Format::Json {
                return Ok((json_out(&json!({ "found": false })), 1));
            }
            Ok(("found: false\n".into(), 1))
        }
        Some(g) => {
            let report = degeneration::verify_degeneration(from, &g, to)?;
            if format == Format::Json {
                // The `family` value is a complete family file: extract it
                // and feed it back through `degenerate --g`.
                return Ok((
                    json_out(&json!({
                        "found": true,
                        "family": FamilyFile::from_family(&g),
                        "status": report.status.to_string(),
                    })),
                    0,
                ));
            }
            let mut out = String::from("found: true\nfamily:\n");
            out.push_str(&matrix_lines(g.matrix()));
            let _ = writeln!(out, "status: {}", report.status);
            Ok((out, 0))
        }
    }
}

// ---------------------------------------------------------------------------
// Catalog-wide reports

fn catalog_listing(dim: Option<usize>, format: Format) -> Result<(String, u8), UsageError> {
    let entries: Vec<_> = catalog::all_entries()
        .into_iter()
        .filter(|e| dim.is_none_or(|d| e.algebra.dim() == d))
        .collect();
    if format == Format::Json {
        // Each row is a complete algebra file (plus the parameter values it
        // was instantiated with), so rows can be saved and fed back in.
        let rows: Vec<Value> = entries
            .iter()
            .map(|e| {
                let mut row = serde_json::to_value(MatrixFile::from_algebra(&e.algebra))
                    .expect("strings are serializable");
                if let Some(params) = &e.parameters {
                    let rendered: std::collections::BTreeMap<String, String> = params
                        .iter()
                        .map(|(k, v)| (k.clone(), v.to_string()))
                        .collect();
                    row["parameters"] =
                        serde_json::to_value(rendered).expect("strings are serializable");
                }
                row
            })
            .collect();
        return ok(json_out(&json!({ "entries": rows })));
    }
    let mut out = String::new();
    for e in &entries {
        let _ = writeln!(out, "{}: dim {}", e.label, e.algebra.dim());
    }
    ok(out)
}

fn hasse(dim: usize, format: Format) -> Result<(String, u8), UsageError> {
    match format {
        Format::Dot => ok(catalog::hasse_dot(dim)?),
        Format::Json => {
            let edges: Vec<Value> = catalog::hasse_verified_edges(dim)?
                .into_iter()
                .map(|(from, to, verified)| json!({ "from": from, "to": to, "verified": verified }))
                .collect();
            ok(json_out(&json!({
                "dim": dim,
                "nodes": catalog::nilpotent_labels(dim)?,
                "edges": edges,
            })))
        }
        Format::Text => {
            let mut out = String::new();
            for (from, to, verified) in catalog::hasse_verified_edges(dim)? {
                let mark = if verified { "verified" } else { "unverified" };
                let _ = writeln!(out, "{from} -> {to} [{mark}]");
            }
            ok(out)
        }
    }
}

fn verify_catalog(format: Format) -> Result<(String, u8), UsageError> {
    let summary = catalog::verify_all_witnesses()?;
    let checks = catalog::check_all_entries();
    let group = |prefix: &str| -> Vec<&catalog::InvariantCheck> {
        checks
            .iter()
            .filter(|c| c.label.starts_with(prefix))
            .collect()
    };
    let nilpotent = group("mu_");
    let two_dim = group("E");
    let examples = group("ex");
    let all_ok = summary.all_verified() && checks.iter().all(|c| c.ok);
    let code = u8::from(!all_ok);

    if format == Format::Json {
        let outcomes: Vec<Value> = summary
            .outcomes
            .iter()
            .map(|o| {
                json!({
                    "from": o.from_label,
                    "to": o.to_label,
                    "status": o.status.to_string(),
                    "warnings": o.warnings,
                })
            })
            .collect();
        let section = |rows: &[&catalog::InvariantCheck]| -> Value {
            let items: Vec<Value> = rows
                .iter()
                .map(|c| json!({ "label": c.label, "ok": c.ok, "detail": c.detail }))
                .collect();
            json!({
                "passed": rows.iter().filter(|c| c.ok).count(),
                "total": rows.len(),
                "rows": items,
            })
        };
        return Ok((
            json_out(&json!({
                "ok": all_ok,
                "witnesses": {
                    "verified": summary.verified,
                    "total": summary.total,
                    "outcomes": outcomes,
                },
                "nilpotent": section(&nilpotent),
                "two_dimensional": section(&two_dim),
                "examples": section(&examples),
            })),
            code,
        ));
    }

    let mut out = String::new();
    let _ = writeln!(out, "== witnesses ==");
    let _ = writeln!(out, "{summary}");
    let section = |out: &mut String, title: &str, rows: &[&catalog::InvariantCheck]| {
        let _ = writeln!(out, "== {title} ==");
        for c in rows {
            match &c.detail {
                None => {
                    let _ = writeln!(out, "{}: ok", c.label);
                }
                Some(d) => {
                    let _ = writeln!(out, "{}: MISMATCH ({d})", c.label);
                }
            }
        }
        let passed = rows.iter().filter(|c| c.ok).count();
        let _ = writeln!(out, "{passed}/{} ok", rows.len());
    };
    section(&mut out, "nilpotent invariants", &nilpotent);
    section(&mut out, "two-dimensional cohomology", &two_dim);
    section(&mut out, "worked examples", &examples);
    let _ = writeln!(
        out,
        "{}",
        if all_ok {
            "all checks passed"
        } else {
            "some checks failed"
        }
    );
    Ok((out, code))
}
