//! `mono3` — evaluate monogenic extensions over point grids and run the
//! numerical verifiers from the command line.
//!
//! Exit codes: 0 success (or verification passed), 1 verification failed or
//! invalid basis, 2 configuration/parse error, 3 evaluation error (the
//! message names the failing point).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mono3_core::{
    A3, BasisFile, Complex, Contour, DirectionError, DirectionSet, EvalMode, HoloFn, MonogenicFn,
    SampledFn, Subspace, SubspaceError, VerifyError, check_kprime, check_laplace, check_lorch,
    eval_monogenic, grid_verify,
};

/// Laplacian residuals below this are rounding noise, not signal: the
/// step-halving ratio is only meaningful above it.
const LAPLACE_NOISE_FLOOR: f64 = 1e-8;

#[derive(Parser)]
#[command(
    name = "mono3",
    version,
    about = "Monogenic functions valued in C[rho]/(rho^3): extensions and verifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Ext(F0) + rho*Ext(F1) + rho^2*Ext(F2) over points, CSV out
    Extend(ExtendArgs),
    /// Numerical monogenicity checks, JSON report out
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Create and validate basis files
    #[command(subcommand)]
    Basis(BasisCmd),
}

#[derive(Args)]
struct ExtendArgs {
    /// Basis JSON file (default: the harmonic basis [1, i+(i/2)rho^2, rho])
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long, default_value = "z")]
    f0: String,
    #[arg(long, default_value = "0")]
    f1: String,
    #[arg(long, default_value = "0")]
    f2: String,
    /// Grid spec "min:max:count,..." (one block per axis) or a CSV file of
    /// points, one comma-separated row each
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    #[arg(long, value_enum, default_value_t = Method::Formula)]
    method: Method,
    /// Contour centre "re,im" (default: the f-image of each point)
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    radius: f64,
    #[arg(long, default_value_t = 64)]
    nodes: usize,
    /// Output file (default: stdout)
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Integral,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Directional difference-quotient check at seeded sample points
    Kprime(KprimeArgs),
    /// Uniform remainder check for a measured candidate derivative
    Lorch(LorchArgs),
    /// Finite-difference Laplacian of the six real components (k = 3)
    Laplace(LaplaceArgs),
}

#[derive(Args)]
struct KprimeArgs {
    /// "ext:EXPR", "path:conj_f", "path:abs_f" or "path:radical_noise[:EXPR]"
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Number of random sample points
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Sample box "lo:hi,..." (one block per axis; default -1:1 everywhere)
    #[arg(long = "box", allow_hyphen_values = true)]
    sample_box: Option<String>,
    /// Direction set JSON {"h": [[...], ...]} (default: canonical)
    #[arg(long)]
    directions: Option<PathBuf>,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// RNG seed; overrides MONO3_SEED (default 0)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LorchArgs {
    /// Same forms as `verify kprime --fn`
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    basis: Option<PathBuf>,
    /// Base point "x1,...,xk" (default: origin)
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Shrinking radii for the remainder quotient
    #[arg(long, default_value = "1e-2,1e-3,1e-4")]
    deltas: String,
    /// Sphere directions per radius
    #[arg(long, default_value_t = 32)]
    samples: usize,
    /// Pass when the residual at the smallest radius is below this
    #[arg(long, default_value_t = 1e-3)]
    tol: f64,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct LaplaceArgs {
    #[arg(long)]
    basis: Option<PathBuf>,
    #[arg(long, default_value = "z^3")]
    f0: String,
    /// Stencil centre "x1,x2,x3"
    #[arg(long, default_value = "0.3,0.2,0.1", allow_hyphen_values = true)]
    point: String,
    /// Stencil step; the report compares h against h/2
    #[arg(long, default_value_t = 1e-2)]
    h: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BasisCmd {
    /// Emit the harmonic family basis [1, i + (i b3^2/2) rho^2, b3 rho + c3 rho^2]
    Harmonic(HarmonicArgs),
    /// Validate a basis file and report its shape
    Check { file: PathBuf },
}

#[derive(Args)]
struct HarmonicArgs {
    /// Radical slope b3 as "re,im" (must be nonzero)
    #[arg(long, allow_hyphen_values = true)]
    b3: String,
    /// Radical offset c3 as "re,im"
    #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
    c3: String,
    #[arg(long)]
    output: Option<PathBuf>,
}

struct Failure {
    code: u8,
    message: Option<String>,
}

impl Failure {
    fn verdict() -> Failure {
        Failure {
            code: 1,
            message: None,
        }
    }
    fn invalid(msg: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: Some(msg.into()),
        }
    }
    fn config(msg: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: Some(msg.into()),
        }
    }
    fn eval(msg: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: Some(msg.into()),
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if let Some(message) = &failure.message {
                eprintln!("error: {message}");
            }
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Extend(args) => cmd_extend(args),
        Command::Verify(VerifyCmd::Kprime(args)) => cmd_kprime(args),
        Command::Verify(VerifyCmd::Lorch(args)) => cmd_lorch(args),
        Command::Verify(VerifyCmd::Laplace(args)) => cmd_laplace(args),
        Command::Basis(BasisCmd::Harmonic(args)) => cmd_basis_harmonic(args),
        Command::Basis(BasisCmd::Check { file }) => cmd_basis_check(&file),
    }
}

// ---- shared plumbing -------------------------------------------------------

fn parse_f64(text: &str) -> Result<f64, Failure> {
    text.trim()
        .parse()
        .map_err(|_| Failure::config(format!("bad number {text:?}")))
}

fn parse_complex_pair(text: &str) -> Result<Complex, Failure> {
    let (re, im) = text
        .split_once(',')
        .ok_or_else(|| Failure::config(format!("expected \"re,im\", got {text:?}")))?;
    Ok(Complex::new(parse_f64(re)?, parse_f64(im)?))
}

fn parse_coords(text: &str, expected: usize) -> Result<Vec<f64>, Failure> {
    let coords: Vec<f64> = text
        .split(',')
        .map(parse_f64)
        .collect::<Result<_, _>>()?;
    if coords.len() != expected {
        return Err(Failure::config(format!(
            "expected {expected} coordinates, got {} in {text:?}",
            coords.len()
        )));
    }
    Ok(coords)
}

fn parse_holo(text: &str) -> Result<HoloFn, Failure> {
    text.parse()
        .map_err(|e| Failure::config(format!("cannot parse {text:?}: {e}")))
}

fn subspace_reason(e: &SubspaceError) -> &'static str {
    match e {
        SubspaceError::BadDimension { .. } => "BadDimension",
        SubspaceError::NotSurjective => "NotSurjective",
        SubspaceError::DependentBasis => "DependentBasis",
        SubspaceError::DimensionMismatch { .. } => "DimensionMismatch",
    }
}

fn direction_reason(e: &DirectionError) -> &'static str {
    match e {
        DirectionError::WrongCount { .. } => "WrongCount",
        DirectionError::WrongLength { .. } => "WrongLength",
        DirectionError::ZeroDirection { .. } => "ZeroDirection",
        DirectionError::CollinearImages => "CollinearImages",
        DirectionError::OutsideRadicalPlane { .. } => "OutsideRadicalPlane",
        DirectionError::DeficientRadicalSpan => "DeficientRadicalSpan",
    }
}

enum BasisLoad {
    Ok(Subspace),
    Malformed(String),
    Invalid(SubspaceError),
}

fn load_basis(path: Option<&PathBuf>) -> BasisLoad {
    let Some(path) = path else {
        let s = Subspace::harmonic_family(Complex::new(1.0, 0.0), Complex::new(0.0, 0.0))
            .expect("builtin harmonic basis is valid");
        return BasisLoad::Ok(s);
    };
    let text = match fs::read_to_string(path) {
        Ok(text) => text,
        Err(e) => return BasisLoad::Malformed(format!("cannot read {}: {e}", path.display())),
    };
    let file: BasisFile = match serde_json::from_str(&text) {
        Ok(file) => file,
        Err(e) => return BasisLoad::Malformed(format!("cannot parse {}: {e}", path.display())),
    };
    match file.build() {
        Ok(s) => BasisLoad::Ok(s),
        Err(e) => BasisLoad::Invalid(e),
    }
}

/// For commands that merely consume a basis, any defect is a config error.
fn require_basis(path: Option<&PathBuf>) -> Result<Subspace, Failure> {
    match load_basis(path) {
        BasisLoad::Ok(s) => Ok(s),
        BasisLoad::Malformed(msg) => Err(Failure::config(msg)),
        BasisLoad::Invalid(e) => Err(Failure::config(format!(
            "invalid basis: {} ({e})",
            subspace_reason(&e)
        ))),
    }
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("MONO3_SEED") {
        Ok(value) => value
            .trim()
            .parse()
            .map_err(|_| Failure::config(format!("MONO3_SEED is not an integer: {value:?}"))),
        Err(_) => Ok(0),
    }
}

fn parse_sampled(spec: &str, s: &Subspace) -> Result<SampledFn, Failure> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Failure::config("--fn expects \"ext:EXPR\" or \"path:NAME\""))?;
    match kind {
        "ext" => Ok(SampledFn::Extension(MonogenicFn::extension_of(
            s.clone(),
            parse_holo(rest)?,
        ))),
        "path" => match rest {
            "conj_f" => Ok(SampledFn::ConjF),
            "abs_f" => Ok(SampledFn::AbsF),
            "radical_noise" => Ok(SampledFn::RadicalNoise(parse_holo("exp(z)")?)),
            other => {
                if let Some(expr) = other.strip_prefix("radical_noise:") {
                    Ok(SampledFn::RadicalNoise(parse_holo(expr)?))
                } else {
                    Err(Failure::config(format!(
                        "unknown pathology {other:?} (conj_f, abs_f, radical_noise)"
                    )))
                }
            }
        },
        other => Err(Failure::config(format!(
            "unknown function kind {other:?} (ext, path)"
        ))),
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

// ---- extend ----------------------------------------------------------------

fn parse_grid_axis(block: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = block.split(':').collect();
    if parts.len() != 3 {
        return Err(Failure::config(format!(
            "grid axis must be min:max:count, got {block:?}"
        )));
    }
    let (min, max) = (parse_f64(parts[0])?, parse_f64(parts[1])?);
    let count: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Failure::config(format!("bad grid count {:?}", parts[2])))?;
    if count == 0 {
        return Err(Failure::config("grid counts must be at least 1"));
    }
    if count == 1 {
        return Ok(vec![min]);
    }
    let step = (max - min) / (count - 1) as f64;
    Ok((0..count).map(|i| min + step * i as f64).collect())
}

/// Cartesian product with the first axis slowest.
fn grid_points(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![Vec::new()];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for prefix in &out {
            for &v in axis {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn load_points(spec: &str, k: usize) -> Result<Vec<Vec<f64>>, Failure> {
    if spec.contains(':') {
        let axes: Vec<Vec<f64>> = spec
            .split(',')
            .map(parse_grid_axis)
            .collect::<Result<_, _>>()?;
        if axes.len() != k {
            return Err(Failure::config(format!(
                "grid has {} axes but the basis has dimension {k}",
                axes.len()
            )));
        }
        return Ok(grid_points(&axes));
    }
    let text = fs::read_to_string(spec)
        .map_err(|e| Failure::config(format!("cannot read points file {spec:?}: {e}")))?;
    let mut points = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        points.push(parse_coords(line, k)?);
    }
    if points.is_empty() {
        return Err(Failure::config("points file is empty"));
    }
    Ok(points)
}

fn point_label(p: &[f64]) -> String {
    let joined: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
    format!("({})", joined.join(", "))
}

fn cmd_extend(args: ExtendArgs) -> Result<(), Failure> {
    let s = require_basis(args.basis.as_ref())?;
    let k = s.k();
    let m = MonogenicFn::new(
        s.clone(),
        parse_holo(&args.f0)?,
        parse_holo(&args.f1)?,
        parse_holo(&args.f2)?,
    );
    let fixed_center = args.center.as_deref().map(parse_complex_pair).transpose()?;
    let points = load_points(&args.points, k)?;

    let mut csv = String::new();
    for i in 1..=k {
        csv.push_str(&format!("x{i},"));
    }
    csv.push_str("re0,im0,re1,im1,re2,im2\n");

    for p in &points {
        let mode = match args.method {
            Method::Formula => EvalMode::ClosedForm,
            Method::Integral => {
                let center = match fixed_center {
                    Some(c) => c,
                    None => s
                        .embed(p)
                        .map_err(|e| Failure::eval(format!("point {}: {e}", point_label(p))))?
                        .f(),
                };
                let contour = Contour::new(center, args.radius, args.nodes)
                    .map_err(|e| Failure::config(format!("bad contour: {e}")))?;
                EvalMode::Quadrature(contour)
            }
        };
        let value = eval_monogenic(&m, p, &mode).map_err(|e| {
            Failure::eval(format!(
                "point {}: {} ({e})",
                point_label(p),
                extension_reason(&e)
            ))
        })?;
        for x in p {
            csv.push_str(&format!("{x},"));
        }
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            value.a.re, value.a.im, value.b.re, value.b.im, value.c.re, value.c.im
        ));
    }
    emit(args.output.as_ref(), &csv)
}

fn extension_reason(e: &mono3_core::ExtensionError) -> &'static str {
    use mono3_core::ExtensionError as E;
    match e {
        E::InvalidRadius { .. } => "InvalidRadius",
        E::TooFewNodes { .. } => "TooFewNodes",
        E::PointTooCloseToContour { .. } => "PointTooCloseToContour",
        E::Eval(_) => "Eval",
        E::Algebra(_) => "Algebra",
        E::Subspace(_) => "Subspace",
    }
}

// ---- verify ----------------------------------------------------------------

fn parse_box(spec: Option<&str>, k: usize) -> Result<Vec<(f64, f64)>, Failure> {
    let Some(spec) = spec else {
        return Ok(vec![(-1.0, 1.0); k]);
    };
    let mut out = Vec::new();
    for block in spec.split(',') {
        let (lo, hi) = block
            .split_once(':')
            .ok_or_else(|| Failure::config(format!("box axis must be lo:hi, got {block:?}")))?;
        let (lo, hi) = (parse_f64(lo)?, parse_f64(hi)?);
        if lo >= hi {
            return Err(Failure::config(format!("empty box axis {block:?}")));
        }
        out.push((lo, hi));
    }
    if out.len() != k {
        return Err(Failure::config(format!(
            "box has {} axes but the basis has dimension {k}",
            out.len()
        )));
    }
    Ok(out)
}

fn load_directions(path: Option<&PathBuf>, s: &Subspace) -> Result<DirectionSet, Failure> {
    let Some(path) = path else {
        return Ok(s.canonical_directions());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::config(format!("cannot parse {}: {e}", path.display())))
}

fn verify_failure(e: VerifyError) -> Failure {
    match e {
        VerifyError::InvalidDirections(d) => {
            Failure::config(format!("{}: {d}", direction_reason(&d)))
        }
        other => Failure::eval(other.to_string()),
    }
}

fn cmd_kprime(args: KprimeArgs) -> Result<(), Failure> {
    let s = require_basis(args.basis.as_ref())?;
    let phi = parse_sampled(&args.function, &s)?;
    let sample_box = parse_box(args.sample_box.as_deref(), s.k())?;
    let directions = load_directions(args.directions.as_ref(), &s)?;
    if args.points == 0 {
        return Err(Failure::config("--points must be at least 1"));
    }
    if args.tol <= 0.0 {
        return Err(Failure::config("--tol must be positive"));
    }
    let seed = resolve_seed(args.seed)?;
    let summary = grid_verify(
        &phi,
        &s,
        &sample_box,
        args.points,
        &directions,
        args.tol,
        seed,
    )
    .map_err(verify_failure)?;
    let mut text = serde_json::to_string_pretty(&summary)
        .expect("summary serializes");
    text.push('\n');
    emit(args.output.as_ref(), &text)?;
    if summary.pass_fraction == 1.0 {
        Ok(())
    } else {
        Err(Failure::verdict())
    }
}

#[derive(Serialize)]
struct LorchReport {
    point: Vec<f64>,
    phi_star: A3,
    deltas: Vec<f64>,
    residuals: Vec<f64>,
    verdict: &'static str,
}

fn cmd_lorch(args: LorchArgs) -> Result<(), Failure> {
    let s = require_basis(args.basis.as_ref())?;
    let phi = parse_sampled(&args.function, &s)?;
    let point = match args.point.as_deref() {
        Some(text) => parse_coords(text, s.k())?,
        None => vec![0.0; s.k()],
    };
    let deltas: Vec<f64> = args
        .deltas
        .split(',')
        .map(parse_f64)
        .collect::<Result<_, _>>()?;
    if deltas.is_empty() || deltas.iter().any(|&d| d <= 0.0) {
        return Err(Failure::config("--deltas must be positive radii"));
    }
    if args.samples == 0 {
        return Err(Failure::config("--samples must be at least 1"));
    }
    let seed = resolve_seed(args.seed)?;

    // the candidate derivative is whatever the directional check extracts;
    // for a pathology the remainder then refuses to decay
    let report = check_kprime(&phi, &s, &point, &s.canonical_directions(), args.tol.max(1e-4))
        .map_err(verify_failure)?;
    let residuals: Vec<f64> = deltas
        .iter()
        .map(|&delta| {
            check_lorch(&phi, &s, &point, &report.phi_star, args.samples, delta, seed)
                .map_err(verify_failure)
        })
        .collect::<Result<_, _>>()?;

    let passed = *residuals.last().unwrap() <= args.tol;
    let out = LorchReport {
        point,
        phi_star: report.phi_star,
        deltas,
        residuals,
        verdict: if passed { "pass" } else { "fail" },
    };
    let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
    text.push('\n');
    emit(args.output.as_ref(), &text)?;
    if passed { Ok(()) } else { Err(Failure::verdict()) }
}

#[derive(Serialize)]
struct LaplaceReport {
    point: Vec<f64>,
    h: f64,
    residual_h: f64,
    residual_half_h: f64,
    ratio: f64,
    verdict: &'static str,
}

fn cmd_laplace(args: LaplaceArgs) -> Result<(), Failure> {
    let s = require_basis(args.basis.as_ref())?;
    let m = MonogenicFn::extension_of(s.clone(), parse_holo(&args.f0)?);
    let point = parse_coords(&args.point, s.k())?;
    if args.h <= 0.0 {
        return Err(Failure::config("--h must be positive"));
    }
    let (residual_h, residual_half_h) = check_laplace(&m, &point, args.h).map_err(|e| match e {
        VerifyError::DimensionMismatch { k } => {
            Failure::config(format!("laplace needs a 3-dimensional basis, got k = {k}"))
        }
        other => verify_failure(other),
    })?;
    let ratio = residual_h / residual_half_h;
    // harmonic components: either both residuals sit at the rounding floor,
    // or they shrink at the O(h^2) rate
    let passed =
        residual_half_h <= LAPLACE_NOISE_FLOOR || (3.5..=4.5).contains(&ratio);
    let out = LaplaceReport {
        point,
        h: args.h,
        residual_h,
        residual_half_h,
        ratio,
        verdict: if passed { "pass" } else { "fail" },
    };
    let mut text = serde_json::to_string_pretty(&out).expect("report serializes");
    text.push('\n');
    emit(args.output.as_ref(), &text)?;
    if passed { Ok(()) } else { Err(Failure::verdict()) }
}

// ---- basis -----------------------------------------------------------------

fn cmd_basis_harmonic(args: HarmonicArgs) -> Result<(), Failure> {
    let b3 = parse_complex_pair(&args.b3)?;
    let c3 = parse_complex_pair(&args.c3)?;
    let s = Subspace::harmonic_family(b3, c3)
        .map_err(|e| Failure::invalid(format!("{}: {e}", subspace_reason(&e))))?;
    let file = BasisFile::from(&s);
    let mut text = serde_json::to_string_pretty(&file).expect("basis serializes");
    text.push('\n');
    emit(args.output.as_ref(), &text)
}

fn cmd_basis_check(path: &PathBuf) -> Result<(), Failure> {
    match load_basis(Some(path)) {
        BasisLoad::Malformed(msg) => Err(Failure::config(msg)),
        BasisLoad::Invalid(e) => Err(Failure::invalid(format!(
            "{}: {e}",
            subspace_reason(&e)
        ))),
        BasisLoad::Ok(s) => {
            let harmonic = if s.k() == 3 {
                match s.is_harmonic(1e-9) {
                    Ok(true) => "true",
                    Ok(false) => "false",
                    Err(_) => "n/a",
                }
            } else {
                "n/a"
            };
            println!(
                "k={}, radical dim {}, harmonic: {harmonic}",
                s.k(),
                s.radical_basis().len()
            );
            Ok(())
        }
    }
}
