//! Command-line front end. Every subcommand prints JSON (or CSV for
//! `survey --format csv`) with floats at 17 significant digits.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 internal failure or a
//! counterexample to the tightness theorem.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Number, Value};

use crate::clifford::CliffordGroup;
use crate::decompose::{decompose, Decomposition};
use crate::error::{Error, Result};
use crate::facets::{polytope_membership, Facet, FacetSet, Membership};
use crate::postselect::{octahedron_membership, postselect_matrix, postselect_oracle_noisy, Octahedron, Outcome, TwoQubitPauli};
use crate::so3::{rotation_from_unitary, unitary_from_angles, GateAngles, Mat3, Rotation3, Unitary2};
use crate::threshold::{threshold, threshold_survey_streaming, SurveyGrid, SurveyRecord};
use crate::verify::{run_verification, VerificationReport, VerifyConfig};

#[derive(Parser, Debug)]
#[command(name = "clifford-polytope", version, about = "Depolarizing-noise thresholds against the Clifford polytope")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The 24 Clifford rotations as signed permutation matrices.
    Cliffords,
    /// All 120 facets of the Clifford polytope.
    Facets,
    /// Facet test for a gate or matrix.
    Membership(NoisyGate),
    /// Convex combination of Clifford vertices, if one exists.
    Decompose(NoisyGate),
    /// Tight depolarizing threshold of a gate.
    Threshold(GateArgs),
    /// Thresholds over a regular (θ, γ, δ) grid.
    Survey(SurveyArgs),
    /// Gate on half a Bell pair, then a two-qubit Pauli measurement.
    Postselect(PostselectArgs),
    /// Check the tightness theorem on random and structured rotations.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GateArgs {
    /// θ,γ,δ in radians.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    angles: Option<Vec<f64>>,
    /// 2×2 unitary, row-major re,im pairs (8 numbers).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    unitary: Option<Vec<f64>>,
    /// 3×3 matrix, row-major (9 numbers).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    matrix: Option<Vec<f64>>,
}

#[derive(Args, Debug)]
struct NoisyGate {
    #[command(flatten)]
    gate: GateArgs,
    /// Depolarizing rate p; the gate becomes (1-p)R.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct SurveyArgs {
    /// Points per axis as TxGxD, e.g. 16x32x32.
    #[arg(long)]
    grid: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args, Debug)]
struct PostselectArgs {
    #[command(flatten)]
    gate: NoisyGate,
    /// Weight-two Pauli, e.g. YX.
    #[arg(long, default_value = "YX")]
    meas: String,
    /// +1 or -1.
    #[arg(long, default_value = "+1", allow_hyphen_values = true)]
    outcome: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Skip the structured stress set.
    #[arg(long)]
    no_stress: bool,
}

enum Gate {
    Unitary(Unitary2),
    Matrix(Mat3),
}

impl GateArgs {
    fn resolve(&self) -> Result<Gate> {
        if let Some(a) = &self.angles {
            let [t, g, d] = fixed::<3>("--angles", a)?;
            return Ok(Gate::Unitary(unitary_from_angles(&GateAngles::new(t, g, d)?)?));
        }
        if let Some(u) = &self.unitary {
            return Ok(Gate::Unitary(Unitary2::from_re_im(&fixed::<8>("--unitary", u)?)?));
        }
        let m = fixed::<9>("--matrix", self.matrix.as_deref().unwrap_or_default())?;
        if m.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("--matrix entries must be finite".into()));
        }
        Ok(Gate::Matrix(Mat3::from_row_major(&m)))
    }

    fn rotation(&self) -> Result<Rotation3> {
        match self.resolve()? {
            Gate::Unitary(u) => rotation_from_unitary(&u),
            Gate::Matrix(m) => Rotation3::new(m),
        }
    }
}

impl NoisyGate {
    fn check_noise(&self) -> Result<f64> {
        if (0.0..=1.0).contains(&self.noise) {
            Ok(self.noise)
        } else {
            Err(Error::InvalidArgument(format!("--noise must lie in [0, 1], got {}", self.noise)))
        }
    }

    /// `(1-p)` times the gate's 3×3 block; matrices are taken as given.
    fn matrix(&self) -> Result<Mat3> {
        let p = self.check_noise()?;
        let m = match self.gate.resolve()? {
            Gate::Unitary(u) => *rotation_from_unitary(&u)?.as_mat(),
            Gate::Matrix(m) => m,
        };
        Ok(m.scale(1.0 - p))
    }
}

fn fixed<const N: usize>(flag: &str, values: &[f64]) -> Result<[f64; N]> {
    values
        .try_into()
        .map_err(|_| Error::InvalidArgument(format!("{flag} takes {N} comma-separated numbers, got {}", values.len())))
}

/// A float with 17 significant digits. Non-finite values become `null`.
pub fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let x = if x == 0.0 { 0.0 } else { x };
    Value::Number(format!("{x:.16e}").parse::<Number>().expect("formatted float is a JSON number"))
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

fn facet_json(f: &Facet) -> Value {
    json!({ "id": f.id, "kind": f.kind.name(), "matrix": f.matrix.iter().flatten().collect::<Vec<_>>() })
}

fn cliffords_json() -> Value {
    Value::Array(
        CliffordGroup::get()
            .elements()
            .iter()
            .map(|c| json!({ "index": c.index, "matrix": c.row_major() }))
            .collect(),
    )
}

fn facets_json() -> Value {
    Value::Array(FacetSet::get().all().iter().map(facet_json).collect())
}

fn membership_json(m: &Mat3) -> Value {
    match polytope_membership(m) {
        Membership::Inside { max_inner_product } => {
            json!({ "inside": true, "max_inner_product": num(max_inner_product), "witness": null })
        }
        Membership::Outside { witness, value } => {
            json!({ "inside": false, "max_inner_product": num(value), "witness": facet_json(&witness) })
        }
    }
}

fn decompose_json(m: &Mat3) -> Result<Value> {
    Ok(match decompose(m)? {
        Decomposition::Feasible(w) => json!({
            "feasible": true,
            "weights": nums(&w.weights),
            "reconstruction_error": num(w.reconstruction_error),
        }),
        Decomposition::Infeasible { residual } => json!({
            "feasible": false,
            "weights": null,
            "reconstruction_error": null,
            "residual": num(residual),
        }),
    })
}

fn threshold_json(r: &Rotation3) -> Value {
    let rep = threshold(r);
    json!({
        "rotation": nums(&r.as_mat().row_major()),
        "max_inner_product": num(rep.max_inner_product),
        "p_star": num(rep.p_star),
        "witness": facet_json(&rep.witness),
    })
}

fn postselect_json(args: &PostselectArgs) -> Result<Value> {
    let meas: TwoQubitPauli = args.meas.parse()?;
    let outcome: Outcome = args.outcome.parse()?;
    let p = args.gate.check_noise()?;
    let post = match args.gate.gate.resolve()? {
        Gate::Unitary(u) => postselect_oracle_noisy(&u, p, meas, outcome)?,
        Gate::Matrix(_) => postselect_matrix(&args.gate.matrix()?, meas, outcome)?,
    };
    Ok(json!({
        "bloch": nums(&post.bloch.to_array()),
        "accept_probability": num(post.accept_probability),
        "l1_norm": num(post.bloch.l1_norm()),
        "outside_octahedron": octahedron_membership(&post.bloch) == Octahedron::Outside,
    }))
}

fn survey_row_json(r: &SurveyRecord) -> Value {
    json!({
        "theta": num(r.angles.theta),
        "gamma": num(r.angles.gamma),
        "delta": num(r.angles.delta),
        "max_inner_product": num(r.report.max_inner_product),
        "p_star": num(r.report.p_star),
        "witness_id": r.report.witness.id,
        "witness_kind": r.report.witness.kind.name(),
    })
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

const CSV_COLUMNS: [&str; 7] = ["theta", "gamma", "delta", "max_inner_product", "p_star", "witness_id", "witness_kind"];

fn parse_grid(s: &str) -> Result<SurveyGrid> {
    let parts: Vec<usize> = s
        .split(['x', 'X'])
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("--grid expects TxGxD, got {s:?}")))?;
    match parts[..] {
        [n] => SurveyGrid::cube(n),
        [t, g, d] => SurveyGrid::new(t, g, d),
        _ => Err(Error::InvalidArgument(format!("--grid expects TxGxD, got {s:?}"))),
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::InvalidArgument("--workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start {workers} workers: {e}")))
}

enum Failure {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn write_survey(args: &SurveyArgs, out: &mut Vec<u8>) -> std::result::Result<(), Failure> {
    let grid = parse_grid(&args.grid)?;
    let pool = pool(args.workers)?;
    let mut first = true;
    match args.format {
        Format::Csv => writeln!(out, "{}", CSV_COLUMNS.join(","))?,
        Format::Json => write!(out, "[")?,
    }
    pool.install(|| {
        threshold_survey_streaming::<Failure, _>(&grid, 4096, |rec| {
            let row = survey_row_json(rec);
            match args.format {
                Format::Csv => {
                    let fields: Vec<String> = CSV_COLUMNS.iter().map(|c| csv_field(&row[*c])).collect();
                    writeln!(out, "{}", fields.join(","))?;
                }
                Format::Json => {
                    write!(out, "{}\n  {}", if first { "" } else { "," }, row)?;
                    first = false;
                }
            }
            Ok(())
        })
    })?;
    if let Format::Json = args.format {
        writeln!(out, "{}]", if first { "" } else { "\n" })?;
    }
    Ok(())
}

fn verify_json(rep: &VerificationReport) -> Value {
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            json!({
                "source": v.source.name(),
                "index": v.index,
                "check": v.check,
                "value": num(v.value),
                "detail": v.detail,
            })
        })
        .collect();
    json!({
        "samples": rep.samples,
        "stress_samples": rep.stress_samples,
        "min_gap": num(rep.min_gap),
        "min_margin": num(rep.min_margin),
        "sign_pattern_histogram": rep.sign_pattern_histogram,
        "no_match": rep.no_match,
        "violations": violations,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn write_file(path: &PathBuf, bytes: &[u8]) -> io::Result<()> {
    let mut f = BufWriter::new(File::create(path)?);
    f.write_all(bytes)?;
    f.flush()
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let value = match cli.command {
        Command::Cliffords => cliffords_json(),
        Command::Facets => facets_json(),
        Command::Membership(g) => membership_json(&g.matrix()?),
        Command::Decompose(g) => decompose_json(&g.matrix()?)?,
        Command::Threshold(g) => threshold_json(&g.rotation()?),
        Command::Postselect(a) => postselect_json(&a)?,
        Command::Survey(a) => {
            // Built in memory so a failure never leaves partial output.
            let mut buf = Vec::new();
            write_survey(&a, &mut buf)?;
            match &a.out {
                Some(path) => write_file(path, &buf)?,
                None => out.write_all(&buf)?,
            }
            return Ok(0);
        }
        Command::Verify(a) => {
            let config = VerifyConfig { samples: a.samples, seed: a.seed, workers: a.workers, include_stress: !a.no_stress };
            let rep = run_verification(&config)?;
            let text = pretty(&verify_json(&rep));
            if let Some(path) = &a.report {
                write_file(path, text.as_bytes())?;
            }
            out.write_all(text.as_bytes())?;
            return Ok(if rep.passed() { 0 } else { 2 });
        }
    };
    out.write_all(pretty(&value).as_bytes())?;
    Ok(0)
}

/// Runs the CLI with explicit output streams. Returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                1
            } else {
                2
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let code = run_with(argv, &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}
