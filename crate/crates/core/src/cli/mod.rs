//! The `singlab` command-line front end.
//!
//! Every command builds a JSON value first; `--format table` renders that
//! same value, so the two formats never disagree. Exit codes: 0 success or
//! verdict true, 1 verdict false, 2 parse or validation error, 3 unmet
//! precondition, 4 failed internal assertion.

pub mod check;
pub mod fixtures;
pub mod report;

use std::fmt;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::blowup::{hironaka_step, pham_milnor, BlowupError, MultiplicitySequence};
use crate::curve::{CurveError, ReducedCurve};
use crate::oracle::model::binomial_model;
use crate::oracle::param::{param_blowup, param_intersection, param_resolve};
use crate::oracle::{
    intersection_number, milnor_poly, tangent_count_poly, teissier_check, BivariatePoly, BranchParam, OracleError,
};
use crate::semigroup::{BranchSemigroup, SemigroupError};

pub use report::render_table;

#[derive(Parser, Debug, Clone)]
#[command(name = "singlab", version, about = "Exact invariants of plane curve singularities")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "SINGLAB_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Number of random cases or fixtures.
    #[arg(long, global = true)]
    pub count: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Read the input from a file, or from stdin with `-`.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Progress on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// All invariants of a curve, a semigroup or a binomial-product polynomial.
    Invariants {
        /// Inline input; otherwise `--input` or stdin.
        data: Option<String>,
    },
    /// Strict transforms as JSON lines, one object per step.
    Blowup {
        /// A number of steps, or `resolve`.
        #[arg(long, default_value = "1")]
        steps: String,
        data: Option<String>,
    },
    /// Run a named theorem-check suite.
    Check {
        #[arg(value_enum)]
        suite: check::Suite,
    },
    /// Equisingularity verdict for two curves.
    Equisingular {
        first: Option<String>,
        second: Option<String>,
    },
    /// Analytic computations on a polynomial or a parametrization.
    Oracle {
        #[arg(value_enum)]
        task: OracleTask,
        data: Option<String>,
        /// Second polynomial for `intersection`.
        #[arg(long)]
        with: Option<String>,
    },
    /// Emit random fixtures as JSON lines.
    Fixtures {
        #[arg(value_enum)]
        kind: fixtures::FixtureKind,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleTask {
    Milnor,
    Intersection,
    Tangents,
    Teissier,
    Semigroup,
    Blowup,
}

/// A failed command with its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub kind: &'static str,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        Self { code: 2, kind: "ParseError", message: message.into() }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self { code: 2, kind: "ValidationError", message: message.into() }
    }

    pub fn precondition(kind: &'static str, message: impl Into<String>) -> Self {
        Self { code: 3, kind, message: message.into() }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self { code: 4, kind: "AssertionFailure", message: message.into() }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": self.kind, "message": self.message })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        match e {
            CurveError::SmoothBranch | CurveError::KOutOfRange | CurveError::Parameters(_) => {
                CliError::precondition("PreconditionFailed", e.to_string())
            }
            CurveError::TooManyBranches(_) => CliError::precondition("TooManyBranches", e.to_string()),
            CurveError::Inconsistent(_) => CliError::internal(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        match e {
            BlowupError::NotUnitangent { .. } => CliError::precondition("NotUnitangent", e.to_string()),
            BlowupError::SmoothInput => CliError::precondition("SmoothInput", e.to_string()),
            BlowupError::NotRealizable(_) => CliError::precondition("NotRealizable", e.to_string()),
            BlowupError::InvalidSequence(_) | BlowupError::Semigroup(_) => CliError::validation(e.to_string()),
            BlowupError::Curve(c) => c.into(),
            BlowupError::AssertionFailure(_) | BlowupError::RecursionDepthExceeded => CliError::internal(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Parse { .. } => CliError::parse(e.to_string()),
            OracleError::ZeroPolynomial | OracleError::InvalidParam(_) | OracleError::NotPrimitive => {
                CliError::validation(e.to_string())
            }
            OracleError::Semigroup(s) => s.into(),
            OracleError::Curve(c) => c.into(),
            OracleError::TruncationExceeded { .. } => CliError::precondition("TruncationExceeded", e.to_string()),
            OracleError::NotReduced => CliError::precondition("NotReduced", e.to_string()),
            OracleError::NotThroughOrigin => CliError::precondition("NotThroughOrigin", e.to_string()),
            OracleError::SmoothBranch => CliError::precondition("SmoothBranch", e.to_string()),
            OracleError::Unsupported(_) => CliError::precondition("Unsupported", e.to_string()),
            OracleError::DegeneratePolar { .. } => CliError::precondition("DegeneratePolar", e.to_string()),
            OracleError::ShearNotFound | OracleError::FultonBudget => CliError::internal(e.to_string()),
        }
    }
}

/// Output of one invocation: lines for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

/// Parse arguments, run, print; the body of the `singlab` binary.
pub fn main_entry() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.exit_code()
}

/// Runs a parsed command without touching the process streams.
pub fn run(cli: &Cli) -> Outcome {
    let cfg = &cli.config;
    let mut stderr = String::new();
    let result = dispatch(cli, &mut stderr);
    match result {
        Ok((values, code)) => {
            let mut stdout = String::new();
            for v in &values {
                stdout.push_str(&emit(v, cfg.format));
            }
            Outcome { code, stdout, stderr }
        }
        Err(e) => {
            stderr.push_str(&format!("{e}\n"));
            Outcome { code: e.code, stdout: emit(&e.to_json(), cfg.format), stderr }
        }
    }
}

fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string(v).expect("JSON values serialize")),
        Format::Table => format!("{}\n", render_table(v)),
    }
}

type Emitted = (Vec<Value>, u8);

fn dispatch(cli: &Cli, stderr: &mut String) -> Result<Emitted, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Invariants { data } => {
            let curve = parse_curve(&read_input(data.as_deref(), cfg)?)?;
            Ok((vec![report::invariants(&curve)?], 0))
        }
        Command::Blowup { steps, data } => {
            let curve = parse_curve(&read_input(data.as_deref(), cfg)?)?;
            let steps = parse_steps(steps)?;
            Ok((blowup_track(&curve, steps)?, 0))
        }
        Command::Check { suite } => {
            let reports = check::run_suites(*suite, cfg.seed, cfg.count, cfg.verbose, stderr);
            let failed = reports.iter().any(|r| r.failed > 0);
            let values = reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
            Ok((values, if failed { 4 } else { 0 }))
        }
        Command::Equisingular { first, second } => {
            let (a, b) = match (first, second) {
                (Some(a), Some(b)) => (parse_curve(a)?, parse_curve(b)?),
                _ => pair_from_input(&read_input(first.as_deref(), cfg)?)?,
            };
            let verdict = a.equisingular(&b)?;
            let value = json!({ "equisingular": verdict.is_some(), "permutation": verdict });
            Ok((vec![value], if verdict.is_some() { 0 } else { 1 }))
        }
        Command::Oracle { task, data, with } => {
            let text = read_input(data.as_deref(), cfg)?;
            Ok((vec![oracle_task(*task, &text, with.as_deref(), cfg.seed)?], 0))
        }
        Command::Fixtures { kind } => Ok((fixtures::generate(*kind, cfg.seed, cfg.count), 0)),
    }
}

fn read_input(inline: Option<&str>, cfg: &RunConfig) -> Result<String, CliError> {
    if let Some(s) = inline {
        return Ok(s.to_string());
    }
    match cfg.input.as_deref() {
        Some("-") | None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::parse(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(path) => std::fs::read_to_string(path).map_err(|e| CliError::parse(format!("reading {path}: {e}"))),
    }
}

/// A curve from JSON (an array of generators or a curve object) or from a
/// product of binomials such as `(y^2-x^3)*(y^2-2*x^3)`.
pub fn parse_curve(text: &str) -> Result<ReducedCurve, CliError> {
    let t = text.trim();
    if t.starts_with('[') || t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| CliError::parse(e.to_string()))?;
        return curve_from_value(v);
    }
    if t.is_empty() {
        return Err(CliError::parse("empty input"));
    }
    Ok(binomial_model(t)?)
}

fn curve_from_value(v: Value) -> Result<ReducedCurve, CliError> {
    match v {
        Value::Array(_) => {
            let gens: Vec<u64> =
                serde_json::from_value(v).map_err(|e| CliError::parse(format!("semigroup: {e}")))?;
            Ok(ReducedCurve::branch(BranchSemigroup::new(gens)?))
        }
        Value::Object(_) => {
            serde_json::from_value(v).map_err(|e| CliError::validation(format!("curve: {e}")))
        }
        _ => Err(CliError::parse("expected a JSON array or object")),
    }
}

fn pair_from_input(text: &str) -> Result<(ReducedCurve, ReducedCurve), CliError> {
    let v: Value = serde_json::from_str(text.trim()).map_err(|e| CliError::parse(e.to_string()))?;
    match v {
        Value::Array(items) if items.len() == 2 && !items[0].is_u64() => {
            let mut it = items.into_iter();
            let a = curve_from_value(it.next().unwrap())?;
            let b = curve_from_value(it.next().unwrap())?;
            Ok((a, b))
        }
        _ => Err(CliError::parse("expected a JSON array of two curves")),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Steps {
    Count(usize),
    Resolve,
}

fn parse_steps(s: &str) -> Result<Steps, CliError> {
    if s == "resolve" {
        return Ok(Steps::Resolve);
    }
    s.parse()
        .map(Steps::Count)
        .map_err(|_| CliError::parse(format!("steps must be a number or `resolve`, got {s:?}")))
}

fn curve_line(step: usize, c: &ReducedCurve) -> Result<serde_json::Map<String, Value>, CliError> {
    let mut line = serde_json::Map::new();
    line.insert("step".into(), json!(step));
    line.insert("curve".into(), serde_json::to_value(c).expect("serializable"));
    line.insert("multiplicity".into(), json!(c.multiplicity()));
    line.insert("tangents".into(), json!(c.tangent_count()));
    line.insert("contact_exponent".into(), serde_json::to_value(c.contact_exponent()).unwrap());
    if c.branch_count() == 1 {
        let seq = MultiplicitySequence::of(&c.branches()[0]);
        line.insert("multiplicity_sequence".into(), serde_json::to_value(seq).unwrap());
    }
    let mu = c.milnor();
    let pham = pham_milnor(c)?;
    if pham != mu {
        return Err(CliError::internal(format!("Pham recursion gives {pham}, direct formula {mu}")));
    }
    line.insert("milnor".into(), json!(mu));
    line.insert("pham_milnor".into(), json!(pham));
    Ok(line)
}

/// The resolution track: line `k` describes the curve after `k` blowups and
/// carries the Hironaka report of the step that produced it.
pub fn blowup_track(curve: &ReducedCurve, steps: Steps) -> Result<Vec<Value>, CliError> {
    if let Steps::Count(n) = steps {
        if n > 0 && curve.is_smooth_branch() {
            return Err(BlowupError::SmoothInput.into());
        }
        if n > 0 && !curve.is_unitangent() {
            return Err(BlowupError::NotUnitangent { classes: curve.tangent_classes() }.into());
        }
    }
    let mut out = vec![Value::Object(curve_line(0, curve)?)];
    let mut c = curve.clone();
    let mut step = 0usize;
    loop {
        let stop = if c.is_smooth_branch() {
            Some("smooth")
        } else if !c.is_unitangent() {
            Some("separated")
        } else {
            None
        };
        match (steps, stop) {
            (Steps::Count(n), _) if step >= n => break,
            (Steps::Count(_), Some(_)) => {
                return Err(if c.is_smooth_branch() {
                    BlowupError::SmoothInput.into()
                } else {
                    BlowupError::NotUnitangent { classes: c.tangent_classes() }.into()
                });
            }
            (Steps::Resolve, Some(reason)) => {
                if let Value::Object(last) = out.last_mut().unwrap() {
                    last.insert("stop".into(), json!(reason));
                    if reason == "separated" {
                        last.insert("tangent_classes".into(), json!(c.tangent_classes()));
                    }
                }
                break;
            }
            _ => {}
        }
        let report = hironaka_step(&c)?;
        let next = report.transform.clone();
        step += 1;
        let mut line = curve_line(step, &next)?;
        line.insert("hironaka".into(), serde_json::to_value(&report).unwrap());
        out.push(Value::Object(line));
        c = next;
    }
    Ok(out)
}

fn parse_poly(text: &str) -> Result<BivariatePoly, CliError> {
    Ok(text.trim().parse::<BivariatePoly>()?)
}

fn parse_param(text: &str) -> Result<BranchParam, CliError> {
    serde_json::from_str(text.trim()).map_err(|e| {
        let msg = e.to_string();
        if msg.contains("not primitive") {
            CliError::validation(OracleError::NotPrimitive.to_string())
        } else {
            CliError::parse(msg)
        }
    })
}

fn oracle_task(task: OracleTask, text: &str, with: Option<&str>, seed: u64) -> Result<Value, CliError> {
    let is_param = text.trim_start().starts_with('{');
    match task {
        OracleTask::Milnor => {
            let f = parse_poly(text)?;
            let mu = milnor_poly(&f)?;
            let mut v = json!({ "polynomial": f.to_string(), "milnor": mu.mu, "multiplicity": mu.multiplicity,
                                "smooth_point": mu.smooth_point });
            if let Ok(model) = binomial_model(text) {
                let combinatorial = model.milnor();
                v["model"] = json!({
                    "curve": model,
                    "milnor": combinatorial,
                    "matches": combinatorial == mu.mu,
                });
                if combinatorial != mu.mu {
                    return Err(CliError::internal(format!(
                        "model gives {combinatorial}, polynomial oracle {}",
                        mu.mu
                    )));
                }
            }
            Ok(v)
        }
        OracleTask::Intersection => {
            let other = with.ok_or_else(|| CliError::parse("intersection needs --with <polynomial>"))?;
            let g = parse_poly(other)?;
            if is_param {
                let p = parse_param(text)?;
                Ok(json!({ "param": p, "with": g.to_string(), "intersection": param_intersection(&p, &g)? }))
            } else {
                let f = parse_poly(text)?;
                let i = intersection_number(&f, &g)?;
                Ok(json!({ "f": f.to_string(), "g": g.to_string(), "intersection": i }))
            }
        }
        OracleTask::Tangents => {
            let f = parse_poly(text)?;
            Ok(json!({ "polynomial": f.to_string(), "tangents": tangent_count_poly(&f)? }))
        }
        OracleTask::Teissier => {
            let f = parse_poly(text)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let r = teissier_check(&f, &mut rng)?;
            if !r.holds {
                return Err(CliError::internal(format!("polar identity fails: {r:?}")));
            }
            Ok(json!({ "polynomial": f.to_string(), "report": r }))
        }
        OracleTask::Semigroup => {
            let p = parse_param(text)?;
            Ok(json!({ "param": p, "semigroup": p.semigroup()?, "char_exponents": p.char_exponents()? }))
        }
        OracleTask::Blowup => {
            let p = parse_param(text)?;
            let q = param_blowup(&p)?;
            let track = param_resolve(&p)
                .ok()
                .map(|t| t.iter().map(|x| x.semigroup().ok()).collect::<Vec<_>>());
            Ok(json!({
                "param": p,
                "transform": q,
                "semigroup": p.semigroup()?,
                "transform_semigroup": q.semigroup()?,
                "resolution": track,
            }))
        }
    }
}
