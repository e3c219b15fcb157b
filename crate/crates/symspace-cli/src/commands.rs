//! Subcommands: argument definitions and their execution.

use std::fs;
use std::io::Read;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use symspace::algebra::{AlgebraElement, AlgebraSpec};
use symspace::groups::{group_contains, GroupElement, GroupFamily, GroupId, MembershipReport};
use symspace::hitchin::{invariants, HiggsFamily, HiggsVector};
use symspace::models::{
    act, contains, metric, Family, Model, ModelId, ModelKind, ModelPoint, Payload, TangentPayload, TangentVector,
};
use symspace::transforms::{convert, differential};

use crate::document::{emit, pair_from_documents, pair_to_documents, parse, Coefficient, ElementDocument};
use crate::error::{CliError, CliResult};
use crate::report::{RunReport, SuiteReport};
use crate::selftest::{run_selftest, SelftestOptions};

#[derive(Debug, Parser)]
#[command(name = "symspace", version, about = "Models of symmetric spaces over involutive matrix algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prints the base point of a model over a standard algebra.
    Basepoint(BasepointArgs),
    /// Checks a document against a model (with --model) or a group.
    Check(CheckArgs),
    /// Converts a point to another model of the same family.
    Convert(ConvertArgs),
    /// Pushes a tangent vector forward along a conversion.
    Differential(DifferentialArgs),
    /// Moves a point by a group element.
    Act(ActArgs),
    /// Evaluates the invariant metric on the half-space model.
    Metric(MetricArgs),
    /// Prints the norm-map invariants of a complexified tangent vector.
    Invariants(InvariantsArgs),
    /// Runs the deterministic self-test battery.
    Selftest(SelftestArgs),
}

#[derive(Debug, Args)]
pub struct BasepointArgs {
    /// Model, e.g. `SP2/U+`.
    #[arg(long)]
    pub model: String,
    /// Ground field of the base algebra `Mat_n`: R, C or H, each with its
    /// standard positive involution.
    #[arg(long, default_value = "R")]
    pub ground: String,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Model family (O11, AX, OC, SP2, SP2C, CPT_KO11, CPT_KSP2, CPT_KSP2C)
    /// or, without --model, group family (SP2, O11, O_ALG, AX_HAT, OC_HAT,
    /// KSP2, KO11, KSP2C, O2).
    #[arg(long)]
    pub family: String,
    /// Model kind: C, P, U or B.
    #[arg(long)]
    pub model: Option<String>,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i8,
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    #[arg(long, env = "SYMSPACE_TOL", default_value_t = symspace::algebra::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    /// Source model, e.g. `SP2/C`, `O11/P+`, `SP2C/U-`.
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct DifferentialArgs {
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// The base point.
    #[arg(long)]
    pub at: String,
    /// The tangent vector, in the same encoding as a point of the model.
    #[arg(long)]
    pub v: String,
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct ActArgs {
    #[arg(long)]
    pub model: String,
    /// The group element, a matrix of the model's group.
    #[arg(long)]
    pub g: String,
    #[arg(long = "in", default_value = "-")]
    pub input: String,
    #[arg(long, default_value = "-")]
    pub out: String,
    #[arg(long, env = "SYMSPACE_TOL", default_value_t = symspace::algebra::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct MetricArgs {
    #[arg(long, default_value = "SP2")]
    pub family: String,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    pub sign: i8,
    #[arg(long)]
    pub z: String,
    #[arg(long)]
    pub v: String,
    /// Defaults to `v`.
    #[arg(long)]
    pub w: Option<String>,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    /// SP2C or OC.
    #[arg(long)]
    pub family: String,
    #[arg(long = "in", default_value = "-")]
    pub input: String,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Cases per group, overriding the default of each suite.
    #[arg(long)]
    pub cases: Option<usize>,
    /// Tolerance overriding the pinned tolerance of each suite.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Runs only suites whose name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
}

/// What a subcommand printed and how it exits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// Runs a parsed command line; `echo` is recorded in run reports.
pub fn execute(cli: &Cli, echo: &str) -> Outcome {
    let mut out = Outcome::default();
    let result = match &cli.command {
        Command::Basepoint(args) => run_basepoint(args, &mut out),
        Command::Check(args) => check(args, echo, &mut out),
        Command::Convert(args) => run_convert(args, &mut out),
        Command::Differential(args) => run_differential(args, &mut out),
        Command::Act(args) => run_act(args, &mut out),
        Command::Metric(args) => run_metric(args, &mut out),
        Command::Invariants(args) => run_invariants(args, &mut out),
        Command::Selftest(args) => selftest(args, echo, &mut out),
    };
    if let Err(e) = result {
        out.stderr.push_str(&format!("{e}\n"));
        out.exit_code = e.exit_code();
    }
    out
}

fn read_input(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn write_output(path: &str, text: &str, out: &mut Outcome) -> CliResult<()> {
    if path == "-" {
        out.stdout.push_str(text);
        Ok(())
    } else {
        fs::write(path, text).map_err(|e| CliError::Input(format!("{path}: {e}")))
    }
}

fn read_element(path: &str) -> CliResult<AlgebraElement> {
    parse::<ElementDocument>(&read_input(path)?)?.to_element()
}

/// Parses `FAMILY/KIND` with an optional `+` or `-` suffix on the kind.
pub fn parse_model_id(text: &str) -> CliResult<ModelId> {
    let bad = || CliError::Input(format!("model must look like SP2/U+, got {text:?}"));
    let (family, kind) = text.split_once('/').ok_or_else(bad)?;
    let (kind, sign) = match kind.strip_suffix('-') {
        Some(k) => (k, -1),
        None => (kind.strip_suffix('+').unwrap_or(kind), 1),
    };
    model_id(family, kind, sign)
}

fn model_id(family: &str, kind: &str, sign: i8) -> CliResult<ModelId> {
    let family = Family::from_name(family).ok_or_else(|| CliError::Input(format!("unknown family {family:?}")))?;
    let kind = ModelKind::from_name(kind).ok_or_else(|| CliError::Input(format!("unknown model {kind:?}")))?;
    ModelId::new(family, kind, sign).map_err(|e| CliError::Input(e.to_string()))
}

/// The payload encoding shared by points and tangent vectors: a matrix for
/// the operator and chart models, a pair of coordinates for lines.
enum Encoded {
    Element(AlgebraElement),
    Pair(symspace::algebra::Pair),
}

fn read_encoded(kind: ModelKind, path: &str) -> CliResult<Encoded> {
    let text = read_input(path)?;
    Ok(match kind {
        ModelKind::P => Encoded::Pair(pair_from_documents(&parse(&text)?)?),
        _ => Encoded::Element(parse::<ElementDocument>(&text)?.to_element()?),
    })
}

/// The model of `id` over the base algebra the encoded data lives over.
fn model_for(id: ModelId, data: &Encoded) -> CliResult<Model> {
    let spec = match data {
        Encoded::Element(x) => *x.spec(),
        Encoded::Pair(x) => *x.spec(),
    };
    let n = if id.kind == ModelKind::C { spec.n / 2 } else { spec.n };
    if n == 0 || (id.kind == ModelKind::C && spec.n % 2 != 0) {
        return Err(CliError::Input(format!("an operator needs an even matrix size, got {}", spec.n)));
    }
    Ok(Model::new(id, spec.ground_part().with_n(n))?)
}

fn read_point(id: ModelId, path: &str) -> CliResult<ModelPoint> {
    let data = read_encoded(id.kind, path)?;
    let model = model_for(id, &data)?;
    let payload = match (id.kind, data) {
        (ModelKind::C, Encoded::Element(j)) => Payload::C { j, anti_linear: id.family == Family::Sp2c },
        (ModelKind::P, Encoded::Pair(x)) => Payload::P(x),
        (ModelKind::U, Encoded::Element(z)) => Payload::U(z),
        (ModelKind::B, Encoded::Element(z)) => Payload::B(z),
        _ => unreachable!("decoded by kind"),
    };
    Ok(ModelPoint { model, payload })
}

fn point_text(p: &ModelPoint) -> CliResult<String> {
    match &p.payload {
        Payload::C { j: x, .. } | Payload::U(x) | Payload::B(x) => emit(&ElementDocument::from_element(x)),
        Payload::P(x) => emit(&pair_to_documents(x)),
    }
}

fn report_suite(name: &str, report: &MembershipReport) -> SuiteReport {
    let results = report.residuals.iter().map(|(n, r)| (n.clone(), Ok(*r))).collect();
    SuiteReport::new(name, report.tol, results, 0.0)
}

fn check(args: &CheckArgs, echo: &str, out: &mut Outcome) -> CliResult<()> {
    let start = Instant::now();
    let (name, report) = match &args.model {
        Some(kind) => {
            let id = model_id(&args.family, kind, args.sign)?;
            let p = read_point(id, &args.input)?;
            (id.to_string(), contains(&p.model, &p.payload, args.tol)?)
        }
        None => {
            let family = GroupFamily::from_name(&args.family)
                .ok_or_else(|| CliError::Input(format!("unknown group family {:?}", args.family)))?;
            let m = read_element(&args.input)?;
            let spec = *m.spec();
            let over = if family == GroupFamily::OAlg { spec } else { spec.with_n(spec.n / 2) };
            let gid = GroupId::new(family, over)?;
            (gid.to_string(), group_contains(&gid, &m, args.tol)?)
        }
    };
    let run = RunReport::new(echo.to_string(), None, vec![report_suite(&name, &report)], start.elapsed().as_secs_f64());
    out.stdout.push_str(&emit(&run)?);
    if !run.passed {
        out.stderr.push_str(&format!("{name}: failed {}\n", report.failures().join(", ")));
        out.exit_code = 1;
    }
    Ok(())
}

fn run_basepoint(args: &BasepointArgs, out: &mut Outcome) -> CliResult<()> {
    let id = parse_model_id(&args.model)?;
    if args.n == 0 {
        return Err(CliError::Input("--n must be positive".into()));
    }
    let over = match args.ground.as_str() {
        "R" => AlgebraSpec::real(args.n),
        "C" => AlgebraSpec::complex_hermitian(args.n),
        "H" => AlgebraSpec::quaternion_hermitian(args.n),
        other => return Err(CliError::Input(format!("unknown ground {other:?}"))),
    };
    write_output(&args.out, &point_text(&Model::new(id, over)?.basepoint())?, out)
}

fn run_convert(args: &ConvertArgs, out: &mut Outcome) -> CliResult<()> {
    let (from, to) = (parse_model_id(&args.from)?, parse_model_id(&args.to)?);
    let p = read_point(from, &args.input)?;
    let q = convert(&p, to)?;
    write_output(&args.out, &point_text(&q)?, out)
}

fn run_differential(args: &DifferentialArgs, out: &mut Outcome) -> CliResult<()> {
    let (from, to) = (parse_model_id(&args.from)?, parse_model_id(&args.to)?);
    let at = read_point(from, &args.at)?;
    let payload = match (from.kind, read_encoded(from.kind, &args.v)?) {
        (ModelKind::C, Encoded::Element(l)) => TangentPayload::C(l),
        (ModelKind::P, Encoded::Pair(w)) => TangentPayload::P(w),
        (_, Encoded::Element(w)) => TangentPayload::Chart(w),
        _ => unreachable!("decoded by kind"),
    };
    let image = differential(&TangentVector { at, payload }, to)?;
    let text = match &image.payload {
        TangentPayload::C(x) | TangentPayload::Chart(x) => emit(&ElementDocument::from_element(x))?,
        TangentPayload::P(w) => emit(&pair_to_documents(w))?,
    };
    write_output(&args.out, &text, out)
}

fn run_act(args: &ActArgs, out: &mut Outcome) -> CliResult<()> {
    let id = parse_model_id(&args.model)?;
    let p = read_point(id, &args.input)?;
    let g = GroupElement::new(p.model.group(), read_element(&args.g)?, args.tol)?;
    write_output(&args.out, &point_text(&act(&g, &p)?)?, out)
}

#[derive(Serialize)]
struct MetricValue {
    metric: Coefficient,
}

fn run_metric(args: &MetricArgs, out: &mut Outcome) -> CliResult<()> {
    let id = model_id(&args.family, "U", args.sign)?;
    let z = read_point(id, &args.z)?;
    let spec = z.model.point_spec();
    // Vectors written over the base algebra are lifted into the chart algebra.
    let lifted = |x: AlgebraElement| if x.spec().same_algebra(&spec) { Ok(x) } else { x.lift(&spec) };
    let v = lifted(read_element(&args.v)?)?;
    let w = match &args.w {
        Some(path) => lifted(read_element(path)?)?,
        None => v.clone(),
    };
    let value = metric(&z, &v, &w)?;
    out.stdout.push_str(&emit(&MetricValue { metric: Coefficient(value) })?);
    Ok(())
}

#[derive(Serialize)]
struct InvariantValues {
    /// `[re, im]` of `c₁, …, c_N`.
    invariants: Vec<[Coefficient; 2]>,
}

fn run_invariants(args: &InvariantsArgs, out: &mut Outcome) -> CliResult<()> {
    let family = HiggsFamily::from_name(&args.family)
        .ok_or_else(|| CliError::Input(format!("unknown Higgs family {:?}", args.family)))?;
    let hv = HiggsVector::new(family, read_element(&args.input)?)?;
    let values = invariants(&hv)?.into_iter().map(|c| [Coefficient(c.re), Coefficient(c.im)]).collect();
    out.stdout.push_str(&emit(&InvariantValues { invariants: values })?);
    Ok(())
}

fn selftest(args: &SelftestArgs, echo: &str, out: &mut Outcome) -> CliResult<()> {
    let options = SelftestOptions { seed: args.seed, cases: args.cases, tol: args.tol, filter: args.filter.clone() };
    let report = run_selftest(&options, echo.to_string());
    for s in &report.suites {
        let verdict = if s.passed { "PASS" } else { "FAIL" };
        out.stderr.push_str(&format!(
            "{verdict} {:<22} {:>6} cases  max residual {:.3e}  tol {:<7e} {:.2} s\n",
            s.name, s.cases, s.max_residual, s.tol, s.wall_time_s
        ));
    }
    out.stdout.push_str(&emit(&report)?);
    if !report.passed {
        out.exit_code = 1;
    }
    Ok(())
}
