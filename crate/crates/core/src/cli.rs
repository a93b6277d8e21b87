//! Command-line front end: argument parsing, the three commands, and their
//! text and JSON renderings.
//!
//! Exit codes: 0 pass, 1 a check failed, 2 invalid input, 3 search budget or
//! size cap exceeded, 4 model construction failed.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::models::{
    build_model, homogeneity_defect, invariance_defect, measure_rss, sample_rank_point, secant_vanishing_check,
    ExplicitModel, ModelCase, ModelError, RssMeasurement, SecantReport,
};
use crate::moment::{has_nonvanishing_invariant, momentum, wildberger_check, zero_momentum_vector};
use crate::predict::{
    self, adjoint_case, recognize, reconcile, rss_lower_bound, subdiagram_divisors, DegreeReport, KnownCase,
    PredictError, RssCheck,
};
use crate::rootsys::{RootSystem, SimpleType, WeightVec};
use crate::simplex::{self, BalancedSimplex, SearchConfig, SearchError, SearchSpace, DEFAULT_NODE_BUDGET};
use crate::weights::WeightError;

pub const NODE_BUDGET_ENV: &str = "RDSIMPLEX_NODE_BUDGET";

#[derive(Debug, Parser)]
#[command(
    name = "rdsimplex",
    version,
    about = "Root-distinct balanced simplices, degree divisors and secant-rank checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; JSON is the stable one.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List root-distinct balanced simplices of an irreducible module.
    Simplices(WeightArgs),
    /// Predict degree divisors and reconcile them with known degrees.
    Predict(WeightArgs),
    /// Run the numeric checks on an explicit model.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Simple type, e.g. A3, E8.
    #[arg(long = "type", requires = "weight")]
    pub simple_type: Option<String>,
    /// Highest weight in fundamental-weight coordinates, e.g. 2,0,0.
    #[arg(long, allow_hyphen_values = true, requires = "simple_type")]
    pub weight: Option<String>,
    /// Use the adjoint representation of this type.
    #[arg(long, conflicts_with_all = ["simple_type", "weight"])]
    pub adjoint: Option<String>,
    /// Search only the extreme weights Wλ.
    #[arg(long)]
    pub orbit_only: bool,
    /// Largest simplex size to report.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long, env = NODE_BUDGET_ENV, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Model id: nat:n, sym2:n, alt2:n, adj:n, segre:mxn, quadric:n, symp:n.
    #[arg(long)]
    pub model: String,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Random samples per rank.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Relative tolerance for vanishing.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
    /// Relative threshold for non-vanishing.
    #[arg(long, default_value_t = 1e-4)]
    pub nonzero_tolerance: f64,
    #[arg(long, env = NODE_BUDGET_ENV, default_value_t = DEFAULT_NODE_BUDGET)]
    pub node_budget: u64,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Model(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Budget(_) => 3,
            Self::Model(_) => 4,
        }
    }
}

impl From<SearchError> for CliError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::BudgetExceeded(_) | SearchError::Weights(WeightError::TooLarge(_)) | SearchError::Overflow => {
                Self::Budget(e.to_string())
            }
            _ => Self::Input(e.to_string()),
        }
    }
}

impl From<PredictError> for CliError {
    fn from(e: PredictError) -> Self {
        match e {
            PredictError::Search(s) => s.into(),
            other => Self::Input(other.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Parse(_) => Self::Input(e.to_string()),
            _ => Self::Model(e.to_string()),
        }
    }
}

/// What a command operates on, after validation.
#[derive(Debug, Clone)]
pub enum Target {
    Weight { root_system: Box<RootSystem>, lambda: WeightVec },
    Adjoint(Box<RootSystem>),
    Model(ModelCase),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Simplices,
    Predict,
    Verify,
}

/// A fully validated invocation.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub target: Target,
    pub orbit_only: bool,
    pub max_size: Option<usize>,
    pub seed: u64,
    pub samples: usize,
    pub tolerance: f64,
    pub nonzero_tolerance: f64,
    pub format: Format,
    pub node_budget: u64,
}

fn parse_type(s: &str) -> Result<RootSystem, CliError> {
    let t: SimpleType = s.parse().map_err(|e: crate::rootsys::RootSystemError| CliError::Input(e.to_string()))?;
    Ok(RootSystem::new(t))
}

fn weight_target(args: &WeightArgs) -> Result<Target, CliError> {
    if let Some(t) = &args.adjoint {
        return Ok(Target::Adjoint(Box::new(parse_type(t)?)));
    }
    let (Some(t), Some(w)) = (&args.simple_type, &args.weight) else {
        return Err(CliError::Input("need --type with --weight, or --adjoint".into()));
    };
    let rs = parse_type(t)?;
    let lambda: WeightVec = w.parse().map_err(|e: crate::rootsys::RootSystemError| CliError::Input(e.to_string()))?;
    rs.check_rank(&lambda).map_err(|e| CliError::Input(e.to_string()))?;
    if !lambda.is_dominant() {
        return Err(CliError::Input(format!("highest weight {lambda} is not dominant")));
    }
    Ok(Target::Weight { root_system: Box::new(rs), lambda })
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let base = |command, target| RunConfig {
            command,
            target,
            orbit_only: false,
            max_size: None,
            seed: 42,
            samples: 100,
            tolerance: 1e-8,
            nonzero_tolerance: 1e-4,
            format: cli.format,
            node_budget: DEFAULT_NODE_BUDGET,
        };
        Ok(match &cli.command {
            Command::Simplices(a) | Command::Predict(a) => {
                let kind = if matches!(cli.command, Command::Simplices(_)) {
                    CommandKind::Simplices
                } else {
                    CommandKind::Predict
                };
                RunConfig {
                    orbit_only: a.orbit_only,
                    max_size: a.max_size,
                    node_budget: a.node_budget,
                    ..base(kind, weight_target(a)?)
                }
            }
            Command::Verify(a) => {
                let case: ModelCase = a.model.parse()?;
                if a.samples == 0 {
                    return Err(CliError::Input("--samples must be positive".into()));
                }
                if !(a.tolerance > 0.0 && a.nonzero_tolerance > 0.0) {
                    return Err(CliError::Input("tolerances must be positive".into()));
                }
                RunConfig {
                    seed: a.seed,
                    samples: a.samples,
                    tolerance: a.tolerance,
                    nonzero_tolerance: a.nonzero_tolerance,
                    node_budget: a.node_budget,
                    ..base(CommandKind::Verify, Target::Model(case))
                }
            }
        })
    }

    fn search_config(&self) -> SearchConfig {
        SearchConfig { max_size: self.max_size, node_budget: self.node_budget }
    }

    fn space(&self) -> SearchSpace {
        if self.orbit_only {
            SearchSpace::Orbit
        } else {
            SearchSpace::Support
        }
    }
}

/// Rendered output and exit code of one run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable output");
            s.push('\n');
            s
        }
        Format::Text => text(value),
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config.command {
        CommandKind::Simplices => cmd_simplices(config),
        CommandKind::Predict => cmd_predict(config),
        CommandKind::Verify => cmd_verify(config),
    }
}

/// Parses `args` (including the program name), runs, and returns the text
/// to print with the exit code. Errors go to the returned text as well.
pub fn run_from_args<I, T>(args: I) -> (Outcome, bool)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (Outcome { output: e.render().to_string(), exit_code: code }, e.use_stderr());
        }
    };
    match RunConfig::from_cli(&cli).and_then(|c| run(&c)) {
        Ok(o) => (o, false),
        Err(e) => (Outcome { output: format!("error: {e}\n"), exit_code: e.exit_code() }, true),
    }
}

#[derive(Debug, Serialize)]
struct SimplexEntry {
    weights: Vec<WeightVec>,
    coefficients: Vec<u64>,
    total: u64,
}

impl From<&BalancedSimplex> for SimplexEntry {
    fn from(s: &BalancedSimplex) -> Self {
        Self { weights: s.weights().to_vec(), coefficients: s.coefficients().to_vec(), total: s.total() }
    }
}

#[derive(Debug, Serialize)]
struct SimplicesOutput {
    command: &'static str,
    #[serde(rename = "type")]
    simple_type: String,
    highest_weight: WeightVec,
    search: &'static str,
    max_size: Option<usize>,
    count: usize,
    divisors: Vec<u64>,
    simplices: Vec<SimplexEntry>,
}

fn weight_of(target: &Target) -> (&RootSystem, WeightVec) {
    match target {
        Target::Weight { root_system, lambda } => (root_system, lambda.clone()),
        Target::Adjoint(rs) => (rs, rs.highest_root().clone()),
        Target::Model(_) => unreachable!("weight commands take weight targets"),
    }
}

fn search_name(space: SearchSpace) -> &'static str {
    match space {
        SearchSpace::Support => "support",
        SearchSpace::Orbit => "orbit",
    }
}

pub fn cmd_simplices(config: &RunConfig) -> Result<Outcome, CliError> {
    let (rs, lambda) = weight_of(&config.target);
    let found = simplex::simplices_for_highest_weight(rs, &lambda, config.space(), &config.search_config())?;
    let divisors: BTreeSet<u64> = found.iter().filter(|s| !s.is_trivial()).map(BalancedSimplex::total).collect();
    let out = SimplicesOutput {
        command: "simplices",
        simple_type: rs.simple_type().to_string(),
        highest_weight: lambda,
        search: search_name(config.space()),
        max_size: config.max_size,
        count: found.len(),
        divisors: divisors.into_iter().collect(),
        simplices: found.iter().map(SimplexEntry::from).collect(),
    };
    let output = render(config.format, &out, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "{} λ = {} ({} search): {} simplices", o.simple_type, o.highest_weight, o.search, o.count);
        for e in &o.simplices {
            let terms: Vec<String> = e.weights.iter().zip(&e.coefficients).map(|(w, b)| format!("{b}·{w}")).collect();
            let _ = writeln!(s, "  b = {:>3}  {}", e.total, terms.join(" + "));
        }
        let _ = writeln!(s, "divisors: {:?}", o.divisors);
        s
    });
    Ok(Outcome { output, exit_code: 0 })
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum Verdict {
    Pass,
    Fail,
    /// No known degrees to reconcile against.
    Unknown,
}

#[derive(Debug, Serialize)]
struct PredictOutput {
    command: &'static str,
    #[serde(flatten)]
    report: DegreeReport,
    search: &'static str,
    known_case: Option<KnownCase>,
    rss_check: Option<RssCheck>,
    verdict: Verdict,
}

pub fn cmd_predict(config: &RunConfig) -> Result<Outcome, CliError> {
    let (divisors, known, search, label) = match &config.target {
        Target::Adjoint(rs) => {
            let known = adjoint_case(rs)?;
            (subdiagram_divisors(rs), Some(known), "subdiagrams", format!("adjoint {}", rs.simple_type()))
        }
        Target::Weight { root_system, lambda } => {
            let d = predict::predicted_divisors(root_system, lambda, config.space(), &config.search_config())?;
            (
                d,
                recognize(root_system, lambda),
                search_name(config.space()),
                format!("{} {}", root_system.simple_type(), lambda),
            )
        }
        Target::Model(_) => unreachable!("predict takes weight targets"),
    };
    let degrees = known.as_ref().map(|k| k.degrees.clone()).unwrap_or_default();
    let mut report = reconcile(&label, &divisors, &degrees);
    if let Some(k) = &known {
        report = report.with_ranks(k);
    }
    let rss_check = rss_lower_bound(&report).ok();
    let verdict = match &known {
        None => Verdict::Unknown,
        Some(_) if report.pass && rss_check.as_ref().is_none_or(|c| c.pass) => Verdict::Pass,
        Some(_) => Verdict::Fail,
    };
    let exit_code = i32::from(matches!(verdict, Verdict::Fail));
    let out = PredictOutput { command: "predict", report, search, known_case: known, rss_check, verdict };
    let output = render(config.format, &out, |o| {
        let mut s = String::new();
        let _ = writeln!(s, "case: {} ({} search)", o.report.case, o.search);
        let _ = writeln!(s, "divisors: {:?}", o.report.divisors);
        match &o.known_case {
            Some(k) if k.degrees.is_empty() => {
                let _ = writeln!(s, "known: {} ({}): no invariants", k.id, k.group);
            }
            Some(k) => {
                let _ = writeln!(s, "known: {} ({}): degrees {:?}", k.id, k.group, k.degrees);
            }
            None => {
                let _ = writeln!(s, "known: not recognized");
            }
        }
        for d in &o.report.divisor_status {
            let _ = writeln!(s, "  divisor {} divides {:?}", d.divisor, d.divides);
        }
        for d in &o.report.degree_status {
            let _ = writeln!(s, "  degree {} is a multiple of {:?}", d.degree, d.multiple_of);
        }
        if let Some(c) = &o.rss_check {
            let _ = writeln!(s, "r_ss = {} ≤ d_1 = {}: {}", c.r_ss, c.min_degree, c.bound_holds);
        }
        let _ = writeln!(s, "verdict: {:?}", o.verdict);
        s
    });
    Ok(Outcome { output, exit_code })
}

#[derive(Debug, Serialize)]
struct InvariantInfo {
    name: String,
    degree: usize,
}

#[derive(Debug, Serialize)]
struct RssSection {
    measured: RssMeasurement,
    table: Option<u64>,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct DegreeSection {
    model: Vec<u64>,
    table: Vec<u64>,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct DefectSection {
    trials: usize,
    max_defect: f64,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct RankSection {
    expected_factor: Option<usize>,
    checked: usize,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct WildbergerSection {
    sets: usize,
    trials_per_set: usize,
    max_root_component: f64,
    max_barycentric_error: f64,
    max_torus_mismatch: f64,
    max_vertex_error: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct ZeroMomentumSection {
    simplices: usize,
    max_momentum_norm: f64,
    /// Nontrivial simplices at which no invariant is nonzero, when the
    /// model has invariants.
    missing_witnesses: usize,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct VerifyOutput {
    command: &'static str,
    model: ModelCase,
    seed: u64,
    samples: usize,
    tolerance: f64,
    nonzero_tolerance: f64,
    dimension: usize,
    invariants: Vec<InvariantInfo>,
    table: KnownCase,
    rss: RssSection,
    degrees: DegreeSection,
    rss_bound: Option<bool>,
    secant: Vec<SecantReport>,
    invariance: DefectSection,
    homogeneity: DefectSection,
    matrix_rank: RankSection,
    #[serde(rename = "momentum_image")]
    wildberger: WildbergerSection,
    zero_momentum: ZeroMomentumSection,
    pass: bool,
}

/// Matrix rank of a rank-`r` sample is `factor · r` for these models.
fn rank_factor(case: ModelCase) -> Option<usize> {
    match case {
        ModelCase::Sym2(_) | ModelCase::AdjointSL(_) | ModelCase::Segre(..) => Some(1),
        ModelCase::Alt2(_) | ModelCase::SympAlt2(_) => Some(2),
        ModelCase::Natural(_) | ModelCase::Quadric(_) => None,
    }
}

const INVARIANCE_TRIALS: usize = 50;
const HOMOGENEITY_TOL: f64 = 1e-10;
const MOMENTUM_TOL: f64 = 1e-10;

fn verify_model(m: &ExplicitModel, config: &RunConfig) -> Result<VerifyOutput, CliError> {
    let case = m.case();
    let table = case.table_row().known_case();
    let model_degrees: Vec<u64> = m.invariants().iter().map(|f| f.degree as u64).collect();

    let measured = measure_rss(m, config.samples, config.tolerance, config.seed);
    let rss_pass = match (measured, table.r_ss) {
        (RssMeasurement::Rank(r), Some(t)) => r as u64 == t,
        (RssMeasurement::NoInvariants, None) => true,
        _ => false,
    };
    let rss_bound = match (measured, model_degrees.first()) {
        (RssMeasurement::Rank(r), Some(&d1)) => Some(r as u64 <= d1),
        _ => None,
    };
    let secant: Vec<SecantReport> = (1..=m.max_rank())
        .map(|r| secant_vanishing_check(m, r, config.samples, config.tolerance, config.nonzero_tolerance, config.seed))
        .collect();

    let inv_defect = invariance_defect(m, INVARIANCE_TRIALS, config.seed);
    let hom_defect = homogeneity_defect(m, INVARIANCE_TRIALS, config.seed);

    let factor = rank_factor(case);
    let mut checked = 0;
    let mut rank_pass = true;
    if let Some(f) = factor {
        for r in 1..=m.max_rank() {
            for i in 0..config.samples.min(10) {
                let s = sample_rank_point(m, r, config.seed.wrapping_add(1000 * r as u64 + i as u64))?;
                rank_pass &= m.matrix_rank(&s.vector, 1e-9) == f * r;
                checked += 1;
            }
        }
    }

    let found = simplex::enumerate_simplices(
        m,
        m.distinct_weights(),
        &SearchConfig { max_size: None, node_budget: config.node_budget },
    )?;

    let trials = config.samples.min(10);
    let mut sets: Vec<Vec<WeightVec>> = m.distinct_weights().iter().map(|w| vec![w.clone()]).collect();
    sets.extend(found.iter().filter(|s| s.len() > 1).map(|s| s.weights().to_vec()));
    let mut wb = WildbergerSection {
        sets: sets.len(),
        trials_per_set: trials,
        max_root_component: 0.0,
        max_barycentric_error: 0.0,
        max_torus_mismatch: 0.0,
        max_vertex_error: 0.0,
        pass: true,
    };
    for (i, set) in sets.iter().enumerate() {
        let rep = wildberger_check(m, set, trials, config.seed.wrapping_add(i as u64))
            .map_err(|e| CliError::Model(e.to_string()))?;
        wb.max_root_component = wb.max_root_component.max(rep.max_root_component);
        wb.max_barycentric_error = wb.max_barycentric_error.max(rep.max_barycentric_error);
        wb.max_torus_mismatch = wb.max_torus_mismatch.max(rep.max_torus_mismatch);
        wb.max_vertex_error = wb.max_vertex_error.max(rep.max_vertex_error);
        wb.pass &= rep.pass;
    }

    let mut zm =
        ZeroMomentumSection { simplices: found.len(), max_momentum_norm: 0.0, missing_witnesses: 0, pass: true };
    for s in &found {
        let v = zero_momentum_vector(m, s).map_err(|e| CliError::Model(e.to_string()))?;
        let mu = momentum(m, &v).map_err(|e| CliError::Model(e.to_string()))?;
        zm.max_momentum_norm = zm.max_momentum_norm.max(mu.norm());
        if !s.is_trivial() && !m.invariants().is_empty() && !has_nonvanishing_invariant(m, &v, config.nonzero_tolerance)
        {
            zm.missing_witnesses += 1;
        }
    }
    zm.pass = zm.max_momentum_norm < MOMENTUM_TOL && zm.missing_witnesses == 0;

    let degrees =
        DegreeSection { pass: model_degrees == table.degrees, model: model_degrees, table: table.degrees.clone() };
    let invariance = DefectSection {
        trials: INVARIANCE_TRIALS,
        max_defect: inv_defect,
        tolerance: config.tolerance,
        pass: inv_defect <= config.tolerance,
    };
    let homogeneity = DefectSection {
        trials: INVARIANCE_TRIALS,
        max_defect: hom_defect,
        tolerance: HOMOGENEITY_TOL,
        pass: hom_defect <= HOMOGENEITY_TOL,
    };
    let matrix_rank = RankSection { expected_factor: factor, checked, pass: rank_pass };
    let pass = rss_pass
        && degrees.pass
        && rss_bound.unwrap_or(true)
        && secant.iter().all(|s| s.pass)
        && invariance.pass
        && homogeneity.pass
        && matrix_rank.pass
        && wb.pass
        && zm.pass;
    Ok(VerifyOutput {
        command: "verify",
        model: case,
        seed: config.seed,
        samples: config.samples,
        tolerance: config.tolerance,
        nonzero_tolerance: config.nonzero_tolerance,
        dimension: m.dim(),
        invariants: m.invariants().iter().map(|f| InvariantInfo { name: f.name(), degree: f.degree }).collect(),
        table,
        rss: RssSection { measured, table: None, pass: rss_pass },
        degrees,
        rss_bound,
        secant,
        invariance,
        homogeneity,
        matrix_rank,
        wildberger: wb,
        zero_momentum: zm,
        pass,
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<Outcome, CliError> {
    let Target::Model(case) = config.target else {
        unreachable!("verify takes a model target");
    };
    let m = build_model(case)?;
    let mut out = verify_model(&m, config)?;
    out.rss.table = out.table.r_ss;
    let exit_code = i32::from(!out.pass);
    let output = render(config.format, &out, |o| {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "model {} (dimension {}, seed {}, {} samples per rank)",
            o.model, o.dimension, o.seed, o.samples
        );
        let names: Vec<String> = o.invariants.iter().map(|i| format!("{} (deg {})", i.name, i.degree)).collect();
        if names.is_empty() {
            let _ = writeln!(s, "invariants: none (no invariants)");
        } else {
            let _ = writeln!(s, "invariants: {}", names.join(", "));
        }
        let measured = match o.rss.measured {
            RssMeasurement::Rank(r) => format!("r_ss = {r}"),
            RssMeasurement::NoInvariants => "no invariants".into(),
            RssMeasurement::AllVanish => "all invariants vanish".into(),
        };
        let table = o.rss.table.map_or("none".into(), |r| format!("r_ss = {r}"));
        let _ = writeln!(s, "[{}] measured {measured}; table {table}", mark(o.rss.pass));
        let _ =
            writeln!(s, "[{}] degrees: model {:?}, table {:?}", mark(o.degrees.pass), o.degrees.model, o.degrees.table);
        if let Some(b) = o.rss_bound {
            let _ = writeln!(s, "[{}] r_ss ≤ d_1", mark(b));
        }
        for r in &o.secant {
            let _ = writeln!(
                s,
                "[{}] rank {}: vanish {:?} (max {:.1e}); nonzero among {:?}",
                mark(r.pass),
                r.rank,
                r.vanishing,
                r.max_vanishing_value,
                r.nonvanishing
            );
        }
        let _ = writeln!(s, "[{}] invariance defect {:.1e}", mark(o.invariance.pass), o.invariance.max_defect);
        let _ = writeln!(s, "[{}] homogeneity defect {:.1e}", mark(o.homogeneity.pass), o.homogeneity.max_defect);
        let _ =
            writeln!(s, "[{}] matrix rank of samples ({} checked)", mark(o.matrix_rank.pass), o.matrix_rank.checked);
        let _ = writeln!(
            s,
            "[{}] momentum image on {} root-distinct sets (max root part {:.1e})",
            mark(o.wildberger.pass),
            o.wildberger.sets,
            o.wildberger.max_root_component
        );
        let _ = writeln!(
            s,
            "[{}] zero momentum on {} simplices (max |μ| {:.1e}, {} without witness)",
            mark(o.zero_momentum.pass),
            o.zero_momentum.simplices,
            o.zero_momentum.max_momentum_norm,
            o.zero_momentum.missing_witnesses
        );
        let _ = writeln!(s, "{}", if o.pass { "PASS" } else { "FAIL" });
        s
    });
    Ok(Outcome { output, exit_code })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(args: &[&str]) -> Outcome {
        let mut full = vec!["rdsimplex"];
        full.extend_from_slice(args);
        run_from_args(full).0
    }

    #[test]
    fn exit_codes_for_bad_input() {
        assert_eq!(outcome(&["simplices", "--type", "Q3", "--weight", "1"]).exit_code, 2);
        assert_eq!(outcome(&["simplices", "--type", "A2", "--weight", "1,-1"]).exit_code, 2);
        assert_eq!(outcome(&["simplices", "--type", "A2", "--weight", "1"]).exit_code, 2);
        assert_eq!(outcome(&["simplices", "--type", "A2"]).exit_code, 2);
        assert_eq!(outcome(&["verify", "--model", "foo:3"]).exit_code, 2);
        assert_eq!(outcome(&["verify", "--model", "sym2:12"]).exit_code, 4);
        assert_eq!(outcome(&["bogus"]).exit_code, 2);
        assert_eq!(outcome(&["--help"]).exit_code, 0);
    }

    #[test]
    fn budget_exit_code() {
        let o = outcome(&["simplices", "--adjoint", "E8", "--node-budget", "1000"]);
        assert_eq!(o.exit_code, 3, "{}", o.output);
    }

    #[test]
    fn text_output_mentions_results() {
        let o = outcome(&["predict", "--adjoint", "G2"]);
        assert_eq!(o.exit_code, 0);
        assert!(o.output.contains("divisors: [2, 6]"), "{}", o.output);
        let o = outcome(&["verify", "--model", "nat:4", "--samples", "5"]);
        assert_eq!(o.exit_code, 0, "{}", o.output);
        assert!(o.output.contains("no invariants"));
    }
}
