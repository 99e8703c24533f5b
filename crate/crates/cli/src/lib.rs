//! Request handling behind the `freediv` binary: polynomial input, analysis
//! pipelines, report envelopes and the regression runner.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

use freediv_core::blowup::{BlowupContext, BlowupReport};
use freediv_core::divisor::{self, gradient, DivisorReport};
use freediv_core::families::{self, check_fixture, ClaimOutcome, FamilySpec, Fixture};
use freediv_core::maxspread::{
    depth_power_table, ext_consistency_check, hessian_experiment, homaloidal_sufficient, max_spread_check, DepthTable,
    HessianExperiment, HomaloidalEvidence, MaxSpreadVerdict,
};
use freediv_core::poly::parse_polynomial;
use freediv_core::{Deadline, Error, MonomialOrder, Polynomial, RingDescriptor};

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const EXHAUSTED: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Divisor,
    Blowup,
    Maxspread,
    Hessian,
    DepthTable,
    Homaloidal,
}

impl Task {
    pub const ALL: [Task; 6] =
        [Task::Divisor, Task::Blowup, Task::Maxspread, Task::Hessian, Task::DepthTable, Task::Homaloidal];

    pub fn name(self) -> &'static str {
        match self {
            Task::Divisor => "divisor",
            Task::Blowup => "blowup",
            Task::Maxspread => "maxspread",
            Task::Hessian => "hessian",
            Task::DepthTable => "depth-table",
            Task::Homaloidal => "homaloidal",
        }
    }

    pub fn parse(s: &str) -> Result<Task, String> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s.trim())
            .ok_or_else(|| format!("unknown task `{s}`; expected one of {}", Task::ALL.map(Task::name).join(", ")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    Grevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Where the polynomial comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Inline(String),
    File(String),
    Family(String),
}

/// A validated analysis request.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisRequest {
    pub ring: Vec<String>,
    pub order: Order,
    pub source: Source,
    pub tasks: Vec<Task>,
    pub max_power: Option<u32>,
    pub deadline_secs: f64,
    #[serde(skip)]
    pub timing: bool,
}

/// Failure of a whole request, with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: exit::USAGE, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceExhausted => exit::EXHAUSTED,
            Error::Internal(_) => exit::FAILURE,
            _ => exit::USAGE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl AnalysisRequest {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.tasks.is_empty() {
            return Err(CliError::usage("at least one task is required"));
        }
        if !(self.deadline_secs > 0.0) {
            return Err(CliError::usage("the deadline must be positive"));
        }
        if matches!(self.source, Source::Inline(_) | Source::File(_)) && self.ring.is_empty() {
            return Err(CliError::usage("--ring is required for an explicit polynomial"));
        }
        Ok(())
    }

    /// The input polynomial in the requested ring and order.
    pub fn polynomial(&self) -> Result<Polynomial, CliError> {
        let order = match self.order {
            Order::Grevlex => MonomialOrder::Grevlex,
            Order::Lex => MonomialOrder::Lex,
        };
        let text = match &self.source {
            Source::Inline(t) => t.clone(),
            Source::File(path) => std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read `{path}`: {e}")))?,
            Source::Family(spec) => {
                let spec: FamilySpec = spec.parse()?;
                let f = families::polynomial(&spec)?;
                let ring = RingDescriptor::new(f.ring().names(), order)?;
                return Ok(f.with_ring(&ring)?);
            }
        };
        let ring = RingDescriptor::new(&self.ring, order)?;
        parse_polynomial(text.trim(), &ring).map_err(|e| CliError::usage(e.to_string()))
    }
}

/// Per-task results; absent fields were not requested or did not finish.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Results {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blowup: Option<BlowupReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maxspread: Option<MaxSpreadSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hessian: Option<HessianExperiment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth_table: Option<DepthTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub homaloidal: Option<HomaloidalEvidence>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MaxSpreadSection {
    #[serde(flatten)]
    pub verdict: MaxSpreadVerdict,
    pub ext_consistency: bool,
}

/// Versioned report for one request.
#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub schema: u32,
    pub engine_version: &'static str,
    pub request: AnalysisRequest,
    pub polynomial: Polynomial,
    pub results: Results,
    /// Tasks stopped by the deadline; their fields are absent.
    pub truncated: Vec<Task>,
    /// Tasks that could not run on this input, with the reason.
    pub errors: BTreeMap<Task, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<Task, u128>>,
}

impl ReportEnvelope {
    pub fn exit_code(&self) -> i32 {
        if self.truncated.is_empty() {
            exit::OK
        } else {
            exit::EXHAUSTED
        }
    }
}

#[derive(Default)]
struct Shared {
    spread: Option<usize>,
    rees_cm: Option<bool>,
    table: Option<DepthTable>,
}

fn run_task(task: Task, f: &Polynomial, m_max: u32, sh: &mut Shared, out: &mut Results, dl: Deadline) -> freediv_core::Result<()> {
    match task {
        Task::Divisor => out.divisor = Some(divisor::analyze(f, dl)?),
        Task::Blowup => {
            let ctx = BlowupContext::new(gradient(f), dl)?;
            let rep = ctx.report(dl)?;
            sh.spread = Some(rep.analytic_spread);
            sh.rees_cm = Some(rep.rees_cm);
            out.blowup = Some(rep);
        }
        Task::Maxspread => {
            let verdict = max_spread_check(f, sh.spread, dl)?;
            sh.spread = Some(verdict.analytic_spread);
            let ext_consistency = ext_consistency_check(f, dl)?;
            out.maxspread = Some(MaxSpreadSection { verdict, ext_consistency });
        }
        Task::Hessian => out.hessian = Some(hessian_experiment(f, dl)?),
        Task::DepthTable => {
            let t = depth_power_table(f, m_max, dl)?;
            sh.table = Some(t.clone());
            out.depth_table = Some(t);
        }
        Task::Homaloidal => {
            let table = match &sh.table {
                Some(t) => t.clone(),
                None => depth_power_table(f, m_max, dl)?,
            };
            out.homaloidal = Some(homaloidal_sufficient(f, &table, sh.rees_cm, dl)?);
        }
    }
    Ok(())
}

/// Run the requested tasks in a fixed order under one shared deadline.
pub fn run(req: &AnalysisRequest) -> Result<ReportEnvelope, CliError> {
    req.validate()?;
    let f = req.polynomial()?;
    if f.is_zero() || !f.is_homogeneous() {
        return Err(CliError::usage("the polynomial must be nonzero and homogeneous"));
    }
    let dl = Deadline::after_secs(req.deadline_secs);
    let m_max = req.max_power.unwrap_or(f.ring().arity() as u32);
    let mut tasks = req.tasks.clone();
    tasks.sort();
    tasks.dedup();
    let mut results = Results::default();
    let mut shared = Shared::default();
    let mut truncated = Vec::new();
    let mut errors = BTreeMap::new();
    let mut timing = BTreeMap::new();
    for task in tasks {
        let start = Instant::now();
        match run_task(task, &f, m_max, &mut shared, &mut results, dl) {
            Ok(()) => {}
            Err(Error::ResourceExhausted) => truncated.push(task),
            Err(e) => {
                errors.insert(task, e.to_string());
            }
        }
        timing.insert(task, start.elapsed().as_millis());
    }
    Ok(ReportEnvelope {
        schema: SCHEMA,
        engine_version: ENGINE_VERSION,
        request: req.clone(),
        polynomial: f,
        results,
        truncated,
        errors,
        timing_ms: req.timing.then_some(timing),
    })
}

/// Outcome of the claims of one fixture.
#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: String,
    pub spec: String,
    pub passed: bool,
    pub truncated: bool,
    pub outcomes: Vec<ClaimOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RegressionReport {
    pub schema: u32,
    pub engine_version: &'static str,
    pub fixtures: Vec<FixtureResult>,
    pub skipped_slow: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub truncated: usize,
}

impl RegressionReport {
    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            exit::FAILURE
        } else if self.truncated > 0 {
            exit::EXHAUSTED
        } else {
            exit::OK
        }
    }

    /// The violated claims, one per line, with the fixture name.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        for fx in &self.fixtures {
            for o in fx.outcomes.iter().filter(|o| !o.passed) {
                v.push(format!("{}: {} (observed: {})", fx.name, o.statement, o.observed));
            }
        }
        v
    }
}

/// Check every fixture; each gets its own deadline.
pub fn regress(fixtures: &[Fixture], include_slow: bool, deadline_secs: f64, timing: bool) -> RegressionReport {
    let mut out = Vec::new();
    let mut skipped = Vec::new();
    for fx in fixtures {
        if fx.slow && !include_slow {
            skipped.push(fx.name.clone());
            continue;
        }
        let start = Instant::now();
        let (outcomes, truncated) = match check_fixture(fx, Deadline::after_secs(deadline_secs)) {
            Ok(o) => (o, false),
            Err(_) => (Vec::new(), true),
        };
        out.push(FixtureResult {
            name: fx.name.clone(),
            spec: fx.spec.to_string(),
            passed: !truncated && outcomes.iter().all(|o| o.passed),
            truncated,
            outcomes,
            elapsed_ms: timing.then(|| start.elapsed().as_millis()),
        });
    }
    let passed = out.iter().filter(|r| r.passed).count();
    let truncated = out.iter().filter(|r| r.truncated).count();
    RegressionReport {
        schema: SCHEMA,
        engine_version: ENGINE_VERSION,
        failed: out.len() - passed - truncated,
        passed,
        truncated,
        fixtures: out,
        skipped_slow: skipped,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

/// `path: value` lines for every leaf of the JSON form.
pub fn to_text<T: Serialize>(v: &T) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&p, x, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar).collect();
                let _ = writeln!(out, "{prefix}: [{}]", items.join(", "));
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), x, out);
                }
            }
            other => {
                let _ = writeln!(out, "{prefix}: {}", scalar(other));
            }
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk("", &serde_json::to_value(v).expect("reports serialize"), &mut out);
    out
}

/// Short text summary of a regression run.
pub fn regression_text(rep: &RegressionReport) -> String {
    let mut out = String::new();
    for fx in &rep.fixtures {
        let status = if fx.truncated {
            "TIMEOUT"
        } else if fx.passed {
            "ok"
        } else {
            "FAIL"
        };
        let _ = write!(out, "{status:<7} {} ({} claims)", fx.name, fx.outcomes.len());
        if let Some(ms) = fx.elapsed_ms {
            let _ = write!(out, " {ms} ms");
        }
        out.push('\n');
        for o in fx.outcomes.iter().filter(|o| !o.passed) {
            let _ = writeln!(out, "        violated: {}", o.statement);
            let _ = writeln!(out, "        observed: {}", o.observed);
        }
    }
    for s in &rep.skipped_slow {
        let _ = writeln!(out, "skipped {s} (slow; pass --include-slow)");
    }
    let _ = writeln!(out, "{} passed, {} failed, {} timed out", rep.passed, rep.failed, rep.truncated);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn req(text: &str, ring: &[&str], tasks: &[Task]) -> AnalysisRequest {
        AnalysisRequest {
            ring: ring.iter().map(|s| s.to_string()).collect(),
            order: Order::Grevlex,
            source: Source::Inline(text.into()),
            tasks: tasks.to_vec(),
            max_power: None,
            deadline_secs: 60.0,
            timing: false,
        }
    }

    #[test]
    fn task_names_round_trip() {
        for t in Task::ALL {
            assert_eq!(Task::parse(t.name()).unwrap(), t);
        }
        assert!(Task::parse("nope").is_err());
    }

    #[test]
    fn fermat_cubic_is_not_free() {
        let env = run(&req("x^3+y^3+z^3", &["x", "y", "z"], &[Task::Divisor])).unwrap();
        let d = env.results.divisor.as_ref().unwrap();
        assert_eq!(d.is_free, Some(false));
        assert_eq!(d.jacobian_height, Some(3));
        assert_eq!(env.exit_code(), exit::OK);
    }

    #[test]
    fn bad_requests_are_usage_errors() {
        assert_eq!(run(&req("x y", &["x", "y"], &[Task::Divisor])).unwrap_err().code, exit::USAGE);
        assert_eq!(run(&req("x", &["x"], &[])).unwrap_err().code, exit::USAGE);
        assert_eq!(run(&req("x^2 + y", &["x", "y"], &[Task::Divisor])).unwrap_err().code, exit::USAGE);
        let mut r = req("x*y", &["x", "y"], &[Task::Divisor]);
        r.deadline_secs = 0.0;
        assert_eq!(run(&r).unwrap_err().code, exit::USAGE);
    }

    #[test]
    fn expired_deadline_marks_tasks_truncated() {
        let mut r = req("x*y*z*w", &["x", "y", "z", "w"], &[Task::Blowup]);
        r.deadline_secs = 1e-9;
        let env = run(&r).unwrap();
        assert_eq!(env.truncated, vec![Task::Blowup]);
        assert!(env.results.blowup.is_none());
        assert_eq!(env.exit_code(), exit::EXHAUSTED);
    }

    #[test]
    fn text_rendering_lists_leaves() {
        let env = run(&req("x*y*z", &["x", "y", "z"], &[Task::Divisor])).unwrap();
        let t = to_text(&env);
        assert!(t.contains("results.divisor.is_free: true"));
        assert!(t.contains("polynomial: x*y*z"));
    }
}
