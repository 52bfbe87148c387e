//! Batch front-end: builds instances, runs the check suite, computes
//! windows and distances, and renders reports.

mod bkc;
mod format;

use std::path::PathBuf;

use serde::Serialize;
use trace_goppa::distance::{self, DistanceResult, Reconciliation};
use trace_goppa::trace::{self, BoundSummary, Window, ALL_CHECKS};
use trace_goppa::{CheckReport, CodeKind, FieldSpec, TraceGoppaInstance};

pub use bkc::{BestKnown, BkcRecord};
pub use format::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] trace_goppa::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        3
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Successful run: the rendered body and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit: i32,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    /// Low-degree-first digits of a monic irreducible of degree `s*m`.
    pub modulus: Option<Vec<u32>>,
    pub checks: Vec<String>,
    pub jmin: Option<i64>,
    pub jmax: Option<i64>,
    pub exact_limit: u32,
    pub iterations: u64,
    pub seed: u64,
    pub bkc: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Code for `window` (all four when unset), `distance` and `export` (L when unset).
    pub code: Option<CodeKind>,
}

impl RunConfig {
    pub fn new(p: u32, s: u32, m: u32) -> Self {
        RunConfig {
            p,
            s,
            m,
            modulus: None,
            checks: ALL_CHECKS.iter().map(|c| c.to_string()).collect(),
            jmin: None,
            jmax: None,
            exact_limit: distance::DEFAULT_EXACT_LIMIT,
            iterations: distance::DEFAULT_ITERATIONS,
            seed: 0,
            bkc: None,
            out: None,
            format: Format::Json,
            code: None,
        }
    }

    /// Window range; defaults to `[-b, 4b]`.
    pub fn window_range(&self, inst: &TraceGoppaInstance) -> (i64, i64) {
        let b = inst.b as i64;
        (self.jmin.unwrap_or(-b), self.jmax.unwrap_or(4 * b))
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.jmin.is_some_and(|j| j > 0) || self.jmax.is_some_and(|j| j < 0) {
            return Err(CliError::Config("window range [jmin, jmax] must contain 0".into()));
        }
        for name in &self.checks {
            if !ALL_CHECKS.contains(&name.as_str()) {
                return Err(CliError::Config(format!("unknown check {name:?}; known: {}", ALL_CHECKS.join(","))));
            }
        }
        Ok(())
    }

    pub fn build_instance(&self) -> CliResult<TraceGoppaInstance> {
        self.validate()?;
        let field = match &self.modulus {
            Some(digits) => FieldSpec::with_modulus(self.p, self.s, self.m, digits)?,
            None => FieldSpec::new(self.p, self.s, self.m)?,
        };
        Ok(TraceGoppaInstance::from_field(&field)?)
    }

    fn best_known(&self) -> CliResult<Option<BestKnown>> {
        self.bkc.as_deref().map(BestKnown::load).transpose()
    }
}

/// Parses `--checks`: a comma-separated list or `all`.
pub fn parse_checks(s: &str) -> CliResult<Vec<String>> {
    if s.trim() == "all" {
        return Ok(ALL_CHECKS.iter().map(|c| c.to_string()).collect());
    }
    let names: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    if names.is_empty() {
        return Err(CliError::Config("empty check list".into()));
    }
    Ok(names)
}

/// Parses `--modulus`: comma-separated base-p digits, lowest degree first.
pub fn parse_modulus(s: &str) -> CliResult<Vec<u32>> {
    s.split(',')
        .map(|d| d.trim().parse::<u32>().map_err(|e| CliError::Config(format!("modulus digit {d:?}: {e}"))))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Params {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub q: u64,
    pub n: usize,
    pub a: u64,
    pub b: u64,
}

impl Params {
    fn of(inst: &TraceGoppaInstance) -> Self {
        let f = &inst.field;
        Params { p: f.p(), s: f.s(), m: f.m(), q: f.q(), n: inst.n(), a: inst.a, b: inst.b }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    #[serde(flatten)]
    pub formulas: BoundSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_known: Option<BkcRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowSummary {
    pub code: String,
    pub lo: i64,
    pub hi: i64,
    pub certified: u64,
    pub degenerate: bool,
}

impl WindowSummary {
    fn new(kind: CodeKind, w: Window) -> Self {
        WindowSummary {
            code: kind.label().into(),
            lo: w.lo,
            hi: w.hi,
            certified: w.certified,
            degenerate: w.degenerate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Dimensions {
    #[serde(rename = "L")]
    pub l: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L2")]
    pub l2: usize,
    #[serde(rename = "M2")]
    pub m2: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsReport {
    pub params: Params,
    pub modulus: Vec<u32>,
    pub deg_g: usize,
    pub deg_h: usize,
    pub dims: Dimensions,
    pub degenerate: bool,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub params: Params,
    pub checks: Vec<CheckReport>,
    pub bounds: Bounds,
    pub window: WindowSummary,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(CheckReport::ok)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowReport {
    pub params: Params,
    pub windows: Vec<WindowSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub weight: usize,
    pub bound: u64,
    pub witness: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistanceReport {
    pub params: Params,
    pub code: String,
    pub dim: usize,
    pub window: WindowSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reconcile: Option<Reconciliation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_known: Option<BkcRecord>,
}

impl DistanceReport {
    pub fn ok(&self) -> bool {
        self.counterexample.is_none() && !self.reconcile.as_ref().is_some_and(Reconciliation::any_violation)
    }
}

fn bounds_for(inst: &TraceGoppaInstance, config: &RunConfig) -> CliResult<Bounds> {
    let formulas = trace::bound_calculators(config.p, config.s, config.m)?;
    let best_known = config.best_known()?.and_then(|b| b.lookup(config.p, inst.n(), inst.code_l.dim()));
    Ok(Bounds { formulas, best_known })
}

pub fn params_report(config: &RunConfig) -> CliResult<ParamsReport> {
    let inst = config.build_instance()?;
    let dims =
        Dimensions { l: inst.code_l.dim(), m: inst.code_m.dim(), l2: inst.code_l2.dim(), m2: inst.code_m2.dim() };
    Ok(ParamsReport {
        params: Params::of(&inst),
        modulus: inst.field.modulus().to_vec(),
        deg_g: inst.g.degree().unwrap_or(0),
        deg_h: inst.h.degree().unwrap_or(0),
        degenerate: dims.l == 0,
        dims,
        bounds: bounds_for(&inst, config)?,
    })
}

/// Best certified window among the four codes; ties keep the earlier code.
fn best_window(inst: &TraceGoppaInstance, range: (i64, i64)) -> CliResult<WindowSummary> {
    let mut best: Option<WindowSummary> = None;
    for kind in CodeKind::ALL {
        let w = WindowSummary::new(kind, inst.window(kind, range.0, range.1)?);
        let better = match &best {
            None => true,
            Some(b) => (b.degenerate && !w.degenerate) || (b.degenerate == w.degenerate && w.certified > b.certified),
        };
        if better {
            best = Some(w);
        }
    }
    Ok(best.expect("four codes"))
}

pub fn verify_report(config: &RunConfig) -> CliResult<VerifyReport> {
    let inst = config.build_instance()?;
    let checks = config.checks.iter().map(|name| trace::run_check(&inst, name)).collect::<Result<Vec<_>, _>>()?;
    Ok(VerifyReport {
        params: Params::of(&inst),
        checks,
        bounds: bounds_for(&inst, config)?,
        window: best_window(&inst, config.window_range(&inst))?,
    })
}

pub fn window_report(config: &RunConfig) -> CliResult<WindowReport> {
    let inst = config.build_instance()?;
    let (lo, hi) = config.window_range(&inst);
    let kinds: Vec<CodeKind> = match config.code {
        Some(k) => vec![k],
        None => CodeKind::ALL.to_vec(),
    };
    let windows =
        kinds.into_iter().map(|k| Ok(WindowSummary::new(k, inst.window(k, lo, hi)?))).collect::<CliResult<Vec<_>>>()?;
    Ok(WindowReport { params: Params::of(&inst), windows })
}

/// Exact enumeration when `p^dim <= 2^exact_limit`, randomized search otherwise.
/// The best certified window among codes equal to the selected one gates
/// the result.
pub fn distance_report(config: &RunConfig) -> CliResult<DistanceReport> {
    let inst = config.build_instance()?;
    let kind = config.code.unwrap_or(CodeKind::L);
    let code = inst.code(kind);
    let (lo, hi) = config.window_range(&inst);
    // any of the four codes with the same kernel certifies the same distance
    let mut window = WindowSummary::new(kind, inst.window(kind, lo, hi)?);
    for other in CodeKind::ALL {
        if other != kind && code.parity().same_kernel(inst.code(other).parity())? {
            let w = WindowSummary::new(other, inst.window(other, lo, hi)?);
            if w.certified > window.certified {
                window = w;
            }
        }
    }
    let bounds = bounds_for(&inst, config)?;
    let found = match distance::exact_min_distance(code, config.exact_limit) {
        Err(trace_goppa::Error::DimensionTooLarge { .. }) => {
            distance::low_weight_search(code, config.iterations, config.seed)
        }
        other => other,
    };
    let gated = found.and_then(|d| if window.degenerate { Ok(d) } else { d.with_certified_lower(window.certified) });
    let mut report = DistanceReport {
        params: Params::of(&inst),
        code: kind.label().into(),
        dim: code.dim(),
        window,
        distance: None,
        reconcile: None,
        counterexample: None,
        best_known: bounds.best_known.clone(),
    };
    match gated {
        Ok(d) => {
            report.reconcile = Some(distance::reconcile(&bounds.formulas, &d));
            report.distance = Some(d);
        }
        Err(trace_goppa::Error::Inconsistent { weight, bound, witness }) => {
            report.counterexample = Some(Counterexample { weight, bound, witness });
        }
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}

/// The parity-check matrix of the selected code in the text export format.
pub fn export_matrix(config: &RunConfig) -> CliResult<String> {
    let inst = config.build_instance()?;
    Ok(inst.code(config.code.unwrap_or(CodeKind::L)).parity().to_text())
}

pub fn cmd_params(config: &RunConfig) -> CliResult<Outcome> {
    let r = params_report(config)?;
    Ok(Outcome { body: format::render(&r, config.format)?, exit: 0 })
}

pub fn cmd_verify(config: &RunConfig) -> CliResult<Outcome> {
    let r = verify_report(config)?;
    Ok(Outcome { body: format::render(&r, config.format)?, exit: if r.all_ok() { 0 } else { 2 } })
}

pub fn cmd_window(config: &RunConfig) -> CliResult<Outcome> {
    let r = window_report(config)?;
    Ok(Outcome { body: format::render(&r, config.format)?, exit: 0 })
}

pub fn cmd_distance(config: &RunConfig) -> CliResult<Outcome> {
    let r = distance_report(config)?;
    Ok(Outcome { body: format::render(&r, config.format)?, exit: if r.ok() { 0 } else { 2 } })
}

pub fn cmd_export(config: &RunConfig) -> CliResult<Outcome> {
    Ok(Outcome { body: export_matrix(config)?, exit: 0 })
}

/// Writes the body to `config.out`, or returns it for stdout when unset.
pub fn emit(config: &RunConfig, outcome: &Outcome) -> CliResult<Option<String>> {
    match &config.out {
        Some(path) => {
            std::fs::write(path, &outcome.body).map_err(|source| CliError::Io { path: path.clone(), source })?;
            Ok(None)
        }
        None => Ok(Some(outcome.body.clone())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_applicable_check_fails_the_report() {
        let mut report = verify_report(&{
            let mut c = RunConfig::new(2, 2, 3);
            c.checks = vec![trace::CODE_EQUALITY.into(), trace::Q3_POWER.into()];
            c
        })
        .unwrap();
        assert!(report.all_ok());
        report.checks[0].pass = false;
        assert!(!report.all_ok());
        // inapplicable entries never fail
        report.checks[0].pass = true;
        report.checks[1].pass = false;
        assert!(report.all_ok());
    }

    #[test]
    fn counterexample_fails_distance_report() {
        let mut r = distance_report(&RunConfig::new(2, 2, 3)).unwrap();
        assert!(r.ok());
        r.counterexample = Some(Counterexample { weight: 1, bound: 2, witness: vec![1] });
        assert!(!r.ok());
    }
}
