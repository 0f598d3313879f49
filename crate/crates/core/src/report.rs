//! Run orchestration and report rendering for the command line.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use num_rational::BigRational;
use serde::Serialize;

use crate::detvar::{expected_codim_check_with, smoothness_verification, CodimCheck};
use crate::error::{IndexError, ParseDiagnostic};
use crate::field::{format_rational, FieldSpec};
use crate::groebner::{Budget, DimensionResult};
use crate::indices::{
    coefficient_table, coefficient_table_unchecked, deform_oneform, euler_obstruction_function, euler_obstruction_oneform, genericity_stability,
    lemma_eu_assemble, milnor_determinantal, parity_sign, phn_pair, polar_multiplicity, IndexPair, Mode,
    PhnComputation, Setup, StabilityReport,
};
use crate::scenario::{parse_scenario, FormInput, Scenario};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub input_path: PathBuf,
    pub field_override: Option<FieldSpec>,
    pub seed_override: Option<u64>,
    pub mode_override: Option<Mode>,
    pub output_format: OutputFormat,
    /// Genericity re-checks; a single trial skips the stability check.
    pub trials: usize,
    pub budget_seconds: Option<u64>,
    /// Fail with exit 5 when the determinantal Milnor number is undefined.
    pub require_milnor: bool,
    pub timings: bool,
    pub verify_smoothness: bool,
}

impl RunConfig {
    pub fn new(input_path: impl Into<PathBuf>) -> Self {
        RunConfig {
            input_path: input_path.into(),
            field_override: None,
            seed_override: None,
            mode_override: None,
            output_format: OutputFormat::Text,
            trials: 3,
            budget_seconds: None,
            require_milnor: false,
            timings: false,
            verify_smoothness: false,
        }
    }

    fn budget(&self) -> Budget {
        self.budget_seconds.map_or_else(Budget::unlimited, Budget::seconds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExitStatus {
    pub code: u8,
}

impl ExitStatus {
    pub const SUCCESS: ExitStatus = ExitStatus { code: 0 };
    pub const NON_ISOLATED: ExitStatus = ExitStatus { code: 2 };
    pub const NON_GENERIC: ExitStatus = ExitStatus { code: 3 };
    pub const PARSE: ExitStatus = ExitStatus { code: 4 };
    pub const NOT_SMOOTHABLE: ExitStatus = ExitStatus { code: 5 };
    pub const BUDGET: ExitStatus = ExitStatus { code: 6 };
}

impl From<&IndexError> for ExitStatus {
    fn from(e: &IndexError) -> Self {
        match e {
            IndexError::NonIsolated(_) => ExitStatus::NON_ISOLATED,
            IndexError::NonGeneric(_) | IndexError::Codimension(_) | IndexError::IrrationalSingularPoints => {
                ExitStatus::NON_GENERIC
            }
            IndexError::NotSmoothable(_) => ExitStatus::NOT_SMOOTHABLE,
            IndexError::BudgetExceeded => ExitStatus::BUDGET,
            IndexError::Input(_) => ExitStatus::PARSE,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        let status = if passed { CheckStatus::Pass } else { CheckStatus::Fail };
        Check { name: name.into(), status, detail: detail.into() }
    }

    fn skipped(name: &str, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status: CheckStatus::Skipped, detail: detail.into() }
    }
}

/// The scenario as resolved for the run, including seeded values.
#[derive(Clone, Debug, Serialize)]
pub struct ScenarioEcho {
    pub variables: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub smoothed_matrix: Vec<Vec<String>>,
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub oneform: Option<Vec<String>>,
    pub function: Option<String>,
    pub linear_form: Vec<String>,
    pub perturbation: Vec<Vec<String>>,
    pub epsilon: String,
    pub tau: String,
    pub field: String,
    pub seed: u64,
    pub mode: Mode,
    pub chi: Option<Vec<String>>,
    pub singular_points: Vec<Vec<String>>,
    pub codim: usize,
}

impl ScenarioEcho {
    fn new(s: &Scenario, setup: &Setup) -> Self {
        let strs = |v: &[BigRational]| v.iter().map(format_rational).collect::<Vec<_>>();
        let ft = &setup.f_tilde;
        ScenarioEcho {
            variables: s.variables.clone(),
            matrix: s.matrix.clone(),
            smoothed_matrix: (0..ft.rows()).map(|i| ft.row(i).iter().map(|p| p.to_string()).collect()).collect(),
            m: ft.rows(),
            n: ft.cols(),
            t: s.t,
            oneform: match &s.form {
                Some(FormInput::OneForm(w)) => Some(w.clone()),
                _ => None,
            },
            function: match &s.form {
                Some(FormInput::Function(f)) => Some(f.clone()),
                _ => None,
            },
            linear_form: strs(&setup.linear),
            perturbation: setup.perturbation.iter().map(|r| strs(r)).collect(),
            epsilon: format_rational(&setup.epsilon),
            tau: format_rational(&setup.tau),
            field: s.field.to_string(),
            seed: s.seed,
            mode: s.mode,
            chi: s.chi.as_deref().map(strs),
            singular_points: s.singular_points.iter().map(|p| strs(p)).collect(),
            codim: setup.codim,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaAssembly {
    pub eu_form: String,
    pub eu_linear: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub stage: String,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub report_version: u32,
    pub scenario: ScenarioEcho,
    pub dim_x: i64,
    pub smoothable: bool,
    pub codim_check: Option<CodimCheck>,
    pub omega: Option<PhnComputation>,
    pub dl: Option<PhnComputation>,
    pub phn_omega: Option<u64>,
    pub phn_dl: Option<u64>,
    pub euler_obstruction_form: Option<i64>,
    pub euler_obstruction_function: Option<i64>,
    pub polar_multiplicity: Option<u64>,
    pub milnor_determinantal: Option<u64>,
    pub lemma_assembly: Option<LemmaAssembly>,
    pub genericity: Option<StabilityReport>,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    pub exit_code: u8,
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

/// Reported when no scenario could be built.
#[derive(Clone, Debug, Serialize)]
struct FailureReport<'a> {
    report_version: u32,
    exit_code: u8,
    error: &'a str,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: Option<IndexReport>,
    pub status: ExitStatus,
    pub error: Option<String>,
}

impl RunOutcome {
    fn failure(status: ExitStatus, error: impl Into<String>) -> Self {
        RunOutcome { report: None, status, error: Some(error.into()) }
    }

    /// Standard output for the run.
    pub fn render(&self, format: OutputFormat) -> String {
        match (format, &self.report) {
            (OutputFormat::Machine, Some(r)) => serde_json::to_string_pretty(r).expect("report serializes") + "\n",
            (OutputFormat::Machine, None) => {
                let f = FailureReport {
                    report_version: REPORT_VERSION,
                    exit_code: self.status.code,
                    error: self.error.as_deref().unwrap_or(""),
                };
                serde_json::to_string_pretty(&f).expect("report serializes") + "\n"
            }
            (OutputFormat::Text, Some(r)) => render_text(r),
            (OutputFormat::Text, None) => String::new(),
        }
    }
}

/// Reads the input and applies the overrides of `cfg`.
pub fn load_scenario(cfg: &RunConfig) -> Result<Scenario, (ExitStatus, String)> {
    let src = std::fs::read_to_string(&cfg.input_path)
        .map_err(|e| (ExitStatus::PARSE, format!("cannot read {}: {e}", cfg.input_path.display())))?;
    let located = |d: ParseDiagnostic| (ExitStatus::PARSE, format!("{}:{d}", cfg.input_path.display()));
    let mut s = parse_scenario(&src).map_err(located)?;
    if let Some(f) = cfg.field_override {
        s = s.with_field(f).map_err(located)?;
    }
    if let Some(seed) = cfg.seed_override {
        s.seed = seed;
    }
    if let Some(mode) = cfg.mode_override {
        s.mode = mode;
    }
    Ok(s)
}

pub fn run(cfg: &RunConfig) -> RunOutcome {
    match load_scenario(cfg) {
        Ok(s) => compute(&s, cfg),
        Err((status, msg)) => RunOutcome::failure(status, msg),
    }
}

struct Clock {
    enabled: bool,
    stages: Vec<Timing>,
}

impl Clock {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t0 = Instant::now();
        let out = f();
        if self.enabled {
            self.stages.push(Timing { stage: stage.into(), millis: t0.elapsed().as_millis() });
        }
        out
    }
}

/// Runs the full pipeline on a parsed scenario.
pub fn compute(s: &Scenario, cfg: &RunConfig) -> RunOutcome {
    let budget = cfg.budget();
    let mut clock = Clock { enabled: cfg.timings, stages: Vec::new() };
    let setup = match clock.time("setup", || Setup::from_scenario(s)) {
        Ok(setup) => setup,
        Err(e) => return RunOutcome::failure((&e).into(), e.to_string()),
    };
    let mut report = IndexReport {
        report_version: REPORT_VERSION,
        scenario: ScenarioEcho::new(s, &setup),
        dim_x: setup.dim_x(),
        smoothable: setup.smoothable(),
        codim_check: None,
        omega: None,
        dl: None,
        phn_omega: None,
        phn_dl: None,
        euler_obstruction_form: None,
        euler_obstruction_function: None,
        polar_multiplicity: None,
        milnor_determinantal: None,
        lemma_assembly: None,
        genericity: None,
        checks: Vec::new(),
        warnings: Vec::new(),
        exit_code: 0,
        error: None,
        timings: None,
    };
    let result = pipeline(s, &setup, cfg, &budget, &mut report, &mut clock);
    if cfg.timings {
        report.timings = Some(clock.stages);
    }
    let status = match &result {
        Ok(()) => ExitStatus::SUCCESS,
        Err(e) => e.into(),
    };
    let error = result.err().map(|e| e.to_string());
    report.exit_code = status.code;
    report.error = error.clone();
    RunOutcome { report: Some(report), status, error }
}

fn pipeline(
    s: &Scenario,
    setup: &Setup,
    cfg: &RunConfig,
    budget: &Budget,
    report: &mut IndexReport,
    clock: &mut Clock,
) -> Result<(), IndexError> {
    let (m, n, t) = (setup.f.rows(), setup.f.cols(), setup.t);
    let table = coefficient_table(m, n, t);
    let failures = table.moebius_failures();
    report.checks.push(Check::new("moebius", failures.is_empty(), format!("coefficient tables for ({m}, {n}, {t})")));

    let codim = clock.time("codim_check", || expected_codim_check_with(&setup.f, t, setup.codim, budget))?;
    let detail = format!("Krull dimension {} against N - codim = {}", codim.krull_dim, codim.expected_dim);
    report.checks.push(Check::new("expected_codimension", codim.passed, detail.clone()));
    let passed = codim.passed;
    report.codim_check = Some(codim);
    if !passed {
        return Err(IndexError::Codimension(detail));
    }

    if cfg.verify_smoothness {
        let ok = clock.time("smoothness", || smoothness_verification(&setup.i_x, &setup.sing, setup.codim, budget))?;
        report.checks.push(Check::new("smoothness", ok, "Jacobian criterion against the rank t-1 locus"));
    }

    if setup.form.is_none() {
        return Err(IndexError::Input("scenario has neither `oneform` nor `function`".into()));
    }
    let pair = clock.time("phn", || phn_pair(setup, budget))?;
    record_pair(setup, &pair, report);

    if setup.mode == Mode::LocalCrosscheck {
        let ran = pair.omega.local_dims.is_some() && pair.dl.local_dims.is_some();
        report.checks.push(if ran {
            Check::new("mode_agreement", true, "saturation and local crosscheck agree for the form and dl")
        } else {
            Check::skipped("mode_agreement", "crosscheck preconditions failed; see warnings")
        });
    }

    if setup.function.is_some() {
        match milnor_determinantal(setup, &pair) {
            Ok(mu) => report.milnor_determinantal = Some(mu),
            Err(e) if cfg.require_milnor => return Err(e),
            Err(e) => report.warnings.push(e.to_string()),
        }
    } else if cfg.require_milnor {
        return Err(IndexError::NotSmoothable("no `function` given".into()));
    }

    if let Some(chi) = &s.chi {
        let eu_form = lemma_eu_assemble(pair.omega.phn as i64, chi, m, n, t, setup.nvars())?;
        let eu_linear = lemma_eu_assemble(pair.dl.phn as i64, chi, m, n, t, setup.nvars())?;
        let cancels = &eu_form - &eu_linear == BigRational::from_integer(euler_obstruction_oneform(&pair).into());
        report.checks.push(Check::new("lemma_cancellation", cancels, "chi terms cancel in the difference"));
        report.lemma_assembly = Some(LemmaAssembly { eu_form: format_rational(&eu_form), eu_linear: format_rational(&eu_linear) });
    }

    if cfg.trials >= 2 {
        let stability = clock.time("genericity", || genericity_stability(setup, &pair, cfg.trials, budget))?;
        let passed = stability.passed;
        let divergent = stability.divergent_seeds();
        report.checks.push(Check::new("genericity_stability", passed, format!("{} trials", cfg.trials)));
        report.genericity = Some(stability);
        if !passed {
            return Err(IndexError::NonGeneric(format!("counts change for seeds {divergent:?}")));
        }
    } else {
        report.checks.push(Check::skipped("genericity_stability", "needs at least 2 trials"));
    }
    Ok(())
}

fn record_pair(setup: &Setup, pair: &IndexPair, report: &mut IndexReport) {
    report.phn_omega = Some(pair.omega.phn);
    report.phn_dl = Some(pair.dl.phn);
    report.euler_obstruction_form = Some(euler_obstruction_oneform(pair));
    if setup.function.is_some() {
        report.euler_obstruction_function = Some(euler_obstruction_function(pair, setup.dim_x()));
    }
    report.polar_multiplicity = Some(polar_multiplicity(pair));
    report.warnings.extend(pair.omega.warnings.iter().map(|w| format!("form: {w}")));
    report.warnings.extend(pair.dl.warnings.iter().map(|w| format!("dl: {w}")));
    report.omega = Some(pair.omega.clone());
    report.dl = Some(pair.dl.clone());
}

fn dim_text(d: &DimensionResult) -> String {
    match d {
        DimensionResult::Finite { count } => count.to_string(),
        DimensionResult::Infinite { krull_dim } => format!("infinite (Krull dimension {krull_dim})"),
    }
}

fn phn_lines(out: &mut String, label: &str, c: &PhnComputation) {
    let _ = write!(out, "  {label:<6} global {}, saturated {}", dim_text(&c.global_dim), c.saturated_dim);
    if let Some(locals) = &c.local_dims {
        let total: u64 = locals.iter().map(|l| l.dim).sum();
        let parts: Vec<String> = locals.iter().map(|l| format!("{} at ({})", l.dim, l.point.join(", "))).collect();
        let _ = write!(out, ", local {}", if parts.is_empty() { "none".into() } else { parts.join(" + ") });
        if let DimensionResult::Finite { count } = c.global_dim {
            let _ = write!(out, "  =>  {count} - {total} = {}", c.phn);
        }
    }
    let _ = writeln!(out, "  =>  phn = {}", c.phn);
}

/// Dimensions first, then signed index differences, then checks.
pub fn render_text(r: &IndexReport) -> String {
    let mut out = String::new();
    let sc = &r.scenario;
    let _ = writeln!(
        out,
        "{}x{} matrix, t = {}, N = {}, codim {}, dim X = {}, field {}, mode {}",
        sc.m,
        sc.n,
        sc.t,
        sc.variables.len(),
        sc.codim,
        r.dim_x,
        sc.field,
        sc.mode.as_str()
    );
    if let (Some(w), Some(dl)) = (&r.omega, &r.dl) {
        let _ = writeln!(out, "dimensions:");
        phn_lines(&mut out, "form", w);
        phn_lines(&mut out, "dl", dl);
    }
    if let (Some(a), Some(b), Some(eu)) = (r.phn_omega, r.phn_dl, r.euler_obstruction_form) {
        let _ = writeln!(out, "indices:");
        let _ = writeln!(out, "  Eu_X,0(form)    = {a} - {b} = {eu}");
        if let Some(euf) = r.euler_obstruction_function {
            let _ = writeln!(out, "  Eu_f,X(0)       = (-1)^{} ({a} - {b}) = {euf}", r.dim_x);
        }
        if let Some(md) = r.polar_multiplicity {
            let _ = writeln!(out, "  m_d(X,0)        = {md}");
        }
        match r.milnor_determinantal {
            Some(mu) => {
                let _ = writeln!(out, "  mu_D(f)         = {mu}");
            }
            None if sc.function.is_some() => {
                let _ = writeln!(out, "  mu_D(f)         undefined (not smoothable)");
            }
            None => {}
        }
        if let Some(l) = &r.lemma_assembly {
            let _ = writeln!(out, "  lemma assembly  = {} (form), {} (dl)", l.eu_form, l.eu_linear);
        }
    }
    let _ = writeln!(out, "checks:");
    for c in &r.checks {
        let tag = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skip",
        };
        let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
    }
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    if let Some(ts) = &r.timings {
        let _ = writeln!(out, "timings:");
        for t in ts {
            let _ = writeln!(out, "  {:<14} {} ms", t.stage, t.millis);
        }
    }
    out
}

/// Dry run: the constructed objects without any Gröbner computation.
pub fn explain(cfg: &RunConfig) -> Result<String, (ExitStatus, String)> {
    let s = load_scenario(cfg)?;
    if s.form.is_none() {
        return Err((ExitStatus::PARSE, "nothing to explain: the scenario has neither `oneform` nor `function`".into()));
    }
    let setup = Setup::from_scenario(&s).map_err(|e| ((&e).into(), e.to_string()))?;
    let w = setup.form.as_ref().expect("checked above");
    let w_tilde = deform_oneform(w, &setup.linear, &setup.tau).map_err(|e| ((&e).into(), e.to_string()))?;
    let dl = setup.linear_differential().map_err(|e| ((&e).into(), e.to_string()))?;
    let crit_form = setup.critical_ideal_of(&w_tilde);
    let crit_dl = setup.critical_ideal_of(&dl);
    let aug = crate::detvar::augmented_jacobian(setup.i_x.generators(), &w_tilde);

    let mut out = String::new();
    let _ = writeln!(out, "smoothed matrix F~ (epsilon = {}):", format_rational(&setup.epsilon));
    let _ = write!(out, "{}", setup.f_tilde);
    let _ = writeln!(out, "I_X~: {} generators ({}x{} minors)", setup.i_x.generators().len(), setup.t, setup.t);
    for g in setup.i_x.generators() {
        let _ = writeln!(out, "  {g}");
    }
    let _ = writeln!(out, "deformed form (tau = {}): {}", format_rational(&setup.tau), w_tilde);
    let _ = writeln!(out, "augmented Jacobian ({}x{}):", aug.rows(), aug.cols());
    let _ = write!(out, "{aug}");
    let _ = writeln!(out, "J: {} generators ({}x{} minors)", setup.sing.generators().len(), setup.t - 1, setup.t - 1);
    for g in setup.sing.generators().iter().take(12) {
        let _ = writeln!(out, "  {g}");
    }
    if setup.sing.generators().len() > 12 {
        let _ = writeln!(out, "  ...");
    }
    let _ = writeln!(
        out,
        "critical ideal K: {} generators for the form, {} for dl ({}x{} minors of the augmented Jacobian)",
        crit_form.generators().len(),
        crit_dl.generators().len(),
        setup.codim + 1,
        setup.codim + 1
    );
    let _ = writeln!(
        out,
        "dim X = {} - {} = {}; sign (-1)^dim X = {}",
        setup.nvars(),
        setup.codim,
        setup.dim_x(),
        parity_sign(setup.dim_x())
    );
    Ok(out)
}

/// Exhaustive Möbius check over every `t <= min(m, n)` for the given sizes.
pub fn check_moebius(sizes: &[(usize, usize)], print_tables: bool) -> (String, ExitStatus) {
    let mut out = String::new();
    let mut all_ok = true;
    let mut checked = 0usize;
    for &(m, n) in sizes {
        for t in 0..=m.min(n) {
            let bad = coefficient_table_unchecked(m, n, t).moebius_failures();
            checked += 1;
            if !bad.is_empty() {
                all_ok = false;
                let _ = writeln!(out, "FAIL ({m}, {n}, t = {t}): identity broken at {bad:?}");
            }
        }
        if print_tables {
            let t = m.min(n);
            let table = coefficient_table(m, n, t);
            let _ = writeln!(out, "(m, n, t) = ({m}, {n}, {t})");
            let _ = writeln!(out, "n_ij:");
            write_grid(&mut out, &table.n_table);
            let _ = writeln!(out, "m_ij:");
            write_grid(&mut out, &table.m_table);
        }
    }
    let _ = writeln!(out, "{} ({checked} tables checked)", if all_ok { "pass" } else { "FAIL" });
    (out, if all_ok { ExitStatus::SUCCESS } else { ExitStatus::NON_GENERIC })
}

fn write_grid(out: &mut String, grid: &[Vec<i64>]) {
    let width = grid.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    for row in grid {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
}
