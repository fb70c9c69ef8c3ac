//! TOML scenario configs: schema checks, range checks and typed parameters.
//!
//! ```toml
//! [scenario]
//! kind = "fig2_depolarizing"
//!
//! [parameters]
//! d = 2
//! q_values = [0.1, 0.2]
//! starts = 32
//! seed = 7301
//! tolerance = 1e-3
//!
//! [output]
//! dir = "out/fig2"
//! ```

use std::fmt;
use std::path::PathBuf;

use qentropy::channels::serialize::{GeneratorDoc, MatrixDoc};
use qentropy::channels::zoo::depolarizing_q_max;
use qentropy::channels::TimeFunction;
use toml::{Table, Value};

use crate::catalog::{Requirement, ScenarioKind, ScenarioSpec};

/// One problem found in a config, attached to a dotted field path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            field: field.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

#[derive(Debug, Clone)]
pub struct ConfigError(pub Vec<Diagnostic>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid scenario config:")?;
        for d in &self.0 {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ConfigError {}

/// Command-line overrides applied before validation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

/// Uniform time grid t_start, t_start + t_step, ..., t_end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    pub t_start: f64,
    pub t_end: f64,
    pub t_step: f64,
}

impl TimeGrid {
    pub fn points(&self) -> usize {
        ((self.t_end - self.t_start) / self.t_step).round() as usize + 1
    }

    pub fn values(&self) -> Vec<f64> {
        qentropy::dynamics::uniform_grid(self.t_start, self.t_end, self.points())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BosonicProcess {
    Amplifier,
    Lossy,
    Additive,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QubitProcess {
    Gadc { omega: f64 },
    Dephasing { rate: TimeFunction },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scenario {
    Fig1Gadc {
        omega: f64,
        grid: TimeGrid,
        eps0: f64,
        tolerance: f64,
    },
    Fig2Depolarizing {
        d: usize,
        q_values: Vec<f64>,
        starts: usize,
        seed: u64,
        tolerance: f64,
    },
    AppendixB {
        oscillatory: bool,
        grid: TimeGrid,
        fd_step: f64,
        exclusion: f64,
        tolerance: f64,
    },
    GaussianBounds {
        process: BosonicProcess,
        noise: f64,
        initial_mean_photons: f64,
        cutoff: usize,
        grid: TimeGrid,
        tolerance: f64,
    },
    DecoherenceMeasures {
        process: QubitProcess,
        grid: TimeGrid,
        pure_states: usize,
        mixed_states: usize,
        bloch_states: usize,
        orthogonal_pairs: usize,
        mixed_pairs: usize,
        seed: u64,
        tolerance: f64,
    },
    Custom {
        generator: GeneratorDoc,
        initial_state: MatrixDoc,
        grid: TimeGrid,
        tolerance: f64,
    },
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            Scenario::Fig1Gadc { .. } => ScenarioKind::Fig1Gadc,
            Scenario::Fig2Depolarizing { .. } => ScenarioKind::Fig2Depolarizing,
            Scenario::AppendixB { oscillatory: false, .. } => ScenarioKind::AppendixBDamping,
            Scenario::AppendixB { oscillatory: true, .. } => ScenarioKind::AppendixBOscillatory,
            Scenario::GaussianBounds { .. } => ScenarioKind::GaussianBounds,
            Scenario::DecoherenceMeasures { .. } => ScenarioKind::DecoherenceMeasures,
            Scenario::Custom { .. } => ScenarioKind::Custom,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Scenario::Fig2Depolarizing { seed, .. } | Scenario::DecoherenceMeasures { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub output_dir: Option<PathBuf>,
}

/// Parse and validate a config; every problem found is reported at once.
pub fn parse_config(text: &str, overrides: &Overrides) -> Result<ScenarioConfig, ConfigError> {
    let doc: Table = toml::from_str(text).map_err(|e| ConfigError(vec![Diagnostic::new("<document>", e.message())]))?;
    let mut diags = Vec::new();
    for key in doc.keys() {
        if !["scenario", "parameters", "output"].contains(&key.as_str()) {
            diags.push(Diagnostic::new(key.clone(), "unknown top-level table"));
        }
    }
    let kind = scenario_kind(&doc, &mut diags);
    let output_dir = output_dir(&doc, &mut diags);
    let params = match doc.get("parameters") {
        Some(Value::Table(t)) => Some(t.clone()),
        Some(other) => {
            diags.push(Diagnostic::new("parameters", format!("expected a table, found {}", other.type_str())));
            None
        }
        None => {
            diags.push(Diagnostic::new("parameters", "missing required table"));
            None
        }
    };
    let scenario = match kind {
        Some(kind) => {
            let mut params = params.unwrap_or_default();
            apply_overrides(kind.spec(), &mut params, overrides);
            let mut reader = Reader {
                spec: kind.spec(),
                table: &params,
                diags: &mut diags,
            };
            let scenario = reader.scenario();
            if doc.contains_key("parameters") {
                reader.unknown_fields();
            }
            scenario
        }
        None => None,
    };
    match scenario {
        Some(scenario) if diags.is_empty() => Ok(ScenarioConfig { scenario, output_dir }),
        _ => Err(ConfigError(diags)),
    }
}

/// Diagnostics for a config without running it; empty when valid.
pub fn validate(text: &str) -> Vec<Diagnostic> {
    match parse_config(text, &Overrides::default()) {
        Ok(_) => Vec::new(),
        Err(ConfigError(d)) => d,
    }
}

fn scenario_kind(doc: &Table, diags: &mut Vec<Diagnostic>) -> Option<ScenarioKind> {
    let kinds: Vec<_> = ScenarioKind::ALL.iter().map(|k| k.tag()).collect();
    match doc.get("scenario") {
        Some(Value::Table(t)) => match t.get("kind") {
            Some(Value::String(s)) => match s.parse() {
                Ok(k) => Some(k),
                Err(e) => {
                    diags.push(Diagnostic::new("scenario.kind", e));
                    None
                }
            },
            Some(other) => {
                diags.push(Diagnostic::new("scenario.kind", format!("expected a string, found {}", other.type_str())));
                None
            }
            None => {
                diags.push(Diagnostic::new(
                    "scenario.kind",
                    format!("missing required field (one of {})", kinds.join(", ")),
                ));
                None
            }
        },
        _ => {
            diags.push(Diagnostic::new(
                "scenario.kind",
                format!("missing required field (one of {})", kinds.join(", ")),
            ));
            None
        }
    }
}

fn output_dir(doc: &Table, diags: &mut Vec<Diagnostic>) -> Option<PathBuf> {
    match doc.get("output") {
        None => None,
        Some(Value::Table(t)) => match t.get("dir") {
            Some(Value::String(s)) => Some(PathBuf::from(s)),
            Some(other) => {
                diags.push(Diagnostic::new("output.dir", format!("expected a string, found {}", other.type_str())));
                None
            }
            None => None,
        },
        Some(other) => {
            diags.push(Diagnostic::new("output", format!("expected a table, found {}", other.type_str())));
            None
        }
    }
}

fn apply_overrides(spec: &ScenarioSpec, params: &mut Table, overrides: &Overrides) {
    if let (Some(seed), Some(_)) = (overrides.seed, spec.field("seed")) {
        params.insert("seed".into(), Value::Integer(seed as i64));
    }
    if let Some(tol) = overrides.tolerance {
        params.insert("tolerance".into(), Value::Float(tol));
    }
}

struct Reader<'a> {
    spec: &'static ScenarioSpec,
    table: &'a Table,
    diags: &'a mut Vec<Diagnostic>,
}

impl Reader<'_> {
    fn path(name: &str) -> String {
        format!("parameters.{name}")
    }

    fn error(&mut self, name: &str, message: impl Into<String>) {
        self.diags.push(Diagnostic::new(Self::path(name), message));
    }

    fn raw(&mut self, name: &str) -> Option<&Value> {
        let spec = self.spec.field(name).expect("field is catalogued");
        let value = self.table.get(name);
        if value.is_none() {
            self.diags.push(Diagnostic::new(
                Self::path(name),
                format!("missing required field ({}: {})", spec.ty.describe(), spec.doc),
            ));
        }
        value
    }

    fn float(&mut self, name: &str) -> Option<f64> {
        match self.raw(name)? {
            Value::Float(x) if x.is_finite() => Some(*x),
            Value::Float(x) => {
                let x = *x;
                self.error(name, format!("must be finite, got {x}"));
                None
            }
            Value::Integer(i) => Some(*i as f64),
            other => {
                let found = other.type_str();
                self.error(name, format!("expected a float, found {found}"));
                None
            }
        }
    }

    fn positive(&mut self, name: &str) -> Option<f64> {
        let x = self.float(name)?;
        if x > 0.0 && x.is_finite() {
            Some(x)
        } else {
            self.error(name, format!("must be positive and finite, got {x}"));
            None
        }
    }

    fn non_negative(&mut self, name: &str) -> Option<f64> {
        let x = self.float(name)?;
        if x >= 0.0 && x.is_finite() {
            Some(x)
        } else {
            self.error(name, format!("must be non-negative and finite, got {x}"));
            None
        }
    }

    fn integer(&mut self, name: &str, min: i64) -> Option<i64> {
        match self.raw(name)? {
            Value::Integer(i) if *i >= min => Some(*i),
            Value::Integer(i) => {
                let i = *i;
                self.error(name, format!("must be at least {min}, got {i}"));
                None
            }
            other => {
                let found = other.type_str();
                self.error(name, format!("expected an integer, found {found}"));
                None
            }
        }
    }

    fn count(&mut self, name: &str, min: i64) -> Option<usize> {
        self.integer(name, min).map(|i| i as usize)
    }

    fn float_list(&mut self, name: &str) -> Option<Vec<f64>> {
        let items = match self.raw(name)? {
            Value::Array(a) => a.clone(),
            other => {
                let found = other.type_str();
                self.error(name, format!("expected a list of floats, found {found}"));
                return None;
            }
        };
        let values: Option<Vec<f64>> = items
            .iter()
            .map(|v| v.as_float().or_else(|| v.as_integer().map(|i| i as f64)))
            .collect();
        match values {
            Some(v) if !v.is_empty() => Some(v),
            Some(_) => {
                self.error(name, "list must not be empty");
                None
            }
            None => {
                self.error(name, "every entry must be a number");
                None
            }
        }
    }

    fn text(&mut self, name: &str, allowed: &[&str]) -> Option<String> {
        match self.raw(name)? {
            Value::String(s) if allowed.contains(&s.as_str()) => Some(s.clone()),
            Value::String(s) => {
                let s = s.clone();
                self.error(name, format!("`{s}` is not one of {}", allowed.join(", ")));
                None
            }
            other => {
                let found = other.type_str();
                self.error(name, format!("expected a string, found {found}"));
                None
            }
        }
    }

    fn document<T: serde::de::DeserializeOwned>(&mut self, name: &str) -> Option<T> {
        let value = self.raw(name)?.clone();
        match value.try_into::<T>() {
            Ok(doc) => Some(doc),
            Err(e) => {
                self.error(name, e.message().to_string());
                None
            }
        }
    }

    fn grid(&mut self) -> Option<TimeGrid> {
        let (t_start, t_end, t_step) = (self.float("t_start"), self.float("t_end"), self.positive("t_step"));
        let (t_start, t_end, t_step) = (t_start?, t_end?, t_step?);
        if t_end <= t_start {
            self.error("t_end", format!("must exceed t_start = {t_start}, got {t_end}"));
            return None;
        }
        let intervals = (t_end - t_start) / t_step;
        if (intervals - intervals.round()).abs() > 1e-6 * intervals.max(1.0) {
            self.error("t_step", format!("(t_end - t_start) / t_step = {intervals} is not an integer"));
            return None;
        }
        if intervals.round() < 2.0 {
            self.error("t_step", "the grid needs at least three points");
            return None;
        }
        Some(TimeGrid { t_start, t_end, t_step })
    }

    fn non_negative_grid(&mut self) -> Option<TimeGrid> {
        let grid = self.grid()?;
        if grid.t_start < 0.0 {
            self.error("t_start", format!("must be non-negative, got {}", grid.t_start));
            return None;
        }
        Some(grid)
    }

    fn seed(&mut self) -> Option<u64> {
        self.integer("seed", 0).map(|s| s as u64)
    }

    fn scenario(&mut self) -> Option<Scenario> {
        match self.spec.kind {
            ScenarioKind::Fig1Gadc => self.fig1(),
            ScenarioKind::Fig2Depolarizing => self.fig2(),
            ScenarioKind::AppendixBDamping => self.appendix_b(false),
            ScenarioKind::AppendixBOscillatory => self.appendix_b(true),
            ScenarioKind::GaussianBounds => self.gaussian(),
            ScenarioKind::DecoherenceMeasures => self.measures(),
            ScenarioKind::Custom => self.custom(),
        }
    }

    fn fig1(&mut self) -> Option<Scenario> {
        let omega = self.float("omega");
        let grid = self.non_negative_grid();
        let eps0 = self.positive("eps0");
        let tolerance = self.positive("tolerance");
        Some(Scenario::Fig1Gadc {
            omega: omega?,
            grid: grid?,
            eps0: eps0?,
            tolerance: tolerance?,
        })
    }

    fn fig2(&mut self) -> Option<Scenario> {
        let d = self.count("d", 2);
        let q_values = self.float_list("q_values");
        let starts = self.count("starts", 1);
        let seed = self.seed();
        let tolerance = self.positive("tolerance");
        let (d, q_values) = (d?, q_values?);
        if d > 6 {
            self.error("d", format!("dimensions above 6 are not supported, got {d}"));
            return None;
        }
        let q_max = depolarizing_q_max(d);
        let mut ok = true;
        for &q in &q_values {
            if !(0.0..=q_max).contains(&q) {
                self.error(
                    "q_values",
                    format!("q = {q} out of range: need 0 <= q <= d^2/(d^2-1) = {q_max} for d = {d}"),
                );
                ok = false;
            }
        }
        ok.then_some(())?;
        Some(Scenario::Fig2Depolarizing {
            d,
            q_values,
            starts: starts?,
            seed: seed?,
            tolerance: tolerance?,
        })
    }

    fn appendix_b(&mut self, oscillatory: bool) -> Option<Scenario> {
        let grid = self.non_negative_grid();
        let fd_step = self.positive("fd_step");
        let exclusion = self.non_negative("exclusion");
        let tolerance = self.positive("tolerance");
        Some(Scenario::AppendixB {
            oscillatory,
            grid: grid?,
            fd_step: fd_step?,
            exclusion: exclusion?,
            tolerance: tolerance?,
        })
    }

    fn gaussian(&mut self) -> Option<Scenario> {
        let process = self.text("process", &["amplifier", "lossy", "additive"]);
        let noise = self.non_negative("noise");
        let initial = self.non_negative("initial_mean_photons");
        let cutoff = self.count("cutoff", 2);
        let grid = self.non_negative_grid();
        let tolerance = self.positive("tolerance");
        let process = match process?.as_str() {
            "amplifier" => BosonicProcess::Amplifier,
            "lossy" => BosonicProcess::Lossy,
            _ => BosonicProcess::Additive,
        };
        Some(Scenario::GaussianBounds {
            process,
            noise: noise?,
            initial_mean_photons: initial?,
            cutoff: cutoff?,
            grid: grid?,
            tolerance: tolerance?,
        })
    }

    fn measures(&mut self) -> Option<Scenario> {
        let process = self.text("process", &["gadc", "dephasing"]);
        let process = match process.as_deref() {
            Some("gadc") => self.float("omega").map(|omega| QubitProcess::Gadc { omega }),
            Some(_) => self.document::<TimeFunction>("rate").map(|rate| QubitProcess::Dephasing { rate }),
            None => None,
        };
        let grid = self.non_negative_grid();
        let pure_states = self.count("pure_states", 0);
        let mixed_states = self.count("mixed_states", 0);
        let bloch_states = self.count("bloch_states", 0);
        let orthogonal_pairs = self.count("orthogonal_pairs", 0);
        let mixed_pairs = self.count("mixed_pairs", 0);
        let seed = self.seed();
        let tolerance = self.positive("tolerance");
        if let (Some(o), Some(m)) = (orthogonal_pairs, mixed_pairs) {
            if o + m == 0 {
                self.error("orthogonal_pairs", "at least one state pair is required");
                return None;
            }
        }
        Some(Scenario::DecoherenceMeasures {
            process: process?,
            grid: grid?,
            pure_states: pure_states?,
            mixed_states: mixed_states?,
            bloch_states: bloch_states?,
            orthogonal_pairs: orthogonal_pairs?,
            mixed_pairs: mixed_pairs?,
            seed: seed?,
            tolerance: tolerance?,
        })
    }

    fn custom(&mut self) -> Option<Scenario> {
        let generator = self.document::<GeneratorDoc>("generator");
        let initial_state = self.document::<MatrixDoc>("initial_state");
        let grid = self.non_negative_grid();
        let tolerance = self.positive("tolerance");
        let (generator, initial_state) = (generator?, initial_state?);
        let built = qentropy::channels::LindbladGenerator::try_from(&generator);
        if let Err(e) = &built {
            self.error("generator", e.to_string());
        }
        let rho = qentropy::linalg::DensityMatrix::try_from(initial_state.clone());
        match (&built, &rho) {
            (_, Err(e)) => self.error("initial_state", e.to_string()),
            (Ok(g), Ok(r)) if g.dim() != r.dim() => self.error(
                "initial_state",
                format!("dimension {} does not match generator dimension {}", r.dim(), g.dim()),
            ),
            _ => {}
        }
        if built.is_err() || rho.is_err() {
            return None;
        }
        Some(Scenario::Custom {
            generator,
            initial_state,
            grid: grid?,
            tolerance: tolerance?,
        })
    }

    /// Flag parameters that the scenario does not use, including ones
    /// that belong to a different `process`.
    fn unknown_fields(&mut self) {
        let process = self.table.get("process").and_then(Value::as_str).map(str::to_owned);
        let keys: Vec<String> = self.table.keys().cloned().collect();
        for key in keys {
            match self.spec.field(&key) {
                None => self.error(&key, format!("unknown field for scenario {}", self.spec.kind)),
                Some(f) => {
                    if let Requirement::WhenProcess(p) = f.required {
                        if process.as_deref().is_some_and(|actual| actual != p) {
                            self.error(&key, format!("only used when process = {p}"));
                        }
                    }
                }
            }
        }
    }
}

/// Required field names of a scenario kind, for documentation and errors.
pub fn required_fields(kind: ScenarioKind) -> Vec<&'static str> {
    kind.spec()
        .fields
        .iter()
        .filter(|f| f.required == Requirement::Always)
        .map(|f| f.name)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG2: &str = r#"
        [scenario]
        kind = "fig2_depolarizing"
        [parameters]
        d = 2
        q_values = [0.1, 1.0]
        starts = 4
        seed = 3
        tolerance = 1e-3
    "#;

    #[test]
    fn valid_config_parses() {
        let cfg = parse_config(FIG2, &Overrides::default()).unwrap();
        assert_eq!(cfg.scenario.kind(), ScenarioKind::Fig2Depolarizing);
        assert_eq!(cfg.scenario.seed(), Some(3));
        assert!(cfg.output_dir.is_none());
    }

    #[test]
    fn overrides_replace_seed_and_tolerance() {
        let cfg = parse_config(
            FIG2,
            &Overrides {
                seed: Some(11),
                tolerance: Some(0.5),
            },
        )
        .unwrap();
        match cfg.scenario {
            Scenario::Fig2Depolarizing { seed, tolerance, .. } => {
                assert_eq!(seed, 11);
                assert_eq!(tolerance, 0.5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn q_out_of_range_cites_bound() {
        let diags = validate(&FIG2.replace("[0.1, 1.0]", "[1.5]"));
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("d^2/(d^2-1)"), "{}", diags[0]);
    }

    #[test]
    fn non_finite_floats_are_rejected() {
        let diags = validate(&FIG2.replace("[0.1, 1.0]", "[0.1, nan]"));
        assert!(!diags.is_empty());
        let text = "[scenario]\nkind = \"appendixB_damping\"\n[parameters]\nt_start = 0.0\nt_end = inf\n\
                    t_step = 0.1\nfd_step = 1e-4\nexclusion = 0.1\ntolerance = 1e-6\n";
        let diags = validate(text);
        assert_eq!(diags.len(), 1, "{diags:?}");
        assert!(diags[0].message.contains("finite"));
    }

    #[test]
    fn empty_config_lists_required_fields() {
        let diags = validate("");
        let fields: Vec<_> = diags.iter().map(|d| d.field.as_str()).collect();
        assert_eq!(fields, ["scenario.kind", "parameters"]);
        let diags = validate("[scenario]\nkind = \"fig1_gadc\"\n[parameters]\n");
        let fields: Vec<_> = diags.iter().map(|d| d.field.clone()).collect();
        let expected: Vec<_> = required_fields(ScenarioKind::Fig1Gadc)
            .into_iter()
            .map(|f| format!("parameters.{f}"))
            .collect();
        assert_eq!(fields, expected);
    }

    #[test]
    fn unknown_and_mistyped_fields() {
        let diags = validate(&FIG2.replace("seed = 3", "seed = \"x\"\nextra = 1"));
        assert_eq!(diags.len(), 2, "{diags:?}");
        assert!(diags.iter().any(|d| d.field == "parameters.extra"));
        assert!(diags.iter().any(|d| d.field == "parameters.seed" && d.message.contains("integer")));
        assert!(!validate("[scenario]\nkind = \"fig9\"\n[parameters]\n").is_empty());
        assert!(!validate("not toml =").is_empty());
    }

    #[test]
    fn process_specific_fields() {
        let base = r#"
            [scenario]
            kind = "decoherence_measures"
            [parameters]
            process = "dephasing"
            rate = { kind = "sinusoid", offset = 0.0, amplitude = 1.0, omega = 1.0, phase = 0.0 }
            t_start = 0.0
            t_end = 1.0
            t_step = 0.1
            pure_states = 1
            mixed_states = 0
            bloch_states = 0
            orthogonal_pairs = 1
            mixed_pairs = 0
            seed = 1
            tolerance = 1e-5
        "#;
        assert!(validate(base).is_empty(), "{:?}", validate(base));
        let diags = validate(&format!("{base}omega = 5.0\n"));
        assert_eq!(diags.len(), 1);
        assert!(diags[0].message.contains("process = gadc"));
        let diags = validate(&base.replace("\"dephasing\"", "\"gadc\""));
        assert!(diags.iter().any(|d| d.field == "parameters.omega"));
    }

    #[test]
    fn grid_checks() {
        let fig1 = r#"
            [scenario]
            kind = "fig1_gadc"
            [parameters]
            omega = 5.0
            t_start = 0.0
            t_end = 3.0
            t_step = 0.001
            eps0 = 1e-3
            tolerance = 1e-4
        "#;
        let cfg = parse_config(fig1, &Overrides::default()).unwrap();
        match cfg.scenario {
            Scenario::Fig1Gadc { grid, .. } => assert_eq!(grid.points(), 3001),
            other => panic!("unexpected {other:?}"),
        }
        assert!(!validate(&fig1.replace("t_step = 0.001", "t_step = 0.0007")).is_empty());
        assert!(!validate(&fig1.replace("t_end = 3.0", "t_end = -1.0")).is_empty());
    }
}
