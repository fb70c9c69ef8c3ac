//! Declarative scenario runner for the `qentropy` library.
//!
//! A scenario config names one of the catalogued pipelines and gives every
//! physical parameter explicitly. Running it writes plot-ready comma-separated
//! tables and a JSON report of pass/fail checks.

pub mod catalog;
pub mod config;
pub mod report;
pub mod scenarios;

pub use catalog::{catalog_text, ScenarioKind};
pub use config::{parse_config, validate, ConfigError, Diagnostic, Overrides, Scenario, ScenarioConfig};
pub use report::{run, RunReport};
pub use scenarios::{execute, Check, Outcome, Table};
