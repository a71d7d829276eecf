//! Batch front end: scenario files, task execution, fuzz campaigns and reports.

pub mod fuzz;
pub mod report;
pub mod scenario;
pub mod tasks;

pub use fuzz::{fuzz, Family, FAMILIES};
pub use report::{Outcome, Report, TaskReport};
pub use scenario::{bundled, parse, validate, Objects, Scenario, BUNDLED};
pub use tasks::{run, Defaults, OPS};

use crate::error::Error;

/// A scenario given by path or by bundled name, read and parsed.
pub fn load(source: &str) -> Result<Scenario, Error> {
    let text = match bundled(source) {
        Some(s) => s.to_string(),
        None => std::fs::read_to_string(source).map_err(|e| Error::Scenario { path: source.into(), message: e.to_string() })?,
    };
    parse(&text)
}

/// Validates and runs; validation diagnostics become one error entry each.
pub fn run_source(source: &str, defaults: Defaults) -> Report {
    let s = match load(source) {
        Ok(s) => s,
        Err(e) => return failed_validation(source, defaults.seed, vec![e]),
    };
    match validate(&s) {
        Ok(o) => run(&s, &o, defaults),
        Err(diags) => failed_validation(&s.name, s.seed.unwrap_or(defaults.seed), diags),
    }
}

fn failed_validation(source: &str, seed: u64, diags: Vec<Error>) -> Report {
    let mut r = Report::new(source, seed, crate::smoothg::Orientation::Inverse);
    for (i, d) in diags.into_iter().enumerate() {
        let mut t = TaskReport::new(i, "validate", &[]);
        t.outcome = Outcome::Error;
        t.message = Some(d.to_string());
        r.push(t);
    }
    r
}
