//! Reports and their two renderings.
//!
//! The structured rendering is pretty-printed JSON whose objects are ordered
//! maps, so a fixed scenario and seed give byte-identical output.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::smoothg::Orientation;

pub const TOOL: &str = "comodcontra";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Value,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub contratensor: &'static str,
    pub coaction: &'static str,
    pub contraaction: &'static str,
    pub prng: &'static str,
}

impl Conventions {
    pub fn new(orientation: Orientation) -> Conventions {
        Conventions {
            contratensor: orientation.describe(),
            coaction: "a representation ρ of a finite group gives the left comodule with coefficient ρ(h⁻¹) at δ_h",
            contraaction: "a representation ρ gives the contramodule with π_h = ρ(h⁻¹)",
            prng: "ChaCha8, seeded per instance from the run seed",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TaskReport {
    pub index: usize,
    pub op: String,
    pub args: Vec<String>,
    pub outcome: Outcome,
    pub value: Value,
    pub certificates: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl TaskReport {
    pub fn new(index: usize, op: &str, args: &[String]) -> TaskReport {
        TaskReport {
            index,
            op: op.to_string(),
            args: args.to_vec(),
            outcome: Outcome::Value,
            value: Value::Null,
            certificates: Value::Null,
            message: None,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub values: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub source: String,
    pub seed: u64,
    pub conventions: Conventions,
    pub tasks: Vec<TaskReport>,
    pub summary: Summary,
}

impl Report {
    pub fn new(source: &str, seed: u64, orientation: Orientation) -> Report {
        Report {
            tool: TOOL,
            version: VERSION,
            source: source.to_string(),
            seed,
            conventions: Conventions::new(orientation),
            tasks: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, t: TaskReport) {
        match t.outcome {
            Outcome::Pass => self.summary.passed += 1,
            Outcome::Fail => self.summary.failed += 1,
            Outcome::Value => self.summary.values += 1,
            Outcome::Error => self.summary.errors += 1,
        }
        self.tasks.push(t);
    }

    /// Nonzero iff a pass-type task failed or any task errored.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.failed + self.summary.errors > 0)
    }

    pub fn structured(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}  source={}  seed={}", self.tool, self.version, self.source, self.seed);
        let _ = writeln!(out, "contratensor: {}", self.conventions.contratensor);
        for t in &self.tasks {
            let outcome = match t.outcome {
                Outcome::Pass => "PASS",
                Outcome::Fail => "FAIL",
                Outcome::Value => "VALUE",
                Outcome::Error => "ERROR",
            };
            let _ = writeln!(out, "[{}] {outcome:<5} {}({})", t.index, t.op, t.args.join(", "));
            if let Some(m) = &t.message {
                let _ = writeln!(out, "      {m}");
            }
            render_value(&mut out, &t.value, 6);
        }
        let s = &self.summary;
        let _ = writeln!(out, "passed {}  failed {}  values {}  errors {}", s.passed, s.failed, s.values, s.errors);
        out
    }
}

/// Scalars inline; a `homology` object becomes a table with one row per
/// degree, ascending.
fn render_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Null => {}
        Value::Object(map) => {
            for (k, x) in map {
                match x {
                    Value::Object(inner) if k == "homology" => {
                        let _ = writeln!(out, "{pad}homology:");
                        let mut rows: Vec<(i64, &Value)> = inner.iter().filter_map(|(d, h)| Some((d.parse().ok()?, h))).collect();
                        rows.sort_by_key(|(d, _)| *d);
                        for (d, h) in rows {
                            let _ = writeln!(out, "{pad}  H^{d:<3} {h}");
                        }
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {x}");
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{other}");
        }
    }
}
