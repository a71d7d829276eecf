//! Violation witnesses returned by axiom checks.

use std::fmt;

use serde::Serialize;

use crate::exactlin::{Matrix, VecSpace};

/// Names the failed identity and one coordinate where its two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: String,
    /// Basis element of the source at which the two sides were evaluated.
    pub input: String,
    /// Output coordinate that differs.
    pub output: String,
    pub lhs: String,
    pub rhs: String,
}

/// `Ok(())` on success, otherwise the first witness found.
pub type Verdict = std::result::Result<(), Violation>;

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails on {} at coordinate {}: {} ≠ {}",
            self.axiom, self.input, self.output, self.lhs, self.rhs
        )
    }
}

/// Compares two matrices of maps `source -> target`.
pub fn compare(axiom: &str, lhs: &Matrix, rhs: &Matrix, source: &VecSpace, target: &VecSpace) -> Verdict {
    debug_assert_eq!((lhs.rows(), lhs.cols()), (rhs.rows(), rhs.cols()));
    match lhs.first_difference(rhs) {
        None => Ok(()),
        Some((i, j)) => Err(Violation {
            axiom: axiom.to_string(),
            input: label_or_index(source, j),
            output: label_or_index(target, i),
            lhs: lhs.get(i, j).to_string(),
            rhs: rhs.get(i, j).to_string(),
        }),
    }
}

fn label_or_index(v: &VecSpace, i: usize) -> String {
    if i < v.dim() {
        v.label(i).to_string()
    } else {
        format!("#{i}")
    }
}

/// Shape mismatch reported as a violation.
pub fn shape(axiom: &str, what: &str) -> Violation {
    Violation {
        axiom: axiom.to_string(),
        input: what.to_string(),
        output: String::new(),
        lhs: String::new(),
        rhs: String::new(),
    }
}
