use serde::{Deserialize, Serialize};

use super::emp::EmpMatrix;

/// Interval `[lo, hi]` spanned by the one-sided branch derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subdifferential {
    pub lo: f64,
    pub hi: f64,
}

impl Subdifferential {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.lo - tol <= x && x <= self.hi + tol
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityKind {
    NotCritical,
    Critical,
    /// Critical with a trace-free nonzero matrix: the lowest branch of the
    /// cluster is locally strictly maximized and the highest strictly
    /// minimized.
    StrictSaddlePair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub critical: bool,
    pub trace_zero: bool,
    /// Constant coefficient zero on every boundary; unknown for matrices
    /// built from raw entries.
    pub volume_preserving: Option<bool>,
    pub zero_matrix: bool,
    pub strict_saddle_pair: bool,
}

impl Classification {
    pub fn kind(&self) -> CriticalityKind {
        if self.strict_saddle_pair {
            CriticalityKind::StrictSaddlePair
        } else if self.critical {
            CriticalityKind::Critical
        } else {
            CriticalityKind::NotCritical
        }
    }
}

/// Zero thresholds used by [`subdifferential_and_classify`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    /// Values below `rel_tol · scale` count as zero, where `scale` is the
    /// matrix's own coefficient scale.
    pub rel_tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { rel_tol: 1e-10 }
    }
}

pub fn subdifferential_and_classify(
    m: &EmpMatrix,
    opts: ClassifyOptions,
) -> (Subdifferential, Classification) {
    let sub = Subdifferential {
        lo: m.eigenvalues.first().copied().unwrap_or(0.0),
        hi: m.eigenvalues.last().copied().unwrap_or(0.0),
    };
    let tol = opts.rel_tol * m.scale;
    let zero_matrix = m.max_abs_entry() <= tol;
    let trace_zero = m.trace.abs() <= tol;
    let critical = sub.contains(0.0, tol);
    let strict_saddle_pair = trace_zero && !zero_matrix;
    (
        sub,
        Classification {
            critical,
            trace_zero,
            volume_preserving: m.volume_preserving,
            zero_matrix,
            strict_saddle_pair,
        },
    )
}
