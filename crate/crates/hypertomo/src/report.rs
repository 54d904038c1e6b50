//! Structured results of certified numerical checks.

/// Outcome of a randomized or scanned verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The measured quantity is within its own error estimate.
    Indeterminate,
    /// The check ran on degenerate input (e.g. epsilon = 0) and is vacuous.
    Degenerate,
}

impl Verdict {
    pub fn passed(self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
            Verdict::Degenerate => "DEGENERATE",
        };
        f.write_str(s)
    }
}

/// Result of a certified check: worst margin over all samples, the tolerance
/// it was compared against, and the seed that reproduces the run.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    pub verdict: Verdict,
    /// Worst (smallest) margin seen; the check passes iff margin >= -tolerance.
    pub worst_margin: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
    /// Point (or parameter tuple) attaining the worst margin, if recorded.
    pub witness: Option<Vec<f64>>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }
}
