//! Verdicts with the evidence that produced them.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

impl Verdict {
    /// Process exit code: 0 holds, 1 fails, 3 inconclusive.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
            Verdict::Inconclusive => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float { tol: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Evidence {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Evidence {
        Evidence { name: name.into(), passed, detail: detail.into() }
    }
}

/// A verdict is `holds` only if every evidence item passed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub theorem: String,
    pub verdict: Verdict,
    pub reason: String,
    pub conclusions: Vec<String>,
    pub evidence: Vec<Evidence>,
    pub backend: Backend,
}

impl Certificate {
    /// `holds` iff all evidence passed; otherwise `fails`.
    pub fn from_evidence(theorem: impl Into<String>, evidence: Vec<Evidence>, backend: Backend) -> Certificate {
        let ok = evidence.iter().all(|e| e.passed);
        let reason = if ok {
            "all checks passed".to_string()
        } else {
            let bad: Vec<&str> = evidence.iter().filter(|e| !e.passed).map(|e| e.name.as_str()).collect();
            format!("failed: {}", bad.join(", "))
        };
        Certificate {
            theorem: theorem.into(),
            verdict: if ok { Verdict::Holds } else { Verdict::Fails },
            reason,
            conclusions: Vec::new(),
            evidence,
            backend,
        }
    }

    pub fn inconclusive(theorem: impl Into<String>, reason: impl Into<String>, evidence: Vec<Evidence>) -> Certificate {
        Certificate {
            theorem: theorem.into(),
            verdict: Verdict::Inconclusive,
            reason: reason.into(),
            conclusions: Vec::new(),
            evidence,
            backend: Backend::Exact,
        }
    }

    /// Forces `fails` with a reason, keeping the evidence.
    pub fn failing(mut self, reason: impl Into<String>) -> Certificate {
        self.verdict = Verdict::Fails;
        self.reason = reason.into();
        self
    }

    pub fn with_conclusions(mut self, c: Vec<String>) -> Certificate {
        self.conclusions = c;
        self
    }

    /// Checks the structural invariant.
    pub fn is_consistent(&self) -> bool {
        self.verdict != Verdict::Holds || self.evidence.iter().all(|e| e.passed)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} ({})", self.theorem, self.verdict, self.reason)?;
        for e in &self.evidence {
            writeln!(f, "  [{}] {}: {}", if e.passed { "ok" } else { "FAIL" }, e.name, e.detail)?;
        }
        for c in &self.conclusions {
            writeln!(f, "  => {c}")?;
        }
        match self.backend {
            Backend::Exact => write!(f, "  backend: exact"),
            Backend::Float { tol } => write!(f, "  backend: float (tol {tol:e})"),
        }
    }
}
