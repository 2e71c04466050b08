use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { reason: String },
    Skipped { reason: String },
}

impl Verdict {
    pub fn fail(reason: impl Into<String>) -> Self {
        Verdict::Fail {
            reason: reason.into(),
        }
    }

    pub fn skipped(reason: impl Into<String>) -> Self {
        Verdict::Skipped {
            reason: reason.into(),
        }
    }

    pub fn from_bool(ok: bool, reason: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail { reason: reason() }
        }
    }

    /// "pass", "FAIL" or "skip".
    pub fn short(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "FAIL",
            Verdict::Skipped { .. } => "skip",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail { reason } => write!(f, "FAIL ({reason})"),
            Verdict::Skipped { reason } => write!(f, "skipped ({reason})"),
        }
    }
}

/// One verified statement inside a grid cell.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub m: u32,
    pub verdict: Verdict,
    /// File name of the written certificate, relative to the certificate
    /// directory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<String>,
    /// Residue witness of a non-member, in the span basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub p: u64,
    pub e: u32,
    pub span_dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub howell_rows: Option<usize>,
    pub verdict: Verdict,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCount {
    pub identity: String,
    pub passed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomRecord {
    pub p: u64,
    pub trials: usize,
    pub identities: Vec<IdentityCount>,
    pub prop1_passed: usize,
    pub frobenius_passed: usize,
    pub division_errors: usize,
    /// First few failures, rendered.
    pub failures: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaRecord {
    pub p: u64,
    pub n: u32,
    pub substitution: Verdict,
    pub power_congruence: Verdict,
    pub diagonal: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub n: i64,
    pub bound: u64,
}

pub const SCOPE: &str = "statements over Z_(p) are checked through their images modulo p^m only";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub scope: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub axioms: Vec<AxiomRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub lemmas: Vec<LemmaRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cells: Vec<CellRecord>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            command: command.to_owned(),
            config: config.clone(),
            scope: SCOPE,
            axioms: Vec::new(),
            lemmas: Vec::new(),
            cells: Vec::new(),
            passed: true,
        }
    }

    /// Sets `passed` from the collected verdicts: no verdict may be a failure.
    pub fn finish(mut self) -> Self {
        let axioms = self.axioms.iter().map(|a| &a.verdict);
        let lemmas = self
            .lemmas
            .iter()
            .flat_map(|l| [&l.substitution, &l.power_congruence, &l.diagonal]);
        let cells = self
            .cells
            .iter()
            .flat_map(|c| std::iter::once(&c.verdict).chain(c.checks.iter().map(|k| &k.verdict)));
        self.passed = !axioms.chain(lemmas).chain(cells).any(Verdict::is_fail);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        for a in &self.axioms {
            let _ = writeln!(out, "axioms p={} trials={}: {}", a.p, a.trials, a.verdict);
            for c in &a.identities {
                let _ = writeln!(out, "  {:<24} {}/{}", c.identity, c.passed, a.trials);
            }
            let _ = writeln!(out, "  {:<24} {}/{}", "prop1", a.prop1_passed, a.trials);
            let _ = writeln!(
                out,
                "  {:<24} {}/{}",
                "frobenius", a.frobenius_passed, a.trials
            );
            let _ = writeln!(out, "  {:<24} {}", "division errors", a.division_errors);
            for f in &a.failures {
                let _ = writeln!(out, "  failure: {f}");
            }
        }
        if !self.lemmas.is_empty() {
            let _ = writeln!(
                out,
                "{:>3} {:>3}  {:<14} {:<14} diagonal",
                "p", "n", "substitution", "congruence"
            );
        }
        for l in &self.lemmas {
            let _ = writeln!(
                out,
                "{:>3} {:>3}  {:<14} {:<14} {}",
                l.p,
                l.n,
                l.substitution.short(),
                l.power_congruence.short(),
                l.diagonal.short()
            );
            for v in [&l.substitution, &l.power_congruence, &l.diagonal] {
                if let Verdict::Fail { reason } = v {
                    let _ = writeln!(out, "          {reason}");
                }
            }
        }
        for c in &self.cells {
            let _ = write!(
                out,
                "p={} e={} span={}: {}",
                c.p, c.e, c.span_dim, c.verdict
            );
            if let Some(ms) = c.millis {
                let _ = write!(out, " [{ms} ms]");
            }
            out.push('\n');
            for k in &c.checks {
                let label = match k.k {
                    Some(k_) => format!("{} k={}", k.name, k_),
                    None => k.name.clone(),
                };
                let _ = write!(out, "  {:<16} m={:<3} {}", label, k.m, k.verdict);
                if let Some(w) = &k.witness {
                    let _ = write!(out, "  witness {w}");
                }
                out.push('\n');
            }
        }
        let _ = writeln!(
            out,
            "overall: {}",
            if self.passed { "pass" } else { "FAIL" }
        );
        out
    }
}
