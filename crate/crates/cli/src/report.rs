//! Deterministic run reports: a human rendering and a byte-stable JSON form.
//!
//! The JSON form deliberately excludes wall time so that repeated runs with
//! the same inputs and seed are byte identical; timing goes to the human
//! output only.

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING-KEBAB-CASE")]
pub enum Status {
    Pass,
    Fail,
    Flat,
    NotFlat,
}

impl Status {
    pub fn ok(self) -> bool {
        matches!(self, Status::Pass | Status::Flat)
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flat => "FLAT",
            Status::NotFlat => "NOT-FLAT",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

impl Verdict {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Verdict { name: name.into(), status, max: None, threshold: None, witness: None, samples: None }
    }

    pub fn with_max(mut self, max: f64, threshold: f64) -> Self {
        self.max = Some(max);
        self.threshold = Some(threshold);
        self
    }

    pub fn with_witness(mut self, witness: impl Into<String>) -> Self {
        self.witness = Some(witness.into());
        self
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = Some(samples);
        self
    }

    /// PASS/FAIL from a residual against a threshold.
    pub fn residual(name: impl Into<String>, max: f64, threshold: f64) -> Self {
        let status = if max <= threshold { Status::Pass } else { Status::Fail };
        Verdict::new(name, status).with_max(max, threshold)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub seed: u64,
    pub verdicts: Vec<Verdict>,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64) -> Self {
        Report { command: command.into(), inputs: Vec::new(), seed, verdicts: Vec::new() }
    }

    pub fn add_input(&mut self, path: impl Into<String>, content: &[u8]) {
        self.inputs.push(InputRecord { path: path.into(), sha256: sha256_hex(content) });
    }

    pub fn push(&mut self, v: Verdict) {
        self.verdicts.push(v);
    }

    pub fn all_ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.status.ok())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human rendering; `elapsed` is appended here and never enters the JSON.
    pub fn render_human(&self, elapsed: std::time::Duration) -> String {
        let mut out = String::new();
        out.push_str(&format!("== {} (seed {})\n", self.command, self.seed));
        for i in &self.inputs {
            out.push_str(&format!("input {}  sha256 {}\n", i.path, &i.sha256[..16]));
        }
        for v in &self.verdicts {
            out.push_str(&format!("{:<9} {}", v.status.label(), v.name));
            if let (Some(m), Some(t)) = (v.max, v.threshold) {
                out.push_str(&format!("  (max {m:.3e}, tol {t:.1e})"));
            }
            if let Some(s) = v.samples {
                out.push_str(&format!("  [{s} samples]"));
            }
            if let Some(w) = &v.witness {
                out.push_str(&format!("  witness: {w}"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} verdicts, {}  ({:.1} ms)\n",
            self.verdicts.len(),
            if self.all_ok() { "all ok" } else { "FAILURES PRESENT" },
            elapsed.as_secs_f64() * 1e3
        ));
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
