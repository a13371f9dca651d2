//! Check reports shared by the suite and the command line.

use serde::{Deserialize, Serialize};

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    /// The identity being checked, as a formula.
    pub anchor: String,
    pub samples: Vec<String>,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckRecord {
    /// Passes when `residual <= tol`.
    pub fn new(id: &str, anchor: &str, samples: Vec<String>, residual: f64, tol: f64) -> Self {
        CheckRecord { id: id.into(), anchor: anchor.into(), samples, residual, tol, pass: residual <= tol, note: None }
    }

    /// A check that holds when the predicate does, with a residual for display.
    pub fn predicate(id: &str, anchor: &str, samples: Vec<String>, residual: f64, tol: f64, pass: bool) -> Self {
        CheckRecord { pass, ..Self::new(id, anchor, samples, residual, tol) }
    }

    /// A check that could not be evaluated.
    pub fn failed(id: &str, anchor: &str, tol: f64, note: String) -> Self {
        CheckRecord { id: id.into(), anchor: anchor.into(), samples: Vec::new(), residual: f64::MAX, tol, pass: false, note: Some(note) }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub backend: String,
    /// Hash of the canonical JSON of all inputs.
    pub input_hash: String,
    pub checks: Vec<CheckRecord>,
    /// Excluded from determinism comparisons.
    pub wall_time_s: f64,
}

impl Report {
    pub fn new(suite: &str, seed: u64, backend: &str, input_hash: String) -> Self {
        Report { suite: suite.into(), seed, backend: backend.into(), input_hash, checks: Vec::new(), wall_time_s: 0.0 }
    }

    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(cs);
    }

    /// Order checks by id; the sort is stable.
    pub fn finish(&mut self, wall_time_s: f64) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.wall_time_s = wall_time_s;
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the wall time zeroed, for byte-for-byte comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time_s = 0.0;
        r.to_json_string()
    }

    /// `id,residual,tol,pass` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,residual,tol,pass\n");
        for c in &self.checks {
            out.push_str(&format!("{},{:e},{:e},{}\n", c.id, c.residual, c.tol, c.pass));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_order() {
        let mut r = Report::new("t", 7, "exact", "abc".into());
        r.push(CheckRecord::new("b", "x = y", vec![], 0.0, 0.0));
        r.push(CheckRecord::new("a", "x = z", vec!["s=1".into()], 0.5, 1e-3));
        r.finish(1.25);
        assert_eq!(r.checks[0].id, "a");
        assert!(!r.all_pass());
        let back: Report = serde_json::from_str(&r.to_json_string()).unwrap();
        assert_eq!(back, r);
        assert!(r.canonical_json().contains("\"wall_time_s\": 0.0"));
        assert_eq!(r.to_csv().lines().count(), 3);
    }
}
