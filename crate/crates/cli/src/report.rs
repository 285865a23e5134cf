//! Report model shared by every subcommand, and its JSON and CSV encodings.

use serde::Serialize;

use cartan_forge::harness::Verdict;

/// One checked identity. `anchor` is a stable identifier of the identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub anchor: String,
    pub identity: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
}

impl Check {
    pub fn new(anchor: &str, identity: impl Into<String>, max_residual: f64, tolerance: f64) -> Check {
        Check {
            anchor: anchor.into(),
            identity: identity.into(),
            max_residual,
            tolerance,
            passed: max_residual <= tolerance,
            witness: None,
        }
    }

    pub fn with_witness(mut self, w: Vec<f64>) -> Check {
        self.witness = Some(w);
        self
    }

    /// A check whose pass condition is not a plain `residual ≤ tolerance`.
    pub fn with_passed(mut self, passed: bool) -> Check {
        self.passed = passed;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegrandRow {
    pub point: Vec<f64>,
    pub cs_def: f64,
    pub cs_reduced: f64,
    pub cs_local: f64,
    pub palatini: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub verdict: Verdict,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub integrand: Vec<IntegrandRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, checks: Vec<Check>) -> Report {
        let verdict = if checks.iter().all(|c| c.passed) { Verdict::Pass } else { Verdict::Fail };
        Report { command, verdict, seed, checks, integrand: Vec::new(), details: None, notes: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Flat projection: one row per check and one per tabulated density.
    pub fn to_csv(&self) -> String {
        #[derive(Serialize)]
        struct Row<'a> {
            command: &'a str,
            kind: &'a str,
            anchor: &'a str,
            quantity: &'a str,
            point: String,
            value: f64,
            tolerance: Option<f64>,
            passed: Option<bool>,
        }
        let join = |p: &[f64]| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
        let mut w = csv::Writer::from_writer(Vec::new());
        for c in &self.checks {
            w.serialize(Row {
                command: self.command,
                kind: "check",
                anchor: &c.anchor,
                quantity: &c.identity,
                point: c.witness.as_deref().map(join).unwrap_or_default(),
                value: c.max_residual,
                tolerance: Some(c.tolerance),
                passed: Some(c.passed),
            })
            .expect("in-memory csv");
        }
        for r in &self.integrand {
            for (q, v) in [("cs_def", r.cs_def), ("cs_reduced", r.cs_reduced), ("cs_local", r.cs_local), ("palatini", r.palatini)] {
                w.serialize(Row {
                    command: self.command,
                    kind: "integrand",
                    anchor: "lagrangian.density",
                    quantity: q,
                    point: join(&r.point),
                    value: v,
                    tolerance: None,
                    passed: None,
                })
                .expect("in-memory csv");
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_checks() {
        let ok = Report::new("x", 0, vec![Check::new("a", "q", 1e-12, 1e-10)]);
        assert_eq!(ok.exit_code(), 0);
        let bad = Report::new("x", 0, vec![Check::new("a", "q", 1e-12, 1e-10), Check::new("b", "q", 1.0, 1e-10)]);
        assert_eq!(bad.exit_code(), 1);
    }

    #[test]
    fn csv_has_one_row_per_entry() {
        let mut r = Report::new("x", 0, vec![Check::new("a", "q", 0.5, 1.0).with_witness(vec![0.25, 0.5])]);
        r.integrand.push(IntegrandRow { point: vec![0.0, 1.0, 2.0], cs_def: 1.0, cs_reduced: 2.0, cs_local: 3.0, palatini: 4.0 });
        let text = r.to_csv();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 6);
        assert_eq!(lines[0], "command,kind,anchor,quantity,point,value,tolerance,passed");
        assert_eq!(lines[1], "x,check,a,q,0.25 0.5,0.5,1.0,true");
        assert!(lines[5].starts_with("x,integrand,lagrangian.density,palatini,0 1 2,4.0"));
    }
}
