//! Run reports and their text, CSV and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use strichartz_core::format::csv_row;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    NonConverged,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Pass, v) | (v, Verdict::Pass) => v,
            (Verdict::NonConverged, _) | (_, Verdict::NonConverged) => Verdict::NonConverged,
            _ => Verdict::Fail,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NonConverged => "non-converged",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Free-form summary lines, shown in text and JSON output.
    pub notes: Vec<(String, String)>,
    pub verdict: Verdict,
    /// Wall-clock seconds; only filled in with `--timing` so that reports
    /// stay byte-identical across runs by default.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_secs: Option<f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            verdict: Verdict::Pass,
            timing_secs: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn columns(&mut self, cols: &[&str]) -> &mut Self {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    pub fn fold_verdict(&mut self, v: Verdict) {
        self.verdict = self.verdict.and(v);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        if !self.columns.is_empty() {
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|i| {
                    self.rows
                        .iter()
                        .map(|r| r[i].len())
                        .chain([self.columns[i].len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                padded.join("  ").trim_end().to_string()
            };
            let _ = writeln!(out, "{}", line(&self.columns));
            for r in &self.rows {
                let _ = writeln!(out, "{}", line(r));
            }
        }
        for (k, v) in &self.notes {
            let _ = writeln!(out, "{k}: {v}");
        }
        if let Some(t) = self.timing_secs {
            let _ = writeln!(out, "time: {t:.3} s");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict.as_str());
        out
    }

    /// Header plus data rows only, so the file can be plotted directly.
    pub fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&csv_row(&self.columns));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&csv_row(r));
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        #[derive(Serialize)]
        struct Json<'a> {
            command: &'a str,
            parameters: serde_json::Map<String, serde_json::Value>,
            columns: &'a [String],
            rows: &'a [Vec<String>],
            notes: serde_json::Map<String, serde_json::Value>,
            verdict: Verdict,
            #[serde(skip_serializing_if = "Option::is_none")]
            timing_secs: Option<f64>,
        }
        let map = |pairs: &[(String, String)]| {
            pairs
                .iter()
                .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                .collect()
        };
        let json = Json {
            command: &self.command,
            parameters: map(&self.parameters),
            columns: &self.columns,
            rows: &self.rows,
            notes: map(&self.notes),
            verdict: self.verdict,
            timing_secs: self.timing_secs,
        };
        let mut s = serde_json::to_string_pretty(&json).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdicts_combine() {
        assert_eq!(Verdict::Pass.and(Verdict::Pass), Verdict::Pass);
        assert_eq!(Verdict::Pass.and(Verdict::Fail), Verdict::Fail);
        assert_eq!(Verdict::Fail.and(Verdict::NonConverged), Verdict::NonConverged);
    }

    #[test]
    fn renderings_agree() {
        let mut r = RunReport::new("demo");
        r.param("k", 1).columns(&["n", "exact"]);
        r.row(vec!["0".into(), "1/3".into()]);
        r.note("max", "1/3");
        assert_eq!(r.render_csv(), "n,exact\n0,1/3\n");
        assert!(r.render_text().ends_with("verdict: pass\n"));
        let v: serde_json::Value = serde_json::from_str(&r.render_json()).unwrap();
        assert_eq!(v["rows"][0][1], "1/3");
        assert_eq!(v["parameters"]["k"], "1");
        assert_eq!(v["verdict"], "pass");
    }
}
