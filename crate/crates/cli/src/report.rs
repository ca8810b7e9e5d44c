use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use zfcat::hforacle::Oracle;
use zfcat::{Error, Obligation, Verdict};

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub name: String,
    /// `valid`, `counterexample`, `needs-infinity` or `error`.
    pub verdict: String,
    pub universe: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.verdict == "valid" || self.verdict == "needs-infinity"
    }

    fn line(&self) -> String {
        let mut s = format!("{:<15} {}", self.verdict, self.name);
        if let Some(m) = self.counterexample.as_ref().filter(|m| !m.is_empty()) {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k} = #{v}")).collect();
            let _ = write!(s, "  [{}]", parts.join(", "));
        }
        if let Some(e) = &self.error {
            let _ = write!(s, "  ({e})");
        }
        s
    }
}

fn report(oracle: &Oracle, ob: &Obligation) -> Report {
    let universe = oracle.universe.to_string();
    let (verdict, counterexample, error) = match oracle.check(ob) {
        Ok(Verdict::Valid) => ("valid", None, None),
        Ok(Verdict::Counterexample(m)) => {
            let cx = m.iter().map(|(v, s)| (v.to_string(), s.code().to_string())).collect();
            let tag = if ob.needs_infinity() { "needs-infinity" } else { "counterexample" };
            (tag, Some(cx), None)
        }
        Err(e) => ("error", None, Some(e.to_string())),
    };
    Report {
        name: ob.name.clone(),
        verdict: verdict.to_string(),
        universe,
        counterexample,
        error,
    }
}

/// Checks every obligation concurrently; the result is sorted by name.
pub fn check_all(oracle: &Oracle, obs: &[Obligation]) -> Vec<Report> {
    let mut out: Vec<Report> = obs.par_iter().map(|ob| report(oracle, ob)).collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// Collects text or JSON output, then writes it to stdout or `--out`.
pub struct Sink {
    pub json: bool,
    text: String,
    reports: Vec<Report>,
    sections: Vec<serde_json::Value>,
    pub failed: bool,
    /// Prefix plain items with `# ` so the text parses as an obligation file.
    pub comment_items: bool,
}

impl Sink {
    pub fn new(json: bool) -> Self {
        Sink {
            json,
            text: String::new(),
            reports: Vec::new(),
            sections: Vec::new(),
            failed: false,
            comment_items: false,
        }
    }

    /// A labelled line of text; in JSON mode it becomes an `items` entry.
    pub fn item(&mut self, label: &str, value: impl std::fmt::Display) {
        if self.json {
            self.sections
                .push(serde_json::json!({ "label": label, "value": value.to_string() }));
        } else {
            let hash = if self.comment_items { "# " } else { "" };
            if label.is_empty() {
                let _ = writeln!(self.text, "{hash}{value}");
            } else {
                let _ = writeln!(self.text, "{hash}{label}: {value}");
            }
        }
    }

    /// Obligation records, unchecked.
    pub fn records(&mut self, obs: &[Obligation]) {
        for ob in obs {
            if self.json {
                self.sections.push(serde_json::json!({ "label": ob.name, "value": ob.sequent() }));
            } else {
                self.text.push_str(&ob.to_record());
            }
        }
    }

    pub fn heading(&mut self, title: &str) {
        if !self.json {
            if !self.text.is_empty() {
                self.text.push('\n');
            }
            let _ = writeln!(self.text, "== {title}");
        }
    }

    pub fn raw(&mut self, text: &str) {
        self.text.push_str(text);
    }

    pub fn reports(&mut self, rs: Vec<Report>) {
        for r in rs {
            if !r.ok() {
                self.failed = true;
            }
            if !self.json {
                let _ = writeln!(self.text, "  {}", r.line());
            }
            self.reports.push(r);
        }
    }

    pub fn finish(self, out: Option<&std::path::Path>) -> std::io::Result<()> {
        let body = if self.json {
            let mut v = serde_json::json!({ "results": self.reports });
            if !self.sections.is_empty() {
                v["items"] = serde_json::Value::Array(self.sections);
            }
            if !self.text.is_empty() {
                v["text"] = serde_json::Value::String(self.text);
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        } else {
            self.text
        };
        match out {
            Some(p) => std::fs::write(p, body),
            None => match std::io::stdout().lock().write_all(body.as_bytes()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                r => r,
            },
        }
    }
}

pub fn error_json(e: &Error) -> String {
    serde_json::json!({ "error": e.to_string() }).to_string()
}
