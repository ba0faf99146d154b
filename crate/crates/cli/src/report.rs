//! Per-check records, JSON-lines output, the text summary and exit codes.

use std::collections::BTreeMap;
use std::fmt;

use poisson_forge_core::report::Check;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    PaperDiscrepancy,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::PaperDiscrepancy => "paper-discrepancy",
        })
    }
}

/// Defects listed in a record's data beyond the first.
const MAX_LISTED: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub id: String,
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl Record {
    pub fn new(id: impl Into<String>, command: &str, inputs: &[&str], verdict: Verdict) -> Self {
        Record {
            id: id.into(),
            command: command.into(),
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            verdict,
            defect: None,
            order: None,
            data: BTreeMap::new(),
            runtime_ms: None,
        }
    }

    pub fn from_check(id: impl Into<String>, command: &str, inputs: &[&str], c: &Check) -> Self {
        let mut r = Record::new(id, command, inputs, if c.pass { Verdict::Pass } else { Verdict::Fail });
        r.order = c.order;
        if let Some(d) = c.defects.first() {
            r.defect = Some(format!("{}: {}", d.at, d.value));
        }
        if !c.defects.is_empty() {
            r.data.insert("defects".into(), c.defects.len().into());
            let at: Vec<Value> = c.defects.iter().take(MAX_LISTED).map(|d| Value::from(d.at.clone())).collect();
            r.data.insert("defects_at".into(), Value::Array(at));
        }
        r
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.data.insert(key.into(), v.into());
        self
    }

    pub fn with_defect(mut self, d: impl Into<String>) -> Self {
        self.defect = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
    }

    /// Orders records by id; ids are unique within one invocation.
    pub fn finish(&mut self) {
        self.records.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn get(&self, id: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    /// 0 when nothing failed; a paper-discrepancy is not a failure.
    pub fn exit_code(&self) -> i32 {
        if self.count(Verdict::Fail) > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
            out.push('\n');
        }
        out
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("{:<17} {}", r.verdict.to_string(), r.id));
            if let Some(d) = &r.defect {
                out.push_str(&format!("  [{d}]"));
            }
            if let Some(ms) = r.runtime_ms {
                out.push_str(&format!("  ({ms} ms)"));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} checks: {} pass, {} fail, {} paper-discrepancy\n",
            self.records.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::PaperDiscrepancy)
        ));
        out
    }
}
