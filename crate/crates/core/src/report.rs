//! JSON-lines verification reports.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub paper_anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl Check {
    pub fn pass(id: impl Into<String>, anchor: &str) -> Self {
        Check { id: id.into(), paper_anchor: anchor.into(), status: Status::Pass, witness: None }
    }

    pub fn fail(id: impl Into<String>, anchor: &str, witness: Value) -> Self {
        Check { id: id.into(), paper_anchor: anchor.into(), status: Status::Fail, witness: Some(witness) }
    }

    /// Pass when `ok`, otherwise fail with the witness produced lazily.
    pub fn from_bool(id: impl Into<String>, anchor: &str, ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass(id, anchor)
        } else {
            Self::fail(id, anchor, witness())
        }
    }

    /// A failed computation turns into a failed check carrying the error text.
    pub fn from_result(id: impl Into<String>, anchor: &str, r: crate::Result<Check>) -> Self {
        match r {
            Ok(c) => c,
            Err(e) => Self::fail(id, anchor, Value::String(e.to_string())),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    checks: Vec<Check>,
}

impl Report {
    pub fn new(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        Report { checks }
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&serde_json::to_string(c).expect("check serializes"));
            s.push('\n');
        }
        s
    }
}
