//! Check records and the canonical JSON report.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// One named verification with the mathematical statement it exercises.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Check {
    pub fn new(name: &str, anchor: &str, passed: bool, data: impl Serialize) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::from_bool(passed),
            data: to_value(data),
            error: None,
        }
    }

    pub fn failed(name: &str, anchor: &str, error: impl ToString) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Fail,
            data: Value::Null,
            error: Some(error.to_string()),
        }
    }

    /// Kernel errors become failed checks.
    pub fn run<T: Serialize>(name: &str, anchor: &str, f: impl FnOnce() -> weilkit::Result<(bool, T)>) -> Self {
        match f() {
            Ok((passed, data)) => Self::new(name, anchor, passed, data),
            Err(e) => Self::failed(name, anchor, e),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub kind: String,
    pub seed: u64,
    pub cap: usize,
    pub scenario: Value,
    pub flags: Vec<String>,
    pub checks: Vec<Check>,
    pub status: Status,
}

impl Report {
    pub fn new(kind: &str, seed: u64, cap: usize, scenario: Value, flags: Vec<String>, checks: Vec<Check>) -> Self {
        let status = Status::from_bool(checks.iter().all(Check::passed));
        Self {
            schema_version: SCHEMA_VERSION,
            kind: kind.into(),
            seed,
            cap,
            scenario,
            flags,
            checks,
            status,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with every object's keys sorted.
    pub fn to_canonical_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&canonical(to_value(self))).expect("values serialize");
        s.push('\n');
        s
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report data is plain JSON")
}

fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, canonical(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}
