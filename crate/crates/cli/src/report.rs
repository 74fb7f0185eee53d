use std::collections::BTreeMap;

use gkz_hodge_core::gkz::ShiftEntry;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything a command prints. Timing goes to standard error so that the
/// report is byte-identical across runs.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub verdicts: BTreeMap<String, bool>,
    pub shift_ledger: Vec<ShiftEntry>,
    pub result: Value,
}

impl RunReport {
    pub fn new(command: Vec<String>, inputs: Vec<InputDigest>) -> Self {
        RunReport { command, inputs, verdicts: BTreeMap::new(), shift_ledger: Vec::new(), result: Value::Null }
    }

    pub fn verdict(&mut self, name: &str, ok: bool) {
        self.verdicts.insert(name.to_string(), ok);
    }

    pub fn shift(&mut self, description: impl Into<String>, shift: i64) {
        self.shift_ledger.push(ShiftEntry { description: description.into(), shift });
    }

    pub fn passed(&self) -> bool {
        self.verdicts.values().all(|&v| v)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn summary(&self) -> String {
        let mut out = format!("gkz-hodge {}\n", self.command.join(" "));
        for (name, ok) in &self.verdicts {
            out.push_str(&format!("  {name}: {}\n", if *ok { "ok" } else { "FAILED" }));
        }
        for e in &self.shift_ledger {
            out.push_str(&format!("  shift {:+} ({})\n", e.shift, e.description));
        }
        if let Value::Object(o) = &self.result {
            for (k, v) in o.iter().filter(|(_, v)| is_short(v)) {
                out.push_str(&format!("  {k} = {v}\n"));
            }
        }
        out
    }
}

fn is_short(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| x.is_number() || x.is_boolean()) && a.len() <= 16,
        Value::Object(_) => false,
        Value::String(s) => s.len() <= 80,
        _ => true,
    }
}
