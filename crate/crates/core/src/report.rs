use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One labeled verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Item {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Itemized verdicts keyed by stable check identifiers, plus free-form notes.
///
/// Items and notes are kept in sorted maps so that serialization is
/// byte-for-byte deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub subject: String,
    pub items: BTreeMap<String, Item>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty", default)]
    pub notes: BTreeMap<String, String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report { subject: subject.into(), ..Report::default() }
    }

    /// Records a verdict; the witness closure only runs on failure.
    pub fn check(&mut self, id: &str, pass: bool, witness: impl FnOnce() -> String) {
        let witness = (!pass).then(witness);
        self.items.insert(id.to_string(), Item { pass, witness });
    }

    pub fn record(&mut self, id: &str, outcome: std::result::Result<(), String>) {
        let pass = outcome.is_ok();
        self.items.insert(id.to_string(), Item { pass, witness: outcome.err() });
    }

    pub fn pass_with(&mut self, id: &str, witness: impl Into<String>) {
        self.items.insert(id.to_string(), Item { pass: true, witness: Some(witness.into()) });
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.insert(key.to_string(), value.to_string());
    }

    /// Copies every item and note of `other` into `self`.
    pub fn absorb(&mut self, other: &Report) {
        for (k, v) in &other.items {
            self.items.insert(k.clone(), v.clone());
        }
        for (k, v) in &other.notes {
            self.notes.insert(k.clone(), v.clone());
        }
    }

    pub fn pass(&self) -> bool {
        self.items.values().all(|i| i.pass)
    }

    pub fn item(&self, id: &str) -> Option<&Item> {
        self.items.get(id)
    }

    pub fn passed(&self, id: &str) -> bool {
        self.items.get(id).is_some_and(|i| i.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.items.iter().filter(|(_, i)| !i.pass).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|(id, it)| {
                let mut m = serde_json::Map::new();
                m.insert("id".into(), Value::String(id.clone()));
                m.insert("pass".into(), Value::Bool(it.pass));
                if let Some(w) = &it.witness {
                    m.insert("witness".into(), Value::String(w.clone()));
                }
                Value::Object(m)
            })
            .collect();
        let mut m = serde_json::Map::new();
        m.insert("subject".into(), Value::String(self.subject.clone()));
        m.insert("pass".into(), Value::Bool(self.pass()));
        m.insert("items".into(), Value::Array(items));
        if !self.notes.is_empty() {
            let notes = self.notes.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
            m.insert("notes".into(), Value::Object(notes));
        }
        Value::Object(m)
    }

    /// Plain text rendering of the same content as [`Report::to_json`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{verdict} {}", self.subject);
        for (id, it) in &self.items {
            let mark = if it.pass { "ok  " } else { "FAIL" };
            match &it.witness {
                Some(w) => {
                    let _ = writeln!(s, "  {mark} {id}: {w}");
                }
                None => {
                    let _ = writeln!(s, "  {mark} {id}");
                }
            }
        }
        for (k, v) in &self.notes {
            let _ = writeln!(s, "  note {k} = {v}");
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction_and_order_is_sorted() {
        let mut r = Report::new("x");
        r.check("b.second", true, || unreachable!());
        r.check("a.first", false, || "e_0".into());
        assert!(!r.pass());
        assert_eq!(r.failures(), vec!["a.first"]);
        let text = r.to_text();
        assert!(text.find("a.first").unwrap() < text.find("b.second").unwrap());
        let json = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(json, serde_json::to_string(&r.to_json()).unwrap());
        assert!(json.starts_with(r#"{"items":[{"id":"a.first""#));
    }
}
