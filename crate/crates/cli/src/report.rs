// SPDX-License-Identifier: Apache-2.0

//! Ordered key/value reports rendered as text or JSON.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{Map, Value};

#[derive(Debug, Default)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.push((key.to_string(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.clone());
        }
        Value::Object(map)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.fields {
            render(&mut out, k, v);
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(xs) => xs.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn render(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                render(out, &format!("{key}.{k}"), x);
            }
        }
        Value::Array(rows) if rows.iter().any(Value::is_object) => {
            let _ = writeln!(out, "{key}:");
            let header: Vec<&String> = match rows.first() {
                Some(Value::Object(m)) => m.keys().collect(),
                _ => Vec::new(),
            };
            let _ = writeln!(
                out,
                "  {}",
                header
                    .iter()
                    .map(|s| s.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            for row in rows {
                if let Value::Object(m) = row {
                    let cells: Vec<String> = m.values().map(scalar).collect();
                    let _ = writeln!(out, "  {}", cells.join(" "));
                }
            }
        }
        Value::Array(rows) if rows.iter().any(Value::is_array) => {
            let _ = writeln!(out, "{key}:");
            for row in rows {
                let _ = writeln!(out, "  {}", scalar(row));
            }
        }
        other => {
            let v = scalar(other);
            if v.is_empty() {
                let _ = writeln!(out, "{key}:");
            } else {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
    }
}

pub fn ints(v: &[i64]) -> Value {
    Value::from(v.to_vec())
}

pub fn rows(m: &[Vec<i64>]) -> Value {
    Value::Array(m.iter().map(|r| ints(r)).collect())
}

pub fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn opt<T: Into<Value>>(x: Option<T>) -> Value {
    x.map_or(Value::Null, Into::into)
}
