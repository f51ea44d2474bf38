//! Distribution CSV and schedule JSON.
//!
//! CSV: one `outcome,mass` pair per line, optional `value,probability`
//! header, blank lines ignored. Numbers are written in shortest round-trip
//! form, so `parse(write(d))` reproduces the masses bit for bit.
//!
//! JSON: `{"type":"leaf","pmf":[[v,p],...]}`,
//! `{"type":"series","children":[...]}` or
//! `{"type":"parallel","children":[...]}`.

use serde_json::{json, Value};

use crate::distribution::{to_f64, DiscreteDistribution};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::schedule::ScheduleNode;

pub const CSV_HEADER: &str = "value,probability";

pub fn parse_distribution_csv<T: Scalar>(text: &str) -> Result<DiscreteDistribution<T>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let mut pairs = Vec::new();
    let mut first = true;
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| line_of(text, p)),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| line_of(text, p));
        if record.iter().all(str::is_empty) {
            continue;
        }
        if std::mem::take(&mut first)
            && record.len() == 2
            && &record[0] == "value"
            && &record[1] == "probability"
        {
            continue;
        }
        if record.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected 2 fields 'outcome,mass', found {}", record.len()),
            });
        }
        let outcome = parse_number(&record[0], line, "outcome")?;
        let mass = parse_number(&record[1], line, "mass")?;
        pairs.push((T::from_f64_lossy(outcome), T::from_f64_lossy(mass)));
    }
    DiscreteDistribution::from_pmf(&pairs)
}

/// Physical 1-based line; the reader's own counter skips blank lines.
fn line_of(text: &str, pos: &csv::Position) -> usize {
    let bytes = text.as_bytes();
    let mut start = (pos.byte() as usize).min(bytes.len());
    while start < bytes.len() && matches!(bytes[start], b'\n' | b'\r') {
        start += 1;
    }
    1 + bytes[..start].iter().filter(|&&b| b == b'\n').count()
}

fn parse_number(field: &str, line: usize, what: &str) -> Result<f64> {
    let v: f64 = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("{what} '{field}' is not a number"),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line,
            message: format!("{what} '{field}' is not finite"),
        });
    }
    Ok(v)
}

pub fn write_distribution_csv<T: Scalar>(dist: &DiscreteDistribution<T>) -> String {
    let mut out = String::with_capacity(16 + dist.len() * 24);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for (x, p) in dist.pmf() {
        out.push_str(&format!("{},{}\n", to_f64(x), to_f64(p)));
    }
    out
}

pub fn parse_schedule_json<T: Scalar>(text: &str) -> Result<ScheduleNode<T>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    node_from_json(&value, "root")
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn node_from_json<T: Scalar>(value: &Value, path: &str) -> Result<ScheduleNode<T>> {
    let obj = value
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| schema(path, "missing string field 'type'"))?;
    match kind {
        "leaf" => {
            let pmf = obj
                .get("pmf")
                .and_then(Value::as_array)
                .ok_or_else(|| schema(path, "leaf needs an array field 'pmf'"))?;
            let mut pairs = Vec::with_capacity(pmf.len());
            for (k, entry) in pmf.iter().enumerate() {
                let pair = entry
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .and_then(|a| Some((a[0].as_f64()?, a[1].as_f64()?)))
                    .ok_or_else(|| {
                        schema(&format!("{path}.pmf[{k}]"), "expected [outcome, mass]")
                    })?;
                pairs.push((T::from_f64_lossy(pair.0), T::from_f64_lossy(pair.1)));
            }
            let dist =
                DiscreteDistribution::from_pmf(&pairs).map_err(|e| schema(path, e.to_string()))?;
            Ok(ScheduleNode::Leaf(dist))
        }
        "series" | "parallel" => {
            let children = obj
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| schema(path, format!("{kind} needs an array field 'children'")))?;
            if children.len() < 2 {
                return Err(schema(
                    path,
                    format!(
                        "{kind} node needs at least 2 children, got {}",
                        children.len()
                    ),
                ));
            }
            let children = children
                .iter()
                .enumerate()
                .map(|(k, c)| node_from_json(c, &format!("{path}.children[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            Ok(if kind == "series" {
                ScheduleNode::Series(children)
            } else {
                ScheduleNode::Parallel(children)
            })
        }
        other => Err(schema(path, format!("unknown type '{other}'"))),
    }
}

pub fn schedule_to_json<T: Scalar>(node: &ScheduleNode<T>) -> Value {
    match node {
        ScheduleNode::Leaf(d) => {
            let pmf: Vec<Value> = d
                .pmf()
                .into_iter()
                .map(|(x, p)| json!([to_f64(x), to_f64(p)]))
                .collect();
            json!({ "type": "leaf", "pmf": pmf })
        }
        ScheduleNode::Series(c) => {
            json!({ "type": "series", "children": c.iter().map(schedule_to_json).collect::<Vec<_>>() })
        }
        ScheduleNode::Parallel(c) => {
            json!({ "type": "parallel", "children": c.iter().map(schedule_to_json).collect::<Vec<_>>() })
        }
    }
}

pub fn write_schedule_json<T: Scalar>(node: &ScheduleNode<T>) -> String {
    serde_json::to_string_pretty(&schedule_to_json(node)).expect("JSON values always serialize")
}
