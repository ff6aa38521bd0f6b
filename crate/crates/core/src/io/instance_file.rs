//! Line-oriented instance files.
//!
//! ```text
//! [meta]
//! name = front-warehouse-9
//! depot = P
//! capacity = 8.0
//!
//! [nodes]
//! A 1.3
//! B 1.0
//!
//! [distances]
//! A 30.0
//! B 31.0 3.2
//! ```
//!
//! Distance row `k` starts with the k-th warehouse label and lists its
//! distance to the depot and to every earlier warehouse. `#` starts a
//! comment. `depot` is optional and defaults to `P`.

use std::fmt::Write as _;

use crate::fixed::{Distance, FixedParseError, Load};
use crate::model::{matrix_from_lower, Instance, InstanceData, ModelError};

use super::{ParseError, ParseErrorKind};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Section {
    Meta,
    Nodes,
    Distances,
}

impl Section {
    fn header(self) -> &'static str {
        match self {
            Section::Meta => "[meta]",
            Section::Nodes => "[nodes]",
            Section::Distances => "[distances]",
        }
    }
}

fn at(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError {
        line: Some(line),
        kind,
    }
}

fn number<T: std::str::FromStr<Err = FixedParseError>>(
    token: &str,
    line: usize,
) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|e| at(line, ParseErrorKind::Number(e)))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut section: Option<(Section, usize)> = None;
    let mut name = None;
    let mut depot = None;
    let mut capacity = None;
    let mut labels: Vec<String> = Vec::new();
    let mut demand: Vec<Load> = Vec::new();
    let mut rows: Vec<Vec<Distance>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }

        if content.starts_with('[') {
            let next = match content {
                "[meta]" => Section::Meta,
                "[nodes]" => Section::Nodes,
                "[distances]" => Section::Distances,
                other => {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed(format!("unknown section {other}")),
                    ))
                }
            };
            let expected = match section {
                None => Section::Meta,
                Some((Section::Meta, _)) => Section::Nodes,
                Some((Section::Nodes, header)) => {
                    if labels.len() <= 1 {
                        return Err(at(header, ParseErrorKind::NoWarehouses));
                    }
                    Section::Distances
                }
                Some((Section::Distances, _)) => {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed(format!("unexpected section {content}")),
                    ))
                }
            };
            if next != expected {
                return Err(at(
                    line,
                    ParseErrorKind::Malformed(format!(
                        "expected {}, found {content}",
                        expected.header()
                    )),
                ));
            }
            if next == Section::Nodes {
                if name.is_none() {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed("[meta] is missing `name`".into()),
                    ));
                }
                if capacity.is_none() {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed("[meta] is missing `capacity`".into()),
                    ));
                }
                labels.push(depot.clone().unwrap_or_else(|| "P".to_string()));
            }
            section = Some((next, line));
            continue;
        }

        match section {
            None => {
                return Err(at(
                    line,
                    ParseErrorKind::Malformed("content before [meta]".into()),
                ));
            }
            Some((Section::Meta, _)) => {
                let (key, value) = content
                    .split_once('=')
                    .map(|(k, v)| (k.trim(), v.trim()))
                    .ok_or_else(|| {
                        at(
                            line,
                            ParseErrorKind::Malformed("expected `key = value`".into()),
                        )
                    })?;
                let slot_taken = match key {
                    "name" => name.replace(value.to_string()).is_some(),
                    "depot" => {
                        check_label(value, line)?;
                        depot.replace(value.to_string()).is_some()
                    }
                    "capacity" => capacity.replace(number::<Load>(value, line)?).is_some(),
                    other => {
                        return Err(at(
                            line,
                            ParseErrorKind::Malformed(format!("unknown key `{other}`")),
                        ))
                    }
                };
                if slot_taken {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed(format!("duplicate key `{key}`")),
                    ));
                }
            }
            Some((Section::Nodes, _)) => {
                let tokens: Vec<&str> = content.split_whitespace().collect();
                let [label, qty] = tokens[..] else {
                    return Err(at(
                        line,
                        ParseErrorKind::Malformed("expected `<label> <demand>`".into()),
                    ));
                };
                check_label(label, line)?;
                if labels.iter().any(|l| l == label) {
                    return Err(at(line, ParseErrorKind::DuplicateLabel(label.to_string())));
                }
                labels.push(label.to_string());
                demand.push(number(qty, line)?);
            }
            Some((Section::Distances, _)) => {
                let mut tokens = content.split_whitespace();
                let label = tokens.next().unwrap_or_default();
                let k = rows.len() + 1;
                let Some(expected) = labels.get(k) else {
                    return Err(at(
                        line,
                        ParseErrorKind::Shape(format!("extra distance row {label}")),
                    ));
                };
                if label != expected {
                    return Err(at(
                        line,
                        ParseErrorKind::Shape(format!("expected row {expected}, found {label}")),
                    ));
                }
                let values = tokens
                    .map(|t| number(t, line))
                    .collect::<Result<Vec<Distance>, _>>()?;
                if values.len() != k {
                    return Err(at(
                        line,
                        ParseErrorKind::Shape(format!(
                            "row {label} has {} entries, expected {k}",
                            values.len()
                        )),
                    ));
                }
                rows.push(values);
            }
        }
    }

    match section {
        Some((Section::Distances, _)) => {}
        Some((Section::Nodes, header)) if labels.len() <= 1 => {
            return Err(at(header, ParseErrorKind::NoWarehouses));
        }
        _ => {
            return Err(at(
                last_line,
                ParseErrorKind::Malformed("missing [distances] section".into()),
            ))
        }
    }
    if rows.len() != demand.len() {
        return Err(at(
            last_line,
            ParseErrorKind::Shape(format!(
                "{} distance rows for {} warehouses",
                rows.len(),
                demand.len()
            )),
        ));
    }

    let data = InstanceData {
        name: name.expect("checked at [nodes]"),
        labels,
        dist: matrix_from_lower(&rows),
        demand,
        capacity: capacity.expect("checked at [nodes]"),
    };
    Instance::new(data).map_err(|e| match e {
        ModelError::Invalid(report) => ParseError {
            line: None,
            kind: ParseErrorKind::Invalid(report),
        },
        ModelError::Parameter(msg) => ParseError {
            line: None,
            kind: ParseErrorKind::Malformed(msg),
        },
    })
}

fn check_label(label: &str, line: usize) -> Result<(), ParseError> {
    let ok = !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '#' | '[' | ']' | '=' | '-'));
    if ok {
        Ok(())
    } else {
        Err(at(
            line,
            ParseErrorKind::Malformed(format!("invalid label `{label}`")),
        ))
    }
}

/// Canonical text form; `parse_instance` of the output reproduces `inst`.
pub fn write_instance(inst: &Instance) -> String {
    let data = inst.data();
    let mut out = String::new();
    let _ = writeln!(out, "[meta]");
    let _ = writeln!(out, "name = {}", data.name);
    let _ = writeln!(out, "depot = {}", data.labels[0]);
    let _ = writeln!(out, "capacity = {}", data.capacity);
    let _ = writeln!(out, "\n[nodes]");
    for (label, q) in data.labels[1..].iter().zip(&data.demand) {
        let _ = writeln!(out, "{label} {q}");
    }
    let _ = writeln!(out, "\n[distances]");
    for k in 1..data.labels.len() {
        let _ = write!(out, "{}", data.labels[k]);
        for j in 0..k {
            let _ = write!(out, " {}", data.dist[k][j]);
        }
        out.push('\n');
    }
    out
}
