//! Merge scripts: `connect <L1> <L2>` directives and
//! `expect <km> loop|mixed` stage markers, one per line, `#` comments.

use crate::accounting::CostConvention;
use crate::engine::{Expectation, MergeScript, ScriptItem};
use crate::model::Instance;

use super::{ParseError, ParseErrorKind};

pub fn parse_merge_script(text: &str, inst: &Instance) -> Result<MergeScript, ParseError> {
    let mut items = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |kind| ParseError {
            line: Some(line),
            kind,
        };
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[..] {
            ["connect", a, b] => {
                let lookup = |l: &str| {
                    inst.node_by_label(l)
                        .filter(|v| !v.is_depot())
                        .ok_or_else(|| err(ParseErrorKind::UnknownLabel(l.to_string())))
                };
                let (x, y) = (lookup(a)?, lookup(b)?);
                if x == y {
                    return Err(err(ParseErrorKind::SelfConnect(a.to_string())));
                }
                items.push(ScriptItem::Connect(x, y));
            }
            ["expect", km, conv] => {
                let total = km.parse().map_err(|e| err(ParseErrorKind::Number(e)))?;
                let convention: CostConvention = conv
                    .parse()
                    .map_err(|e| err(ParseErrorKind::Malformed(e)))?;
                items.push(ScriptItem::Expect(Expectation { total, convention }));
            }
            _ => {
                return Err(err(ParseErrorKind::Malformed(format!(
                    "expected `connect <a> <b>` or `expect <km> loop|mixed`, found `{content}`"
                ))))
            }
        }
    }
    Ok(MergeScript { items })
}

pub fn write_merge_script(script: &MergeScript, inst: &Instance) -> String {
    script
        .items
        .iter()
        .map(|item| match item {
            ScriptItem::Connect(a, b) => format!("connect {} {}\n", inst.label(*a), inst.label(*b)),
            ScriptItem::Expect(e) => format!("expect {} {}\n", e.total, e.convention),
        })
        .collect()
}
