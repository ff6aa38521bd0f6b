//! JSON solution and replay reports.
//!
//! Keys appear in declaration order; per-convention maps are keyed `loop`
//! then `mixed`. Kilometre and ton figures are JSON numbers with one
//! decimal place.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::accounting::{route_distance, CostConvention};
use crate::engine::{Decision, ReplayOutcome, RouteState, StageTotals, TraceLog};
use crate::fixed::{Distance, Load};
use crate::model::{Instance, NodeId};

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteLine {
    pub labels: Vec<String>,
    pub load: Load,
    pub distance: BTreeMap<CostConvention, Distance>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcceptedMerge {
    pub step: usize,
    pub pair: String,
    pub saving: Distance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSummary {
    pub initial_loop_total: Distance,
    pub attempts: usize,
    pub accepted: Vec<AcceptedMerge>,
    pub accepted_savings: Distance,
    pub rejected: BTreeMap<String, usize>,
}

impl TraceSummary {
    pub fn of(inst: &Instance, trace: &TraceLog) -> Self {
        let mut rejected = BTreeMap::new();
        for ev in &trace.events {
            if let Decision::Rejected(reason) = ev.decision {
                *rejected.entry(reason.as_str().to_string()).or_insert(0) += 1;
            }
        }
        TraceSummary {
            initial_loop_total: trace.initial_loop_total,
            attempts: trace.events.len(),
            accepted: trace
                .accepted()
                .map(|e| AcceptedMerge {
                    step: e.step,
                    pair: pair_label(inst, e.pair),
                    saving: e.delta,
                })
                .collect(),
            accepted_savings: trace.accepted_savings(),
            rejected,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub instance: String,
    /// `both`, `loop` or `mixed`.
    pub convention: String,
    pub vehicles: usize,
    pub routes: Vec<RouteLine>,
    pub totals: BTreeMap<CostConvention, Distance>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceSummary>,
}

pub(crate) fn pair_label(inst: &Instance, (a, b): (NodeId, NodeId)) -> String {
    format!("{}-{}", inst.label(a), inst.label(b))
}

fn convention_tag(conventions: &[CostConvention]) -> String {
    match conventions {
        [single] => single.tag().to_string(),
        _ => "both".to_string(),
    }
}

impl SolutionReport {
    pub fn build(
        inst: &Instance,
        state: &RouteState,
        trace: Option<&TraceLog>,
        conventions: &[CostConvention],
    ) -> Self {
        let routes: Vec<RouteLine> = state
            .chains()
            .iter()
            .map(|c| RouteLine {
                labels: c
                    .nodes()
                    .iter()
                    .map(|&v| inst.label(v).to_string())
                    .collect(),
                load: c.load(),
                distance: conventions
                    .iter()
                    .map(|&conv| {
                        (
                            conv,
                            route_distance(inst, c.nodes(), conv)
                                .expect("route state holds valid chains"),
                        )
                    })
                    .collect(),
            })
            .collect();
        let totals = conventions
            .iter()
            .map(|&conv| (conv, routes.iter().map(|r| r.distance[&conv]).sum()))
            .collect();
        SolutionReport {
            instance: inst.name().to_string(),
            convention: convention_tag(conventions),
            vehicles: routes.len(),
            routes,
            totals,
            trace: trace.map(|t| TraceSummary::of(inst, t)),
        }
    }

    /// Totals and vehicle count re-derivable from the route lines.
    pub fn is_consistent(&self) -> bool {
        self.vehicles == self.routes.len()
            && self.totals.iter().all(|(conv, total)| {
                self.routes
                    .iter()
                    .map(|r| r.distance.get(conv).copied())
                    .sum::<Option<Distance>>()
                    == Some(*total)
            })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Routes of a JSON solution report, mapped back to node ids.
pub fn parse_solution_routes(text: &str, inst: &Instance) -> Result<Vec<Vec<NodeId>>, ParseError> {
    let report: SolutionReport = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        kind: ParseErrorKind::Malformed(e.to_string()),
    })?;
    report
        .routes
        .iter()
        .map(|r| {
            r.labels
                .iter()
                .map(|l| {
                    inst.node_by_label(l).ok_or_else(|| ParseError {
                        line: None,
                        kind: ParseErrorKind::UnknownLabel(l.clone()),
                    })
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepLine {
    pub step: usize,
    pub pair: String,
    pub saving: Distance,
    pub decision: String,
    pub loop_total_after: Distance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpectLine {
    pub convention: CostConvention,
    pub expected: Distance,
    pub recomputed: Distance,
    pub delta: Distance,
    pub status: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageLine {
    pub directives: usize,
    pub vehicles: usize,
    pub totals: BTreeMap<CostConvention, Distance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ExpectLine>,
}

impl StageLine {
    fn of(stage: &StageTotals) -> Self {
        StageLine {
            directives: stage.directives,
            vehicles: stage.vehicles,
            totals: CostConvention::ALL
                .iter()
                .map(|&c| (c, stage.total(c)))
                .collect(),
            expected: stage.check.map(|c| ExpectLine {
                convention: c.convention,
                expected: c.expected,
                recomputed: c.recomputed,
                delta: c.delta,
                status: if c.matches { "match" } else { "discrepant" },
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplayReport {
    pub instance: String,
    pub steps: Vec<StepLine>,
    pub stages: Vec<StageLine>,
    #[serde(rename = "final")]
    pub final_solution: SolutionReport,
}

pub(crate) fn decision_label(decision: Decision) -> String {
    match decision {
        Decision::Accepted => "accepted".to_string(),
        Decision::Rejected(reason) => format!("rejected:{}", reason.as_str()),
    }
}

impl ReplayReport {
    pub fn build(inst: &Instance, outcome: &ReplayOutcome, conventions: &[CostConvention]) -> Self {
        ReplayReport {
            instance: inst.name().to_string(),
            steps: outcome
                .trace
                .events
                .iter()
                .map(|e| StepLine {
                    step: e.step,
                    pair: pair_label(inst, e.pair),
                    saving: e.delta,
                    decision: decision_label(e.decision),
                    loop_total_after: e.loop_total_after,
                })
                .collect(),
            stages: outcome.stages.iter().map(StageLine::of).collect(),
            final_solution: SolutionReport::build(inst, &outcome.state, None, conventions),
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
