use serde::Serialize;
use thiserror::Error;

use crate::accounting::{solution_totals, CostConvention};
use crate::fixed::Distance;
use crate::model::{Instance, NodeId};

use super::savings::{compute_savings, sort_savings};
use super::state::{Decision, MergeError, MergeEvent, RejectReason, RouteState};

/// Every merge attempt of one run, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceLog {
    pub initial_loop_total: Distance,
    pub events: Vec<MergeEvent>,
    pub final_state: RouteState,
}

impl TraceLog {
    pub fn accepted(&self) -> impl Iterator<Item = &MergeEvent> {
        self.events.iter().filter(|e| e.decision.is_accepted())
    }

    pub fn accepted_savings(&self) -> Distance {
        self.accepted().map(|e| e.delta).sum()
    }

    pub fn rejected_count(&self, reason: RejectReason) -> usize {
        self.events
            .iter()
            .filter(|e| e.decision == Decision::Rejected(reason))
            .count()
    }

    /// Applies the accepted events, in order, to a fresh initial state.
    pub fn replay_accepted(&self, inst: &Instance) -> Result<RouteState, MergeError> {
        let mut state = RouteState::initial(inst);
        for ev in self.accepted() {
            state.try_merge(inst, ev.step, ev.pair.0, ev.pair.1, false)?;
        }
        Ok(state)
    }
}

/// Parallel Clarke-Wright: one pass over the sorted savings list, merging
/// at chain endpoints while capacity allows and the saving is positive.
pub fn cw_solve(inst: &Instance) -> (RouteState, TraceLog) {
    let mut state = RouteState::initial(inst);
    let initial_loop_total = state.loop_total();
    let events = sort_savings(compute_savings(inst))
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            state
                .try_merge(inst, k + 1, e.i, e.j, true)
                .expect("savings entries reference distinct warehouses")
        })
        .collect();
    let trace = TraceLog {
        initial_loop_total,
        events,
        final_state: state.clone(),
    };
    (state, trace)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expectation {
    pub total: Distance,
    pub convention: CostConvention,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptItem {
    Connect(NodeId, NodeId),
    Expect(Expectation),
}

/// Ordered connect directives interleaved with stage expectations. An
/// expectation applies to the state reached by the directives before it.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeScript {
    pub items: Vec<ScriptItem>,
}

impl MergeScript {
    pub fn directives(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.items.iter().filter_map(|item| match *item {
            ScriptItem::Connect(a, b) => Some((a, b)),
            ScriptItem::Expect(_) => None,
        })
    }

    pub fn expectations(&self) -> impl Iterator<Item = &Expectation> {
        self.items.iter().filter_map(|item| match item {
            ScriptItem::Expect(e) => Some(e),
            ScriptItem::Connect(..) => None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExpectationCheck {
    pub convention: CostConvention,
    pub expected: Distance,
    pub recomputed: Distance,
    pub delta: Distance,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageTotals {
    /// Directives applied when this stage was recorded.
    pub directives: usize,
    pub loop_total: Distance,
    pub mixed_total: Distance,
    pub vehicles: usize,
    pub check: Option<ExpectationCheck>,
}

impl StageTotals {
    fn of(inst: &Instance, state: &RouteState, directives: usize) -> Self {
        StageTotals {
            directives,
            loop_total: solution_totals(inst, state, CostConvention::RoundTripLoop).total,
            mixed_total: solution_totals(inst, state, CostConvention::MixedSingletonOneWay).total,
            vehicles: state.vehicles(),
            check: None,
        }
    }

    pub fn total(&self, conv: CostConvention) -> Distance {
        match conv {
            CostConvention::RoundTripLoop => self.loop_total,
            CostConvention::MixedSingletonOneWay => self.mixed_total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplayOutcome {
    pub state: RouteState,
    pub trace: TraceLog,
    /// One entry per expectation marker, in script order.
    pub stages: Vec<StageTotals>,
    pub final_totals: StageTotals,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("replay halted at directive {step} ({pair_label}): {}", reason.as_str())]
    Halted {
        step: usize,
        pair: (NodeId, NodeId),
        pair_label: String,
        reason: RejectReason,
        trace: Box<TraceLog>,
    },
    #[error(transparent)]
    Merge(#[from] MergeError),
}

/// Applies a merge script in order. Endpoint and capacity rules still hold;
/// stage expectations are compared and reported, never enforced.
pub fn replay(
    inst: &Instance,
    script: &MergeScript,
    enforce_positive: bool,
) -> Result<ReplayOutcome, ReplayError> {
    let mut state = RouteState::initial(inst);
    let initial_loop_total = state.loop_total();
    let mut events = Vec::new();
    let mut stages = Vec::new();

    for item in &script.items {
        match *item {
            ScriptItem::Connect(a, b) => {
                let step = events.len() + 1;
                let ev = state.try_merge(inst, step, a, b, enforce_positive)?;
                events.push(ev);
                if let Decision::Rejected(reason) = ev.decision {
                    return Err(ReplayError::Halted {
                        step,
                        pair: (a, b),
                        pair_label: format!("{}-{}", inst.label(a), inst.label(b)),
                        reason,
                        trace: Box::new(TraceLog {
                            initial_loop_total,
                            events,
                            final_state: state,
                        }),
                    });
                }
            }
            ScriptItem::Expect(exp) => {
                let mut stage = StageTotals::of(inst, &state, events.len());
                let recomputed = stage.total(exp.convention);
                let delta = recomputed - exp.total;
                stage.check = Some(ExpectationCheck {
                    convention: exp.convention,
                    expected: exp.total,
                    recomputed,
                    delta,
                    matches: delta == Distance::ZERO,
                });
                stages.push(stage);
            }
        }
    }

    let final_totals = StageTotals::of(inst, &state, events.len());
    let trace = TraceLog {
        initial_loop_total,
        events,
        final_state: state.clone(),
    };
    Ok(ReplayOutcome {
        state,
        trace,
        stages,
        final_totals,
    })
}
