//! Savings computation, the Clarke-Wright merge procedure and script replay.

mod savings;
mod solve;
mod state;

pub use savings::{compute_savings, saving, sort_savings, SavingsEntry};
pub use solve::{
    cw_solve, replay, Expectation, ExpectationCheck, MergeScript, ReplayError, ReplayOutcome,
    ScriptItem, StageTotals, TraceLog,
};
pub use state::{Chain, Decision, MergeError, MergeEvent, RejectReason, RouteState};

/// One singleton route per front warehouse.
pub fn initial_solution(inst: &crate::model::Instance) -> RouteState {
    RouteState::initial(inst)
}
