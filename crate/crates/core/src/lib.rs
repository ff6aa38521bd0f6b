//! Single-depot capacitated routing with the Clarke-Wright savings method.
//!
//! The crate bundles the heuristic itself, a script replayer for
//! hand-specified merge sequences, an exact subset-DP solver used as an
//! oracle, two cost conventions, and an audit of a published worked example
//! against its own distance matrix.

pub mod accounting;
pub mod cli;
pub mod engine;
pub mod fixed;
pub mod io;
pub mod model;
pub mod oracle;
pub mod published;

pub use accounting::{route_distance, solution_totals, CostConvention, SolutionTotals};
pub use engine::{cw_solve, initial_solution, replay, RouteState, TraceLog};
pub use fixed::{Distance, Load};
pub use model::{paper_instance, random_instance, validate_instance, Instance, NodeId};
