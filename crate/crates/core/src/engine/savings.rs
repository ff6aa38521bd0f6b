use std::cmp::Reverse;

use serde::Serialize;

use crate::fixed::Distance;
use crate::model::{Instance, NodeId};

/// Saved mileage of serving `i` and `j` on one route instead of two
/// out-and-back trips. `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SavingsEntry {
    pub i: NodeId,
    pub j: NodeId,
    pub delta: Distance,
}

/// `d(P,i) + d(P,j) - d(i,j)`; may be negative on non-metric data.
pub fn saving(inst: &Instance, i: NodeId, j: NodeId) -> Distance {
    inst.dist(NodeId::DEPOT, i) + inst.dist(NodeId::DEPOT, j) - inst.dist(i, j)
}

/// All `n(n-1)/2` warehouse pairs in `(i, j)` order.
pub fn compute_savings(inst: &Instance) -> Vec<SavingsEntry> {
    let nodes: Vec<NodeId> = inst.warehouses().collect();
    nodes
        .iter()
        .enumerate()
        .flat_map(|(k, &i)| {
            nodes[k + 1..].iter().map(move |&j| SavingsEntry {
                i,
                j,
                delta: saving(inst, i, j),
            })
        })
        .collect()
}

/// Descending by saving, ties by ascending `(i, j)`.
pub fn sort_savings(mut entries: Vec<SavingsEntry>) -> Vec<SavingsEntry> {
    entries.sort_by_key(|e| (Reverse(e.delta), e.i, e.j));
    entries
}
