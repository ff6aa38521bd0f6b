//! Open route chains and the endpoint merge rule.

use serde::Serialize;
use thiserror::Error;

use crate::fixed::{Distance, Load};
use crate::model::{Instance, NodeId};

use super::savings::saving;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MergeError {
    #[error("node {0} is not a front warehouse of this instance")]
    UnknownNode(NodeId),
    #[error("cannot connect node {0} to itself")]
    SelfMerge(NodeId),
    #[error("empty route")]
    EmptyRoute,
}

/// An open chain of warehouses; the depot legs are implied at both ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    nodes: Vec<NodeId>,
    load: Load,
}

impl Chain {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn load(&self) -> Load {
        self.load
    }

    pub fn first(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn last(&self) -> NodeId {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn is_endpoint(&self, node: NodeId) -> bool {
        self.first() == node || self.last() == node
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    // Lower-indexed endpoint first.
    fn normalize(&mut self) {
        if self.last() < self.first() {
            self.nodes.reverse();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    SameRoute,
    InteriorNode,
    CapacityExceeded,
    NonPositiveSavings,
}

impl RejectReason {
    pub fn as_str(self) -> &'static str {
        match self {
            RejectReason::SameRoute => "same_route",
            RejectReason::InteriorNode => "interior_node",
            RejectReason::CapacityExceeded => "capacity_exceeded",
            RejectReason::NonPositiveSavings => "non_positive_savings",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    Accepted,
    Rejected(RejectReason),
}

impl Decision {
    pub fn is_accepted(self) -> bool {
        self == Decision::Accepted
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MergeEvent {
    pub step: usize,
    pub pair: (NodeId, NodeId),
    pub delta: Distance,
    pub decision: Decision,
    pub loop_total_after: Distance,
}

/// Chains partitioning the warehouses, plus the running round-trip total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RouteState {
    chains: Vec<Chain>,
    // node index -> position in `chains`; `None` for the depot.
    owner: Vec<Option<usize>>,
    loop_total: Distance,
}

impl RouteState {
    /// One singleton chain per warehouse, in index order.
    pub fn initial(inst: &Instance) -> Self {
        let chains = inst
            .warehouses()
            .map(|w| Chain {
                nodes: vec![w],
                load: inst.demand(w),
            })
            .collect();
        let loop_total = inst
            .warehouses()
            .map(|w| inst.dist(NodeId::DEPOT, w) * 2)
            .sum();
        let mut state = RouteState {
            chains,
            owner: Vec::new(),
            loop_total,
        };
        state.reindex(inst.n());
        state
    }

    /// Wraps externally supplied routes. Only node membership is checked;
    /// partition and capacity are left to [`crate::oracle::verify_solution`].
    pub fn from_routes(inst: &Instance, routes: Vec<Vec<NodeId>>) -> Result<Self, MergeError> {
        let mut chains = Vec::with_capacity(routes.len());
        let mut loop_total = Distance::ZERO;
        for nodes in routes {
            if nodes.is_empty() {
                return Err(MergeError::EmptyRoute);
            }
            if let Some(&bad) = nodes.iter().find(|&&v| !inst.is_warehouse(v)) {
                return Err(MergeError::UnknownNode(bad));
            }
            let load = nodes.iter().map(|&v| inst.demand(v)).sum();
            loop_total += inst.dist(NodeId::DEPOT, nodes[0])
                + nodes
                    .windows(2)
                    .map(|w| inst.dist(w[0], w[1]))
                    .sum::<Distance>()
                + inst.dist(nodes[nodes.len() - 1], NodeId::DEPOT);
            chains.push(Chain { nodes, load });
        }
        let mut state = RouteState {
            chains,
            owner: Vec::new(),
            loop_total,
        };
        state.reindex(inst.n());
        Ok(state)
    }

    fn reindex(&mut self, n: usize) {
        self.owner = vec![None; n + 1];
        for (k, chain) in self.chains.iter().enumerate() {
            for v in &chain.nodes {
                self.owner[v.index()] = Some(k);
            }
        }
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    pub fn routes(&self) -> Vec<Vec<NodeId>> {
        self.chains.iter().map(|c| c.nodes.clone()).collect()
    }

    pub fn vehicles(&self) -> usize {
        self.chains.len()
    }

    /// Incrementally maintained round-trip total.
    pub fn loop_total(&self) -> Distance {
        self.loop_total
    }

    pub fn chain_of(&self, node: NodeId) -> Option<&Chain> {
        self.owner
            .get(node.index())
            .copied()
            .flatten()
            .map(|k| &self.chains[k])
    }

    /// Attempts to join the chains holding `i` and `j` so that the two become
    /// adjacent. A rejected attempt leaves the state untouched.
    pub fn try_merge(
        &mut self,
        inst: &Instance,
        step: usize,
        i: NodeId,
        j: NodeId,
        enforce_positive: bool,
    ) -> Result<MergeEvent, MergeError> {
        for v in [i, j] {
            if !inst.is_warehouse(v) || v.index() >= self.owner.len() {
                return Err(MergeError::UnknownNode(v));
            }
        }
        if i == j {
            return Err(MergeError::SelfMerge(i));
        }
        let delta = saving(inst, i, j);
        let (a, b) = match (self.owner[i.index()], self.owner[j.index()]) {
            (Some(a), Some(b)) => (a, b),
            (None, _) => return Err(MergeError::UnknownNode(i)),
            (_, None) => return Err(MergeError::UnknownNode(j)),
        };

        let rejection = if a == b {
            Some(RejectReason::SameRoute)
        } else if !self.chains[a].is_endpoint(i) || !self.chains[b].is_endpoint(j) {
            Some(RejectReason::InteriorNode)
        } else if self.chains[a].load + self.chains[b].load > inst.capacity() {
            Some(RejectReason::CapacityExceeded)
        } else if enforce_positive && !delta.is_positive() {
            Some(RejectReason::NonPositiveSavings)
        } else {
            None
        };
        if let Some(reason) = rejection {
            return Ok(MergeEvent {
                step,
                pair: (i, j),
                delta,
                decision: Decision::Rejected(reason),
                loop_total_after: self.loop_total,
            });
        }

        // [.. i] ++ [j ..]
        let (keep, drop) = (a.min(b), a.max(b));
        let mut left = std::mem::take(&mut self.chains[a].nodes);
        let mut right = std::mem::take(&mut self.chains[b].nodes);
        if left[left.len() - 1] != i {
            left.reverse();
        }
        if right[0] != j {
            right.reverse();
        }
        left.extend(right);
        let load = self.chains[a].load + self.chains[b].load;
        let mut merged = Chain { nodes: left, load };
        merged.normalize();
        self.chains[keep] = merged;
        self.chains.remove(drop);
        self.reindex(inst.n());
        self.loop_total -= delta;

        Ok(MergeEvent {
            step,
            pair: (i, j),
            delta,
            decision: Decision::Accepted,
            loop_total_after: self.loop_total,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::paper_instance;

    fn ids(inst: &Instance, labels: &str) -> Vec<NodeId> {
        labels
            .chars()
            .map(|c| inst.node_by_label(&c.to_string()).unwrap())
            .collect()
    }

    fn same_route(a: &[NodeId], b: &[NodeId]) -> bool {
        a == b || a.iter().rev().eq(b.iter())
    }

    #[test]
    fn initial_is_all_singletons() {
        let inst = paper_instance();
        let state = RouteState::initial(&inst);
        assert_eq!(state.vehicles(), 9);
        assert!(state.chains().iter().all(|c| c.len() == 1));
        assert_eq!(state.loop_total(), Distance::from_tenths(4292));
    }

    #[test]
    fn accepted_merge_joins_endpoints() {
        let inst = paper_instance();
        let mut state = RouteState::initial(&inst);
        let gi = ids(&inst, "GI");
        let ev = state.try_merge(&inst, 1, gi[0], gi[1], true).unwrap();
        assert_eq!(ev.decision, Decision::Accepted);
        assert_eq!(ev.delta, Distance::from_tenths(600));
        assert_eq!(ev.loop_total_after, Distance::from_tenths(4292 - 600));
        let chain = state.chain_of(gi[0]).unwrap();
        assert_eq!(chain.nodes(), &gi[..]);
        assert_eq!(chain.load(), Load::from_tenths(27));
        assert_eq!(state.vehicles(), 8);
    }

    #[test]
    fn interior_node_is_rejected() {
        let inst = paper_instance();
        let mut routes = vec![ids(&inst, "ABF")];
        routes.extend(ids(&inst, "CDEGHI").into_iter().map(|v| vec![v]));
        let state = RouteState::from_routes(&inst, routes).unwrap();
        let mut after = state.clone();
        let bg = ids(&inst, "BG");
        let ev = after.try_merge(&inst, 1, bg[0], bg[1], false).unwrap();
        assert_eq!(ev.decision, Decision::Rejected(RejectReason::InteriorNode));
        assert_eq!(after, state);
    }

    #[test]
    fn capacity_is_enforced() {
        let inst = paper_instance();
        let mut routes = vec![ids(&inst, "FABIGH")];
        routes.extend(ids(&inst, "CDE").into_iter().map(|v| vec![v]));
        let state = RouteState::from_routes(&inst, routes).unwrap();
        assert_eq!(state.chains()[0].load(), Load::from_units(8));
        let mut after = state.clone();
        let df = ids(&inst, "DF");
        let ev = after.try_merge(&inst, 1, df[0], df[1], true).unwrap();
        assert_eq!(
            ev.decision,
            Decision::Rejected(RejectReason::CapacityExceeded)
        );
        assert_eq!(after, state);
    }

    #[test]
    fn same_route_and_non_positive() {
        let inst = paper_instance();
        let mut state = RouteState::initial(&inst);
        let gi = ids(&inst, "GI");
        state.try_merge(&inst, 1, gi[0], gi[1], true).unwrap();
        let ev = state.try_merge(&inst, 2, gi[1], gi[0], true).unwrap();
        assert_eq!(ev.decision, Decision::Rejected(RejectReason::SameRoute));

        // Shrink the depot legs of C and E so their saving turns negative.
        let mut data = inst.data().clone();
        for k in [3, 5] {
            data.dist[0][k] = Distance::from_tenths(10);
            data.dist[k][0] = Distance::from_tenths(10);
        }
        let skewed = Instance::new(data).unwrap();
        let ce = ids(&skewed, "CE");
        let mut state = RouteState::initial(&skewed);
        let ev = state.try_merge(&skewed, 1, ce[0], ce[1], true).unwrap();
        assert_eq!(ev.delta, Distance::from_tenths(-10));
        assert_eq!(
            ev.decision,
            Decision::Rejected(RejectReason::NonPositiveSavings)
        );
        let ev = state.try_merge(&skewed, 2, ce[0], ce[1], false).unwrap();
        assert!(ev.decision.is_accepted());
        assert_eq!(
            ev.loop_total_after,
            RouteState::initial(&skewed).loop_total() + Distance::from_tenths(10)
        );
    }

    #[test]
    fn parameter_errors() {
        let inst = paper_instance();
        let mut state = RouteState::initial(&inst);
        let a = ids(&inst, "A")[0];
        assert_eq!(
            state.try_merge(&inst, 1, a, a, true),
            Err(MergeError::SelfMerge(a))
        );
        assert_eq!(
            state.try_merge(&inst, 1, a, NodeId::DEPOT, true),
            Err(MergeError::UnknownNode(NodeId::DEPOT))
        );
        assert_eq!(
            state.try_merge(&inst, 1, NodeId::new(10), a, true),
            Err(MergeError::UnknownNode(NodeId::new(10)))
        );
        assert_eq!(
            RouteState::from_routes(&inst, vec![vec![]]),
            Err(MergeError::EmptyRoute)
        );
    }

    #[test]
    fn merge_orientation_reverses_as_needed() {
        let inst = paper_instance();
        let mut state = RouteState::initial(&inst);
        let n = |l: &str| ids(&inst, l)[0];
        for (k, (x, y)) in [("B", "F"), ("B", "A"), ("A", "G"), ("G", "I")]
            .into_iter()
            .enumerate()
        {
            let ev = state.try_merge(&inst, k + 1, n(x), n(y), false).unwrap();
            assert!(ev.decision.is_accepted());
        }
        let chain = state.chain_of(n("A")).unwrap();
        assert!(same_route(chain.nodes(), &ids(&inst, "IGABF")));
        assert_eq!(state.vehicles(), 5);
    }
}
