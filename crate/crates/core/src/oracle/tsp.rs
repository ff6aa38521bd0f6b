//! Held-Karp over (subset, last node) states, anchored at the depot.

use serde::Serialize;

use crate::fixed::Distance;
use crate::model::{Instance, NodeId};

use super::OracleError;

/// Subsets larger than this are refused by the exact solvers.
pub const MAX_EXACT: usize = 12;
/// Largest warehouse count a [`SubsetKey`] can address.
pub const MAX_KEY: usize = 16;

/// Set of front warehouses; bit `i` stands for warehouse `i` (bit 0, the
/// depot, is never set).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetKey(u32);

impl SubsetKey {
    pub const EMPTY: SubsetKey = SubsetKey(0);

    pub fn from_nodes<I: IntoIterator<Item = NodeId>>(nodes: I) -> Result<Self, OracleError> {
        let mut bits = 0u32;
        for v in nodes {
            if v.is_depot() || v.index() > MAX_KEY {
                return Err(OracleError::BadNode(v));
            }
            bits |= 1 << v.index();
        }
        Ok(SubsetKey(bits))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: NodeId) -> bool {
        v.index() < 32 && self.0 & (1 << v.index()) != 0
    }

    /// Members in ascending index order.
    pub fn nodes(self) -> impl Iterator<Item = NodeId> {
        let bits = self.0;
        (1..=MAX_KEY)
            .filter(move |&i| bits & (1 << i) != 0)
            .map(NodeId::new)
    }
}

/// A closed tour `P -> order.. -> P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tour {
    pub order: Vec<NodeId>,
    pub cost: Distance,
}

const UNREACHED: i64 = i64::MAX;

/// Shortest depot-anchored paths for every subset of a node universe.
pub(crate) struct TourTable {
    nodes: Vec<NodeId>,
    // paths[mask * k + last]: cheapest P -> .. -> nodes[last] covering `mask`.
    paths: Vec<i64>,
    depot_legs: Vec<i64>,
}

impl TourTable {
    pub(crate) fn build(inst: &Instance, nodes: Vec<NodeId>) -> Self {
        let k = nodes.len();
        let d = |a: NodeId, b: NodeId| inst.dist(a, b).tenths();
        let mut paths = vec![UNREACHED; (1usize << k) * k];
        for (p, &v) in nodes.iter().enumerate() {
            paths[(1 << p) * k + p] = d(NodeId::DEPOT, v);
        }
        for mask in 1usize..(1 << k) {
            for last in 0..k {
                let here = paths[mask * k + last];
                if here == UNREACHED {
                    continue;
                }
                for next in 0..k {
                    if mask & (1 << next) != 0 {
                        continue;
                    }
                    let slot = &mut paths[(mask | 1 << next) * k + next];
                    let cand = here + d(nodes[last], nodes[next]);
                    if cand < *slot {
                        *slot = cand;
                    }
                }
            }
        }
        let depot_legs = nodes.iter().map(|&v| d(v, NodeId::DEPOT)).collect();
        TourTable {
            nodes,
            paths,
            depot_legs,
        }
    }

    /// Closing cost and closing node for `mask`; lowest last index on ties.
    fn close(&self, mask: usize) -> (i64, usize) {
        let k = self.nodes.len();
        let mut best = (UNREACHED, 0);
        for last in 0..k {
            if mask & (1 << last) == 0 {
                continue;
            }
            let cost = self.paths[mask * k + last] + self.depot_legs[last];
            if cost < best.0 {
                best = (cost, last);
            }
        }
        best
    }

    pub(crate) fn cost(&self, mask: usize) -> Distance {
        Distance::from_tenths(self.close(mask).0)
    }

    pub(crate) fn tour(&self, inst: &Instance, mask: usize) -> Tour {
        let k = self.nodes.len();
        let (cost, mut last) = self.close(mask);
        let mut remaining = mask;
        let mut order = Vec::with_capacity(mask.count_ones() as usize);
        loop {
            order.push(self.nodes[last]);
            let here = self.paths[remaining * k + last];
            remaining &= !(1 << last);
            if remaining == 0 {
                break;
            }
            last = (0..k)
                .filter(|&p| remaining & (1 << p) != 0)
                .find(|&p| {
                    let prev = self.paths[remaining * k + p];
                    prev != UNREACHED
                        && prev + inst.dist(self.nodes[p], self.nodes[last]).tenths() == here
                })
                .expect("Held-Karp predecessor exists");
        }
        order.reverse();
        Tour {
            order,
            cost: Distance::from_tenths(cost),
        }
    }
}

/// Optimal round trip from the depot through every member of `subset`.
pub fn exact_tsp(inst: &Instance, subset: SubsetKey) -> Result<Tour, OracleError> {
    if subset.is_empty() {
        return Err(OracleError::EmptySubset);
    }
    if subset.len() > MAX_EXACT {
        return Err(OracleError::TooLarge {
            size: subset.len(),
            max: MAX_EXACT,
        });
    }
    let nodes: Vec<NodeId> = subset.nodes().collect();
    if let Some(&bad) = nodes.iter().find(|&&v| !inst.is_warehouse(v)) {
        return Err(OracleError::BadNode(bad));
    }
    let full = (1usize << nodes.len()) - 1;
    let table = TourTable::build(inst, nodes);
    Ok(table.tour(inst, full))
}
