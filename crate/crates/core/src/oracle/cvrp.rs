//! Exact CVRP by dynamic programming over warehouse subsets.
//!
//! `best(S) = min over feasible T ⊆ S containing min(S) of tsp(T) + best(S \ T)`,
//! with `best(∅) = 0`. Every block's cycle cost comes from one Held-Karp
//! table built over all warehouses.

use serde::Serialize;

use crate::fixed::{Distance, Load};
use crate::model::{Instance, NodeId};

use super::tsp::{Tour, TourTable, MAX_EXACT};
use super::OracleError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleRoute {
    pub tour: Tour,
    pub load: Load,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// Blocks ordered by their lowest member.
    pub routes: Vec<OracleRoute>,
    /// Optimal round-trip total.
    pub total: Distance,
    /// Subsets whose optimum was computed.
    pub subsets_explored: usize,
    /// Capacity-feasible block candidates evaluated across all subsets.
    pub blocks_evaluated: usize,
}

/// `true` when the ascending member list of `a` sorts before that of `b`.
pub(crate) fn members_lex_less(a: usize, b: usize) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff & diff.wrapping_neg();
    let above = !(low | (low - 1));
    if a & low != 0 {
        // `a` continues with `low`; `b` continues with something larger, or ends.
        b & above != 0
    } else {
        a & above == 0
    }
}

pub fn exact_cvrp(inst: &Instance) -> Result<OracleResult, OracleError> {
    let n = inst.n();
    if n > MAX_EXACT {
        return Err(OracleError::TooLarge {
            size: n,
            max: MAX_EXACT,
        });
    }
    let warehouses: Vec<NodeId> = inst.warehouses().collect();
    let table = TourTable::build(inst, warehouses.clone());
    let full = (1usize << n) - 1;

    let mut load = vec![Load::ZERO; full + 1];
    for mask in 1..=full {
        let low = mask.trailing_zeros() as usize;
        load[mask] = load[mask & (mask - 1)] + inst.demand(warehouses[low]);
    }
    let cap = inst.capacity();
    let tour_cost: Vec<i64> = (0..=full)
        .map(|m| {
            if m != 0 && load[m] <= cap {
                table.cost(m).tenths()
            } else {
                i64::MAX
            }
        })
        .collect();

    let mut best = vec![i64::MAX; full + 1];
    let mut choice = vec![0usize; full + 1];
    best[0] = 0;
    let mut blocks_evaluated = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        loop {
            let block = sub | low;
            if tour_cost[block] != i64::MAX {
                blocks_evaluated += 1;
                let remainder = best[mask ^ block];
                if remainder != i64::MAX {
                    let cand = tour_cost[block] + remainder;
                    if cand < best[mask]
                        || (cand == best[mask] && members_lex_less(block, choice[mask]))
                    {
                        best[mask] = cand;
                        choice[mask] = block;
                    }
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    let mut routes = Vec::new();
    let mut mask = full;
    while mask != 0 {
        let block = choice[mask];
        routes.push(OracleRoute {
            tour: table.tour(inst, block),
            load: load[block],
        });
        mask ^= block;
    }
    Ok(OracleResult {
        routes,
        total: Distance::from_tenths(best[full]),
        subsets_explored: full,
        blocks_evaluated,
    })
}
