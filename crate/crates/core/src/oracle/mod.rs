//! Exact solvers for small instances and an independent solution checker.

mod cvrp;
mod tsp;
mod verify;

use thiserror::Error;

use crate::model::NodeId;

pub use cvrp::{exact_cvrp, OracleResult, OracleRoute};
pub use tsp::{exact_tsp, SubsetKey, Tour, MAX_EXACT, MAX_KEY};
pub use verify::{verify_routes, verify_solution, OptimalityGap, VerificationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("{size} warehouses exceed the exact-solver limit of {max}")]
    TooLarge { size: usize, max: usize },
    #[error("node {0} is not a front warehouse")]
    BadNode(NodeId),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{cw_solve, RouteState};
    use crate::fixed::{Distance, Load};
    use crate::model::{paper_instance, random_instance, Instance};

    fn ids(inst: &Instance, labels: &str) -> Vec<NodeId> {
        labels
            .chars()
            .map(|c| inst.node_by_label(&c.to_string()).unwrap())
            .collect()
    }

    fn key(inst: &Instance, labels: &str) -> SubsetKey {
        SubsetKey::from_nodes(ids(inst, labels)).unwrap()
    }

    #[test]
    fn subset_key_bits() {
        let inst = paper_instance();
        let k = key(&inst, "CE");
        assert_eq!(k.bits(), 0b101000);
        assert!(k.contains(NodeId::new(3)) && !k.contains(NodeId::new(4)));
        assert_eq!(k.nodes().collect::<Vec<_>>(), ids(&inst, "CE"));
        assert_eq!(
            SubsetKey::from_nodes([NodeId::DEPOT]),
            Err(OracleError::BadNode(NodeId::DEPOT))
        );
        assert!(SubsetKey::from_nodes([NodeId::new(17)]).is_err());
    }

    #[test]
    fn exact_tsp_small_subsets() {
        let inst = paper_instance();
        let c = exact_tsp(&inst, key(&inst, "C")).unwrap();
        assert_eq!(
            (c.order.clone(), c.cost),
            (ids(&inst, "C"), Distance::from_tenths(280))
        );
        assert_eq!(
            exact_tsp(&inst, key(&inst, "CDE")).unwrap().cost,
            Distance::from_tenths(296)
        );
        // Cheaper than any metric-intuitive order: P-C-D-H-E-P.
        let cdeh = exact_tsp(&inst, key(&inst, "CDEH")).unwrap();
        assert_eq!(cdeh.cost, Distance::from_tenths(526));
        assert_eq!(
            crate::accounting::route_distance(
                &inst,
                &cdeh.order,
                crate::CostConvention::RoundTripLoop
            )
            .unwrap(),
            cdeh.cost
        );
        assert_eq!(
            exact_tsp(&inst, key(&inst, "ABFGI")).unwrap().cost,
            Distance::from_tenths(742)
        );
        assert_eq!(
            exact_tsp(&inst, key(&inst, "ABFGHI")).unwrap().cost,
            Distance::from_tenths(760)
        );
    }

    #[test]
    fn exact_tsp_errors() {
        let inst = paper_instance();
        assert_eq!(
            exact_tsp(&inst, SubsetKey::EMPTY),
            Err(OracleError::EmptySubset)
        );
        let big = random_instance(
            3,
            13,
            Distance::from_units(20),
            Load::from_tenths(1)..=Load::from_tenths(2),
            Load::from_units(8),
        )
        .unwrap();
        let all = SubsetKey::from_nodes(big.warehouses()).unwrap();
        assert_eq!(
            exact_tsp(&big, all),
            Err(OracleError::TooLarge { size: 13, max: 12 })
        );
        assert_eq!(
            exact_cvrp(&big),
            Err(OracleError::TooLarge { size: 13, max: 12 })
        );
        let beyond = SubsetKey::from_nodes([NodeId::new(11)]).unwrap();
        assert_eq!(
            exact_tsp(&inst, beyond),
            Err(OracleError::BadNode(NodeId::new(11)))
        );
    }

    #[test]
    fn exact_cvrp_published_instance() {
        let inst = paper_instance();
        let opt = exact_cvrp(&inst).unwrap();
        assert_eq!(opt.total, Distance::from_tenths(1052));
        let blocks: Vec<Vec<NodeId>> = opt
            .routes
            .iter()
            .map(|r| {
                let mut b = r.tour.order.clone();
                b.sort();
                b
            })
            .collect();
        assert_eq!(blocks, vec![ids(&inst, "ABCE"), ids(&inst, "DFGHI")]);
        let costs: Vec<i64> = opt.routes.iter().map(|r| r.tour.cost.tenths()).collect();
        assert_eq!(costs, [432, 620]);
        let loads: Vec<i64> = opt.routes.iter().map(|r| r.load.tenths()).collect();
        assert_eq!(loads, [54, 74]);
        assert_eq!(opt.subsets_explored, 511);
    }

    #[test]
    fn unconstrained_pair_is_one_route() {
        let inst = random_instance(
            5,
            2,
            Distance::from_units(30),
            Load::from_tenths(5)..=Load::from_tenths(10),
            Load::from_units(8),
        )
        .unwrap();
        let opt = exact_cvrp(&inst).unwrap();
        assert_eq!(opt.routes.len(), 1);
        let all = SubsetKey::from_nodes(inst.warehouses()).unwrap();
        assert_eq!(opt.total, exact_tsp(&inst, all).unwrap().cost);
    }

    #[test]
    fn verify_canonical_result() {
        let inst = paper_instance();
        let (state, _) = cw_solve(&inst);
        let report = verify_solution(&inst, &state);
        assert!(report.feasible, "{:?}", report.findings);
        assert_eq!(report.loop_total, Distance::from_tenths(1075));
        let gap = report.optimality.unwrap();
        assert_eq!(gap.optimum, Distance::from_tenths(1052));
        assert_eq!(gap.gap, Distance::from_tenths(23));
        assert_eq!(gap.gap_percent, 2.19);
    }

    #[test]
    fn verify_flags_duplicates_and_overload() {
        let inst = paper_instance();
        let mut routes = vec![ids(&inst, "ABA")];
        routes.extend(ids(&inst, "CDEFGHI").into_iter().map(|v| vec![v]));
        let report = verify_routes(&inst, &routes);
        assert!(!report.feasible);
        assert_eq!(report.findings, ["node A appears 2 times"]);
        assert!(report.optimality.is_none());

        let report = verify_routes(&inst, &[ids(&inst, "ABCDEFGHI")]);
        assert_eq!(report.findings, ["route 1 load 12.8 exceeds capacity 8.0"]);

        let report = verify_routes(&inst, &[ids(&inst, "ABCDE"), vec![]]);
        assert!(report.findings.contains(&"route 2 is empty".to_string()));
        assert!(report
            .findings
            .contains(&"node F is not visited".to_string()));
    }

    #[test]
    fn published_final_partition() {
        let inst = paper_instance();
        let state =
            RouteState::from_routes(&inst, vec![ids(&inst, "ABFGI"), ids(&inst, "CDEH")]).unwrap();
        let report = verify_solution(&inst, &state);
        assert!(report.feasible);
        let loads: Vec<i64> = report.routes.iter().map(|r| r.load.tenths()).collect();
        assert_eq!(loads, [65, 63]);
        let best: Distance = ["ABFGI", "CDEH"]
            .iter()
            .map(|b| exact_tsp(&inst, key(&inst, b)).unwrap().cost)
            .sum();
        assert_eq!(best, Distance::from_tenths(1268));
    }
}
