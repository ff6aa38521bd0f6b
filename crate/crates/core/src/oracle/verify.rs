use serde::Serialize;

use crate::engine::RouteState;
use crate::fixed::{Distance, Load};
use crate::model::{Instance, NodeId};

use super::{exact_cvrp, MAX_EXACT};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimalityGap {
    pub optimum: Distance,
    pub gap: Distance,
    /// Gap relative to the optimum, in percent, rounded to 0.01.
    pub gap_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckedRoute {
    pub labels: Vec<String>,
    pub nodes: Vec<NodeId>,
    pub load: Load,
    pub loop_distance: Distance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub feasible: bool,
    pub findings: Vec<String>,
    pub routes: Vec<CheckedRoute>,
    pub loop_total: Distance,
    pub vehicles: usize,
    /// Present when the instance is small enough for the exact solver.
    pub optimality: Option<OptimalityGap>,
}

/// Checks a route state: partition, capacity, and round-trip distances
/// recomputed straight from the matrix.
pub fn verify_solution(inst: &Instance, state: &RouteState) -> VerificationReport {
    verify_routes(inst, &state.routes())
}

pub fn verify_routes(inst: &Instance, routes: &[Vec<NodeId>]) -> VerificationReport {
    let label = |v: NodeId| {
        if v.index() <= inst.n() {
            inst.label(v).to_string()
        } else {
            v.to_string()
        }
    };
    let mut findings = Vec::new();
    let mut seen = vec![0usize; inst.n() + 1];
    let mut checked = Vec::with_capacity(routes.len());

    for (k, route) in routes.iter().enumerate() {
        if route.is_empty() {
            findings.push(format!("route {} is empty", k + 1));
            continue;
        }
        let mut load = Load::ZERO;
        let mut dist = Distance::ZERO;
        let mut prev = NodeId::DEPOT;
        let mut valid = true;
        for &v in route {
            if v.is_depot() {
                findings.push(format!("route {} visits the depot mid-route", k + 1));
                valid = false;
                continue;
            }
            if v.index() > inst.n() {
                findings.push(format!("route {} visits unknown node {}", k + 1, v));
                valid = false;
                continue;
            }
            seen[v.index()] += 1;
            load += inst.demand(v);
            dist += inst.dist(prev, v);
            prev = v;
        }
        dist += inst.dist(prev, NodeId::DEPOT);
        if load > inst.capacity() {
            findings.push(format!(
                "route {} load {} exceeds capacity {}",
                k + 1,
                load,
                inst.capacity()
            ));
        }
        if valid {
            checked.push(CheckedRoute {
                labels: route.iter().map(|&v| label(v)).collect(),
                nodes: route.clone(),
                load,
                loop_distance: dist,
            });
        }
    }
    for w in inst.warehouses() {
        match seen[w.index()] {
            0 => findings.push(format!("node {} is not visited", label(w))),
            1 => {}
            c => findings.push(format!("node {} appears {} times", label(w), c)),
        }
    }

    let feasible = findings.is_empty();
    let loop_total: Distance = checked.iter().map(|r| r.loop_distance).sum();
    let optimality = if feasible && inst.n() <= MAX_EXACT {
        exact_cvrp(inst).ok().map(|opt| {
            let gap = loop_total - opt.total;
            let pct = if opt.total.is_positive() {
                (gap.tenths() as f64 / opt.total.tenths() as f64 * 10_000.0).round() / 100.0
            } else {
                0.0
            };
            OptimalityGap {
                optimum: opt.total,
                gap,
                gap_percent: pct,
            }
        })
    } else {
        None
    };
    VerificationReport {
        feasible,
        findings,
        vehicles: routes.len(),
        routes: checked,
        loop_total,
        optimality,
    }
}
