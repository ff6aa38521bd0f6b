//! Audit of the published worked example against its own distance matrix.
//!
//! Every published savings cell, every savings rank and every staged total
//! is recomputed and classified. `Match` means the recomputed value is
//! identical; `Discrepant` means the same construction gives a different
//! number; `Irreproducible` means no visiting order of the published route
//! sets can produce the published number.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::accounting::{route_distance, CostConvention};
use crate::engine::{
    compute_savings, replay, saving, sort_savings, MergeScript, ReplayError, ScriptItem,
};
use crate::fixed::{Distance, Load};
use crate::model::{paper_instance, Instance, NodeId};
use crate::oracle::{exact_tsp, OracleError, SubsetKey};
use crate::published::{self, PublishedStage};

use super::parse_merge_script;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Km,
    Rank,
    Vehicles,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    Match,
    Discrepant,
    Irreproducible,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Match => "Match",
            Classification::Discrepant => "Discrepant",
            Classification::Irreproducible => "Irreproducible",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordKind {
    SavingsCell,
    SavingsRank,
    StageTotal,
    StageVehicles,
}

/// One published figure next to its recomputation. Values are raw: tenths
/// for [`Unit::Km`], plain counts otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrataRecord {
    pub location: String,
    pub kind: RecordKind,
    pub unit: Unit,
    pub published: i64,
    pub recomputed: i64,
    pub delta: i64,
    pub class: Classification,
}

impl ErrataRecord {
    fn compared(
        location: String,
        kind: RecordKind,
        unit: Unit,
        published: i64,
        recomputed: i64,
    ) -> Self {
        let delta = recomputed - published;
        let class = if delta == 0 {
            Classification::Match
        } else {
            Classification::Discrepant
        };
        ErrataRecord {
            location,
            kind,
            unit,
            published,
            recomputed,
            delta,
            class,
        }
    }

    pub fn format_value(&self, raw: i64) -> String {
        match self.unit {
            Unit::Km => Distance::from_tenths(raw).to_string(),
            Unit::Rank | Unit::Vehicles => raw.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrataReport {
    pub records: Vec<ErrataRecord>,
    pub notes: Vec<String>,
}

impl ErrataReport {
    pub fn count(&self, kind: RecordKind, class: Classification) -> usize {
        self.records
            .iter()
            .filter(|r| r.kind == kind && r.class == class)
            .count()
    }

    pub fn find(&self, location: &str) -> Option<&ErrataRecord> {
        self.records.iter().find(|r| r.location == location)
    }

    /// Tab-delimited table, then a summary and notes as `#` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::from("location\tpublished\trecomputed\tdelta\tclass\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                r.location,
                r.format_value(r.published),
                r.format_value(r.recomputed),
                r.format_value(r.delta),
                r.class
            );
        }
        for (kind, name) in [
            (RecordKind::SavingsCell, "savings cells"),
            (RecordKind::SavingsRank, "savings ranks"),
            (RecordKind::StageTotal, "stage totals"),
            (RecordKind::StageVehicles, "stage vehicle counts"),
        ] {
            let _ = writeln!(
                out,
                "# {name}: {} match, {} discrepant, {} irreproducible",
                self.count(kind, Classification::Match),
                self.count(kind, Classification::Discrepant),
                self.count(kind, Classification::Irreproducible)
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "# note: {note}");
        }
        out
    }
}

#[derive(Debug, Error)]
pub enum ErrataError {
    #[error("the errata audit only applies to the published front-warehouse instance")]
    NotPublishedInstance,
    #[error("published merge sequence failed to replay: {0}")]
    Replay(#[from] ReplayError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

fn same_problem(a: &Instance, b: &Instance) -> bool {
    let (a, b) = (a.data(), b.data());
    a.labels == b.labels && a.dist == b.dist && a.demand == b.demand && a.capacity == b.capacity
}

pub fn emit_errata(inst: &Instance) -> Result<ErrataReport, ErrataError> {
    if !same_problem(inst, &paper_instance()) {
        return Err(ErrataError::NotPublishedInstance);
    }
    let id = |label: &str| inst.node_by_label(label).expect("published label");
    let mut records = Vec::new();
    let mut notes = Vec::new();

    // Saved mileage matrix.
    let mut published_cells: HashMap<(NodeId, NodeId), i64> = HashMap::new();
    for (k, row) in published::SAVINGS_ROWS.iter().enumerate() {
        let j = NodeId::new(k + 2);
        for (c, &value) in row.iter().enumerate() {
            let i = NodeId::new(c + 1);
            published_cells.insert((i, j), value);
            records.push(ErrataRecord::compared(
                format!("Table 4-3 ({},{})", inst.label(i), inst.label(j)),
                RecordKind::SavingsCell,
                Unit::Km,
                value,
                saving(inst, i, j).tenths(),
            ));
        }
    }
    for ((i, j), &value) in sorted_cells(&published_cells) {
        let recomputed = saving(inst, i, j);
        if recomputed.tenths() == value {
            continue;
        }
        let implied = inst.dist(NodeId::DEPOT, i) + inst.dist(NodeId::DEPOT, j)
            - Distance::from_tenths(value);
        notes.push(format!(
            "Table 4-3 ({},{}): published {} implies d({},{}) = {}, the distance table gives {}",
            inst.label(i),
            inst.label(j),
            Distance::from_tenths(value),
            inst.label(i),
            inst.label(j),
            implied,
            inst.dist(i, j)
        ));
        // Only the neighbouring columns of the same row count as a shift.
        let neighbours = [i.index().checked_sub(1), Some(i.index() + 1)];
        for other in neighbours.into_iter().flatten().map(NodeId::new) {
            if other.is_depot() || other == j || !inst.is_warehouse(other) {
                continue;
            }
            let (a, b) = if other < j { (other, j) } else { (j, other) };
            if saving(inst, a, b).tenths() == value {
                notes.push(format!(
                    "Table 4-3 ({},{}): published {} equals the recomputed ({},{}) saving; row {} looks column-shifted",
                    inst.label(i),
                    inst.label(j),
                    Distance::from_tenths(value),
                    inst.label(a),
                    inst.label(b),
                    inst.label(j)
                ));
            }
        }
    }

    // Ranks.
    let sorted = sort_savings(compute_savings(inst));
    let rank_of: HashMap<(NodeId, NodeId), usize> = sorted
        .iter()
        .enumerate()
        .map(|(r, e)| ((e.i, e.j), r + 1))
        .collect();
    for (r, &(a, b, _)) in published::SORTED_SAVINGS.iter().enumerate() {
        let (x, y) = (id(a).min(id(b)), id(a).max(id(b)));
        records.push(ErrataRecord::compared(
            format!("Table 4-4 rank {} ({a}-{b})", r + 1),
            RecordKind::SavingsRank,
            Unit::Rank,
            (r + 1) as i64,
            rank_of[&(x, y)] as i64,
        ));
    }

    // Staged totals under the mixed convention.
    let script = parse_merge_script(published::MERGE_SCRIPT, inst).expect("bundled script parses");
    let directives: Vec<ScriptItem> = script
        .directives()
        .map(|(a, b)| ScriptItem::Connect(a, b))
        .collect();
    let mut last_replayed = None;
    for stage in &published::STAGES {
        let Some(count) = stage.directives else {
            continue;
        };
        let prefix = MergeScript {
            items: directives[..count].to_vec(),
        };
        let outcome = replay(inst, &prefix, false)?;
        push_stage(
            &mut records,
            stage,
            outcome.final_totals.mixed_total.tenths(),
            outcome.state.vehicles(),
        );
        last_replayed = Some(outcome.state);
    }

    // Final stage: the stage-three loop plus one route over everything else.
    let final_stage = published::STAGES[published::STAGES.len() - 1];
    let loop_block: Vec<NodeId> = published::FINAL_STAGE_LOOP.iter().map(|l| id(l)).collect();
    let rest: Vec<NodeId> = inst
        .warehouses()
        .filter(|v| !loop_block.contains(v))
        .collect();
    let loop_tour = exact_tsp(inst, SubsetKey::from_nodes(loop_block.iter().copied())?)?;
    let rest_tour = exact_tsp(inst, SubsetKey::from_nodes(rest.iter().copied())?)?;
    let best_loop = loop_tour.cost + rest_tour.cost;

    let stage_three = last_replayed.expect("published script reaches stage three");
    let replayed_chain = stage_three
        .chain_of(loop_block[0])
        .map(|c| c.nodes().to_vec())
        .expect("stage-three chain exists");
    let mut replayed_set = replayed_chain.clone();
    replayed_set.sort();
    debug_assert_eq!(replayed_set, loop_block);
    let kept_chain = route_distance(inst, &replayed_chain, CostConvention::MixedSingletonOneWay)
        .expect("replayed chain is valid")
        + rest_tour.cost;

    let classify = |reconstructed: Distance| {
        let published = final_stage.total;
        let class = if published < best_loop.tenths() {
            Classification::Irreproducible
        } else if published == reconstructed.tenths() {
            Classification::Match
        } else {
            Classification::Discrepant
        };
        (reconstructed.tenths(), class)
    };
    for (suffix, reconstructed) in [
        ("loop, best visiting order", best_loop),
        ("mixed, stage-three chain kept", kept_chain),
    ] {
        let (recomputed, class) = classify(reconstructed);
        records.push(ErrataRecord {
            location: format!("{} total ({suffix})", final_stage.figure),
            kind: RecordKind::StageTotal,
            unit: Unit::Km,
            published: final_stage.total,
            recomputed,
            delta: recomputed - final_stage.total,
            class,
        });
    }
    records.push(ErrataRecord::compared(
        format!("{} vehicles", final_stage.figure),
        RecordKind::StageVehicles,
        Unit::Vehicles,
        final_stage.vehicles as i64,
        [&loop_block, &rest]
            .iter()
            .filter(|b| !b.is_empty())
            .count() as i64,
    ));
    let labels = |nodes: &[NodeId]| {
        nodes
            .iter()
            .map(|&v| inst.label(v))
            .collect::<Vec<_>>()
            .join("-")
    };
    notes.push(format!(
        "{}: published {} is below {} = {} ({}) + {} ({}), the cheapest visiting order of its two route sets",
        final_stage.figure,
        Distance::from_tenths(final_stage.total),
        best_loop,
        loop_tour.cost,
        labels(&loop_tour.order),
        rest_tour.cost,
        labels(&rest_tour.order)
    ));

    // The stage-three loop is described as full.
    let loop_load: Load = loop_block.iter().map(|&v| inst.demand(v)).sum();
    let fitting: Vec<&str> = rest
        .iter()
        .filter(|&&v| loop_load + inst.demand(v) <= inst.capacity())
        .map(|&v| inst.label(v))
        .collect();
    if !fitting.is_empty() {
        notes.push(format!(
            "{}: loop {} carries {} t; {} would still fit within {} t",
            published::STAGES[2].figure,
            published::FINAL_STAGE_LOOP.join("-"),
            loop_load,
            fitting.join(", "),
            inst.capacity()
        ));
    }

    Ok(ErrataReport { records, notes })
}

fn push_stage(
    records: &mut Vec<ErrataRecord>,
    stage: &PublishedStage,
    total: i64,
    vehicles: usize,
) {
    records.push(ErrataRecord::compared(
        format!("{} total (mixed)", stage.figure),
        RecordKind::StageTotal,
        Unit::Km,
        stage.total,
        total,
    ));
    records.push(ErrataRecord::compared(
        format!("{} vehicles", stage.figure),
        RecordKind::StageVehicles,
        Unit::Vehicles,
        stage.vehicles as i64,
        vehicles as i64,
    ));
}

fn sorted_cells(cells: &HashMap<(NodeId, NodeId), i64>) -> Vec<((NodeId, NodeId), &i64)> {
    let mut v: Vec<_> = cells.iter().map(|(&k, v)| (k, v)).collect();
    v.sort_by_key(|&((i, j), _)| (j, i));
    v
}
