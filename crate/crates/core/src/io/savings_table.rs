//! Tab-delimited savings output: the lower-triangular matrix, then the
//! descending list with ranks.

use std::fmt::Write as _;

use crate::engine::{compute_savings, saving, sort_savings};
use crate::model::{Instance, NodeId};

pub fn emit_savings_table(inst: &Instance) -> String {
    let mut out = String::new();
    let nodes: Vec<NodeId> = inst.warehouses().collect();

    out.push_str("# saved mileage (km)\n");
    if nodes.len() >= 2 {
        for v in &nodes[..nodes.len() - 1] {
            let _ = write!(out, "\t{}", inst.label(*v));
        }
        out.push('\n');
        for (k, &row) in nodes.iter().enumerate().skip(1) {
            out.push_str(inst.label(row));
            for &col in &nodes[..k] {
                let _ = write!(out, "\t{}", saving(inst, col, row));
            }
            out.push('\n');
        }
    }

    out.push_str("# sorted by saving\nrank\tpair\tsaving\n");
    for (rank, e) in sort_savings(compute_savings(inst)).iter().enumerate() {
        let _ = writeln!(
            out,
            "{}\t{}-{}\t{}",
            rank + 1,
            inst.label(e.i),
            inst.label(e.j),
            e.delta
        );
    }
    out
}
