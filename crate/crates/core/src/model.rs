//! Problem instances: a single depot, front warehouses with demands, a
//! symmetric distance matrix and one vehicle capacity.

use std::fmt;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fixed::{Distance, Load};
use crate::published;

/// Node index. `0` is the depot; `1..=n` are front warehouses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(usize);

impl NodeId {
    pub const DEPOT: NodeId = NodeId(0);

    pub const fn new(index: usize) -> Self {
        NodeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }

    pub const fn is_depot(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Raw instance contents, not yet checked. `labels[0]` names the depot and
/// `demand[k]` belongs to node `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceData {
    pub name: String,
    pub labels: Vec<String>,
    pub dist: Vec<Vec<Distance>>,
    pub demand: Vec<Load>,
    pub capacity: Load,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    NoWarehouses,
    LabelCount {
        expected: usize,
        found: usize,
    },
    DuplicateLabel(String),
    MatrixShape {
        expected: usize,
        row: usize,
        found: usize,
    },
    MatrixRows {
        expected: usize,
        found: usize,
    },
    NonZeroDiagonal(usize),
    NegativeDistance(usize, usize),
    Asymmetric(usize, usize),
    NonPositiveDemand(String),
    NonPositiveCapacity,
    DemandExceedsCapacity(String),
    /// `d(from, to) > d(from, via) + d(via, to)`.
    TriangleViolation {
        from: String,
        via: String,
        to: String,
    },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NoWarehouses => write!(f, "no front warehouses"),
            Self::LabelCount { expected, found } => {
                write!(f, "expected {expected} labels, found {found}")
            }
            Self::DuplicateLabel(l) => write!(f, "duplicate label {l}"),
            Self::MatrixShape {
                expected,
                row,
                found,
            } => {
                write!(
                    f,
                    "distance row {row} has {found} entries, expected {expected}"
                )
            }
            Self::MatrixRows { expected, found } => {
                write!(f, "distance matrix has {found} rows, expected {expected}")
            }
            Self::NonZeroDiagonal(i) => write!(f, "non-zero diagonal at ({i},{i})"),
            Self::NegativeDistance(i, j) => write!(f, "negative distance at ({i},{j})"),
            Self::Asymmetric(i, j) => write!(f, "asymmetric at ({i},{j})"),
            Self::NonPositiveDemand(l) => write!(f, "non-positive demand at {l}"),
            Self::NonPositiveCapacity => write!(f, "non-positive capacity"),
            Self::DemandExceedsCapacity(l) => write!(f, "demand at {l} exceeds vehicle capacity"),
            Self::TriangleViolation { from, via, to } => {
                write!(f, "triangle inequality fails for ({from},{via},{to})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<ValidationIssue>,
    pub warnings: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error: {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid instance:\n{0}")]
    Invalid(ValidationReport),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

/// Checks every instance invariant. Shape problems short-circuit the
/// matrix checks; everything else is collected.
pub fn validate_instance(data: &InstanceData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let errors = &mut report.errors;

    let n = data.demand.len();
    let size = n + 1;
    if n == 0 {
        errors.push(ValidationIssue::NoWarehouses);
    }
    if data.labels.len() != size {
        errors.push(ValidationIssue::LabelCount {
            expected: size,
            found: data.labels.len(),
        });
    }
    for (k, label) in data.labels.iter().enumerate() {
        if data.labels[..k].contains(label) {
            errors.push(ValidationIssue::DuplicateLabel(label.clone()));
        }
    }
    let label = |i: usize| data.labels.get(i).cloned().unwrap_or_else(|| i.to_string());

    let mut shape_ok = data.dist.len() == size;
    if !shape_ok {
        errors.push(ValidationIssue::MatrixRows {
            expected: size,
            found: data.dist.len(),
        });
    }
    for (row, entries) in data.dist.iter().enumerate() {
        if entries.len() != data.dist.len() {
            shape_ok = false;
            errors.push(ValidationIssue::MatrixShape {
                expected: data.dist.len(),
                row,
                found: entries.len(),
            });
        }
    }
    if shape_ok {
        let d = &data.dist;
        #[allow(clippy::needless_range_loop)]
        for i in 0..size {
            if d[i][i] != Distance::ZERO {
                errors.push(ValidationIssue::NonZeroDiagonal(i));
            }
            for j in 0..size {
                if d[i][j].is_negative() {
                    errors.push(ValidationIssue::NegativeDistance(i, j));
                }
                if i < j && d[i][j] != d[j][i] {
                    errors.push(ValidationIssue::Asymmetric(i, j));
                }
            }
        }
    }

    if !data.capacity.is_positive() {
        errors.push(ValidationIssue::NonPositiveCapacity);
    }
    for (k, &q) in data.demand.iter().enumerate() {
        if !q.is_positive() {
            errors.push(ValidationIssue::NonPositiveDemand(label(k + 1)));
        } else if q > data.capacity {
            errors.push(ValidationIssue::DemandExceedsCapacity(label(k + 1)));
        }
    }

    if shape_ok {
        let d = &data.dist;
        for from in 0..size {
            for to in from + 1..size {
                for via in 0..size {
                    if via != from && via != to && d[from][to] > d[from][via] + d[via][to] {
                        report.warnings.push(ValidationIssue::TriangleViolation {
                            from: label(from),
                            via: label(via),
                            to: label(to),
                        });
                    }
                }
            }
        }
    }
    report
}

/// A validated instance. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    data: InstanceData,
    warnings: Vec<ValidationIssue>,
}

impl Instance {
    pub fn new(data: InstanceData) -> Result<Self, ModelError> {
        let report = validate_instance(&data);
        if !report.is_valid() {
            return Err(ModelError::Invalid(report));
        }
        Ok(Instance {
            data,
            warnings: report.warnings,
        })
    }

    pub fn data(&self) -> &InstanceData {
        &self.data
    }

    pub fn warnings(&self) -> &[ValidationIssue] {
        &self.warnings
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    /// Number of front warehouses.
    pub fn n(&self) -> usize {
        self.data.demand.len()
    }

    pub fn capacity(&self) -> Load {
        self.data.capacity
    }

    pub fn dist(&self, a: NodeId, b: NodeId) -> Distance {
        self.data.dist[a.0][b.0]
    }

    /// Demand of a front warehouse. The depot has none.
    pub fn demand(&self, node: NodeId) -> Load {
        if node.is_depot() {
            Load::ZERO
        } else {
            self.data.demand[node.0 - 1]
        }
    }

    pub fn total_demand(&self) -> Load {
        self.data.demand.iter().sum()
    }

    pub fn label(&self, node: NodeId) -> &str {
        &self.data.labels[node.0]
    }

    pub fn depot_label(&self) -> &str {
        &self.data.labels[0]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.data.labels.iter().position(|l| l == label).map(NodeId)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.0 <= self.n()
    }

    pub fn is_warehouse(&self, node: NodeId) -> bool {
        !node.is_depot() && self.contains(node)
    }

    /// Front warehouses in index order.
    pub fn warehouses(&self) -> impl Iterator<Item = NodeId> + '_ {
        (1..=self.n()).map(NodeId)
    }
}

/// Builds a full symmetric matrix from lower-triangular rows, where row `k`
/// holds the distances from node `k + 1` to nodes `0..=k`.
pub fn matrix_from_lower(rows: &[Vec<Distance>]) -> Vec<Vec<Distance>> {
    let size = rows.len() + 1;
    let mut dist = vec![vec![Distance::ZERO; size]; size];
    for (k, row) in rows.iter().enumerate() {
        let i = k + 1;
        for (j, &v) in row.iter().enumerate().take(i) {
            dist[i][j] = v;
            dist[j][i] = v;
        }
    }
    dist
}

/// The nine-warehouse front-warehouse instance with an 8.0 t truck.
pub fn paper_instance() -> Instance {
    let rows: Vec<Vec<Distance>> = published::DISTANCE_ROWS
        .iter()
        .map(|r| r.iter().map(|&t| Distance::from_tenths(t)).collect())
        .collect();
    let data = InstanceData {
        name: published::INSTANCE_NAME.to_string(),
        labels: published::LABELS.iter().map(|s| s.to_string()).collect(),
        dist: matrix_from_lower(&rows),
        demand: published::DEMANDS
            .iter()
            .map(|&t| Load::from_tenths(t))
            .collect(),
        capacity: Load::from_tenths(published::CAPACITY),
    };
    Instance::new(data).expect("embedded instance is valid")
}

/// Deterministic random instance: depot and warehouses at uniform planar
/// points in `[0, coord_range]^2`, Euclidean distances rounded to 0.1 km,
/// demands uniform over `demand_range` in 0.1 t steps.
pub fn random_instance(
    seed: u64,
    n: usize,
    coord_range: Distance,
    demand_range: RangeInclusive<Load>,
    capacity: Load,
) -> Result<Instance, ModelError> {
    let (lo, hi) = (*demand_range.start(), *demand_range.end());
    if n == 0 {
        return Err(ModelError::Parameter("n must be at least 1".into()));
    }
    if !coord_range.is_positive() {
        return Err(ModelError::Parameter(
            "coordinate range must be positive".into(),
        ));
    }
    if !lo.is_positive() || lo > hi {
        return Err(ModelError::Parameter(format!(
            "bad demand range {lo}..={hi}"
        )));
    }
    if capacity < hi {
        return Err(ModelError::Parameter(format!(
            "capacity {capacity} is below the largest possible demand {hi}"
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = coord_range.tenths();
    let points: Vec<(i64, i64)> = (0..=n)
        .map(|_| (rng.random_range(0..=span), rng.random_range(0..=span)))
        .collect();
    let demand: Vec<Load> = (0..n)
        .map(|_| Load::from_tenths(rng.random_range(lo.tenths()..=hi.tenths())))
        .collect();

    let dist = points
        .iter()
        .map(|&(ax, ay)| {
            points
                .iter()
                .map(|&(bx, by)| {
                    let (dx, dy) = ((ax - bx) as f64, (ay - by) as f64);
                    Distance::from_tenths(dx.hypot(dy).round() as i64)
                })
                .collect()
        })
        .collect();

    let mut labels = vec!["P".to_string()];
    labels.extend((1..=n).map(|k| format!("W{k}")));
    Instance::new(InstanceData {
        name: format!("random-s{seed}-n{n}"),
        labels,
        dist,
        demand,
        capacity,
    })
}
