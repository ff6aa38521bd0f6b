//! Figures from the published front-warehouse case study, embedded verbatim.
//!
//! Everything here is transcribed data, never computed. All quantities are
//! in tenths (km or t). Location strings match the source's table and
//! figure numbering so audit output can be cross-checked by hand.

/// Depot first, then the nine front warehouses.
pub const LABELS: [&str; 10] = ["P", "A", "B", "C", "D", "E", "F", "G", "H", "I"];

pub const INSTANCE_NAME: &str = "front-warehouse-9";

/// Table 4-1, lower triangle. Row `k` lists the distances from node `k` to
/// nodes `0..k`.
pub const DISTANCE_ROWS: [&[i64]; 9] = [
    &[300],
    &[310, 32],
    &[140, 90, 106],
    &[160, 62, 85, 30],
    &[96, 58, 100, 30, 30],
    &[240, 67, 38, 110, 70, 86],
    &[310, 130, 80, 170, 150, 130, 40],
    &[270, 140, 110, 153, 120, 140, 40, 30],
    &[320, 160, 110, 200, 180, 160, 60, 30, 50],
];

/// Table 4-2, warehouses A..I.
pub const DEMANDS: [i64; 9] = [13, 10, 15, 17, 16, 15, 13, 15, 14];

/// Table 4-2 caption: rated load of one truck.
pub const CAPACITY: i64 = 80;

/// Table 4-3, lower triangle over warehouses. Row `k` (warehouse `k + 2`,
/// i.e. B..I) lists the saving against warehouses `1..=k + 1`.
pub const SAVINGS_ROWS: [&[i64]; 8] = [
    &[578],
    &[350, 344],
    &[398, 385, 270],
    &[336, 306, 226, 326],
    &[473, 612, 270, 330, 250],
    &[480, 540, 280, 320, 276, 310],
    &[430, 470, 257, 310, 226, 470, 550],
    &[460, 520, 260, 300, 256, 500, 600, 540],
];

/// Table 4-4 in published rank order: (first label, second label, saving).
pub const SORTED_SAVINGS: [(&str, &str, i64); 36] = [
    ("B", "F", 612),
    ("G", "I", 600),
    ("A", "B", 578),
    ("G", "H", 550),
    ("H", "I", 540),
    ("B", "G", 540),
    ("B", "I", 520),
    ("F", "I", 500),
    ("A", "G", 480),
    ("A", "F", 473),
    ("B", "H", 470),
    ("F", "H", 470),
    ("A", "I", 460),
    ("A", "H", 430),
    ("A", "D", 398),
    ("B", "D", 385),
    ("A", "C", 350),
    ("B", "C", 344),
    ("A", "E", 336),
    ("D", "F", 330),
    ("D", "E", 326),
    ("D", "G", 320),
    ("D", "H", 310),
    ("F", "G", 310),
    ("B", "E", 306),
    ("D", "I", 300),
    ("C", "G", 280),
    ("E", "G", 276),
    ("C", "F", 270),
    ("C", "D", 270),
    ("C", "I", 260),
    ("C", "H", 257),
    ("E", "I", 256),
    ("E", "F", 250),
    ("C", "E", 226),
    ("E", "H", 226),
];

/// One published staged solution.
#[derive(Debug, Clone, Copy)]
pub struct PublishedStage {
    pub figure: &'static str,
    pub total: i64,
    pub vehicles: usize,
    /// Number of connect directives of the published merge sequence applied
    /// to reach this stage, when the stage is reachable by directives alone.
    pub directives: Option<usize>,
}

pub const STAGES: [PublishedStage; 4] = [
    PublishedStage {
        figure: "Fig. 4-2",
        total: 2146,
        vehicles: 9,
        directives: Some(0),
    },
    PublishedStage {
        figure: "Fig. 4-3",
        total: 1906,
        vehicles: 7,
        directives: Some(2),
    },
    PublishedStage {
        figure: "Fig. 4-4",
        total: 1465,
        vehicles: 5,
        directives: Some(4),
    },
    PublishedStage {
        figure: "Fig. 4-5",
        total: 1229,
        vehicles: 2,
        directives: None,
    },
];

/// The final stage merges every warehouse left outside the stage-three loop
/// into one route, without stating a visit order.
pub const FINAL_STAGE_LOOP: [&str; 5] = ["A", "B", "F", "G", "I"];

/// The published merge sequence as a replayable script.
pub const MERGE_SCRIPT: &str = include_str!("../data/paper_stages.ms");

/// The published instance in the on-disk instance format.
pub const INSTANCE_FILE: &str = include_str!("../data/paper.inst");
