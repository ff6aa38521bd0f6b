//! Independent reference implementations for cross-checking the crate.
//! They work on plain tenths and index vectors and share no code with the
//! solver or the dynamic-programming oracle.

#![allow(dead_code)]

use frontroute::{Instance, NodeId};

/// Distance matrix and demands as raw tenths, index 0 the depot.
pub struct Raw {
    pub d: Vec<Vec<i64>>,
    pub q: Vec<i64>,
    pub cap: i64,
}

impl Raw {
    pub fn of(inst: &Instance) -> Self {
        let m = inst.n() + 1;
        let d = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| inst.dist(NodeId::new(a), NodeId::new(b)).tenths())
                    .collect()
            })
            .collect();
        let q = (0..m)
            .map(|a| inst.demand(NodeId::new(a)).tenths())
            .collect();
        Raw {
            d,
            q,
            cap: inst.capacity().tenths(),
        }
    }

    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    fn loop_cost(&self, order: &[usize]) -> i64 {
        let mut prev = 0;
        let mut total = 0;
        for &v in order {
            total += self.d[prev][v];
            prev = v;
        }
        total + self.d[prev][0]
    }
}

/// Cheapest closed tour through `nodes` by trying every order.
pub fn brute_tsp(raw: &Raw, nodes: &[usize]) -> i64 {
    let mut order = nodes.to_vec();
    let mut best = raw.loop_cost(&order);
    // Heap's algorithm.
    let k = order.len();
    let mut c = vec![0usize; k];
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(raw.loop_cost(&order));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Optimal round-trip total over every set partition of the warehouses into
/// capacity-feasible blocks. Returns `(total, blocks)`.
pub fn brute_partition(raw: &Raw) -> (i64, Vec<Vec<usize>>) {
    let n = raw.n();
    let mut tsp_memo: std::collections::HashMap<Vec<usize>, i64> = Default::default();
    let mut best = (i64::MAX, Vec::new());
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    enumerate(raw, 1, n, &mut blocks, &mut tsp_memo, &mut best);
    best
}

fn enumerate(
    raw: &Raw,
    v: usize,
    n: usize,
    blocks: &mut Vec<Vec<usize>>,
    memo: &mut std::collections::HashMap<Vec<usize>, i64>,
    best: &mut (i64, Vec<Vec<usize>>),
) {
    if v > n {
        let mut total = 0;
        for b in blocks.iter() {
            if b.iter().map(|&x| raw.q[x]).sum::<i64>() > raw.cap {
                return;
            }
            total += *memo.entry(b.clone()).or_insert_with(|| brute_tsp(raw, b));
        }
        if total < best.0 {
            *best = (total, blocks.clone());
        }
        return;
    }
    for k in 0..blocks.len() {
        blocks[k].push(v);
        enumerate(raw, v + 1, n, blocks, memo, best);
        blocks[k].pop();
    }
    blocks.push(vec![v]);
    enumerate(raw, v + 1, n, blocks, memo, best);
    blocks.pop();
}

/// An accepted join: the pair and its saving in tenths.
pub type Merge = (usize, usize, i64);

/// Parallel savings heuristic on plain route lists: scan pairs by saving
/// (ties by index), join two distinct routes when the saving is positive,
/// both nodes sit at an end and the load fits. Returns the routes, as sets, and the accepted savings.
pub fn simulate_cw(raw: &Raw) -> (Vec<Vec<usize>>, Vec<Merge>) {
    let n = raw.n();
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            pairs.push((i, j, raw.d[0][i] + raw.d[0][j] - raw.d[i][j]));
        }
    }
    pairs.sort_by(|a, b| b.2.cmp(&a.2).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));

    let mut routes: Vec<Vec<usize>> = (1..=n).map(|v| vec![v]).collect();
    let mut accepted = Vec::new();
    for (i, j, s) in pairs {
        if s <= 0 {
            break;
        }
        let ri = routes.iter().position(|r| r.contains(&i)).unwrap();
        let rj = routes.iter().position(|r| r.contains(&j)).unwrap();
        if ri == rj {
            continue;
        }
        let at_end = |r: &Vec<usize>, v: usize| r[0] == v || r[r.len() - 1] == v;
        if !at_end(&routes[ri], i) || !at_end(&routes[rj], j) {
            continue;
        }
        let load: i64 = routes[ri]
            .iter()
            .chain(&routes[rj])
            .map(|&v| raw.q[v])
            .sum();
        if load > raw.cap {
            continue;
        }
        let mut a = routes[ri].clone();
        let mut b = routes[rj].clone();
        if a[a.len() - 1] != i {
            a.reverse();
        }
        if b[0] != j {
            b.reverse();
        }
        a.extend(b);
        let (lo, hi) = (ri.min(rj), ri.max(rj));
        routes.remove(hi);
        routes[lo] = a;
        accepted.push((i, j, s));
    }
    (routes, accepted)
}

/// Round-trip total of a list of routes.
pub fn routes_cost(raw: &Raw, routes: &[Vec<usize>]) -> i64 {
    routes.iter().map(|r| raw.loop_cost(r)).sum()
}

/// Routes as sorted node sets, themselves sorted, for order-free comparison.
pub fn as_sets(routes: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = routes
        .iter()
        .map(|r| {
            let mut s = r.clone();
            s.sort_unstable();
            s
        })
        .collect();
    sets.sort();
    sets
}
