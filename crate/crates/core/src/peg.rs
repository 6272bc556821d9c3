//! Progressive Edge Growth construction of almost-regular parity-check
//! matrices, plus exact girth measurement.
//!
//! Columns are processed left to right; every edge of a column is attached
//! to a check node at maximal BFS distance from the column's current subtree
//! (unreached nodes count as infinitely far), with ties broken by lowest
//! current row weight and then lowest row index. Row weights are capped at
//! `dv + 1`, and the number of rows allowed to reach `dv + 1` is capped at
//! `k * dv`, so non-triangular outputs realize the ensemble row-weight
//! profile exactly.
//!
//! With `lower_triangular` set, the diagonal edges `(row j, column k + j)`
//! are seeded first and column `k + j` may only use rows `>= j`. The trailing
//! parity columns then necessarily have weight `< dv` (the last one has
//! weight 1). Constrained placements relax the quota, and as a last resort
//! the weight cap, instead of failing; the triangular form promises a
//! concentrated row-weight distribution, not the exact profile.

use crate::ensemble::row_weight_profile;
use crate::error::{Error, Result};
use crate::sparse::{LdpcCode, SparseParityCheck};
use std::collections::BTreeMap;

/// Construction parameters.
///
/// `seed` is recorded alongside the output for provenance; the tie-breaking
/// rules above make the construction fully deterministic, so equal dimensions
/// give the same matrix for any seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PegConfig {
    pub n: usize,
    pub r: usize,
    pub dv: usize,
    pub lower_triangular: bool,
    pub seed: u64,
}

/// Shortest-cycle statistics of a Tanner graph.
///
/// `girth` is `None` for cycle-free graphs. `histogram` maps the local
/// shortest-cycle length of each variable node to the number of variable
/// nodes attaining it; acyclic variables are not counted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthReport {
    pub girth: Option<usize>,
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Relax {
    None,
    Quota,
    Cap,
}

struct PegState {
    r: usize,
    rows: Vec<Vec<u32>>,
    cols: Vec<Vec<u32>>,
    weight_cap: usize,
    /// rows still allowed to step from weight `dv` to `dv + 1`
    heavy_quota: usize,
    dv: usize,
    // BFS scratch, validated by generation stamps so no per-call refill
    var_dist: Vec<u32>,
    chk_dist: Vec<u32>,
    var_gen: Vec<u32>,
    chk_gen: Vec<u32>,
    generation: u32,
    frontier: Vec<u32>,
    next_frontier: Vec<u32>,
}

impl PegState {
    fn new(n: usize, r: usize, dv: usize, heavy_quota: usize) -> Self {
        PegState {
            r,
            rows: vec![Vec::new(); r],
            cols: vec![Vec::new(); n],
            weight_cap: dv + 1,
            heavy_quota,
            dv,
            var_dist: vec![0; n],
            chk_dist: vec![0; r],
            var_gen: vec![0; n],
            chk_gen: vec![0; r],
            generation: 0,
            frontier: Vec::with_capacity(n),
            next_frontier: Vec::with_capacity(n),
        }
    }

    fn place(&mut self, row: usize, col: usize) {
        if self.rows[row].len() == self.dv {
            self.heavy_quota = self.heavy_quota.saturating_sub(1);
        }
        self.rows[row].push(col as u32);
        self.cols[col].push(row as u32);
    }

    fn row_available(&self, row: usize, relax: Relax) -> bool {
        let w = self.rows[row].len();
        match relax {
            Relax::None => w < self.weight_cap && (w < self.dv || self.heavy_quota > 0),
            Relax::Quota => w < self.weight_cap,
            Relax::Cap => true,
        }
    }

    /// BFS from `col` over the current graph, filling check distances for
    /// the current generation. A check at odd distance `d` from the column
    /// closes a cycle of length `d + 1` when connected to it.
    fn bfs_from(&mut self, col: usize) {
        self.generation += 1;
        let gen = self.generation;
        self.var_gen[col] = gen;
        self.var_dist[col] = 0;
        self.frontier.clear();
        self.frontier.push(col as u32);
        let mut depth = 0u32;
        while !self.frontier.is_empty() {
            // variables -> checks
            self.next_frontier.clear();
            for f in 0..self.frontier.len() {
                let v = self.frontier[f] as usize;
                for idx in 0..self.cols[v].len() {
                    let j = self.cols[v][idx] as usize;
                    if self.chk_gen[j] != gen {
                        self.chk_gen[j] = gen;
                        self.chk_dist[j] = depth + 1;
                        self.next_frontier.push(j as u32);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next_frontier);
            if self.frontier.is_empty() {
                return;
            }
            // checks -> variables
            self.next_frontier.clear();
            for f in 0..self.frontier.len() {
                let j = self.frontier[f] as usize;
                for idx in 0..self.rows[j].len() {
                    let v = self.rows[j][idx] as usize;
                    if self.var_gen[v] != gen {
                        self.var_gen[v] = gen;
                        self.var_dist[v] = depth + 2;
                        self.next_frontier.push(v as u32);
                    }
                }
            }
            std::mem::swap(&mut self.frontier, &mut self.next_frontier);
            depth += 2;
        }
    }

    /// Picks the best row for the next edge of `col` among rows `>= min_row`:
    /// maximal BFS distance (unreached rows first), then lowest weight, then
    /// lowest index.
    fn select_row(&mut self, col: usize, min_row: usize, relax: Relax) -> Option<usize> {
        self.bfs_from(col);
        let gen = self.generation;
        // (negated distance class, weight, row); smaller is better
        let mut best: Option<(u64, usize, usize)> = None;
        for row in min_row..self.r {
            if !self.row_available(row, relax) {
                continue;
            }
            let dist = if self.chk_gen[row] == gen {
                // adjacent rows sit at distance 1; a second edge there would
                // be a duplicate
                if self.chk_dist[row] == 1 && self.cols[col].contains(&(row as u32)) {
                    continue;
                }
                self.chk_dist[row] as u64
            } else {
                u64::MAX // unreached
            };
            let key = (u64::MAX - dist, self.rows[row].len(), row);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
        best.map(|(_, _, row)| row)
    }
}

/// Builds an LDPC code with the PEG algorithm.
pub fn peg_construct(cfg: &PegConfig) -> Result<LdpcCode> {
    let PegConfig {
        n,
        r,
        dv,
        lower_triangular,
        ..
    } = *cfg;
    if !(n > r && r >= dv && dv >= 2) {
        return Err(Error::InvalidParameter(format!(
            "need n > r >= dv >= 2, got n={n}, r={r}, dv={dv}"
        )));
    }
    let k = n - r;
    // also validates k*(dv+1) <= n
    let (_, heavy_rows) = row_weight_profile(n, k, dv)?;

    let mut st = PegState::new(n, r, dv, heavy_rows);

    if lower_triangular {
        for j in 0..r {
            st.place(j, k + j);
        }
    }

    // Info columns run left to right. Constrained parity columns run right
    // to left: column k + j may only use rows >= j, so under left-to-right
    // order a row i stops being eligible once column k + i has passed and
    // whole stretches of rows finish underweight while the trailing rows
    // turn into hubs. Reversed order grows the eligible row set
    // monotonically and keeps the row weights concentrated.
    let columns: Vec<usize> = if lower_triangular {
        (0..k).chain((k..n).rev()).collect()
    } else {
        (0..n).collect()
    };
    for col in columns {
        let (min_row, want) = if lower_triangular && col >= k {
            // the diagonal edge is already in place; only rows strictly
            // below it remain usable
            let j = col - k;
            (j + 1, (dv - 1).min(r - j - 1))
        } else {
            (0, dv)
        };
        for _ in 0..want {
            let mut row = st.select_row(col, min_row, Relax::None);
            if row.is_none() && lower_triangular {
                row = st.select_row(col, min_row, Relax::Quota);
                if row.is_none() {
                    row = st.select_row(col, min_row, Relax::Cap);
                }
            }
            match row {
                Some(row) => st.place(row, col),
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "PEG dead end at column {col}"
                    )))
                }
            }
        }
    }

    let h = SparseParityCheck::from_rows(n, st.rows)?;
    if lower_triangular {
        LdpcCode::new_triangular(h)
    } else {
        Ok(LdpcCode::new(h))
    }
}

/// Exact local-girth computation by BFS from every variable node.
pub fn girth_histogram(h: &SparseParityCheck) -> GirthReport {
    let n = h.n();
    let r = h.r();
    let mut var_dist = vec![u32::MAX; n];
    let mut chk_dist = vec![u32::MAX; r];
    // branch = index of the root edge a node was first reached through
    let mut var_branch = vec![u32::MAX; n];
    let mut chk_branch = vec![u32::MAX; r];
    let mut histogram: BTreeMap<usize, usize> = BTreeMap::new();

    for root in 0..n {
        if h.col(root).len() < 2 {
            continue; // no cycle passes through a degree-<2 variable
        }
        var_dist.fill(u32::MAX);
        chk_dist.fill(u32::MAX);
        var_branch.fill(u32::MAX);
        chk_branch.fill(u32::MAX);
        var_dist[root] = 0;

        let mut best: Option<usize> = None;
        let mut chk_frontier: Vec<u32> = Vec::new();
        for (b, &j) in h.col(root).iter().enumerate() {
            chk_dist[j as usize] = 1;
            chk_branch[j as usize] = b as u32;
            chk_frontier.push(j);
        }

        let mut var_frontier: Vec<u32> = Vec::new();
        loop {
            // checks -> variables
            var_frontier.clear();
            for &j in &chk_frontier {
                let (d, br) = (chk_dist[j as usize], chk_branch[j as usize]);
                for &v in h.row(j as usize) {
                    let v = v as usize;
                    if v == root {
                        continue;
                    }
                    if var_dist[v] == u32::MAX {
                        var_dist[v] = d + 1;
                        var_branch[v] = br;
                        var_frontier.push(v as u32);
                    } else if var_branch[v] != br {
                        let cycle = (d + 1 + var_dist[v]) as usize;
                        best = Some(best.map_or(cycle, |b| b.min(cycle)));
                    }
                }
            }
            if best.is_some() || var_frontier.is_empty() {
                break;
            }
            // variables -> checks
            chk_frontier.clear();
            for &v in &var_frontier {
                let (d, br) = (var_dist[v as usize], var_branch[v as usize]);
                for &j in h.col(v as usize) {
                    let j = j as usize;
                    if chk_dist[j] == u32::MAX {
                        chk_dist[j] = d + 1;
                        chk_branch[j] = br;
                        chk_frontier.push(j as u32);
                    } else if chk_branch[j] != br {
                        let cycle = (d + 1 + chk_dist[j]) as usize;
                        best = Some(best.map_or(cycle, |b| b.min(cycle)));
                    }
                }
            }
            if best.is_some() || chk_frontier.is_empty() {
                break;
            }
        }

        if let Some(g) = best {
            debug_assert!(g % 2 == 0 && g >= 4);
            *histogram.entry(g).or_insert(0) += 1;
        }
    }

    let girth = histogram.keys().next().copied();
    GirthReport { girth, histogram }
}
