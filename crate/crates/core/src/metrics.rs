//! Partition quality: surface indices, inter-rank connectivity, edge cut and
//! load imbalance.
//!
//! Only faces between two cells count. For rank `i`, `f_i` is the number of
//! faces touching a rank-`i` cell (a face inside the rank counted once) and
//! `b_i` the number of those faces whose other cell lives on another rank.

use crate::error::{Error, Result};
use crate::grid::{DualGraph, GridSpec};
use crate::partition::Partition;

/// Per-rank detail row of a [`QualityReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankStats {
    pub cells: usize,
    pub weight: f64,
    /// `f_i`
    pub faces: u64,
    /// `b_i`
    pub boundary_faces: u64,
    /// `c_i`
    pub connectivity: usize,
}

impl RankStats {
    /// `b_i / f_i`, 0 for a rank without faces.
    pub fn surface_index(&self) -> f64 {
        if self.faces == 0 {
            0.0
        } else {
            self.boundary_faces as f64 / self.faces as f64
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    pub per_rank: Vec<RankStats>,
    /// Maximum surface index `max_i b_i / f_i`.
    pub r_max: f64,
    /// Mean surface index over ranks.
    pub r_avg: f64,
    /// Maximum inter-rank connectivity.
    pub c_max: usize,
    pub edge_cut: f64,
    /// Largest rank weight over mean rank weight.
    pub imbalance: f64,
}

impl QualityReport {
    pub fn n_ranks(&self) -> usize {
        self.per_rank.len()
    }
}

fn check_sizes(partition: &Partition, grid: &GridSpec) -> Result<()> {
    if partition.num_cells() != grid.num_cells() {
        return Err(Error::config(format!(
            "partition covers {} cells but the grid has {}",
            partition.num_cells(),
            grid.num_cells()
        )));
    }
    Ok(())
}

/// Visit every face between two cells once, as `(lower index, upper index)`.
#[inline]
fn for_each_face(grid: &GridSpec, mut f: impl FnMut(usize, usize)) {
    let [nx, ny, nz] = grid.dims();
    let plane = nx * ny;
    for k in 0..nz {
        for j in 0..ny {
            let row = nx * j + plane * k;
            for i in 0..nx {
                let u = row + i;
                if i + 1 < nx {
                    f(u, u + 1);
                }
                if j + 1 < ny {
                    f(u, u + nx);
                }
                if k + 1 < nz {
                    f(u, u + plane);
                }
            }
        }
    }
}

/// Sorted set of neighbouring ranks, small in practice.
#[derive(Debug, Default, Clone)]
struct RankSet(Vec<u32>);

impl RankSet {
    #[inline]
    fn insert(&mut self, r: u32) {
        if let Err(pos) = self.0.binary_search(&r) {
            self.0.insert(pos, r);
        }
    }
}

struct Tally {
    faces: Vec<u64>,
    boundary: Vec<u64>,
    linked: Vec<RankSet>,
    edge_cut: f64,
}

fn tally(partition: &Partition, graph: &DualGraph<'_>) -> Result<Tally> {
    let grid = graph.grid();
    check_sizes(partition, grid)?;
    let n = partition.n_ranks();
    let mut t = Tally {
        faces: vec![0; n],
        boundary: vec![0; n],
        linked: vec![RankSet::default(); n],
        edge_cut: 0.0,
    };
    let assignment = partition.assignment();
    for_each_face(grid, |u, v| {
        let (ru, rv) = (assignment[u], assignment[v]);
        if ru == rv {
            t.faces[ru as usize] += 1;
        } else {
            t.faces[ru as usize] += 1;
            t.faces[rv as usize] += 1;
            t.boundary[ru as usize] += 1;
            t.boundary[rv as usize] += 1;
            t.linked[ru as usize].insert(rv);
            t.linked[rv as usize].insert(ru);
            t.edge_cut += graph.edge_weight(u, v);
        }
    });
    Ok(t)
}

/// Per-rank `(f_i, b_i)`.
pub fn surface_counts(partition: &Partition, graph: &DualGraph<'_>) -> Result<Vec<(u64, u64)>> {
    let t = tally(partition, graph)?;
    Ok(t.faces.into_iter().zip(t.boundary).collect())
}

/// `(r_max, r_avg)` from per-rank `(f_i, b_i)`.
pub fn surface_indices(counts: &[(u64, u64)]) -> Result<(f64, f64)> {
    if counts.is_empty() {
        return Err(Error::config("no ranks to evaluate"));
    }
    let mut r_max = 0.0f64;
    let mut sum = 0.0;
    for (rank, &(f, b)) in counts.iter().enumerate() {
        if b > f {
            return Err(Error::Internal(format!(
                "rank {rank} has {b} boundary faces but only {f} faces"
            )));
        }
        // a lone rank on a single-cell grid has no faces at all
        if f == 0 && counts.len() > 1 {
            return Err(Error::Internal(format!("rank {rank} has no faces")));
        }
        let r = if f == 0 { 0.0 } else { b as f64 / f as f64 };
        r_max = r_max.max(r);
        sum += r;
    }
    Ok((r_max, sum / counts.len() as f64))
}

/// Per-rank `c_i` and `c_max`.
pub fn connectivity(partition: &Partition, graph: &DualGraph<'_>) -> Result<(Vec<usize>, usize)> {
    let t = tally(partition, graph)?;
    let per_rank: Vec<usize> = t.linked.iter().map(|s| s.0.len()).collect();
    let max = per_rank.iter().copied().max().unwrap_or(0);
    Ok((per_rank, max))
}

/// Total weight of faces whose cells lie on different ranks.
pub fn edge_cut(partition: &Partition, graph: &DualGraph<'_>) -> Result<f64> {
    Ok(tally(partition, graph)?.edge_cut)
}

/// Largest rank workload divided by the mean rank workload.
pub fn imbalance(partition: &Partition, grid: &GridSpec) -> Result<f64> {
    check_sizes(partition, grid)?;
    let weights = partition.rank_weights(grid.weights());
    Ok(imbalance_of(&weights))
}

fn imbalance_of(rank_weights: &[f64]) -> f64 {
    let total: f64 = rank_weights.iter().sum();
    let max = rank_weights.iter().copied().fold(0.0, f64::max);
    max / (total / rank_weights.len() as f64)
}

/// All metrics in one pass over the faces.
pub fn evaluate(partition: &Partition, graph: &DualGraph<'_>) -> Result<QualityReport> {
    let grid = graph.grid();
    let t = tally(partition, graph)?;
    let sizes = partition.rank_sizes();
    let weights = partition.rank_weights(grid.weights());
    let counts: Vec<(u64, u64)> = t.faces.iter().copied().zip(t.boundary.iter().copied()).collect();
    let (r_max, r_avg) = surface_indices(&counts)?;
    let per_rank: Vec<RankStats> = (0..partition.n_ranks())
        .map(|r| RankStats {
            cells: sizes[r],
            weight: weights[r],
            faces: t.faces[r],
            boundary_faces: t.boundary[r],
            connectivity: t.linked[r].0.len(),
        })
        .collect();
    let c_max = per_rank.iter().map(|s| s.connectivity).max().unwrap_or(0);
    Ok(QualityReport {
        per_rank,
        r_max,
        r_avg,
        c_max,
        edge_cut: t.edge_cut,
        imbalance: imbalance_of(&weights),
    })
}
