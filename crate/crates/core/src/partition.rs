//! Curve-order partitioning of a structured grid.
//!
//! Three steps: map the domain into the open unit cube with one shared scale
//! factor, key every cell center along a curve, then cut the sorted key
//! sequence into `n_ranks` contiguous runs of near-equal workload.

use rayon::prelude::*;

use crate::curve::{CurveEncoder, Level, SfcKey, UnitPoint, MAX_LEVEL};
use crate::error::{Error, Result};
use crate::grid::GridSpec;

/// Default margin between the mapped domain and the unit cube faces, `2^-20`.
pub const DEFAULT_EPSILON: f64 = 1.0 / 1_048_576.0;

/// Method tag for partitions that were not produced by a curve.
pub const EXTERNAL_METHOD: &str = "external";

/// Affine map from the physical domain into `(eps, 1 - eps)^3`.
///
/// One scale factor is shared by all axes so the aspect ratio is preserved;
/// the longest axis spans exactly `(eps, 1 - eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainMap {
    scale: f64,
    offset: [f64; 3],
    epsilon: f64,
}

impl DomainMap {
    pub fn new(grid: &GridSpec, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::config(format!(
                "epsilon must lie in (0, 0.5), got {epsilon}"
            )));
        }
        let longest = grid.extents().lengths().into_iter().fold(0.0, f64::max);
        if !(longest.is_finite() && longest > 0.0) {
            return Err(Error::config("degenerate domain extents"));
        }
        Ok(DomainMap {
            scale: (1.0 - 2.0 * epsilon) / longest,
            offset: grid.extents().lower,
            epsilon,
        })
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn offset(&self) -> [f64; 3] {
        self.offset
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    #[inline]
    pub fn apply(&self, p: [f64; 3]) -> [f64; 3] {
        [
            self.epsilon + (p[0] - self.offset[0]) * self.scale,
            self.epsilon + (p[1] - self.offset[1]) * self.scale,
            self.epsilon + (p[2] - self.offset[2]) * self.scale,
        ]
    }

    /// Image of a point of the domain; fails for points outside it.
    pub fn to_unit(&self, p: [f64; 3]) -> Result<UnitPoint> {
        let [u, v, w] = self.apply(p);
        UnitPoint::new(u, v, w)
    }
}

pub fn build_domain_map(grid: &GridSpec, epsilon: f64) -> Result<DomainMap> {
    DomainMap::new(grid, epsilon)
}

fn axis_bins(grid: &GridSpec, map: &DomainMap, axis: usize, level: Level) -> Vec<u64> {
    let h = grid.spacing()[axis];
    let lo = grid.extents().lower[axis];
    (0..grid.dims()[axis]).map(move |i| {
        let x = lo + (i as f64 + 0.5) * h;
        let u = map.epsilon + (x - map.offset[axis]) * map.scale;
        crate::curve::quantize(u, level)
    })
    .collect()
}

/// Smallest curve level at which every cell center lands in its own lattice
/// cell, so that all cell keys are distinct.
///
/// Lattice coordinates are computed per axis, so the check is exact and
/// linear in `nx + ny + nz` per candidate level.
pub fn min_level(grid: &GridSpec, map: &DomainMap) -> Result<Level> {
    let max_dim = grid.dims().into_iter().max().unwrap_or(1);
    let lower = (usize::BITS - (max_dim - 1).leading_zeros()).max(1) as u8;
    for l in lower..=MAX_LEVEL {
        let level = Level::new(l)?;
        let distinct = (0..3).all(|axis| {
            axis_bins(grid, map, axis, level)
                .windows(2).all(|w| w[0] < w[1])
        });
        if distinct {
            return Ok(level);
        }
    }
    Err(Error::config(format!(
        "no curve level up to {MAX_LEVEL} separates the cell centers of this grid"
    )))
}

/// Curve keys of all cells in linear-index order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellKeys {
    level: Level,
    values: Vec<u128>,
}

impl CellKeys {
    pub fn new(level: Level, values: Vec<u128>) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v >> level.key_bits() != 0) {
            return Err(Error::config(format!(
                "key {v} does not fit level {level}"
            )));
        }
        Ok(CellKeys { level, values })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn key(&self, idx: usize) -> SfcKey {
        SfcKey::from_raw(self.values[idx], self.level)
    }

    pub fn values(&self) -> &[u128] {
        &self.values
    }
}

/// Key every cell center of `grid` along `curve`.
pub fn key_cells(
    grid: &GridSpec,
    map: &DomainMap,
    curve: &dyn CurveEncoder,
    level: Level,
) -> Result<CellKeys> {
    let required = min_level(grid, map)?;
    if level < required {
        return Err(Error::config(format!(
            "curve level {level} is too small for a {}x{}x{} grid, minimum level is {required}",
            grid.dims()[0],
            grid.dims()[1],
            grid.dims()[2]
        )));
    }
    let bins: Vec<Vec<u64>> = (0..3)
        .map(|axis| axis_bins(grid, map, axis, level))
        .collect();
    let [nx, ny, _] = grid.dims();
    let values = (0..grid.num_cells())
        .into_par_iter()
        .map(|idx| {
            let cell = [bins[0][idx % nx], bins[1][(idx / nx) % ny], bins[2][idx / (nx * ny)]];
            curve.encode_lattice(cell, level)
        })
        .collect();
    Ok(CellKeys { level, values })
}

#[derive(Debug, Clone)]
enum SortedCells {
    /// `key << 32 | index`, used whenever both fit in 128 bits.
    Packed(Vec<u128>),
    Pairs(Vec<(u128, u32)>),
}

/// Cells sorted by `(key, linear index)`.
///
/// Independent of the number of ranks, so one order can be split many times.
#[derive(Debug, Clone)]
pub struct CurveOrder {
    level: Level,
    cells: SortedCells,
}

impl CurveOrder {
    pub fn new(keys: &CellKeys) -> Result<Self> {
        let n = keys.len();
        if n > u32::MAX as usize {
            return Err(Error::config(format!(
                "{n} cells exceed the supported maximum of {}",
                u32::MAX
            )));
        }
        let cells = if keys.level.key_bits() + 32 <= 128 {
            let mut packed: Vec<u128> = keys
                .values
                .par_iter()
                .enumerate()
                .map(|(i, &k)| (k << 32) | i as u128)
                .collect();
            packed.par_sort_unstable();
            SortedCells::Packed(packed)
        } else {
            let mut pairs: Vec<(u128, u32)> = keys
                .values
                .iter()
                .enumerate()
                .map(|(i, &k)| (k, i as u32))
                .collect();
            pairs.par_sort_unstable();
            SortedCells::Pairs(pairs)
        };
        Ok(CurveOrder {
            level: keys.level,
            cells,
        })
    }

    pub fn len(&self) -> usize {
        match &self.cells {
            SortedCells::Packed(v) => v.len(),
            SortedCells::Pairs(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Linear index of the cell at sorted position `pos`.
    #[inline]
    pub fn cell(&self, pos: usize) -> usize {
        match &self.cells {
            SortedCells::Packed(v) => (v[pos] as u32) as usize,
            SortedCells::Pairs(v) => v[pos].1 as usize,
        }
    }

    #[inline]
    pub fn key(&self, pos: usize) -> SfcKey {
        let raw = match &self.cells {
            SortedCells::Packed(v) => v[pos] >> 32,
            SortedCells::Pairs(v) => v[pos].0,
        };
        SfcKey::from_raw(raw, self.level)
    }

    fn check_distinct(&self) -> Result<()> {
        for pos in 1..self.len() {
            if self.key(pos - 1) == self.key(pos) {
                return Err(Error::Internal(format!(
                    "cells {} and {} share curve key {}",
                    self.cell(pos - 1),
                    self.cell(pos),
                    self.key(pos)
                )));
            }
        }
        Ok(())
    }

    /// Greedy nearest-target cuts over exact integer weights.
    fn cut_points(&self, n_ranks: usize, weight_at: impl Fn(usize) -> u128) -> Vec<usize> {
        let n = self.len();
        let np = n_ranks as u128;
        let total: u128 = (0..n).map(&weight_at).sum();
        let mut cuts = Vec::with_capacity(n_ranks - 1);
        let (mut m, mut prefix, mut prev) = (0usize, 0u128, 0usize);
        for j in 1..n_ranks {
            // target is j·total/np; compare everything scaled by np
            let target = j as u128 * total;
            while m < n && (prefix + weight_at(m)) * np <= target {
                prefix += weight_at(m);
                m += 1;
            }
            let nearest = if m < n && (2 * prefix + weight_at(m)) * np < 2 * target {
                m + 1
            } else {
                m
            };
            let cut = nearest.clamp(prev + 1, n - (n_ranks - j));
            cuts.push(cut);
            prev = cut;
        }
        cuts
    }

    /// Same walk in floating point, for weights too spread out to scale
    /// onto a common integer grid.
    fn cut_points_float(&self, n_ranks: usize, weight_at: impl Fn(usize) -> f64) -> Vec<usize> {
        let n = self.len();
        let total: f64 = (0..n).map(&weight_at).sum();
        let mut cuts = Vec::with_capacity(n_ranks - 1);
        let (mut m, mut prefix, mut prev) = (0usize, 0.0f64, 0usize);
        for j in 1..n_ranks {
            let target = j as f64 * total / n_ranks as f64;
            while m < n && prefix + weight_at(m) <= target {
                prefix += weight_at(m);
                m += 1;
            }
            let nearest = if m < n && (prefix + weight_at(m)) - target < target - prefix {
                m + 1
            } else {
                m
            };
            let cut = nearest.clamp(prev + 1, n - (n_ranks - j));
            cuts.push(cut);
            prev = cut;
        }
        cuts
    }

    /// Cut the order into `n_ranks` contiguous runs.
    ///
    /// Cut `j` targets cumulative weight `j * W / n_ranks` and lands on the
    /// sorted position whose prefix sum is nearest; ties go to the earlier
    /// position. Cuts are kept strictly increasing so no rank is empty.
    pub fn split(
        &self,
        weights: Option<&[f64]>,
        n_ranks: usize,
        method: &str,
    ) -> Result<Partition> {
        let n = self.len();
        if n_ranks == 0 {
            return Err(Error::config("number of ranks must be at least 1"));
        }
        if n_ranks > n {
            return Err(Error::config(format!(
                "number of ranks {n_ranks} exceeds number of cells {n}"
            )));
        }
        if n_ranks > u32::MAX as usize {
            return Err(Error::config(format!("number of ranks {n_ranks} is too large")));
        }
        if let Some(w) = weights {
            if w.len() != n {
                return Err(Error::config(format!(
                    "weight count {} does not match cell count {n}",
                    w.len()
                )));
            }
            if let Some(pos) = w.iter().position(|x| !(x.is_finite() && *x > 0.0)) {
                return Err(Error::config(format!(
                    "weight {} at index {pos} is not a positive finite number",
                    w[pos]
                )));
            }
        }
        self.check_distinct()?;

        let cuts = match weights.map(|w| exact_weights(w, n_ranks)) {
            None => self.cut_points(n_ranks, |_| 1u128),
            Some(Some(ints)) => self.cut_points(n_ranks, |pos| ints[self.cell(pos)]),
            Some(None) => {
                let w = weights.unwrap();
                self.cut_points_float(n_ranks, |pos| w[self.cell(pos)])
            }
        };

        let mut assignment = vec![0u32; n];
        let mut rank = 0u32;
        let mut next_cut = cuts.iter().copied().peekable();
        for pos in 0..n {
            while next_cut.peek() == Some(&pos) {
                next_cut.next();
                rank += 1;
            }
            assignment[self.cell(pos)] = rank;
        }
        let cut_keys = cuts.iter().map(|&c| self.key(c)).collect();

        Ok(Partition {
            n_ranks,
            assignment,
            cut_keys,
            method: method.to_string(),
        })
    }
}

/// Sort `keys` and cut them into `n_ranks` runs of near-equal weight.
pub fn partition_1d(
    keys: &CellKeys,
    weights: Option<&[f64]>,
    n_ranks: usize,
    method: &str,
) -> Result<Partition> {
    CurveOrder::new(keys)?.split(weights, n_ranks, method)
}

/// Full pipeline: domain map, cell keys, 1D split.
pub fn partition_grid(
    grid: &GridSpec,
    curve: &dyn CurveEncoder,
    n_ranks: usize,
    level: Level,
    epsilon: f64,
) -> Result<Partition> {
    let map = DomainMap::new(grid, epsilon)?;
    let keys = key_cells(grid, &map, curve, level)?;
    partition_1d(&keys, grid.weights(), n_ranks, curve.name())
}

/// Assignment of every cell to a rank.
///
/// Every rank owns at least one cell; ranks are disjoint and cover the grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n_ranks: usize,
    assignment: Vec<u32>,
    cut_keys: Vec<SfcKey>,
    method: String,
}

impl Partition {
    /// Build a partition from an explicit assignment, e.g. one produced by
    /// another tool. Fails if a rank id is out of range or a rank is empty.
    pub fn from_assignment(
        n_ranks: usize,
        assignment: Vec<u32>,
        method: impl Into<String>,
    ) -> Result<Self> {
        if n_ranks == 0 {
            return Err(Error::config("number of ranks must be at least 1"));
        }
        let mut seen = vec![false; n_ranks];
        for (idx, &r) in assignment.iter().enumerate() {
            let slot = seen.get_mut(r as usize).ok_or_else(|| {
                Error::config(format!(
                    "cell {idx} assigned to rank {r}, but there are only {n_ranks} ranks"
                ))
            })?;
            *slot = true;
        }
        if let Some(empty) = seen.iter().position(|&s| !s) {
            return Err(Error::config(format!("rank {empty} owns no cells")));
        }
        let method = method.into();
        if method.is_empty() || method.chars().any(char::is_whitespace) {
            return Err(Error::config(format!("invalid method name '{method}'")));
        }
        Ok(Partition {
            n_ranks,
            assignment,
            cut_keys: Vec::new(),
            method,
        })
    }

    pub fn n_ranks(&self) -> usize {
        self.n_ranks
    }

    pub fn num_cells(&self) -> usize {
        self.assignment.len()
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    #[inline]
    pub fn rank(&self, idx: usize) -> u32 {
        self.assignment[idx]
    }

    /// First key of ranks `1..n_ranks`; empty for partitions read from a file.
    pub fn cut_keys(&self) -> &[SfcKey] {
        &self.cut_keys
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn rank_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.n_ranks];
        for &r in &self.assignment {
            sizes[r as usize] += 1;
        }
        sizes
    }

    pub fn rank_weights(&self, weights: Option<&[f64]>) -> Vec<f64> {
        let mut out = vec![0.0; self.n_ranks];
        for (idx, &r) in self.assignment.iter().enumerate() {
            out[r as usize] += weights.map_or(1.0, |w| w[idx]);
        }
        out
    }

    /// Same assignment without the curve boundaries, as read back from a file.
    pub fn without_cut_keys(mut self) -> Self {
        self.cut_keys.clear();
        self
    }
}

/// Positive finite weights as integers on a common power-of-two grid, so
/// that prefix sums and target comparisons are exact. `None` when the
/// largest comparison would not fit in 128 bits.
fn exact_weights(weights: &[f64], n_ranks: usize) -> Option<Vec<u128>> {
    let parts: Vec<(u64, i32)> = weights
        .iter()
        .map(|&x| {
            let bits = x.to_bits();
            let exp = ((bits >> 52) & 0x7ff) as i32;
            let frac = bits & ((1u64 << 52) - 1);
            let (m, e) = if exp == 0 { (frac, -1074) } else { (frac | 1 << 52, exp - 1075) };
            let tz = m.trailing_zeros();
            (m >> tz, e + tz as i32)
        })
        .collect();
    let e_min = parts.iter().map(|&(_, e)| e).min()?;
    let top = parts
        .iter()
        .map(|&(m, e)| (64 - m.leading_zeros()) as i64 + i64::from(e - e_min))
        .max()?;
    let bits_of = |v: usize| (usize::BITS - v.leading_zeros()) as i64;
    // 2·np·total must fit: top + log n + log np + 1
    if top + bits_of(weights.len()) + bits_of(n_ranks) + 1 > 127 {
        return None;
    }
    Some(parts.iter().map(|&(m, e)| u128::from(m) << (e - e_min)).collect())
}
