//! Structured grid geometry, cell indexing and the implicit dual graph.
//!
//! Cells are addressed either by lattice coordinates `(i, j, k)` or by a
//! linear index `i + nx * (j + ny * k)` (x fastest). Two cells communicate
//! when they share a face, so the dual graph is the 6-point stencil.

use crate::error::{Error, Result};

/// Physical bounding box of the grid, `[x1, x2] x [y1, y2] x [z1, z2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extents {
    pub lower: [f64; 3],
    pub upper: [f64; 3],
}

impl Extents {
    pub fn new(x: (f64, f64), y: (f64, f64), z: (f64, f64)) -> Self {
        Extents {
            lower: [x.0, y.0, z.0],
            upper: [x.1, y.1, z.1],
        }
    }

    pub fn unit() -> Self {
        Extents::new((0.0, 1.0), (0.0, 1.0), (0.0, 1.0))
    }

    pub fn lengths(&self) -> [f64; 3] {
        [
            self.upper[0] - self.lower[0],
            self.upper[1] - self.lower[1],
            self.upper[2] - self.lower[2],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellCoord {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl CellCoord {
    pub const fn new(i: usize, j: usize, k: usize) -> Self {
        CellCoord { i, j, k }
    }
}

impl From<(usize, usize, usize)> for CellCoord {
    fn from((i, j, k): (usize, usize, usize)) -> Self {
        CellCoord { i, j, k }
    }
}

/// A structured `nx x ny x nz` grid over a box, with optional per-cell workloads.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    dims: [usize; 3],
    extents: Extents,
    weights: Option<Vec<f64>>,
}

impl GridSpec {
    pub fn new(dims: [usize; 3], extents: Extents) -> Result<Self> {
        if dims.contains(&0) {
            return Err(Error::config(format!(
                "grid dimensions must be positive, got {}x{}x{}",
                dims[0], dims[1], dims[2]
            )));
        }
        if dims
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .is_none()
        {
            return Err(Error::config("grid cell count overflows"));
        }
        for (axis, (lo, hi)) in extents.lower.iter().zip(&extents.upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::config(format!(
                    "extent along axis {} must satisfy lower < upper, got [{lo}, {hi}]",
                    ["x", "y", "z"][axis]
                )));
            }
        }
        Ok(GridSpec {
            dims,
            extents,
            weights: None,
        })
    }

    /// Unit cube `[0,1]^3` with the given dimensions.
    pub fn unit(dims: [usize; 3]) -> Result<Self> {
        GridSpec::new(dims, Extents::unit())
    }

    /// Attach per-cell workloads in linear-index order.
    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.num_cells() {
            return Err(Error::config(format!(
                "weight count {} does not match cell count {}",
                weights.len(),
                self.num_cells()
            )));
        }
        if let Some(pos) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::config(format!(
                "cell weight {} at index {pos} is not a positive finite number",
                weights[pos]
            )));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn without_weights(mut self) -> Self {
        self.weights = None;
        self
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    pub fn extents(&self) -> &Extents {
        &self.extents
    }

    pub fn num_cells(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Workload of a cell; 1.0 when no weights are attached.
    #[inline]
    pub fn weight(&self, idx: usize) -> f64 {
        self.weights.as_ref().map_or(1.0, |w| w[idx])
    }

    /// Cell widths `(hx, hy, hz)`.
    pub fn spacing(&self) -> [f64; 3] {
        let len = self.extents.lengths();
        [
            len[0] / self.dims[0] as f64,
            len[1] / self.dims[1] as f64,
            len[2] / self.dims[2] as f64,
        ]
    }

    pub fn contains(&self, c: CellCoord) -> bool {
        c.i < self.dims[0] && c.j < self.dims[1] && c.k < self.dims[2]
    }

    fn check(&self, c: CellCoord) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::Index {
                i: c.i,
                j: c.j,
                k: c.k,
                nx: self.dims[0],
                ny: self.dims[1],
                nz: self.dims[2],
            })
        }
    }

    pub fn linear_index(&self, c: CellCoord) -> Result<usize> {
        self.check(c)?;
        Ok(c.i + self.dims[0] * (c.j + self.dims[1] * c.k))
    }

    pub fn coord(&self, idx: usize) -> Result<CellCoord> {
        if idx >= self.num_cells() {
            return Err(Error::config(format!(
                "linear index {idx} out of range for {} cells",
                self.num_cells()
            )));
        }
        Ok(self.coord_unchecked(idx))
    }

    #[inline]
    pub(crate) fn coord_unchecked(&self, idx: usize) -> CellCoord {
        let [nx, ny, _] = self.dims;
        CellCoord {
            i: idx % nx,
            j: (idx / nx) % ny,
            k: idx / (nx * ny),
        }
    }

    /// Center of a cell, strictly inside the domain.
    pub fn cell_center(&self, c: CellCoord) -> Result<[f64; 3]> {
        self.check(c)?;
        Ok(self.center_unchecked(c))
    }

    #[inline]
    pub(crate) fn center_unchecked(&self, c: CellCoord) -> [f64; 3] {
        let h = self.spacing();
        let lo = self.extents.lower;
        [
            lo[0] + (c.i as f64 + 0.5) * h[0],
            lo[1] + (c.j as f64 + 0.5) * h[1],
            lo[2] + (c.k as f64 + 0.5) * h[2],
        ]
    }

    /// Face neighbors of a cell (at most 6).
    pub fn neighbors(&self, c: CellCoord) -> Result<Vec<CellCoord>> {
        self.check(c)?;
        let idx = c.i + self.dims[0] * (c.j + self.dims[1] * c.k);
        let mut out = Vec::with_capacity(6);
        self.for_each_neighbor(idx, |n| out.push(self.coord_unchecked(n)));
        Ok(out)
    }

    /// Calls `f` with the linear index of every face neighbor of `idx`.
    #[inline]
    pub fn for_each_neighbor(&self, idx: usize, mut f: impl FnMut(usize)) {
        let [nx, ny, nz] = self.dims;
        let plane = nx * ny;
        let c = self.coord_unchecked(idx);
        if c.i > 0 {
            f(idx - 1);
        }
        if c.i + 1 < nx {
            f(idx + 1);
        }
        if c.j > 0 {
            f(idx - nx);
        }
        if c.j + 1 < ny {
            f(idx + nx);
        }
        if c.k > 0 {
            f(idx - plane);
        }
        if c.k + 1 < nz {
            f(idx + plane);
        }
    }

    /// Number of in-range face neighbors of `idx`.
    #[inline]
    pub fn degree(&self, idx: usize) -> usize {
        let c = self.coord_unchecked(idx);
        self.dims
            .iter()
            .zip([c.i, c.j, c.k])
            .map(|(&n, x)| usize::from(x > 0) + usize::from(x + 1 < n))
            .sum()
    }
}

type EdgeWeightFn<'a> = dyn Fn(usize, usize) -> f64 + Send + Sync + 'a;

/// Dual graph of a grid: one vertex per cell, one edge per shared face.
///
/// Adjacency is computed on the fly from the grid dimensions.
pub struct DualGraph<'a> {
    grid: &'a GridSpec,
    edge_weight: Option<Box<EdgeWeightFn<'a>>>,
}

impl<'a> DualGraph<'a> {
    pub fn new(grid: &'a GridSpec) -> Self {
        DualGraph {
            grid,
            edge_weight: None,
        }
    }

    /// Use a custom edge weight. The function receives linear indices and
    /// must be symmetric and positive.
    pub fn with_edge_weight(
        mut self,
        f: impl Fn(usize, usize) -> f64 + Send + Sync + 'a,
    ) -> Self {
        self.edge_weight = Some(Box::new(f));
        self
    }

    pub fn grid(&self) -> &'a GridSpec {
        self.grid
    }

    #[inline]
    pub fn edge_weight(&self, u: usize, v: usize) -> f64 {
        self.edge_weight.as_ref().map_or(1.0, |f| f(u, v))
    }

    pub fn has_uniform_edge_weights(&self) -> bool {
        self.edge_weight.is_none()
    }

    pub fn neighbors(&self, c: CellCoord) -> Result<Vec<CellCoord>> {
        self.grid.neighbors(c)
    }
}

impl std::fmt::Debug for DualGraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DualGraph")
            .field("grid", &self.grid)
            .field("weighted_edges", &self.edge_weight.is_some())
            .finish()
    }
}
