//! Space-filling-curve partitioning of structured 3D grids.
//!
//! Cells of an `nx x ny x nz` grid are keyed by the position of their center
//! along a Hilbert or Morton curve, the keys are sorted, and the sorted run
//! is cut into contiguous pieces of near-equal workload. The [`metrics`]
//! module scores any partition, curve-based or not, by surface indices,
//! inter-rank connectivity, edge cut and load imbalance.

pub mod curve;
pub mod error;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod partition;
pub mod sweep;

pub use curve::{CurveEncoder, CurveRegistry, Level, SfcKey, UnitPoint};
pub use error::{Error, Result};
pub use grid::{CellCoord, DualGraph, Extents, GridSpec};
pub use metrics::{evaluate, QualityReport, RankStats};
pub use partition::{partition_grid, CellKeys, CurveOrder, DomainMap, Partition};
