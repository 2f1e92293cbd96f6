//! Recursive 3D Hilbert encoder.
//!
//! Independent of the state tables: the curve is built by subdividing the
//! cube into octants, visiting them in the base order below, and drawing the
//! sub-curve inside each octant as the whole curve transformed by a cube
//! symmetry (axis permutation plus reflections). The symmetries compose as
//! the recursion descends.

use super::{CurveEncoder, Level};

/// Octant visiting order of the level-1 curve, as `[x, y, z]` bits.
const BASE_ORDER: [[u8; 3]; 8] = [
    [0, 0, 0],
    [1, 0, 0],
    [1, 1, 0],
    [0, 1, 0],
    [0, 1, 1],
    [1, 1, 1],
    [1, 0, 1],
    [0, 0, 1],
];

/// Cube symmetry acting on octant bits: `out[a] = in[perm[a]] ^ flip[a]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Symmetry {
    perm: [usize; 3],
    flip: [u8; 3],
}

impl Symmetry {
    const IDENTITY: Symmetry = Symmetry::new([0, 1, 2], [0, 0, 0]);

    const fn new(perm: [usize; 3], flip: [u8; 3]) -> Self {
        Symmetry { perm, flip }
    }

    fn apply(self, v: [u8; 3]) -> [u8; 3] {
        [
            v[self.perm[0]] ^ self.flip[0],
            v[self.perm[1]] ^ self.flip[1],
            v[self.perm[2]] ^ self.flip[2],
        ]
    }

    /// `self` after `inner`: `x -> self(inner(x))`.
    fn compose(self, inner: Symmetry) -> Symmetry {
        let mut perm = [0; 3];
        let mut flip = [0; 3];
        for a in 0..3 {
            perm[a] = inner.perm[self.perm[a]];
            flip[a] = inner.flip[self.perm[a]] ^ self.flip[a];
        }
        Symmetry { perm, flip }
    }
}

/// Orientation of the sub-curve in the `n`-th visited octant, relative to
/// the parent curve. Each one makes the sub-curve enter at the corner
/// face-adjacent to where the previous octant's sub-curve left.
const CHILD_ORIENTATION: [Symmetry; 8] = [
    Symmetry::new([2, 1, 0], [0, 0, 0]),
    Symmetry::new([0, 2, 1], [0, 0, 0]),
    Symmetry::new([0, 1, 2], [0, 0, 0]),
    Symmetry::new([1, 2, 0], [1, 0, 1]),
    Symmetry::new([1, 2, 0], [1, 1, 0]),
    Symmetry::new([0, 1, 2], [0, 0, 0]),
    Symmetry::new([0, 2, 1], [0, 1, 1]),
    Symmetry::new([2, 1, 0], [1, 0, 1]),
];

#[derive(Debug, Clone, Copy, Default)]
pub struct RecursiveHilbert;

fn encode_rec(cell: [u64; 3], remaining: u32, orientation: Symmetry) -> u128 {
    if remaining == 0 {
        return 0;
    }
    let shift = remaining - 1;
    let octant = cell.map(|c| ((c >> shift) & 1) as u8);
    let position = BASE_ORDER
        .iter()
        .position(|&b| orientation.apply(b) == octant)
        .expect("a cube symmetry permutes the octants");
    let below = encode_rec(
        cell,
        shift,
        orientation.compose(CHILD_ORIENTATION[position]),
    );
    ((position as u128) << (3 * shift)) | below
}

impl CurveEncoder for RecursiveHilbert {
    fn name(&self) -> &'static str {
        "hilbert-recursive"
    }

    fn encode_lattice(&self, cell: [u64; 3], level: Level) -> u128 {
        encode_rec(cell, u32::from(level.get()), Symmetry::IDENTITY)
    }
}
