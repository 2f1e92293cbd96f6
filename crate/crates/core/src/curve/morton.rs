//! Morton (Z-order) encoder: plain bit interleaving, `x` most significant.

use super::{CurveEncoder, Level};

#[derive(Debug, Clone, Copy, Default)]
pub struct Morton;

/// Spread the low 42 bits of `v` so that bit `n` lands on bit `3n`.
#[inline]
fn spread3(v: u64) -> u128 {
    let mut x = u128::from(v & ((1 << 42) - 1));
    x = (x | (x << 64)) & 0x0000_03ff_0000_0000_0000_0000_ffff_ffff;
    x = (x | (x << 32)) & 0x0000_03ff_0000_0000_ffff_0000_0000_ffff;
    x = (x | (x << 16)) & 0x0300_00ff_0000_ff00_00ff_0000_ff00_00ff;
    x = (x | (x << 8)) & 0x0300_f00f_00f0_0f00_f00f_00f0_0f00_f00f;
    x = (x | (x << 4)) & 0x030c_30c3_0c30_c30c_30c3_0c30_c30c_30c3;
    x = (x | (x << 2)) & 0x0924_9249_2492_4924_9249_2492_4924_9249;
    x
}

impl CurveEncoder for Morton {
    fn name(&self) -> &'static str {
        "morton"
    }

    #[inline]
    fn encode_lattice(&self, cell: [u64; 3], _level: Level) -> u128 {
        (spread3(cell[0]) << 2) | (spread3(cell[1]) << 1) | spread3(cell[2])
    }
}
