//! Hilbert and Morton partition quality on the 180 x 660 x 255 reservoir grid
//! (1200 x 2200 x 170 ft) for 256 to 2048 ranks.
//!
//! Run with `cargo run --release -p sfcpart-core --example reservoir_sweep`.

use sfcpart_core::curve::{Morton, TableHilbert};
use sfcpart_core::io::ReportFormat;
use sfcpart_core::partition::DEFAULT_EPSILON;
use sfcpart_core::sweep::{format_sweep, sweep};
use sfcpart_core::{Extents, GridSpec, Level};

fn main() -> sfcpart_core::Result<()> {
    let grid = GridSpec::new(
        [180, 660, 255],
        Extents::new((0.0, 1200.0), (0.0, 2200.0), (0.0, 170.0)),
    )?;
    let with_morton = std::env::args().any(|a| a == "--morton");
    let mut curves: Vec<&dyn sfcpart_core::CurveEncoder> = vec![&TableHilbert];
    if with_morton {
        curves.push(&Morton);
    }
    let rows = sweep(&grid, &curves, &[256, 512, 1024, 2048], Level::default(), DEFAULT_EPSILON)?;
    print!("{}", format_sweep(&rows, ReportFormat::Text));
    Ok(())
}
