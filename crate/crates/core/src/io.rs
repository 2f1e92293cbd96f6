//! Text file formats and report rendering.
//!
//! Grid file:
//!
//! ```text
//! dims 180 660 255
//! extents 0 1200 0 2200 0 170
//! weights cells.txt
//! ```
//!
//! The `weights` line is optional; a relative path is resolved against the
//! grid file's directory. Partition file: `nparts N`, `method NAME`, then one
//! rank id per cell in linear-index order.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::grid::{Extents, GridSpec};
use crate::metrics::QualityReport;
use crate::partition::Partition;

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn parse_num<T: std::str::FromStr>(path: &Path, line: usize, tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::parse(path, line, format!("invalid {what} '{tok}'")))
}

/// Parse a grid description. `path` is used for messages and to resolve a
/// relative weights path.
pub fn parse_grid(text: &str, path: &Path) -> Result<GridSpec> {
    let mut dims = None;
    let mut extents = None;
    let mut weights_path = None;
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let args: Vec<&str> = toks.collect();
        match head {
            "dims" => {
                if args.len() != 3 {
                    return Err(Error::parse(path, line_no, "expected 'dims nx ny nz'"));
                }
                let mut d = [0usize; 3];
                for (slot, tok) in d.iter_mut().zip(&args) {
                    *slot = parse_num(path, line_no, tok, "dimension")?;
                    if *slot == 0 {
                        return Err(Error::parse(path, line_no, "dimensions must be positive"));
                    }
                }
                dims = Some((d, line_no));
            }
            "extents" => {
                if args.len() != 6 {
                    return Err(Error::parse(
                        path,
                        line_no,
                        "expected 'extents x1 x2 y1 y2 z1 z2'",
                    ));
                }
                let mut e = [0f64; 6];
                for (slot, tok) in e.iter_mut().zip(&args) {
                    *slot = parse_num(path, line_no, tok, "extent")?;
                }
                let ext = Extents::new((e[0], e[1]), (e[2], e[3]), (e[4], e[5]));
                if (0..3).any(|a| !(ext.lower[a].is_finite() && ext.upper[a].is_finite() && ext.lower[a] < ext.upper[a])) {
                    return Err(Error::parse(path, line_no, "each extent needs lower < upper"));
                }
                extents = Some(ext);
            }
            "weights" => {
                if args.len() != 1 {
                    return Err(Error::parse(path, line_no, "expected 'weights <path>'"));
                }
                weights_path = Some((PathBuf::from(args[0]), line_no));
            }
            other => {
                return Err(Error::parse(path, line_no, format!("unknown directive '{other}'")));
            }
        }
    }
    let (dims, _) = dims.ok_or_else(|| Error::parse(path, 1, "missing 'dims' line"))?;
    let extents = extents.ok_or_else(|| Error::parse(path, 2, "missing 'extents' line"))?;
    let grid = GridSpec::new(dims, extents)?;
    match weights_path {
        None => Ok(grid),
        Some((wp, line_no)) => {
            let resolved = if wp.is_relative() {
                path.parent().unwrap_or(Path::new(".")).join(wp)
            } else {
                wp
            };
            let weights = read_weights(&resolved, grid.num_cells()).map_err(|e| match e {
                Error::Io { path: p, source } => Error::parse(
                    path,
                    line_no,
                    format!("cannot read weights file {}: {source}", p.display()),
                ),
                other => other,
            })?;
            grid.with_weights(weights)
        }
    }
}

pub fn read_grid(path: &Path) -> Result<GridSpec> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    parse_grid(&text, path)
}

pub fn format_grid(grid: &GridSpec, weights_path: Option<&Path>) -> String {
    let [nx, ny, nz] = grid.dims();
    let e = grid.extents();
    let mut s = format!(
        "dims {nx} {ny} {nz}\nextents {} {} {} {} {} {}\n",
        e.lower[0], e.upper[0], e.lower[1], e.upper[1], e.lower[2], e.upper[2]
    );
    if let Some(w) = weights_path {
        let _ = writeln!(s, "weights {}", w.display());
    }
    s
}

/// Read `expected` whitespace-separated positive decimals.
pub fn read_weights(path: &Path, expected: usize) -> Result<Vec<f64>> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    let mut out = Vec::with_capacity(expected);
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        for tok in line.split_whitespace() {
            let w: f64 = parse_num(path, n + 1, tok, "weight")?;
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::parse(path, n + 1, format!("weight {tok} is not positive")));
            }
            out.push(w);
        }
    }
    if out.len() != expected {
        return Err(Error::config(format!(
            "{} holds {} weights, expected {expected}",
            path.display(),
            out.len()
        )));
    }
    Ok(out)
}

pub fn write_partition<W: Write>(partition: &Partition, out: W) -> std::io::Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "nparts {}", partition.n_ranks())?;
    writeln!(w, "method {}", partition.method())?;
    for r in partition.assignment() {
        writeln!(w, "{r}")?;
    }
    w.flush()
}

pub fn save_partition(partition: &Partition, path: &Path) -> Result<()> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    write_partition(partition, file).map_err(io_err(path))
}

/// Parse a partition file; `path` is only used in messages.
pub fn read_partition<R: Read>(input: R, path: &Path) -> Result<Partition> {
    let reader = BufReader::new(input);
    let mut n_ranks = None;
    let mut method = None;
    let mut assignment = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line_no = n + 1;
        let line = line.map_err(io_err(path))?;
        let line = line.trim();
        match line_no {
            1 => {
                let v = line
                    .strip_prefix("nparts")
                    .filter(|rest| rest.starts_with(char::is_whitespace))
                    .ok_or_else(|| Error::parse(path, 1, "expected 'nparts N'"))?;
                let v: usize = parse_num(path, 1, v.trim(), "rank count")?;
                if v == 0 {
                    return Err(Error::parse(path, 1, "rank count must be at least 1"));
                }
                n_ranks = Some(v);
            }
            2 => {
                let v = line
                    .strip_prefix("method")
                    .map(str::trim)
                    .filter(|m| !m.is_empty() && !m.contains(char::is_whitespace))
                    .ok_or_else(|| Error::parse(path, 2, "expected 'method NAME'"))?;
                method = Some(v.to_string());
            }
            _ => {
                if line.is_empty() {
                    continue;
                }
                let r: u32 = parse_num(path, line_no, line, "rank id")?;
                if r as usize >= n_ranks.unwrap_or(0) {
                    return Err(Error::parse(
                        path,
                        line_no,
                        format!("rank {r} out of range for {} ranks", n_ranks.unwrap_or(0)),
                    ));
                }
                assignment.push(r);
            }
        }
    }
    let n_ranks = n_ranks.ok_or_else(|| Error::parse(path, 1, "empty partition file"))?;
    let method = method.ok_or_else(|| Error::parse(path, 2, "missing 'method' line"))?;
    Partition::from_assignment(n_ranks, assignment, method).map_err(|e| match e {
        Error::Config(msg) => Error::parse(path, 0, msg),
        other => other,
    })
}

pub fn load_partition(path: &Path) -> Result<Partition> {
    let file = fs::File::open(path).map_err(io_err(path))?;
    read_partition(file, path)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Csv,
}

/// Render a quality report as an aligned table or as CSV.
pub fn format_report(report: &QualityReport, format: ReportFormat) -> String {
    let mut s = String::new();
    match format {
        ReportFormat::Csv => {
            s.push_str("rank,cells,weight,f,b,c\n");
            for (r, st) in report.per_rank.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{r},{},{},{},{},{}",
                    st.cells, st.weight, st.faces, st.boundary_faces, st.connectivity
                );
            }
            let cells: usize = report.per_rank.iter().map(|s| s.cells).sum();
            let weight: f64 = report.per_rank.iter().map(|s| s.weight).sum();
            let f: u64 = report.per_rank.iter().map(|s| s.faces).sum();
            let b: u64 = report.per_rank.iter().map(|s| s.boundary_faces).sum();
            let _ = writeln!(s, "total,{cells},{weight},{f},{b},{}", report.c_max);
            s.push_str("summary,r_max,r_avg,c_max,edge_cut,imbalance\n");
            let _ = writeln!(
                s,
                "summary,{},{},{},{},{}",
                report.r_max, report.r_avg, report.c_max, report.edge_cut, report.imbalance
            );
        }
        ReportFormat::Text => {
            let _ = writeln!(s, "ranks       {}", report.n_ranks());
            let _ = writeln!(s, "r_max       {:.4} ({:.2}%)", report.r_max, 100.0 * report.r_max);
            let _ = writeln!(s, "r_avg       {:.4} ({:.2}%)", report.r_avg, 100.0 * report.r_avg);
            let _ = writeln!(s, "c_max       {}", report.c_max);
            let _ = writeln!(s, "edge_cut    {}", report.edge_cut);
            let _ = writeln!(s, "imbalance   {:.6}", report.imbalance);
            s.push('\n');
            let _ = writeln!(
                s,
                "{:>8} {:>12} {:>14} {:>12} {:>12} {:>8} {:>8}",
                "rank", "cells", "weight", "f", "b", "b/f", "c"
            );
            for (r, st) in report.per_rank.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{:>8} {:>12} {:>14.4} {:>12} {:>12} {:>8.4} {:>8}",
                    r,
                    st.cells,
                    st.weight,
                    st.faces,
                    st.boundary_faces,
                    st.surface_index(),
                    st.connectivity
                );
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("g.txt")
    }

    #[test]
    fn parse_minimal_grid() {
        let g = parse_grid("dims 2 3 4\nextents 0 1 -1 1 0 10\n", p()).unwrap();
        assert_eq!(g.dims(), [2, 3, 4]);
        assert_eq!(g.extents().lower, [0.0, -1.0, 0.0]);
        assert!(g.weights().is_none());
    }

    #[test]
    fn unknown_line_is_parse_error_with_line_number() {
        let err = parse_grid("dims 1 1 1\nextents 0 1 0 1 0 1\ncolor blue\n", p()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_grid_lines() {
        assert!(parse_grid("dims 1 1\nextents 0 1 0 1 0 1\n", p()).is_err());
        assert!(parse_grid("dims 1 0 1\nextents 0 1 0 1 0 1\n", p()).is_err());
        assert!(parse_grid("dims 1 1 1\nextents 0 1 0 1 1 0\n", p()).is_err());
        assert!(parse_grid("dims 1 1 1\n", p()).is_err());
        assert!(parse_grid("dims a 1 1\nextents 0 1 0 1 0 1\n", p()).is_err());
    }

    #[test]
    fn weights_resolved_relative_to_grid() {
        let dir = std::env::temp_dir().join(format!("sfcpart-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join("w.txt"), "1 2\n3.5 4\n").unwrap();
        let gp = dir.join("g.txt");
        fs::write(&gp, "dims 2 2 1\nextents 0 1 0 1 0 1\nweights w.txt\n").unwrap();
        let g = read_grid(&gp).unwrap();
        assert_eq!(g.weights().unwrap(), &[1.0, 2.0, 3.5, 4.0]);
        fs::write(dir.join("w.txt"), "1 2 3\n").unwrap();
        assert!(read_grid(&gp).is_err());
        fs::write(dir.join("w.txt"), "1 2 0 4\n").unwrap();
        assert!(read_grid(&gp).is_err());
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn partition_text_round_trip() {
        let part = Partition::from_assignment(3, vec![0, 2, 1, 1, 0], "hilbert").unwrap();
        let mut buf = Vec::new();
        write_partition(&part, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "nparts 3\nmethod hilbert\n0\n2\n1\n1\n0\n"
        );
        assert_eq!(read_partition(&buf[..], p()).unwrap(), part);
    }

    #[test]
    fn bad_partition_files() {
        let bad = [
            "nparts 0\nmethod x\n",
            "parts 2\nmethod x\n0\n1\n",
            "nparts 2\nmethod\n0\n1\n",
            "nparts 2\nmethod x\n0\n2\n",
            "nparts 2\nmethod x\n0\n0\n",
            "nparts 2\nmethod x\n0\nfoo\n",
        ];
        for text in bad {
            assert!(read_partition(text.as_bytes(), p()).is_err(), "{text:?}");
        }
    }

    #[test]
    fn csv_report_shape() {
        use crate::grid::DualGraph;
        let g = GridSpec::unit([2, 1, 1]).unwrap();
        let part = Partition::from_assignment(2, vec![0, 1], "external").unwrap();
        let r = crate::metrics::evaluate(&part, &DualGraph::new(&g)).unwrap();
        let csv = format_report(&r, ReportFormat::Csv);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "rank,cells,weight,f,b,c");
        assert_eq!(lines[1], "0,1,1,1,1,1");
        assert_eq!(lines[3], "total,2,2,2,2,1");
        assert_eq!(lines[5], "summary,1,1,1,1,1");
    }
}
