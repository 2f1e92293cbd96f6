//! Helpers shared by the integration tests. Everything here is written
//! against coordinates and plain loops, not the library's traversal code.

#![allow(dead_code)]

pub mod appendix_ref;

use std::collections::{BTreeSet, HashMap};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

/// Brute-force quality numbers of a partition.
#[derive(Debug, Clone, PartialEq)]
pub struct Recount {
    pub faces: Vec<u64>,
    pub boundary: Vec<u64>,
    pub connectivity: Vec<usize>,
    pub edge_cut: f64,
    pub r_max: f64,
    pub r_avg: f64,
    pub c_max: usize,
}

/// Recount metrics cell by cell from lattice coordinates.
pub fn recount(dims: [usize; 3], n_ranks: usize, rank_of: &dyn Fn(usize, usize, usize) -> u32) -> Recount {
    let [nx, ny, nz] = dims;
    let mut same = vec![0u64; n_ranks];
    let mut foreign = vec![0u64; n_ranks];
    let mut linked: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n_ranks];
    let steps: [(i64, i64, i64); 6] = [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)];
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                let r = rank_of(i, j, k);
                for (di, dj, dk) in steps {
                    let (a, b, c) = (i as i64 + di, j as i64 + dj, k as i64 + dk);
                    if a < 0 || b < 0 || c < 0 || a >= nx as i64 || b >= ny as i64 || c >= nz as i64 {
                        continue;
                    }
                    let s = rank_of(a as usize, b as usize, c as usize);
                    if s == r {
                        same[r as usize] += 1;
                    } else {
                        foreign[r as usize] += 1;
                        linked[r as usize].insert(s);
                    }
                }
            }
        }
    }
    // internal faces were seen from both sides
    let faces: Vec<u64> = same.iter().zip(&foreign).map(|(s, f)| s / 2 + f).collect();
    let ratios: Vec<f64> = faces
        .iter()
        .zip(&foreign)
        .map(|(&f, &b)| if f == 0 { 0.0 } else { b as f64 / f as f64 })
        .collect();
    let connectivity: Vec<usize> = linked.iter().map(BTreeSet::len).collect();
    Recount {
        edge_cut: foreign.iter().sum::<u64>() as f64 / 2.0,
        r_max: ratios.iter().copied().fold(0.0, f64::max),
        r_avg: ratios.iter().sum::<f64>() / n_ranks as f64,
        c_max: connectivity.iter().copied().max().unwrap_or(0),
        faces,
        boundary: foreign,
        connectivity,
    }
}

/// All lattice cells of a `2^level` cube, ordered by `key`.
pub fn sorted_lattice(level: u32, key: impl Fn([u64; 3]) -> u128) -> Vec<[u64; 3]> {
    let n = 1u64 << level;
    let mut cells: Vec<(u128, [u64; 3])> = Vec::with_capacity((n * n * n) as usize);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                cells.push((key([x, y, z]), [x, y, z]));
            }
        }
    }
    cells.sort_unstable();
    cells.into_iter().map(|(_, c)| c).collect()
}

pub fn face_adjacent(a: [u64; 3], b: [u64; 3]) -> bool {
    a.iter().zip(&b).map(|(x, y)| x.abs_diff(*y)).sum::<u64>() == 1
}

/// Number of consecutive pairs that are not face neighbours.
pub fn adjacency_breaks(order: &[[u64; 3]]) -> usize {
    order.windows(2).filter(|w| !face_adjacent(w[0], w[1])).count()
}

/// Compile the published C listing with the system C compiler, if any.
pub fn compile_c_reference() -> Option<PathBuf> {
    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/hilbert_appendix.c");
    let out = std::env::temp_dir().join(format!("sfcpart-hilbert-ref-{}", std::process::id()));
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let status = Command::new(cc)
        .args(["-O2", "-o"])
        .arg(&out)
        .arg(&src)
        .arg("-lm")
        .stderr(Stdio::null())
        .status()
        .ok()?;
    status.success().then_some(out)
}

/// Run the compiled C reference on `points` at `level`; returns the bit
/// patterns of the doubles it prints.
pub fn run_c_reference(exe: &Path, points: &[[f64; 3]], level: u8) -> Vec<u64> {
    let mut child = Command::new(exe)
        .arg(level.to_string())
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .expect("spawn C reference");
    let lines: Vec<String> = points
        .iter()
        // {:e} prints the shortest representation that round-trips
        .map(|p| format!("{:e} {:e} {:e}\n", p[0], p[1], p[2]))
        .collect();
    let stdin = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let mut stdin = std::io::BufWriter::new(stdin);
        for l in lines {
            stdin.write_all(l.as_bytes()).unwrap();
        }
    });
    let out = child.wait_with_output().expect("C reference output");
    writer.join().unwrap();
    String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| u64::from_str_radix(l, 16).unwrap())
        .collect()
}

/// Deterministic uniform points strictly inside the unit cube.
pub fn random_unit_points(seed: u64, n: usize) -> Vec<[f64; 3]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut coord = move || loop {
        let x: f64 = rng.gen();
        if x > 0.0 {
            return x;
        }
    };
    (0..n).map(|_| [coord(), coord(), coord()]).collect()
}

/// Relabel ranks by a fixed permutation.
pub fn relabel(assignment: &[u32], perm: &[u32]) -> Vec<u32> {
    assignment.iter().map(|&r| perm[r as usize]).collect()
}

/// Count of cells per rank via a hash map, independent of `Partition`.
pub fn histogram(assignment: &[u32]) -> HashMap<u32, usize> {
    let mut h = HashMap::new();
    for &r in assignment {
        *h.entry(r).or_insert(0) += 1;
    }
    h
}
