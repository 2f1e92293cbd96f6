//! Space-filling-curve encoders.
//!
//! Every curve maps a point of the open unit cube to an exact integer
//! position of `3 * level` bits. Encoders implement [`CurveEncoder`] and are
//! looked up by name through a [`CurveRegistry`], so the partitioner and
//! the command line never name a concrete curve type.

mod hilbert_recursive;
mod hilbert_table;
mod morton;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use hilbert_recursive::RecursiveHilbert;
pub use hilbert_table::{TableHilbert, HILBERT_ORDER_TABLE, HILBERT_STATE_TABLE};
pub use morton::Morton;

pub const MIN_LEVEL: u8 = 1;
/// `3 * 42 = 126` bits still fit a `u128`.
pub const MAX_LEVEL: u8 = 42;
pub const DEFAULT_LEVEL: u8 = 30;
/// Highest level for which the three 30-bit word layout of the reference
/// C routine is defined.
pub const APPENDIX_MAX_LEVEL: u8 = 30;

/// Curve refinement level: the curve resolves a `2^level` lattice per axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u8);

impl Level {
    pub fn new(level: u8) -> Result<Self> {
        if (MIN_LEVEL..=MAX_LEVEL).contains(&level) {
            Ok(Level(level))
        } else {
            Err(Error::config(format!(
                "curve level {level} outside {MIN_LEVEL}..={MAX_LEVEL}"
            )))
        }
    }

    #[inline]
    pub fn get(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn key_bits(self) -> u32 {
        3 * u32::from(self.0)
    }

    /// Number of lattice cells per axis.
    pub fn side(self) -> u64 {
        1u64 << self.0
    }
}

impl Default for Level {
    fn default() -> Self {
        Level(DEFAULT_LEVEL)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point strictly inside the unit cube `(0,1)^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitPoint {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl UnitPoint {
    pub fn new(u: f64, v: f64, w: f64) -> Result<Self> {
        for (name, x) in [("u", u), ("v", v), ("w", w)] {
            if !(x > 0.0 && x < 1.0) {
                return Err(Error::domain(format!(
                    "coordinate {name} = {x} is not strictly inside (0, 1)"
                )));
            }
        }
        Ok(UnitPoint { u, v, w })
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.u, self.v, self.w]
    }

    /// Lattice coordinates of the point at `level`.
    pub fn quantize(&self, level: Level) -> [u64; 3] {
        [
            quantize(self.u, level),
            quantize(self.v, level),
            quantize(self.w, level),
        ]
    }
}

/// Fixed-point quantization of a unit coordinate to `level` bits.
///
/// The coordinate is scaled by `2^Q - 1` with `Q = max(32, level)` and
/// truncated, then the top `level` bits are kept. For `level <= 32` this is
/// the `(unsigned int)(x * 4294967295.0)` conversion of the reference C code.
#[inline]
pub fn quantize(x: f64, level: Level) -> u64 {
    let q_bits = u32::from(level.get()).max(32);
    let scale = ((1u64 << q_bits) - 1) as f64;
    let q = (x * scale) as u64;
    q >> (q_bits - u32::from(level.get()))
}

/// Exact position along a curve of a given level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SfcKey {
    value: u128,
    level: Level,
}

impl SfcKey {
    pub fn new(value: u128, level: Level) -> Result<Self> {
        if value >> level.key_bits() != 0 {
            return Err(Error::config(format!(
                "key {value} does not fit in {} bits",
                level.key_bits()
            )));
        }
        Ok(SfcKey { value, level })
    }

    #[inline]
    pub(crate) fn from_raw(value: u128, level: Level) -> Self {
        debug_assert!(value >> level.key_bits() == 0);
        SfcKey { value, level }
    }

    #[inline]
    pub fn value(&self) -> u128 {
        self.value
    }

    #[inline]
    pub fn level(&self) -> Level {
        self.level
    }

    /// Compare two keys of the same level.
    pub fn try_cmp(&self, other: &SfcKey) -> Result<Ordering> {
        if self.level != other.level {
            return Err(Error::config(format!(
                "cannot compare keys of levels {} and {}",
                self.level, other.level
            )));
        }
        Ok(self.value.cmp(&other.value))
    }

    /// The most significant octant digit.
    pub fn top_digit(&self) -> u8 {
        (self.value >> (self.level.key_bits() - 3)) as u8
    }

    /// `value / 2^(3L)` in `[0, 1)`.
    ///
    /// Keys longer than 53 bits are truncated to the top 53 bits before
    /// conversion, so the result never rounds up to 1.0. The map is strictly
    /// increasing up to level 17 and non-decreasing above.
    pub fn to_unit_interval(&self) -> f64 {
        let bits = self.level.key_bits();
        if bits <= 53 {
            self.value as f64 * 2f64.powi(-(bits as i32))
        } else {
            (self.value >> (bits - 53)) as f64 * 2f64.powi(-53)
        }
    }

    /// The double produced by the reference C routine run with
    /// `hsfc_maxlevel = level`: three 30-bit words recombined with `ldexp`,
    /// low word first. Only defined up to level 30.
    pub fn appendix_value(&self) -> Result<f64> {
        let level = self.level.get();
        if level > APPENDIX_MAX_LEVEL {
            return Err(Error::config(format!(
                "the three-word layout is defined up to level {APPENDIX_MAX_LEVEL}, got {level}"
            )));
        }
        const MASK: u128 = (1 << 30) - 1;
        let bits = self.level.key_bits() as i32;
        let w2 = (self.value & MASK) as f64;
        let w1 = ((self.value >> 30) & MASK) as f64;
        let w0 = ((self.value >> 60) & MASK) as f64;
        let mut hsfc = w2 * 2f64.powi(-bits);
        hsfc += w1 * 2f64.powi(30 - bits);
        hsfc += w0 * 2f64.powi(60 - bits);
        Ok(hsfc)
    }
}

impl PartialOrd for SfcKey {
    /// Keys of different levels are unordered.
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for SfcKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl fmt::LowerHex for SfcKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.value, f)
    }
}

/// `value / 2^(3L)`, see [`SfcKey::to_unit_interval`].
pub fn key_to_unit_interval(key: SfcKey) -> f64 {
    key.to_unit_interval()
}

/// A map from lattice cells of the `2^L` cube to curve positions.
pub trait CurveEncoder: Send + Sync {
    /// Registry name, e.g. `"hilbert"`.
    fn name(&self) -> &'static str;

    /// Curve position of lattice cell `cell` (each coordinate `< 2^level`).
    fn encode_lattice(&self, cell: [u64; 3], level: Level) -> u128;

    fn encode(&self, p: UnitPoint, level: Level) -> SfcKey {
        SfcKey::from_raw(self.encode_lattice(p.quantize(level), level), level)
    }
}

/// Named collection of curve encoders.
#[derive(Clone, Default)]
pub struct CurveRegistry {
    encoders: BTreeMap<&'static str, Arc<dyn CurveEncoder>>,
}

impl CurveRegistry {
    pub fn empty() -> Self {
        CurveRegistry::default()
    }

    /// Registry holding `hilbert`, `hilbert-recursive` and `morton`.
    pub fn builtin() -> Self {
        let mut reg = CurveRegistry::empty();
        reg.register(Arc::new(TableHilbert)).unwrap();
        reg.register(Arc::new(RecursiveHilbert)).unwrap();
        reg.register(Arc::new(Morton)).unwrap();
        reg
    }

    pub fn register(&mut self, encoder: Arc<dyn CurveEncoder>) -> Result<()> {
        let name = encoder.name();
        if self.encoders.contains_key(name) {
            return Err(Error::config(format!("curve '{name}' is already registered")));
        }
        self.encoders.insert(name, encoder);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn CurveEncoder>> {
        self.encoders.get(name).cloned().ok_or_else(|| {
            Error::config(format!(
                "unknown curve '{name}', expected one of: {}",
                self.names().collect::<Vec<_>>().join(", ")
            ))
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.encoders.keys().copied()
    }
}

impl fmt::Debug for CurveRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.names()).finish()
    }
}

/// Table-driven Hilbert position of `p`.
pub fn hilbert_encode(p: UnitPoint, level: Level) -> SfcKey {
    TableHilbert.encode(p, level)
}

/// Hilbert position of `p` by recursive subdivision with explicit
/// octant symmetries.
pub fn hilbert_encode_recursive(p: UnitPoint, level: Level) -> SfcKey {
    RecursiveHilbert.encode(p, level)
}

/// Morton (Z-order) position of `p`.
pub fn morton_encode(p: UnitPoint, level: Level) -> SfcKey {
    Morton.encode(p, level)
}
