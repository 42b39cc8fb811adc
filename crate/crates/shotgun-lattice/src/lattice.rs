//! Core lattice model: configurations, vertices, axis-aligned boxes, label
//! patterns and their byte encoding, full labelings, and seeded sampling.
//!
//! Conventions used across the whole crate:
//!
//! * cells are addressed row-major with the **last** coordinate fastest;
//! * label values are `1..=q` at the API surface and `value - 1` in raw
//!   storage and in every byte encoding;
//! * all randomness flows through [`sample_labeling`] / [`mix_seed`], which
//!   are stable across platforms and releases.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard cap on the lattice dimension. Keeps coordinates in fixed arrays.
pub const MAX_DIM: usize = 4;

/// A label value as seen by callers: `1..=q`.
pub type Label = u16;

/// Parameters of one problem instance: dimension `d`, side length `n`,
/// alphabet size `q` and window side `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub d: usize,
    pub n: usize,
    pub q: usize,
    pub r: usize,
}

impl LatticeConfig {
    /// Validates `1 <= d <= 4`, `2 <= q <= 256`, `2 <= r <= n`, and that the
    /// cell count `n^d` fits in memory-sized integers.
    pub fn new(d: usize, n: usize, q: usize, r: usize) -> Result<Self> {
        if !(1..=MAX_DIM).contains(&d) {
            return Err(Error::InvalidConfig(format!("d must be in 1..=4, got {d}")));
        }
        if !(2..=256).contains(&q) {
            return Err(Error::InvalidConfig(format!(
                "q must be in 2..=256, got {q}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidConfig(format!("n must be >= 2, got {n}")));
        }
        if !(2..=n).contains(&r) {
            return Err(Error::InvalidConfig(format!("r must be in 2..=n, got {r}")));
        }
        let cells = (n as u128).checked_pow(d as u32);
        match cells {
            Some(c) if c <= (1u128 << 32) => {}
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "n^d = {n}^{d} exceeds the supported instance size"
                )))
            }
        }
        Ok(LatticeConfig { d, n, q, r })
    }

    /// Total number of cells, `n^d`.
    pub fn vertex_count(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    /// Number of r-window placements, `(n - r + 1)^d`.
    pub fn shard_count(&self) -> usize {
        (self.n - self.r + 1).pow(self.d as u32)
    }

    /// Row-major linear index of a coordinate tuple.
    pub fn linear(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.d);
        let mut idx = 0;
        for &c in coords {
            debug_assert!(c < self.n);
            idx = idx * self.n + c;
        }
        idx
    }

    /// Inverse of [`linear`](Self::linear).
    pub fn coords_of(&self, mut idx: usize) -> Vertex {
        let mut c = [0usize; MAX_DIM];
        for i in (0..self.d).rev() {
            c[i] = idx % self.n;
            idx /= self.n;
        }
        Vertex { d: self.d, c }
    }
}

/// A lattice vertex. Coordinates beyond `d` are zero so that derived
/// equality and ordering are well defined.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    d: usize,
    c: [usize; MAX_DIM],
}

impl Vertex {
    pub fn new(coords: &[usize]) -> Self {
        assert!((1..=MAX_DIM).contains(&coords.len()));
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Vertex { d: coords.len(), c }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn coords(&self) -> &[usize] {
        &self.c[..self.d]
    }

    /// Chebyshev distance to another vertex of the same dimension.
    pub fn linf_distance(&self, other: &Vertex) -> usize {
        debug_assert_eq!(self.d, other.d);
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(&a, &b)| a.abs_diff(b))
            .max()
            .unwrap_or(0)
    }
}

impl std::fmt::Debug for Vertex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

/// An axis-aligned box `corner + [0, sides_i)` inside a lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BoxRegion {
    corner: Vertex,
    sides: [usize; MAX_DIM],
}

impl BoxRegion {
    pub fn new(corner: Vertex, sides: &[usize]) -> Self {
        assert_eq!(corner.d(), sides.len());
        let mut s = [0; MAX_DIM];
        s[..sides.len()].copy_from_slice(sides);
        BoxRegion { corner, sides: s }
    }

    /// Cube of side `s` at `corner`.
    pub fn cube(corner: Vertex, s: usize) -> Self {
        let sides = [s; MAX_DIM];
        let mut out = BoxRegion { corner, sides };
        out.sides[corner.d()..].fill(0);
        BoxRegion::new(corner, &out.sides[..corner.d()])
    }

    pub fn d(&self) -> usize {
        self.corner.d()
    }

    pub fn corner(&self) -> &Vertex {
        &self.corner
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides[..self.corner.d()]
    }

    pub fn cell_count(&self) -> usize {
        self.sides().iter().product()
    }

    /// True if every cell of the box lies inside `[0, n)^d`.
    pub fn fits(&self, config: &LatticeConfig) -> bool {
        self.d() == config.d
            && self
                .corner
                .coords()
                .iter()
                .zip(self.sides())
                .all(|(&c, &s)| s >= 1 && c + s <= config.n)
    }

    /// Is the cube obtained by side length `s`?
    pub fn is_cube(&self, s: usize) -> bool {
        self.sides().iter().all(|&x| x == s)
    }
}

/// Steps a coordinate tuple through a box shape in row-major order (last
/// coordinate fastest). Returns `false` after the final tuple.
pub(crate) fn advance(coords: &mut [usize], sides: &[usize]) -> bool {
    for i in (0..coords.len()).rev() {
        coords[i] += 1;
        if coords[i] < sides[i] {
            return true;
        }
        coords[i] = 0;
    }
    false
}

/// Row-major index of `coords` within a box of shape `sides`.
pub(crate) fn shape_index(coords: &[usize], sides: &[usize]) -> usize {
    let mut idx = 0;
    for (&c, &s) in coords.iter().zip(sides) {
        debug_assert!(c < s);
        idx = idx * s + c;
    }
    idx
}

/// A label pattern on a box shape, possibly with some cells masked out.
///
/// Cells are stored raw (`label - 1`, row-major). When a mask is present,
/// `mask[i] == true` means cell `i` carries a value; masked-out cells are
/// normalized to raw `0` so that derived equality and hashing respect the
/// "absent cells are ignored" rule. A mask with every cell present is
/// normalized away entirely.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern {
    d: usize,
    sides: [usize; MAX_DIM],
    cells: Vec<u8>,
    mask: Option<Vec<bool>>,
}

impl Pattern {
    /// Builds a full pattern from 1-based labels.
    pub fn from_labels(sides: &[usize], labels: &[Label], q: usize) -> Result<Self> {
        let count: usize = sides.iter().product();
        if labels.len() != count {
            return Err(Error::InvalidConfig(format!(
                "pattern needs {count} labels, got {}",
                labels.len()
            )));
        }
        let mut cells = Vec::with_capacity(count);
        for &l in labels {
            if l < 1 || l as usize > q {
                return Err(Error::BadLabel { found: l, q });
            }
            cells.push((l - 1) as u8);
        }
        Ok(Self::from_raw(sides, cells, None))
    }

    /// Builds a pattern from raw cells, normalizing the mask.
    pub(crate) fn from_raw(sides: &[usize], mut cells: Vec<u8>, mask: Option<Vec<bool>>) -> Self {
        assert!((1..=MAX_DIM).contains(&sides.len()));
        let count: usize = sides.iter().product();
        assert_eq!(cells.len(), count);
        let mut s = [0; MAX_DIM];
        s[..sides.len()].copy_from_slice(sides);
        let mask = match mask {
            Some(m) => {
                assert_eq!(m.len(), count);
                if m.iter().all(|&p| p) {
                    None
                } else {
                    for (i, &present) in m.iter().enumerate() {
                        if !present {
                            cells[i] = 0;
                        }
                    }
                    Some(m)
                }
            }
            None => None,
        };
        Pattern {
            d: sides.len(),
            sides: s,
            cells,
            mask,
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn sides(&self) -> &[usize] {
        &self.sides[..self.d]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Raw cell bytes (`label - 1`; masked-out cells read 0).
    pub fn raw_cells(&self) -> &[u8] {
        &self.cells
    }

    /// Present/absent flags, or `None` for a full pattern.
    pub fn mask(&self) -> Option<&[bool]> {
        self.mask.as_deref()
    }

    pub fn is_masked(&self) -> bool {
        self.mask.is_some()
    }

    pub fn is_present(&self, idx: usize) -> bool {
        self.mask.as_ref().map_or(true, |m| m[idx])
    }

    /// 1-based label of a present cell.
    pub fn label_at(&self, idx: usize) -> Label {
        debug_assert!(self.is_present(idx));
        self.cells[idx] as Label + 1
    }

    /// The full sub-pattern on `corner + [0, sub_sides)`; full patterns only.
    pub fn sub_pattern(&self, corner: &[usize], sub_sides: &[usize]) -> Pattern {
        assert!(self.mask.is_none());
        assert_eq!(corner.len(), self.d);
        assert_eq!(sub_sides.len(), self.d);
        for i in 0..self.d {
            assert!(corner[i] + sub_sides[i] <= self.sides[i]);
        }
        let count: usize = sub_sides.iter().product();
        let mut cells = Vec::with_capacity(count);
        let mut rel = vec![0usize; self.d];
        let mut abs = vec![0usize; self.d];
        loop {
            for i in 0..self.d {
                abs[i] = corner[i] + rel[i];
            }
            cells.push(self.cells[shape_index(&abs, self.sides())]);
            if !advance(&mut rel, sub_sides) {
                break;
            }
        }
        Pattern::from_raw(sub_sides, cells, None)
    }

    /// Does a full pattern of the same shape agree with this mask's present
    /// cells?
    pub fn matches(&self, full: &Pattern) -> bool {
        debug_assert!(full.mask.is_none());
        if full.sides() != self.sides() {
            return false;
        }
        match &self.mask {
            None => self.cells == full.cells,
            Some(m) => m
                .iter()
                .zip(self.cells.iter().zip(&full.cells))
                .all(|(&present, (&a, &b))| !present || a == b),
        }
    }

    /// Injective byte encoding.
    ///
    /// Layout: one dimension byte (high bit set when a mask follows), `d`
    /// little-endian `u16` side lengths, the optional mask bitmap (row-major,
    /// 8 cells per byte, low bit first, zero padded), then one raw byte per
    /// present cell in row-major order.
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(1 + 2 * self.d + self.cells.len());
        let tag = self.d as u8 | if self.mask.is_some() { 0x80 } else { 0 };
        out.push(tag);
        for &s in self.sides() {
            debug_assert!(s <= u16::MAX as usize);
            out.extend_from_slice(&(s as u16).to_le_bytes());
        }
        match &self.mask {
            None => out.extend_from_slice(&self.cells),
            Some(m) => {
                let mut bitmap = vec![0u8; m.len().div_ceil(8)];
                for (i, &present) in m.iter().enumerate() {
                    if present {
                        bitmap[i / 8] |= 1 << (i % 8);
                    }
                }
                out.extend_from_slice(&bitmap);
                for (i, &present) in m.iter().enumerate() {
                    if present {
                        out.push(self.cells[i]);
                    }
                }
            }
        }
        out
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(bytes: &[u8]) -> Result<Pattern> {
        let bad = |msg: &str| Error::Format(format!("pattern encoding: {msg}"));
        let (&tag, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
        let masked = tag & 0x80 != 0;
        let d = (tag & 0x7f) as usize;
        if !(1..=MAX_DIM).contains(&d) {
            return Err(bad("bad dimension byte"));
        }
        if rest.len() < 2 * d {
            return Err(bad("truncated side lengths"));
        }
        let mut sides = Vec::with_capacity(d);
        for i in 0..d {
            let s = u16::from_le_bytes([rest[2 * i], rest[2 * i + 1]]) as usize;
            if s == 0 {
                return Err(bad("zero side length"));
            }
            sides.push(s);
        }
        let count: usize = sides.iter().product();
        let body = &rest[2 * d..];
        if masked {
            let bitmap_len = count.div_ceil(8);
            if body.len() < bitmap_len {
                return Err(bad("truncated mask bitmap"));
            }
            let (bitmap, vals) = body.split_at(bitmap_len);
            let mask: Vec<bool> = (0..count)
                .map(|i| bitmap[i / 8] >> (i % 8) & 1 == 1)
                .collect();
            for (i, &b) in bitmap.iter().enumerate() {
                let used = (count - 8 * i).min(8);
                if used < 8 && b >> used != 0 {
                    return Err(bad("nonzero mask padding"));
                }
            }
            let present = mask.iter().filter(|&&p| p).count();
            if vals.len() != present {
                return Err(bad("cell byte count does not match mask"));
            }
            let mut cells = vec![0u8; count];
            let mut k = 0;
            for (i, &p) in mask.iter().enumerate() {
                if p {
                    cells[i] = vals[k];
                    k += 1;
                }
            }
            if mask.iter().all(|&p| p) {
                return Err(bad("masked encoding with every cell present"));
            }
            Ok(Pattern::from_raw(&sides, cells, Some(mask)))
        } else {
            if body.len() != count {
                return Err(bad("cell byte count does not match shape"));
            }
            Ok(Pattern::from_raw(&sides, body.to_vec(), None))
        }
    }
}

/// A complete assignment of labels to the cells of `[0, n)^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Labeling {
    config: LatticeConfig,
    cells: Vec<u8>,
}

impl Labeling {
    /// Builds a labeling from 1-based labels in row-major order.
    pub fn from_labels(config: LatticeConfig, labels: &[Label]) -> Result<Self> {
        if labels.len() != config.vertex_count() {
            return Err(Error::InvalidConfig(format!(
                "labeling needs {} cells, got {}",
                config.vertex_count(),
                labels.len()
            )));
        }
        let mut cells = Vec::with_capacity(labels.len());
        for &l in labels {
            if l < 1 || l as usize > config.q {
                return Err(Error::BadLabel {
                    found: l,
                    q: config.q,
                });
            }
            cells.push((l - 1) as u8);
        }
        Ok(Labeling { config, cells })
    }

    pub(crate) fn from_raw(config: LatticeConfig, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), config.vertex_count());
        debug_assert!(cells.iter().all(|&c| (c as usize) < config.q));
        Labeling { config, cells }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    /// Raw storage (`label - 1`, row-major).
    pub fn raw_cells(&self) -> &[u8] {
        &self.cells
    }

    /// 1-based label at a vertex.
    pub fn label(&self, v: &Vertex) -> Label {
        self.cells[self.config.linear(v.coords())] as Label + 1
    }

    /// 1-based labels in row-major order.
    pub fn labels(&self) -> Vec<Label> {
        self.cells.iter().map(|&c| c as Label + 1).collect()
    }

    /// Number of cells that differ from another labeling of the same config.
    pub fn hamming_distance(&self, other: &Labeling) -> Result<usize> {
        if self.config != other.config {
            return Err(Error::ConfigMismatch);
        }
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a != b)
            .count())
    }
}

/// Reads the full pattern on `region` out of a labeling.
pub fn extract_pattern(labeling: &Labeling, region: &BoxRegion) -> Result<Pattern> {
    let config = labeling.config();
    if !region.fits(config) {
        return Err(Error::OutOfBounds);
    }
    let mut cells = Vec::with_capacity(region.cell_count());
    let mut rel = vec![0usize; config.d];
    let mut abs = vec![0usize; config.d];
    loop {
        for i in 0..config.d {
            abs[i] = region.corner().coords()[i] + rel[i];
        }
        cells.push(labeling.cells[config.linear(&abs)]);
        if !advance(&mut rel, region.sides()) {
            break;
        }
    }
    Ok(Pattern::from_raw(region.sides(), cells, None))
}

/// All placements of an `s`-cube inside the lattice, corners in row-major
/// order. Length is `(n - s + 1)^d`.
pub fn enumerate_boxes(config: &LatticeConfig, s: usize) -> Result<Vec<BoxRegion>> {
    if s < 1 || s > config.n {
        return Err(Error::InvalidConfig(format!(
            "box side {s} out of range 1..={}",
            config.n
        )));
    }
    let per_dim = config.n - s + 1;
    let sides = vec![per_dim; config.d];
    let mut corners = vec![0usize; config.d];
    let mut out = Vec::with_capacity(per_dim.pow(config.d as u32));
    loop {
        out.push(BoxRegion::cube(Vertex::new(&corners), s));
        if !advance(&mut corners, &sides) {
            break;
        }
    }
    Ok(out)
}

const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Folds a base seed with stream indices (trial number, sweep cell, ...)
/// into a fresh generator seed. Pure integer mixing, stable everywhere.
pub fn mix_seed(base: u64, parts: &[u64]) -> u64 {
    let mut h = splitmix64(base);
    for &p in parts {
        h = splitmix64(h ^ p.wrapping_mul(GOLDEN));
    }
    h
}

/// Samples a labeling with i.i.d. uniform labels from a fixed-width seeded
/// stream. Identical `(config, seed)` always produce identical output.
pub fn sample_labeling(config: &LatticeConfig, seed: u64) -> Labeling {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = (0..config.vertex_count())
        .map(|_| rng.random_range(0..config.q) as u8)
        .collect();
    Labeling::from_raw(*config, cells)
}
