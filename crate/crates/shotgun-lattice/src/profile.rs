//! The observable data of an instance: the multiset of window patterns
//! ("shards") with positions forgotten, punctured variants of it used by the
//! certificate searches, and the shard file format.

use std::collections::{BTreeMap, HashMap};
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    advance, enumerate_boxes, extract_pattern, BoxRegion, Label, Labeling, LatticeConfig, Pattern,
    Vertex,
};

/// Whether shard patterns are stored as observed (oriented) or collapsed to
/// orientation-class representatives (canonical).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProfileKind {
    Oriented,
    Canonical,
}

/// Multiset of all `r`-box patterns of a labeling, keyed by encoded pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    config: LatticeConfig,
    kind: ProfileKind,
    counts: HashMap<Vec<u8>, u64>,
}

impl Profile {
    pub(crate) fn from_counts(
        config: LatticeConfig,
        kind: ProfileKind,
        counts: HashMap<Vec<u8>, u64>,
    ) -> Self {
        Profile {
            config,
            kind,
            counts,
        }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    /// Number of distinct patterns.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total multiplicity; equals `(n - r + 1)^d` for a genuine profile.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count_of(&self, encoded: &[u8]) -> u64 {
        self.counts.get(encoded).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &HashMap<Vec<u8>, u64> {
        &self.counts
    }

    /// `(encoded pattern, multiplicity)` pairs in ascending encoding order.
    /// This is the canonical iteration order for anything that must be
    /// deterministic or byte-comparable.
    pub fn iter_sorted(&self) -> Vec<(&[u8], u64)> {
        let mut v: Vec<(&[u8], u64)> = self
            .counts
            .iter()
            .map(|(k, &c)| (k.as_slice(), c))
            .collect();
        v.sort_unstable_by(|a, b| a.0.cmp(b.0));
        v
    }

    /// Decodes every distinct pattern, in ascending encoding order.
    pub fn decode_shards(&self) -> Result<Vec<(Pattern, u64)>> {
        self.iter_sorted()
            .into_iter()
            .map(|(k, c)| Ok((Pattern::decode(k)?, c)))
            .collect()
    }
}

/// Collects the multiset of all `r`-box patterns of `labeling`.
pub fn shatter(labeling: &Labeling) -> Profile {
    let config = *labeling.config();
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    for b in enumerate_boxes(&config, config.r).expect("r validated by config") {
        let p = extract_pattern(labeling, &b).expect("enumerated boxes fit");
        *counts.entry(p.encode()).or_insert(0) += 1;
    }
    Profile {
        config,
        kind: ProfileKind::Oriented,
        counts,
    }
}

/// Multiset equality of two profiles over the same configuration and kind.
pub fn profiles_equal(a: &Profile, b: &Profile) -> Result<bool> {
    if a.config != b.config || a.kind != b.kind {
        return Err(Error::ConfigMismatch);
    }
    Ok(a.counts == b.counts)
}

/// Is `v` far enough from the boundary that every `r`-box placement covering
/// it exists? Componentwise `r <= v_i <= n - r`.
pub fn is_interior(config: &LatticeConfig, v: &Vertex) -> bool {
    v.d() == config.d
        && v.coords()
            .iter()
            .all(|&c| c >= config.r && c <= config.n - config.r)
}

/// The profile seen through a hole: one component per relative offset
/// `o` in `[0, r)^d` (row-major order), counting for each marked vertex `u`
/// the pattern of the box at corner `u - o` with the cell at `o` masked out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedProfile {
    config: LatticeConfig,
    components: Vec<BTreeMap<Vec<u8>, u64>>,
}

impl PuncturedProfile {
    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn components(&self) -> &[BTreeMap<Vec<u8>, u64>] {
        &self.components
    }

    /// Unambiguous flat byte form; equal bytes iff equal profiles. Used as a
    /// collision-search key so that a key hit is already an exact match.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        for (j, comp) in self.components.iter().enumerate() {
            out.extend_from_slice(&(j as u32).to_le_bytes());
            out.extend_from_slice(&(comp.len() as u32).to_le_bytes());
            for (k, &c) in comp {
                out.extend_from_slice(&(k.len() as u32).to_le_bytes());
                out.extend_from_slice(k);
                out.extend_from_slice(&c.to_le_bytes());
            }
        }
        out
    }
}

/// Builds the punctured profile of a set of interior vertices.
pub fn punctured_profile(labeling: &Labeling, points: &[Vertex]) -> Result<PuncturedProfile> {
    let config = *labeling.config();
    for u in points {
        if !is_interior(&config, u) {
            return Err(Error::OutOfBounds);
        }
    }
    let r = config.r;
    let comp_count = r.pow(config.d as u32);
    let mut components = vec![BTreeMap::new(); comp_count];
    // Offsets iterate row-major, so the loop counter is the hole's index
    // within the box shape.
    let mut offset = vec![0usize; config.d];
    let sides = vec![r; config.d];
    let mut j = 0;
    loop {
        for u in points {
            let corner: Vec<usize> = u
                .coords()
                .iter()
                .zip(&offset)
                .map(|(&c, &o)| c - o)
                .collect();
            let region = BoxRegion::cube(Vertex::new(&corner), r);
            let full = extract_pattern(labeling, &region)?;
            let mut mask = vec![true; full.cell_count()];
            mask[j] = false;
            let masked = Pattern::from_raw(&sides, full.raw_cells().to_vec(), Some(mask));
            *components[j].entry(masked.encode()).or_insert(0) += 1;
        }
        j += 1;
        if !advance(&mut offset, &sides) {
            break;
        }
    }
    Ok(PuncturedProfile { config, components })
}

/// Marked vertices available for profile-preserving swaps: interior, label
/// `k`, and every coordinate a multiple of `2r` (so distinct points are at
/// Chebyshev distance at least `2r` and their window families are disjoint).
pub fn grid_points(labeling: &Labeling, k: Label) -> Result<Vec<Vertex>> {
    let config = labeling.config();
    if k < 1 || k as usize > config.q {
        return Err(Error::BadLabel {
            found: k,
            q: config.q,
        });
    }
    let step = 2 * config.r;
    let mut out = Vec::new();
    let lo = config.r.next_multiple_of(step);
    let hi = config.n - config.r;
    if lo > hi {
        return Ok(out);
    }
    let per_dim: Vec<usize> = (0..config.d).map(|_| (hi - lo) / step + 1).collect();
    let mut idx = vec![0usize; config.d];
    loop {
        let coords: Vec<usize> = idx.iter().map(|&i| lo + i * step).collect();
        let v = Vertex::new(&coords);
        if labeling.label(&v) == k {
            out.push(v);
        }
        if !advance(&mut idx, &per_dim) {
            break;
        }
    }
    Ok(out)
}

const SHARD_MAGIC: &[u8; 4] = b"SGSL";
const SHARD_VERSION: u8 = 1;
const CANONICAL_FLAG: u8 = 0x80;

/// Writes a profile in the shard file format: magic `SGSL`, a version byte
/// (high bit set for canonical profiles), `d, n, q, r` as little-endian
/// `u32`, a `u64` record count, then `(encoded pattern, u32 multiplicity)`
/// records sorted ascending by encoding. Identical profiles serialize to
/// identical bytes.
pub fn write_shard_file<W: Write>(profile: &Profile, mut w: W) -> Result<()> {
    w.write_all(SHARD_MAGIC)?;
    let version = match profile.kind {
        ProfileKind::Oriented => SHARD_VERSION,
        ProfileKind::Canonical => SHARD_VERSION | CANONICAL_FLAG,
    };
    w.write_all(&[version])?;
    let c = profile.config;
    for field in [c.d, c.n, c.q, c.r] {
        w.write_all(&(field as u32).to_le_bytes())?;
    }
    let entries = profile.iter_sorted();
    w.write_all(&(entries.len() as u64).to_le_bytes())?;
    for (key, count) in entries {
        let count: u32 = count
            .try_into()
            .map_err(|_| Error::Format("multiplicity exceeds u32".into()))?;
        w.write_all(key)?;
        w.write_all(&count.to_le_bytes())?;
    }
    Ok(())
}

/// Reads and validates a shard file written by [`write_shard_file`].
pub fn read_shard_file<R: Read>(mut rd: R) -> Result<Profile> {
    fn take<'a>(buf: &'a [u8], pos: &mut usize, len: usize) -> Result<&'a [u8]> {
        let end = pos
            .checked_add(len)
            .filter(|&e| e <= buf.len())
            .ok_or_else(|| Error::Format("shard file: truncated".into()))?;
        let s = &buf[*pos..end];
        *pos = end;
        Ok(s)
    }
    let bad = |msg: &str| Error::Format(format!("shard file: {msg}"));
    let mut buf = Vec::new();
    rd.read_to_end(&mut buf)?;
    let mut pos = 0usize;
    if take(&buf, &mut pos, 4)? != SHARD_MAGIC {
        return Err(bad("bad magic"));
    }
    let version = take(&buf, &mut pos, 1)?[0];
    let kind = if version & CANONICAL_FLAG != 0 {
        ProfileKind::Canonical
    } else {
        ProfileKind::Oriented
    };
    if version & !CANONICAL_FLAG != SHARD_VERSION {
        return Err(bad("unsupported version"));
    }
    let mut fields = [0usize; 4];
    for f in &mut fields {
        let b = take(&buf, &mut pos, 4)?;
        *f = u32::from_le_bytes(b.try_into().unwrap()) as usize;
    }
    let config = LatticeConfig::new(fields[0], fields[1], fields[2], fields[3])
        .map_err(|e| bad(&format!("header: {e}")))?;
    let record_count = u64::from_le_bytes(take(&buf, &mut pos, 8)?.try_into().unwrap());
    // Records hold full r-cubes only, so every encoding has the same length.
    let pattern_len = 1 + 2 * config.d + config.r.pow(config.d as u32);
    let mut counts = HashMap::new();
    let mut prev_key: Option<Vec<u8>> = None;
    let mut total: u64 = 0;
    for _ in 0..record_count {
        let key = take(&buf, &mut pos, pattern_len)?.to_vec();
        let pattern = Pattern::decode(&key)?;
        if pattern.is_masked()
            || pattern.d() != config.d
            || !pattern.sides().iter().all(|&s| s == config.r)
        {
            return Err(bad("record shape does not match header"));
        }
        if pattern.raw_cells().iter().any(|&c| c as usize >= config.q) {
            return Err(bad("label outside alphabet"));
        }
        let mult = u32::from_le_bytes(take(&buf, &mut pos, 4)?.try_into().unwrap()) as u64;
        if mult == 0 {
            return Err(bad("zero multiplicity"));
        }
        if let Some(prev) = &prev_key {
            if *prev >= key {
                return Err(bad("records not strictly ascending"));
            }
        }
        total += mult;
        prev_key = Some(key.clone());
        counts.insert(key, mult);
    }
    if pos != buf.len() {
        return Err(bad("trailing bytes"));
    }
    if total != config.shard_count() as u64 {
        return Err(bad("total multiplicity does not match (n-r+1)^d"));
    }
    Ok(Profile {
        config,
        kind,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::sample_labeling;

    fn lab1d(n: usize, q: usize, r: usize, labels: &[Label]) -> Labeling {
        let config = LatticeConfig::new(1, n, q, r).unwrap();
        Labeling::from_labels(config, labels).unwrap()
    }

    #[test]
    fn shatter_counts_windows() {
        let lab = lab1d(4, 4, 2, &[1, 2, 3, 4]);
        let p = shatter(&lab);
        assert_eq!(p.total(), 3);
        assert_eq!(p.distinct(), 3);

        let lab = lab1d(4, 2, 2, &[1, 1, 1, 1]);
        let p = shatter(&lab);
        assert_eq!(p.total(), 3);
        assert_eq!(p.distinct(), 1);
        let key = Pattern::from_labels(&[2], &[1, 1], 2).unwrap().encode();
        assert_eq!(p.count_of(&key), 3);
    }

    #[test]
    fn equal_profiles_from_different_labelings() {
        // The classic aliased pair: same window multiset, different text.
        let a = shatter(&lab1d(4, 2, 2, &[1, 2, 2, 1]));
        let b = shatter(&lab1d(4, 2, 2, &[2, 1, 2, 2]));
        assert!(profiles_equal(&a, &b).unwrap());

        let c = shatter(&lab1d(4, 2, 2, &[1, 2, 1, 2]));
        let d = shatter(&lab1d(4, 2, 2, &[2, 1, 2, 1]));
        assert!(!profiles_equal(&c, &d).unwrap());
    }

    #[test]
    fn profiles_equal_rejects_mismatched_configs() {
        let a = shatter(&lab1d(4, 2, 2, &[1, 2, 2, 1]));
        let b = shatter(&lab1d(5, 2, 2, &[1, 2, 2, 1, 1]));
        assert!(matches!(profiles_equal(&a, &b), Err(Error::ConfigMismatch)));
    }

    #[test]
    fn profile_is_translation_anonymous_not_orientation_anonymous() {
        // Reversal changes the oriented profile in general; no hidden
        // canonicalization may sneak in here.
        let a = shatter(&lab1d(3, 2, 2, &[1, 1, 2]));
        let b = shatter(&lab1d(3, 2, 2, &[2, 1, 1]));
        assert!(!profiles_equal(&a, &b).unwrap());
    }

    #[test]
    fn punctured_profile_of_single_point() {
        let lab = lab1d(5, 2, 2, &[1, 2, 1, 2, 1]);
        let u = Vertex::new(&[2]);
        let pp = punctured_profile(&lab, &[u]).unwrap();
        assert_eq!(pp.components().len(), 2);
        // Offset 0 sees the box at 2 with its first cell hidden: [_, 2].
        let m0 = Pattern::from_raw(&[2], vec![0, 1], Some(vec![false, true]));
        assert_eq!(pp.components()[0].get(&m0.encode()), Some(&1));
        // Offset 1 sees the box at 1 with its second cell hidden: [2, _].
        let m1 = Pattern::from_raw(&[2], vec![1, 0], Some(vec![true, false]));
        assert_eq!(pp.components()[1].get(&m1.encode()), Some(&1));
    }

    #[test]
    fn punctured_profile_rejects_boundary_points() {
        let lab = lab1d(5, 2, 2, &[1, 2, 1, 2, 1]);
        assert!(punctured_profile(&lab, &[Vertex::new(&[1])]).is_err());
        assert!(punctured_profile(&lab, &[Vertex::new(&[4])]).is_err());
    }

    #[test]
    fn grid_points_on_constant_labeling() {
        let config = LatticeConfig::new(1, 13, 2, 2).unwrap();
        let lab = Labeling::from_labels(config, &vec![1; 13]).unwrap();
        let pts = grid_points(&lab, 1).unwrap();
        let coords: Vec<usize> = pts.iter().map(|v| v.coords()[0]).collect();
        assert_eq!(coords, vec![4, 8]);
        assert!(grid_points(&lab, 2).unwrap().is_empty());
    }

    #[test]
    fn grid_points_are_pairwise_separated() {
        let config = LatticeConfig::new(2, 32, 2, 3).unwrap();
        let lab = sample_labeling(&config, 11);
        for k in 1..=2 {
            let pts = grid_points(&lab, k).unwrap();
            for (i, a) in pts.iter().enumerate() {
                assert!(is_interior(&config, a));
                assert_eq!(lab.label(a), k);
                for b in &pts[i + 1..] {
                    assert!(a.linf_distance(b) >= 2 * config.r);
                }
            }
        }
    }

    #[test]
    fn shard_file_round_trip_is_byte_stable() {
        let config = LatticeConfig::new(2, 8, 3, 2).unwrap();
        let lab = sample_labeling(&config, 5);
        let profile = shatter(&lab);
        let mut buf1 = Vec::new();
        write_shard_file(&profile, &mut buf1).unwrap();
        let mut buf2 = Vec::new();
        write_shard_file(&profile, &mut buf2).unwrap();
        assert_eq!(buf1, buf2);
        let back = read_shard_file(buf1.as_slice()).unwrap();
        assert!(profiles_equal(&profile, &back).unwrap());
    }

    #[test]
    fn shard_file_header_is_pinned() {
        let lab = lab1d(4, 2, 2, &[1, 1, 1, 1]);
        let mut buf = Vec::new();
        write_shard_file(&shatter(&lab), &mut buf).unwrap();
        let expected: Vec<u8> = [
            b"SGSL".as_slice(),
            &[1],
            &1u32.to_le_bytes(),
            &4u32.to_le_bytes(),
            &2u32.to_le_bytes(),
            &2u32.to_le_bytes(),
            &1u64.to_le_bytes(),
            // single record: pattern [1, 1] with multiplicity 3
            &[0x01, 0x02, 0x00, 0x00, 0x00],
            &3u32.to_le_bytes(),
        ]
        .concat();
        assert_eq!(buf, expected);
    }

    #[test]
    fn shard_file_rejects_corruption() {
        let lab = lab1d(4, 2, 2, &[1, 2, 2, 1]);
        let mut buf = Vec::new();
        write_shard_file(&shatter(&lab), &mut buf).unwrap();
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_shard_file(bad.as_slice()).is_err());
        let mut bad = buf.clone();
        bad.push(0);
        assert!(read_shard_file(bad.as_slice()).is_err());
        let last = buf.len() - 1;
        let mut bad = buf.clone();
        bad[last] = 99; // breaks the total-multiplicity check
        assert!(read_shard_file(bad.as_slice()).is_err());
    }
}
