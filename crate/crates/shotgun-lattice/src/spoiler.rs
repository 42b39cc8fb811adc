//! Constructs non-identifiability certificates: explicit second labelings
//! with the same profile as a given one. Every certificate is re-verified
//! from scratch before it is returned, so a returned certificate is proof,
//! not heuristic output. The brute-force oracle at the bottom is the
//! definitional ground truth the search routines are tested against.

use std::collections::HashMap;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{mix_seed, BoxRegion, Labeling, Vertex};
use crate::profile::{grid_points, profiles_equal, punctured_profile, shatter};
use crate::symmetry::{equal_up_to_isomorphism, shatter_symmetric};

/// Combination checks `spoil_1d` spends before giving up. Degenerate inputs
/// (a constant labeling, say) match blocks everywhere while failing the
/// content condition everywhere; the cap turns that into a fast not-found.
pub const DEFAULT_SPOIL_BUDGET: usize = 65_536;

/// Matching block pairs collected per side before the cross search.
const PAIR_CAP: usize = 4_096;

/// Largest enumeration the brute-force oracle accepts by default.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// Whether a certificate must survive re-labeling by lattice symmetries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SwapMode {
    Oriented,
    Canonical,
}

fn verify_swap(a: &Labeling, b: &Labeling, mode: SwapMode) -> Result<bool> {
    Ok(match mode {
        SwapMode::Oriented => a != b && profiles_equal(&shatter(a), &shatter(b))?,
        SwapMode::Canonical => {
            !equal_up_to_isomorphism(a, b)?
                && profiles_equal(&shatter_symmetric(a), &shatter_symmetric(b))?
        }
    })
}

/// An interval rearrangement of a line labeling that preserves its profile.
/// `b1/b3/b4/b6` are the four matched length-`r` blocks; the half-open
/// stretches `j` (after `b1`) and `j_prime` (after `b4`) trade places.
#[derive(Clone, Debug)]
pub struct SwapCertificate1D {
    pub b1: BoxRegion,
    pub b3: BoxRegion,
    pub b4: BoxRegion,
    pub b6: BoxRegion,
    pub j: (usize, usize),
    pub j_prime: (usize, usize),
    pub permuted: Labeling,
}

impl Serialize for SwapCertificate1D {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("SwapCertificate1D", 10)?;
        s.serialize_field("kind", "interval-swap")?;
        s.serialize_field("r", &self.b1.sides()[0])?;
        s.serialize_field("b1_start", &self.b1.corner().coords()[0])?;
        s.serialize_field("b3_start", &self.b3.corner().coords()[0])?;
        s.serialize_field("b4_start", &self.b4.corner().coords()[0])?;
        s.serialize_field("b6_start", &self.b6.corner().coords()[0])?;
        s.serialize_field("j_start", &self.j.0)?;
        s.serialize_field("j_end", &self.j.1)?;
        s.serialize_field("j_prime_start", &self.j_prime.0)?;
        s.serialize_field("j_prime_end", &self.j_prime.1)?;
        s.end()
    }
}

/// A label exchange between two vertex sets that preserves the profile:
/// `v1` currently carries label 1, `v2` label 2, and their punctured
/// window collections agree, so trading labels is invisible to the profile.
#[derive(Clone, Debug)]
pub struct SwapCertificateND {
    pub v1: Vec<Vertex>,
    pub v2: Vec<Vertex>,
    pub permuted: Labeling,
}

impl Serialize for SwapCertificateND {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let coords =
            |vs: &[Vertex]| -> Vec<Vec<usize>> { vs.iter().map(|v| v.coords().to_vec()).collect() };
        let mut s = serializer.serialize_struct("SwapCertificateND", 3)?;
        s.serialize_field("kind", "label-swap")?;
        s.serialize_field("v1", &coords(&self.v1))?;
        s.serialize_field("v2", &coords(&self.v2))?;
        s.end()
    }
}

/// Searches a line labeling for the block layout that allows two interior
/// stretches to trade places. The lattice is cut into `blocks` consecutive
/// intervals of `m = n / blocks` cells; within the intervals at positions
/// `1, 3, 4, 6` of the six-slot layout starting at `first`, it looks for
/// length-`r` blocks with `cells[b1..] == cells[b4..]` and `cells[b3..] ==
/// cells[b6..]`, then requires the length-`m` prefixes after `b1` and `b4`
/// to differ so the rearranged labeling is genuinely new.
///
/// Candidate blocks are all in-interval positions, not only the `m/r`
/// disjoint ones: the disjoint thinning leaves too few pairs to find a
/// match reliably at moderate sizes, and any in-interval position yields an
/// equally valid certificate.
fn search_1d_blocks(
    cells: &[u8],
    r: usize,
    m: usize,
    first: usize,
    budget: &mut usize,
) -> Option<(usize, usize, usize, usize)> {
    let start = |slot: usize| (first + slot) * m;
    let matched_pairs = |slot_a: usize, slot_b: usize| -> Vec<(usize, usize)> {
        let mut by_window: HashMap<&[u8], Vec<usize>> = HashMap::new();
        for y in start(slot_b)..=start(slot_b) + m - r {
            by_window.entry(&cells[y..y + r]).or_default().push(y);
        }
        let mut pairs = Vec::new();
        'scan: for x in start(slot_a)..=start(slot_a) + m - r {
            if let Some(ys) = by_window.get(&cells[x..x + r]) {
                for &y in ys {
                    pairs.push((x, y));
                    if pairs.len() == PAIR_CAP {
                        break 'scan;
                    }
                }
            }
        }
        pairs
    };
    let outer = matched_pairs(0, 3);
    let inner = matched_pairs(2, 5);
    for &(b1, b4) in &outer {
        for &(b3, b6) in &inner {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            // Both stretches must reach length m for the content check;
            // interval containment already guarantees this.
            if b3 < b1 + r + m || b6 < b4 + r + m {
                continue;
            }
            if cells[b1 + r..b1 + r + m] == cells[b4 + r..b4 + r + m] {
                continue;
            }
            return Some((b1, b3, b4, b6));
        }
    }
    None
}

fn rebuild_1d(labeling: &Labeling, b1: usize, b3: usize, b4: usize, b6: usize) -> Labeling {
    let cells = labeling.raw_cells();
    let mut out = Vec::with_capacity(cells.len());
    out.extend_from_slice(&cells[..b1 + labeling.config().r]);
    out.extend_from_slice(&cells[b4 + labeling.config().r..b6]);
    out.extend_from_slice(&cells[b3..b4 + labeling.config().r]);
    out.extend_from_slice(&cells[b1 + labeling.config().r..b3]);
    out.extend_from_slice(&cells[b6..]);
    Labeling::from_raw(*labeling.config(), out)
}

fn spoil_1d_engine(
    labeling: &Labeling,
    m: usize,
    first: usize,
    mode: SwapMode,
) -> Result<Option<SwapCertificate1D>> {
    let r = labeling.config().r;
    let mut budget = DEFAULT_SPOIL_BUDGET;
    let found = search_1d_blocks(labeling.raw_cells(), r, m, first, &mut budget);
    let (b1, b3, b4, b6) = match found {
        Some(t) => t,
        None => return Ok(None),
    };
    let permuted = rebuild_1d(labeling, b1, b3, b4, b6);
    if !verify_swap(labeling, &permuted, mode)? {
        // The rearrangement provably preserves the profile and the content
        // check makes it differ, so this is reachable only in the
        // orientation-blind mode when the result mirrors the original.
        return Ok(None);
    }
    let cube = |x: usize| BoxRegion::cube(Vertex::new(&[x]), r);
    Ok(Some(SwapCertificate1D {
        b1: cube(b1),
        b3: cube(b3),
        b4: cube(b4),
        b6: cube(b6),
        j: (b1 + r, b3),
        j_prime: (b4 + r, b6),
        permuted,
    }))
}

/// Finds a profile-preserving rearrangement of a line labeling, built from
/// two interior stretches framed by matching length-`r` blocks. Requires
/// `d = 1` and `n >= 6r`; returns `None` when no verifiable layout exists
/// within the search budget (a constant labeling is the canonical example:
/// blocks match everywhere but the stretches never differ).
pub fn spoil_1d(labeling: &Labeling) -> Result<Option<SwapCertificate1D>> {
    let config = *labeling.config();
    if config.d != 1 {
        return Err(Error::InvalidConfig(
            "interval swap construction requires d = 1".into(),
        ));
    }
    if config.n < 6 * config.r {
        return Err(Error::InvalidConfig(format!(
            "interval swap construction needs n >= 6r, got n={}, r={}",
            config.n, config.r
        )));
    }
    spoil_1d_engine(labeling, config.n / 6, 0, SwapMode::Oriented)
}

/// Orientation-blind variant of [`spoil_1d`]: the lattice is cut into eight
/// intervals, the swap machinery runs on the middle six, and the outermost
/// intervals must differ even after reversal so the rearranged labeling
/// cannot be a mirror image of the original. Verification compares
/// canonical profiles and checks non-isomorphism. Requires `n >= 8r`.
pub fn spoil_1d_symmetric(labeling: &Labeling) -> Result<Option<SwapCertificate1D>> {
    let config = *labeling.config();
    if config.d != 1 {
        return Err(Error::InvalidConfig(
            "interval swap construction requires d = 1".into(),
        ));
    }
    if config.n < 8 * config.r {
        return Err(Error::InvalidConfig(format!(
            "orientation-blind interval swap needs n >= 8r, got n={}, r={}",
            config.n, config.r
        )));
    }
    let m = config.n / 8;
    let cells = labeling.raw_cells();
    let head = &cells[..m];
    let tail = &cells[7 * m..8 * m];
    let reversed: Vec<u8> = tail.iter().rev().copied().collect();
    if head == tail || head == &reversed[..] {
        return Ok(None);
    }
    spoil_1d_engine(labeling, m, 1, SwapMode::Canonical)
}

fn punctured_bytes(labeling: &Labeling, points: &[Vertex]) -> Result<Vec<u8>> {
    Ok(punctured_profile(labeling, points)?.canonical_bytes())
}

fn singleton_engine(
    labeling: &Labeling,
    mode: SwapMode,
    mut budget: Option<&mut u64>,
) -> Result<Option<SwapCertificateND>> {
    let g1 = grid_points(labeling, 1)?;
    let g2 = grid_points(labeling, 2)?;
    if g1.is_empty() || g2.is_empty() {
        return Ok(None);
    }
    let spend = |budget: &mut Option<&mut u64>| -> bool {
        match budget {
            None => true,
            Some(b) => {
                if **b == 0 {
                    return false;
                }
                **b -= 1;
                true
            }
        }
    };
    let mut by_profile: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (i, u) in g1.iter().enumerate() {
        if !spend(&mut budget) {
            return Ok(None);
        }
        by_profile
            .entry(punctured_bytes(labeling, std::slice::from_ref(u))?)
            .or_default()
            .push(i);
    }
    for w in &g2 {
        if !spend(&mut budget) {
            return Ok(None);
        }
        let key = punctured_bytes(labeling, std::slice::from_ref(w))?;
        let Some(candidates) = by_profile.get(&key) else {
            continue;
        };
        for &i in candidates {
            let v1 = vec![g1[i].clone()];
            let v2 = vec![w.clone()];
            let permuted = apply_swap(labeling, &v1, &v2)?;
            if verify_swap(labeling, &permuted, mode)? {
                return Ok(Some(SwapCertificateND { v1, v2, permuted }));
            }
        }
    }
    Ok(None)
}

/// Looks for one label-1 grid point and one label-2 grid point whose
/// punctured window collections coincide; exchanging their labels then
/// leaves the profile unchanged. Scan order is row-major on both grids and
/// the first verified pair wins.
pub fn find_singleton_swap(labeling: &Labeling) -> Result<Option<SwapCertificateND>> {
    singleton_engine(labeling, SwapMode::Oriented, None)
}

/// [`find_singleton_swap`] for the orientation-blind setting: the swapped
/// labeling must additionally not be a rotation/reflection of the original,
/// and profile equality is checked on canonical profiles.
pub fn find_singleton_swap_symmetric(labeling: &Labeling) -> Result<Option<SwapCertificateND>> {
    singleton_engine(labeling, SwapMode::Canonical, None)
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn multiset_engine(
    labeling: &Labeling,
    max_size: usize,
    budget: u64,
    seed: u64,
    mode: SwapMode,
) -> Result<Option<SwapCertificateND>> {
    if max_size < 1 {
        return Err(Error::InvalidConfig("max_size must be at least 1".into()));
    }
    let mut budget = budget;
    if let Some(cert) = singleton_engine(labeling, mode, Some(&mut budget))? {
        return Ok(Some(cert));
    }
    if max_size == 1 || budget == 0 {
        return Ok(None);
    }
    let g1 = grid_points(labeling, 1)?;
    let g2 = grid_points(labeling, 2)?;

    let subset_bytes = |g: &[Vertex], ids: &[usize]| -> Result<Vec<u8>> {
        let points: Vec<Vertex> = ids.iter().map(|&i| g[i].clone()).collect();
        punctured_bytes(labeling, &points)
    };
    let certificate = |ids1: &[usize], ids2: &[usize]| -> Result<Option<SwapCertificateND>> {
        let v1: Vec<Vertex> = ids1.iter().map(|&i| g1[i].clone()).collect();
        let v2: Vec<Vertex> = ids2.iter().map(|&i| g2[i].clone()).collect();
        let permuted = apply_swap(labeling, &v1, &v2)?;
        Ok(
            verify_swap(labeling, &permuted, mode)?.then_some(SwapCertificateND {
                v1,
                v2,
                permuted,
            }),
        )
    };

    // Exact pass over all size-2 subsets, hashed on one side and probed
    // from the other in lexicographic order. Hash hits are confirmed by
    // byte equality before any certificate is attempted.
    if g1.len() >= 2 && g2.len() >= 2 {
        let mut by_hash: HashMap<u64, (usize, usize)> = HashMap::new();
        let mut exhausted = false;
        'build: for i in 0..g1.len() {
            for j in i + 1..g1.len() {
                if budget == 0 {
                    exhausted = true;
                    break 'build;
                }
                budget -= 1;
                let h = fnv1a64(&subset_bytes(&g1, &[i, j])?);
                by_hash.entry(h).or_insert((i, j));
            }
        }
        if !exhausted {
            'probe: for i in 0..g2.len() {
                for j in i + 1..g2.len() {
                    if budget == 0 {
                        break 'probe;
                    }
                    budget -= 1;
                    let bytes = subset_bytes(&g2, &[i, j])?;
                    let Some(&(a, b)) = by_hash.get(&fnv1a64(&bytes)) else {
                        continue;
                    };
                    if subset_bytes(&g1, &[a, b])? != bytes {
                        continue;
                    }
                    if let Some(cert) = certificate(&[a, b], &[i, j])? {
                        return Ok(Some(cert));
                    }
                }
            }
        }
    }

    // Randomized birthday search across all sizes up to max_size. Each side
    // keeps the first subset seen per hash; a cross-side hash hit is
    // confirmed byte-exactly, then verified as a full certificate.
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, &[g1.len() as u64, g2.len() as u64]));
    let mut seen1: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut seen2: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut flip = false;
    while budget > 0 {
        budget -= 1;
        flip = !flip;
        let (g, own, other, from_g1) = if flip {
            (&g1, &mut seen1, &seen2, true)
        } else {
            (&g2, &mut seen2, &seen1, false)
        };
        let want = 1 + rng.random_range(0..max_size);
        if want > g.len() {
            continue;
        }
        let mut ids = sample(&mut rng, g.len(), want).into_vec();
        ids.sort_unstable();
        let bytes = subset_bytes(g, &ids)?;
        let h = fnv1a64(&bytes);
        if let Some(partner) = other.get(&h) {
            let (ids1, ids2) = if from_g1 {
                (&ids, partner)
            } else {
                (partner, &ids)
            };
            if subset_bytes(&g1, ids1)? == subset_bytes(&g2, ids2)? {
                if let Some(cert) = certificate(ids1, ids2)? {
                    return Ok(Some(cert));
                }
            }
        }
        own.entry(h).or_insert(ids);
    }
    Ok(None)
}

/// Searches for equal-size label-1/label-2 grid subsets (up to `max_size`
/// points) with matching punctured window collections: an exact pass for
/// sizes one and two, then a seeded randomized collision search. `budget`
/// caps the total number of subset evaluations across all passes; with a
/// sufficient budget, `max_size = 1` reproduces [`find_singleton_swap`].
pub fn find_multiset_swap(
    labeling: &Labeling,
    max_size: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<SwapCertificateND>> {
    multiset_engine(labeling, max_size, budget, seed, SwapMode::Oriented)
}

/// [`find_multiset_swap`] with the orientation-blind verification of
/// [`find_singleton_swap_symmetric`].
pub fn find_multiset_swap_symmetric(
    labeling: &Labeling,
    max_size: usize,
    budget: u64,
    seed: u64,
) -> Result<Option<SwapCertificateND>> {
    multiset_engine(labeling, max_size, budget, seed, SwapMode::Canonical)
}

/// Exchanges labels 1 and 2 on the given vertex sets: `v1` must currently
/// carry label 1 everywhere and `v2` label 2. All other cells are copied
/// unchanged.
pub fn apply_swap(labeling: &Labeling, v1: &[Vertex], v2: &[Vertex]) -> Result<Labeling> {
    let config = *labeling.config();
    let mut cells = labeling.raw_cells().to_vec();
    for (set, want, put) in [(v1, 0u8, 1u8), (v2, 1u8, 0u8)] {
        for v in set {
            if v.d() != config.d || v.coords().iter().any(|&c| c >= config.n) {
                return Err(Error::OutOfBounds);
            }
            let idx = config.linear(v.coords());
            if cells[idx] != want {
                return Err(Error::BadSwapSets);
            }
            cells[idx] = put;
        }
    }
    Ok(Labeling::from_raw(config, cells))
}

/// True iff the two labelings differ yet produce identical profiles, which
/// is exactly what makes each of them unrecoverable from its profile.
pub fn verify_nonidentifiable(a: &Labeling, b: &Labeling) -> Result<bool> {
    if a.config() != b.config() {
        return Err(Error::ConfigMismatch);
    }
    Ok(a != b && profiles_equal(&shatter(a), &shatter(b))?)
}

/// Definitional identifiability oracle: enumerates every labeling of the
/// lattice and reports whether none of the others shares this labeling's
/// profile. Refuses instances with more than `cap` labelings
/// ([`DEFAULT_ENUMERATION_CAP`] is a sane limit).
pub fn brute_force_identifiable(labeling: &Labeling, cap: u128) -> Result<bool> {
    let config = *labeling.config();
    let cells = config.vertex_count();
    (config.q as u128)
        .checked_pow(cells as u32)
        .filter(|&t| t <= cap)
        .ok_or_else(|| {
            Error::InstanceTooLarge(format!(
                "{}^{} labelings exceed the enumeration cap {}",
                config.q, cells, cap
            ))
        })?;
    let target = shatter(labeling);
    let mut candidate = vec![0u8; cells];
    loop {
        if candidate != labeling.raw_cells() {
            let other = Labeling::from_raw(config, candidate.clone());
            if profiles_equal(&target, &shatter(&other))? {
                return Ok(false);
            }
        }
        // Base-q odometer; wrapping past the last labeling ends the scan.
        let mut i = cells;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            candidate[i] += 1;
            if (candidate[i] as usize) < config.q {
                break;
            }
            candidate[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{sample_labeling, Label, LatticeConfig};

    fn lab1d(n: usize, q: usize, r: usize, labels: &[Label]) -> Labeling {
        let config = LatticeConfig::new(1, n, q, r).unwrap();
        Labeling::from_labels(config, labels).unwrap()
    }

    #[test]
    fn nonidentifiability_is_shared_profile_plus_difference() {
        let a = lab1d(4, 2, 2, &[1, 2, 2, 1]);
        let b = lab1d(4, 2, 2, &[2, 1, 2, 2]);
        let c = lab1d(4, 2, 2, &[1, 2, 1, 2]);
        let d = lab1d(4, 2, 2, &[2, 1, 2, 1]);
        assert!(!verify_nonidentifiable(&a, &a).unwrap());
        assert!(verify_nonidentifiable(&a, &b).unwrap());
        assert!(!verify_nonidentifiable(&c, &d).unwrap());
    }

    #[test]
    fn oracle_on_tiny_lines() {
        let ambiguous = lab1d(4, 2, 2, &[1, 2, 2, 1]);
        assert!(!brute_force_identifiable(&ambiguous, DEFAULT_ENUMERATION_CAP).unwrap());
        let constant = lab1d(4, 2, 2, &[1, 1, 1, 1]);
        assert!(brute_force_identifiable(&constant, DEFAULT_ENUMERATION_CAP).unwrap());
        let single = lab1d(2, 2, 2, &[1, 2]);
        assert!(brute_force_identifiable(&single, DEFAULT_ENUMERATION_CAP).unwrap());
        match brute_force_identifiable(&ambiguous, 4) {
            Err(Error::InstanceTooLarge(_)) => {}
            other => panic!("expected instance-too-large, got {other:?}"),
        }
    }

    #[test]
    fn swap_application_and_involution() {
        let config = LatticeConfig::new(2, 4, 2, 2).unwrap();
        let labels: Vec<Label> = (0..16).map(|i| 1 + (i % 2) as Label).collect();
        let lab = Labeling::from_labels(config, &labels).unwrap();
        assert_eq!(apply_swap(&lab, &[], &[]).unwrap(), lab);
        let v1 = vec![Vertex::new(&[0, 0])];
        let v2 = vec![Vertex::new(&[0, 1])];
        let swapped = apply_swap(&lab, &v1, &v2).unwrap();
        assert_eq!(swapped.hamming_distance(&lab).unwrap(), 2);
        let back = apply_swap(&swapped, &v2, &v1).unwrap();
        assert_eq!(back, lab);
        assert!(matches!(
            apply_swap(&lab, &v2, &v1),
            Err(Error::BadSwapSets)
        ));
    }

    #[test]
    fn constant_line_cannot_be_spoiled() {
        let lab = lab1d(64, 2, 2, &[1; 64]);
        assert!(spoil_1d(&lab).unwrap().is_none());
    }

    #[test]
    fn interval_swap_on_a_subcritical_line() {
        let config = LatticeConfig::new(1, 512, 2, 6).unwrap();
        for seed in [11, 12, 13] {
            let lab = sample_labeling(&config, seed);
            let cert = match spoil_1d(&lab).unwrap() {
                Some(c) => c,
                None => continue,
            };
            let cells = lab.raw_cells();
            let (b1, b3) = (cert.b1.corner().coords()[0], cert.b3.corner().coords()[0]);
            let (b4, b6) = (cert.b4.corner().coords()[0], cert.b6.corner().coords()[0]);
            assert_eq!(cells[b1..b1 + 6], cells[b4..b4 + 6]);
            assert_eq!(cells[b3..b3 + 6], cells[b6..b6 + 6]);
            assert_eq!(cert.j, (b1 + 6, b3));
            assert_eq!(cert.j_prime, (b4 + 6, b6));
            assert!(verify_nonidentifiable(&lab, &cert.permuted).unwrap());
            return;
        }
        panic!("no certificate found on any seed; the regime should be easy");
    }

    #[test]
    fn interval_swap_rejects_wrong_shapes() {
        let config = LatticeConfig::new(2, 16, 2, 2).unwrap();
        let lab = sample_labeling(&config, 1);
        assert!(spoil_1d(&lab).is_err());
        let short = sample_labeling(&LatticeConfig::new(1, 8, 2, 2).unwrap(), 1);
        assert!(spoil_1d(&short).is_err());
    }

    #[test]
    fn orientation_blind_interval_swap() {
        let config = LatticeConfig::new(1, 640, 2, 6).unwrap();
        for seed in [21, 22, 23] {
            let lab = sample_labeling(&config, seed);
            let cert = match spoil_1d_symmetric(&lab).unwrap() {
                Some(c) => c,
                None => continue,
            };
            assert!(!equal_up_to_isomorphism(&lab, &cert.permuted).unwrap());
            assert!(
                profiles_equal(&shatter_symmetric(&lab), &shatter_symmetric(&cert.permuted))
                    .unwrap()
            );
            return;
        }
        panic!("no certificate found on any seed; the regime should be easy");
    }

    #[test]
    fn orientation_blind_swap_needs_asymmetric_ends() {
        let lab = lab1d(64, 2, 2, &[1; 64]);
        assert!(spoil_1d_symmetric(&lab).unwrap().is_none());
    }

    #[test]
    fn singleton_swap_on_planted_instance() {
        // All-1 background with a single 2 at a grid point: every label-1
        // grid point has the same punctured surroundings as the 2.
        let config = LatticeConfig::new(2, 16, 2, 2).unwrap();
        let mut labels = vec![1 as Label; 256];
        labels[8 * 16 + 8] = 2;
        let lab = Labeling::from_labels(config, &labels).unwrap();
        let cert = find_singleton_swap(&lab).unwrap().unwrap();
        assert_eq!(cert.v1, vec![Vertex::new(&[4, 4])]);
        assert_eq!(cert.v2, vec![Vertex::new(&[8, 8])]);
        assert_eq!(cert.permuted.hamming_distance(&lab).unwrap(), 2);
        assert!(verify_nonidentifiable(&lab, &cert.permuted).unwrap());
    }

    #[test]
    fn singleton_swap_without_grid_twos_is_not_found() {
        let config = LatticeConfig::new(2, 16, 2, 2).unwrap();
        let lab = Labeling::from_labels(config, &vec![1 as Label; 256]).unwrap();
        assert!(find_singleton_swap(&lab).unwrap().is_none());
    }

    #[test]
    fn multiset_size_one_matches_singleton_scan() {
        let config = LatticeConfig::new(2, 16, 2, 2).unwrap();
        let mut labels = vec![1 as Label; 256];
        labels[8 * 16 + 8] = 2;
        let lab = Labeling::from_labels(config, &labels).unwrap();
        let a = find_singleton_swap(&lab).unwrap().unwrap();
        let b = find_multiset_swap(&lab, 1, 1 << 20, 7).unwrap().unwrap();
        assert_eq!(a.v1, b.v1);
        assert_eq!(a.v2, b.v2);
        assert_eq!(a.permuted, b.permuted);
    }

    #[test]
    fn multiset_certificates_verify_when_found() {
        let config = LatticeConfig::new(2, 64, 2, 2).unwrap();
        let mut found = 0;
        for seed in 0..4u64 {
            let lab = sample_labeling(&config, 100 + seed);
            if let Some(cert) = find_multiset_swap(&lab, 4, 200_000, seed).unwrap() {
                assert!(cert.v1.len() == cert.v2.len() && cert.v1.len() <= 4);
                assert!(verify_nonidentifiable(&lab, &cert.permuted).unwrap());
                found += 1;
            }
        }
        assert!(found > 0, "no multiset certificate on four easy seeds");
    }
}
