//! Profile-only reconstruction. The input is a multiset of window patterns;
//! nothing here may read ground-truth positions. Every write is forced: a
//! cell is set only when all evidence admits a single value, so a successful
//! run reproduces the sampled labeling exactly (oriented mode) or up to a
//! global symmetry (canonical mode).

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{
    advance, enumerate_boxes, extract_pattern, BoxRegion, Label, Labeling, LatticeConfig, Pattern,
    Vertex,
};
use crate::profile::{Profile, ProfileKind};
use crate::symmetry::{canonical_form, has_automorphism, orbit, transform_pattern, BoxTransform};

/// Why an assembly run stopped short of full recovery.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    CornerNotFound,
    Stalled,
    Conflict,
}

/// Progress counters for one assembly run. `determined_after_step` records
/// the determined-cell count after corner anchoring, after the first
/// percolation pass, and at the final fixpoint; it is non-decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssemblyReport {
    pub success: bool,
    pub determined_after_step: [usize; 3],
    pub step2_explored_boxes: u64,
    pub step3_filled: u64,
    pub failure_reason: Option<FailureReason>,
}

/// Result of an assembly run; the report is always present.
#[derive(Clone, Debug)]
pub struct AssemblyOutcome {
    pub labeling: Option<Labeling>,
    pub report: AssemblyReport,
}

/// Worklist discipline for percolation. The determined set it produces is
/// the same either way; the knob exists so tests can assert that.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PercolationOrder {
    Fifo,
    Lifo,
}

/// A labeling under construction: per-cell value plus a determined flag.
/// Determined cells never change value; a contradicting write is an error.
#[derive(Clone, Debug)]
pub struct PartialLabeling {
    config: LatticeConfig,
    cells: Vec<u8>,
    determined: Vec<bool>,
    count: usize,
}

impl PartialLabeling {
    pub fn new(config: LatticeConfig) -> Self {
        let len = config.vertex_count();
        PartialLabeling {
            config,
            cells: vec![0; len],
            determined: vec![false; len],
            count: 0,
        }
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    pub fn determined_count(&self) -> usize {
        self.count
    }

    pub fn is_complete(&self) -> bool {
        self.count == self.cells.len()
    }

    pub fn is_determined(&self, index: usize) -> bool {
        self.determined[index]
    }

    /// 1-based label of a determined cell, `None` otherwise.
    pub fn label_at(&self, index: usize) -> Option<Label> {
        self.determined[index].then(|| self.cells[index] as Label + 1)
    }

    /// Sets a cell to a raw (0-based) value. Returns whether the cell was
    /// newly determined; re-setting the same value is a no-op.
    pub fn set_raw(&mut self, index: usize, value: u8) -> Result<bool> {
        if self.determined[index] {
            if self.cells[index] != value {
                return Err(Error::Conflict {
                    index,
                    existing: self.cells[index] as u16 + 1,
                    incoming: value as u16 + 1,
                });
            }
            return Ok(false);
        }
        self.cells[index] = value;
        self.determined[index] = true;
        self.count += 1;
        Ok(true)
    }

    /// Writes a full cube pattern with its lowest corner at `corner`.
    /// Returns the number of newly determined cells.
    pub fn place(&mut self, pattern: &Pattern, corner: &[usize]) -> Result<usize> {
        assert!(pattern.mask().is_none(), "only full patterns can be placed");
        let region = BoxRegion::new(Vertex::new(corner), pattern.sides());
        if !region.fits(&self.config) {
            return Err(Error::OutOfBounds);
        }
        let mut newly = 0;
        let mut rel = vec![0usize; self.config.d];
        let mut abs = vec![0usize; self.config.d];
        let mut k = 0;
        loop {
            for i in 0..self.config.d {
                abs[i] = corner[i] + rel[i];
            }
            if self.set_raw(self.config.linear(&abs), pattern.raw_cells()[k])? {
                newly += 1;
            }
            k += 1;
            if !advance(&mut rel, pattern.sides()) {
                break;
            }
        }
        Ok(newly)
    }

    /// The fully determined pattern on an `s`-cube at `corner`, if complete.
    pub fn cube_pattern(&self, corner: &[usize], s: usize) -> Option<Pattern> {
        let sides = vec![s; self.config.d];
        let mut cells = Vec::with_capacity(s.pow(self.config.d as u32));
        let mut rel = vec![0usize; self.config.d];
        let mut abs = vec![0usize; self.config.d];
        loop {
            for i in 0..self.config.d {
                abs[i] = corner[i] + rel[i];
            }
            let idx = self.config.linear(&abs);
            if !self.determined[idx] {
                return None;
            }
            cells.push(self.cells[idx]);
            if !advance(&mut rel, &sides) {
                break;
            }
        }
        Some(Pattern::from_raw(&sides, cells, None))
    }

    /// The pattern on an `s`-cube at `corner` with undetermined cells masked
    /// out, plus how many cells are determined there.
    pub fn masked_cube_pattern(&self, corner: &[usize], s: usize) -> (Pattern, usize) {
        let sides = vec![s; self.config.d];
        let count = s.pow(self.config.d as u32);
        let mut cells = Vec::with_capacity(count);
        let mut mask = Vec::with_capacity(count);
        let mut determined = 0;
        let mut rel = vec![0usize; self.config.d];
        let mut abs = vec![0usize; self.config.d];
        loop {
            for i in 0..self.config.d {
                abs[i] = corner[i] + rel[i];
            }
            let idx = self.config.linear(&abs);
            cells.push(self.cells[idx]);
            mask.push(self.determined[idx]);
            determined += self.determined[idx] as usize;
            if !advance(&mut rel, &sides) {
                break;
            }
        }
        (Pattern::from_raw(&sides, cells, Some(mask)), determined)
    }

    /// Converts to a complete labeling once every cell is determined.
    pub fn to_labeling(&self) -> Option<Labeling> {
        self.is_complete()
            .then(|| Labeling::from_raw(self.config, self.cells.clone()))
    }
}

/// Occurrence data for one distinct `(r-1)`-sub-pattern: per corner offset,
/// the multiplicity-weighted occurrence total and the ids of window classes
/// containing it there.
struct SubEntry {
    totals: Vec<u64>,
    ids: Vec<Vec<u32>>,
}

/// Index answering "at which corner of which windows does this
/// `(r-1)`-pattern occur, and how often" for every sub-pattern present.
pub struct SubboxIndex {
    config: LatticeConfig,
    shards: Vec<Pattern>,
    mults: Vec<u64>,
    offsets: Vec<Vec<usize>>,
    entries: HashMap<Vec<u8>, SubEntry>,
}

/// The `2^d` corner positions of an `(r-1)`-cube inside an `r`-cube, as 0/1
/// coordinates in row-major order (all-zero first).
fn corner_offsets(d: usize) -> Vec<Vec<usize>> {
    let sides = vec![2usize; d];
    let mut cur = vec![0usize; d];
    let mut out = Vec::with_capacity(1 << d);
    loop {
        out.push(cur.clone());
        if !advance(&mut cur, &sides) {
            break;
        }
    }
    out
}

impl SubboxIndex {
    pub fn config(&self) -> &LatticeConfig {
        &self.config
    }

    /// Distinct window patterns, ascending by encoding.
    pub fn shards(&self) -> &[Pattern] {
        &self.shards
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.mults
    }

    /// Multiplicity-weighted occurrence totals of a sub-pattern at each of
    /// the `2^d` corner offsets, or `None` if it occurs nowhere.
    pub fn occurrence_totals(&self, pattern: &Pattern) -> Option<&[u64]> {
        self.entries.get(&pattern.encode()).map(|e| &e.totals[..])
    }

    /// Sum of all per-offset totals; equals `2^d` times total multiplicity.
    pub fn total_registrations(&self) -> u64 {
        self.entries
            .values()
            .map(|e| e.totals.iter().sum::<u64>())
            .sum()
    }
}

/// Registers every window's `2^d` corner sub-patterns.
pub fn build_subbox_index(profile: &Profile) -> Result<SubboxIndex> {
    let config = *profile.config();
    let shards_with_mult = profile.decode_shards()?;
    let offsets = corner_offsets(config.d);
    let sub_sides = vec![config.r - 1; config.d];
    let mut shards = Vec::with_capacity(shards_with_mult.len());
    let mut mults = Vec::with_capacity(shards_with_mult.len());
    let mut entries: HashMap<Vec<u8>, SubEntry> = HashMap::new();
    for (id, (shard, mult)) in shards_with_mult.into_iter().enumerate() {
        for (oi, o) in offsets.iter().enumerate() {
            let sub = shard.sub_pattern(o, &sub_sides);
            let entry = entries.entry(sub.encode()).or_insert_with(|| SubEntry {
                totals: vec![0; offsets.len()],
                ids: vec![Vec::new(); offsets.len()],
            });
            entry.totals[oi] += mult;
            entry.ids[oi].push(id as u32);
        }
        shards.push(shard);
        mults.push(mult);
    }
    Ok(SubboxIndex {
        config,
        shards,
        mults,
        offsets,
        entries,
    })
}

/// Is the `(r-1)`-pattern's occurrence count at most one at every corner
/// offset (and at least one somewhere)? This is the observable stand-in for
/// "occurs exactly once in the whole lattice": an interior duplicate always
/// drives some offset count to 2 or more.
pub fn is_unique_subbox(pattern: &Pattern, index: &SubboxIndex) -> Result<bool> {
    let want = index.config.r - 1;
    if pattern.d() != index.config.d || !pattern.sides().iter().all(|&s| s == want) {
        return Err(Error::InvalidConfig(format!(
            "uniqueness test expects a {want}-cube pattern"
        )));
    }
    if pattern.is_masked() {
        return Err(Error::InvalidConfig(
            "uniqueness test expects a full pattern".into(),
        ));
    }
    Ok(match index.entries.get(&pattern.encode()) {
        None => false,
        Some(e) => e.totals.iter().all(|&t| t <= 1) && e.totals.iter().any(|&t| t == 1),
    })
}

/// Writes the unique containing window at every corner offset where the
/// determined `(r-1)`-box at `region` occurs exactly once. Offsets whose
/// window placement would cross `[lo, hi)` are skipped: an occurrence count
/// of one names a single absolute placement, and if that placement is not
/// the one covering this region the write would be unsound.
fn extend_at(
    partial: &mut PartialLabeling,
    index: &SubboxIndex,
    t: &[usize],
    lo: &[usize],
    hi: &[usize],
    written: &mut Vec<Vec<usize>>,
) -> Result<usize> {
    let config = index.config;
    let r = config.r;
    let pattern = match partial.cube_pattern(t, r - 1) {
        Some(p) => p,
        None => return Ok(0),
    };
    let entry = match index.entries.get(&pattern.encode()) {
        Some(e) => e,
        None => return Ok(0),
    };
    if !(entry.totals.iter().all(|&c| c <= 1) && entry.totals.iter().any(|&c| c == 1)) {
        return Ok(0);
    }
    let mut newly = 0;
    for (oi, o) in index.offsets.iter().enumerate() {
        if entry.totals[oi] != 1 {
            continue;
        }
        let mut corner = vec![0usize; config.d];
        let mut ok = true;
        for i in 0..config.d {
            if t[i] < o[i] + lo[i] {
                ok = false;
                break;
            }
            corner[i] = t[i] - o[i];
            if corner[i] + r > hi[i] {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let shard = &index.shards[entry.ids[oi][0] as usize];
        let wrote = partial.place(shard, &corner)?;
        if wrote > 0 {
            newly += wrote;
            written.push(corner);
        }
    }
    Ok(newly)
}

/// Extends outward from a fully determined, uniquely occurring `(r-1)`-box:
/// each corner offset with occurrence count one pins the containing window,
/// whose remaining cells are written (conflicts are errors). Returns the
/// number of newly determined cells; re-running is idempotent.
pub fn extend_from_unique(
    partial: &mut PartialLabeling,
    region: &BoxRegion,
    index: &SubboxIndex,
) -> Result<usize> {
    let config = index.config;
    if *partial.config() != config {
        return Err(Error::ConfigMismatch);
    }
    if !region.fits(&config) || !region.is_cube(config.r - 1) {
        return Err(Error::InvalidConfig(
            "extension pivot must be an (r-1)-cube inside the lattice".into(),
        ));
    }
    if partial
        .cube_pattern(region.corner().coords(), config.r - 1)
        .is_none()
    {
        return Err(Error::InvalidConfig(
            "extension pivot must be fully determined".into(),
        ));
    }
    let lo = vec![0usize; config.d];
    let hi = vec![config.n; config.d];
    let mut written = Vec::new();
    extend_at(
        partial,
        index,
        region.corner().coords(),
        &lo,
        &hi,
        &mut written,
    )
}

/// Row-major indexing over the grid of `(r-1)`-box corners.
#[derive(Clone, Copy)]
struct PivotGrid {
    d: usize,
    per: usize,
}

impl PivotGrid {
    fn new(config: &LatticeConfig) -> Self {
        PivotGrid {
            d: config.d,
            per: config.n - config.r + 2,
        }
    }

    fn len(&self) -> usize {
        self.per.pow(self.d as u32)
    }

    fn linear(&self, c: &[usize]) -> usize {
        c.iter().fold(0, |a, &x| a * self.per + x)
    }

    fn coords(&self, mut idx: usize, out: &mut [usize]) {
        for k in (0..self.d).rev() {
            out[k] = idx % self.per;
            idx /= self.per;
        }
    }
}

/// Worklist percolation of unique-box extensions, confined to `[lo, hi)`.
/// Pivots are popped per `order`, checked once when fully determined, and
/// extension writes enqueue the surrounding pivots that may have become
/// determined. The determined set reached is order-independent because every
/// individual write is forced by the index alone.
fn percolate(
    partial: &mut PartialLabeling,
    index: &SubboxIndex,
    order: PercolationOrder,
    lo: &[usize],
    hi: &[usize],
    explored_counter: &mut u64,
) -> Result<()> {
    let config = index.config;
    let r = config.r;
    let grid = PivotGrid::new(&config);
    let mut explored = vec![false; grid.len()];
    let mut in_queue = vec![false; grid.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();

    // Pivot corners whose (r-1)-box lies inside the window.
    let pivot_lo: Vec<usize> = lo.to_vec();
    let pivot_hi: Vec<usize> = (0..config.d).map(|i| hi[i] - (r - 1)).collect();
    if pivot_lo.iter().zip(&pivot_hi).any(|(a, b)| a > b) {
        return Ok(());
    }

    let mut cur = pivot_lo.clone();
    loop {
        if partial.cube_pattern(&cur, r - 1).is_some() {
            let id = grid.linear(&cur);
            in_queue[id] = true;
            queue.push_back(id);
        }
        // Step the odometer within [pivot_lo, pivot_hi].
        let mut i = config.d;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] <= pivot_hi[i] {
                break;
            }
            cur[i] = pivot_lo[i];
        }
        if cur == pivot_lo {
            break;
        }
    }

    let mut t = vec![0usize; config.d];
    let mut written: Vec<Vec<usize>> = Vec::new();
    while let Some(id) = match order {
        PercolationOrder::Fifo => queue.pop_front(),
        PercolationOrder::Lifo => queue.pop_back(),
    } {
        in_queue[id] = false;
        if explored[id] {
            continue;
        }
        grid.coords(id, &mut t);
        if partial.cube_pattern(&t, r - 1).is_none() {
            continue;
        }
        explored[id] = true;
        *explored_counter += 1;
        written.clear();
        extend_at(partial, index, &t, lo, hi, &mut written)?;
        for corner in &written {
            // A newly completable pivot box must intersect the written
            // window, bounding its corner to this range.
            let wlo: Vec<usize> = (0..config.d)
                .map(|i| corner[i].saturating_sub(r - 2).max(pivot_lo[i]))
                .collect();
            let whi: Vec<usize> = (0..config.d)
                .map(|i| (corner[i] + r - 1).min(pivot_hi[i]))
                .collect();
            if wlo.iter().zip(&whi).any(|(a, b)| a > b) {
                continue;
            }
            let mut w = wlo.clone();
            loop {
                let wid = grid.linear(&w);
                if !explored[wid] && !in_queue[wid] {
                    in_queue[wid] = true;
                    queue.push_back(wid);
                }
                let mut i = config.d;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    w[i] += 1;
                    if w[i] <= whi[i] {
                        break;
                    }
                    w[i] = wlo[i];
                }
                if w == wlo {
                    break;
                }
            }
        }
    }
    Ok(())
}

fn count_determined_in(partial: &PartialLabeling, lo: &[usize], hi: &[usize]) -> usize {
    let config = *partial.config();
    let sides: Vec<usize> = (0..config.d).map(|i| hi[i] - lo[i]).collect();
    let mut rel = vec![0usize; config.d];
    let mut abs = vec![0usize; config.d];
    let mut n = 0;
    loop {
        for i in 0..config.d {
            abs[i] = lo[i] + rel[i];
        }
        n += partial.is_determined(config.linear(&abs)) as usize;
        if !advance(&mut rel, &sides) {
            break;
        }
    }
    n
}

enum CornerOutcome {
    NoAnchor(usize),
    Stalled,
    Grown,
}

/// Anchors one lattice corner: finds the `(r-1)`-pattern whose occurrences
/// are confined to the matching corner offset (so its single placement is
/// pinned to that lattice corner), writes it, and grows the surrounding
/// `min(2r, n)`-cube by confined unique-box extension.
fn anchor_and_grow(
    partial: &mut PartialLabeling,
    index: &SubboxIndex,
    corner_bits: &[usize],
) -> Result<CornerOutcome> {
    let config = index.config;
    let (n, r) = (config.n, config.r);
    let oi = corner_bits.iter().fold(0usize, |a, &b| a * 2 + b);
    let candidates: Vec<&Vec<u8>> = index
        .entries
        .iter()
        .filter(|(_, e)| {
            e.totals[oi] >= 1 && e.totals.iter().enumerate().all(|(j, &c)| j == oi || c == 0)
        })
        .map(|(k, _)| k)
        .collect();
    if candidates.len() != 1 {
        return Ok(CornerOutcome::NoAnchor(candidates.len()));
    }
    let anchor = Pattern::decode(candidates[0])?;
    let u: Vec<usize> = corner_bits
        .iter()
        .map(|&b| if b == 0 { 0 } else { n - r + 1 })
        .collect();
    partial.place(&anchor, &u)?;
    let m = (2 * r).min(n);
    let lo: Vec<usize> = corner_bits
        .iter()
        .map(|&b| if b == 0 { 0 } else { n - m })
        .collect();
    let hi: Vec<usize> = corner_bits
        .iter()
        .map(|&b| if b == 0 { m } else { n })
        .collect();
    let mut ignored = 0u64;
    percolate(
        partial,
        index,
        PercolationOrder::Fifo,
        &lo,
        &hi,
        &mut ignored,
    )?;
    if count_determined_in(partial, &lo, &hi) == m.pow(config.d as u32) {
        Ok(CornerOutcome::Grown)
    } else {
        Ok(CornerOutcome::Stalled)
    }
}

/// Finds the `(r-1)`-pattern occurring at the all-zero corner offset of some
/// window and at no other offset of any window; such a pattern occurs exactly
/// once in the lattice, at the origin. Writes it there and grows the origin
/// `min(2r, n)`-cube to full determination by confined extension.
pub fn step1_corner(index: &SubboxIndex) -> Result<PartialLabeling> {
    let mut partial = PartialLabeling::new(index.config);
    let origin = vec![0usize; index.config.d];
    match anchor_and_grow(&mut partial, index, &origin)? {
        CornerOutcome::NoAnchor(c) => Err(Error::CornerNotFound { candidates: c }),
        CornerOutcome::Stalled => Err(Error::Stalled),
        CornerOutcome::Grown => Ok(partial),
    }
}

/// Lattice-wide worklist percolation over unique `(r-1)`-boxes. Returns the
/// number of pivot boxes explored (popped fully determined and checked).
pub fn step2_percolate(
    partial: &mut PartialLabeling,
    index: &SubboxIndex,
    order: PercolationOrder,
) -> Result<u64> {
    if *partial.config() != index.config {
        return Err(Error::ConfigMismatch);
    }
    let lo = vec![0usize; index.config.d];
    let hi = vec![index.config.n; index.config.d];
    let mut explored = 0;
    percolate(partial, index, order, &lo, &hi, &mut explored)?;
    Ok(explored)
}

/// Masked-completion pass: for every window placement that is partially
/// determined, collect the window patterns matching its determined cells; if
/// they all induce the same values on the undetermined cells, write that
/// completion (any labeling with this profile must agree there). Iterates to
/// a fixpoint; returns the number of cells filled.
pub fn step3_finish(partial: &mut PartialLabeling, index: &SubboxIndex) -> Result<u64> {
    if *partial.config() != index.config {
        return Err(Error::ConfigMismatch);
    }
    let config = index.config;
    let r = config.r;
    let cells_per_box = r.pow(config.d as u32);
    let boxes = enumerate_boxes(&config, r)?;
    let mut filled = 0u64;
    loop {
        let mut pass_filled = 0u64;
        for b in &boxes {
            let corner = b.corner().coords();
            let (masked, determined) = partial.masked_cube_pattern(corner, r);
            if determined == 0 || determined == cells_per_box {
                continue;
            }
            let mut agreed: Option<Vec<u8>> = None;
            let mut consistent = true;
            for shard in &index.shards {
                if !masked.matches(shard) {
                    continue;
                }
                match &agreed {
                    None => agreed = Some(shard.raw_cells().to_vec()),
                    Some(first) => {
                        let same = masked
                            .mask()
                            .expect("partial box has a mask")
                            .iter()
                            .zip(first.iter().zip(shard.raw_cells()))
                            .all(|(&present, (&a, &b))| present || a == b);
                        if !same {
                            consistent = false;
                            break;
                        }
                    }
                }
            }
            let completion = match (consistent, agreed) {
                (true, Some(c)) => c,
                _ => continue,
            };
            let mask = masked.mask().expect("partial box has a mask").to_vec();
            let mut rel = vec![0usize; config.d];
            let mut abs = vec![0usize; config.d];
            let sides = vec![r; config.d];
            let mut k = 0;
            loop {
                if !mask[k] {
                    for i in 0..config.d {
                        abs[i] = corner[i] + rel[i];
                    }
                    if partial.set_raw(config.linear(&abs), completion[k])? {
                        pass_filled += 1;
                    }
                }
                k += 1;
                if !advance(&mut rel, &sides) {
                    break;
                }
            }
        }
        filled += pass_filled;
        if pass_filled == 0 {
            break;
        }
    }
    Ok(filled)
}

fn empty_report() -> AssemblyReport {
    AssemblyReport {
        success: false,
        determined_after_step: [0; 3],
        step2_explored_boxes: 0,
        step3_filled: 0,
        failure_reason: None,
    }
}

fn single_shard_outcome(profile: &Profile) -> Result<AssemblyOutcome> {
    let config = *profile.config();
    let shards = profile.decode_shards()?;
    let shard = &shards
        .first()
        .ok_or_else(|| Error::InvalidConfig("profile holds no patterns".into()))?
        .0;
    let mut partial = PartialLabeling::new(config);
    partial.place(shard, &vec![0; config.d])?;
    let total = config.vertex_count();
    Ok(AssemblyOutcome {
        labeling: partial.to_labeling(),
        report: AssemblyReport {
            success: true,
            determined_after_step: [total; 3],
            ..empty_report()
        },
    })
}

fn run_oriented(
    partial: &mut PartialLabeling,
    index: &SubboxIndex,
    order: PercolationOrder,
    report: &mut AssemblyReport,
) -> Result<()> {
    let config = index.config;
    let mut anchored = 0usize;
    let mut grown = 0usize;
    for bits in corner_offsets(config.d) {
        match anchor_and_grow(partial, index, &bits)? {
            CornerOutcome::NoAnchor(_) => {}
            CornerOutcome::Stalled => anchored += 1,
            CornerOutcome::Grown => {
                anchored += 1;
                grown += 1;
            }
        }
    }
    report.determined_after_step = [partial.determined_count(); 3];
    if anchored == 0 {
        report.failure_reason = Some(FailureReason::CornerNotFound);
        return Ok(());
    }
    if grown == 0 {
        report.failure_reason = Some(FailureReason::Stalled);
        return Ok(());
    }
    report.step2_explored_boxes += step2_percolate(partial, index, order)?;
    report.determined_after_step[1] = partial.determined_count();
    loop {
        let f = step3_finish(partial, index)?;
        report.step3_filled += f;
        if f == 0 {
            break;
        }
        report.step2_explored_boxes += step2_percolate(partial, index, order)?;
    }
    report.determined_after_step[2] = partial.determined_count();
    if partial.is_complete() {
        report.success = true;
    } else {
        report.failure_reason = Some(FailureReason::Stalled);
    }
    Ok(())
}

/// Reconstructs a labeling from its window-pattern profile, or reports why
/// it cannot. Corner anchoring is attempted at all `2^d` lattice corners
/// (each corner's rule is the mirrored origin rule and equally forced);
/// percolation and masked completion then alternate to a fixpoint. Every
/// write is forced, so success implies the output equals the profiled
/// labeling exactly.
pub fn assemble(profile: &Profile) -> Result<AssemblyOutcome> {
    assemble_ordered(profile, PercolationOrder::Fifo)
}

/// [`assemble`] with an explicit percolation order; the outcome does not
/// depend on it.
pub fn assemble_ordered(profile: &Profile, order: PercolationOrder) -> Result<AssemblyOutcome> {
    if profile.kind() != ProfileKind::Oriented {
        return Err(Error::InvalidConfig(
            "oriented assembly requires an oriented profile".into(),
        ));
    }
    let config = *profile.config();
    if config.n == config.r {
        return single_shard_outcome(profile);
    }
    let index = build_subbox_index(profile)?;
    let mut partial = PartialLabeling::new(config);
    let mut report = empty_report();
    match run_oriented(&mut partial, &index, order, &mut report) {
        Ok(()) => {}
        Err(Error::Conflict { .. }) => {
            report.success = false;
            report.failure_reason = Some(FailureReason::Conflict);
            return Ok(AssemblyOutcome {
                labeling: None,
                report,
            });
        }
        Err(e) => return Err(e),
    }
    let labeling = report.success.then(|| partial.to_labeling()).flatten();
    Ok(AssemblyOutcome { labeling, report })
}

/// All orientations of all window classes, with an index from (corner
/// offset, sub-pattern) to the oriented patterns containing it there.
struct OrientedPool {
    config: LatticeConfig,
    patterns: Vec<Pattern>,
    offsets: Vec<Vec<usize>>,
    by_corner: HashMap<(usize, Vec<u8>), Vec<u32>>,
}

fn build_oriented_pool(classes: &[(Pattern, u64)], config: LatticeConfig) -> OrientedPool {
    let offsets = corner_offsets(config.d);
    let sub_sides = vec![config.r - 1; config.d];
    let mut patterns = Vec::new();
    let mut by_corner: HashMap<(usize, Vec<u8>), Vec<u32>> = HashMap::new();
    for (rep, _) in classes {
        for p in orbit(rep) {
            let id = patterns.len() as u32;
            for (oi, o) in offsets.iter().enumerate() {
                let sub = p.sub_pattern(o, &sub_sides);
                by_corner.entry((oi, sub.encode())).or_default().push(id);
            }
            patterns.push(p);
        }
    }
    OrientedPool {
        config,
        patterns,
        offsets,
        by_corner,
    }
}

/// If every pool pattern that matches the determined cells of the `r`-box at
/// `corner` assigns the same values to its undetermined cells, write them.
/// The true window pattern (in the output's frame) always matches, so the
/// agreed completion is forced. Candidate ids, when given, restrict the scan.
fn complete_box_if_agreed(
    partial: &mut PartialLabeling,
    pool: &OrientedPool,
    corner: &[usize],
    candidates: Option<&[u32]>,
    written: &mut Vec<Vec<usize>>,
) -> Result<u64> {
    let config = pool.config;
    let r = config.r;
    let (masked, determined) = partial.masked_cube_pattern(corner, r);
    let total = r.pow(config.d as u32);
    if determined == total || determined == 0 {
        return Ok(0);
    }
    let mask = masked.mask().expect("partial box has a mask").to_vec();
    let mut agreed: Option<&Pattern> = None;
    let scan: Box<dyn Iterator<Item = &Pattern>> = match candidates {
        Some(ids) => Box::new(ids.iter().map(|&i| &pool.patterns[i as usize])),
        None => Box::new(pool.patterns.iter()),
    };
    for p in scan {
        if !masked.matches(p) {
            continue;
        }
        match agreed {
            None => agreed = Some(p),
            Some(first) => {
                let same = mask
                    .iter()
                    .zip(first.raw_cells().iter().zip(p.raw_cells()))
                    .all(|(&present, (&a, &b))| present || a == b);
                if !same {
                    return Ok(0);
                }
            }
        }
    }
    let completion = match agreed {
        Some(p) => p.raw_cells().to_vec(),
        None => return Ok(0),
    };
    let mut filled = 0u64;
    let sides = vec![r; config.d];
    let mut rel = vec![0usize; config.d];
    let mut abs = vec![0usize; config.d];
    let mut k = 0;
    loop {
        if !mask[k] {
            for i in 0..config.d {
                abs[i] = corner[i] + rel[i];
            }
            if partial.set_raw(config.linear(&abs), completion[k])? {
                filled += 1;
            }
        }
        k += 1;
        if !advance(&mut rel, &sides) {
            break;
        }
    }
    if filled > 0 {
        written.push(corner.to_vec());
    }
    Ok(filled)
}

/// Percolation for canonical profiles: pivots are fully determined,
/// automorphism-free `(r-1)`-boxes; each covering window placement is
/// completed when all orientation candidates containing the pivot at that
/// corner agree on the undetermined cells.
fn percolate_symmetric(
    partial: &mut PartialLabeling,
    pool: &OrientedPool,
    order: PercolationOrder,
    explored_counter: &mut u64,
) -> Result<()> {
    let config = pool.config;
    let r = config.r;
    let grid = PivotGrid::new(&config);
    let mut explored = vec![false; grid.len()];
    let mut in_queue = vec![false; grid.len()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut t = vec![0usize; config.d];
    for id in 0..grid.len() {
        grid.coords(id, &mut t);
        if partial.cube_pattern(&t, r - 1).is_some() {
            in_queue[id] = true;
            queue.push_back(id);
        }
    }
    let mut written: Vec<Vec<usize>> = Vec::new();
    while let Some(id) = match order {
        PercolationOrder::Fifo => queue.pop_front(),
        PercolationOrder::Lifo => queue.pop_back(),
    } {
        in_queue[id] = false;
        if explored[id] {
            continue;
        }
        grid.coords(id, &mut t);
        let pattern = match partial.cube_pattern(&t, r - 1) {
            Some(p) => p,
            None => continue,
        };
        explored[id] = true;
        *explored_counter += 1;
        if has_automorphism(&pattern) {
            continue;
        }
        let key = pattern.encode();
        written.clear();
        for (oi, o) in pool.offsets.iter().enumerate() {
            let mut corner = vec![0usize; config.d];
            let mut ok = true;
            for i in 0..config.d {
                if t[i] < o[i] {
                    ok = false;
                    break;
                }
                corner[i] = t[i] - o[i];
                if corner[i] + r > config.n {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let candidates = match pool.by_corner.get(&(oi, key.clone())) {
                Some(ids) => ids,
                None => continue,
            };
            complete_box_if_agreed(partial, pool, &corner, Some(candidates), &mut written)?;
        }
        for corner in &written {
            let wlo: Vec<usize> = (0..config.d)
                .map(|i| corner[i].saturating_sub(r - 2))
                .collect();
            let whi: Vec<usize> = (0..config.d)
                .map(|i| (corner[i] + r - 1).min(grid.per - 1))
                .collect();
            let mut w = wlo.clone();
            loop {
                let wid = grid.linear(&w);
                if !explored[wid] && !in_queue[wid] {
                    in_queue[wid] = true;
                    queue.push_back(wid);
                }
                let mut i = config.d;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    w[i] += 1;
                    if w[i] <= whi[i] {
                        break;
                    }
                    w[i] = wlo[i];
                }
                if w == wlo {
                    break;
                }
            }
        }
    }
    Ok(())
}

fn step3_symmetric(partial: &mut PartialLabeling, pool: &OrientedPool) -> Result<u64> {
    let config = pool.config;
    let boxes = enumerate_boxes(&config, config.r)?;
    let mut filled = 0u64;
    let mut written = Vec::new();
    loop {
        let mut pass = 0u64;
        for b in &boxes {
            pass += complete_box_if_agreed(partial, pool, b.corner().coords(), None, &mut written)?;
        }
        filled += pass;
        if pass == 0 {
            break;
        }
    }
    Ok(filled)
}

/// Anchor search for canonical profiles. Counts, over all window placements
/// and all `2^d` window corners, how often each `(r-1)`-orbit appears; a
/// count of one pins a single placement to a lattice corner. The written
/// orientation is the encoding-minimum over the frames that move that corner
/// to the origin, a choice that only fixes which member of the output's
/// isomorphism class is produced.
fn symmetric_anchor(
    classes: &[(Pattern, u64)],
    pool: &OrientedPool,
    partial: &mut PartialLabeling,
) -> Result<bool> {
    let config = pool.config;
    let sub_sides = vec![config.r - 1; config.d];
    let mut tally: BTreeMap<Vec<u8>, (u64, Vec<(usize, usize)>)> = BTreeMap::new();
    for (cid, (rep, mult)) in classes.iter().enumerate() {
        for (oi, o) in pool.offsets.iter().enumerate() {
            let sub = canonical_form(&rep.sub_pattern(o, &sub_sides));
            let slot = tally.entry(sub.encode()).or_insert_with(|| (0, Vec::new()));
            slot.0 += mult;
            slot.1.push((cid, oi));
        }
    }
    let hit = tally.into_iter().find(|(_, (count, _))| *count == 1);
    let (cid, oi) = match hit {
        Some((_, (_, pairs))) => pairs[0],
        None => return Ok(false),
    };
    let rep = &classes[cid].0;
    let origin_corner = vec![0usize; config.d];
    let mut best: Option<(Vec<u8>, Pattern)> = None;
    for g in BoxTransform::all(config.d) {
        if g.corner_image(&pool.offsets[oi]) != origin_corner {
            continue;
        }
        let t = transform_pattern(rep, &g);
        let e = t.encode();
        if best.as_ref().map_or(true, |(b, _)| e < *b) {
            best = Some((e, t));
        }
    }
    let (_, oriented) = best.expect("some frame maps any corner to the origin");
    partial.place(&oriented, &vec![0; config.d])?;
    Ok(true)
}

fn run_symmetric(
    partial: &mut PartialLabeling,
    classes: &[(Pattern, u64)],
    pool: &OrientedPool,
    order: PercolationOrder,
    report: &mut AssemblyReport,
) -> Result<()> {
    if !symmetric_anchor(classes, pool, partial)? {
        report.failure_reason = Some(FailureReason::CornerNotFound);
        return Ok(());
    }
    report.determined_after_step = [partial.determined_count(); 3];
    percolate_symmetric(partial, pool, order, &mut report.step2_explored_boxes)?;
    report.determined_after_step[1] = partial.determined_count();
    loop {
        let f = step3_symmetric(partial, pool)?;
        report.step3_filled += f;
        if f == 0 {
            break;
        }
        percolate_symmetric(partial, pool, order, &mut report.step2_explored_boxes)?;
    }
    report.determined_after_step[2] = partial.determined_count();
    if partial.is_complete() {
        report.success = true;
    } else {
        report.failure_reason = Some(FailureReason::Stalled);
    }
    Ok(())
}

/// Reconstruction from a canonical profile (patterns known only up to
/// rotation/reflection). On success the output equals the profiled labeling
/// composed with some global symmetry of the lattice; which orbit member is
/// returned is fixed by deterministic encoding-minimum tie-breaks.
pub fn assemble_symmetric(profile: &Profile) -> Result<AssemblyOutcome> {
    if profile.kind() != ProfileKind::Canonical {
        return Err(Error::InvalidConfig(
            "symmetric assembly requires a canonical profile".into(),
        ));
    }
    let config = *profile.config();
    if config.n == config.r {
        return single_shard_outcome(profile);
    }
    let classes = profile.decode_shards()?;
    let pool = build_oriented_pool(&classes, config);
    let mut partial = PartialLabeling::new(config);
    let mut report = empty_report();
    match run_symmetric(
        &mut partial,
        &classes,
        &pool,
        PercolationOrder::Fifo,
        &mut report,
    ) {
        Ok(()) => {}
        Err(Error::Conflict { .. }) => {
            report.success = false;
            report.failure_reason = Some(FailureReason::Conflict);
            return Ok(AssemblyOutcome {
                labeling: None,
                report,
            });
        }
        Err(e) => return Err(e),
    }
    let labeling = report.success.then(|| partial.to_labeling()).flatten();
    Ok(AssemblyOutcome { labeling, report })
}

/// Ground-truth diagnostics over the standard family of `2r`-boxes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OpennessStats {
    pub open_fraction: f64,
    pub closed_component_count: usize,
    pub max_closed_component_diameter: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Measures, over the `2r`-boxes with corners on the `r`-grid (snapped
/// inward at the far boundary), the fraction whose contained `(r-1)`-boxes
/// are all globally unique, and the weakly connected components of the
/// remaining closed boxes (adjacency: box distance at most `4r` in the
/// Chebyshev metric), reporting their count and maximum vertex diameter.
/// This reads ground truth; the assembler never calls it.
pub fn openness_stats(labeling: &Labeling) -> Result<OpennessStats> {
    let config = *labeling.config();
    let (n, r, d) = (config.n, config.r, config.d);
    if n < 2 * r {
        return Err(Error::InvalidConfig(format!(
            "openness statistics need n >= 2r, got n={n}, r={r}"
        )));
    }
    let mut counts: HashMap<Vec<u8>, u32> = HashMap::new();
    for b in enumerate_boxes(&config, r - 1)? {
        let p = extract_pattern(labeling, &b)?;
        *counts.entry(p.encode()).or_insert(0) += 1;
    }
    let unique = |corner: &[usize]| -> bool {
        let region = BoxRegion::cube(Vertex::new(corner), r - 1);
        let p = extract_pattern(labeling, &region).expect("sub-box fits");
        counts[&p.encode()] == 1
    };

    let mut axis_positions: Vec<usize> = (0..)
        .map(|k| k * r)
        .take_while(|&c| c + 2 * r <= n)
        .collect();
    if *axis_positions.last().unwrap() != n - 2 * r {
        axis_positions.push(n - 2 * r);
    }
    let mut corners: Vec<Vec<usize>> = Vec::new();
    let per = vec![axis_positions.len(); d];
    let mut idx = vec![0usize; d];
    loop {
        corners.push(idx.iter().map(|&i| axis_positions[i]).collect());
        if !advance(&mut idx, &per) {
            break;
        }
    }

    let mut closed: Vec<&Vec<usize>> = Vec::new();
    let mut open_count = 0usize;
    let sub_per = vec![r + 2; d];
    for corner in &corners {
        let mut all_unique = true;
        let mut off = vec![0usize; d];
        let mut sub = vec![0usize; d];
        loop {
            for i in 0..d {
                sub[i] = corner[i] + off[i];
            }
            if !unique(&sub) {
                all_unique = false;
                break;
            }
            if !advance(&mut off, &sub_per) {
                break;
            }
        }
        if all_unique {
            open_count += 1;
        } else {
            closed.push(corner);
        }
    }

    let mut uf = UnionFind::new(closed.len());
    let box_gap = |a: &[usize], b: &[usize]| -> usize {
        (0..d)
            .map(|i| a[i].abs_diff(b[i]).saturating_sub(2 * r - 1))
            .max()
            .unwrap_or(0)
    };
    for i in 0..closed.len() {
        for j in i + 1..closed.len() {
            if box_gap(closed[i], closed[j]) <= 4 * r {
                uf.union(i, j);
            }
        }
    }
    let mut diameters: HashMap<usize, usize> = HashMap::new();
    for i in 0..closed.len() {
        let root = uf.find(i);
        diameters.entry(root).or_insert(2 * r - 1);
    }
    for i in 0..closed.len() {
        for j in i + 1..closed.len() {
            if uf.find(i) == uf.find(j) {
                let span = (0..d)
                    .map(|k| closed[i][k].abs_diff(closed[j][k]) + 2 * r - 1)
                    .max()
                    .unwrap_or(0);
                let e = diameters.get_mut(&uf.find(i)).expect("root present");
                *e = (*e).max(span);
            }
        }
    }
    Ok(OpennessStats {
        open_fraction: open_count as f64 / corners.len() as f64,
        closed_component_count: diameters.len(),
        max_closed_component_diameter: diameters.values().copied().max().unwrap_or(0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::shatter;
    use crate::symmetry::{equal_up_to_isomorphism, shatter_symmetric};

    fn lab1d(n: usize, q: usize, r: usize, labels: &[Label]) -> Labeling {
        let config = LatticeConfig::new(1, n, q, r).unwrap();
        Labeling::from_labels(config, labels).unwrap()
    }

    #[test]
    fn index_registers_every_corner_subpattern() {
        let lab = lab1d(4, 4, 2, &[1, 2, 3, 4]);
        let profile = shatter(&lab);
        let index = build_subbox_index(&profile).unwrap();
        // 2 offsets x 3 windows.
        assert_eq!(index.total_registrations(), 6);
        let two = Pattern::from_labels(&[1], &[2], 4).unwrap();
        assert_eq!(index.occurrence_totals(&two), Some(&[1, 1][..]));
        assert!(is_unique_subbox(&two, &index).unwrap());
    }

    #[test]
    fn repeated_subpattern_is_not_unique() {
        let lab = lab1d(5, 2, 2, &[1, 2, 1, 2, 1]);
        let index = build_subbox_index(&shatter(&lab)).unwrap();
        let one = Pattern::from_labels(&[1], &[1], 2).unwrap();
        assert_eq!(index.occurrence_totals(&one), Some(&[2, 2][..]));
        assert!(!is_unique_subbox(&one, &index).unwrap());
        let absent = Pattern::from_labels(&[1], &[2], 3).unwrap();
        let lab2 = lab1d(4, 3, 2, &[1, 1, 1, 1]);
        let index2 = build_subbox_index(&shatter(&lab2)).unwrap();
        assert!(!is_unique_subbox(&absent, &index2).unwrap());
    }

    #[test]
    fn corner_anchor_grows_a_line() {
        let lab = lab1d(4, 4, 2, &[1, 2, 3, 4]);
        let index = build_subbox_index(&shatter(&lab)).unwrap();
        let partial = step1_corner(&index).unwrap();
        assert_eq!(partial.determined_count(), 4);
        assert_eq!(partial.to_labeling().unwrap(), lab);
    }

    #[test]
    fn constant_labeling_has_no_corner_anchor() {
        let lab = lab1d(5, 2, 2, &[1, 1, 1, 1, 1]);
        let index = build_subbox_index(&shatter(&lab)).unwrap();
        match step1_corner(&index) {
            Err(Error::CornerNotFound { candidates: 0 }) => {}
            other => panic!("expected corner-not-found, got {other:?}"),
        }
    }

    #[test]
    fn extension_writes_the_unique_window_and_is_idempotent() {
        let lab = lab1d(4, 4, 2, &[1, 2, 3, 4]);
        let index = build_subbox_index(&shatter(&lab)).unwrap();
        let config = *lab.config();
        let mut partial = PartialLabeling::new(config);
        partial.set_raw(0, 0).unwrap();
        let region = BoxRegion::cube(Vertex::new(&[0]), 1);
        let newly = extend_from_unique(&mut partial, &region, &index).unwrap();
        assert_eq!(newly, 1);
        assert_eq!(partial.label_at(1), Some(2));
        assert_eq!(
            extend_from_unique(&mut partial, &region, &index).unwrap(),
            0
        );
    }

    #[test]
    fn assemble_recovers_distinct_label_instances() {
        let lab = lab1d(4, 4, 2, &[1, 2, 3, 4]);
        let out = assemble(&shatter(&lab)).unwrap();
        assert!(out.report.success);
        assert_eq!(out.labeling.unwrap(), lab);

        let config = LatticeConfig::new(2, 5, 25, 2).unwrap();
        let labels: Vec<Label> = (1..=25).collect();
        let lab = Labeling::from_labels(config, &labels).unwrap();
        let out = assemble(&shatter(&lab)).unwrap();
        assert!(out.report.success);
        assert_eq!(out.labeling.unwrap(), lab);
        let expect = [25, 25, 25];
        assert_eq!(out.report.determined_after_step, expect);
    }

    #[test]
    fn assemble_is_order_invariant() {
        let lab = lab1d(8, 4, 3, &[1, 2, 3, 4, 1, 3, 2, 4]);
        let profile = shatter(&lab);
        let a = assemble_ordered(&profile, PercolationOrder::Fifo).unwrap();
        let b = assemble_ordered(&profile, PercolationOrder::Lifo).unwrap();
        assert_eq!(a.report.success, b.report.success);
        assert_eq!(a.labeling, b.labeling);
    }

    #[test]
    fn ambiguous_profile_never_yields_success() {
        // [1,2,2,1] and [2,1,2,2] share a profile, so neither is forced.
        let lab = lab1d(4, 2, 2, &[1, 2, 2, 1]);
        let out = assemble(&shatter(&lab)).unwrap();
        assert!(!out.report.success);
        assert!(out.labeling.is_none());
        assert!(out.report.failure_reason.is_some());
    }

    #[test]
    fn single_window_instance_is_returned_directly() {
        let config = LatticeConfig::new(2, 3, 3, 3).unwrap();
        let lab = crate::lattice::sample_labeling(&config, 3);
        let out = assemble(&shatter(&lab)).unwrap();
        assert!(out.report.success);
        assert_eq!(out.labeling.unwrap(), lab);
    }

    #[test]
    fn conflicting_write_is_reported() {
        let config = LatticeConfig::new(1, 4, 2, 2).unwrap();
        let mut partial = PartialLabeling::new(config);
        assert!(partial.set_raw(1, 0).unwrap());
        assert!(!partial.set_raw(1, 0).unwrap());
        match partial.set_raw(1, 1) {
            Err(Error::Conflict {
                index: 1,
                existing: 1,
                incoming: 2,
            }) => {}
            other => panic!("expected conflict, got {other:?}"),
        }
    }

    #[test]
    fn symmetric_assembly_recovers_up_to_frame() {
        // Strictly increasing line: the canonical profile cannot tell it
        // from its reversal, and the assembler commits to the frame with the
        // smallest anchor encoding, here the increasing one.
        let lab = lab1d(6, 6, 3, &[6, 5, 4, 3, 2, 1]);
        let out = assemble_symmetric(&shatter_symmetric(&lab)).unwrap();
        assert!(out.report.success);
        let got = out.labeling.unwrap();
        assert!(equal_up_to_isomorphism(&got, &lab).unwrap());
        assert_eq!(got.labels(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn symmetric_assembly_single_window() {
        let config = LatticeConfig::new(2, 2, 4, 2).unwrap();
        let lab = Labeling::from_labels(config, &[1, 2, 3, 4]).unwrap();
        let out = assemble_symmetric(&shatter_symmetric(&lab)).unwrap();
        assert!(out.report.success);
        assert!(equal_up_to_isomorphism(&out.labeling.unwrap(), &lab).unwrap());
    }

    #[test]
    fn symmetric_assembly_rejects_oriented_profiles() {
        let lab = lab1d(4, 2, 2, &[1, 2, 2, 1]);
        assert!(assemble_symmetric(&shatter(&lab)).is_err());
        assert!(assemble(&shatter_symmetric(&lab)).is_err());
    }

    #[test]
    fn openness_on_distinct_labels_is_full() {
        let lab = lab1d(6, 6, 2, &[1, 2, 3, 4, 5, 6]);
        let stats = openness_stats(&lab).unwrap();
        assert_eq!(stats.open_fraction, 1.0);
        assert_eq!(stats.closed_component_count, 0);
        assert_eq!(stats.max_closed_component_diameter, 0);
    }

    #[test]
    fn openness_on_constant_labeling_is_one_giant_component() {
        let lab = lab1d(8, 2, 2, &[1; 8]);
        let stats = openness_stats(&lab).unwrap();
        assert_eq!(stats.open_fraction, 0.0);
        assert_eq!(stats.closed_component_count, 1);
        // Boxes at corners 0, 2 and 4; extreme corners span 4 + (2r-1).
        assert_eq!(stats.max_closed_component_diameter, 7);

        let config = LatticeConfig::new(2, 8, 2, 2).unwrap();
        let lab = Labeling::from_labels(config, &[1; 64]).unwrap();
        let stats = openness_stats(&lab).unwrap();
        assert_eq!(stats.open_fraction, 0.0);
        assert_eq!(stats.closed_component_count, 1);
        assert_eq!(stats.max_closed_component_diameter, 7);
    }
}
