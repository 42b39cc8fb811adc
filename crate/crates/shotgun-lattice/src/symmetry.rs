//! Symmetries of cube patterns: the hyperoctahedral group (axis permutations
//! combined with axis reversals), canonical orbit representatives, and
//! profile/labeling comparison up to isomorphism.

use std::collections::BTreeMap;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::{advance, enumerate_boxes, extract_pattern, Labeling, Pattern, MAX_DIM};
use crate::profile::{Profile, ProfileKind};

/// One symmetry of the `d`-cube: output axis `i` reads input axis `perm[i]`,
/// reversed when `flip[i]` is set. The full group has `2^d * d!` elements.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BoxTransform {
    d: usize,
    perm: [usize; MAX_DIM],
    flip: [bool; MAX_DIM],
}

impl BoxTransform {
    pub fn new(perm: &[usize], flip: &[bool]) -> Self {
        let d = perm.len();
        assert!((1..=MAX_DIM).contains(&d));
        assert_eq!(flip.len(), d);
        let mut seen = [false; MAX_DIM];
        for &p in perm {
            assert!(p < d && !seen[p], "perm must be a permutation of 0..d");
            seen[p] = true;
        }
        let mut pa = [0usize; MAX_DIM];
        pa[..d].copy_from_slice(perm);
        let mut fa = [false; MAX_DIM];
        fa[..d].copy_from_slice(flip);
        BoxTransform {
            d,
            perm: pa,
            flip: fa,
        }
    }

    pub fn identity(d: usize) -> Self {
        let perm: Vec<usize> = (0..d).collect();
        BoxTransform::new(&perm, &vec![false; d])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm[..self.d]
    }

    pub fn flip(&self) -> &[bool] {
        &self.flip[..self.d]
    }

    pub fn is_identity(&self) -> bool {
        self.perm().iter().enumerate().all(|(i, &p)| p == i) && !self.flip().iter().any(|&f| f)
    }

    /// Every element of the group, identity first, in a fixed order
    /// (permutations lexicographic, then reversal sets by bitmask).
    pub fn all(d: usize) -> Vec<BoxTransform> {
        assert!((1..=MAX_DIM).contains(&d));
        let mut perms = Vec::new();
        let mut cur: Vec<usize> = (0..d).collect();
        let mut used = vec![false; d];
        fn rec(d: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == d {
                out.push(cur.clone());
                return;
            }
            for i in 0..d {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    rec(d, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        cur.clear();
        rec(d, &mut cur, &mut used, &mut perms);
        let mut out = Vec::with_capacity((1 << d) * perms.len());
        for perm in &perms {
            for mask in 0..(1u32 << d) {
                let flip: Vec<bool> = (0..d).map(|i| mask >> i & 1 == 1).collect();
                out.push(BoxTransform::new(perm, &flip));
            }
        }
        out
    }

    /// Image of a cell coordinate inside an `s`-cube.
    pub fn apply(&self, x: &[usize], s: usize) -> Vec<usize> {
        debug_assert_eq!(x.len(), self.d);
        (0..self.d)
            .map(|i| {
                let v = x[self.perm[i]];
                debug_assert!(v < s);
                if self.flip[i] {
                    s - 1 - v
                } else {
                    v
                }
            })
            .collect()
    }

    /// Induced action on cube corners, written as 0/1 per axis.
    pub fn corner_image(&self, corner: &[usize]) -> Vec<usize> {
        debug_assert_eq!(corner.len(), self.d);
        (0..self.d)
            .map(|i| {
                let b = corner[self.perm[i]];
                debug_assert!(b <= 1);
                if self.flip[i] {
                    1 - b
                } else {
                    b
                }
            })
            .collect()
    }

    /// `self` after `other`: `(self.compose(other)).apply(x) ==
    /// self.apply(&other.apply(x))`.
    pub fn compose(&self, other: &BoxTransform) -> BoxTransform {
        assert_eq!(self.d, other.d);
        let d = self.d;
        let mut perm = [0usize; MAX_DIM];
        let mut flip = [false; MAX_DIM];
        for i in 0..d {
            perm[i] = other.perm[self.perm[i]];
            flip[i] = self.flip[i] ^ other.flip[self.perm[i]];
        }
        BoxTransform::new(&perm[..d], &flip[..d])
    }

    pub fn inverse(&self) -> BoxTransform {
        let d = self.d;
        let mut perm = [0usize; MAX_DIM];
        let mut flip = [false; MAX_DIM];
        for i in 0..d {
            perm[self.perm[i]] = i;
        }
        for (j, p) in perm.iter().enumerate().take(d) {
            flip[j] = self.flip[*p];
        }
        BoxTransform::new(&perm[..d], &flip[..d])
    }
}

/// Applies a transform to a cube pattern (full or masked).
pub fn transform_pattern(p: &Pattern, g: &BoxTransform) -> Pattern {
    assert_eq!(p.d(), g.d());
    let s = p.sides()[0];
    assert!(p.sides().iter().all(|&x| x == s), "transforms act on cubes");
    let count = p.cell_count();
    let mut cells = vec![0u8; count];
    let mut mask = p.mask().map(|_| vec![false; count]);
    let sides = vec![s; p.d()];
    let mut x = vec![0usize; p.d()];
    let mut src = 0usize;
    loop {
        let y = g.apply(&x, s);
        let dst = crate::lattice::shape_index(&y, &sides);
        cells[dst] = p.raw_cells()[src];
        if let Some(m) = &mut mask {
            m[dst] = p.mask().unwrap()[src];
        }
        src += 1;
        if !advance(&mut x, &sides) {
            break;
        }
    }
    Pattern::from_raw(&sides, cells, mask)
}

/// Applies a transform to a whole labeling (the lattice is an `n`-cube).
pub fn transform_labeling(lab: &Labeling, g: &BoxTransform) -> Labeling {
    let config = *lab.config();
    assert_eq!(config.d, g.d());
    let n = config.n;
    let mut cells = vec![0u8; lab.raw_cells().len()];
    let sides = vec![n; config.d];
    let mut x = vec![0usize; config.d];
    let mut src = 0usize;
    loop {
        let y = g.apply(&x, n);
        cells[config.linear(&y)] = lab.raw_cells()[src];
        src += 1;
        if !advance(&mut x, &sides) {
            break;
        }
    }
    Labeling::from_raw(config, cells)
}

/// The minimum-encoding representative of a pattern's orbit.
pub fn canonical_form(p: &Pattern) -> Pattern {
    let mut best: Option<(Vec<u8>, Pattern)> = None;
    for g in BoxTransform::all(p.d()) {
        let t = transform_pattern(p, &g);
        let e = t.encode();
        if best.as_ref().map_or(true, |(b, _)| e < *b) {
            best = Some((e, t));
        }
    }
    best.unwrap().1
}

/// All distinct patterns in the orbit, ascending by encoding.
pub fn orbit(p: &Pattern) -> Vec<Pattern> {
    let mut seen: BTreeMap<Vec<u8>, Pattern> = BTreeMap::new();
    for g in BoxTransform::all(p.d()) {
        let t = transform_pattern(p, &g);
        seen.entry(t.encode()).or_insert(t);
    }
    seen.into_values().collect()
}

/// Does any non-identity symmetry fix the pattern?
pub fn has_automorphism(p: &Pattern) -> bool {
    BoxTransform::all(p.d())
        .iter()
        .skip(1)
        .any(|g| transform_pattern(p, g) == *p)
}

/// Collects the multiset of `r`-box patterns with each pattern collapsed to
/// its orbit representative. This is all an observer who cannot orient the
/// pieces gets to see.
pub fn shatter_symmetric(labeling: &Labeling) -> Profile {
    let config = *labeling.config();
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut cache: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    for b in enumerate_boxes(&config, config.r).expect("r validated by config") {
        let p = extract_pattern(labeling, &b).expect("enumerated boxes fit");
        let key = cache
            .entry(p.encode())
            .or_insert_with(|| canonical_form(&p).encode())
            .clone();
        *counts.entry(key).or_insert(0) += 1;
    }
    Profile::from_counts(config, ProfileKind::Canonical, counts)
}

/// Are two labelings equal after some whole-lattice symmetry?
pub fn equal_up_to_isomorphism(a: &Labeling, b: &Labeling) -> Result<bool> {
    if a.config() != b.config() {
        return Err(Error::ConfigMismatch);
    }
    Ok(BoxTransform::all(a.config().d)
        .iter()
        .any(|g| transform_labeling(a, g) == *b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticeConfig;
    use crate::lattice::{mix_seed, sample_labeling, Label};

    fn pat2(rows: [[Label; 2]; 2], q: usize) -> Pattern {
        let flat: Vec<Label> = rows.into_iter().flatten().collect();
        Pattern::from_labels(&[2, 2], &flat, q).unwrap()
    }

    #[test]
    fn group_has_full_order() {
        assert_eq!(BoxTransform::all(1).len(), 2);
        assert_eq!(BoxTransform::all(2).len(), 8);
        assert_eq!(BoxTransform::all(3).len(), 48);
        assert_eq!(BoxTransform::all(4).len(), 384);
        assert!(BoxTransform::all(3)[0].is_identity());
    }

    #[test]
    fn quarter_turn_matches_hand_example() {
        let g = BoxTransform::new(&[1, 0], &[false, true]);
        let p = pat2([[1, 2], [3, 4]], 4);
        let turned = transform_pattern(&p, &g);
        assert_eq!(turned, pat2([[3, 1], [4, 2]], 4));
    }

    #[test]
    fn compose_and_inverse_obey_group_laws() {
        let p = pat2([[1, 2], [3, 4]], 4);
        let all = BoxTransform::all(2);
        for g in &all {
            for h in &all {
                let two_steps = transform_pattern(&transform_pattern(&p, h), g);
                let one_step = transform_pattern(&p, &g.compose(h));
                assert_eq!(two_steps, one_step);
            }
            assert!(g.compose(&g.inverse()).is_identity());
            assert!(g.inverse().compose(g).is_identity());
        }
    }

    #[test]
    fn corner_subboxes_commute_with_transforms() {
        // The anchor logic relies on this law: taking a corner sub-cube and
        // transforming commute, with the corner moved by `corner_image`.
        let config = LatticeConfig::new(2, 3, 3, 3).unwrap();
        for seed in 0..5u64 {
            let lab = sample_labeling(&config, mix_seed(99, &[seed]));
            let p = extract_pattern(
                &lab,
                &crate::lattice::BoxRegion::cube(crate::lattice::Vertex::new(&[0, 0]), 3),
            )
            .unwrap();
            for g in BoxTransform::all(2) {
                let tp = transform_pattern(&p, &g);
                for corner in [[0, 0], [0, 1], [1, 0], [1, 1]] {
                    let sub = p.sub_pattern(&corner, &[2, 2]);
                    let moved = g.corner_image(&corner);
                    let tsub = tp.sub_pattern(&moved, &[2, 2]);
                    assert_eq!(transform_pattern(&sub, &g), tsub);
                }
            }
        }
    }

    #[test]
    fn canonical_form_is_orbit_minimum_and_invariant() {
        let p = pat2([[2, 1], [1, 1]], 2);
        assert_eq!(canonical_form(&p), pat2([[1, 1], [1, 2]], 2));
        for g in BoxTransform::all(2) {
            assert_eq!(
                canonical_form(&transform_pattern(&p, &g)),
                canonical_form(&p)
            );
        }
        assert_eq!(orbit(&p).len(), 4);
        assert!(orbit(&p).contains(&p));
    }

    #[test]
    fn masked_cells_travel_with_the_transform() {
        let g = BoxTransform::new(&[1, 0], &[false, true]);
        let masked = Pattern::from_raw(
            &[2, 2],
            vec![0, 1, 2, 3],
            Some(vec![false, true, true, true]),
        );
        let turned = transform_pattern(&masked, &g);
        // Cell (0,0) goes to (0,1) under this quarter turn.
        assert!(turned.is_present(0));
        assert!(!turned.is_present(1));
        assert_eq!(turned.raw_cells(), &[2, 0, 3, 1]);
    }

    #[test]
    fn automorphism_detection() {
        assert!(has_automorphism(&pat2([[1, 2], [2, 1]], 2)));
        assert!(!has_automorphism(&pat2([[1, 2], [3, 4]], 4)));
    }

    #[test]
    fn automorphisms_are_rare_for_moderate_patterns() {
        // 4x4 binary patterns: a union bound over the seven non-identity
        // symmetries puts the automorphism probability below 7 * 2^-6, so
        // the observed rate should sit well under 0.08 and above zero.
        let config = LatticeConfig::new(2, 4, 2, 2).unwrap();
        let mut hits = 0;
        let trials = 2000;
        for t in 0..trials {
            let lab = sample_labeling(&config, mix_seed(7, &[t]));
            let p = Pattern::from_raw(&[4, 4], lab.raw_cells().to_vec(), None);
            if has_automorphism(&p) {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        assert!(freq < 0.08, "automorphism frequency {freq}");
        assert!(freq > 0.015, "automorphism frequency {freq}");
    }

    #[test]
    fn symmetric_shatter_collapses_orientations() {
        let config = LatticeConfig::new(1, 3, 2, 2).unwrap();
        let lab = Labeling::from_labels(config, &[1, 2, 1]).unwrap();
        let profile = shatter_symmetric(&lab);
        assert_eq!(profile.kind(), ProfileKind::Canonical);
        assert_eq!(profile.distinct(), 1);
        assert_eq!(profile.total(), 2);
    }

    #[test]
    fn labeling_isomorphism() {
        let config = LatticeConfig::new(2, 2, 4, 2).unwrap();
        let a = Labeling::from_labels(config, &[1, 2, 3, 4]).unwrap();
        let b = Labeling::from_labels(config, &[4, 2, 3, 1]).unwrap();
        let c = Labeling::from_labels(config, &[2, 1, 3, 4]).unwrap();
        assert!(equal_up_to_isomorphism(&a, &b).unwrap());
        assert!(equal_up_to_isomorphism(&a, &a).unwrap());
        assert!(!equal_up_to_isomorphism(&a, &c).unwrap());
    }
}
