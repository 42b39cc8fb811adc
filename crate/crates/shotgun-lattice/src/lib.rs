//! Shotgun assembly of random lattice labelings.
//!
//! A labeling assigns one of `q` labels to every vertex of the cube
//! `{0..n-1}^d`. Shattering it yields the profile: the multiset of all
//! `r^d`-window patterns with their positions forgotten. This crate
//! simulates the whole pipeline around that loss of information:
//!
//! - [`lattice`]: configurations, labelings, box patterns, seeded sampling.
//! - [`profile`]: shattering, profile equality, punctured window
//!   collections, the shard file format.
//! - [`assembler`]: reconstruction from a profile alone, by corner
//!   anchoring, percolation of uniquely occurring sub-boxes, and masked
//!   completion; plus openness diagnostics of the underlying labeling.
//! - [`spoiler`]: certificates that a labeling is *not* recoverable,
//!   constructed by profile-preserving rearrangements and label swaps, and
//!   a brute-force identifiability oracle for small instances.
//! - [`symmetry`]: the rotation/reflection group of the cube, canonical
//!   pattern forms, and the orientation-blind variants of shattering.
//! - [`harness`]: deterministic Monte Carlo sweeps over parameter grids,
//!   the sweep CSV, and the labeling file format.
//!
//! The fastest way in is the `examples/` directory:
//!
//! - `roundtrip`: sample, shatter, reassemble, compare to ground truth.
//! - `interval_swap`: build and verify a 1-d rearrangement certificate.
//! - `label_swap`: find a 2-d label-swap certificate via punctured windows.
//! - `oracle_small`: exhaustive identifiability on tiny lines, cross-checked
//!   against the assembler and the spoiler.
//! - `threshold_sweep`: locate the recovery phase transition empirically.
//! - `openness`: measure the unique-window structure recovery relies on.
//! - `symmetric_mode`: reconstruction when patterns are only known up to
//!   rotation and reflection.
//!
//! The `sgl` binary exposes the same operations as subcommands
//! (`generate`, `shatter`, `assemble`, `spoil`, `oracle`, `sweep`,
//! `stats`) over the on-disk formats.

pub mod assembler;
pub mod error;
pub mod harness;
pub mod lattice;
pub mod profile;
pub mod spoiler;
pub mod symmetry;

pub use assembler::{
    assemble, assemble_ordered, assemble_symmetric, build_subbox_index, extend_from_unique,
    is_unique_subbox, openness_stats, step1_corner, step2_percolate, step3_finish, AssemblyOutcome,
    AssemblyReport, FailureReason, OpennessStats, PartialLabeling, PercolationOrder, SubboxIndex,
};
pub use error::{Error, Result};
pub use harness::{
    critical_r, implied_epsilon, read_labeling_file, render_csv, run_sweep, write_labeling_file,
    SweepMode, SweepRow, SweepSpec, SweepTasks,
};
pub use lattice::{
    mix_seed, sample_labeling, BoxRegion, Label, Labeling, LatticeConfig, Pattern, Vertex,
};
pub use profile::{
    grid_points, profiles_equal, punctured_profile, read_shard_file, shatter, write_shard_file,
    Profile, ProfileKind, PuncturedProfile,
};
pub use spoiler::{
    apply_swap, brute_force_identifiable, find_multiset_swap, find_multiset_swap_symmetric,
    find_singleton_swap, find_singleton_swap_symmetric, spoil_1d, spoil_1d_symmetric,
    verify_nonidentifiable, SwapCertificate1D, SwapCertificateND, DEFAULT_ENUMERATION_CAP,
};
pub use symmetry::{
    canonical_form, equal_up_to_isomorphism, has_automorphism, orbit, shatter_symmetric,
    transform_labeling, transform_pattern, BoxTransform,
};
