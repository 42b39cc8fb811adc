//! In two or more dimensions, non-identifiability certificates come from
//! swapping the labels of well-separated cells whose surroundings look
//! alike once the cell itself is masked out.
//!
//! Run with: cargo run --example label_swap

use shotgun_lattice::{
    find_multiset_swap, find_singleton_swap, profiles_equal, sample_labeling, shatter,
    LatticeConfig, Result,
};

fn main() -> Result<()> {
    // 2x2 binary windows see only 16 patterns; a 256x256 grid repeats
    // every local view thousands of times.
    let config = LatticeConfig::new(2, 256, 2, 2)?;
    let truth = sample_labeling(&config, 11);

    match find_singleton_swap(&truth)? {
        Some(cert) => {
            println!(
                "swap a 1-cell at {:?} with a 2-cell at {:?}",
                cert.v1[0].coords(),
                cert.v2[0].coords()
            );
            println!(
                "  cells changed: {}, window multiset preserved: {}",
                truth.hamming_distance(&cert.permuted)?,
                profiles_equal(&shatter(&truth), &shatter(&cert.permuted))?
            );
        }
        None => println!("no singleton swap at this seed"),
    }

    // The multiset search generalizes to swapping whole sets of cells at
    // once; sizes above 1 appear when single swaps are ruled out.
    match find_multiset_swap(&truth, 3, 200_000, 0)? {
        Some(cert) => println!(
            "multiset search swapped {} cell(s) per side, {} cells changed",
            cert.v1.len(),
            truth.hamming_distance(&cert.permuted)?
        ),
        None => println!("multiset search exhausted its budget"),
    }
    Ok(())
}
