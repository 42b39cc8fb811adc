//! Openness is the geometric health check behind reconstruction: a 2r-box
//! is open when every (r-1)-sub-box in it has a globally unique pattern.
//! Open regions percolate; closed regions are where assembly can stall.
//!
//! Run with: cargo run --example openness

use shotgun_lattice::{openness_stats, sample_labeling, LatticeConfig, Result};

fn main() -> Result<()> {
    // Same geometry, two alphabet sizes: 32 labels make 2x2 sub-boxes
    // unique nearly everywhere, 2 labels make repeats unavoidable.
    for (q, note) in [(32usize, "rich alphabet"), (2usize, "poor alphabet")] {
        let config = LatticeConfig::new(2, 16, q, 3)?;
        let mut open = 0.0;
        let mut worst_diameter = 0usize;
        let trials = 20u64;
        for seed in 0..trials {
            let stats = openness_stats(&sample_labeling(&config, seed))?;
            open += stats.open_fraction;
            worst_diameter = worst_diameter.max(stats.max_closed_component_diameter);
        }
        println!(
            "q={q} ({note}): mean open fraction {:.3}, worst closed-component diameter {}",
            open / trials as f64,
            worst_diameter
        );
    }
    println!();
    println!("closed boxes cluster into components; their diameter bounds how");
    println!("far a stall can spread before unique surroundings wall it off.");
    Ok(())
}
