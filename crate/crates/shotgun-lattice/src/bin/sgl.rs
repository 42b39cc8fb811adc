//! Command-line front end over the library: every subcommand is a thin
//! wrapper around one library operation plus the on-disk formats.
//! Exit codes: 0 on success, 1 for domain outcomes (assembly failed, no
//! certificate found, labeling non-identifiable), 2 for usage, format and
//! validation errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use shotgun_lattice::{
    assemble, assemble_symmetric, brute_force_identifiable, find_multiset_swap,
    find_multiset_swap_symmetric, find_singleton_swap, find_singleton_swap_symmetric,
    openness_stats, read_labeling_file, read_shard_file, render_csv, run_sweep, sample_labeling,
    shatter, shatter_symmetric, spoil_1d, spoil_1d_symmetric, write_labeling_file,
    write_shard_file, LatticeConfig, ProfileKind, Result, SweepSpec, DEFAULT_ENUMERATION_CAP,
};

#[derive(Parser)]
#[command(
    name = "sgl",
    version,
    about = "Shotgun assembly of lattice labelings: sample, shatter, reassemble, spoil, sweep"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpoilStrategy {
    /// Interval rearrangement; requires d = 1.
    #[value(name = "1d")]
    OneD,
    /// Single-point label swap via punctured window collections.
    Singleton,
    /// Multi-point label swap, exact passes plus randomized search.
    Multiset,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a uniform labeling and write it to a labeling file.
    Generate {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Shatter a labeling into its window-pattern profile (a shard file).
    Shatter {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
        /// Record patterns up to rotation/reflection.
        #[arg(long)]
        symmetric: bool,
    },
    /// Reconstruct a labeling from a shard file.
    Assemble {
        #[arg(long)]
        shards: PathBuf,
        /// Labeling file written on success.
        #[arg(long)]
        out: PathBuf,
        /// Progress report (JSON), written on success and failure alike.
        #[arg(long)]
        report: PathBuf,
        /// Expect a canonical (orientation-blind) shard file.
        #[arg(long)]
        symmetric: bool,
    },
    /// Search for a non-identifiability certificate.
    Spoil {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum)]
        strategy: SpoilStrategy,
        /// Largest swap-set size for the multiset strategy.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Subset evaluations the multiset strategy may spend.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Require the certificate to survive rotations/reflections.
        #[arg(long)]
        symmetric: bool,
        /// Certificate JSON written when one is found.
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide identifiability of a small instance by brute force.
    Oracle {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        r: usize,
        /// Largest labeling count the enumeration accepts.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u128,
    },
    /// Run a Monte Carlo parameter sweep from a spec file.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Openness statistics of a labeling (ground-truth diagnostic).
    Stats {
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| shotgun_lattice::Error::Format(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Ok(true) = clean success, Ok(false) = domain failure (exit 1).
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Generate { d, n, q, seed, out } => {
            // The labeling file stores no window side; any valid one works
            // for sampling, which only needs the lattice shape.
            let config = LatticeConfig::new(d, n, q, 2)?;
            let labeling = sample_labeling(&config, seed);
            write_labeling_file(&out, &labeling)?;
            println!("wrote {} cells to {}", config.vertex_count(), out.display());
            Ok(true)
        }
        Command::Shatter {
            labeling,
            r,
            out,
            symmetric,
        } => {
            let lab = read_labeling_file(&labeling, r)?;
            let profile = if symmetric {
                shatter_symmetric(&lab)
            } else {
                shatter(&lab)
            };
            let mut bytes = Vec::new();
            write_shard_file(&profile, &mut bytes)?;
            std::fs::write(&out, bytes)?;
            println!(
                "{} windows, {} distinct, written to {}",
                profile.total(),
                profile.distinct(),
                out.display()
            );
            Ok(true)
        }
        Command::Assemble {
            shards,
            out,
            report,
            symmetric,
        } => {
            let profile = read_shard_file(std::fs::read(&shards)?.as_slice())?;
            let expected = if symmetric {
                ProfileKind::Canonical
            } else {
                ProfileKind::Oriented
            };
            if profile.kind() != expected {
                return Err(shotgun_lattice::Error::InvalidConfig(format!(
                    "shard file is {:?}, but the flags ask for {:?}",
                    profile.kind(),
                    expected
                )));
            }
            let outcome = if symmetric {
                assemble_symmetric(&profile)?
            } else {
                assemble(&profile)?
            };
            write_json(&report, &outcome.report)?;
            match outcome.labeling {
                Some(lab) => {
                    write_labeling_file(&out, &lab)?;
                    println!("assembled; labeling at {}", out.display());
                    Ok(true)
                }
                None => {
                    eprintln!(
                        "assembly failed: {:?}; report at {}",
                        outcome.report.failure_reason,
                        report.display()
                    );
                    Ok(false)
                }
            }
        }
        Command::Spoil {
            labeling,
            r,
            strategy,
            max_size,
            budget,
            seed,
            symmetric,
            out,
        } => {
            let lab = read_labeling_file(&labeling, r)?;
            let found = match (strategy, symmetric) {
                (SpoilStrategy::OneD, false) => spoil_1d(&lab)?.map(|c| serde_json::to_value(&c)),
                (SpoilStrategy::OneD, true) => {
                    spoil_1d_symmetric(&lab)?.map(|c| serde_json::to_value(&c))
                }
                (SpoilStrategy::Singleton, false) => {
                    find_singleton_swap(&lab)?.map(|c| serde_json::to_value(&c))
                }
                (SpoilStrategy::Singleton, true) => {
                    find_singleton_swap_symmetric(&lab)?.map(|c| serde_json::to_value(&c))
                }
                (SpoilStrategy::Multiset, false) => {
                    find_multiset_swap(&lab, max_size, budget, seed)?
                        .map(|c| serde_json::to_value(&c))
                }
                (SpoilStrategy::Multiset, true) => {
                    find_multiset_swap_symmetric(&lab, max_size, budget, seed)?
                        .map(|c| serde_json::to_value(&c))
                }
            };
            match found {
                Some(value) => {
                    let value = value.map_err(|e| shotgun_lattice::Error::Format(e.to_string()))?;
                    write_json(&out, &value)?;
                    println!("certificate written to {}", out.display());
                    Ok(true)
                }
                None => {
                    eprintln!("no certificate found");
                    Ok(false)
                }
            }
        }
        Command::Oracle { labeling, r, cap } => {
            let lab = read_labeling_file(&labeling, r)?;
            if brute_force_identifiable(&lab, cap)? {
                println!("identifiable");
                Ok(true)
            } else {
                println!("non-identifiable");
                Ok(false)
            }
        }
        Command::Sweep { spec, out } => {
            let text = std::fs::read_to_string(&spec)?;
            let spec = SweepSpec::parse(&text)?;
            let rows = run_sweep(&spec)?;
            std::fs::write(&out, render_csv(&rows))?;
            println!("{} rows written to {}", rows.len(), out.display());
            Ok(true)
        }
        Command::Stats { labeling, r, out } => {
            let lab = read_labeling_file(&labeling, r)?;
            let stats = openness_stats(&lab)?;
            write_json(&out, &stats)?;
            println!(
                "open fraction {:.6}, {} closed components",
                stats.open_fraction, stats.closed_component_count
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
