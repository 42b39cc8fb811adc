//! Monte Carlo sweeps over parameter grids, plus the on-disk formats the
//! command-line tool exchanges: labeling files and the sweep CSV. Sweeps are
//! deterministic functions of the sweep spec: per-trial seeds are derived
//! from the base seed and the cell/trial indices, and aggregation is
//! sequential.

use std::fs;
use std::path::Path;

use rayon::prelude::*;

use crate::assembler::{assemble, assemble_symmetric, openness_stats};
use crate::error::{Error, Result};
use crate::lattice::{mix_seed, sample_labeling, Label, Labeling, LatticeConfig};
use crate::profile::shatter;
use crate::spoiler::{
    find_singleton_swap, find_singleton_swap_symmetric, spoil_1d, spoil_1d_symmetric,
};
use crate::symmetry::{equal_up_to_isomorphism, shatter_symmetric};

/// Window side at which recovery switches from impossible to easy for
/// uniform labelings: `r^d = d ln n / ln q`, except that one dimension
/// needs twice that, `r = 2 ln n / ln q`.
pub fn critical_r(d: usize, n: f64, q: f64) -> Result<f64> {
    if d < 1 || !(n > 1.0) || !(q > 1.0) {
        return Err(Error::InvalidConfig(
            "critical_r needs d >= 1, n > 1, q > 1".into(),
        ));
    }
    let ratio = n.ln() / q.ln();
    Ok(if d == 1 {
        2.0 * ratio
    } else {
        (d as f64 * ratio).powf(1.0 / d as f64)
    })
}

/// Exposure margin of a parameter choice: `ln(q^{r^d}) / ln(n^d) - 1`,
/// positive when windows carry more than the information needed to pin
/// positions, negative below.
pub fn implied_epsilon(d: usize, n: usize, q: usize, r: usize) -> f64 {
    let rd = (r as f64).powi(d as i32);
    rd * (q as f64).ln() / (d as f64 * (n as f64).ln()) - 1.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    Oriented,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SweepTasks {
    pub assemble: bool,
    pub spoil: bool,
    pub openness: bool,
}

/// A parameter grid with trial count, base seed, mode and task selection.
/// Parsed from a flat `key = value` text format; see [`SweepSpec::parse`].
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub d: Vec<usize>,
    pub n: Vec<usize>,
    pub q: Vec<usize>,
    pub r: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub mode: SweepMode,
    pub tasks: SweepTasks,
}

fn parse_usize_list(value: &str, key: &str, line: usize) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in value.split(',') {
        let item = item.trim();
        if item.is_empty() {
            return Err(Error::Format(format!(
                "line {line}: empty item in list for '{key}'"
            )));
        }
        out.push(item.parse().map_err(|_| {
            Error::Format(format!(
                "line {line}: '{item}' is not a valid value for '{key}'"
            ))
        })?);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl SweepSpec {
    /// Parses the flat spec format: one `key = value` per line, `#` starts
    /// a comment. Keys `d`, `n`, `q`, `r` take comma-separated integer
    /// lists (the sweep runs their cartesian product), `trials` and `seed`
    /// take integers, `mode` is `oriented` or `symmetric`, and `tasks` is a
    /// comma-separated subset of `assemble`, `spoil`, `openness`. Required:
    /// `d`, `n`, `q`, `r`, `trials`. Defaults: seed 0, oriented mode,
    /// assemble only.
    pub fn parse(text: &str) -> Result<SweepSpec> {
        let (mut d, mut n, mut q, mut r) = (None, None, None, None);
        let (mut trials, mut seed, mut mode, mut tasks) = (None, None, None, None);
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| Error::Format(format!("line {line}: expected 'key = value'")))?;
            let (key, value) = (key.trim(), value.trim());
            let dup = |name: &str| Error::Format(format!("line {line}: duplicate key '{name}'"));
            match key {
                "d" => match d {
                    None => d = Some(parse_usize_list(value, key, line)?),
                    Some(_) => return Err(dup(key)),
                },
                "n" => match n {
                    None => n = Some(parse_usize_list(value, key, line)?),
                    Some(_) => return Err(dup(key)),
                },
                "q" => match q {
                    None => q = Some(parse_usize_list(value, key, line)?),
                    Some(_) => return Err(dup(key)),
                },
                "r" => match r {
                    None => r = Some(parse_usize_list(value, key, line)?),
                    Some(_) => return Err(dup(key)),
                },
                "trials" => match trials {
                    None => {
                        trials = Some(value.parse::<usize>().map_err(|_| {
                            Error::Format(format!("line {line}: bad trials value '{value}'"))
                        })?)
                    }
                    Some(_) => return Err(dup(key)),
                },
                "seed" => match seed {
                    None => {
                        seed = Some(value.parse::<u64>().map_err(|_| {
                            Error::Format(format!("line {line}: bad seed value '{value}'"))
                        })?)
                    }
                    Some(_) => return Err(dup(key)),
                },
                "mode" => match mode {
                    None => {
                        mode = Some(match value {
                            "oriented" => SweepMode::Oriented,
                            "symmetric" => SweepMode::Symmetric,
                            _ => {
                                return Err(Error::Format(format!(
                                    "line {line}: mode must be 'oriented' or 'symmetric'"
                                )))
                            }
                        })
                    }
                    Some(_) => return Err(dup(key)),
                },
                "tasks" => match tasks {
                    None => {
                        let mut t = SweepTasks::default();
                        for item in value.split(',') {
                            match item.trim() {
                                "assemble" => t.assemble = true,
                                "spoil" => t.spoil = true,
                                "openness" => t.openness = true,
                                other => {
                                    return Err(Error::Format(format!(
                                        "line {line}: unknown task '{other}'"
                                    )))
                                }
                            }
                        }
                        tasks = Some(t);
                    }
                    Some(_) => return Err(dup(key)),
                },
                other => return Err(Error::Format(format!("line {line}: unknown key '{other}'"))),
            }
        }
        let require = |name: &str, v: Option<Vec<usize>>| {
            v.filter(|l| !l.is_empty())
                .ok_or_else(|| Error::Format(format!("missing required key '{name}'")))
        };
        let spec = SweepSpec {
            d: require("d", d)?,
            n: require("n", n)?,
            q: require("q", q)?,
            r: require("r", r)?,
            trials: trials.ok_or_else(|| Error::Format("missing required key 'trials'".into()))?,
            seed: seed.unwrap_or(0),
            mode: mode.unwrap_or(SweepMode::Oriented),
            tasks: tasks.unwrap_or(SweepTasks {
                assemble: true,
                spoil: false,
                openness: false,
            }),
        };
        if spec.trials == 0 {
            return Err(Error::Format("trials must be at least 1".into()));
        }
        if !(spec.tasks.assemble || spec.tasks.spoil || spec.tasks.openness) {
            return Err(Error::Format("tasks must not be empty".into()));
        }
        Ok(spec)
    }
}

/// One grid cell's aggregated results. Columns for tasks that did not run
/// hold 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub d: usize,
    pub n: usize,
    pub q: usize,
    pub r: usize,
    pub implied_epsilon: f64,
    pub trials: usize,
    pub assemble_success_rate: f64,
    pub spoil_success_rate: f64,
    pub mean_open_fraction: f64,
    pub mean_determined_after_step2: f64,
}

#[derive(Default, Clone, Copy)]
struct TrialOutcome {
    assembled: bool,
    determined_after_2: f64,
    spoiled: bool,
    open_fraction: f64,
}

fn run_trial(
    config: &LatticeConfig,
    mode: SweepMode,
    tasks: SweepTasks,
    seed: u64,
) -> Result<TrialOutcome> {
    let labeling = sample_labeling(config, seed);
    let mut out = TrialOutcome::default();
    if tasks.assemble {
        let total = config.vertex_count() as f64;
        let outcome = match mode {
            SweepMode::Oriented => assemble(&shatter(&labeling))?,
            SweepMode::Symmetric => assemble_symmetric(&shatter_symmetric(&labeling))?,
        };
        out.determined_after_2 = outcome.report.determined_after_step[1] as f64 / total;
        out.assembled = outcome.report.success
            && match (&outcome.labeling, mode) {
                (Some(got), SweepMode::Oriented) => *got == labeling,
                (Some(got), SweepMode::Symmetric) => equal_up_to_isomorphism(got, &labeling)?,
                (None, _) => false,
            };
    }
    if tasks.spoil {
        out.spoiled = match (mode, config.d) {
            (SweepMode::Oriented, 1) => spoil_1d(&labeling)?.is_some(),
            (SweepMode::Oriented, _) => find_singleton_swap(&labeling)?.is_some(),
            (SweepMode::Symmetric, 1) => spoil_1d_symmetric(&labeling)?.is_some(),
            (SweepMode::Symmetric, _) => find_singleton_swap_symmetric(&labeling)?.is_some(),
        };
    }
    if tasks.openness {
        out.open_fraction = openness_stats(&labeling)?.open_fraction;
    }
    Ok(out)
}

/// Runs every grid cell of the sweep spec: `trials` independent instances per
/// cell, each sampled from a seed derived as `mix(base, cell, trial)`, with
/// the selected tasks measured per instance. Trials run in parallel, but
/// results are collected by trial index and reduced sequentially, so output
/// is independent of scheduling. Rows come back sorted by `(d, n, q, r)`.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    let mut cells = Vec::new();
    for &d in &spec.d {
        for &n in &spec.n {
            for &q in &spec.q {
                for &r in &spec.r {
                    cells.push((d, n, q, r));
                }
            }
        }
    }
    cells.sort_unstable();

    // Surface impossible cells before any work is spent.
    for &(d, n, q, r) in &cells {
        LatticeConfig::new(d, n, q, r)?;
        if spec.tasks.openness && n < 2 * r {
            return Err(Error::InvalidConfig(format!(
                "openness task needs n >= 2r, violated at d={d}, n={n}, q={q}, r={r}"
            )));
        }
        if spec.tasks.spoil && d == 1 {
            let need = match spec.mode {
                SweepMode::Oriented => 6 * r,
                SweepMode::Symmetric => 8 * r,
            };
            if n < need {
                return Err(Error::InvalidConfig(format!(
                    "1-dimensional spoil task needs n >= {need}, got n={n} at r={r}"
                )));
            }
        }
    }

    let mut rows = Vec::with_capacity(cells.len());
    for (cell_index, &(d, n, q, r)) in cells.iter().enumerate() {
        let config = LatticeConfig::new(d, n, q, r)?;
        let outcomes: Vec<TrialOutcome> = (0..spec.trials)
            .into_par_iter()
            .map(|trial| {
                let seed = mix_seed(spec.seed, &[cell_index as u64, trial as u64]);
                run_trial(&config, spec.mode, spec.tasks, seed)
            })
            .collect::<Result<_>>()?;
        let trials = spec.trials as f64;
        let mut row = SweepRow {
            d,
            n,
            q,
            r,
            implied_epsilon: implied_epsilon(d, n, q, r),
            trials: spec.trials,
            assemble_success_rate: 0.0,
            spoil_success_rate: 0.0,
            mean_open_fraction: 0.0,
            mean_determined_after_step2: 0.0,
        };
        for o in &outcomes {
            row.assemble_success_rate += o.assembled as u64 as f64;
            row.spoil_success_rate += o.spoiled as u64 as f64;
            row.mean_open_fraction += o.open_fraction;
            row.mean_determined_after_step2 += o.determined_after_2;
        }
        row.assemble_success_rate /= trials;
        row.spoil_success_rate /= trials;
        row.mean_open_fraction /= trials;
        row.mean_determined_after_step2 /= trials;
        rows.push(row);
    }
    Ok(rows)
}

pub const SWEEP_CSV_HEADER: &str =
    "d,n,q,r,implied_epsilon,trials,assemble_success_rate,spoil_success_rate,mean_open_fraction,mean_determined_after_step2";

/// Renders rows in the fixed CSV schema: pinned header, floats with six
/// decimal digits, one line per row, trailing newline.
pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.6},{},{:.6},{:.6},{:.6},{:.6}\n",
            row.d,
            row.n,
            row.q,
            row.r,
            row.implied_epsilon,
            row.trials,
            row.assemble_success_rate,
            row.spoil_success_rate,
            row.mean_open_fraction,
            row.mean_determined_after_step2,
        ));
    }
    out
}

const LABELING_MAGIC: &[u8; 4] = b"SGLB";
const LABELING_VERSION: u8 = 1;

/// Writes a labeling as `SGLB`, version byte, `d`/`n`/`q` as little-endian
/// u32, then one byte per cell (label minus one) in row-major order. The
/// window side is not part of the file; operations that need one take it as
/// a parameter.
pub fn write_labeling_file(path: &Path, labeling: &Labeling) -> Result<()> {
    let config = labeling.config();
    let mut bytes = Vec::with_capacity(13 + labeling.raw_cells().len());
    bytes.extend_from_slice(LABELING_MAGIC);
    bytes.push(LABELING_VERSION);
    for v in [config.d, config.n, config.q] {
        bytes.extend_from_slice(&(v as u32).to_le_bytes());
    }
    bytes.extend_from_slice(labeling.raw_cells());
    fs::write(path, bytes)?;
    Ok(())
}

/// Reads an `SGLB` file, attaching the window side `r` the caller intends
/// to work with (validated against the stored dimensions).
pub fn read_labeling_file(path: &Path, r: usize) -> Result<Labeling> {
    let bytes = fs::read(path)?;
    if bytes.len() < 17 {
        return Err(Error::Format("labeling file too short".into()));
    }
    if &bytes[..4] != LABELING_MAGIC {
        return Err(Error::Format("bad labeling file magic".into()));
    }
    if bytes[4] != LABELING_VERSION {
        return Err(Error::Format(format!(
            "unsupported labeling file version {}",
            bytes[4]
        )));
    }
    let field = |i: usize| -> usize {
        u32::from_le_bytes(bytes[5 + 4 * i..9 + 4 * i].try_into().expect("4 bytes")) as usize
    };
    let config = LatticeConfig::new(field(0), field(1), field(2), r)?;
    let cells = &bytes[17..];
    if cells.len() != config.vertex_count() {
        return Err(Error::Format(format!(
            "labeling file holds {} cells, config needs {}",
            cells.len(),
            config.vertex_count()
        )));
    }
    let labels: Vec<Label> = cells.iter().map(|&b| b as Label + 1).collect();
    Labeling::from_labels(config, &labels)
}
