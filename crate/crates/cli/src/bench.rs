//! Timing runs over the chain and square-grid families.

use std::fmt;
use std::time::Instant;

use hasse_pareto::instances::{make_chain, make_grid, random_signature};
use hasse_pareto::{build_diagram, solve, Algorithm, SolveOptions};
use serde::Serialize;

use crate::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Chain,
    /// Square grids; the size is the side length.
    Grid,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Chain => "chain",
            Family::Grid => "grid",
        })
    }
}

impl Family {
    pub fn constraints(self, size: usize) -> Vec<(usize, usize)> {
        match self {
            Family::Chain => make_chain(size),
            Family::Grid => make_grid(size, size),
        }
    }

    pub fn variables(self, size: usize) -> usize {
        match self {
            Family::Chain => size,
            Family::Grid => size * size,
        }
    }
}

/// One timed solve. Columns appear in the CSV in field order.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    /// Seconds spent in the solve call alone.
    pub wall_time: f64,
    pub nodes: usize,
    pub branchings: usize,
    pub faces: usize,
    pub time_per_face: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SizeSummary {
    pub n: usize,
    pub instances: usize,
    pub mean_time: f64,
    pub mean_time_per_face: f64,
    pub mean_faces: f64,
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub instances: usize,
    pub p: f64,
    pub seed: u64,
}

/// Signature seed of instance `i` of size `n`; stable across runs.
pub fn instance_seed(seed: u64, n: usize, i: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ ((n as u64) << 32) ^ i as u64
}

/// Solves every instance serially so timings do not compete for cores.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRecord>> {
    if !(0.0..=1.0).contains(&config.p) {
        return Err(CliError::Usage(format!(
            "p must lie in [0, 1], got {}",
            config.p
        )));
    }
    let options = SolveOptions::lean(Algorithm::Improved);
    let mut records = Vec::with_capacity(config.sizes.len() * config.instances);
    for &size in &config.sizes {
        let n = config.family.variables(size);
        let constraints = config.family.constraints(size);
        for i in 0..config.instances {
            let seed = instance_seed(config.seed, n, i);
            let diagram = build_diagram(random_signature(n, config.p, seed)?, &constraints)?;
            let start = Instant::now();
            let front = solve(&diagram, &options)?;
            let wall_time = start.elapsed().as_secs_f64();
            let faces = front.faces.len();
            records.push(BenchRecord {
                family: config.family.to_string(),
                n,
                seed,
                wall_time,
                nodes: front.stats.nodes,
                branchings: front.stats.branchings,
                faces,
                time_per_face: wall_time / faces.max(1) as f64,
            });
        }
    }
    Ok(records)
}

/// Per-size means, in order of first appearance.
pub fn summarize(records: &[BenchRecord]) -> Vec<SizeSummary> {
    let mut out: Vec<SizeSummary> = Vec::new();
    for r in records {
        let entry = match out.iter_mut().find(|s| s.n == r.n) {
            Some(e) => e,
            None => {
                out.push(SizeSummary {
                    n: r.n,
                    instances: 0,
                    mean_time: 0.0,
                    mean_time_per_face: 0.0,
                    mean_faces: 0.0,
                });
                out.last_mut().unwrap()
            }
        };
        entry.instances += 1;
        entry.mean_time += r.wall_time;
        entry.mean_time_per_face += r.time_per_face;
        entry.mean_faces += r.faces as f64;
    }
    for s in &mut out {
        let k = s.instances as f64;
        s.mean_time /= k;
        s.mean_time_per_face /= k;
        s.mean_faces /= k;
    }
    out
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = logs.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = logs.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

pub fn write_csv<W: std::io::Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}
