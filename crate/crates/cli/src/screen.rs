//! Exhaustive sweep over every signature of a small grid.

use std::collections::BTreeMap;
use std::io::Write;

use hasse_pareto::instances::make_grid;
use hasse_pareto::{build_diagram, solve, Algorithm, Signature, SolveOptions};
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Result};

pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScreenRecord {
    /// Bit `i - 1` set when variable `i` is maximized.
    pub mask: u64,
    pub faces: usize,
    pub max_dimension: usize,
}

#[derive(Clone, Debug)]
pub struct Screen {
    pub rows: usize,
    pub cols: usize,
    /// Sorted by mask.
    pub records: Vec<ScreenRecord>,
}

pub fn run_screen(rows: usize, cols: usize, cap: usize) -> Result<Screen> {
    let n = rows * cols;
    if n == 0 {
        return Err(CliError::Usage("grid must have at least one cell".into()));
    }
    if n > cap {
        return Err(CliError::Refused(format!(
            "{rows}x{cols} grid has {n} cells, cap is {cap}"
        )));
    }
    let constraints = make_grid(rows, cols);
    let options = SolveOptions::lean(Algorithm::Improved);
    let records = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let diagram = build_diagram(Signature::from_mask(n, mask)?, &constraints)?;
            let front = solve(&diagram, &options)?;
            Ok(ScreenRecord {
                mask,
                faces: front.face_count(),
                max_dimension: front.max_dimension(),
            })
        })
        .collect::<Result<Vec<_>, hasse_pareto::Error>>()?;
    Ok(Screen {
        rows,
        cols,
        records,
    })
}

impl Screen {
    pub fn dimension_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.max_dimension).or_default() += 1;
        }
        h
    }

    pub fn face_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry(r.faces).or_default() += 1;
        }
        h
    }

    /// Counts keyed by `(max_dimension, faces)`.
    pub fn joint_table(&self) -> BTreeMap<(usize, usize), usize> {
        let mut h = BTreeMap::new();
        for r in &self.records {
            *h.entry((r.max_dimension, r.faces)).or_default() += 1;
        }
        h
    }

    pub fn write_records<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        for r in &self.records {
            writer.serialize(r)?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    pub fn write_dimension_histogram<W: Write>(&self, out: W) -> Result<()> {
        write_pairs(out, ["max_dimension", "count"], self.dimension_histogram())
    }

    pub fn write_face_histogram<W: Write>(&self, out: W) -> Result<()> {
        write_pairs(out, ["faces", "count"], self.face_histogram())
    }

    pub fn write_joint_table<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["max_dimension", "faces", "count"])?;
        for ((d, f), c) in self.joint_table() {
            writer.write_record([d.to_string(), f.to_string(), c.to_string()])?;
        }
        writer.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

fn write_pairs<W: Write>(out: W, header: [&str; 2], counts: BTreeMap<usize, usize>) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(header)?;
    for (k, c) in counts {
        writer.write_record([k.to_string(), c.to_string()])?;
    }
    writer.flush().map_err(csv::Error::from)?;
    Ok(())
}
