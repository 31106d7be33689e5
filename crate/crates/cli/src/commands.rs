//! Subcommands. Each reports to `out` and returns the exit status.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use hasse_pareto::hasse::diagram_to_dot;
use hasse_pareto::oracle::verify_front;
use hasse_pareto::solver::{faces_to_json, tree_to_dot, Binding};
use hasse_pareto::{solve, Algorithm, Instance, ParetoFace, SolveOptions};

use crate::bench::{run_bench, summarize, write_csv, BenchConfig};
use crate::screen::{run_screen, DEFAULT_CAP};
use crate::{CliError, Result, Status};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn create(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    Instance::from_json(&read(path)?).map_err(|source| CliError::Input {
        path: path.display().to_string(),
        source,
    })
}

fn report(out: &mut impl Write, line: std::fmt::Arguments<'_>) -> Result<()> {
    writeln!(out, "{line}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

/// One-line summary such as `2 faces, dims 5,6`.
pub fn face_summary(faces: &[ParetoFace]) -> String {
    let mut dims: Vec<usize> = faces.iter().map(ParetoFace::dimension).collect();
    dims.sort_unstable();
    dims.dedup();
    let dims: Vec<String> = dims.iter().map(usize::to_string).collect();
    let noun = if faces.len() == 1 { "face" } else { "faces" };
    format!("{} {noun}, dims {}", faces.len(), dims.join(","))
}

pub struct SolveArgs {
    pub input: PathBuf,
    pub algorithm: Algorithm,
    pub output: PathBuf,
    pub dot_diagram: Option<PathBuf>,
    pub dot_tree: Option<PathBuf>,
}

pub fn cmd_solve(args: &SolveArgs, out: &mut impl Write) -> Result<Status> {
    let instance = load_instance(&args.input)?;
    let diagram = instance.diagram().map_err(|source| CliError::Input {
        path: args.input.display().to_string(),
        source,
    })?;
    let mut options = SolveOptions::new(args.algorithm);
    options.retain_tree = args.dot_tree.is_some();
    let front = solve(&diagram, &options)?;
    write(&args.output, faces_to_json(&front.faces).as_bytes())?;
    if let Some(path) = &args.dot_diagram {
        write(path, diagram_to_dot(&diagram, "diagram").as_bytes())?;
    }
    if let Some(path) = &args.dot_tree {
        write(path, tree_to_dot(&front.tree, "resolution").as_bytes())?;
    }
    let s = &front.stats;
    report(out, format_args!("{}", face_summary(&front.faces)))?;
    report(
        out,
        format_args!(
            "nodes {} branchings {} leaves {} max depth {} pruned {}",
            s.nodes, s.branchings, s.leaves, s.max_depth, s.stuck_branches
        ),
    )?;
    Ok(Status::Success)
}

/// Negative control: flips the first boundary-fixed aggregate it finds, or
/// pins a free one to 1.
pub fn corrupt(faces: &[ParetoFace]) -> Option<Vec<ParetoFace>> {
    for (f, face) in faces.iter().enumerate() {
        for (a, agg) in face.aggregates().iter().enumerate() {
            let flipped = match agg.binding {
                Binding::FixedOne => Binding::FixedZero,
                Binding::FixedZero => Binding::FixedOne,
                Binding::Free(_) => Binding::FixedOne,
            };
            if let Ok(bad) = face.with_binding(a, flipped) {
                let mut out = faces.to_vec();
                out[f] = bad;
                return Some(out);
            }
        }
    }
    None
}

pub struct OracleArgs {
    pub input: PathBuf,
    pub steps: u32,
    pub corrupt: bool,
}

pub fn cmd_oracle(args: &OracleArgs, out: &mut impl Write) -> Result<Status> {
    let instance = load_instance(&args.input)?;
    let diagram = instance.diagram()?;
    let mut faces = solve(&diagram, &SolveOptions::lean(Algorithm::Improved))?.faces;
    if args.corrupt {
        faces =
            corrupt(&faces).ok_or_else(|| CliError::Usage("no face can be corrupted".into()))?;
    }
    let verdict = verify_front(&instance, &faces, args.steps)?;
    report(out, format_args!("{verdict}"))?;
    Ok(if verdict.passed() {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

pub struct BenchArgs {
    pub config: BenchConfig,
    pub csv: PathBuf,
}

pub fn cmd_bench(args: &BenchArgs, out: &mut impl Write) -> Result<Status> {
    let records = run_bench(&args.config)?;
    write_csv(&records, create(&args.csv)?)?;
    report(
        out,
        format_args!("n,instances,mean_time,mean_time_per_face,mean_faces"),
    )?;
    for s in summarize(&records) {
        report(
            out,
            format_args!(
                "{},{},{:.6e},{:.6e},{:.3}",
                s.n, s.instances, s.mean_time, s.mean_time_per_face, s.mean_faces
            ),
        )?;
    }
    Ok(Status::Success)
}

pub struct ScreenArgs {
    pub rows: usize,
    pub cols: usize,
    pub csv: PathBuf,
}

/// `records.csv` becomes `records.<suffix>.csv`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|e| e.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{suffix}.{ext}"))
}

pub fn cmd_screen(args: &ScreenArgs, out: &mut impl Write) -> Result<Status> {
    let screen = run_screen(args.rows, args.cols, DEFAULT_CAP)?;
    screen.write_records(create(&args.csv)?)?;
    screen.write_dimension_histogram(create(&sibling(&args.csv, "dimensions"))?)?;
    screen.write_face_histogram(create(&sibling(&args.csv, "faces"))?)?;
    screen.write_joint_table(create(&sibling(&args.csv, "joint"))?)?;
    report(out, format_args!("{} signatures", screen.records.len()))?;
    report(out, format_args!("max_dimension,count"))?;
    for (d, c) in screen.dimension_histogram() {
        report(out, format_args!("{d},{c}"))?;
    }
    Ok(Status::Success)
}
