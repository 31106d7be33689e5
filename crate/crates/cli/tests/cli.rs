use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hasse_pareto::instances::random_corpus;
use hasse_pareto::solver::faces_from_json;
use hasse_pareto::{Instance, Signature};
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasse-pareto"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn fig4_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/fig4.json")
}

fn write_instance(dir: &TempDir, name: &str, instance: &Instance) -> String {
    let path = dir.path().join(name);
    fs::write(&path, instance.to_json()).unwrap();
    path.to_string_lossy().into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

#[test]
fn solve_two_variable_conflict() {
    let dir = TempDir::new().unwrap();
    let input = write_instance(
        &dir,
        "pair.json",
        &Instance::new(&Signature::new(2, [2]).unwrap(), &[(1, 2)]),
    );
    let output = path(&dir, "faces.json");
    for algorithm in ["basic", "improved"] {
        let out = run(&[
            "solve",
            "--input",
            &input,
            "--algorithm",
            algorithm,
            "--output",
            &output,
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert!(
            stdout(&out).starts_with("1 face, dims 1\n"),
            "{}",
            stdout(&out)
        );
        let faces = faces_from_json(&fs::read_to_string(&output).unwrap()).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].aggregates()[0].indices, vec![1, 2]);
    }
}

#[test]
fn solve_fig4_with_graphviz_exports() {
    let dir = TempDir::new().unwrap();
    let (output, diagram, tree) = (
        path(&dir, "f.json"),
        path(&dir, "d.dot"),
        path(&dir, "t.dot"),
    );
    let out = run(&[
        "solve",
        "--input",
        fig4_path().to_str().unwrap(),
        "--output",
        &output,
        "--dot-diagram",
        &diagram,
        "--dot-tree",
        &tree,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(
        stdout(&out).starts_with("2 faces, dims 5,6\n"),
        "{}",
        stdout(&out)
    );
    let diagram = fs::read_to_string(&diagram).unwrap();
    assert!(diagram.starts_with("digraph"));
    assert!(diagram.contains("blue") && diagram.contains("red"));
    assert!(fs::read_to_string(&tree).unwrap().contains("peripheries=2"));
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "bad.json");
    fs::write(&input, "{\"n\": 3,\n \"maximize\": [1,\n").unwrap();
    let out = run(&[
        "solve",
        "--input",
        &input,
        "--output",
        &path(&dir, "o.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    fs::write(&input, r#"{"n":2,"maximize":[],"constraints":[[1,3]]}"#).unwrap();
    let out = run(&[
        "solve",
        "--input",
        &input,
        "--output",
        &path(&dir, "o.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside 1..=2"));

    let out = run(&[
        "solve",
        "--input",
        &path(&dir, "missing.json"),
        "--output",
        &path(&dir, "o.json"),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    for (i, instance) in random_corpus(20, 6, 3).iter().enumerate() {
        let input = write_instance(&dir, &format!("c{i}.json"), instance);
        let out = run(&["oracle", "--input", &input, "--steps", "10"]);
        assert_eq!(out.status.code(), Some(0), "{}", instance.to_json());
        assert!(stdout(&out).starts_with("PASS"));
        let out = run(&["oracle", "--input", &input, "--steps", "10", "--corrupt"]);
        assert_eq!(out.status.code(), Some(1), "{}", instance.to_json());
        assert!(stdout(&out).starts_with("FAIL"));
    }
    let chain = write_instance(
        &dir,
        "chain.json",
        &Instance::new(&Signature::new(20, [2, 4]).unwrap(), &[]),
    );
    let out = run(&["oracle", "--input", &chain, "--steps", "10"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bench_writes_one_record_per_instance() {
    let dir = TempDir::new().unwrap();
    let csv = path(&dir, "bench.csv");
    let out = run(&[
        "bench",
        "--family",
        "chain",
        "--sizes",
        "5..13:4",
        "--instances",
        "3",
        "--p",
        "0.5",
        "--seed",
        "7",
        "--csv",
        &csv,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("family,n,seed,wall_time,nodes,branchings,faces,time_per_face")
    );
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[0] == "chain" && r[6] == "1"));
    assert_eq!(stdout(&out).lines().count(), 4);

    let again = path(&dir, "again.csv");
    run(&[
        "bench",
        "--family",
        "chain",
        "--sizes",
        "5..13:4",
        "--instances",
        "3",
        "--seed",
        "7",
        "--csv",
        &again,
    ]);
    // everything but the timings repeats
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                [f[0], f[1], f[2], f[4], f[5], f[6]].join(",")
            })
            .collect()
    };
    assert_eq!(strip(&text), strip(&fs::read_to_string(&again).unwrap()));

    let out = run(&[
        "bench", "--family", "grid", "--sizes", "4..2", "--csv", &csv,
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn screen_outputs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let (first, second) = (path(&dir, "a.csv"), path(&dir, "b.csv"));
    for csv in [&first, &second] {
        let out = run(&["screen", "--rows", "2", "--cols", "3", "--csv", csv]);
        assert_eq!(out.status.code(), Some(0));
        assert!(stdout(&out).starts_with("64 signatures\n"));
    }
    for suffix in ["", ".dimensions", ".faces", ".joint"] {
        let a = fs::read(path(&dir, &format!("a{suffix}.csv"))).unwrap();
        let b = fs::read(path(&dir, &format!("b{suffix}.csv"))).unwrap();
        assert_eq!(a, b, "{suffix}");
    }
    let records = fs::read_to_string(&first).unwrap();
    assert_eq!(records.lines().next(), Some("mask,faces,max_dimension"));
    assert_eq!(records.lines().nth(1), Some("0,1,0"));
    assert_eq!(records.lines().last(), Some("63,1,0"));
    let total: usize = fs::read_to_string(path(&dir, "a.faces.csv"))
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap())
        .sum();
    assert_eq!(total, 64);

    let out = run(&["screen", "--rows", "5", "--cols", "4", "--csv", &first]);
    assert_eq!(out.status.code(), Some(3));
}
