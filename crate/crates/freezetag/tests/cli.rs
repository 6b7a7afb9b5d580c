use std::path::Path;
use std::process::{Command, Output};

use freezetag::format::{parse_instance, parse_schedule, serialize_instance};
use freezetag_core::{Instance, Metric, Spoke};

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freezetag")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn instance_kinds_round_trip() {
    let star = Instance::star(&[Spoke::new(1.5, 2), Spoke::new(3.0, 1)]).unwrap();
    let graph = Instance::graph(3, &[(0, 1, 1.0), (1, 2, 2.5)], 0, &[1, 0, 2]).unwrap();
    let points = Instance::points(2, &[vec![0.0, 0.0], vec![1.0, 2.0]], 0, &[1, 3], Metric::L1).unwrap();
    for inst in [star, graph, points] {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        assert_eq!(back, inst);
        assert_eq!(serialize_instance(&back), text);
    }
}

#[test]
fn parse_errors_name_the_field() {
    let e = parse_instance("{\"kind\":\"graph\",\"vertices\":2,\"source\":0,\n\"edges\":[[0,1,-2]],\"robots\":[1,1]}").unwrap_err();
    assert!(e.to_string().contains("edges[0][2]"), "{e}");
    let e = parse_instance("{\"kind\":\"star\",\n\"spokes\":[{\"length\":1.0}]}").unwrap_err();
    assert!(e.to_string().starts_with("line 2"), "{e}");
    assert!(parse_instance("{\"kind\":\"ring\"}").is_err());
}

#[test]
fn solve_writes_a_loadable_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("star.json");
    let sched = dir.path().join("out.json");
    let svg = dir.path().join("out.svg");
    std::fs::write(&inst, r#"{"kind":"star","spokes":[{"length":1,"robots":1},{"length":1,"robots":1},{"length":1,"robots":1},{"length":100,"robots":1}]}"#).unwrap();
    let out = cli(&["solve", "--input", path(&inst), "--algorithm", "exact", "--output", path(&sched), "--svg", path(&svg)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let schedule = parse_schedule(&std::fs::read_to_string(&sched).unwrap()).unwrap();
    assert_eq!(schedule.makespan, 102.0);
    assert_eq!(schedule.events.len(), 4);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("exact") && stdout.contains("102"), "{stdout}");

    let out = cli(&["solve", "--input", path(&inst), "--algorithm", "sef", "--oracle", "--output", path(&sched)]);
    assert!(out.status.success());
    assert_eq!(parse_schedule(&std::fs::read_to_string(&sched).unwrap()).unwrap().makespan, 104.0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("out.json");
    let missing = cli(&["solve", "--input", "/nonexistent/x.json", "--algorithm", "sef", "--output", path(&out_path)]);
    assert_eq!(missing.status.code(), Some(1));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind":"star","spokes":[{"length":1,"robots":0}]}"#).unwrap();
    let out = cli(&["solve", "--input", path(&bad), "--algorithm", "sef", "--output", path(&out_path)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));

    // precondition failures are validation errors too
    let mixed = dir.path().join("mixed.json");
    std::fs::write(&mixed, r#"{"kind":"star","spokes":[{"length":1,"robots":1},{"length":2,"robots":2}]}"#).unwrap();
    let out = cli(&["solve", "--input", path(&mixed), "--algorithm", "sef", "--output", path(&out_path)]);
    assert_eq!(out.status.code(), Some(2));

    let big = dir.path().join("big.json");
    assert!(cli(&["gen", "--family", "sef-bad", "--n", "8", "--output", path(&big)]).status.success());
    let out = cli(&["solve", "--input", path(&big), "--algorithm", "exact", "--max-robots", "10", "--output", path(&out_path)]);
    assert_eq!(out.status.code(), Some(3));

    let out = cli(&["gen", "--family", "rd-bad", "--n", "5", "--output", path(&big)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["sef-tight", "sef-bad", "rd-bad", "online-adversary", "random-star", "random-graph", "random-points"] {
        let a = dir.path().join(format!("{family}-a.json"));
        let b = dir.path().join(format!("{family}-b.json"));
        for p in [&a, &b] {
            let out = cli(&["gen", "--family", family, "--k", "2", "--n", "6", "--seed", "5", "--output", path(p)]);
            assert!(out.status.success(), "{family}: {}", String::from_utf8_lossy(&out.stderr));
        }
        let text = std::fs::read_to_string(&a).unwrap();
        assert_eq!(text, std::fs::read_to_string(&b).unwrap());
        parse_instance(&text).unwrap();
    }
}

#[test]
fn bench_csv_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let inputs = dir.path().join("in");
    std::fs::create_dir(&inputs).unwrap();
    for seed in ["1", "2", "3"] {
        let p = inputs.join(format!("s{seed}.json"));
        assert!(cli(&["gen", "--family", "random-star", "--n", "5", "--seed", seed, "--output", path(&p)]).status.success());
    }
    let mut tables = Vec::new();
    for run in 0..2 {
        let csv = dir.path().join(format!("bench{run}.csv"));
        let out = cli(&["bench", "--dir", path(&inputs), "--algorithms", "sef,tagteam,exact", "--csv", path(&csv), "--no-timing"]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        tables.push(std::fs::read_to_string(&csv).unwrap());
    }
    assert_eq!(tables[0], tables[1]);
    let lines: Vec<&str> = tables[0].lines().collect();
    assert_eq!(lines[0], "instance,algorithm,makespan,oracle,ratio,time_ms,lower_bound,robots,digest");
    assert_eq!(lines.len(), 1 + 9);
}
