//! End-to-end tests of the `mspace` binary: file outputs, validation
//! errors, determinism across runs and worker counts, and the full
//! dictionary -> network -> design -> MIDI pipeline.

use std::path::Path;
use std::process::{Command, Output};

fn mspace(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mspace"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|_| panic!("missing {name}"))
}

#[test]
fn dictionary_pcs_row_count() {
    let dir = tempfile::tempdir().unwrap();
    let out = mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(read(dir.path(), "dictionary.csv")).unwrap();
    assert_eq!(text.lines().count(), 13); // header + 12 classes
    assert!(text.starts_with("name,element,features\n"));
    // config logged with the resolved seed-free dictionary parameters
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("\"subcommand\":\"dictionary\""));
}

#[test]
fn dictionary_requires_nc() {
    let dir = tempfile::tempdir().unwrap();
    let out = mspace(&["dictionary", "--space", "pcs"], dir.path());
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("--nc"));
}

#[test]
fn dictionary_from_score_dedups() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("chords.json"),
        r#"{"tet":12,"chords":[[0,4,7],[7,11,2],[0,4,7]]}"#,
    )
    .unwrap();
    let out = mspace(
        &["dictionary", "--space", "score", "--input", "chords.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(read(dir.path(), "dictionary.csv")).unwrap();
    assert_eq!(text.lines().count(), 3); // header + 2 distinct chords
}

#[test]
fn network_by_name_edges_are_unit_distance() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path())
        .status
        .success());
    let out = mspace(
        &[
            "network",
            "--space",
            "vleadname",
            "--dict",
            "dictionary.csv",
            "--name",
            "O(1)",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let edges = String::from_utf8(read(dir.path(), "edges.csv")).unwrap();
    let mut rows = 0;
    for line in edges.lines().skip(1) {
        let weight: f64 = line.split(',').nth(2).unwrap().parse().unwrap();
        assert!((weight - 1.0).abs() < 1e-9, "weight {weight} is not 1");
        rows += 1;
    }
    assert!(rows > 0);
    let stats: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "stats.json")).unwrap();
    assert_eq!(stats["seed"], 0);
    assert!(stats["modularity"].is_number());
}

#[test]
fn network_determinism_with_prob_and_jobs() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path())
        .status
        .success());
    let run = |out_dir: &str, jobs: &str| {
        let out = mspace(
            &[
                "network", "--space", "vlead", "--dict", "dictionary.csv", "--thup",
                "1.5", "--thdw", "0.0", "--prob", "0.5", "--seed", "7", "--jobs", jobs,
                "--out-dir", out_dir,
            ],
            dir.path(),
        );
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        (
            read(&dir.path().join(out_dir), "nodes.csv"),
            read(&dir.path().join(out_dir), "edges.csv"),
        )
    };
    let a = run("a", "1");
    let b = run("b", "1");
    let c = run("c", "4");
    assert_eq!(a, b, "same seed must reproduce identical files");
    assert_eq!(a, c, "worker count must not change the output");
}

#[test]
fn network_rejects_inverted_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path())
        .status
        .success());
    let out = mspace(
        &[
            "network", "--space", "pcs", "--dict", "dictionary.csv", "--thup", "0.1",
            "--thdw", "0.2",
        ],
        dir.path(),
    );
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("thresholds"), "stderr: {stderr}");
}

#[test]
fn ego_network_writes_three_files() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path())
        .status
        .success());
    let out = mspace(
        &[
            "network", "--space", "pcs", "--dict", "dictionary.csv", "--ego", "[0,3,7]",
            "--thup-e", "2.0", "--thup", "2.0",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["nodes_ego.csv", "edges_ego.csv", "edges_alters.csv"] {
        assert!(dir.path().join(name).exists(), "missing {name}");
    }
}

#[test]
fn score_and_orchestration_networks() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("chords.json"),
        r#"{"tet":12,"chords":[[0,4,7],[7,11,2],[9,0,4],[0,4,7],[7,11,2]]}"#,
    )
    .unwrap();
    let out = mspace(
        &["network", "--space", "score", "--input", "chords.json", "--general"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stats: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "stats.json")).unwrap();
    let counts: Vec<u64> =
        stats["counts"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(counts.iter().sum::<u64>(), 5);

    std::fs::write(dir.path().join("orch.csv"), "fl,ob\n1,0\n0,1\n1,0\n0,1\n").unwrap();
    let out = mspace(
        &[
            "network", "--space", "orch", "--input", "orch.csv", "--out-dir", "orch_out",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let nodes = String::from_utf8(read(&dir.path().join("orch_out"), "nodes.csv")).unwrap();
    assert_eq!(nodes.lines().count(), 3); // header + 2 orchestration states
}

#[test]
fn pipeline_dictionary_network_design_midi() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(&["dictionary", "--space", "pcs", "--nc", "3"], dir.path())
        .status
        .success());
    assert!(mspace(
        &["network", "--space", "vlead", "--dict", "dictionary.csv", "--thup", "3.0"],
        dir.path()
    )
    .status
    .success());
    let out = mspace(
        &[
            "design", "--ref-nodes", "nodes.csv", "--ref-edges", "edges.csv", "--nnodes",
            "6", "--nedges", "2", "--seed", "5", "--midi", "design.mid",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let design: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "design.json")).unwrap();
    let items = design["items"].as_array().unwrap();
    assert!(!items.is_empty());
    let route: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "route.json")).unwrap();
    assert!(route["cost"].as_f64().unwrap() > 0.0);
    assert!(["exact", "greedy", "none"].contains(&route["matching"].as_str().unwrap()));

    // a second run with the same seed reproduces the sequence
    let out = mspace(
        &[
            "design", "--ref-nodes", "nodes.csv", "--ref-edges", "edges.csv", "--nnodes",
            "6", "--nedges", "2", "--seed", "5", "--out-dir", "again",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert_eq!(read(dir.path(), "design.json"), read(&dir.path().join("again"), "design.json"));

    let midi = read(dir.path(), "design.mid");
    assert_eq!(&midi[..4], b"MThd");
    assert_eq!(&midi[8..10], &[0, 0]);

    // singleton design emits one chord
    let out = mspace(
        &[
            "design", "--ref-nodes", "nodes.csv", "--ref-edges", "edges.csv", "--nnodes",
            "1", "--nedges", "1", "--nstart", "3", "--out-dir", "single",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let single: serde_json::Value =
        serde_json::from_slice(&read(&dir.path().join("single"), "design.json")).unwrap();
    assert_eq!(single["items"].as_array().unwrap().len(), 1);
}

#[test]
fn rhythmic_design_over_rhythm_network() {
    let dir = tempfile::tempdir().unwrap();
    assert!(mspace(
        &["dictionary", "--space", "rhythmP", "--n", "6", "--nc", "3"],
        dir.path()
    )
    .status
    .success());
    assert!(mspace(
        &["network", "--space", "rlead", "--dict", "dictionary.csv", "--thup", "2.0"],
        dir.path()
    )
    .status
    .success());
    let out = mspace(
        &[
            "design", "--kind", "rhythmic", "--ref-nodes", "nodes.csv", "--ref-edges",
            "edges.csv", "--nnodes", "4", "--nedges", "1", "--seed", "2",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let design: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "design.json")).unwrap();
    for item in design["items"].as_array().unwrap() {
        assert!(item.as_str().unwrap().starts_with('['));
    }
}

#[test]
fn sonify_writes_midi() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("data.txt"), "0 1\n1 3\n2 2\n3 5\n").unwrap();
    let out = mspace(
        &[
            "sonify", "--input", "data.txt", "--scale", "major", "--base-note", "60",
            "--octaves", "2", "--out", "music.mid",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let midi = read(dir.path(), "music.mid");
    assert_eq!(&midi[..4], b"MThd");

    let bad = mspace(
        &["sonify", "--input", "data.txt", "--scale", "nope"],
        dir.path(),
    );
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("unknown scale"));
}
