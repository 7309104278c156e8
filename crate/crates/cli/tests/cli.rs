use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gmatrix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gmatrix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for p in [&a, &b] {
        let o = gmatrix(&["gen", "random", "--n", "6", "--seed", "1", "--out", path(p)]);
        assert!(o.status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let c = dir.path().join("c");
    gmatrix(&[
        "gen",
        "random",
        "--n",
        "6",
        "--seed",
        "2",
        "--out",
        path(&c),
    ]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}

#[test]
fn gen_cyclic_table() {
    let o = gmatrix(&["gen", "cyclic", "--n", "5"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(3).collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r.split_whitespace().count() == 3));
    let cyl = stdout(&gmatrix(&["gen", "cylinder", "--n", "5", "--seed", "4"]));
    assert!(cyl.starts_with("cylinder\nn 5\naxis "));
}

#[test]
fn analyze_reports_crossings_and_fstar() {
    let dir = tempfile::tempdir().unwrap();
    let co = dir.path().join("co");
    gmatrix(&["gen", "cocyclic", "--n", "6", "--out", path(&co)]);
    let o = gmatrix(&[
        "analyze",
        path(&co),
        "--targets",
        "crossings",
        "--format",
        "structured",
    ]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["crossings"], 3);

    let cy = dir.path().join("cy");
    gmatrix(&["gen", "cyclic", "--n", "5", "--out", path(&cy)]);
    let o = gmatrix(&[
        "analyze",
        path(&cy),
        "--targets",
        "fstar,f",
        "--format",
        "structured",
    ]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for row in doc["result"]["fstar"].as_array().unwrap() {
        assert_eq!(row[0], 0);
        assert_eq!(row[1], 0);
    }
    let f = doc["result"]["f"].as_array().unwrap();
    for (s, row) in f.iter().enumerate() {
        let row = row.as_array().unwrap();
        let width = 5 - s;
        for t in 0..=width {
            assert_eq!(row[t], row[width - t]);
        }
    }
}

#[test]
fn reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v");
    gmatrix(&[
        "gen",
        "random",
        "--n",
        "7",
        "--seed",
        "5",
        "--out",
        path(&v),
    ]);
    let a = gmatrix(&["analyze", path(&v), "--format", "structured"]);
    let b = gmatrix(&["analyze", path(&v), "--format", "structured"]);
    assert_eq!(a.stdout, b.stdout);
    let a = gmatrix(&["verify", "identities", "--n", "5..6", "--trials", "2"]);
    let b = gmatrix(&["verify", "identities", "--n", "5..6", "--trials", "2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_closed_form_suite_passes() {
    let o = gmatrix(&["verify", "appendix", "--n", "4..200"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS closed-form"));
}

#[test]
fn corrupted_input_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let v = dir.path().join("v");
    gmatrix(&[
        "gen",
        "random",
        "--n",
        "6",
        "--seed",
        "3",
        "--out",
        path(&v),
    ]);
    let mut lines: Vec<String> = fs::read_to_string(&v)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    lines[7] = lines[4].clone();
    fs::write(&v, lines.join("\n")).unwrap();
    let o = gmatrix(&[
        "verify",
        "all",
        "--input",
        path(&v),
        "--format",
        "structured",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let check = &doc["result"]["checks"][0];
    assert_eq!(check["passed"], false);
    let indices = check["witness"]["indices"].as_array().unwrap();
    assert!(indices.contains(&1.into()) && indices.contains(&4.into()));

    let o = gmatrix(&["analyze", path(&v)]);
    assert_eq!(o.status.code(), Some(3));

    fs::write(&v, "configuration\nrank 3\nn 2\n1 0 0\n1 zero 0\n").unwrap();
    let o = gmatrix(&["analyze", path(&v)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 5"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        gmatrix(&["gen", "spiral", "--n", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(
        gmatrix(&["verify", "bounds", "--n", "9..4"]).status.code(),
        Some(2)
    );
}

#[test]
fn crossings_table_csv() {
    let o = gmatrix(&["crossings", "--table", "--n", "4..12", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let last = text.lines().last().unwrap();
    assert_eq!(last, "12,150,345,495,150,495");
}

#[test]
fn motion_and_karcs_ledgers() {
    let dir = tempfile::tempdir().unwrap();
    let (v, w) = (dir.path().join("v"), dir.path().join("w"));
    gmatrix(&[
        "gen",
        "random",
        "--n",
        "5",
        "--seed",
        "1",
        "--out",
        path(&v),
    ]);
    gmatrix(&["gen", "cocyclic", "--n", "5", "--out", path(&w)]);
    let o = gmatrix(&["motion", path(&v), path(&w), "--format", "structured"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["result"]["matches_face_counts"], true);

    let c = dir.path().join("c");
    gmatrix(&[
        "gen",
        "cylinder",
        "--n",
        "6",
        "--seed",
        "2",
        "--out",
        path(&c),
    ]);
    let o = gmatrix(&["karcs", path(&c), "--format", "structured"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = doc["result"]["rows"].as_array().unwrap();
    assert_eq!(rows[0]["arcs"], 12);
    assert_eq!(rows[1]["arcs"], 18);
    assert!(doc["result"]["transitions"]
        .as_array()
        .unwrap()
        .iter()
        .all(|t| t["ok"] == true));
}

#[test]
fn golden_analyze() {
    let dir = env!("CARGO_MANIFEST_DIR");
    let o = Command::new(env!("CARGO_BIN_EXE_gmatrix"))
        .current_dir(dir)
        .args([
            "analyze",
            "tests/fixtures/cocyclic6.txt",
            "--format",
            "structured",
        ])
        .output()
        .unwrap();
    let golden = fs::read(Path::new(dir).join("tests/fixtures/cocyclic6.analyze.json")).unwrap();
    assert_eq!(o.stdout, golden);
}
