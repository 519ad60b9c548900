use std::process::Command;

use qiso_cli::Classification;

fn qiso(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qiso")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Classification {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, stdout, _) = qiso(&all);
    assert_eq!(code, 0);
    serde_json::from_str(&stdout).unwrap()
}

#[test]
fn adjoint_e6_rows() {
    let c = json(&["classify", "--type", "E6", "--lattice", "ad", "--char", "0"]);
    let rows: Vec<(Vec<&str>, u64, usize, bool)> = c
        .classes
        .iter()
        .map(|k| (k.omega.iter().map(String::as_str).collect(), k.order, k.component_group.order, k.isolated))
        .collect();
    assert_eq!(
        rows,
        vec![
            (vec!["a0"], 1, 1, true),
            (vec!["a2"], 2, 1, true),
            (vec!["a4"], 3, 3, true),
            (vec!["a0", "a1", "a6"], 3, 3, false),
            (vec!["a2", "a3", "a5"], 6, 3, false),
        ]
    );
    assert_eq!(c.classes[4].p_condition, "p ∉ {2,3}");
    assert_eq!(c.classes[2].lambda, vec!["2/3", "1", "4/3", "2", "4/3", "2/3"]);
}

#[test]
fn small_groups() {
    let a1 = json(&["classify", "--type", "A", "--rank", "1", "--lattice", "sc", "--char", "0"]);
    assert_eq!(a1.classes.len(), 2);
    assert!(a1.classes.iter().all(|k| k.isolated));
    let c3 = json(&["classify", "--type", "C", "--rank", "3", "--lattice", "ad", "--char", "2"]);
    assert_eq!(c3.classes.len(), 1);
    assert_eq!(c3.group.characteristic, 2);
}

#[test]
fn json_round_trips() {
    for args in [
        ["classify", "--type", "E7", "--lattice", "ad"],
        ["classify", "--type", "D6", "--lattice", "z1"],
        ["classify", "--type", "A2xB2", "--lattice", "sc"],
    ] {
        let c = json(&args);
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Classification>(&text).unwrap(), c);
    }
}

#[test]
fn verify_passes() {
    for args in [
        ["--type", "D", "--rank", "4", "--lattice", "z1", "--char", "0"],
        ["--type", "G", "--rank", "2", "--lattice", "sc", "--char", "3"],
        ["--type", "A", "--rank", "2", "--lattice", "ad", "--char", "0"],
    ] {
        let mut all = vec!["verify"];
        all.extend(args);
        let (code, stdout, _) = qiso(&all);
        assert_eq!(code, 0, "{stdout}");
        assert!(stdout.ends_with("PASS\n"));
    }
    let (_, g2, _) = qiso(&["verify", "--type", "G2", "--lattice", "sc", "--char", "3"]);
    assert!(g2.contains("prime to p: {a0,a1}"));
    let (_, a2, _) = qiso(&["verify", "--type", "A2", "--lattice", "ad"]);
    assert!(a2.contains("2 oracle orbits"));
}

#[test]
fn usage_errors() {
    for args in [
        vec!["classify", "--type", "Q", "--rank", "3"],
        vec!["classify", "--type", "B", "--rank", "1"],
        vec!["classify", "--type", "C", "--rank", "3", "--char", "6"],
        vec!["classify", "--type", "D5", "--lattice", "z7"],
        vec!["classify", "--type", "A"],
        vec!["verify", "--type", "E8"],
        vec!["classify"],
    ] {
        let (code, _, stderr) = qiso(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!stderr.is_empty());
    }
}

#[test]
fn tables_are_stable() {
    let (code, first, _) = qiso(&["tables"]);
    assert_eq!(code, 0);
    let (_, second, _) = qiso(&["tables"]);
    assert_eq!(first, second);
    let (_, one, _) = qiso(&["tables", "--table", "1"]);
    let e7 = one.lines().find(|l| l.starts_with("E7")).unwrap();
    assert!(e7.contains("z7") && e7.split_whitespace().any(|w| w == "2"));
    let (_, two, _) = qiso(&["tables", "--table", "2", "--rank", "4"]);
    assert!(two.contains("B4 (ad), char 0: 5 classes"));
    let (_, three, _) = qiso(&["tables", "--table", "3"]);
    assert!(three.contains("E7 (ad), char 0: 8 classes"));
}

#[test]
fn out_writes_a_file() {
    let path = std::env::temp_dir().join(format!("qiso-{}.json", std::process::id()));
    let p = path.to_str().unwrap();
    let (code, stdout, _) = qiso(&["classify", "--type", "F4", "--format", "json", "--out", p]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let c: Classification = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(c.classes.len(), 5);
    std::fs::remove_file(path).unwrap();
}
