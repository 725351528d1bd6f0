use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn coxhecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_coxhecke")).args(args).output().expect("binary runs")
}

fn json_of(args: &[&str]) -> Value {
    let out = coxhecke(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coxhecke-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn group_summaries() {
    let v = json_of(&["group", "--type", "H3xG2"]);
    assert_eq!(v["N"], 21);
    assert_eq!(v["order"], 1440);
    assert_eq!(v["degrees"], serde_json::json!([2, 2, 6, 6, 10]));

    let dir = scratch("affine");
    let path = dir.join("affine.json");
    std::fs::write(&path, "[[2,-1,-1],[-1,2,-1],[-1,-1,2]]").unwrap();
    let v = json_of(&["group", "--cartan-file", path.to_str().unwrap()]);
    assert_eq!(v["typedec"], serde_json::json!([["U", [0, 1, 2]]]));
    assert!(v["order"].is_null());

    let v = json_of(&["group", "--type", "A", "--rank", "1"]);
    assert_eq!(v["order"], 2);
    assert_eq!(json_of(&["group", "--type", "I2", "--bond", "5"])["order"], 10);
}

#[test]
fn cell_counts() {
    assert_eq!(json_of(&["cells", "--type", "H3"])["cells"].as_array().unwrap().len(), 22);
    assert_eq!(json_of(&["cells", "--type", "A1"])["cells"].as_array().unwrap().len(), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["cells", "--type", "D4", "--wgraphs"];
    let one = coxhecke(&[&args[..], &["--threads", "1"]].concat());
    let many = coxhecke(&[&args[..], &["--threads", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, coxhecke(&args).stdout);
}

#[test]
fn star_induction_does_not_change_cells() {
    let plain = coxhecke(&["cells", "--type", "H3"]);
    let star = coxhecke(&["cells", "--type", "H3", "--star-induction", "on"]);
    assert_eq!(plain.stdout, star.stdout);
    // an optimization only, so it is ignored for unequal parameters
    let plain = coxhecke(&["cells", "--type", "B3", "--weights", "2,1,1"]);
    let star = coxhecke(&["cells", "--type", "B3", "--weights", "2,1,1", "--star-induction", "on"]);
    assert_eq!(star.status.code(), Some(0));
    assert_eq!(plain.stdout, star.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = scratch("cache");
    let cache = dir.to_str().unwrap();
    let fresh = coxhecke(&["cells", "--type", "B3", "--weights", "2,1,1", "--wgraphs"]);
    let first = coxhecke(&["cells", "--type", "B3", "--weights", "2,1,1", "--wgraphs", "--cache-dir", cache]);
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 1);
    let cached = coxhecke(&["cells", "--type", "B3", "--weights", "2,1,1", "--wgraphs", "--cache-dir", cache]);
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, cached.stdout);
    let leading = coxhecke(&["leading", "--type", "B3", "--weights", "2,1,1"]);
    let leading_cached = coxhecke(&["leading", "--type", "B3", "--weights", "2,1,1", "--cache-dir", cache]);
    assert_eq!(leading.stdout, leading_cached.stdout);
}

#[test]
fn dihedral_leading_tables() {
    let text = String::from_utf8(coxhecke(&["leading", "--type", "I2", "--bond", "5", "--format", "text"]).stdout).unwrap();
    assert!(text.contains("D̃ (4): []:1 [0]:1 [1]:1 [0,1,0,1,0]:1"), "{text}");
    assert!(text.contains("1-α"));

    let v = json_of(&["leading", "--type", "I2", "--bond", "8", "--weights", "2,1"]);
    let big: Vec<&Value> = v["tables"].as_array().unwrap().iter().filter(|t| t["rows"].as_array().unwrap().len() == 3).collect();
    assert_eq!(big.len(), 2);
    assert_eq!(big[0]["distinguished"], serde_json::json!([0]));
    assert_eq!(big[1]["distinguished"], serde_json::json!([1, 0, 1]));
    assert_eq!(big[1]["n"], serde_json::json!({"conductor": 1, "coords": [1]}));
    let text =
        String::from_utf8(coxhecke(&["leading", "--type", "I2", "--bond", "8", "--weights", "2,1", "--format", "text"]).stdout)
            .unwrap();
    assert!(text.contains("-√2"), "{text}");

    let v = json_of(&["leading", "--type", "A1"]);
    assert_eq!(v["tables"].as_array().unwrap().len(), 2);
}

#[test]
fn checks_pass() {
    let v = json_of(&["check", "--type", "H3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["specialDimSum"], 22);
    assert_eq!(json_of(&["check", "--type", "A1"])["passed"], true);
}

#[test]
fn hecke_table_round_trip() {
    let dir = scratch("hecke");
    let path = dir.join("h3.json");
    let exported = coxhecke(&["leading", "--type", "H3", "--export-hecke", path.to_str().unwrap()]);
    assert_eq!(exported.status.code(), Some(0));
    let imported = coxhecke(&["leading", "--type", "H3", "--hecke-table", path.to_str().unwrap()]);
    assert_eq!(imported.status.code(), Some(0), "{}", String::from_utf8_lossy(&imported.stderr));
    assert_eq!(exported.stdout, imported.stdout);

    // a table that does not specialize to the character table is refused
    let mut table: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    table["irreducibles"][0]["values"][0] = serde_json::json!([[0, [2], 1]]);
    std::fs::write(&path, table.to_string()).unwrap();
    assert_eq!(coxhecke(&["leading", "--type", "H3", "--hecke-table", path.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn exit_codes() {
    assert_eq!(coxhecke(&["group", "--type", "Q3"]).status.code(), Some(4));
    assert_eq!(coxhecke(&["cells", "--type", "A2", "--weights", "1,2"]).status.code(), Some(4));
    assert_eq!(coxhecke(&["cells", "--type", "H3", "--max-order", "100"]).status.code(), Some(3));
    assert_eq!(coxhecke(&["cells", "--type", "E8"]).status.code(), Some(3));
    let dir = scratch("infinite");
    let path = dir.join("affine.json");
    std::fs::write(&path, "[[2,-1,-1],[-1,2,-1],[-1,-1,2]]").unwrap();
    assert_eq!(coxhecke(&["cells", "--cartan-file", path.to_str().unwrap()]).status.code(), Some(4));
}
