use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn fatg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fatg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_ribbon_classes() {
    let o = fatg(&["validate", path(&fixture("f2b.fatg"))]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("ribbon 1: (1,5) (6,2) untwisted bi-directional"), "{out}");
    assert!(out.contains("(4,6) (5,3) untwisted mono-directional"), "{out}");
}

#[test]
fn invalid_input_exits_one() {
    let o = fatg(&["validate", path(&fixture("broken.fatg"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sigma(2n+1)"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.fatg");
    std::fs::write(&bad, "fatgraph 1\nn 1\nsigma (1 3)(2)\n").unwrap();
    let o = fatg(&["info", path(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("omega"));

    // Two boundary components: valid, but not something the distance applies to.
    assert_eq!(fatg(&["distance", path(&fixture("f2b.fatg"))]).status.code(), Some(1));
    assert_eq!(fatg(&["info", "/nonexistent.fatg"]).status.code(), Some(1));
}

#[test]
fn distance_of_fixtures() {
    for (name, d) in
        [("t1", 0), ("p1", 1), ("t2", 0), ("x2", 1), ("y2", 0), ("o2", 3), ("pair", 6), ("triple", 9), ("star", 16)]
    {
        let o = fatg(&["distance", path(&fixture(&format!("{name}.fatg")))]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), d.to_string(), "{name}");
    }
}

#[test]
fn info_json_fields() {
    let o = fatg(&["info", "--json", path(&fixture("star.fatg"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["genus"], 12);
    assert_eq!(v["e_blocks"], 3);
    assert_eq!(v["s_blocks"], 3);
    assert_eq!(v["distance"], 16);
}

#[test]
fn plan_then_apply_reaches_a_tree() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["t1", "p1", "t2", "x2", "y2", "o2", "pair", "triple", "star"] {
        let input = fixture(&format!("{name}.fatg"));
        let script = dir.path().join(format!("{name}.txt"));
        let out = dir.path().join(format!("{name}.out.fatg"));
        assert_eq!(fatg(&["plan", path(&input), "-o", path(&script)]).status.code(), Some(0));
        let steps = std::fs::read_to_string(&script).unwrap().lines().count();
        let d: usize = stdout(&fatg(&["distance", path(&input)])).trim().parse().unwrap();
        assert_eq!(steps, d, "{name}");
        assert_eq!(fatg(&["apply", path(&input), path(&script), "-o", path(&out)]).status.code(), Some(0));
        let info = stdout(&fatg(&["info", path(&out)]));
        assert!(info.contains("genus 0"), "{name}: {info}");
    }
}

#[test]
fn apply_rejects_bad_scripts() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("s.txt");
    std::fs::write(&script, "twist 1 2\n").unwrap();
    assert_eq!(fatg(&["apply", path(&fixture("o2.fatg")), path(&script)]).status.code(), Some(1));
    // The root wedge is not a legal sector pair.
    std::fs::write(&script, "slice 1 5\n").unwrap();
    assert_eq!(fatg(&["apply", path(&fixture("o2.fatg")), path(&script)]).status.code(), Some(1));
}

#[test]
fn components_and_blocks_dot() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("c.dot");
    let o = fatg(&["components", path(&fixture("pair.fatg")), "--dot", path(&dot)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 4);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph components {"));

    let o = fatg(&["blocks", path(&fixture("star.fatg")), "--dot", path(&dot)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("exposed super").count(), 3);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph blocks {"));
}

#[test]
fn oracle_agrees_with_formula() {
    let o = fatg(&["oracle", path(&fixture("o2.fatg"))]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3");
    let o = fatg(&["oracle", "--max-states", "2", path(&fixture("o2.fatg"))]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_is_deterministic() {
    let a = fatg(&["gen", "--ribbons", "6", "--genus", "4", "--seed", "11"]);
    let b = fatg(&["gen", "--ribbons", "6", "--genus", "4", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.fatg");
    assert_eq!(
        fatg(&["gen", "--ribbons", "6", "--genus", "4", "--seed", "11", "-o", path(&out)]).status.code(),
        Some(0)
    );
    let info = stdout(&fatg(&["info", path(&out)]));
    assert!(info.contains("genus 4"), "{info}");
    assert_eq!(fatg(&["gen", "--ribbons", "2", "--genus", "9", "--seed", "1"]).status.code(), Some(1));
}

#[test]
fn fuzz_finds_no_problems() {
    let o = fatg(&["fuzz", "--ribbons", "3", "--count", "25", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).ends_with("0 problems\n"));
}
