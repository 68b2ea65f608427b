use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sl2char"));
    for var in [
        "MCG_ORBIT_CAP",
        "MCG_KMAX",
        "MCG_CLOSURE_CAP",
        "MCG_PRECISION",
        "MCG_TOL",
        "MCG_SEED",
        "MCG_FORMAT",
    ] {
        c.env_remove(var);
    }
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn sample(dir: &TempDir, name: &str) -> PathBuf {
    let o = run(&["corpus", name]);
    assert_eq!(code(&o), 0);
    write(
        dir,
        &format!("{name}.json"),
        &String::from_utf8(o.stdout).unwrap(),
    )
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const IDENTITY: &str = r#"{"signature": {"genus": 1, "punctures": 1},
  "images": [[["1", "0"], ["0", "1"]], [["1", "0"], ["0", "1"]]]}"#;

#[test]
fn orbit_of_a_finite_triple() {
    let o = run(&["orbit", "--seed", "0,-1,-1", "--gens", "beta"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["status"], "finite");
    assert_eq!(v["size"], 16);
    assert_eq!(v["orbit"].as_array().unwrap().len(), 16);
}

#[test]
fn orbit_of_the_reducible_fixed_point() {
    let o = run(&["orbit", "--seed", "2,2,2", "--gens", "twists"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["size"], 1);
}

#[test]
fn orbit_escapes_the_cap() {
    let o = run(&[
        "orbit", "--seed", "0,-1,-3", "--gens", "beta", "--cap", "100000",
    ]);
    assert_eq!(code(&o), 3);
    let v = json(&o);
    assert_eq!(v["status"], "cap-exceeded");
    assert!(v.get("orbit").is_none());
}

#[test]
fn orbit_parse_errors() {
    assert_eq!(code(&run(&["orbit", "--seed", "0,-1"])), 64);
    assert_eq!(code(&run(&["orbit", "--seed", "0,-1,frog"])), 64);
    assert_eq!(
        code(&run(&["orbit", "--seed", "0,-1,-1", "--gens", "tw_z"])),
        64
    );
    assert_eq!(code(&run(&["orbit"])), 64);
    assert_eq!(code(&run(&["orbit", "--seed", "1,1,1", "--cap", "0"])), 64);
}

#[test]
fn orbit_symbolic_seed_and_map_list() {
    let o = run(&["orbit", "--seed", "(0, -1, -phi)", "--gens", "beta1,beta2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["size"], 40);
    let o = run(&["orbit", "--seed", "0,-1,-sqrt2", "--gens", "β1,β2"]);
    assert_eq!(json(&o)["size"], 36);
}

#[test]
fn orbit_request_and_dump() {
    let dir = TempDir::new().unwrap();
    let req = write(
        &dir,
        "req.json",
        r#"{"seed": ["0", "-1", "-1"], "generators": ["beta"], "cap": 1000}"#,
    );
    let dump = dir.path().join("orbit.ndjson");
    let o = run(&["orbit", "--request", s(&req), "--dump", s(&dump)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["cap"], 1000);
    let text = fs::read_to_string(&dump).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 16);
    for l in &lines {
        let t: Value = serde_json::from_str(l).unwrap();
        assert_eq!(t.as_array().unwrap().len(), 3);
    }
    assert_eq!(
        serde_json::from_str::<Value>(lines[0]).unwrap(),
        v["orbit"][0]
    );

    let bad = write(&dir, "bad.json", r#"{"seed": "nope"}"#);
    assert_eq!(code(&run(&["orbit", "--request", s(&bad)])), 64);
}

#[test]
fn environment_and_flag_precedence() {
    let o = bin()
        .env("MCG_ORBIT_CAP", "10")
        .args(["orbit", "--seed", "0,-1,-1"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = bin()
        .env("MCG_ORBIT_CAP", "10")
        .args(["orbit", "--seed", "0,-1,-1", "--cap", "100"])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["cap"], 100);
}

#[test]
fn classify_binary_tetrahedral_pair() {
    let dir = TempDir::new().unwrap();
    let f = sample(&dir, "finite-triple-1-BA4");
    let o = run(&["classify", s(&f), "--sig", "1,1"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["binary_tag"], "BA4");
    assert_eq!(v["finite_image"]["order"], 24);
    assert_eq!(v["unitarizable_numeric"], "yes");
    assert_eq!(v["theorem_verdict"]["finite_orbit"], true);
    assert_eq!(v["restriction_pair"]["status"], "found");
    let o = run(&["--format", "table", "classify", s(&f), "--sig", "1,1"]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("restriction_pair"));
}

#[test]
fn classify_special_dihedral() {
    let dir = TempDir::new().unwrap();
    let f = sample(&dir, "special-dihedral-3");
    let o = run(&["classify", s(&f)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["special_dihedral"], true);
    assert_eq!(v["finite_image"]["status"], "cap-exceeded");
    assert_eq!(
        v["theorem_verdict"]["finite_orbit_clause"],
        "special-dihedral"
    );
}

#[test]
fn classify_identity() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "id.json", IDENTITY);
    let o = run(&["classify", s(&f)]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["finite_image"]["status"], "finite");
    assert_eq!(v["finite_image"]["order"], 1);
}

#[test]
fn classify_input_errors() {
    let dir = TempDir::new().unwrap();
    let bad_det = write(
        &dir,
        "det.json",
        r#"{"signature": null, "images": [[["1", "1"], ["1", "1"]]]}"#,
    );
    assert_eq!(code(&run(&["classify", s(&bad_det), "--sig", "1,1"])), 65);
    let not_json = write(&dir, "junk.json", "{");
    assert_eq!(code(&run(&["classify", s(&not_json), "--sig", "1,1"])), 65);
    let free = write(
        &dir,
        "free.json",
        r#"{"images": [[["1", "0"], ["0", "1"]], [["0", "1"], ["-1", "0"]]]}"#,
    );
    assert_eq!(code(&run(&["classify", s(&free)])), 64);
    assert_eq!(code(&run(&["classify", s(&free), "--sig", "1,1"])), 0);
    assert_eq!(code(&run(&["classify", s(&free), "--sig", "2,1"])), 65);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&run(&["classify", s(&missing), "--sig", "1,1"])), 66);
}

#[test]
fn verify_dm_and_invariants() {
    for suite in ["dm", "invariants"] {
        let o = run(&["verify", suite]);
        assert_eq!(code(&o), 0, "{suite}");
        let v = json(&o);
        assert_eq!(v["passed"], true);
        assert_eq!(v["suite"], suite);
    }
    assert_eq!(code(&run(&["verify", "everything"])), 64);
}

#[test]
fn verify_identities() {
    let o = run(&["verify", "identities", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["seed"], 7);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["failures"], 0);
    }
}

#[test]
fn survey_reports() {
    let dir = TempDir::new().unwrap();
    let ba5 = sample(&dir, "finite-triple-3-BA5");
    let o = run(&["survey", s(&ba5)]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["summary"]["all_torsion"], true);

    let sd = sample(&dir, "special-dihedral-3");
    let v = json(&run(&["survey", s(&sd), "--max-factors", "3"]));
    assert_eq!(v["summary"]["all_torsion"], false);
    let witnesses: Vec<&str> = v["summary"]["non_torsion_witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .map(|w| w.as_str().unwrap())
        .collect();
    assert!(witnesses.contains(&"b1"));

    let id = write(&dir, "id.json", IDENTITY);
    let v = json(&run(&["survey", s(&id)]));
    assert_eq!(v["summary"]["order_lcm"], 1);
    for e in v["entries"].as_array().unwrap() {
        assert_eq!(e["torsion"]["order"], 1);
    }
}

#[test]
fn output_is_deterministic_and_can_go_to_a_file() {
    let dir = TempDir::new().unwrap();
    let f = sample(&dir, "finite-triple-2-BS4");
    let a = run(&["classify", s(&f)]);
    let b = run(&["classify", s(&f)]);
    assert_eq!(a.stdout, b.stdout);
    let out = dir.path().join("report.json");
    let c = run(&["classify", s(&f), "--output", s(&out)]);
    assert_eq!(code(&c), 0);
    assert!(c.stdout.is_empty());
    assert_eq!(fs::read(&out).unwrap(), a.stdout);
}

#[test]
fn table_format() {
    let o = run(&["--format", "table", "orbit", "--seed", "0,-1,-1"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("status      finite"));
    let o = run(&["corpus", "--format", "table"]);
    assert!(String::from_utf8(o.stdout)
        .unwrap()
        .contains("special-dihedral-3"));
}

#[test]
fn help_and_usage() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["corpus", "no-such-sample"])), 64);
}
