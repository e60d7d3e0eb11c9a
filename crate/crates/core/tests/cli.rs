use std::path::{Path, PathBuf};
use std::process::Command;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ihgenera")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8"),
        String::from_utf8(out.stderr).expect("utf-8"),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn genus_of_blowups() {
    let out = stdout_of(&["genus", "--map", &data("blowup_p2_point.map")]);
    assert_eq!(out, "chi_y(X) = 1 - 2*y + y^2\n");
    let out = stdout_of(&["genus", "--map", &data("blowup_p3_line.map"), "--eval", "y=-1"]);
    assert_eq!(out, "chi_y(X) = 1 - 2*y + 2*y^2 - y^3\nchi_y(X) at y=-1 = 6\n");
}

#[test]
fn intersection_genus_and_signature() {
    let out = stdout_of(&["igenus", "--map", &data("blowup_p2_point.map"), "--eval", "y=1"]);
    assert!(out.ends_with("Ichi_y(X) at y=1 = 0\n"), "{out}");
    let out = stdout_of(&["igenus", "--map", &data("nodal_cubic.map")]);
    assert_eq!(out, "Ichi_y(X) = 1 - y\n");
}

#[test]
fn e_polynomial_and_hodge_level() {
    let out = stdout_of(&["genus", "--map", &data("blowup_p2_point.map"), "--e-poly"]);
    assert_eq!(out, "E(X) = u^2*v^2 + 2*u*v + 1\n");
    let out = stdout_of(&["genus", "--map", &data("nodal_cubic.map"), "--level", "hodge"]);
    assert!(out.starts_with("H(X) = 0,0:1; 1,1:1\n"), "{out}");
}

#[test]
fn validate_reports_errors() {
    assert_eq!(stdout_of(&["validate", &data("nodal_cubic.strat")]), "nodal cubic: valid\n");
    let (code, _, err) = run(&["validate", &data("bad_space.strat")]);
    assert_eq!(code, 1);
    assert!(err.contains("order must decrease dimension"), "{err}");
    assert!(err.contains("exactly one maximal stratum"), "{err}");
}

#[test]
fn decompose_direct_image() {
    let out = stdout_of(&["decompose", "--space", &data("identity_p2.strat"), "--stalks", &data("blowup_direct_image.stalks")]);
    assert_eq!(out, "L(p) = 1,1:1\nL(S) = 0,0:1\nreconstruction: ok\n");
}

#[test]
fn class_commands() {
    let out = stdout_of(&["class", "ty", "--pn", "2"]);
    assert!(out.ends_with("degree = 1 - y + y^2\n"), "{out}");
    let out = stdout_of(&["class", "ty", "--product", "1,1"]);
    assert!(out.contains("(1 - 2*y + y^2)*h1*h2"), "{out}");
    let pushed = stdout_of(&["class", "pushforward", "--map", &data("blowup_p2_point.map"), "--classes", &data("blowup_p2_point.classes")]);
    assert!(pushed.ends_with("degree = 1 - 2*y + y^2\n"), "{pushed}");
    assert_eq!(stdout_of(&["class", "blowup", "--pn", "2", "--center", "0"]), pushed);
}

#[test]
fn toric_ec() {
    assert_eq!(stdout_of(&["toric", "ec", "--fan", &data("p2.fan")]), "u^2*v^2 + u*v + 1\n");
    assert_eq!(stdout_of(&["toric", "ec", "--fan", &data("hirzebruch1.fan")]), "u^2*v^2 + 2*u*v + 1\n");
}

#[test]
fn json_output() {
    let out = stdout_of(&["--json", "genus", "--map", &data("blowup_p2_point.map"), "--eval", "y=-1"]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["value"], "1 - 2*y + y^2");
    assert_eq!(v["eval"]["value"], "4");
    let out = stdout_of(&["--json", "toric", "ec", "--fan", &data("p1.fan")]);
    let v: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(v["ec"], "u*v + 1");
}

#[test]
fn oracle_run_all_passes() {
    let out = stdout_of(&["oracle", "run-all"]);
    assert!(out.lines().all(|l| l.starts_with("PASS") || l.ends_with("checks passed")), "{out}");
    assert!(out.ends_with("16/16 checks passed\n"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["--version"]).0, 0);
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["genus"]).0, 1);
    assert_eq!(run(&["genus", "--map", "does-not-exist.map"]).0, 1);
    assert_eq!(run(&["toric", "build", "moon"]).0, 1);
    assert_eq!(run(&["class", "ty", "--pn", "2", "--product", "1,1"]).0, 1);
}

#[test]
fn output_is_deterministic() {
    let args = ["toric", "build", "blowup_p3_line"];
    let first = stdout_of(&args);
    for _ in 0..3 {
        assert_eq!(stdout_of(&args), first);
    }
}

#[test]
fn in_process_runner_matches_binary() {
    let args = ["ihgenera", "class", "ty", "--pn", "3"];
    let o = ihgenera::cli::run(args.iter().map(std::ffi::OsString::from));
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, stdout_of(&args[1..]));
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ihgenera-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn built_files_round_trip() {
    let dir = scratch("build");
    let d = dir.display().to_string();
    stdout_of(&["toric", "build", "blowup_linear", "4", "1", "--out", &d]);
    let map = dir.join("blowup_linear_4_1.map");
    assert!(map.exists(), "{:?}", std::fs::read_dir(&dir).map(|r| r.count()));
    let out = stdout_of(&["genus", "--map", &map.display().to_string()]);
    // (chi(P4) - chi(P1)) + chi(P1) chi(P2)
    assert_eq!(out, "chi_y(X) = 1 - 2*y + 3*y^2 - 2*y^3 + y^4\n");
    stdout_of(&["validate", &dir.join("blowup_linear_4_1.strat").display().to_string()]);
    let classes = dir.join("blowup_linear_4_1.classes").display().to_string();
    let pushed = stdout_of(&["class", "pushforward", "--map", &map.display().to_string(), "--classes", &classes]);
    let igenus = stdout_of(&["igenus", "--map", &map.display().to_string()]);
    let degree = pushed.lines().last().unwrap().trim_start_matches("degree = ");
    assert_eq!(igenus.trim_start_matches("Ichi_y(X) = ").trim_end(), degree);
    stdout_of(&["toric", "build", "hirzebruch", "2", "--out", &d]);
    assert_eq!(stdout_of(&["toric", "ec", "--fan", &dir.join("hirzebruch_2.fan").display().to_string()]), "u^2*v^2 + 2*u*v + 1\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn surviving_pole_exits_with_two() {
    let dir = scratch("pole");
    std::fs::create_dir_all(&dir).unwrap();
    for ext in ["strat", "map"] {
        std::fs::copy(data(&format!("identity_p2.{ext}")), dir.join(format!("identity_p2.{ext}"))).unwrap();
    }
    let classes = dir.join("identity_p2.classes");
    std::fs::write(&classes, "[classes]\ndim = 2\n\n[class S]\n2: 1\n0: (1)/(1 + y)\n\n[class p]\n0: 1\n").unwrap();
    let map = dir.join("identity_p2.map").display().to_string();
    let (code, _, err) = run(&["class", "pushforward", "--map", &map, "--classes", &classes.display().to_string()]);
    assert_eq!(code, 2, "{err}");
    assert!(err.contains("denominator survives"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}
