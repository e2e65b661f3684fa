use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const RADIAL_3: &str = r#"{"n":3,"order":-3,"floor":-3,"exact":true,"odd_class_declared":false,"components":[{"degree":-3,"layers":[{"beta":[0,0,0],"coeff":[{"freq":[0,0,0],"scalar":"1"}]}]}]}"#;
const RADIAL_4: &str = r#"{"n":3,"order":-4,"floor":-4,"exact":true,"odd_class_declared":true,"components":[{"degree":-4,"layers":[{"beta":[0,0,0],"coeff":[{"freq":[0,0,0],"scalar":"1"}]}]}]}"#;
const XI1_4: &str = r#"{"n":3,"order":-3,"floor":-3,"exact":true,"odd_class_declared":true,"components":[{"degree":-3,"layers":[{"beta":[1,0,0],"coeff":[{"freq":[0,0,0],"scalar":"1"}]}]}]}"#;
const SHIFT_1: &str = r#"{"n":1,"order":-1,"floor":-3,"exact":true,"odd_class_declared":true,"components":[{"degree":-1,"layers":[{"beta":[1],"coeff":[{"freq":[1],"scalar":"1/2"}]}]}]}"#;

fn file(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("cli-{name}"));
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oddclass")).args(args).env_remove("ODDCLASS_DIGITS").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn residue_of_radial_symbol() {
    let f = file("r3.json", RADIAL_3);
    let out = ok(&["eval", "res", path(&f)]);
    assert!(out.starts_with("32*pi^4 ≈ 3117.09"), "{out}");
}

#[test]
fn canonical_trace_of_radial_symbol() {
    let f = file("r4.json", RADIAL_4);
    let out = ok(&["eval", "tr", path(&f)]);
    assert!(out.starts_with("4*pi ≈ 12.566"), "{out}");
    let out = ok(&["--digits", "5", "eval", "tr", path(&f)]);
    assert!(out.starts_with("4*pi ≈ 12.566"), "{out}");
}

#[test]
fn residue_of_odd_sample_is_zero() {
    let sample = ok(&["gen", "--seed", "9", "--order", "-1", "--floor", "-5"]);
    let f = file("odd.json", &sample);
    assert_eq!(ok(&["eval", "res", path(&f)]).trim(), "0");
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--seed", "3", "--n", "1", "--order", "2", "--floor", "-2", "--even"];
    assert_eq!(ok(&args), ok(&args));
    assert_ne!(ok(&args), ok(&["gen", "--seed", "4", "--n", "1", "--order", "2", "--floor", "-2", "--even"]));
}

#[test]
fn exit_codes() {
    let bad = file("bad.json", "{\"n\":3,");
    assert_eq!(run(&["eval", "res", path(&bad)]).status.code(), Some(3));
    let shallow =
        RADIAL_4.replace("-4", "0").replace("\"exact\":true", "\"exact\":false").replace("\"floor\":0", "\"floor\":-2");
    let shallow = file("shallow.json", &shallow);
    assert_eq!(run(&["eval", "res", path(&shallow)]).status.code(), Some(2));
    let even = file("even.json", RADIAL_3);
    assert_eq!(run(&["decompose", path(&even)]).status.code(), Some(2));
    assert_eq!(run(&["check", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["exp", path(&file("order0.json", &RADIAL_4.replace("-4", "0")))]).status.code(), Some(2));
}

#[test]
fn decomposition_worked_example() {
    let f = file("xi1.json", XI1_4);
    let out = ok(&["decompose", path(&f)]);
    assert_eq!(out.lines().count(), 3);
    let tau2 = file("tau2.json", out.lines().nth(1).unwrap());
    let direct = ok(&["eval", "cutoff", path(&tau2)]);
    assert!(!direct.is_empty());
}

#[test]
fn star_of_radial_powers() {
    let a = file("sa.json", RADIAL_3);
    let b = file("sb.json", RADIAL_4);
    let p = file("sp.json", &ok(&["star", path(&a), path(&b)]));
    assert!(ok(&["eval", "res", path(&p), "--floor", "-7"]).trim() == "0");
    let c = ok(&["commutator", path(&a), path(&b)]);
    assert!(c.contains("\"components\":[]"), "{c}");
}

#[test]
fn exp_log_round_trip() {
    let a = file("ea.json", SHIFT_1);
    let g = file("eg.json", &ok(&["exp", path(&a)]));
    let back: serde_json::Value = serde_json::from_str(&ok(&["log", path(&g)])).unwrap();
    let want: serde_json::Value = serde_json::from_str(SHIFT_1).unwrap();
    assert_eq!(back["components"], want["components"]);
    assert_eq!(back["floor"], want["floor"]);
}

#[test]
fn determinants() {
    let a = file("da.json", RADIAL_4);
    let out = ok(&["det", path(&a), "--c1", "0", "--c2", "1"]);
    assert!(out.starts_with("log Det = 4*pi ≈ 12.566"), "{out}");
    let path_file = file("path.json", &format!("{}\n{}\n", RADIAL_4.replace("\"1\"", "\"0\""), RADIAL_4));
    let out = ok(&["path-det", path(&path_file), "--c1", "0", "--c2", "1"]);
    assert!(out.starts_with("log Det = 4*pi"), "{out}");
}

#[test]
fn oracle_commands() {
    let f = file("oa.json", RADIAL_4);
    let out = ok(&["oracle", "eval", path(&f), "--x", "0,0,0", "--xi", "2,0,0"]);
    assert!(out.starts_with("0.0625"), "{out}");
    assert_eq!(run(&["oracle", "eval", path(&f), "--x", "0,0,0", "--xi", "0.5,0,0"]).status.code(), Some(2));
    let fit = ok(&["oracle", "radial-fit", path(&f), "--x", "0,0,0"]);
    let fp: f64 =
        fit.lines().find_map(|l| l.strip_prefix("finite part: ")).unwrap().split(' ').next().unwrap().parse().unwrap();
    assert!((fp - 4.0 * std::f64::consts::PI).abs() < 1e-6, "{fit}");
    let s = file("ms.json", SHIFT_1);
    let out = ok(&["oracle", "mode-trace", path(&s), path(&s)]);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn check_writes_report() {
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-report.json");
    let text = ok(&["check", "stokes", "--seed", "5", "--cases", "10", "--out", path(&out)]);
    assert!(text.contains("PASS"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report[0]["cases"], 10);
    assert_eq!(report[0]["failures"].as_array().unwrap().len(), 0);
}
