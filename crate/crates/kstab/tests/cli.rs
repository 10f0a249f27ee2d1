use std::path::PathBuf;
use std::process::Command;

use kstab::alcove::Alcove;
use kstab::cli::{parse_and_dispatch, read_class, Output};
use kstab::hecke::t_right;
use kstab::kclass::KClass;
use kstab::rootdata::CartanType;
use kstab::text::parse_expression;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    parse_and_dispatch(std::iter::once("kstab").chain(args.iter().copied()))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kstab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Parses `## stab y` sections of table output into element -> (point -> expression).
fn parse_table(text: &str) -> Vec<(String, Vec<(String, String)>)> {
    let mut out: Vec<(String, Vec<(String, String)>)> = Vec::new();
    for line in text.lines() {
        if let Some(y) = line.strip_prefix("## stab ") {
            out.push((y.to_string(), Vec::new()));
        } else if let Some((w, e)) = line.split_once('\t') {
            out.last_mut().unwrap().1.push((w.to_string(), e.to_string()));
        }
    }
    out
}

#[test]
fn sl2_basis_table() {
    let o = run(&["basis", "--type", "A1", "--chamber", "e", "--pol", "TB", "--alcove", "neg", "--element", "s1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let rs = CartanType::A1.root_system();
    let rows = &parse_table(&o.stdout)[0];
    assert_eq!(rows.0, "s1");
    let want = [("e", "q^(1/2) - q^(-1/2)"), ("s1", "q^(1/2) - q^(-1/2)*e^(-a1)")];
    assert_eq!(rows.1.len(), 2);
    for ((w, got), (w2, want)) in rows.1.iter().zip(want) {
        assert_eq!(w, w2);
        let (g, x) = (parse_expression(got, &rs).unwrap(), parse_expression(want, &rs).unwrap());
        assert!(g.equals(&x), "{w}: {got}");
    }
    assert!(o.stderr.contains("elapsed:"));
}

#[test]
fn locate_centre_of_dominant_alcove() {
    let o = run(&["alcove", "locate", "--type", "A2", "--point", "1/3,1/3", "--format", "json"]);
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    let rs = CartanType::A2.root_system();
    assert_eq!(v["label"], Alcove::pos(&rs).label(&rs));
    assert_eq!(v["x"], "s1 s2 s1");
    let o = run(&["alcove", "locate", "--type", "A2", "--point", "0,0"]);
    assert_eq!(o.code, 1);
}

#[test]
fn table_and_json_agree() {
    let args = ["basis", "--type", "A2", "--chamber", "s2", "--pol", "TStarB", "--alcove", "s1*neg + a2"];
    let table = run(&[&args[..], &["--format", "table"]].concat());
    let json = run(&[&args[..], &["--format", "json"]].concat());
    assert_eq!((table.code, json.code), (0, 0));
    let v: Value = serde_json::from_str(&json.stdout).unwrap();
    let rs = CartanType::A2.root_system();
    let sections = parse_table(&table.stdout);
    assert_eq!(sections.len(), 6);
    for (y, rows) in sections {
        let class = KClass::from_json(&serde_json::json!({"type": "A2", "restrictions": v["basis"][&y]})).unwrap();
        for (w, e) in rows {
            let at = rs.weyl.parse(&w).unwrap();
            assert!(parse_expression(&e, &rs).unwrap().equals(class.restriction(at)), "{y} {w}");
        }
    }
}

#[test]
fn basis_output_feeds_apply_and_pair() {
    let file = scratch("basis.json");
    let o = run(&["basis", "--type", "A2", "--alcove", "neg", "--format", "json"]);
    std::fs::write(&file, &o.stdout).unwrap();
    let single = scratch("single.json");
    let o = run(&["basis", "--type", "A2", "--alcove", "neg", "--element", "s1 s2", "--format", "json"]);
    std::fs::write(&single, &o.stdout).unwrap();
    let path = file.to_str().unwrap();

    // apply T1' to a basis element and compare with the library.
    let o = run(&["apply", "--type", "A2", "--op", "T1'", "--input", path, "--element", "s1"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let got = KClass::from_json(&serde_json::from_str(&o.stdout).unwrap()).unwrap();
    let f = read_class(&file, Some("s1")).unwrap();
    assert!(got.equals(&t_right(0, &f)));
    let o = run(&["apply", "--op", "T1", "--input", single.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);

    // Dual family: chamber w0, opposite polarization, negated alcove.
    let dual = scratch("dual.json");
    let o = run(&["basis", "--type", "A2", "--chamber", "s1 s2 s1", "--pol", "TStarB", "--alcove", "pos", "--format", "json"]);
    std::fs::write(&dual, &o.stdout).unwrap();
    for (l, r, want) in [("s1 s2", "s1 s2", "1"), ("s1 s2", "s1", "0"), ("e", "e", "1")] {
        let o = run(&[
            "pair", "--left", path, "--left-element", l, "--right", dual.to_str().unwrap(), "--right-element", r,
        ]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert_eq!(o.stdout.trim(), want, "{l} {r}");
    }
    // A whole-basis file needs an element.
    let o = run(&["pair", "--left", path, "--right", path]);
    assert_eq!(o.code, 1);
    let o = run(&["apply", "--type", "B2", "--op", "T1", "--input", single.to_str().unwrap()]);
    assert_eq!(o.code, 1);
}

#[test]
fn wallcross_coefficients() {
    let o = run(&["wallcross", "--type", "A2", "--from", "neg", "--to", "s1*neg + 0", "--all-y", "--format", "json"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["coefficients"].as_object().unwrap().len(), 6);
    let o = run(&["wallcross", "--type", "A2", "--from", "neg", "--to", "pos"]);
    assert_eq!(o.code, 1);
    assert!(o.stderr.contains("not adjacent"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).code, 0);
    assert_eq!(run(&["basis", "--type", "A1"]).code, 2);
    assert_eq!(run(&["basis", "--type", "A1", "--alcove", "neg", "--bogus"]).code, 2);
    let o = run(&["basis", "--type", "E8", "--alcove", "neg"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--type"));
    let o = run(&["basis", "--type", "A2", "--alcove", "neg", "--chamber", "s5"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--chamber"));
    assert_eq!(run(&["verify", "--suite", "golden-sl2", "--type", "A1"]).code, 0);
    assert_eq!(run(&["verify", "--suite", "hecke-relations", "--type", "A1"]).code, 1);
    assert_eq!(run(&["verify", "--suite", "nope", "--type", "A1"]).code, 1);
}

#[test]
fn verify_json_is_deterministic() {
    let args = ["verify", "--suite", "spherical", "--type", "A2", "--seed", "7", "--window", "1", "--format", "json"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&a.stdout).unwrap();
    assert!(v.is_array() || v.is_object());
}

#[test]
fn binary_and_cache_directory() {
    let dir = scratch("cache");
    let bin = env!("CARGO_BIN_EXE_kstab");
    let args = ["basis", "--type", "A1", "--alcove", "pos", "--format", "json"];
    let first = Command::new(bin).args(args).env("STABLE_CACHE_DIR", &dir).output().unwrap();
    assert!(first.status.success());
    assert!(dir.join("A1.json").exists());
    let second = Command::new(bin).args(args).env("STABLE_CACHE_DIR", &dir).output().unwrap();
    assert_eq!(first.stdout, second.stdout);
    let bad = Command::new(bin).args(["basis", "--type", "A1"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
