use std::process::{Command, Output};

use serde_json::Value;

fn zkq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zkq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let o = zkq(&all);
    (serde_json::from_slice(&o.stdout).expect("valid json"), o.status.code().unwrap())
}

#[test]
fn exit_codes() {
    assert_eq!(zkq(&["invariants", "table1"]).status.code(), Some(0));
    assert_eq!(zkq(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(zkq(&["poisson", "classify", "--k", "1", "--sigma", "z^("]).status.code(), Some(1));
    assert_eq!(
        zkq(&["moduli", "rebel", "--k", "1", "--j", "3", "--sigma", "u", "--point", "0,1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        zkq(&["moduli", "stratify", "--k", "3", "--j", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        zkq(&["moduli", "rebel", "--k", "1", "--j", "3", "--sigma", "z", "--point", "0,1,0,0"]).status.code(),
        Some(2)
    );
}

#[test]
fn failure_envelope_names_the_error() {
    let (v, code) = json(&["moduli", "stratify", "--k", "3", "--j", "2"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "WindowEmpty");
    assert_eq!(v["error"]["exit_code"], 2);
    assert_eq!(v["command"]["name"], "moduli stratify");
    assert!(v["payload"].is_null());
}

#[test]
fn table1_has_eleven_rows() {
    let o = zkq(&["invariants", "table1"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[0].starts_with("monomial"));
    assert!(lines[12].starts_with("zero"));
    let (v, _) = json(&["invariants", "table1"]);
    assert_eq!(v["payload"].as_array().unwrap().len(), 11);
    assert_eq!(v["payload"][1]["charge"], 3);
}

#[test]
fn closure_failure_on_z2_is_reported_at_second_order() {
    let o = zkq(&["star", "check-closure", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("-2 z at h^2"), "{text}");
    let (v, _) = json(&["star", "check-closure", "--k", "2"]);
    assert_eq!(v["payload"]["result"], "witness");
    assert_eq!(v["payload"]["n"], 2);
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
    let (v, _) = json(&["star", "check-closure", "--k", "1"]);
    assert_eq!(v["payload"]["result"], "pass");
}

#[test]
fn stratify_lists_three_strata() {
    let text = stdout(&zkq(&["moduli", "stratify", "--k", "1", "--j", "3"]));
    for s in ["S_0", "S_1", "S_2"] {
        assert!(text.contains(s), "{text}");
    }
    assert!(!text.contains("S_3"));
    let (v, _) = json(&["moduli", "stratify", "--k", "1", "--j", "2"]);
    assert_eq!(v["payload"]["strata"].as_array().unwrap().len(), 2);
    assert_eq!(v["payload"]["endpoint"]["excluded"], false);
}

#[test]
fn json_output_is_byte_stable() {
    for args in [
        &["--format", "json", "sweep"][..],
        &["--format", "json", "invariants", "table1"][..],
        &["--format", "json", "star", "mul", "--k", "1", "--sigma", "u", "--f", "z^2 u", "--g", "z u", "--order", "2"][..],
    ] {
        let a = zkq(args).stdout;
        let b = zkq(args).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn out_flag_writes_the_file() {
    let path = std::env::temp_dir().join(format!("zkq-out-{}.json", std::process::id()));
    let o = zkq(&["--format", "json", "--out", path.to_str().unwrap(), "coh", "gens", "--k", "2", "--twist", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["payload"]["relations_hold"], true);
}

#[test]
fn sweep_agrees_on_the_reference_grid() {
    let (v, code) = json(&["sweep", "--k", "1,2,3", "--j", "2,3"]);
    assert_eq!(code, 0);
    let s = &v["payload"]["summary"];
    assert!(s["compared"].as_u64().unwrap() >= 40);
    assert_eq!(s["agreed"], s["compared"]);
    for cell in v["payload"]["cells"].as_array().unwrap() {
        if let Some(err) = cell["error"].as_str() {
            assert!(
                err.starts_with("NotQuantizable") || err.starts_with("InvalidPoissonStructure"),
                "{err}"
            );
            assert_ne!(cell["k"], 1);
            assert_eq!(cell["sigma"], "1");
        }
    }
}

#[test]
fn empty_sweep_grid_succeeds() {
    let (v, code) = json(&["sweep", "--k", "", "--j", "2"]);
    assert_eq!(code, 0);
    assert!(v["payload"]["cells"].as_array().unwrap().is_empty());
    assert!(v["payload"]["summary"]["agreement"].is_null());
}

#[test]
fn star_mul_matches_the_bracket() {
    let (v, _) = json(&["star", "mul", "--k", "1", "--sigma", "u", "--f", "z", "--g", "u"]);
    assert_eq!(v["payload"]["product"]["text"], "z u + u h^1");
    assert_eq!(v["command"]["args"]["sigma"], "u");
}

#[test]
fn oracle_equivalence_flags() {
    let base = ["moduli", "oracle", "--k", "1", "--j", "2", "--sigma", "u", "--point", "0,1"];
    let (v, _) = json(&[&base[..], &["--p-prime", "0,0", "--q-prime", "1,0"]].concat());
    assert_eq!(v["payload"]["equivalence"]["equivalent"], false);
    assert_eq!(v["payload"]["fiber_dim"], 1);
    let o = zkq(&[&base[..], &["--p-prime", "0,0"]].concat());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_reports_disagreements_past_the_reference_grid() {
    let (v, code) = json(&["sweep", "--k", "1", "--j", "4", "--sigma", "1"]);
    assert_eq!(code, 0);
    let bad: Vec<&str> = v["payload"]["cells"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["agree"] == false)
        .map(|c| c["point"].as_str().unwrap())
        .collect();
    assert_eq!(bad, ["[0:0:0:0:5:0]"]);
}
