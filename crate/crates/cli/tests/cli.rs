use std::fs;
use std::process::{Command, Output};

use serde_json::{json, Value};

const HEADLINE: &str = "forall x. (x^2>2 /\\ x^10-2*x^5+1>=0) \\/ x<2";
const EXIST: &str = "exists x. x*x=2 /\\ x*x*x>2.5";
const UNIV: &str = "forall x. x*x - 2 > 0 \\/ x < 2";

fn rcfcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rcfcert"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_out(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn decide_headline_theorem() {
    let out = rcfcert(&["decide", HEADLINE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["truth"], json!(true));
    assert_eq!(v["certificate"]["kind"], json!("universal"));
    assert_eq!(v["certificate"]["points"].as_array().unwrap().len(), 4);
    assert_eq!(
        v["certificate"]["points"][1],
        json!({"type": "rat", "value": "1"})
    );
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == json!(true)));
}

#[test]
fn decide_existential_gives_sqrt_two() {
    let out = rcfcert(&["decide", EXIST]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_out(&out);
    assert_eq!(v["certificate"]["kind"], json!("existential"));
    let w = &v["certificate"]["points"][0];
    assert_eq!(w["type"], json!("arep"));
    assert_eq!(w["poly"], json!(["-2", "0", "1"]));
}

#[test]
fn decide_false_formula() {
    let out = rcfcert(&["decide", "forall x. x^2 > 0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_out(&out);
    assert_eq!(v["truth"], json!(false));
    assert_eq!(
        v["certificate"],
        json!({"kind": "existential", "points": [{"type": "rat", "value": "0"}]})
    );
}

#[test]
fn decide_is_deterministic() {
    assert_eq!(
        stdout(&rcfcert(&["decide", HEADLINE])),
        stdout(&rcfcert(&["decide", HEADLINE]))
    );
}

#[test]
fn parse_errors_exit_two_with_position() {
    let out = rcfcert(&["decide", "forall x. x^2 >> 0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("position 15"));
    assert_eq!(
        rcfcert(&["decide", "forall x. x*y > 0"]).status.code(),
        Some(2)
    );
    assert_eq!(rcfcert(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn emitted_certificate_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let path = path.to_str().unwrap();
    assert_eq!(
        rcfcert(&["decide", HEADLINE, "--emit-cert", path])
            .status
            .code(),
        Some(0)
    );
    let out = rcfcert(&["check", HEADLINE, "--cert", path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_out(&out)["passed"], json!(true));
}

#[test]
fn check_reference_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            HEADLINE,
            "[Arep [:-2, 0, 1:] (-2) (- 1/3), Rat 1, Arep [:-2, 0, 1:]\n   (7/6) (19/12), Rat 2]\n",
        ),
        (EXIST, "[Arep [:-2,0,1:] 0 2]"),
        (
            UNIV,
            "[Arep [:-2, 0, 1:] (-2) (-1/3), Arep [:-2, 0, 1:] (7/6) (19/12), Rat 2]",
        ),
    ];
    for (i, (formula, cert)) in cases.iter().enumerate() {
        let path = dir.path().join(format!("{i}.cert"));
        fs::write(&path, cert).unwrap();
        let out = rcfcert(&["check", formula, "--cert", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    }
}

#[test]
fn check_truncated_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("short.cert");
    fs::write(&path, "[Arep [:-2, 0, 1:] (7/6) (19/12), Rat 2]").unwrap();
    let out = rcfcert(&["check", UNIV, "--cert", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_out(&out);
    assert_eq!(v["passed"], json!(false));
    let failed: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == json!(false))
        .collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["check"].as_str().unwrap().starts_with("complete"));
}

#[test]
fn check_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope");
    assert_eq!(
        rcfcert(&["check", UNIV, "--cert", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let bad = dir.path().join("bad.cert");
    fs::write(&bad, "[Arep [:-2, 0, 1:] (7/6)").unwrap();
    assert_eq!(
        rcfcert(&["check", UNIV, "--cert", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn isolate_outputs() {
    let out = rcfcert(&["isolate", "x^2-2"]);
    assert_eq!(out.status.code(), Some(0));
    let pts = json_out(&out);
    assert_eq!(pts.as_array().unwrap().len(), 2);
    assert!(pts
        .as_array()
        .unwrap()
        .iter()
        .all(|p| p["type"] == json!("arep")));
    assert_eq!(json_out(&rcfcert(&["isolate", "x^2+1"])), json!([]));
    assert_eq!(
        json_out(&rcfcert(&["isolate", "x^10-2*x^5+1"])),
        json!([{"type": "rat", "value": "1"}])
    );
    assert_eq!(
        json_out(&rcfcert(&["isolate", "[:-1, 0, 4:]"])),
        json!([
            {"type": "rat", "value": "-1/2"},
            {"type": "rat", "value": "1/2"}
        ])
    );
    assert_eq!(rcfcert(&["isolate", "x - x"]).status.code(), Some(2));
}

#[test]
fn sign_outputs() {
    let sign = |p: &str, a: &str| stdout(&rcfcert(&["sign", p, a])).trim().to_string();
    assert_eq!(sign("x-1", "Arep [:-2,0,1:] 0 2"), "1");
    assert_eq!(sign("x^2-2", "Arep [:-2,0,1:] 0 2"), "0");
    assert_eq!(sign("x", "Rat -3"), "-1");
    assert_eq!(
        json_out(&rcfcert(&["--json", "sign", "x", "Rat -3"])),
        json!({"sign": -1})
    );
    assert_eq!(
        rcfcert(&["sign", "x", "Arep [:-2,0,1:] -2 2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rcfcert(&["sign", "x", "Rat"]).status.code(), Some(2));
}
