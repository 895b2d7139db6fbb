use std::path::PathBuf;

use coevent_cli::{run, Outcome};
use serde_json::Value;

fn coevent(args: &[&str]) -> Outcome {
    run(std::iter::once("coevent").chain(args.iter().copied()))
}

fn ok_json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    let out = coevent(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("coevent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn coevent_names(v: &Value) -> Vec<String> {
    v["coevents"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap().to_string()).collect()
}

#[test]
fn triple_slit_multiplicative() {
    let v = ok_json(&["coevents", "--system", "triple-slit", "--scheme", "multiplicative"]);
    assert_eq!(coevent_names(&v), ["ADbar*", "BDbar*", "CDbar*", "AD*.CD*"]);
    let out = coevent(&["coevents", "--system", "triple-slit", "--scheme", "multiplicative"]);
    assert!(out.stdout.contains("AD*.CD*"));
}

#[test]
fn four_slit_null_pairs() {
    let v = ok_json(&["nullsets", "--system", "four-slit"]);
    assert_eq!(v["null_sets"], serde_json::json!(["{D0,D1}", "{D0,D2}", "{D0,D3}"]));
}

#[test]
fn coin_boundary() {
    let v = ok_json(&["coin", "test", "--p", "1/2", "--n", "1000", "--eps", "1/1000", "--observed", "451"]);
    assert_eq!(v["verdict"], "FailToReject");
    assert_eq!(v["h_epsilon"], serde_json::json!({ "Heads": 450 }));
    let v = ok_json(&["coin", "test", "--p", "1/2", "--n", "1000", "--eps", "1/1000", "--observed", "450"]);
    assert_eq!(v["verdict"], "Reject");
    let decimal = v["decimal"].as_str().unwrap();
    let mantissa = decimal.split('e').next().unwrap().replace('.', "");
    assert_eq!(mantissa.len(), 30, "{decimal}");
    let (num, den) = v["cumulative"].as_str().unwrap().split_once('/').unwrap();
    assert!(num.len() < den.len());
}

#[test]
fn coin_support_digits() {
    let v = ok_json(&["coin", "support", "--n", "1000", "--eps", "1/1000"]);
    let s = v["support"].as_str().unwrap();
    assert_eq!(s.len(), 298);
    assert!(s.starts_with("14"));
}

#[test]
fn registry_listing() {
    let v = ok_json(&["systems"]);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"sixteen-slit"));
    assert!(names.contains(&"example-7.1"));
    assert_eq!(coevent(&["systems"]), coevent(&["systems"]));
    let human = coevent(&["systems"]).stdout;
    let order: Vec<&str> = human.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(order, names);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["coevents", "--system", "four-slit", "--scheme", "quadratic-unital"][..],
        &["consistency", "--system", "example-7.1", "--partition", "ab", "--json"],
        &["pks", "verify"],
        &["lattice", "verify", "--N", "1", "--steps", "2", "--X", "0.5", "--seed", "9"],
    ] {
        assert_eq!(coevent(args), coevent(args), "{args:?}");
    }
}

#[test]
fn exit_codes() {
    let out = coevent(&["frobnicate"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    assert_eq!(coevent(&["coevents"]).code, 2);
    assert_eq!(coevent(&["coin", "test", "--p", "1/2"]).code, 2);
    assert_eq!(coevent(&["--help"]).code, 0);

    let out = coevent(&["nullsets", "--system", "no-such-system"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("no-such-system"));
    let out = coevent(&["coevents", "--system", "double-slit", "--scheme", "ideal"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("`ideal`"), "{}", out.stderr);
    let out = coevent(&["coin", "test", "--p", "3/2", "--n", "10", "--eps", "1/10", "--observed", "1"]);
    assert_eq!(out.code, 1);
    let out = coevent(&["classify", "--system", "double-slit", "--partition", "AD|BD", "--scheme", "linear"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("AD|BD"));
    let out = coevent(&["pks", "coevent", "--scheme", "linear", "--ray", "111"]);
    assert_eq!(out.code, 1);
    let out = coevent(&["lattice", "verify", "--N", "9", "--steps", "1", "--X", "0.5"]);
    assert_eq!(out.code, 1);
    let out = coevent(&["--json", "nullsets", "--system", "nope"]);
    let err: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(err["input"], "nope");
}

#[test]
fn registry_systems_round_trip_through_files() {
    for name in ["double-slit", "triple-slit", "four-slit", "example-7.1", "lemma-5.4-toy", "lemma-5.5-toy"] {
        let exported = coevent(&["systems", "--export", name]).stdout;
        let path = scratch(&format!("{name}.json"), &exported);
        let p = path.to_str().unwrap();
        for scheme in ["multiplicative", "linear-unital", "quadratic"] {
            let a = ok_json(&["coevents", "--system", name, "--scheme", scheme]);
            let b = ok_json(&["coevents", "--system", p, "--scheme", scheme]);
            assert_eq!(a["coevents"], b["coevents"], "{name} {scheme}");
        }
        assert_eq!(coevent(&["systems", "--export", p]).code, 1);
        let again = measure_core::io::to_json(&measure_core::io::parse_system(&exported).unwrap());
        assert_eq!(again, exported.trim_end());
    }
}

#[test]
fn float_system_tolerance() {
    let text = r#"{"histories":["x","y"],"mode":"float","matrix":[[{"re":0.5},{"re":-0.5}],[{"re":-0.5},{"re":0.5000001}]]}"#;
    let path = scratch("float.json", text);
    let p = path.to_str().unwrap();
    let tight = ok_json(&["nullsets", "--system", p]);
    assert_eq!(tight["null_sets"], serde_json::json!([]));
    let loose = ok_json(&["nullsets", "--system", p, "--tolerance", "1e-6"]);
    assert_eq!(loose["null_sets"], serde_json::json!(["{x,y}"]));
    assert_eq!(coevent(&["nullsets", "--system", p, "--tolerance", "-1"]).code, 1);
}

#[test]
fn hilbert_space_file() {
    let text = r#"{"dim":2,"state":[0.7071067811865476,[0,0.7071067811865476]],
        "steps":[{"projectors":[[[1,0],[0,0]],[[0,0],[0,1]]],"labels":["u","d"]}]}"#;
    let path = scratch("hilbert.json", text);
    let v = ok_json(&["coevents", "--system", path.to_str().unwrap(), "--scheme", "classical"]);
    assert_eq!(coevent_names(&v), ["u*", "d*"]);
}

#[test]
fn approximate_scheme() {
    let v = ok_json(&["coevents", "--system", "double-slit", "--scheme", "approx:1/10"]);
    assert_eq!(v["scheme"], "approx:1/10");
    assert!(coevent(&["coevents", "--system", "double-slit", "--scheme", "approx:x"]).code == 1);
}

#[test]
fn classify_and_consistency() {
    let v = ok_json(&["classify", "--system", "double-slit", "--scheme", "multiplicative", "--partition", "detector"]);
    for c in v["coevents"].as_array().unwrap() {
        assert_eq!(c["classical"], true);
        assert_eq!(c["restriction"], "Dbar*");
    }
    let v = ok_json(&["classify", "--system", "triple-slit", "--scheme", "multiplicative", "--partition", "slit"]);
    let odd: Vec<&Value> = v["coevents"].as_array().unwrap().iter().filter(|c| c["classical"] == false).collect();
    assert_eq!(odd.len(), 1);
    assert_eq!(odd[0]["coevent"]["name"], "AD*.CD*");

    let table = coevent(&["classify", "--system", "example-7.1", "--scheme", "multiplicative", "--partition", "ab", "--table"]);
    assert!(table.stdout.contains("co-event b2*"));

    let r = ok_json(&["consistency", "--system", "example-7.1", "--partition", "A=a1,a2|B=b1,b2"]);
    assert_eq!(r["weak"]["holds"], false);
    assert_eq!(r["preclusively_separable"], false);
    let r = ok_json(&["consistency", "--system", "double-slit", "--partition", "detector"]);
    assert_eq!(r["total"]["holds"], true);
    let r = ok_json(&["consistency", "--system", "lemma-5.4-toy", "--partition", "finest", "--scheme", "linear"]);
    assert_eq!(r["weak"]["holds"], true);
}

#[test]
fn pks_commands() {
    let v = ok_json(&["pks", "verify"]);
    assert_eq!(v["search"]["satisfiable"], false);
    assert_eq!(v["r_b11"], 16);
    assert_eq!(v["nullity"]["ok"], true);
    assert_eq!(v["table"].as_array().unwrap().len(), 33);
    assert_eq!(v["linear_coevent"]["unital"], true);
    let human = coevent(&["pks", "verify"]).stdout;
    assert!(human.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["112", "g", "g", "1", "0"]));

    for (scheme, colour) in [("linear", "green"), ("multiplicative", "red")] {
        let v = ok_json(&["pks", "coevent", "--scheme", scheme, "--ray", "-102", "--colour", colour]);
        assert_eq!(v["preclusive"], true);
        assert_eq!(v["unital"], true);
    }
    assert_eq!(coevent(&["pks", "coevent", "--scheme", "quadratic", "--ray", "001"]).code, 1);
}

#[test]
fn lattice_command() {
    let v = ok_json(&["lattice", "verify", "--N", "1", "--steps", "3", "--X", "0.7", "--seed", "4"]);
    assert_eq!(v["ok"], true);
    assert_eq!(coevent(&["lattice", "verify", "--N", "1"]).code, 1);
    let spec = scratch("lattice.json", r#"{"N":1,"steps":2,"X":0.3,"unitaries":"swap","state":{"basis":1}}"#);
    let v = ok_json(&["lattice", "verify", "--spec", spec.to_str().unwrap()]);
    assert_eq!(v["ok"], true);
    assert_eq!(v["steps"], 2);
}

#[test]
fn witness_command() {
    for name in ["double-slit", "four-slit", "lemma-5.5-toy"] {
        let v = ok_json(&["witness", "--system", name]);
        assert_eq!(v["preclusive"], true, "{name}");
        assert!(v["degree"].as_u64().unwrap() <= 2);
    }
}
