use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn quintic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quintic")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_string_lossy().into_owned()
}

/// The split net, split form and a degenerate net over ZZ, from `split-model`.
fn fixtures(dir: &Path) -> (String, String, String) {
    let o = quintic(&["split-model", "--ring", "ZZ", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    let net = write(dir, "net.json", &v["net"]);
    let form = write(dir, "form.json", &v["form"]);
    let mut deg = v["net"].clone();
    deg["C"]["entries"] = Value::Array(vec![Value::String("0".into()); 25]);
    let deg = write(dir, "degenerate.json", &deg);
    (net, form, deg)
}

#[test]
fn zero_samples_is_a_usage_error() {
    let o = quintic(&["verify", "--suite", "identities", "--mode", "randomized", "--samples", "0"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn bad_flags_are_usage_errors() {
    assert_eq!(code(&quintic(&["verify", "--suite", "everything"])), 2);
    assert_eq!(code(&quintic(&["verify", "--seed", "abc"])), 2);
    assert_eq!(code(&quintic(&["census", "--q", "6"])), 2);
    assert_eq!(code(&quintic(&["lines", "--q", "2", "--point", "1,0"])), 2);
    assert_eq!(code(&quintic(&["shafarevich", "--primes", "4"])), 2);
}

#[test]
fn verify_all_is_deterministic() {
    let a = quintic(&["verify", "--suite", "all", "--seed", "42", "--json"]);
    let b = quintic(&["verify", "--suite", "all", "--seed", "42", "--json"]);
    assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stdout));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["status"], "pass");
    for d in v["details"].as_array().unwrap() {
        for key in ["identity", "mode", "status", "witness", "terms"] {
            assert!(d.get(key).is_some(), "record lacks {key}: {d}");
        }
    }
}

#[test]
fn symbolic_identity_passes() {
    let o = quintic(&["verify", "--suite", "identities", "--mode", "symbolic"]);
    let out = String::from_utf8_lossy(&o.stdout);
    assert_eq!(code(&o), 0, "{out}");
    assert!(out.contains("adjugate(P′) = Q_ν: pass"), "{out}");
}

#[test]
fn term_budget_overrun_is_reported() {
    let o = Command::new(env!("CARGO_BIN_EXE_quintic"))
        .args(["verify", "--suite", "identities", "--mode", "symbolic", "--json"])
        .env("QF_TERM_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("term budget exceeded"));
}

#[test]
fn correspondence_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let (net, form, deg) = fixtures(dir.path());
    let out = dir.path().join("out.json").to_string_lossy().into_owned();
    let o = quintic(&["correspond", "--dir", "net2form", "--in", &net, "--out", &out, "--json"]);
    assert_eq!(code(&o), 0);
    let q: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    // Over ZZ the image of the split net is −Q_spl.
    let entries: Vec<&str> = q["Q"]["entries"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(entries, ["0", "1", "0", "1", "0", "0", "0", "0", "-1"]);
    assert_eq!(json_of(&o)["summary"]["det"], "1");

    let o = quintic(&["correspond", "--dir", "form2net", "--in", &form, "--json"]);
    assert_eq!(code(&o), 0);
    let back = json_of(&o)["image"].clone();
    let split: Value = serde_json::from_str(&std::fs::read_to_string(&net).unwrap()).unwrap();
    assert_eq!(back, split);

    let o = quintic(&["correspond", "--dir", "net2form", "--in", &deg]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("rank-4 certification failed at (0,0,1)"));

    let mut zero = serde_json::from_str::<Value>(&std::fs::read_to_string(&form).unwrap()).unwrap();
    zero["Q"]["entries"] = serde_json::json!(["1", "0", "0", "0", "1", "0", "0", "0", "0"]);
    let zero = write(dir.path(), "degenerate_form.json", &zero);
    assert_eq!(code(&quintic(&["correspond", "--dir", "form2net", "--in", &zero])), 1);
    assert_eq!(code(&quintic(&["correspond", "--dir", "form2net", "--in", "/nonexistent.json"])), 2);
}

#[test]
fn census_and_lines() {
    let o = quintic(&["census", "--q", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["total"], 15);
    let sizes: Vec<u64> = v["orbits"].as_array().unwrap().iter().map(|o| o["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes.iter().sum::<u64>(), 15);

    let o = quintic(&["lines", "--point", "0,0,0,0,0,1,1", "--q", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["orbit"], "O2");
    assert_eq!(v["lines"].as_array().unwrap().len(), 2);

    let o = quintic(&["trisecant", "--point", "0,-4,0,0,0,1,0", "--q", "5", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["profile"], serde_json::json!([1, 1, 1]));

    // Off the model.
    assert_eq!(code(&quintic(&["lines", "--point", "1,0,1,0,0,0,0", "--q", "3"])), 1);
}

#[test]
fn action_in_characteristic_two() {
    let o = quintic(&["act", "--char", "2", "--g", "1,1,0,1", "--point", "0,0,0,0,0,1,0", "--json"]);
    assert_eq!(code(&o), 0);
    let v = json_of(&o);
    assert_eq!(v["image"], "0,1,0,0,0,1,0");
    assert_eq!(v["image_on_model"], true);
    let o = quintic(&["act", "--char", "0", "--g", "2,0,0,1/2", "--point", "0,1,0,0,0,1,0", "--json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn arithmetic_commands() {
    let o = quintic(&["shafarevich", "--primes", "3", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["count"], 4);
    let o = quintic(&["shafarevich", "--primes", "3,5", "--json"]);
    assert_eq!(json_of(&o)["count"], 8);

    let dir = tempfile::tempdir().unwrap();
    let (_, form, _) = fixtures(dir.path());
    let o = quintic(&["local-class", "--form", &form, "--place", "7", "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json_of(&o)["class"], "split");
    let o = quintic(&["split-model", "--form", &form, "--json"]);
    assert_eq!(json_of(&o)["class"], "class_split_model");

    let id = serde_json::json!({"ring": {"kind": "IntegerRing"}, "Q": {"rows": 3, "cols": 3, "entries": ["1","0","0","0","1","0","0","0","1"]}});
    let id = write(dir.path(), "id.json", &id);
    let o = quintic(&["local-class", "--form", &id, "--place", "inf", "--json"]);
    assert_eq!(json_of(&o)["class"], "nonsplit");
    let o = quintic(&["split-model", "--form", &id, "--json"]);
    assert_eq!(json_of(&o)["class"], "class_definite");
    assert_eq!(code(&quintic(&["local-class", "--form", &id, "--place", "6"])), 2);
}
