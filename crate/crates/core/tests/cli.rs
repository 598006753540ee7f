use std::process::Command;

fn rdlab(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rdlab")).args(args).output().expect("binary runs");
    (out.status.success(), String::from_utf8_lossy(&out.stdout).into_owned() + &String::from_utf8_lossy(&out.stderr))
}

fn scratch(name: &str) -> String {
    let dir = std::env::temp_dir().join(format!("rdlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn gen_then_attack_rd() {
    let path = scratch("i.rdi");
    let (ok, out) = rdlab(&["gen", "rd", "--q", "2", "--m", "7", "--n", "8", "--k", "4", "--r", "2", "--seed", "1", "-o", &path]);
    assert!(ok, "{out}");
    let (ok, out) = rdlab(&["attack", &path, "--a", "0"]);
    assert!(ok, "{out}");
    assert!(out.contains("solved") && out.contains("modeling: smplus"), "{out}");

    let (ok, out) = rdlab(&["--report", "machine", "attack", &path, "--a", "1"]);
    assert!(ok, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["verified"], true);
    assert!(doc["elapsed_seconds"].is_number());
}

#[test]
fn gen_then_attack_minrank() {
    let path = scratch("m.mri");
    let (ok, out) = rdlab(&["gen", "minrank", "--q", "2", "--m", "6", "--n", "8", "--K", "14", "--r", "2", "--seed", "4", "-o", &path]);
    assert!(ok, "{out}");
    let (ok, out) = rdlab(&["--report", "machine", "attack", &path, "--a", "1", "--probabilistic", "--seed", "9"]);
    assert!(ok, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["result"]["verified"], true);
}

#[test]
fn estimate_preset_row() {
    let (ok, out) = rdlab(&["--report", "machine", "estimate", "--preset", "new2rollo-i-128"]);
    assert!(ok, "{out}");
    let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rows = doc["result"]["rows"].as_array().unwrap();
    let bits: Vec<u64> = rows.iter().map(|r| r["reported_bits"].as_u64().unwrap()).collect();
    assert_eq!(bits, vec![205, 201, 212]);
}

#[test]
fn verify_reports_verdict() {
    let (ok, out) = rdlab(&["verify", "--property", "unfold-sm", "--trials", "3"]);
    assert!(ok, "{out}");
    assert!(out.contains("3/3 passed") && out.contains("PASS"), "{out}");
    let (ok, out) = rdlab(&["verify", "--property", "no-such-check"]);
    assert!(!ok);
    assert!(out.contains("unknown property"), "{out}");
}

#[test]
fn rejects_unknown_instance_keys() {
    let path = scratch("bad.rdi");
    std::fs::write(&path, r#"{"kind":"rd","colour":"blue"}"#).unwrap();
    let (ok, out) = rdlab(&["attack", &path]);
    assert!(!ok);
    assert!(out.contains("malformed instance file"), "{out}");
}
