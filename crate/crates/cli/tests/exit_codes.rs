use std::process::Command;

fn run(args: &[&str]) -> (Option<i32>, serde_json::Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_tha-forge")).args(args).env_remove("THA_FORGE_SEED").output().unwrap();
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code(), doc)
}

#[test]
fn documented_exit_codes() {
    assert_eq!(run(&["build", "--type", "A", "--rank", "1", "--lambda", "1"]).0, Some(0));
    assert_eq!(run(&["build", "--type", "A", "--rank", "1", "--lambda", "0"]).0, Some(2));
    assert_eq!(run(&["emit", "nothing", "--type", "A", "--rank", "1", "--lambda", "1"]).0, Some(2));
    assert_eq!(run(&["check", "thm43", "--type", "A", "--rank", "1", "--lambda", "2"]).0, Some(4));
    assert_eq!(run(&["check", "lemma42", "--type", "A", "--rank", "1", "--lambda", "1", "--abc", "1,2,1"]).0, Some(1));
    let (code, doc) = run(&["emit", "tables", "--type", "A", "--rank", "1", "--lambda", "1", "--out", "/proc/none/x.json"]);
    assert_eq!(code, Some(5));
    assert_eq!(doc["error"]["kind"], "io");
}

#[test]
fn seed_defaults_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tha-forge"))
        .args(["check", "focal", "--type", "A", "--rank", "1", "--lambda", "1", "--cutoff", "1", "--samples", "5"])
        .env("THA_FORGE_SEED", "123")
        .output()
        .unwrap();
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["seed"], 123);
    assert_eq!(doc["result"]["seed"], 123);
}
