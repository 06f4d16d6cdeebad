use std::process::{Command, Output};

fn gqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

#[test]
fn decide_linearity_is_valid() {
    let o = gqp(&["decide", "A p. A q. (p -> q) | (q -> p)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "VALID");
}

#[test]
fn decide_excluded_middle_is_o_bottom() {
    let o = gqp(&["decide", "A p. p | (p -> 0)"]);
    assert_eq!(o.status.code(), Some(10));
    assert_eq!(stdout(&o), "EQUIV o^1 0");
}

#[test]
fn eval_in_finite_space() {
    let o = gqp(&["eval", "o 0", "--space", "vk:4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1/2");
}

#[test]
fn eval_reads_valuation_file_and_formula_file() {
    let dir = std::env::temp_dir().join(format!("gqp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let val = dir.join("v.json");
    let form = dir.join("a.gqp");
    std::fs::write(&val, r#"{"p": 2, "q": "top"}"#).unwrap();
    std::fs::write(&form, "q -> p\n").unwrap();
    let o = gqp(&["eval", &format!("@{}", form.display()), "--val", val.to_str().unwrap()]);
    assert_eq!(stdout(&o), "2/3");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_verdict() {
    let o = gqp(&["--format", "json", "decide", "A p. p | ~p"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["verdict"]["verdict"], "EquivCirc");
    assert_eq!(doc["verdict"]["k"], 1);
}

#[test]
fn resource_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gqp"))
        .args(["decide", "--verify", "A p. A q. A r. (p -> q) | (q -> r) | r"])
        .env("GQP_MAX_VALUATIONS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn selftest_passes() {
    let o = gqp(&["selftest"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(!text.contains("FAIL"));
    assert!(text.lines().count() > 60);
}
