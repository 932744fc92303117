use std::process::Command;

use serde_json::Value;

fn vsa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_vsa")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("valid json")
}

#[test]
fn certify_osp12_through_three() {
    let (code, out, _) = vsa(&["certify", "--n", "1", "--m", "1", "--r", "1", "--max-weight", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["schema"], "vsa-report/1");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["result"]["verdict"]["kind"], "equal-through");
    assert_eq!(v["result"]["verdict"]["weight"], "3");
    assert_eq!(v["config"]["command"]["name"], "certify");
    assert!(v["tool_version"].is_string());
}

#[test]
fn verify_ope_all_pairs_pass() {
    let (code, out, _) = vsa(&["verify-ope", "--family", "s2", "--n", "1", "--m", "1", "--r", "1"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["result"]["coset"]["pairs_checked"], 25);
    assert_eq!(v["result"]["coset"]["pairs_passed"], 25);
}

#[test]
fn negative_parameter_is_usage_error() {
    let (code, _, err) = vsa(&["certify", "--n", "1", "--m", "-1", "--r", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid parameter"));
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, _) = vsa(&["certify", "--bogus"]);
    assert_eq!(code, 2);
}

#[test]
fn weight_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_vsa"))
        .args(["invariants", "--max-weight", "3"])
        .env("VSA_MAX_WEIGHT_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource cap"));
}

#[test]
fn ope_text_output() {
    let (code, out, _) = vsa(&["ope", "beta_1", "gamma_1", "--format", "text"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "(z-w)^-1: 1");
    let (code, _, err) = vsa(&["ope", ":beta_1 gamma_2", "beta_1"]);
    assert_eq!(code, 2);
    assert!(err.contains("1:1"));
    let (code, _, err) = vsa(&["ope", "gamma_3", "beta_1", "--bg", "2"]);
    assert_eq!(code, 2);
    assert!(err.contains("out of range"));
}

#[test]
fn virasoro_from_text_has_central_charge_minus_one() {
    let l = "1/2 :beta_1 d^1 gamma_1: + -1/2 :d^1 beta_1 gamma_1:";
    let (code, out, _) = vsa(&["ope", l, l]);
    assert_eq!(code, 0);
    let v = json(&out);
    let poles = &v["result"]["ope"]["poles"];
    assert_eq!(poles["4"]["text"], "-1/2");
}

#[test]
fn csv_tables() {
    let (code, out, _) = vsa(&["invariants", "--n", "1", "--m", "1", "--r", "1", "--max-weight", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "weight,dim\n0,1\n1,5\n2,9\n");
    let (code, out, _) = vsa(&["arc-hilbert", "--max-weight", "2", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "weight,dim\n0,1\n1,5\n2,9\n");
    let (code, _, _) = vsa(&["sugawara", "--format", "csv"]);
    assert_eq!(code, 2);
}

#[test]
fn char_of_fock_space() {
    let (code, out, _) = vsa(&["char", "--of", "fock", "--n", "1", "--m", "1", "--r", "1", "--max-weight", "1", "--format", "csv"]);
    assert_eq!(code, 0);
    // 2 even and 4 odd weight-1/2 generators; weight 1 is 3 + 2*4 + 6 quadratics
    assert_eq!(out, "weight,dim\n0,1\n1/2,6\n1,17\n");
}

#[test]
fn checks_pass_for_both_families() {
    for fam in ["s1", "s2"] {
        let n = if fam == "s1" { "2" } else { "1" };
        let r = if fam == "s1" { "2" } else { "1" };
        for cmd in ["coset-check", "embed-check", "sugawara"] {
            let (code, out, err) = vsa(&[cmd, "--family", fam, "--n", n, "--m", "1", "--r", r]);
            assert_eq!(code, 0, "{cmd} {fam}: {out}{err}");
        }
    }
}

#[test]
fn zhu_presentation_lists_relations() {
    let (code, out, _) = vsa(&["zhu", "--max-weight", "2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("generators:"));
    assert!(out.contains("degree 2"));
}

#[test]
fn mismatch_exits_one() {
    let (code, out, _) = vsa(&["certify", "--max-weight", "2", "--dmax", "1", "--dmax-cap", "1"]);
    assert_eq!(code, 1);
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert_eq!(v["result"]["verdict"]["kind"], "mismatch-at");
}

#[test]
fn output_file_and_thread_independence() {
    let dir = std::env::temp_dir().join(format!("vsa-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let mut results = Vec::new();
    for t in ["1", "4"] {
        let path = dir.join(format!("t{t}.json"));
        let (code, out, _) = vsa(&["certify", "--max-weight", "3", "--threads", t, "--output", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
        let v = json(&std::fs::read_to_string(&path).unwrap());
        results.push(v["result"].clone());
    }
    assert_eq!(results[0], results[1]);
    std::fs::remove_dir_all(&dir).ok();
}
