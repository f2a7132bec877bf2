use assert_cmd::Command;
use serde_json::Value;

fn permpoly() -> Command {
    Command::cargo_bin("permpoly").unwrap()
}

fn stdout_of(args: &[&str]) -> String {
    let out = permpoly().args(args).assert().success().get_output().stdout.clone();
    String::from_utf8(out).unwrap()
}

#[test]
fn field_parameters() {
    permpoly()
        .args(["field", "--t", "3"])
        .assert()
        .success()
        .stdout("t: 3\nq: 8\nmodulus: 0xb\ngenerator: a = 0x2\nmu: 1 = 0x1\n");
    let out = stdout_of(&["field", "--t", "4", "--mod", "0x19"]);
    assert!(out.contains("modulus: 0x19"), "{out}");
}

#[test]
fn bad_modulus_is_a_usage_error() {
    permpoly().args(["field", "--t", "3", "--mod", "0xf"]).assert().code(2);
}

#[test]
fn pptest_x6() {
    permpoly().args(["pptest", "--t", "3", "--poly", "x^6"]).assert().success().stdout("is_pp: true\n");
    permpoly()
        .args(["pptest", "--t", "3", "--poly", "x^6", "--method", "hermite"])
        .assert()
        .success()
        .stdout("is_pp: true\n");
}

#[test]
fn pptest_reports_failures() {
    let out = stdout_of(&["pptest", "--t", "2", "--poly", "x^3"]);
    assert_eq!(out, "is_pp: false\ncollision: f(1) = f(a^1)\n");
    let out = stdout_of(&["pptest", "--t", "2", "--poly", "x^3", "--method", "hermite"]);
    assert_eq!(out, "is_pp: false\nfailure: ExponentDegreeTooHigh(1)\n");
    let json: Value = serde_json::from_str(&stdout_of(&["pptest", "--t", "2", "--poly", "x^3", "--json"])).unwrap();
    assert_eq!(json["is_pp"], false);
    assert_eq!(json["witness"], serde_json::json!([1, 2]));
}

#[test]
fn parse_errors_name_the_token() {
    let out = permpoly().args(["pptest", "--t", "3", "--poly", "x^6+qq"]).assert().code(2);
    let err = String::from_utf8(out.get_output().stderr.clone()).unwrap();
    assert!(err.contains("`qq`"), "{err}");

    let out = permpoly().args(["lucas", "--n", "2", "--parts", "1,zz"]).assert().code(2);
    let err = String::from_utf8(out.get_output().stderr.clone()).unwrap();
    assert!(err.contains("zz"), "{err}");

    let out = permpoly().args(["hermite-sym", "--deg", "6", "--r", "2", "--t", "9", "--u", "2", "--pin", "zz=1"]).assert().code(2);
    let err = String::from_utf8(out.get_output().stderr.clone()).unwrap();
    assert!(err.contains("zz"), "{err}");

    permpoly().args(["frobnicate"]).assert().code(2);
    permpoly().args(["classify", "--deg", "6"]).assert().code(2);
}

#[test]
fn lucas_residues() {
    permpoly().args(["lucas", "--n", "2", "--parts", "1,1"]).assert().success().stdout("0\n");
    permpoly().args(["lucas", "--n", "47", "--parts", "32,8,4,2,1"]).assert().success().stdout("1\n");
    permpoly().args(["lucas", "--n", "4", "--parts", "1,3", "--p", "3"]).assert().success().stdout("1\n");
    permpoly().args(["lucas", "--n", "4", "--parts", "1,2"]).assert().code(2);
}

#[test]
fn hermite_sym_prints_the_coefficient() {
    let out = stdout_of(&["hermite-sym", "--deg", "7", "--r", "1", "--t", "3", "--u", "0"]);
    assert_eq!(out, "1\n");
    let out = stdout_of(&["hermite-sym", "--deg", "7", "--r", "2", "--t", "10", "--u", "19", "--pin", "a=0"]);
    assert_eq!(out, "d^33\n");
    // r must match t
    permpoly().args(["hermite-sym", "--deg", "6", "--r", "4", "--t", "9", "--u", "2"]).assert().code(2);
}

#[test]
fn classify_nonexistence_json() {
    let out = stdout_of(&["classify", "--deg", "6", "--t", "6", "--json"]);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["pps_found"], 0);
    assert_eq!(report["classes"], serde_json::json!([]));
    for key in ["degree", "t", "modulus_hex", "mode", "candidates_tested", "table_diff", "elapsed_ms"] {
        assert!(report.get(key).is_some(), "{key}");
    }
}

#[test]
fn classify_json_round_trips() {
    let out = stdout_of(&["classify", "--deg", "6", "--t", "3", "--json", "--workers", "2"]);
    let report = permpoly::classifier::ClassificationReport::from_json(&out).unwrap();
    assert_eq!(report.to_json() + "\n", out);
    assert_eq!(report.classes.len(), 9);
}

#[test]
fn classify_modes_agree() {
    let classes = |mode: &str| {
        let out = stdout_of(&["classify", "--deg", "7", "--t", "4", "--json", "--mode", mode]);
        serde_json::from_str::<Value>(&out).unwrap()["classes"].clone()
    };
    assert_eq!(classes("verify"), classes("fast"));
}

#[test]
fn classify_human_output() {
    let out = stdout_of(&["classify", "--deg", "6", "--t", "5"]);
    assert!(out.contains("permutations found:"), "{out}");
    assert!(out.contains("  x^6  (witness x^6"), "{out}");
}

#[test]
fn verify_suites_exit_codes() {
    permpoly().args(["verify", "--suite", "quintic", "--t", "5"]).assert().success();
    permpoly().args(["verify", "--suite", "dickson", "--t", "4"]).assert().success();
    // the listed t = 3 classes break the odd-t coefficient restrictions
    let out = permpoly().args(["verify", "--suite", "dickson", "--t", "3"]).assert().code(1);
    let text = String::from_utf8(out.get_output().stdout.clone()).unwrap();
    assert!(text.contains("counterexample: x^6+x^3+x^2"), "{text}");
    permpoly().args(["verify", "--suite", "tables", "--t", "4"]).assert().success();
    permpoly().args(["verify", "--suite", "quintic"]).assert().code(2);
    permpoly().args(["verify", "--suite", "tables", "--t", "12"]).assert().code(2);
}

#[test]
fn verify_identities_reports_each_check() {
    let out = permpoly().args(["verify", "--suite", "identities", "--json"]).assert().code(1);
    let checks: Value = serde_json::from_slice(&out.get_output().stdout).unwrap();
    let checks = checks.as_array().unwrap();
    assert_eq!(checks.len(), 8);
    let failing: Vec<&str> =
        checks.iter().filter(|c| c["pass"] == false).map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(failing.len(), 1);
    assert!(failing[0].starts_with("c^23 E3"), "{failing:?}");
}
