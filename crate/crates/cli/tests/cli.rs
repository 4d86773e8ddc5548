use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn weilkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run(name: &str) -> (i32, Value, String) {
    let path = scenario(name);
    let out = weilkit(&["--scenario", path.to_str().unwrap()]);
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (
        out.status.code().unwrap(),
        report,
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == name)
        .unwrap()
}

#[test]
fn groups_scenario_reports_order_120() {
    let (code, report, _) = run("groups_sp2_f5.toml");
    assert_eq!(code, 0);
    assert_eq!(report["status"], "pass");
    assert_eq!(check(&report, "order")["data"]["order"], 120);
    assert_eq!(check(&report, "similitude_index")["data"]["index"], 2);
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn bad_modulus_is_malformed_input() {
    let (code, report, stderr) = run("bad_modulus.toml");
    assert_eq!(code, 2);
    assert_eq!(report, Value::Null);
    assert!(stderr.contains("bad modulus"), "{stderr}");
}

#[test]
fn wrong_index_assertion_fails() {
    let (code, report, _) = run("groups_wrong_index.toml");
    assert_eq!(code, 1);
    let c = check(&report, "expect_index");
    assert_eq!(c["status"], "fail");
    assert_eq!(c["data"]["observed"], 2);
    assert_eq!(check(&report, "similitude_index")["status"], "pass");
}

#[test]
fn parse_errors_carry_positions() {
    let dir = std::env::temp_dir().join(format!("weilkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases = [
        ("unclosed.toml", "kind = \"groups\"\nl = 5\nh = [1\n", "line 3"),
        ("unknown.toml", "kind = \"groups\"\nl = 5\nwidth = 2\n", "line 3"),
        ("kind.toml", "kind = \"rings\"\nl = 5\n", "line 1"),
    ];
    for (file, text, want) in cases {
        let path = dir.join(file);
        std::fs::write(&path, text).unwrap();
        let out = weilkit(&["--scenario", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{file}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(stderr.contains(want), "{file}: {stderr}");
    }
    let out = weilkit(&["--scenario", dir.join("missing.toml").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = weilkit(&[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_pass() {
    for name in [
        "forms_split.toml",
        "split2_h1.toml",
        "surject_l5.toml",
        "tower_gr9.toml",
        "tower_split.toml",
        "weil_f9.toml",
        "weil_gr_rank2.toml",
    ] {
        let (code, report, _) = run(name);
        assert_eq!(code, 0, "{name}: {report:#}");
    }
}

#[test]
fn restriction_of_x_over_f9() {
    let (_, report, _) = run("weil_f9.toml");
    let phi = &check(&report, "restricted_matrix")["data"]["phi"];
    assert_eq!(*phi, serde_json::json!([[0, 1], [2, 0]]));
}

#[test]
fn reports_are_byte_identical_and_echo_the_seed() {
    let path = scenario("surject_l5.toml");
    let p = path.to_str().unwrap();
    let a = weilkit(&["--scenario", p, "--seed", "5"]);
    let b = weilkit(&["--scenario", p, "--seed", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let report: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(report["seed"], 5);
    assert_eq!(report["scenario"]["seed"], 5);
    let out = std::env::temp_dir().join(format!("weilkit-out-{}.json", std::process::id()));
    let c = weilkit(&["--scenario", p, "--seed", "5", "--out", out.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), c.stdout);
    let (_, defaulted, _) = run("groups_sp2_f5.toml");
    assert_eq!(defaulted["seed"], weilkit_cli::DEFAULT_SEED);
}

#[test]
fn tiny_cap_is_a_failed_check() {
    let path = scenario("groups_sp2_f5.toml");
    let out = weilkit(&["--scenario", path.to_str().unwrap(), "--cap", "10"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn mutated_suite_fails() {
    let out = weilkit(&["--suite", "--mutate", "skew-dual-basis"]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["dual_basis"]);
}
