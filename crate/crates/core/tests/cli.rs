use std::process::Command;

use rumer::cli::{run, Outcome};
use serde_json::Value;

fn rumer(args: &[&str]) -> Outcome {
    run(std::iter::once("rumer").chain(args.iter().copied()))
}

fn json(out: &Outcome) -> Value {
    assert_eq!(out.code, 0, "stderr: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is one JSON document")
}

#[test]
fn count_all_methods_agree() {
    let out = rumer(&["count", "--n", "4", "--m", "2", "--method", "all"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    for (line, name) in lines.iter().zip(["formula", "product", "recurrence", "enumerate"]) {
        assert!(line.starts_with(name) && line.ends_with("20"), "{line}");
    }
    assert!(lines[4].ends_with("true"));

    let v = json(&rumer(&["count", "--n", "4", "--m", "2", "--method", "all", "--format", "json"]));
    assert_eq!(v["agree"], Value::Bool(true));
    for k in ["formula", "product", "recurrence", "enumerate"] {
        assert_eq!(v["counts"][k].to_string(), "20");
    }
}

#[test]
fn count_single_values() {
    assert_eq!(rumer(&["count", "--multidegree", "1,1,1,1"]).stdout, "2\n");
    assert_eq!(rumer(&["count", "--n", "2", "--m", "50"]).stdout, "1\n");
    assert_eq!(rumer(&["count", "--n", "6", "--m", "3", "--method", "product"]).stdout, "490\n");
    let big = rumer(&["count", "--n", "30", "--m", "40"]);
    assert_eq!(big.code, 0);
    assert!(big.stdout.trim().len() > 20);
}

#[test]
fn count_agreement_across_the_verify_range() {
    for n in 2..=4 {
        for m in 0..=3 {
            let v = json(&rumer(&[
                "count", "--n", &n.to_string(), "--m", &m.to_string(), "--method", "all", "--format", "json",
            ]));
            assert_eq!(v["agree"], Value::Bool(true), "n={n} m={m}");
        }
    }
}

#[test]
fn count_csv_and_product_domain() {
    let out = rumer(&["count", "--n", "2", "--m", "3", "--method", "all", "--format", "csv"]);
    assert_eq!(out.stdout, "method,value\nformula,1\nproduct,\nrecurrence,1\nenumerate,1\nagree,true\n");
    let out = rumer(&["count", "--n", "2", "--m", "3", "--method", "product"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
}

#[test]
fn enumeration_guard_refuses_loudly() {
    let out = rumer(&["count", "--n", "8", "--m", "6", "--method", "enumerate", "--max-schemes", "1000"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--max-schemes"), "{}", out.stderr);
    let out = rumer(&["enumerate", "--n", "20", "--m", "10"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--max-schemes"));
}

#[test]
fn enumerate_listings() {
    let out = rumer(&["enumerate", "--multidegree", "1,1,1,1"]);
    assert_eq!(out.stdout, "n=4; (1,2)(3,4)\nn=4; (1,4)(2,3)\ncount: 2\n");
    let out = rumer(&["enumerate", "--n", "3", "--m", "1"]);
    assert_eq!(out.stdout, "n=3; (1,2)\nn=3; (1,3)\nn=3; (2,3)\ncount: 3\n");
    let out = rumer(&["enumerate", "--multidegree", "1,0"]);
    assert_eq!(out.stdout, "count: 0\n");
    let v = json(&rumer(&["enumerate", "--multidegree", "1,1,2", "--format", "json"]));
    assert_eq!(v["count"].to_string(), "1");
    assert_eq!(v["diagrams"][0]["edges"], serde_json::json!([[1, 3], [2, 3]]));
}

#[test]
fn straighten_commands() {
    let out = rumer(&["straighten", "[1,3][2,4]", "--n", "4"]);
    assert_eq!(out.stdout, "[1,2][3,4] + [1,4][2,3]\n");
    let out = rumer(&["straighten", "[1,2][3,4]-[1,3][2,4]+[1,4][2,3]", "--n", "4"]);
    assert_eq!(out.stdout, "0\n");
    let out = rumer(&["straighten", "[2,1]", "--n", "2"]);
    assert_eq!(out.stdout, "-[1,2]\n");
    let out = rumer(&["straighten", "[1,4][2,5][3,6]", "--n", "6", "--verify"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.ends_with("verify: pass\n"));
    let v = json(&rumer(&["straighten", "[1,3][2,4]", "--n", "4", "--verify", "--format", "json"]));
    assert_eq!(v["verified"], Value::Bool(true));
    assert_eq!(v["result"]["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn straighten_parse_errors_exit_2_with_position() {
    let out = rumer(&["straighten", "[1,3][2,", "--n", "4"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("position"), "{}", out.stderr);
    assert!(out.stdout.is_empty());
    let out = rumer(&["straighten", "[1,9]", "--n", "4"]);
    assert_eq!(out.code, 2);
}

#[test]
fn verify_reports() {
    let out = rumer(&["verify", "--n", "2..4", "--m", "0..3"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("all pass\n"));
    let out = rumer(&["verify", "--n", "2..2", "--m", "0..10"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().filter(|l| l.contains("rho=1 ")).count(), 11);
    let out = rumer(&["verify", "--n", "4..4", "--m", "2..2", "--format", "json"]);
    assert!(out.stdout.contains("\"full_rank\": 20"));
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert_eq!(v["results"][0]["basis"]["rumer_rank"].to_string(), "20");
}

#[test]
fn verify_guard() {
    let out = rumer(&["verify", "--n", "6", "--m", "4", "--max-schemes", "100"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("--max-schemes"));
}

#[test]
fn render_outputs_svg() {
    let out = rumer(&["render", "--diagram", "n=4; (1,2)(3,4)"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("<svg"));
    assert_eq!(out.stdout.matches("<path").count(), 2);
    let out = rumer(&["render", "--diagram", r#"{"n":2,"edges":[[1,2],[1,2]]}"#]);
    assert_eq!(out.stdout.matches(" Q ").count(), 2);
    let out = rumer(&["render", "--diagram", "n=3;"]);
    assert_eq!(out.stdout.matches("class=\"atom\"").count(), 3);
    assert_eq!(rumer(&["render", "--diagram", "n=3; (1,5)"]).code, 2);
    assert_eq!(rumer(&["render", "--diagram", "n=3;", "--format", "json"]).code, 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("rumer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("d.svg");
    let out = rumer(&["render", "--diagram", "n=4; (1,4)(2,3)", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors() {
    assert_eq!(rumer(&[]).code, 2);
    assert_eq!(rumer(&["count"]).code, 2);
    assert_eq!(rumer(&["count", "--n", "3", "--m", "1", "--multidegree", "1,1"]).code, 2);
    assert_eq!(rumer(&["count", "--n", "3", "--m", "1", "--format", "svg"]).code, 2);
    assert_eq!(rumer(&["count", "--multidegree", "1,x"]).code, 2);
    assert_eq!(rumer(&["--help"]).code, 0);
}

#[test]
fn binary_exit_codes_and_streams() {
    let bin = env!("CARGO_BIN_EXE_rumer");
    let out = Command::new(bin)
        .args(["count", "--n", "4", "--m", "2", "--format", "json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["counts"]["formula"].to_string(), "20");
    assert!(out.stderr.is_empty());

    let out = Command::new(bin).args(["straighten", "[1,1]", "--n", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("loop"));

    let out = Command::new(bin)
        .env("RUMER_FUEL", "0")
        .args(["straighten", "[1,3][2,4]", "--n", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fuel"));

    let out = Command::new(bin)
        .env("RUMER_FUEL", "lots")
        .args(["straighten", "[1,2]", "--n", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
