//! End-to-end runs of the `dpholo` binary on the files in `data/`.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpholo")).args(args).output().expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn chains_of_a_square_are_listed() {
    let out = scratch("chains.json");
    let o = run(&["chains", "--n", "2", "--r", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "6 chains of [2] x [2]");
    assert_eq!(lines[1], "{(0,0),(0,1),(0,2),(1,2),(2,2)}");
    assert_eq!(lines.iter().filter(|l| l.starts_with('{')).count(), 6);
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["v"], 1);
    assert_eq!(doc["chains"].as_array().unwrap().len(), 6);
}

#[test]
fn chains_beyond_the_cap_exit_with_2() {
    let o = run(&["chains", "--n", "7", "--r", "6"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cap 12 exceeded"));
}

#[test]
fn random_stokes_reports_every_residual() {
    let o = run(&["stokes", "--random", "100", "--n", "2", "--r", "2", "--seed", "7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "seed 7\nresidual 0 in 100/100\n");
}

#[test]
fn random_stokes_over_the_nilpotent_algebra() {
    let o = run(&["stokes", "--random", "20", "--n", "3", "--r", "1", "--algebra", "nilpotent", "--seed", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("residual 0 in 20/20"));
}

#[test]
fn output_is_deterministic_for_a_fixed_seed() {
    let args = ["derham", "--random", "4", "--n", "2", "--seed", "19"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn holonomy_of_the_constant_connection_is_the_exponential() {
    let out = scratch("hol.json");
    let o = run(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "6", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("exact in env degree <= 6"));
    assert!(text.contains("from <0> to <1>"));
    for r in 2..=6 {
        let word = vec!["e"; r].join(" ");
        assert!(text.contains(&format!("q=0 p={r} on [0]  {word}  t^[{r}]")), "order {r} missing");
    }
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["v"], 1);
    assert_eq!(doc["exact_through_env_degree"], 6);
    let path = doc["simplices"].as_object().unwrap().values().find(|s| s["source"] != s["target"]).unwrap();
    assert_eq!(path["parts"].as_array().unwrap().len(), 7);
    assert_eq!(path["parts"][3]["terms"][0]["env"], serde_json::json!([["e"], ["e"], ["e"]]));
    assert_eq!(path["parts"][3]["terms"][0]["value"]["terms"][0]["e"], serde_json::json!([3]));
}

#[test]
fn holonomy_is_simplicial_on_the_path_space() {
    let o = run(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "3", "--degree-cap", "1", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("ok   holonomy commutes with the simplicial operators"));
}

#[test]
fn holonomy_around_a_loop_uses_cell_values() {
    let o = run(&["hol", "--space", &data("circle.json"), "--conn", &data("loop-conn.json"), "--order", "2"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("from v to v"));
    assert!(text.contains("q=0 p=1 on [0]  f  2*t^[2]"));
    assert!(text.contains("q=0 p=2 on [0]  f f  12*t^[4]"));
}

#[test]
fn an_order_beyond_the_word_cap_exits_with_2() {
    let o = run(&["hol", "--space", &data("delta1.json"), "--conn", &data("const-e.json"), "--order", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("order 9"));
}

#[test]
fn parse_errors_carry_line_and_column() {
    let bad = scratch("bad-space.json");
    std::fs::write(&bad, "{\"v\": 1,\n  \"standard\": 1,,\n}").unwrap();
    let o = run(&["hol", "--space", bad.to_str().unwrap(), "--conn", &data("const-e.json"), "--order", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("bad-space.json:2:"), "{}", stderr(&o));
}

#[test]
fn files_without_the_version_are_rejected() {
    let bad = scratch("unversioned.json");
    std::fs::write(&bad, "{\"standard\": 1}").unwrap();
    let o = run(&["derham", "--space", bad.to_str().unwrap(), "--form", &data("const-e.json")]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn de_rham_on_a_circle() {
    let out = scratch("derham.json");
    let o = run(&["derham", "--space", &data("circle.json"), "--form", &data("loop-conn.json"), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("1:loop  [e](t) + [f](2*t^[2])"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(doc["v"], 1);
    assert!(doc["integrals"]["1"]["loop"].is_object());
}

#[test]
fn fiberwise_integral_of_a_file() {
    let o = run(&["integrate", "--form", &data("square-form.json"), "--n", "1", "--r", "1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("fiberwise integral over Delta^1: [e](3*t*x1)"));
    assert!(text.contains("stokes residual: 0"));
}

#[test]
fn integral_identities_on_random_polynomials() {
    let o = run(&["integrate", "--random", "40", "--seed", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("seed 5\nidentities hold in 40/40\n"));
}

#[test]
fn structural_checks_pass_on_the_interval_category() {
    let o = run(&["ainfty-check", &data("interval.json")]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    for label in ["b^2 = 0", "strict units", "unitalization: b^2 = 0", "free model on the quiver"] {
        assert!(text.contains(&format!("ok   {label}")), "{label}");
    }
}

#[test]
fn structural_checks_pass_on_the_heisenberg_algebra() {
    let o = run(&["ainfty-check", &data("heisenberg.json"), "--word-cap", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("ok   D^2 = 0 on Sym g[1]"));
}

#[test]
fn a_wrong_unit_sign_fails_the_check() {
    let text = std::fs::read_to_string(data("interval.json")).unwrap();
    let bad = scratch("bad-interval.json");
    std::fs::write(&bad, text.replace("\"in\": [\"i0\", \"f\"], \"out\": [{ \"c\": -1", "\"in\": [\"i0\", \"f\"], \"out\": [{ \"c\": 1")).unwrap();
    let o = run(&["ainfty-check", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn quick_selftest_marks_reduced_coverage() {
    let o = run(&["selftest", "--quick", "--only", "1,7"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.contains("PASS [ 1] maximal chain counts and brute-force oracle (capped)"));
    assert!(text.contains("PASS [ 7] holonomy of the constant connection on the interval (exhaustive)"));
    assert!(text.contains("capped checks ran with reduced caps"));
}
