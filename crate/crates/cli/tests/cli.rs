use std::process::Command;

use hsym::complex::SimplicialComplex;
use hsym_cli::{ingest, input, run};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn report(args: &[&str]) -> (Value, i32) {
    let out = run(std::iter::once("hsym").chain(args.iter().copied()));
    (serde_json::from_str(&out.stdout).unwrap_or(Value::Null), out.code)
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_hsym");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap().status.code();
    assert_eq!(status(&["unit", "--group", "Z2", "--element", "0,1", "--expect", "pass"]), Some(0));
    assert_eq!(status(&["unit", "--group", "Z2", "--element", "1,1", "--expect", "pass"]), Some(1));
    assert_eq!(status(&["unit", "--group", "Z13", "--element", "1"]), Some(2));
    assert_eq!(status(&["no-such-command"]), Some(2));
    assert_eq!(status(&["--help"]), Some(0));
}

#[test]
fn budget_from_environment() {
    let bin = env!("CARGO_BIN_EXE_hsym");
    let args = ["cover-check", "--complex", "S1hex", "--cover", "weiss:vertex", "--s", "5"];
    let out = Command::new(bin).args(args).env("HSYM_BUDGET", "3").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "budget");
    let out = Command::new(bin).args(args).env("HSYM_BUDGET", "lots").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn manifests() {
    let m = ingest(std::path::Path::new(&fixture("sphere.toml"))).unwrap();
    assert_eq!(m.complex.f_vector(), vec![4, 6, 4]);
    assert_eq!(m.q, Some(1));
    let sphere = fixture("sphere.toml");
    let (v, code) = report(&["--manifest", &sphere, "cohomology-c", "--open", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["cohomology"][2]["group"]["display"], "Z/2");
    let grid = fixture("grid.toml");
    let (v, code) = report(&["--manifest", &grid, "descent", "--A", "Z/2", "--cover", "halves"]);
    assert_eq!(code, 0, "{v}");
    // two annuli do not see classes crossing both boundaries
    assert_eq!(v["target_size"], 4);
    assert_eq!(v["verdict"], "fail");
}

#[test]
fn manifest_and_complex_conflict() {
    let grid = fixture("grid.toml");
    let out = run(["hsym", "--manifest", &grid, "--complex", "T2", "homology"]);
    assert_eq!(out.code, 2);
}

#[test]
fn exported_complexes_reingest() {
    for name in ["S1tri", "S2icos", "T2", "K2", "RP2", "S3"] {
        let (v, _) = report(&["homology", "--complex", name, "--n", "0"]);
        let facets: Vec<Vec<usize>> = serde_json::from_value(v["complex"]["facets"].clone()).unwrap();
        let text: String = facets
            .iter()
            .map(|f| f.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let back = input::parse_facets(&text).unwrap();
        let original = SimplicialComplex::from_facets(facets.clone()).unwrap();
        let identity = original.vertices().into_iter().map(|v| (v, v)).collect();
        assert!(back.is_isomorphic_via(&original, &identity), "{name}");
        assert_eq!(serde_json::to_value(back.f_vector()).unwrap(), v["complex"]["f_vector"]);
    }
}

#[test]
fn schema_version_everywhere() {
    for args in [
        vec!["homology", "--complex", "S1tri"],
        vec!["anomaly", "--group", "Z3"],
        vec!["homology", "--complex", "nowhere"],
    ] {
        let (v, _) = report(&args);
        assert_eq!(v["schema_version"], hsym_cli::report_schema_version());
        assert_eq!(v["command"], args[0]);
    }
}
