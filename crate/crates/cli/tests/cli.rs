use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = spectra(args);
    let code = out.status.code().expect("exit code");
    let value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stderr)
        )
    });
    (code, value)
}

#[test]
fn lattice_lists_the_serre_subcategories_of_mod2() {
    let (code, r) = report(&[
        "lattice",
        "--model",
        &fixture("m_mod2.json"),
        "--kind",
        "serre",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["count"], 4);
    assert_eq!(r["oracle_agrees"], true);
    assert_eq!(r["schema_version"], 1);
    assert_eq!(r["family"]["items"].as_array().unwrap().len(), 4);
}

#[test]
fn suite_on_a2_passes_every_law() {
    let (code, r) = report(&["suite", "--model", &fixture("m_a2.json"), "--seed", "5"]);
    assert_eq!(code, 0);
    assert_eq!(r["passed"], true);
    assert_eq!(r["seed"], 5);
    let ids: Vec<&str> = r["laws"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["id"].as_str().unwrap())
        .collect();
    for id in [
        "spectrum.point-closure-is-subsets",
        "spectrum.closed-basis",
        "spectrum.sober-criterion",
    ] {
        assert!(ids.contains(&id), "{id} missing from {ids:?}");
    }
}

#[test]
fn malformed_json_exits_2_with_position() {
    let out = spectra(&[
        "lattice",
        "--model",
        &fixture("malformed.json"),
        "--kind",
        "thick",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("malformed.json:4:"), "{err}");
    assert!(err.contains("line 4"), "{err}");
}

#[test]
fn missing_file_and_invalid_model_exit_2() {
    let out = spectra(&[
        "lattice",
        "--model",
        "/nonexistent/model.json",
        "--kind",
        "thick",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = spectra(&[
        "spectrum",
        "--model",
        &fixture("invalid_model.json"),
        "--family",
        "thick",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = spectra(&[
        "spectrum",
        "--model",
        &fixture("m_a2.json"),
        "--family",
        "balmer",
    ]);
    assert_eq!(out.status.code(), Some(2), "Balmer primes need a tensor");
}

#[test]
fn validate_reports_missing_rotations_as_a_failed_check() {
    let (code, r) = report(&["validate", "--model", &fixture("invalid_model.json")]);
    assert_eq!(code, 1);
    assert_eq!(r["model"]["valid"], false);
    assert_eq!(r["model"]["issues"].as_array().unwrap().len(), 2);
}

#[test]
fn capacity_exceeded_exits_3() {
    let out = spectra(&[
        "lattice",
        "--model",
        &fixture("m_a2.json"),
        "--kind",
        "thick",
        "--limit",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn incompatible_support_exits_1() {
    let (code, r) = report(&[
        "support",
        "--model",
        &fixture("m_kxk.json"),
        "--support",
        &fixture("x2_support.json"),
        "--family",
        &format!("custom:{}", fixture("kxk_partial_family.json")),
        "--check",
        "compatible",
    ]);
    assert_eq!(code, 1);
    assert_eq!(r["check"]["incompatible_point"], "p");
}

#[test]
fn two_point_support_immerses_into_both_spectra() {
    let base = [
        "support",
        "--model",
        &fixture("m_kxk.json"),
        "--support",
        &fixture("x2_support.json"),
    ];
    let run = |family: &str, check: &str| {
        let mut args = base.to_vec();
        args.extend(["--family", family, "--check", check]);
        report(&args)
    };
    let (code, r) = run("balmer", "immersion");
    assert_eq!(code, 0);
    assert_eq!(r["check"]["check"]["homeomorphism"], true);
    let (code, r) = run("thick", "immersion");
    assert_eq!(code, 0);
    assert_eq!(r["check"]["check"]["embedding"], true);
    assert_eq!(r["check"]["check"]["surjective"], false);
    assert_eq!(run("balmer", "immersion-dual").0, 0);
    assert_eq!(run("thick", "classifying").0, 0);
}

#[test]
fn swap_bridge_checks_pass() {
    let bridge = fixture("bridge_kxk_k.json");
    for check in ["correspondence", "spectrum", "g-matsui", "g-balmer"] {
        let (code, r) = report(&["action", "--bridge", &bridge, "--check", check]);
        assert_eq!(code, 0, "{check}: {r}");
    }
    let (_, r) = report(&["action", "--bridge", &bridge, "--check", "correspondence"]);
    assert_eq!(r["pairs"].as_array().unwrap().len(), 2);
    let (code, _) = report(&[
        "action",
        "--bridge",
        &fixture("bridge_kxk_k_abelian.json"),
        "--check",
        "g-serre",
    ]);
    assert_eq!(code, 0);
    let (code, _) = report(&[
        "action",
        "--bridge",
        &fixture("bridge_a2_trivial.json"),
        "--check",
        "g-matsui",
    ]);
    assert_eq!(code, 0);
    let out = spectra(&[
        "action",
        "--bridge",
        &fixture("bridge_kxk_k_abelian.json"),
        "--check",
        "g-matsui",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "G-Matsui needs triangulated models"
    );
}

#[test]
fn reports_and_dot_files_are_written_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<PathBuf> = (0..2)
        .map(|i| dir.path().join(format!("r{i}.json")))
        .collect();
    let dot = dir.path().join("spec.dot");
    for p in &paths {
        let out = spectra(&[
            "spectrum",
            "--model",
            &fixture("m_a2.json"),
            "--family",
            "thick",
            "--report",
            p.to_str().unwrap(),
            "--dot",
            dot.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
    let r: Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(r["spectral"]["agree"], true);
    assert_eq!(
        r["spectrum"]["space"]["points"].as_array().unwrap().len(),
        5
    );
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph"), "{dot}");
    assert!(dot.contains("->"));
}

#[test]
fn topology_reports_the_hochster_dual() {
    let (code, r) = report(&["topology", "--space", &fixture("chain3_space.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["spectral"], true);
    assert_eq!(r["irreducible_closed_sets"].as_array().unwrap().len(), 3);
    assert!(r["hochster_dual"].is_object());
}

#[test]
fn every_model_fixture_passes_the_suite() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if !name.starts_with("m_") {
            continue;
        }
        let (code, r) = report(&["suite", "--model", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{name}: {r}");
    }
}
