use std::path::PathBuf;
use std::process::Command;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qweil"));
    cmd.args(args).env_remove("QWEIL_PRESET_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("failed to run qweil");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn run(args: &[&str]) -> (i32, String, String) {
    run_env(args, &[])
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qweil-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn validate_builtin_presets() {
    for p in ["u1", "sumu2-4d"] {
        let (code, out, _) = run(&["validate", p]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
        assert!(out.contains("ok   delta"));
    }
}

#[test]
fn u1_daleth_cohomology() {
    let (code, out, _) = run(&["daleth-cohomology", "--preset", "u1", "--max", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("cohomology: 1,0,1,0,1,0"), "{out}");
    assert!(out.contains("representative 2 0: dzeta\n"), "{out}");
}

#[test]
fn chern_check_defaults_to_sumu2() {
    let (code, out, _) = run(&["chern-check-sumu2", "--order", "3", "--format", "records"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out, golden("chern-check-sumu2-order3.records"));
}

#[test]
fn exponential_convention_misses_the_closed_form() {
    let (code, out, _) = run(&["chern-check-sumu2", "--order", "2", "--convention", "exponential"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL factorized-chern"), "{out}");
}

#[test]
fn u1_chern_classes_by_convention() {
    let (code, out, _) = run(&["chern", "--element", "u", "--order", "2", "--convention", "exponential"]);
    assert_eq!(code, 0);
    assert!(out.contains("c_2: (lambda^2-2*lambda+1)*zeta*zeta"), "{out}");
    let (code, out, _) = run(&["chern", "--element", "u", "--order", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("convention: signed\n") && out.contains("c_2: 0\n"), "{out}");
}

#[test]
fn non_invariant_element_is_rejected() {
    let (code, _, err) = run(&["chern", "--preset", "sumu2-4d", "--element", "alpha", "--order", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("not ad-invariant"), "{err}");
}

#[test]
fn euler_action_with_negative_n() {
    let (code, out, _) = run(&["euler-action", "--k", "1", "--n", "-1", "--order", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "e^1: 1/lambda\ne^2: (-lambda+1)/(lambda^2*nu)\n");
}

#[test]
fn euler_classes() {
    let (code, out, _) = run(&["euler-class", "--rep", "circle"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("volume: e1@e2 - e2@e1\n"), "{out}");
    assert!(out.contains("class: ((lambda^2-1)/lambda)*zeta\n"), "{out}");
    let (code, out, _) = run(&["euler-class", "--preset", "sumu2-4d", "--rep", "fund"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("exterior: 1,2,1,0\n"), "{out}");
    let (code, _, err) = run(&["euler-class", "--rep", "fund"]);
    assert_eq!(code, 1);
    assert!(err.contains("no conjugation"), "{err}");
}

#[test]
fn omega_and_k_ideal() {
    let (code, out, _) = run(&["omega-cohomology", "--preset", "sumu2-4d", "--max", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("omega: 1,0,0,0\n"), "{out}");
    let (code, out, _) = run(&["k-ideal-check", "--max", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("omega-star-cohomology: 1,0,0,0\n"), "{out}");
}

#[test]
fn sigma_and_exterior_dims() {
    let (code, out, _) = run(&["sigma-relations", "--preset", "sumu2-4d", "--max", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("sigma: 1,4,10,20\n") && out.contains("invariant: 1,1,2,2\n"), "{out}");
    let (code, out, _) = run(&["exterior-dims", "--max", "3"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("envelope: 1,1,0,0\n"), "{out}");
}

#[test]
fn records_are_deterministic() {
    let args = ["validate", "sumu2-4d", "--format", "records", "--seed", "7"];
    let (c1, a, _) = run(&args);
    let (c2, b, _) = run(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert!(a.lines().all(|l| l.split('\t').count() == 3), "{a}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["validate", "no-such-preset"]).0, 2);
    assert_eq!(run(&["exterior-dims", "--bogus"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["chern", "--element", "u*(", "--order", "1"]).0, 2);
}

#[test]
fn corrupted_preset_fails_validation() {
    let dir = scratch_dir("corrupt");
    let text = qweil::presets::U1.replace("counit u = 1", "counit u = 2");
    std::fs::write(dir.join("broken.preset"), text).unwrap();
    let path = dir.join("broken.preset");
    let (code, out, _) = run(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL counit"), "{out}");
    let (code, _, err) = run(&["exterior-dims", "--preset", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("rejected"), "{err}");
}

#[test]
fn preset_directory_lookup() {
    let dir = scratch_dir("lookup");
    std::fs::write(dir.join("circle.preset"), qweil::presets::U1).unwrap();
    let (code, out, _) = run_env(&["validate", "circle"], &[("QWEIL_PRESET_DIR", dir.to_str().unwrap())]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("preset: circle\n"));
    assert_eq!(run(&["validate", "circle"]).0, 2);
}

#[test]
fn degree_bound_is_enforced() {
    let (code, _, err) = run(&["omega-cohomology", "--max", "5"]);
    assert_eq!(code, 1);
    assert!(err.contains("degree bound"), "{err}");
}
