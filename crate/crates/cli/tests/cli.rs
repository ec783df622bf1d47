use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use qasmquip_core::harness::legacy_pipeline;
use qasmquip_core::passes::to_lsc;
use qasmquip_core::qasm::{parse_qasm, write_qasm};
use qasmquip_core::quipper::parse_quip;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures").join(name)
}

fn run(args: &[&str], stdin: &str) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qasmquip"));
    cmd.args(args).env_remove("LINGUA_INCLUDE_PATH");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped()).spawn().unwrap();
    // A tool that fails early may close stdin before reading it.
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("qasmquip-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn piped_pipeline_matches_in_process_composition() {
    let src = std::fs::read_to_string(fixture("qpe.quip")).unwrap();
    let mut text = src.clone();
    for stage in [
        &["elim-ctrls"][..],
        &["quip-to-qasm", "--legacy"],
        &["elim-invs"],
        &["elim-pows"],
        &["elim-funs"],
        &["reg-merge"],
        &["to-qasm2"],
        &["to-lsc"],
    ] {
        text = ok(stage, &text);
    }
    let fused = to_lsc(&legacy_pipeline(&parse_quip(&src).unwrap()).unwrap()).unwrap();
    assert_eq!(text, write_qasm(&fused).unwrap());
}

#[test]
fn help_exits_zero() {
    let out = run(&["to-qasm2", "--help"], "");
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("Usage"));
}

#[test]
fn malformed_input_is_a_positioned_error() {
    let out = run(&["elim-invs"], "OPENQASM 3;\nqubit q;\nfoo q;\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("<stdin>:3:1") && err.contains("foo"), "{err}");

    let out = run(&["quip-to-qasm"], "Inputs: 0:Qbit\nQGate[\"H\"(0)\n");
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn unknown_subcommand_is_an_input_error() {
    assert_eq!(run(&["bogus"], "").status.code(), Some(1));
}

#[test]
fn files_instead_of_streams() {
    let dir = scratch("files");
    let out = dir.join("out.qasm");
    let input = fixture("qpe.qasm");
    ok(&["elim-pows", "--in", input.to_str().unwrap(), "--out", out.to_str().unwrap()], "");
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(!text.contains("pow("));
    assert_eq!(text.matches("ctrl @ t x[0], phi;").count(), 4);
}

#[test]
fn reg_merge_records_the_mapping() {
    let out = ok(&["reg-merge"], "OPENQASM 3;\nqubit phi;\nqubit[2] x;\nbit b;\n");
    assert!(out.contains("qubit[3] q;\nbit[1] c;\n"), "{out}");
    for line in ["// phi -> q[0]\n", "// x[1] -> q[2]\n", "// b -> c[0]\n"] {
        assert!(out.contains(line), "{out}");
    }
    // The comments do not disturb the next tool.
    assert_eq!(parse_qasm(&ok(&["reg-merge"], &out)).unwrap(), parse_qasm(&out).unwrap());
}

#[test]
fn elim_ctrls_accepts_both_languages() {
    let quip = ok(&["elim-ctrls"], "Inputs: 0:Qbit, 1:Qbit\nQGate[\"H\"](1) with controls=[+0]\nOutputs: 0:Qbit, 1:Qbit\n");
    assert!(quip.starts_with("Inputs:"));
    assert!(!quip.contains("QGate[\"H\"](1) with controls"));
    let qasm = ok(&["elim-ctrls"], "OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\nch q[0], q[1];\n");
    assert!(qasm.starts_with("OPENQASM 3;"));
    assert!(!qasm.contains("ch "));
}

#[test]
fn include_path_overrides_bundled_libraries() {
    let src = ok(&["quip-to-qasm"], &std::fs::read_to_string(fixture("qpe.quip")).unwrap());
    ok(&["qasm-to-quip"], &src);
    let dir = scratch("inc");
    std::fs::write(dir.join("quipgates.inc"), "// no gates\n").unwrap();
    let d = dir.to_str().unwrap();
    let by_env = run_env(&["qasm-to-quip"], &src, &[("LINGUA_INCLUDE_PATH", d)]);
    assert_eq!(by_env.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&by_env.stderr).contains("quip_rgate"));
    assert_eq!(run(&["qasm-to-quip", "--include-path", d], &src).status.code(), Some(1));
}

#[test]
fn lsc_config_file() {
    let dir = scratch("lsc");
    let cfg = dir.join("lsc.toml");
    std::fs::write(&cfg, "gates = [\"h\", \"cx\", \"cz\"]\nmeasure = true\nreset = false\n").unwrap();
    let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[2];\ncz q[0], q[1];\n";
    assert!(ok(&["to-lsc", "--config", cfg.to_str().unwrap()], src).contains("cz q[0], q[1];"));
    assert!(ok(&["to-lsc"], src).contains("h q[1];\ncx q[0], q[1];\nh q[1];"));
    std::fs::write(&cfg, "gates = [\"h\"]\ncolour = 1\n").unwrap();
    assert_eq!(run(&["to-lsc", "--config", cfg.to_str().unwrap()], src).status.code(), Some(1));
}

#[test]
fn conformance_and_catalog() {
    let out = ok(&["conformance", "--seed", "3", "--samples", "30", "--laws", "retraction,inversion"], "");
    assert_eq!(out.lines().filter(|l| l.contains(" ok ")).count(), 5, "{out}");
    assert_eq!(run(&["conformance", "--laws", "speed"], "").status.code(), Some(1));
    let cat = ok(&["verify-catalog"], "");
    assert!(cat.lines().any(|l| l.contains("Toffoli")));
    assert!(!cat.contains("FAIL"));
}
