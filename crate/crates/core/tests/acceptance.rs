//! Acceptance checks for the whole toolchain. Prints one line per criterion
//! and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qasmquip_core::decompose::{negative_cases, verify_catalog, verify_rule};
use qasmquip_core::gate::GateKind;
use qasmquip_core::harness::{
    check_laws, gen_qasm_with, gen_quip_with, legacy_pipeline, qasm_sim, quip_sim, Corpus, GenConfig, Lang, Law,
    LawReport, Writers,
};
use qasmquip_core::matrix::{phase_deviation, TOL_EXACT, TOL_PHASE};
use qasmquip_core::passes::{elim_ctrls, elim_ctrls_qasm, elim_invs, elim_pows, to_lsc, LscConfig};
use qasmquip_core::qasm::{
    self, parse_qasm_with, write_qasm, ParseOptions, QasmProgram, QuipFunc, RegKind, Statement, Version,
};
use qasmquip_core::quipper::{self, parse_quip, write_quip, QuipCircuit, QuipGate, WireType};
use qasmquip_core::semantics::SimProgram;
use qasmquip_core::translate::{
    check_circuit, qasm_to_quip, quip_to_qasm, DfaError, DfaErrorKind, TranslateError,
};

const QPE_QUIP: &str = include_str!("fixtures/qpe.quip");
const QPE_QASM: &str = include_str!("fixtures/qpe.qasm");
const SEED: u64 = 2024;
const TOL: f64 = 1e-9;

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let checks: [(&str, Check, Option<Duration>); 8] = [
        ("catalog verification", catalog, Some(Duration::from_secs(30))),
        ("retraction", retraction, None),
        ("reflexive inversion and idempotence", inversion, None),
        ("preservation and fluency", preservation, Some(Duration::from_secs(120))),
        ("phase estimation end-to-end", qpe_round_trip, None),
        ("lattice-surgery pipeline", qpe_pipeline, None),
        ("lifetime automaton negatives", dfa_negatives, None),
        ("fixpoints and censuses", fixpoints, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in checks.into_iter().enumerate() {
        let t = Instant::now();
        let mut result = check();
        let took = t.elapsed();
        if let (Ok(_), Some(b)) = (&result, budget) {
            if took > b {
                result = Err(format!("took {took:.1?}, budget {b:?}"));
            }
        }
        match result {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {took:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {took:.1?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn laws_ok(report: &LawReport, min_checked: usize) -> Result<String, String> {
    for row in &report.rows {
        ensure(row.failures == 0, || format!("{report}"))?;
        ensure(row.checked >= min_checked, || format!("{} checked only {} samples", row.law, row.checked))?;
    }
    let total: usize = report.rows.iter().map(|r| r.checked).sum();
    Ok(format!("{} laws, {total} checks, 0 failures", report.rows.len()))
}

fn catalog() -> Result<String, String> {
    let report = verify_catalog();
    ensure(report.all_pass(), || format!("{} rules failed", report.failures().count()))?;
    for r in &report.rows {
        let tol = if r.phase_exact { TOL_EXACT } else { TOL_PHASE };
        ensure(r.max_dev <= tol, || format!("{} deviates by {:.2e}", r.id, r.max_dev))?;
    }
    // The four-ancilla CCZ and Toffoli identities span seven wires.
    let wide = report.rows.iter().filter(|r| r.id == "control/Z/c2" || r.id == "control/X/c2").count();
    ensure(wide == 2, || "seven-wire ancilla identities missing".into())?;
    // The oracle must also reject wrong rules.
    for rule in negative_cases() {
        ensure(!verify_rule(&rule, 1).pass, || format!("negative case {} accepted", rule.id))?;
    }
    let exact = report.rows.iter().filter(|r| r.phase_exact).count();
    Ok(format!("{} rules ({exact} exact, {} up to phase)", report.rows.len(), report.rows.len() - exact))
}

fn retraction() -> Result<String, String> {
    let corpus = Corpus::generate(SEED, 1000);
    let laws = [Law::Retraction(Lang::Qasm2), Law::Retraction(Lang::Qasm3), Law::Retraction(Lang::Quipper)];
    laws_ok(&check_laws(&corpus, &laws, &Writers::default()), 1000)
}

fn qpe_quip() -> QuipCircuit {
    parse_quip(QPE_QUIP).expect("fixture parses")
}

fn qpe_qasm() -> QasmProgram {
    parse_qasm_with(QPE_QASM, &ParseOptions::default()).expect("fixture parses")
}

fn inversion() -> Result<String, String> {
    let mut corpus = Corpus::generate(SEED + 1, 500);
    corpus.quip.push(qpe_quip());
    corpus.qasm3.push(qpe_qasm());
    let laws = [
        Law::Inversion(Lang::Qasm3),
        Law::Inversion(Lang::Quipper),
        Law::Idempotence(Lang::Qasm3),
        Law::Idempotence(Lang::Quipper),
    ];
    laws_ok(&check_laws(&corpus, &laws, &Writers::default()), 500)
}

fn preservation() -> Result<String, String> {
    let n = 500;
    let mut corpus = Corpus::default();
    for i in 0..n as u64 {
        let size = 1 + (i as usize % 16);
        corpus.qasm2.push(gen_qasm_with(SEED + i, &GenConfig::oracle(Version::V2, size)));
        corpus.qasm3.push(gen_qasm_with(SEED + i, &GenConfig::oracle(Version::V3, size)));
        let mut q = GenConfig::oracle(Version::V3, size);
        q.clifford_t = i % 5 == 0;
        corpus.quip.push(gen_quip_with(SEED + i, &q));
    }
    let laws = [
        Law::Preservation(Lang::Qasm3),
        Law::Preservation(Lang::Quipper),
        Law::Fluency(Lang::Qasm2),
        Law::Fluency(Lang::Qasm3),
        Law::Fluency(Lang::Quipper),
    ];
    laws_ok(&check_laws(&corpus, &laws, &Writers::default()), n)
}

/// Index of the first measurement; everything before it is unitary apart
/// from ancilla preparation and termination.
fn quip_prefix_end(c: &QuipCircuit) -> usize {
    c.gates.iter().position(|g| !(g.is_unitary() || matches!(g, QuipGate::QInit(..) | QuipGate::QTerm(..)))).unwrap_or(c.gates.len())
}

/// Oracle program of the unitary prefix of a phase-estimation circuit:
/// from the eigenstate wire to the eigenstate wire followed by the measured
/// wires in measurement order. Every other wire starts in `|0>`.
fn quip_prefix(c: &QuipCircuit) -> Result<SimProgram, String> {
    let end = quip_prefix_end(c);
    let measured: Vec<usize> = c.gates[end..]
        .iter()
        .filter_map(|g| if let QuipGate::QMeas(w) = g { Some(*w) } else { None })
        .collect();
    let eigen = *c.inputs.keys().next().ok_or("no inputs")?;
    let head = QuipCircuit { inputs: c.inputs.clone(), gates: c.gates[..end].to_vec(), outputs: c.inputs.clone() };
    let mut s = quip_sim(&head).map_err(|e| e.to_string())?;
    s.inputs = vec![eigen];
    s.outputs = std::iter::once(eigen).chain(measured).collect();
    Ok(s)
}

/// The same for an OpenQASM program: statements before the first
/// measurement, from the first qubit to the first qubit followed by the
/// measured qubits.
fn qasm_prefix(p: &QasmProgram) -> Result<SimProgram, String> {
    let is_meas = |s: &Statement| match s {
        Statement::Measure { .. } => true,
        Statement::Call { func, .. } => *func == QuipFunc::QMeas,
        _ => false,
    };
    let end = p.stmts.iter().position(is_meas).unwrap_or(p.stmts.len());
    let measured: Vec<_> = p.stmts[end..]
        .iter()
        .filter_map(|s| match s {
            Statement::Measure { src, .. } => Some(src.clone()),
            Statement::Call { func: QuipFunc::QMeas, arg: Some(a), .. } => Some(a.clone()),
            _ => None,
        })
        .collect();
    let head = QasmProgram { stmts: p.stmts[..end].to_vec(), ..p.clone() };
    let sim = qasm_sim(&head).map_err(|e| e.to_string())?;
    let at = |o: &qasm::Operand| sim.wire(o).ok_or_else(|| format!("{o} is not a qubit"));
    let mut prog = sim.prog.clone();
    prog.inputs = vec![0];
    prog.outputs = std::iter::once(Ok(0)).chain(measured.iter().map(at)).collect::<Result<_, _>>()?;
    Ok(prog)
}

fn same_prefix(a: &SimProgram, b: &SimProgram, what: &str) -> Result<f64, String> {
    let ma = a.isometry().map_err(|e| format!("{what}: source: {e}"))?;
    let mb = b.isometry().map_err(|e| format!("{what}: {e}"))?;
    let dev = phase_deviation(&ma, &mb).ok_or_else(|| format!("{what}: shapes differ"))?;
    ensure(dev <= TOL, || format!("{what}: deviation {dev:.2e}"))?;
    Ok(dev)
}

fn lifetimes(c: &QuipCircuit) -> Result<Vec<(usize, usize)>, String> {
    Ok(check_circuit(c).map_err(|e| e.to_string())?.ancilla_intervals())
}

fn qpe_round_trip() -> Result<String, String> {
    let c = qpe_quip();
    let p = quip_to_qasm(&c).map_err(|e| e.to_string())?;
    let text = write_qasm(&p).map_err(|e| e.to_string())?;
    for needle in ["input_qwires", "qtmp", "ctmp", "QInit0(", "QMeas(", "CDiscard("] {
        ensure(text.contains(needle), || format!("translation lacks `{needle}`"))?;
    }
    ensure(p.decls.iter().any(|d| d.name == "input_qwires" && d.size == Some(4)), || "input_qwires is not qubit[4]".into())?;
    let back = qasm_to_quip(&parse_qasm_with(&text, &ParseOptions::default()).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(back.inputs.len() == 4, || format!("round trip has {} inputs", back.inputs.len()))?;
    ensure(lifetimes(&back)? == lifetimes(&c)?, || "ancilla lifetimes differ after the round trip".into())?;

    // The circuit flips the eigenstate wire to |1>. The eigenphase is
    // pi/4 = 2 pi * 0.001b, so |0> maps to |1>|001> with the least
    // significant digit measured first.
    let src = quip_prefix(&c)?;
    let m = src.isometry().map_err(|e| e.to_string())?;
    let hit = m[(0b1100, 0)].norm();
    ensure((hit - 1.0).abs() <= TOL, || format!("estimate not sharp: amplitude {hit:.3}"))?;

    let d1 = same_prefix(&src, &qasm_prefix(&p)?, "quip-to-qasm")?;
    let d2 = same_prefix(&src, &quip_prefix(&back)?, "round trip")?;
    Ok(format!("4 inputs, {} ancilla lifetimes, deviations {d1:.1e} and {d2:.1e}", lifetimes(&c)?.len()))
}

fn qpe_pipeline() -> Result<String, String> {
    let c = qpe_quip();
    let out = legacy_pipeline(&c)?;
    let out = to_lsc(&out).map_err(|e| e.to_string())?;
    let text = write_qasm(&out).map_err(|e| e.to_string())?;
    let opts = ParseOptions { dialect: Some(Version::V2), ..Default::default() };
    let reparsed = parse_qasm_with(&text, &opts).map_err(|e| format!("not OpenQASM 2.0: {e}"))?;
    let whitelist = LscConfig::default();
    for s in &reparsed.stmts {
        let name = match s {
            Statement::Gate { .. } => text_of(s, &reparsed)?,
            Statement::Measure { .. } => "measure".to_string(),
            _ => return Err(format!("unexpected statement {s:?}")),
        };
        ensure(name == "measure" || whitelist.gates.contains(&name), || format!("`{name}` is not whitelisted"))?;
    }
    let count = |k| reparsed.decls.iter().filter(|d| d.kind == k).count();
    ensure(count(RegKind::Qubit) == 1 && count(RegKind::Bit) == 1, || "not exactly one qreg and one creg".into())?;
    let dev = same_prefix(&quip_prefix(&c)?, &qasm_prefix(&reparsed)?, "pipeline")?;
    Ok(format!("{} statements on {} qubits, deviation {dev:.1e}", reparsed.stmts.len(), reparsed.slots(RegKind::Qubit).len()))
}

/// Gate name of a statement as written.
fn text_of(s: &Statement, p: &QasmProgram) -> Result<String, String> {
    let one = QasmProgram { stmts: vec![s.clone()], ..p.clone() };
    let text = write_qasm(&one).map_err(|e| e.to_string())?;
    let line = text.lines().last().unwrap_or("");
    Ok(line.split([' ', '(']).next().unwrap_or("").to_string())
}

fn dfa_negatives() -> Result<String, String> {
    let h = |w| QuipGate::unitary(GateKind::H, vec![w]);
    let circuit = |inputs: &[usize], gates: Vec<QuipGate>| QuipCircuit {
        inputs: inputs.iter().map(|&w| (w, WireType::Qbit)).collect(),
        gates,
        outputs: BTreeMap::new(),
    };
    let cases = [
        ("double initialization", circuit(&[0], vec![h(0), QuipGate::QInit(false, 0)]), DfaErrorKind::DoubleInit, 0, 1),
        ("use before initialization", circuit(&[0], vec![h(0), h(1)]), DfaErrorKind::UseBeforeInit, 1, 1),
        (
            "use after termination",
            circuit(&[0, 1], vec![QuipGate::QTerm(false, 1), h(0), h(1)]),
            DfaErrorKind::UseAfterTerm,
            1,
            2,
        ),
    ];
    for (what, c, kind, wire, event) in cases {
        let want = DfaError { kind, wire, event };
        ensure(check_circuit(&c) == Err(want), || format!("{what}: got {:?}", check_circuit(&c)))?;
        let translated = quip_to_qasm(&c);
        ensure(translated == Err(TranslateError::Dfa(want)), || format!("{what}: translation gave {translated:?}"))?;
        ensure(want.to_string() == format!("{what} on wire {wire} at gate {event}"), || format!("{what}: message `{want}`"))?;
    }
    let reset = circuit(&[0], vec![h(0), QuipGate::QTerm(false, 0), QuipGate::QInit(false, 0), h(0)]);
    let reset = QuipCircuit { outputs: reset.inputs.clone(), ..reset };
    check_circuit(&reset).map_err(|e| format!("reset rejected: {e}"))?;
    quip_to_qasm(&reset).map_err(|e| format!("reset not translated: {e}"))?;
    Ok("3 violations named with wire and gate, reset accepted".into())
}

fn fixpoints() -> Result<String, String> {
    let mut corpus = Corpus::generate(SEED + 2, 1000);
    corpus.quip.push(qpe_quip());
    corpus.qasm3.push(qpe_qasm());
    let laws = [Law::Fixpoint(Lang::Qasm3), Law::Fixpoint(Lang::Quipper)];
    let summary = laws_ok(&check_laws(&corpus, &laws, &Writers::default()), 1000)?;
    // Token censuses on the written output.
    for p in &corpus.qasm3 {
        let invs = write_qasm(&elim_invs(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(!invs.contains("inv @"), || format!("inv left after elim-invs:\n{invs}"))?;
        let pows = write_qasm(&elim_pows(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(!pows.contains("pow("), || format!("pow left after elim-pows:\n{pows}"))?;
        let ctrls = write_qasm(&elim_ctrls_qasm(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(!ctrls.contains("ctrl @"), || format!("ctrl left after elim-ctrls:\n{ctrls}"))?;
    }
    for c in &corpus.quip {
        let e = elim_ctrls(c).map_err(|e| e.to_string())?;
        let p = quip_to_qasm(&e).map_err(|e| e.to_string())?;
        let text = write_qasm(&p).map_err(|e| e.to_string())?;
        ensure(!text.contains("ctrl @"), || format!("ctrl left after elim-ctrls:\n{}", write_quip(c).unwrap_or_default()))?;
        ensure(quipper::normalize_alpha(&e) == quipper::normalize_alpha(&elim_ctrls(&e).map_err(|e| e.to_string())?), || {
            "elim-ctrls not idempotent up to renaming".into()
        })?;
    }
    Ok(summary)
}
