//! Round-trip and semantic laws over a corpus, with shrinking.

use std::fmt;

use super::gen::{gen_qasm_with, gen_quip_with, GenConfig};
use super::sim::{qasm_sim, quip_sim};
use super::HarnessError;
use crate::matrix::eq_upto_phase;
use crate::passes::{
    elim_ctrls, elim_funs, elim_invs, elim_pows, is_ctrl_free, reg_merge, to_lsc, to_qasm2, PassError,
};
use crate::qasm::{self, parse_qasm, validate, write_qasm, Modifier, QasmProgram, RegKind, Statement, Version};
use crate::quipper::{self, parse_quip, write_quip, QuipCircuit};
use crate::semantics::SimProgram;
use crate::translate::{check_circuit, qasm_to_quip_with_map, quip_to_qasm_legacy, quip_to_qasm_with_map};

/// Semantic comparisons are up to global phase at this tolerance.
pub const LAW_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Lang {
    Qasm2,
    Qasm3,
    Quipper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Law {
    /// Reading back what was written gives the same IR.
    Retraction(Lang),
    /// Translating there, back and there again equals translating once.
    Inversion(Lang),
    /// A round translation is a fixed point and does not grow the text.
    Idempotence(Lang),
    /// Translations and passes keep the oracle semantics.
    Preservation(Lang),
    /// Writing and reading keep the oracle semantics.
    Fluency(Lang),
    /// Passes are idempotent and leave no eliminated construct behind.
    Fixpoint(Lang),
}

impl Law {
    pub const ALL: [Law; 14] = [
        Law::Retraction(Lang::Qasm2),
        Law::Retraction(Lang::Qasm3),
        Law::Retraction(Lang::Quipper),
        Law::Inversion(Lang::Qasm3),
        Law::Inversion(Lang::Quipper),
        Law::Idempotence(Lang::Qasm3),
        Law::Idempotence(Lang::Quipper),
        Law::Preservation(Lang::Qasm3),
        Law::Preservation(Lang::Quipper),
        Law::Fluency(Lang::Qasm2),
        Law::Fluency(Lang::Qasm3),
        Law::Fluency(Lang::Quipper),
        Law::Fixpoint(Lang::Qasm3),
        Law::Fixpoint(Lang::Quipper),
    ];

    pub fn lang(self) -> Lang {
        match self {
            Law::Retraction(l)
            | Law::Inversion(l)
            | Law::Idempotence(l)
            | Law::Preservation(l)
            | Law::Fluency(l)
            | Law::Fixpoint(l) => l,
        }
    }

    /// Names accepted by `--laws`.
    pub fn family(self) -> &'static str {
        match self {
            Law::Retraction(_) => "retraction",
            Law::Inversion(_) => "inversion",
            Law::Idempotence(_) => "idempotence",
            Law::Preservation(_) => "preservation",
            Law::Fluency(_) => "fluency",
            Law::Fixpoint(_) => "fixpoint",
        }
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lang = match self.lang() {
            Lang::Qasm2 => "qasm2",
            Lang::Qasm3 => "qasm3",
            Lang::Quipper => "quipper",
        };
        write!(f, "{}/{lang}", self.family())
    }
}

/// Writers under test; swapped out for fault injection.
#[derive(Clone, Copy)]
pub struct Writers {
    pub qasm: fn(&QasmProgram) -> Result<String, String>,
    pub quip: fn(&QuipCircuit) -> Result<String, String>,
}

impl Default for Writers {
    fn default() -> Writers {
        Writers {
            qasm: |p| write_qasm(p).map_err(|e| e.to_string()),
            quip: |c| write_quip(c).map_err(|e| e.to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Corpus {
    pub qasm2: Vec<QasmProgram>,
    pub qasm3: Vec<QasmProgram>,
    pub quip: Vec<QuipCircuit>,
}

impl Corpus {
    /// `samples` programs per language. Every other sample is
    /// measurement-free so the semantic laws have material; a tenth of the
    /// Quipper ones are Clifford+T so the whole pipeline applies.
    pub fn generate(seed: u64, samples: usize) -> Corpus {
        let mut c = Corpus::default();
        for i in 0..samples as u64 {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i);
            let size = 1 + (i as usize % 16);
            let pick = |v: Version| {
                if i % 2 == 0 {
                    GenConfig::oracle(v, size)
                } else {
                    GenConfig::new(v, size)
                }
            };
            c.qasm2.push(gen_qasm_with(s, &pick(Version::V2)));
            c.qasm3.push(gen_qasm_with(s, &pick(Version::V3)));
            let mut q = pick(Version::V3);
            q.clifford_t = i % 10 == 4;
            c.quip.push(gen_quip_with(s, &q));
        }
        c
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawRow {
    pub law: Law,
    pub checked: usize,
    /// Samples outside the law's domain (e.g. with measurements).
    pub skipped: usize,
    pub failures: usize,
    /// Smallest failing sample found, as program text, and the reason.
    pub counterexample: Option<(String, String)>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct LawReport {
    pub rows: Vec<LawRow>,
}

impl LawReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.failures == 0)
    }

    pub fn row(&self, law: Law) -> Option<&LawRow> {
        self.rows.iter().find(|r| r.law == law)
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let status = if r.failures == 0 { "ok" } else { "FAIL" };
            writeln!(
                f,
                "{:<24} {status:<4} checked {:>5}  skipped {:>5}  failures {:>5}",
                r.law.to_string(),
                r.checked,
                r.skipped,
                r.failures
            )?;
            if let Some((text, why)) = &r.counterexample {
                writeln!(f, "  counterexample ({why}):")?;
                for line in text.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

/// Outcome of one law on one sample.
enum Verdict {
    Pass,
    Skip,
    Fail(String),
}

use Verdict::{Fail, Pass, Skip};

type QasmPass = fn(&QasmProgram) -> Result<QasmProgram, PassError>;

fn fail<E: fmt::Display>(what: &str) -> impl Fn(E) -> Verdict + '_ {
    move |e| Fail(format!("{what}: {e}"))
}

macro_rules! tri {
    ($e:expr, $what:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return fail($what)(e),
        }
    };
}

pub fn check_laws(corpus: &Corpus, laws: &[Law], w: &Writers) -> LawReport {
    let mut report = LawReport::default();
    for &law in laws {
        let mut row = LawRow { law, checked: 0, skipped: 0, failures: 0, counterexample: None };
        match law.lang() {
            Lang::Qasm2 => run_rows(&mut row, &corpus.qasm2, |p| qasm_law(law, p, w), shrink_qasm, text_qasm),
            Lang::Qasm3 => run_rows(&mut row, &corpus.qasm3, |p| qasm_law(law, p, w), shrink_qasm, text_qasm),
            Lang::Quipper => run_rows(&mut row, &corpus.quip, |c| quip_law(law, c, w), shrink_quip, text_quip),
        }
        report.rows.push(row);
    }
    report
}

fn run_rows<T: Clone>(
    row: &mut LawRow,
    samples: &[T],
    check: impl Fn(&T) -> Verdict,
    shrink: fn(&T) -> Vec<T>,
    show: impl Fn(&T) -> String,
) {
    for s in samples {
        match check(s) {
            Pass => row.checked += 1,
            Skip => row.skipped += 1,
            Fail(why) => {
                row.checked += 1;
                row.failures += 1;
                if row.counterexample.is_none() {
                    let small = minimize(s.clone(), &check, shrink);
                    let why = match check(&small) {
                        Fail(w) => w,
                        _ => why,
                    };
                    row.counterexample = Some((show(&small), why));
                }
            }
        }
    }
}

/// Greedy shrinking: take the first smaller candidate that still fails,
/// until none does.
fn minimize<T: Clone>(mut s: T, check: &impl Fn(&T) -> Verdict, shrink: fn(&T) -> Vec<T>) -> T {
    'outer: loop {
        for cand in shrink(&s) {
            if matches!(check(&cand), Fail(_)) {
                s = cand;
                continue 'outer;
            }
        }
        return s;
    }
}

fn text_qasm(p: &QasmProgram) -> String {
    write_qasm(p).unwrap_or_else(|e| format!("{p:?} ({e})"))
}

fn text_quip(c: &QuipCircuit) -> String {
    write_quip(c).unwrap_or_else(|e| format!("{c:?} ({e})"))
}

/// Smaller valid programs: single statement deletions, then single
/// register deletions.
pub fn shrink_qasm(p: &QasmProgram) -> Vec<QasmProgram> {
    let mut out = vec![];
    for i in 0..p.stmts.len() {
        let mut q = p.clone();
        q.stmts.remove(i);
        out.push(q);
    }
    for d in &p.decls {
        let mut q = p.clone();
        q.decls.retain(|e| e.name != d.name);
        q.stmts.retain(|s| s.operands().iter().all(|o| o.name != d.name));
        out.push(q);
    }
    out.retain(|q| validate(q).is_empty());
    out
}

/// Smaller DFA-valid circuits: single gate deletions, then single wire
/// deletions.
pub fn shrink_quip(c: &QuipCircuit) -> Vec<QuipCircuit> {
    let mut out = vec![];
    let rebuild = |inputs, gates| QuipCircuit { inputs, gates, outputs: Default::default() }.with_inferred_outputs().ok();
    for i in 0..c.gates.len() {
        let mut gates = c.gates.clone();
        gates.remove(i);
        out.extend(rebuild(c.inputs.clone(), gates));
    }
    for w in 0..c.wire_count() {
        let gates = c.gates.iter().filter(|g| !g.wires().contains(&w)).cloned().collect();
        let mut inputs = c.inputs.clone();
        inputs.remove(&w);
        out.extend(rebuild(inputs, gates));
    }
    out.retain(|q| check_circuit(q).is_ok() && q != c);
    out
}

fn reread_qasm(p: &QasmProgram, w: &Writers) -> Result<QasmProgram, String> {
    let text = (w.qasm)(p)?;
    parse_qasm(&text).map_err(|e| format!("{e}\n{text}"))
}

fn reread_quip(c: &QuipCircuit, w: &Writers) -> Result<QuipCircuit, String> {
    let text = (w.quip)(c)?;
    parse_quip(&text).map_err(|e| format!("{e}\n{text}"))
}

/// No measurements, resets or bits. Bits become classical wires in Quipper.
fn is_measurement_free_qasm(p: &QasmProgram) -> bool {
    p.slots(RegKind::Bit).is_empty() && p.stmts.iter().all(|s| matches!(s, Statement::Gate { .. }))
}

/// Semantics of `b` against `a`, both given as oracle programs whose
/// inputs and outputs are already listed in corresponding order.
fn same_semantics(a: &SimProgram, b: &SimProgram, what: &str) -> Verdict {
    let ma = match a.isometry() {
        Ok(m) => m,
        Err(e) => return Fail(format!("{what}: source: {e}")),
    };
    let mb = match b.isometry() {
        Ok(m) => m,
        Err(e) => return Fail(format!("{what}: result: {e}")),
    };
    if eq_upto_phase(&ma, &mb, LAW_TOL) {
        Pass
    } else {
        Fail(format!("{what}: semantics differ"))
    }
}

fn qasm_law(law: Law, p: &QasmProgram, w: &Writers) -> Verdict {
    match law {
        Law::Retraction(_) => {
            let back = tri!(reread_qasm(p, w), "reread");
            if qasm::structural_eq(p, &back, false) {
                Pass
            } else {
                Fail("read after write differs".into())
            }
        }
        Law::Inversion(_) => {
            let c1 = tri!(qasm_to_quip_with_map(p), "to quipper").0;
            let c1r = tri!(reread_quip(&c1, w), "reread quipper");
            let p2 = tri!(quip_to_qasm_with_map(&c1r), "to openqasm").0;
            let p2r = tri!(reread_qasm(&p2, w), "reread openqasm");
            let c3 = tri!(qasm_to_quip_with_map(&p2r), "to quipper again").0;
            if quipper::structural_eq(&c1, &c3, true) {
                Pass
            } else {
                Fail("T1 T2 T1 differs from T1".into())
            }
        }
        Law::Idempotence(_) => {
            let round = |p: &QasmProgram| -> Result<QasmProgram, String> {
                let c = qasm_to_quip_with_map(p).map_err(|e| e.to_string())?.0;
                let c = reread_quip(&c, w)?;
                let q = quip_to_qasm_with_map(&c).map_err(|e| e.to_string())?.0;
                reread_qasm(&q, w)
            };
            let r1 = tri!(round(p), "first round");
            let r2 = tri!(round(&r1), "second round");
            if !qasm::structural_eq(&r1, &r2, true) {
                return Fail("second round changed the program".into());
            }
            let (l1, l2) = (tri!((w.qasm)(&r1), "write"), tri!((w.qasm)(&r2), "write"));
            if l1.len() == l2.len() {
                Pass
            } else {
                Fail(format!("text grew from {} to {} bytes", l1.len(), l2.len()))
            }
        }
        Law::Preservation(_) => {
            if !is_measurement_free_qasm(p) {
                return Skip;
            }
            let src = tri!(qasm_sim(p), "oracle");
            let (c, map) = tri!(qasm_to_quip_with_map(p), "to quipper");
            let mut qs = tri!(quip_sim(&c), "oracle of translation");
            qs.inputs = src.prog.inputs.iter().map(|&i| map[&src.slots[i]]).collect();
            qs.outputs = src.prog.outputs.iter().map(|&i| map[&src.slots[i]]).collect();
            if let Fail(e) = same_semantics(&src.prog, &qs, "qasm-to-quip") {
                return Fail(e);
            }
            let mut cur = p.clone();
            let passes: [(&str, QasmPass); 4] =
                [("elim-invs", elim_invs), ("elim-pows", elim_pows), ("elim-funs", elim_funs), ("reg-merge", reg_merge)];
            for (name, f) in passes {
                cur = tri!(f(&cur), name);
                let s = tri!(qasm_sim(&cur), name);
                if let Fail(e) = same_semantics(&src.prog, &s.prog, name) {
                    return Fail(e);
                }
            }
            Pass
        }
        Law::Fluency(_) => {
            if !is_measurement_free_qasm(p) {
                return Skip;
            }
            let back = tri!(reread_qasm(p, w), "reread");
            let (a, b) = (tri!(qasm_sim(p), "oracle"), tri!(qasm_sim(&back), "oracle"));
            same_semantics(&a.prog, &b.prog, "reread")
        }
        Law::Fixpoint(_) => {
            let passes: [(&str, QasmPass); 4] =
                [("elim-invs", elim_invs), ("elim-pows", elim_pows), ("elim-funs", elim_funs), ("reg-merge", reg_merge)];
            for (name, f) in passes {
                let once = tri!(f(p), name);
                let twice = tri!(f(&once), name);
                if once != twice {
                    return Fail(format!("{name} is not idempotent"));
                }
                if let Some(left) = census_violation(name, &once) {
                    return Fail(format!("{name} left {left}"));
                }
            }
            let n = qasm::normalize(p);
            if qasm::normalize(&n) != n {
                return Fail("normalize is not idempotent".into());
            }
            Pass
        }
    }
}

fn census_violation(pass: &str, p: &QasmProgram) -> Option<&'static str> {
    let mods = || p.stmts.iter().filter_map(|s| match s {
        Statement::Gate { mods, gate, .. } => Some((mods, gate)),
        _ => None,
    });
    match pass {
        "elim-invs" => mods().any(|(m, _)| m.contains(&Modifier::Inv)).then_some("an inv modifier"),
        "elim-pows" => mods().any(|(m, _)| m.iter().any(|m| matches!(m, Modifier::Pow(_)))).then_some("a pow modifier"),
        "elim-funs" => mods().any(|(_, g)| g.params().iter().any(|e| e.contains_call())).then_some("a function call"),
        "reg-merge" => {
            let many = |k| p.decls.iter().filter(|d| d.kind == k).count() > 1;
            (many(RegKind::Qubit) || many(RegKind::Bit)).then_some("several registers")
        }
        _ => None,
    }
}

/// The legacy pipeline from a Quipper circuit to OpenQASM 2.0.
pub fn legacy_pipeline(c: &QuipCircuit) -> Result<QasmProgram, String> {
    let e = elim_ctrls(c).map_err(|e| e.to_string())?;
    let (p, _) = quip_to_qasm_legacy(&e).map_err(|e| e.to_string())?;
    let p = elim_invs(&p).and_then(|p| elim_pows(&p)).and_then(|p| elim_funs(&p)).map_err(|e| e.to_string())?;
    let p = reg_merge(&p).and_then(|p| to_qasm2(&p)).map_err(|e| e.to_string())?;
    Ok(p)
}

fn quip_law(law: Law, c: &QuipCircuit, w: &Writers) -> Verdict {
    match law {
        Law::Retraction(_) => {
            let back = tri!(reread_quip(c, w), "reread");
            if &back == c {
                Pass
            } else {
                Fail("read after write differs".into())
            }
        }
        Law::Inversion(_) => {
            let p1 = tri!(quip_to_qasm_with_map(c), "to openqasm").0;
            let p1r = tri!(reread_qasm(&p1, w), "reread openqasm");
            let c2 = tri!(qasm_to_quip_with_map(&p1r), "to quipper").0;
            let c2r = tri!(reread_quip(&c2, w), "reread quipper");
            let p3 = tri!(quip_to_qasm_with_map(&c2r), "to openqasm again").0;
            if qasm::structural_eq(&p1, &p3, true) {
                Pass
            } else {
                Fail("T2 T1 T2 differs from T2".into())
            }
        }
        Law::Idempotence(_) => {
            let round = |c: &QuipCircuit| -> Result<QuipCircuit, String> {
                let p = quip_to_qasm_with_map(c).map_err(|e| e.to_string())?.0;
                let p = reread_qasm(&p, w)?;
                let c = qasm_to_quip_with_map(&p).map_err(|e| e.to_string())?.0;
                reread_quip(&c, w)
            };
            let r1 = tri!(round(c), "first round");
            let r2 = tri!(round(&r1), "second round");
            if !quipper::structural_eq(&r1, &r2, true) {
                return Fail("second round changed the circuit".into());
            }
            let (l1, l2) = (tri!((w.quip)(&r1), "write"), tri!((w.quip)(&r2), "write"));
            if l1.len() == l2.len() {
                Pass
            } else {
                Fail(format!("text grew from {} to {} bytes", l1.len(), l2.len()))
            }
        }
        Law::Preservation(_) => {
            let src = match quip_sim(c) {
                Ok(s) => s,
                Err(HarnessError::NotUnitary) => return Skip,
                Err(e) => return Fail(e.to_string()),
            };
            let (p, map) = tri!(quip_to_qasm_with_map(c), "to openqasm");
            let mut qs = tri!(qasm_sim(&p), "oracle of translation");
            let last = |wire: usize| {
                map.range((wire, 0)..(wire + 1, 0)).next_back().and_then(|(_, o)| qs.wire(o))
            };
            let outs: Option<Vec<usize>> = src.outputs.iter().map(|&o| last(o)).collect();
            let Some(outs) = outs else { return Fail("output without register".into()) };
            qs.prog.outputs = outs;
            if let Fail(e) = same_semantics(&src, &qs.prog, "quip-to-qasm") {
                return Fail(e);
            }
            let e = tri!(elim_ctrls(c), "elim-ctrls");
            let es = tri!(quip_sim(&e), "oracle of elim-ctrls");
            if let Fail(e) = same_semantics(&src, &es, "elim-ctrls") {
                return Fail(e);
            }
            // Ancillas of the legacy output start in |0> without a call, so
            // compare on the unitary part over the input registers.
            let legacy = tri!(legacy_pipeline(c), "legacy pipeline");
            let ls = tri!(legacy_sim(&e, &legacy), "oracle of legacy pipeline");
            if let Fail(e) = same_semantics(&src, &ls, "legacy pipeline") {
                return Fail(e);
            }
            match to_lsc(&legacy) {
                Ok(l) => {
                    let ls = tri!(legacy_sim(&e, &l), "oracle of to-lsc");
                    same_semantics(&src, &ls, "to-lsc")
                }
                Err(PassError::Unreducible { .. }) => Pass,
                Err(e) => Fail(format!("to-lsc: {e}")),
            }
        }
        Law::Fluency(_) => {
            let Ok(a) = quip_sim(c) else { return Skip };
            let back = tri!(reread_quip(c, w), "reread");
            let b = tri!(quip_sim(&back), "oracle");
            same_semantics(&a, &b, "reread")
        }
        Law::Fixpoint(_) => {
            let once = tri!(elim_ctrls(c), "elim-ctrls");
            if !is_ctrl_free(&once) {
                return Fail("elim-ctrls left a controlled gate".into());
            }
            let twice = tri!(elim_ctrls(&once), "elim-ctrls");
            if once != twice {
                return Fail("elim-ctrls is not idempotent".into());
            }
            let n = quipper::normalize_alpha(c);
            if quipper::normalize_alpha(&n) != n {
                return Fail("normalize is not idempotent".into());
            }
            Pass
        }
    }
}

/// Oracle program of a merged legacy output for the control-free circuit
/// `e` it came from: `q[i]` is the `i`-th register in allocation order,
/// which starts with the circuit's input qubits. Every other register holds
/// an ancilla that starts and ends in `|0>`.
pub fn legacy_sim(e: &QuipCircuit, p: &QasmProgram) -> Result<SimProgram, HarnessError> {
    let s = qasm_sim(p)?;
    let n_in = e.inputs.len();
    let mut prog = s.prog;
    prog.inputs = (0..n_in).collect();
    let (_, map) = quip_to_qasm_legacy(e).map_err(|e| HarnessError::Unsupported(e.to_string()))?;
    let order: Vec<_> = legacy_slot_order(e)?;
    let outs: Option<Vec<usize>> = e
        .outputs
        .keys()
        .map(|&w| map.range((w, 0)..(w + 1, 0)).next_back().and_then(|(_, o)| order.iter().position(|x| x == o)))
        .collect();
    prog.outputs = outs.ok_or_else(|| HarnessError::Unsupported("output without register".into()))?;
    Ok(prog)
}

/// Qubit registers of the legacy translation in declaration order.
fn legacy_slot_order(e: &QuipCircuit) -> Result<Vec<qasm::Operand>, HarnessError> {
    let (p, _) = quip_to_qasm_legacy(e).map_err(|e| HarnessError::Unsupported(e.to_string()))?;
    Ok(p.slots(RegKind::Qubit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_on_a_small_corpus() {
        let corpus = Corpus::generate(1, 60);
        let report = check_laws(&corpus, &Law::ALL, &Writers::default());
        assert!(report.all_pass(), "{report}");
        let pres = report.row(Law::Preservation(Lang::Quipper)).unwrap();
        assert!(pres.checked >= 20, "{report}");
    }

    #[test]
    fn report_is_deterministic() {
        let corpus = Corpus::generate(5, 10);
        let laws = [Law::Retraction(Lang::Quipper), Law::Fixpoint(Lang::Qasm3)];
        let w = Writers::default();
        assert_eq!(check_laws(&corpus, &laws, &w), check_laws(&corpus, &laws, &w));
    }

    #[test]
    fn broken_writer_yields_small_counterexample() {
        let broken = Writers {
            quip: |c| write_quip(c).map(|t| t.replace("]*(", "](")).map_err(|e| e.to_string()),
            ..Writers::default()
        };
        let corpus = Corpus::generate(2, 40);
        let report = check_laws(&corpus, &[Law::Retraction(Lang::Quipper)], &broken);
        let row = &report.rows[0];
        assert!(row.failures > 0);
        let (text, _) = row.counterexample.as_ref().unwrap();
        let gates = text.lines().filter(|l| l.starts_with("QGate") || l.starts_with("QRot")).count();
        assert_eq!(gates, 1, "{text}");
        let c = parse_quip(text).unwrap();
        assert!(matches!(quip_law(Law::Retraction(Lang::Quipper), &c, &broken), Fail(_)));
    }
}
