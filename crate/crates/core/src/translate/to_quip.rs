use std::collections::{BTreeMap, HashMap};

use super::dfa::check_circuit;
use super::TranslateError;
use crate::decompose::{find, inst_to_quip, Family, Inst};
use crate::qasm::{validate, Modifier, Operand, QasmProgram, QuipFunc, RegKind, Statement};
use crate::quipper::{QuipCircuit, QuipGate, WireType};

/// Home wire of each register slot.
pub type SlotMap = BTreeMap<Operand, usize>;

pub fn qasm_to_quip(p: &QasmProgram) -> Result<QuipCircuit, TranslateError> {
    Ok(qasm_to_quip_with_map(p)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Ev {
    QUse,
    QInit,
    BRead,
    BWrite,
}

fn events(s: &Statement) -> Vec<(&Operand, Ev)> {
    match s {
        Statement::Gate { operands, .. } => operands.iter().map(|o| (o, Ev::QUse)).collect(),
        Statement::Measure { src, dst } => vec![(src, Ev::QUse), (dst, Ev::BWrite)],
        Statement::Reset(q) => vec![(q, Ev::QInit)],
        Statement::Call { func, arg, result } => {
            let mut v = vec![];
            if let Some(a) = arg {
                let ev = match (func.arg_kind(), func) {
                    (_, QuipFunc::QInit0 | QuipFunc::QInit1) => Ev::QInit,
                    (Some(RegKind::Bit), _) => Ev::BRead,
                    _ => Ev::QUse,
                };
                v.push((a, ev));
            }
            if let Some(r) = result {
                v.push((r, Ev::BWrite));
            }
            v
        }
    }
}

/// Wire assignment and emission state.
struct Lower {
    bound: BTreeMap<Operand, usize>,
    owner: BTreeMap<usize, Operand>,
    home: SlotMap,
    next: usize,
    gates: Vec<QuipGate>,
}

impl Lower {
    fn free(&self, w: usize) -> bool {
        !self.owner.contains_key(&w)
    }

    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    fn bind(&mut self, slot: &Operand, w: usize) {
        self.bound.insert(slot.clone(), w);
        self.owner.insert(w, slot.clone());
        self.home.entry(slot.clone()).or_insert(w);
    }

    fn unbind(&mut self, slot: &Operand) -> Option<usize> {
        let w = self.bound.remove(slot)?;
        self.owner.remove(&w);
        Some(w)
    }

    fn wire(&self, slot: &Operand, stmt: usize) -> Result<usize, TranslateError> {
        self.bound
            .get(slot)
            .copied()
            .ok_or_else(|| TranslateError::Statement { stmt, msg: format!("`{slot}` is not live here") })
    }

    /// Home of `slot` if it is free, otherwise a fresh wire.
    fn home_or_fresh(&mut self, slot: &Operand) -> usize {
        match self.home.get(slot) {
            Some(&h) if self.free(h) => h,
            _ => self.fresh(),
        }
    }

    /// Discards a bit that is about to be overwritten.
    fn drop_bit(&mut self, slot: &Operand) {
        if let Some(w) = self.unbind(slot) {
            self.gates.push(QuipGate::CDiscard(w));
        }
    }
}

/// Lowers a gate application to native Quipper gates, following the
/// inverse and translation rules of the catalog.
fn lower_inst(inst: Inst<f64>, out: &mut Vec<QuipGate>) -> Result<(), String> {
    if let Some(g) = inst_to_quip(&inst) {
        out.push(g);
        return Ok(());
    }
    let tag = inst.gate.tag();
    let rule = if inst.inverted && !tag.is_self_inverse() {
        find(Family::Inverse, tag, 0, true)
    } else {
        find(Family::ToQuipper, tag, 0, false)
    }
    .filter(|r| r.ancillas == 0)
    .ok_or_else(|| format!("no Quipper form for {tag:?}"))?;
    let params: Vec<f64> = inst.gate.params().into_iter().copied().collect();
    for i in rule.instantiate(&params, &inst.targets, &inst.controls) {
        lower_inst(i, out)?;
    }
    Ok(())
}

pub fn qasm_to_quip_with_map(p: &QasmProgram) -> Result<(QuipCircuit, SlotMap), TranslateError> {
    let diags = validate(p);
    if !diags.is_empty() {
        return Err(TranslateError::Invalid(diags));
    }
    let qslots = p.slots(RegKind::Qubit);
    let bslots = p.slots(RegKind::Bit);

    let mut first: HashMap<&Operand, Ev> = HashMap::new();
    for s in &p.stmts {
        for (o, ev) in events(s) {
            first.entry(o).or_insert(ev);
        }
    }
    // Unread measurement results: no later statement reads the bit before
    // it is overwritten or the program ends.
    let mut auto_discard = vec![false; p.stmts.len()];
    let mut next: HashMap<&Operand, Ev> = HashMap::new();
    for (i, s) in p.stmts.iter().enumerate().rev() {
        if let Statement::Measure { dst, .. } = s {
            auto_discard[i] = next.get(dst) != Some(&Ev::BRead);
        }
        for (o, ev) in events(s) {
            if matches!(ev, Ev::BRead | Ev::BWrite) {
                next.insert(o, ev);
            }
        }
    }

    let mut st = Lower { bound: BTreeMap::new(), owner: BTreeMap::new(), home: SlotMap::new(), next: 0, gates: vec![] };
    let mut inputs = BTreeMap::new();
    for q in qslots.iter().filter(|q| first.get(q) != Some(&Ev::QInit)) {
        let w = st.fresh();
        st.bind(q, w);
        inputs.insert(w, WireType::Qbit);
    }
    for b in bslots.iter().filter(|b| first.get(b) != Some(&Ev::BWrite)) {
        let w = st.fresh();
        st.bind(b, w);
        inputs.insert(w, WireType::Cbit);
    }
    for q in qslots.iter().filter(|q| first.get(q) == Some(&Ev::QInit)) {
        let w = st.fresh();
        st.home.insert(q.clone(), w);
    }

    for (i, s) in p.stmts.iter().enumerate() {
        match s {
            Statement::Gate { mods, gate, operands } => {
                let mut ops = operands.iter();
                let mut controls = vec![];
                let (mut inverted, mut exp) = (false, 1i64);
                for m in mods {
                    match m {
                        Modifier::Ctrl | Modifier::NegCtrl => {
                            let o = ops.next().expect("validated operand count");
                            controls.push((st.wire(o, i)?, *m == Modifier::Ctrl));
                        }
                        Modifier::Inv => inverted = !inverted,
                        Modifier::Pow(k) => exp *= k,
                    }
                }
                let targets = ops.map(|o| st.wire(o, i)).collect::<Result<Vec<_>, _>>()?;
                let g = gate.try_map(|e| e.eval()).map_err(|source| TranslateError::Angle { stmt: i, source })?;
                let inst = Inst { gate: g, targets, controls, inverted: inverted ^ (exp < 0) };
                for _ in 0..exp.unsigned_abs() {
                    lower_inst(inst.clone(), &mut st.gates).map_err(|msg| TranslateError::Statement { stmt: i, msg })?;
                }
            }
            Statement::Measure { src, dst } => {
                let qw = st.wire(src, i)?;
                st.drop_bit(dst);
                let anc = st.home_or_fresh(dst);
                st.gates.push(QuipGate::QInit(false, anc));
                st.gates.push(QuipGate::Unitary {
                    gate: crate::gate::GateKind::X,
                    wires: vec![anc],
                    controls: vec![(qw, true)],
                    inverted: false,
                });
                st.gates.push(QuipGate::QMeas(anc));
                st.bind(dst, anc);
                if auto_discard[i] {
                    st.drop_bit(dst);
                }
            }
            Statement::Reset(q) => {
                let w = match st.unbind(q) {
                    Some(w) => {
                        st.gates.push(QuipGate::QDiscard(w));
                        w
                    }
                    None => st.home_or_fresh(q),
                };
                st.gates.push(QuipGate::QInit(false, w));
                st.bind(q, w);
            }
            Statement::Call { func, arg, result } => {
                let arg = arg.as_ref();
                match func {
                    QuipFunc::QInit0 | QuipFunc::QInit1 => {
                        let q = arg.expect("validated call");
                        if st.bound.contains_key(q) {
                            return Err(TranslateError::Statement { stmt: i, msg: format!("`{q}` is already live") });
                        }
                        let planned = measured_into(&p.stmts[i + 1..], q).and_then(|b| st.home.get(b).copied());
                        let w = match planned {
                            Some(h) if st.free(h) => h,
                            _ => st.home_or_fresh(q),
                        };
                        st.gates.push(QuipGate::QInit(*func == QuipFunc::QInit1, w));
                        st.bind(q, w);
                    }
                    QuipFunc::QTerm0 | QuipFunc::QTerm1 | QuipFunc::QDiscard => {
                        let q = arg.expect("validated call");
                        let w = st.wire(q, i)?;
                        st.unbind(q);
                        st.gates.push(match func {
                            QuipFunc::QDiscard => QuipGate::QDiscard(w),
                            f => QuipGate::QTerm(*f == QuipFunc::QTerm1, w),
                        });
                    }
                    QuipFunc::QMeas => {
                        let q = arg.expect("validated call");
                        let c = result.as_ref().expect("validated call");
                        let w = st.wire(q, i)?;
                        st.drop_bit(c);
                        st.unbind(q);
                        st.gates.push(QuipGate::QMeas(w));
                        st.bind(c, w);
                    }
                    QuipFunc::CInit0 | QuipFunc::CInit1 => {
                        let c = result.as_ref().expect("validated call");
                        st.drop_bit(c);
                        let w = st.home_or_fresh(c);
                        st.gates.push(QuipGate::CInit(*func == QuipFunc::CInit1, w));
                        st.bind(c, w);
                    }
                    QuipFunc::CTerm0 | QuipFunc::CTerm1 | QuipFunc::CDiscard => {
                        let c = arg.expect("validated call");
                        let w = st.wire(c, i)?;
                        st.unbind(c);
                        st.gates.push(match func {
                            QuipFunc::CDiscard => QuipGate::CDiscard(w),
                            f => QuipGate::CTerm(*f == QuipFunc::CTerm1, w),
                        });
                    }
                }
            }
        }
    }

    let outputs = st
        .bound
        .iter()
        .map(|(slot, &w)| {
            let ty = if p.decl(&slot.name).map(|d| d.kind) == Some(RegKind::Qubit) { WireType::Qbit } else { WireType::Cbit };
            (w, ty)
        })
        .collect();
    let c = QuipCircuit { inputs, gates: st.gates, outputs };
    check_circuit(&c)?;
    Ok((c, st.home))
}

/// Bit that receives the next `QMeas` of `q`, unless `q` is reinitialized
/// first.
fn measured_into<'a>(rest: &'a [Statement], q: &Operand) -> Option<&'a Operand> {
    for s in rest {
        match s {
            Statement::Call { func: QuipFunc::QMeas, arg: Some(a), result } if a == q => return result.as_ref(),
            Statement::Call { func: QuipFunc::QInit0 | QuipFunc::QInit1, arg: Some(a), .. } if a == q => return None,
            Statement::Reset(a) if a == q => return None,
            _ => {}
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::parse_qasm;
    use crate::quipper::write_quip;

    fn quip(src: &str) -> String {
        write_quip(&qasm_to_quip(&parse_qasm(src).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn declarations_only() {
        let out = quip("OPENQASM 3;\nqubit[2] q;\n");
        assert_eq!(out, "Inputs: 0:Qbit, 1:Qbit\nOutputs: 0:Qbit, 1:Qbit\n");
    }

    #[test]
    fn reset_is_discard_then_init() {
        let out = quip("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit q;\nh q;\nreset q;\nx q;\n");
        assert_eq!(
            out,
            "Inputs: 0:Qbit\nQGate[\"H\"](0)\nQDiscard(0)\nQInit0(0)\nQGate[\"not\"](0)\nOutputs: 0:Qbit\n"
        );
    }

    #[test]
    fn measurement_circuit() {
        let out = quip("OPENQASM 3;\nqubit q;\nbit c;\nc = measure q;\nc = measure q;\n");
        let want = "Inputs: 0:Qbit\n\
                    QInit0(1)\nQGate[\"not\"](1) with controls=[+0]\nQMeas(1)\nCDiscard(1)\n\
                    QInit0(1)\nQGate[\"not\"](1) with controls=[+0]\nQMeas(1)\nCDiscard(1)\n\
                    Outputs: 0:Qbit\n";
        assert_eq!(out, want);
    }

    #[test]
    fn modifiers_and_rules() {
        let out = quip("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\npow(-2) @ ctrl @ s q[0], q[1];\np(pi) q[0];\n");
        assert_eq!(out.matches("QGate[\"S\"]*(1) with controls=[+0]").count(), 2, "{out}");
        assert!(out.contains("GPhase[3.141592653589793] with controls=[+0]"), "{out}");
    }

    #[test]
    fn calls_map_to_native_gates() {
        let src = "OPENQASM 3;\ninclude \"stdgates.inc\";\ninclude \"quipfuncs.inc\";\nqubit a;\nqubit t;\nbit c;\n\
                   QInit0(t);\ncx a, t;\nc = QMeas(t);\nCDiscard(c);\n";
        let out = quip(src);
        assert_eq!(
            out,
            "Inputs: 0:Qbit\nQInit0(1)\nQGate[\"not\"](1) with controls=[+0]\nQMeas(1)\nCDiscard(1)\nOutputs: 0:Qbit\n"
        );
    }

    #[test]
    fn use_after_termination_is_rejected() {
        let src = "OPENQASM 3;\ninclude \"stdgates.inc\";\ninclude \"quipfuncs.inc\";\nqubit a;\nQTerm0(a);\nx a;\n";
        assert!(matches!(qasm_to_quip(&parse_qasm(src).unwrap()), Err(TranslateError::Statement { stmt: 1, .. })));
    }
}
