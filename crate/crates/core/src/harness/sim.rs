//! Conversions from both IRs to the matrix oracle.

use std::collections::BTreeMap;

use super::HarnessError;
use crate::gate::GateKind;
use crate::matrix::Matrix;
use crate::qasm::{Modifier, Operand, QasmProgram, QuipFunc, RegKind, Statement};
use crate::quipper::{QuipCircuit, QuipGate, WireType};
use crate::semantics::{Event, Op, SimProgram};

/// Oracle program for a measurement-free circuit. Inputs and outputs are
/// the qubit wires in increasing order.
pub fn quip_sim(c: &QuipCircuit) -> Result<SimProgram, HarnessError> {
    let mut events = vec![];
    for g in &c.gates {
        events.push(match g {
            QuipGate::Unitary { gate, wires, controls, inverted } => Event::Apply(Op {
                gate: gate.clone(),
                inverted: *inverted,
                targets: wires.clone(),
                controls: controls.clone(),
            }),
            QuipGate::GPhase { angle, controls } => Event::Apply(Op {
                gate: GateKind::GPhase(*angle),
                inverted: false,
                targets: vec![],
                controls: controls.clone(),
            }),
            QuipGate::QInit(v, w) => Event::Init(*w, *v),
            QuipGate::QTerm(v, w) => Event::Term(*w, *v),
            _ => return Err(HarnessError::NotUnitary),
        });
    }
    let qubits = |m: &BTreeMap<usize, WireType>| -> Result<Vec<usize>, HarnessError> {
        m.iter()
            .map(|(&w, &t)| if t == WireType::Qbit { Ok(w) } else { Err(HarnessError::NotUnitary) })
            .collect()
    };
    Ok(SimProgram { wires: c.wire_count(), inputs: qubits(&c.inputs)?, outputs: qubits(&c.outputs)?, events })
}

pub fn quip_isometry(c: &QuipCircuit) -> Result<Matrix, HarnessError> {
    Ok(quip_sim(c)?.isometry()?)
}

/// Oracle program for an OpenQASM program together with its slot table.
#[derive(Clone, Debug, PartialEq)]
pub struct QasmSim {
    pub prog: SimProgram,
    /// Qubit slots in declaration order; slot `i` is oracle wire `i`.
    pub slots: Vec<Operand>,
}

impl QasmSim {
    pub fn wire(&self, o: &Operand) -> Option<usize> {
        self.slots.iter().position(|s| s == o)
    }
}

/// Oracle program for a measurement-free OpenQASM program. Slots first
/// prepared by `QInit` are not inputs and slots last terminated by `QTerm`
/// are not outputs; all others are both, in declaration order.
pub fn qasm_sim(p: &QasmProgram) -> Result<QasmSim, HarnessError> {
    let slots = p.slots(RegKind::Qubit);
    let index: BTreeMap<&Operand, usize> = slots.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let wire = |o: &Operand| index.get(o).copied().ok_or_else(|| HarnessError::Unsupported(format!("{o} is not a qubit")));
    let mut events = vec![];
    let mut first: BTreeMap<usize, bool> = BTreeMap::new();
    let mut last: BTreeMap<usize, bool> = BTreeMap::new();
    let mut touch = |w: usize, init: bool, term: bool| {
        first.entry(w).or_insert(init);
        last.insert(w, term);
    };
    for (i, s) in p.stmts.iter().enumerate() {
        match s {
            Statement::Gate { mods, gate, operands } => {
                let gate = gate.try_map(|e| e.eval()).map_err(|e| HarnessError::Unsupported(format!("statement {i}: {e}")))?;
                let mut op = Op::new(gate, vec![]);
                let mut k = 0;
                let mut exp: i64 = 1;
                for m in mods {
                    match m {
                        Modifier::Ctrl | Modifier::NegCtrl => {
                            op.controls.push((wire(&operands[k])?, *m == Modifier::Ctrl));
                            k += 1;
                        }
                        Modifier::Inv => op.inverted = !op.inverted,
                        Modifier::Pow(e) => exp *= e,
                    }
                }
                for o in &operands[k..] {
                    op.targets.push(wire(o)?);
                }
                for w in op.wires().collect::<Vec<_>>() {
                    touch(w, false, false);
                }
                if exp < 0 {
                    op.inverted = !op.inverted;
                }
                for _ in 0..exp.unsigned_abs() {
                    events.push(Event::Apply(op.clone()));
                }
            }
            Statement::Call { func, arg: Some(a), result: None } => {
                let w = wire(a)?;
                let ev = match func {
                    QuipFunc::QInit0 => Event::Init(w, false),
                    QuipFunc::QInit1 => Event::Init(w, true),
                    QuipFunc::QTerm0 => Event::Term(w, false),
                    QuipFunc::QTerm1 => Event::Term(w, true),
                    _ => return Err(HarnessError::NotUnitary),
                };
                let init = matches!(ev, Event::Init(..));
                touch(w, init, !init);
                events.push(ev);
            }
            _ => return Err(HarnessError::NotUnitary),
        }
    }
    let inputs = (0..slots.len()).filter(|w| !first.get(w).copied().unwrap_or(false)).collect();
    let outputs = (0..slots.len()).filter(|w| !last.get(w).copied().unwrap_or(false)).collect();
    Ok(QasmSim { prog: SimProgram { wires: slots.len(), inputs, outputs, events }, slots })
}

pub fn qasm_isometry(p: &QasmProgram) -> Result<Matrix, HarnessError> {
    Ok(qasm_sim(p)?.prog.isometry()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::eq_upto_phase;
    use crate::qasm::parse_qasm;
    use crate::quipper::parse_quip;

    #[test]
    fn both_sides_agree_on_cx() {
        let p = parse_qasm("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\ncx q[0], q[1];\n").unwrap();
        let c = parse_quip("Inputs: 0:Qbit, 1:Qbit\nQGate[\"not\"](1) with controls=[+0]\nOutputs: 0:Qbit, 1:Qbit\n").unwrap();
        assert!(eq_upto_phase(&qasm_isometry(&p).unwrap(), &quip_isometry(&c).unwrap(), 1e-12));
    }

    #[test]
    fn ancilla_calls_are_not_inputs() {
        let p = parse_qasm(
            "OPENQASM 3;\ninclude \"stdgates.inc\";\ninclude \"quipfuncs.inc\";\nqubit a;\nqubit t;\nQInit0(t);\ncx a, t;\ncx a, t;\nQTerm0(t);\npow(-2) @ s a;\n",
        )
        .unwrap();
        let s = qasm_sim(&p).unwrap();
        assert_eq!((s.prog.inputs.clone(), s.prog.outputs.clone()), (vec![0], vec![0]));
        let m = s.prog.isometry().unwrap();
        assert!(eq_upto_phase(&m, &crate::semantics::gate_matrix(&GateKind::Z), 1e-12));
    }

    #[test]
    fn measurement_is_rejected() {
        let c = parse_quip("Inputs: 0:Qbit\nQMeas(0)\nOutputs: 0:Cbit\n").unwrap();
        assert_eq!(quip_sim(&c), Err(HarnessError::NotUnitary));
    }
}
