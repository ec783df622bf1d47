use std::collections::BTreeMap;

use super::dfa::check_circuit;
use super::shadow::ShadowMap;
use super::TranslateError;
use crate::expr::angle_literal;
use crate::gate::GateKind;
use crate::qasm::names::{self, QUIPFUNCS_INC, QUIPGATES_INC, STDGATES_INC};
use crate::qasm::{Decl, Modifier, Operand, QasmProgram, QuipFunc, RegKind, Statement, Version};
use crate::quipper::{Control, QuipCircuit, QuipGate, WireType};

/// Register carrying each qubit lifetime, keyed by `(wire, k)` for the
/// `k`-th lifetime of the wire (inputs are lifetime 0).
pub type LifetimeMap = BTreeMap<(usize, usize), Operand>;

pub fn quip_to_qasm(c: &QuipCircuit) -> Result<QasmProgram, TranslateError> {
    Ok(quip_to_qasm_with_map(c)?.0)
}

pub fn quip_to_qasm_with_map(c: &QuipCircuit) -> Result<(QasmProgram, LifetimeMap), TranslateError> {
    Emitter::new(c, false)?.run(c)
}

/// Variant without `quipfuncs.inc`: ancilla calls are lowered to plain
/// OpenQASM (`x`, `measure`) assuming fresh registers start in `|0>`, and
/// terminated registers are returned to `|0>`.
pub fn quip_to_qasm_legacy(c: &QuipCircuit) -> Result<(QasmProgram, LifetimeMap), TranslateError> {
    Emitter::new(c, true)?.run(c)
}

struct Emitter {
    legacy: bool,
    shadows: ShadowMap,
    lifetimes: BTreeMap<usize, usize>,
    map: LifetimeMap,
    stmts: Vec<Statement>,
    input_decls: Vec<Decl>,
    quipgates: bool,
    calls: bool,
}

impl Emitter {
    fn new(c: &QuipCircuit, legacy: bool) -> Result<Emitter, TranslateError> {
        c.check_types()?;
        check_circuit(c)?;
        let mut e = Emitter {
            legacy,
            shadows: ShadowMap::new(),
            lifetimes: BTreeMap::new(),
            map: LifetimeMap::new(),
            stmts: vec![],
            input_decls: vec![],
            quipgates: false,
            calls: false,
        };
        let qs: Vec<usize> = c.inputs.iter().filter(|(_, t)| **t == WireType::Qbit).map(|(w, _)| *w).collect();
        let cs: Vec<usize> = c.inputs.iter().filter(|(_, t)| **t == WireType::Cbit).map(|(w, _)| *w).collect();
        for (name, kind, wires, ty) in
            [("input_qwires", RegKind::Qubit, &qs, WireType::Qbit), ("input_cwires", RegKind::Bit, &cs, WireType::Cbit)]
        {
            if wires.is_empty() {
                continue;
            }
            e.input_decls.push(Decl { kind, name: name.into(), size: Some(wires.len()) });
            for (i, &w) in wires.iter().enumerate() {
                let reg = Operand::at(name, i);
                e.shadows.bind(w, ty, reg.clone());
                e.lifetimes.insert(w, 1);
                if ty == WireType::Qbit {
                    e.map.insert((w, 0), reg);
                }
            }
        }
        Ok(e)
    }

    fn reg(&self, w: usize) -> Result<Operand, TranslateError> {
        self.shadows.carrier(w).cloned().ok_or_else(|| TranslateError::Unsupported(format!("wire {w} has no register")))
    }

    fn call(&mut self, func: QuipFunc, arg: Option<Operand>, result: Option<Operand>) {
        self.calls = true;
        self.stmts.push(Statement::Call { func, arg, result });
    }

    fn run(mut self, c: &QuipCircuit) -> Result<(QasmProgram, LifetimeMap), TranslateError> {
        for g in &c.gates {
            self.gate(g)?;
        }
        let mut p = QasmProgram::new(Version::V3);
        p.add_include(STDGATES_INC);
        if self.quipgates {
            p.add_include(QUIPGATES_INC);
        }
        if self.calls {
            p.add_include(QUIPFUNCS_INC);
        }
        p.decls = self.input_decls;
        p.decls.extend(self.shadows.decls().iter().cloned());
        p.stmts = self.stmts;
        Ok((p, self.map))
    }

    fn gate(&mut self, g: &QuipGate) -> Result<(), TranslateError> {
        match g {
            QuipGate::Unitary { gate, wires, controls, inverted } => {
                let mut mods = if *inverted { vec![Modifier::Inv] } else { vec![] };
                let mut ops = self.controls(controls, &mut mods)?;
                for &w in wires {
                    ops.push(self.reg(w)?);
                }
                if names::include_for(Version::V3, gate.tag(), 0) == Some(QUIPGATES_INC) {
                    self.quipgates = true;
                }
                self.stmts.push(Statement::Gate { mods, gate: gate.map(|a| angle_literal(*a)), operands: ops });
            }
            QuipGate::GPhase { angle, controls } => {
                let theta = angle_literal(*angle);
                let mut mods = vec![];
                match controls.split_last() {
                    Some((&(last, true), rest)) => {
                        let mut ops = self.controls(rest, &mut mods)?;
                        ops.push(self.reg(last)?);
                        self.stmts.push(Statement::Gate { mods, gate: GateKind::P(theta), operands: ops });
                    }
                    _ => {
                        let ops = self.controls(controls, &mut mods)?;
                        self.stmts.push(Statement::Gate { mods, gate: GateKind::GPhase(theta), operands: ops });
                    }
                }
            }
            QuipGate::QInit(v, w) => {
                let k = self.lifetimes.entry(*w).or_insert(0);
                *k += 1;
                let life = *k - 1;
                let q = self.shadows.alloc_fresh(*w, WireType::Qbit);
                self.map.insert((*w, life), q.clone());
                if self.legacy {
                    if *v {
                        self.stmts.push(Statement::gate(GateKind::X, vec![q]));
                    }
                } else {
                    self.call(if *v { QuipFunc::QInit1 } else { QuipFunc::QInit0 }, Some(q), None);
                }
            }
            QuipGate::QTerm(v, w) => {
                let q = self.reg(*w)?;
                self.shadows.release(*w);
                if !self.legacy {
                    self.call(if *v { QuipFunc::QTerm1 } else { QuipFunc::QTerm0 }, Some(q), None);
                } else if *v {
                    // Leave the register in |0> like every other ancilla.
                    self.stmts.push(Statement::gate(GateKind::X, vec![q]));
                }
            }
            QuipGate::QDiscard(w) => {
                let q = self.reg(*w)?;
                self.shadows.release(*w);
                if !self.legacy {
                    self.call(QuipFunc::QDiscard, Some(q), None);
                }
            }
            QuipGate::QMeas(w) => {
                let q = self.reg(*w)?;
                let c = self.shadows.shadow_alloc(*w, WireType::Cbit);
                if self.legacy {
                    self.stmts.push(Statement::Measure { src: q, dst: c });
                } else {
                    self.call(QuipFunc::QMeas, Some(q), Some(c));
                }
            }
            QuipGate::CInit(v, w) => {
                let fresh = self.shadows.get(*w).and_then(|s| s.creg.clone()).is_none();
                let c = self.shadows.shadow_alloc(*w, WireType::Cbit);
                if self.legacy {
                    if *v || !fresh {
                        return Err(TranslateError::Unsupported(format!(
                            "classical initialization of {c} has no OpenQASM 2.0 form"
                        )));
                    }
                } else {
                    self.call(if *v { QuipFunc::CInit1 } else { QuipFunc::CInit0 }, None, Some(c));
                }
            }
            QuipGate::CTerm(v, w) => {
                let c = self.reg(*w)?;
                self.shadows.release(*w);
                if !self.legacy {
                    self.call(if *v { QuipFunc::CTerm1 } else { QuipFunc::CTerm0 }, Some(c), None);
                }
            }
            QuipGate::CDiscard(w) => {
                let c = self.reg(*w)?;
                self.shadows.release(*w);
                if !self.legacy {
                    self.call(QuipFunc::CDiscard, Some(c), None);
                }
            }
        }
        Ok(())
    }

    fn controls(&self, cs: &[Control], mods: &mut Vec<Modifier>) -> Result<Vec<Operand>, TranslateError> {
        let mut ops = vec![];
        for &(w, pos) in cs {
            mods.push(if pos { Modifier::Ctrl } else { Modifier::NegCtrl });
            ops.push(self.reg(w)?);
        }
        Ok(ops)
    }
}
