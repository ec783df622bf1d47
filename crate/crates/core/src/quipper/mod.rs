//! Quipper ASCII circuits: IR, type checking and alpha-normalization.
//!
//! Line grammar:
//!
//! ```text
//! Inputs: 0:Qbit, 1:Cbit            (or `Inputs: none`)
//! QGate["not"](2) with controls=[+0,-1]
//! QGate["S"]*(0)                    (`*` or `with inverse` marks inversion)
//! QRot["exp(-i%Z)",0.5](0)
//! GPhase[0.25] with controls=[+1]
//! QInit0(3)  QInit1  QTerm0  QTerm1  QDiscard  QMeas
//! CInit0(3)  CInit1  CTerm0  CTerm1  CDiscard
//! Outputs: 0:Qbit, 1:Cbit
//! ```

mod parser;
mod writer;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::gate::GateKind;

pub use parser::{parse_quip, QuipError};
pub use writer::{write_quip, QuipWriteError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WireType {
    Qbit,
    Cbit,
}

impl fmt::Display for WireType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WireType::Qbit => "Qbit",
            WireType::Cbit => "Cbit",
        })
    }
}

/// `(wire, positive)`
pub type Control = (usize, bool);

#[derive(Clone, Debug, PartialEq)]
pub enum QuipGate {
    Unitary {
        gate: GateKind<f64>,
        wires: Vec<usize>,
        controls: Vec<Control>,
        inverted: bool,
    },
    GPhase {
        angle: f64,
        controls: Vec<Control>,
    },
    QInit(bool, usize),
    QTerm(bool, usize),
    QDiscard(usize),
    QMeas(usize),
    CInit(bool, usize),
    CTerm(bool, usize),
    CDiscard(usize),
}

impl QuipGate {
    pub fn unitary(gate: GateKind<f64>, wires: Vec<usize>) -> QuipGate {
        QuipGate::Unitary { gate, wires, controls: vec![], inverted: false }
    }

    /// Every wire the gate touches, controls first.
    pub fn wires(&self) -> Vec<usize> {
        match self {
            QuipGate::Unitary { wires, controls, .. } => {
                controls.iter().map(|c| c.0).chain(wires.iter().copied()).collect()
            }
            QuipGate::GPhase { controls, .. } => controls.iter().map(|c| c.0).collect(),
            QuipGate::QInit(_, w)
            | QuipGate::QTerm(_, w)
            | QuipGate::QDiscard(w)
            | QuipGate::QMeas(w)
            | QuipGate::CInit(_, w)
            | QuipGate::CTerm(_, w)
            | QuipGate::CDiscard(w) => vec![*w],
        }
    }

    pub fn map_wires(&self, mut f: impl FnMut(usize) -> usize) -> QuipGate {
        let mut cs = |cs: &[Control]| cs.iter().map(|&(w, p)| (f(w), p)).collect::<Vec<_>>();
        match self {
            QuipGate::Unitary { gate, wires, controls, inverted } => {
                let controls = cs(controls);
                QuipGate::Unitary {
                    gate: gate.clone(),
                    wires: wires.iter().map(|&w| f(w)).collect(),
                    controls,
                    inverted: *inverted,
                }
            }
            QuipGate::GPhase { angle, controls } => QuipGate::GPhase { angle: *angle, controls: cs(controls) },
            QuipGate::QInit(v, w) => QuipGate::QInit(*v, f(*w)),
            QuipGate::QTerm(v, w) => QuipGate::QTerm(*v, f(*w)),
            QuipGate::QDiscard(w) => QuipGate::QDiscard(f(*w)),
            QuipGate::QMeas(w) => QuipGate::QMeas(f(*w)),
            QuipGate::CInit(v, w) => QuipGate::CInit(*v, f(*w)),
            QuipGate::CTerm(v, w) => QuipGate::CTerm(*v, f(*w)),
            QuipGate::CDiscard(w) => QuipGate::CDiscard(f(*w)),
        }
    }

    /// Controls, or an empty slice for non-unitary gates.
    pub fn controls(&self) -> &[Control] {
        match self {
            QuipGate::Unitary { controls, .. } | QuipGate::GPhase { controls, .. } => controls,
            _ => &[],
        }
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self, QuipGate::Unitary { .. } | QuipGate::GPhase { .. })
    }

    /// Wire born by this gate, with its type.
    pub fn birth(&self) -> Option<(usize, WireType)> {
        match self {
            QuipGate::QInit(_, w) => Some((*w, WireType::Qbit)),
            QuipGate::CInit(_, w) => Some((*w, WireType::Cbit)),
            _ => None,
        }
    }

    /// Wire released by this gate.
    pub fn death(&self) -> Option<usize> {
        match self {
            QuipGate::QTerm(_, w) | QuipGate::QDiscard(w) | QuipGate::CTerm(_, w) | QuipGate::CDiscard(w) => {
                Some(*w)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct QuipCircuit {
    pub inputs: BTreeMap<usize, WireType>,
    pub gates: Vec<QuipGate>,
    pub outputs: BTreeMap<usize, WireType>,
}

#[derive(Clone, Debug, Error, PartialEq)]
#[error("gate {gate}: {msg}")]
pub struct TypeError {
    pub gate: usize,
    pub msg: String,
}

impl QuipCircuit {
    /// Circuit with the given inputs and no gates; outputs equal inputs.
    pub fn with_inputs(inputs: BTreeMap<usize, WireType>) -> QuipCircuit {
        QuipCircuit { outputs: inputs.clone(), inputs, gates: vec![] }
    }

    /// One past the largest wire index mentioned anywhere.
    pub fn wire_count(&self) -> usize {
        let gate_max = self.gates.iter().flat_map(|g| g.wires()).max();
        let io_max = self.inputs.keys().chain(self.outputs.keys()).copied().max();
        gate_max.max(io_max).map_or(0, |m| m + 1)
    }

    /// Follows wire types through the gates, returning the final typing.
    /// Wires of unknown type are assumed to carry the type the gate expects;
    /// lifetime errors are left to the wire automaton.
    pub fn check_types(&self) -> Result<BTreeMap<usize, WireType>, TypeError> {
        let mut ty = self.inputs.clone();
        for (i, g) in self.gates.iter().enumerate() {
            let err = |msg: String| TypeError { gate: i, msg };
            let expect = |ty: &BTreeMap<usize, WireType>, w: usize, want: WireType| {
                match ty.get(&w) {
                    Some(&t) if t != want => Err(err(format!("wire {w} is a {t}, expected {want}"))),
                    _ => Ok(()),
                }
            };
            match g {
                QuipGate::Unitary { .. } | QuipGate::GPhase { .. } => {
                    for w in g.wires() {
                        expect(&ty, w, WireType::Qbit)?;
                        ty.insert(w, WireType::Qbit);
                    }
                }
                QuipGate::QInit(_, w) => {
                    ty.insert(*w, WireType::Qbit);
                }
                QuipGate::CInit(_, w) => {
                    ty.insert(*w, WireType::Cbit);
                }
                QuipGate::QMeas(w) => {
                    expect(&ty, *w, WireType::Qbit)?;
                    ty.insert(*w, WireType::Cbit);
                }
                QuipGate::QTerm(_, w) | QuipGate::QDiscard(w) => {
                    expect(&ty, *w, WireType::Qbit)?;
                    ty.remove(w);
                }
                QuipGate::CTerm(_, w) | QuipGate::CDiscard(w) => {
                    expect(&ty, *w, WireType::Cbit)?;
                    ty.remove(w);
                }
            }
        }
        Ok(ty)
    }

    /// Recomputes `outputs` from the inputs and gates.
    pub fn with_inferred_outputs(mut self) -> Result<QuipCircuit, TypeError> {
        self.outputs = self.check_types()?;
        Ok(self)
    }
}

/// Renames wires by lifetime: inputs get `0..` (qubits first), and every
/// birth takes the smallest index not live at that point. Two circuits that
/// differ only in wire numbering have the same normal form.
pub fn normalize_alpha(c: &QuipCircuit) -> QuipCircuit {
    let mut order: Vec<(usize, WireType)> = c.inputs.iter().map(|(&w, &t)| (w, t)).collect();
    order.sort_by_key(|&(w, t)| (t, w));
    let mut map: BTreeMap<usize, usize> = BTreeMap::new();
    let mut live: BTreeSet<usize> = BTreeSet::new();
    let fresh = |live: &BTreeSet<usize>| (0..).find(|k| !live.contains(k)).unwrap();
    let mut inputs = BTreeMap::new();
    for (k, &(w, t)) in order.iter().enumerate() {
        map.insert(w, k);
        live.insert(k);
        inputs.insert(k, t);
    }
    let mut gates = Vec::with_capacity(c.gates.len());
    for g in &c.gates {
        if let Some((w, _)) = g.birth() {
            let k = fresh(&live);
            live.insert(k);
            map.insert(w, k);
        }
        let ng = g.map_wires(|w| match map.get(&w) {
            Some(&k) => k,
            None => {
                let k = fresh(&live);
                live.insert(k);
                map.insert(w, k);
                k
            }
        });
        if let Some(w) = g.death() {
            if let Some(k) = map.remove(&w) {
                live.remove(&k);
            }
        }
        gates.push(ng);
    }
    let mut outputs = BTreeMap::new();
    for (&w, &t) in &c.outputs {
        let k = match map.get(&w) {
            Some(&k) => k,
            None => {
                let k = fresh(&live);
                live.insert(k);
                map.insert(w, k);
                k
            }
        };
        outputs.insert(k, t);
    }
    QuipCircuit { inputs, gates, outputs }
}

pub fn structural_eq(a: &QuipCircuit, b: &QuipCircuit, alpha: bool) -> bool {
    if alpha {
        normalize_alpha(a) == normalize_alpha(b)
    } else {
        a == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(inputs: &[(usize, WireType)], gates: Vec<QuipGate>) -> QuipCircuit {
        QuipCircuit { inputs: inputs.iter().copied().collect(), gates, outputs: BTreeMap::new() }
            .with_inferred_outputs()
            .unwrap()
    }

    #[test]
    fn measurement_flips_type() {
        let c = circ(&[(2, WireType::Qbit)], vec![QuipGate::QMeas(2)]);
        assert_eq!(c.outputs.get(&2), Some(&WireType::Cbit));
        let bad = QuipCircuit {
            inputs: [(0, WireType::Cbit)].into_iter().collect(),
            gates: vec![QuipGate::unitary(GateKind::H, vec![0])],
            outputs: BTreeMap::new(),
        };
        assert_eq!(bad.check_types().unwrap_err().gate, 0);
    }

    #[test]
    fn alpha_ignores_numbering() {
        let a = circ(
            &[(0, WireType::Qbit)],
            vec![
                QuipGate::QInit(false, 5),
                QuipGate::Unitary { gate: GateKind::X, wires: vec![5], controls: vec![(0, true)], inverted: false },
                QuipGate::QTerm(false, 5),
                QuipGate::QInit(false, 7),
                QuipGate::QMeas(7),
            ],
        );
        let b = circ(
            &[(3, WireType::Qbit)],
            vec![
                QuipGate::QInit(false, 1),
                QuipGate::Unitary { gate: GateKind::X, wires: vec![1], controls: vec![(3, true)], inverted: false },
                QuipGate::QTerm(false, 1),
                QuipGate::QInit(false, 1),
                QuipGate::QMeas(1),
            ],
        );
        assert!(!structural_eq(&a, &b, false));
        assert!(structural_eq(&a, &b, true));
        let n = normalize_alpha(&a);
        assert_eq!(normalize_alpha(&n), n);
    }

    #[test]
    fn alpha_keeps_structure() {
        let a = circ(&[(0, WireType::Qbit), (1, WireType::Qbit)], vec![QuipGate::unitary(GateKind::H, vec![0])]);
        let b = circ(&[(0, WireType::Qbit), (1, WireType::Qbit)], vec![QuipGate::unitary(GateKind::H, vec![1])]);
        assert!(!structural_eq(&a, &b, true));
    }
}
