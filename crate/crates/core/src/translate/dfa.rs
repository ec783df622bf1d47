//! Wire lifetimes as a four-state automaton over `Init`, `Term` and `Use`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::quipper::{QuipCircuit, QuipGate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WireState {
    Fresh,
    LiveInput,
    LiveAncilla,
    Dead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DfaEvent {
    Init,
    Term,
    Use,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DfaErrorKind {
    DoubleInit,
    UseBeforeInit,
    UseAfterTerm,
    TermBeforeInit,
}

impl fmt::Display for DfaErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DfaErrorKind::DoubleInit => "double initialization",
            DfaErrorKind::UseBeforeInit => "use before initialization",
            DfaErrorKind::UseAfterTerm => "use after termination",
            DfaErrorKind::TermBeforeInit => "termination before initialization",
        })
    }
}

#[derive(Clone, Copy, Debug, Error, PartialEq, Eq)]
#[error("{kind} on wire {wire} at gate {event}")]
pub struct DfaError {
    pub kind: DfaErrorKind,
    pub wire: usize,
    /// Index of the offending gate.
    pub event: usize,
}

pub fn dfa_step(state: WireState, event: DfaEvent) -> Result<WireState, DfaErrorKind> {
    use DfaEvent as E;
    use WireState as S;
    match (state, event) {
        (S::Fresh, E::Use) => Ok(S::LiveInput),
        (S::Fresh, E::Init) | (S::Dead, E::Init) => Ok(S::LiveAncilla),
        (S::Fresh, E::Term) => Err(DfaErrorKind::TermBeforeInit),
        (s @ (S::LiveInput | S::LiveAncilla), E::Use) => Ok(s),
        (S::LiveInput | S::LiveAncilla, E::Term) => Ok(S::Dead),
        (S::LiveInput | S::LiveAncilla, E::Init) => Err(DfaErrorKind::DoubleInit),
        (S::Dead, E::Use | E::Term) => Err(DfaErrorKind::UseAfterTerm),
    }
}

/// Automaton events of one gate, per wire.
pub fn gate_events(g: &QuipGate) -> Vec<(usize, DfaEvent)> {
    match g {
        QuipGate::QInit(_, w) | QuipGate::CInit(_, w) => vec![(*w, DfaEvent::Init)],
        QuipGate::QTerm(_, w) | QuipGate::QDiscard(w) | QuipGate::CTerm(_, w) | QuipGate::CDiscard(w) => {
            vec![(*w, DfaEvent::Term)]
        }
        _ => g.wires().into_iter().map(|w| (w, DfaEvent::Use)).collect(),
    }
}

/// One lifetime of a wire. `birth` is `None` for inputs, `death` is `None`
/// for outputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub wire: usize,
    pub birth: Option<usize>,
    pub death: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfaReport {
    pub inputs: usize,
    pub outputs: usize,
    pub intervals: Vec<Interval>,
    pub states: BTreeMap<usize, WireState>,
}

impl DfaReport {
    /// Lifetimes that start and end inside the circuit, as gate-index pairs.
    pub fn ancilla_intervals(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> =
            self.intervals.iter().filter_map(|i| Some((i.birth?, i.death?))).collect();
        v.sort();
        v
    }
}

/// Runs the automaton on every wire. Declared inputs start live; any other
/// wire must be initialized before use.
pub fn check_circuit(c: &QuipCircuit) -> Result<DfaReport, DfaError> {
    let mut states: BTreeMap<usize, WireState> = BTreeMap::new();
    let mut open: BTreeMap<usize, Option<usize>> = BTreeMap::new();
    let mut intervals = vec![];
    for &w in c.inputs.keys() {
        states.insert(w, WireState::LiveInput);
        open.insert(w, None);
    }
    for (i, g) in c.gates.iter().enumerate() {
        for (w, ev) in gate_events(g) {
            let st = *states.get(&w).unwrap_or(&WireState::Fresh);
            if st == WireState::Fresh && ev == DfaEvent::Use {
                return Err(DfaError { kind: DfaErrorKind::UseBeforeInit, wire: w, event: i });
            }
            let next = dfa_step(st, ev).map_err(|kind| DfaError { kind, wire: w, event: i })?;
            match ev {
                DfaEvent::Init => {
                    open.insert(w, Some(i));
                }
                DfaEvent::Term => {
                    let birth = open.remove(&w).flatten();
                    intervals.push(Interval { wire: w, birth, death: Some(i) });
                }
                DfaEvent::Use => {}
            }
            states.insert(w, next);
        }
    }
    let outputs = open.len();
    for (w, birth) in open {
        intervals.push(Interval { wire: w, birth, death: None });
    }
    intervals.sort();
    Ok(DfaReport { inputs: c.inputs.len(), outputs, intervals, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use DfaEvent as E;
    use WireState as S;

    #[test]
    fn table() {
        assert_eq!(dfa_step(S::Fresh, E::Use), Ok(S::LiveInput));
        assert_eq!(dfa_step(S::LiveAncilla, E::Init), Err(DfaErrorKind::DoubleInit));
        assert_eq!(dfa_step(S::Dead, E::Init), Ok(S::LiveAncilla));
        assert_eq!(dfa_step(S::Dead, E::Use), Err(DfaErrorKind::UseAfterTerm));
        assert_eq!(dfa_step(S::Fresh, E::Term), Err(DfaErrorKind::TermBeforeInit));
    }

    #[test]
    fn intervals_of_a_reset() {
        let c = crate::quipper::parse_quip(
            "Inputs: 0:Qbit\nQTerm0(0)\nQInit0(0)\nQGate[\"H\"](0)\nQInit0(1)\nQTerm0(1)\nOutputs: 0:Qbit\n",
        )
        .unwrap();
        let r = check_circuit(&c).unwrap();
        assert_eq!(r.ancilla_intervals(), [(3, 4)]);
        assert_eq!(r.intervals.len(), 3);
        assert_eq!((r.inputs, r.outputs), (1, 1));
    }
}
