use std::fmt::Write as _;

use thiserror::Error;

use super::{Control, QuipCircuit, QuipGate, WireType};
use crate::gate::{quipper_name, GateKind, EXPZ_NAME, RGATE_NAME};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QuipWriteError {
    #[error("gate {gate}: {kind} has no Quipper spelling")]
    Unrepresentable { gate: usize, kind: String },
    #[error("gate {gate}: angle {value} is not finite")]
    NonFinite { gate: usize, value: f64 },
}

fn types(m: &std::collections::BTreeMap<usize, WireType>) -> String {
    if m.is_empty() {
        return "none".into();
    }
    m.iter().map(|(w, t)| format!("{w}:{t}")).collect::<Vec<_>>().join(", ")
}

fn controls(cs: &[Control]) -> String {
    if cs.is_empty() {
        return String::new();
    }
    let items: Vec<String> = cs.iter().map(|&(w, p)| format!("{}{w}", if p { '+' } else { '-' })).collect();
    format!(" with controls=[{}]", items.join(","))
}

fn wires(ws: &[usize]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

pub fn write_quip(c: &QuipCircuit) -> Result<String, QuipWriteError> {
    let mut out = format!("Inputs: {}\n", types(&c.inputs));
    for (i, g) in c.gates.iter().enumerate() {
        match g {
            QuipGate::Unitary { gate, wires: ws, controls: cs, inverted } => {
                let star = if *inverted { "*" } else { "" };
                match gate {
                    GateKind::ExpZ(t) | GateKind::RGate(t) => {
                        if !t.is_finite() {
                            return Err(QuipWriteError::NonFinite { gate: i, value: *t });
                        }
                        let name = if matches!(gate, GateKind::ExpZ(_)) { EXPZ_NAME } else { RGATE_NAME };
                        write!(out, "QRot[\"{name}\",{t}]{star}({})", wires(ws)).unwrap();
                    }
                    _ => {
                        let Some(name) = quipper_name(gate.tag()) else {
                            return Err(QuipWriteError::Unrepresentable { gate: i, kind: format!("{:?}", gate.tag()) });
                        };
                        write!(out, "QGate[\"{name}\"]{star}({})", wires(ws)).unwrap();
                    }
                }
                out.push_str(&controls(cs));
            }
            QuipGate::GPhase { angle, controls: cs } => {
                if !angle.is_finite() {
                    return Err(QuipWriteError::NonFinite { gate: i, value: *angle });
                }
                write!(out, "GPhase[{angle}]{}", controls(cs)).unwrap();
            }
            QuipGate::QInit(v, w) => write!(out, "QInit{}({w})", *v as u8).unwrap(),
            QuipGate::QTerm(v, w) => write!(out, "QTerm{}({w})", *v as u8).unwrap(),
            QuipGate::QDiscard(w) => write!(out, "QDiscard({w})").unwrap(),
            QuipGate::QMeas(w) => write!(out, "QMeas({w})").unwrap(),
            QuipGate::CInit(v, w) => write!(out, "CInit{}({w})", *v as u8).unwrap(),
            QuipGate::CTerm(v, w) => write!(out, "CTerm{}({w})", *v as u8).unwrap(),
            QuipGate::CDiscard(w) => write!(out, "CDiscard({w})").unwrap(),
        }
        out.push('\n');
    }
    writeln!(out, "Outputs: {}", types(&c.outputs)).unwrap();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quipper::parse_quip;
    use std::collections::BTreeMap;

    #[test]
    fn empty_circuit() {
        let c = QuipCircuit::with_inputs([(0, WireType::Qbit)].into_iter().collect());
        assert_eq!(write_quip(&c).unwrap(), "Inputs: 0:Qbit\nOutputs: 0:Qbit\n");
    }

    #[test]
    fn inverse_flag_survives_on_self_inverse_gates() {
        let c = QuipCircuit {
            inputs: [(0, WireType::Qbit), (1, WireType::Qbit)].into_iter().collect(),
            gates: vec![
                QuipGate::Unitary { gate: GateKind::H, wires: vec![0], controls: vec![], inverted: true },
                QuipGate::Unitary { gate: GateKind::X, wires: vec![1], controls: vec![(0, false)], inverted: true },
                QuipGate::Unitary { gate: GateKind::ExpZ(-0.125), wires: vec![1], controls: vec![], inverted: true },
            ],
            outputs: [(0, WireType::Qbit), (1, WireType::Qbit)].into_iter().collect(),
        };
        let text = write_quip(&c).unwrap();
        assert!(text.contains("QGate[\"H\"]*(0)"));
        assert_eq!(parse_quip(&text).unwrap(), c);
    }

    #[test]
    fn unrepresentable_kind() {
        let c = QuipCircuit {
            inputs: [(0, WireType::Qbit)].into_iter().collect(),
            gates: vec![QuipGate::unitary(GateKind::Rx(0.5), vec![0])],
            outputs: BTreeMap::new(),
        };
        assert!(matches!(write_quip(&c), Err(QuipWriteError::Unrepresentable { gate: 0, .. })));
    }
}
