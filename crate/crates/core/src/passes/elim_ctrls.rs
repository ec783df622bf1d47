use std::collections::BTreeSet;
use std::f64::consts::FRAC_PI_4;

use super::PassError;
use crate::decompose::{find, inst_to_quip, is_quipper_base, phase_gates, DecompRule, Family};
use crate::gate::{GateKind, GateTag};
use crate::quipper::{Control, QuipCircuit, QuipGate};

const MAX_DEPTH: usize = 64;

/// Rewrites every controlled gate into gates that OpenQASM 2.0 can spell
/// without modifiers: at most one positive control on `X`, `Y`, `Z` or a
/// global phase. Ancillas get indices above every wire of the input.
pub fn elim_ctrls(c: &QuipCircuit) -> Result<QuipCircuit, PassError> {
    let mut e = Elim { first_free: c.wire_count(), live: BTreeSet::new() };
    let mut gates = vec![];
    for g in &c.gates {
        gates.extend(e.expand(g.clone(), 0)?);
    }
    Ok(QuipCircuit { inputs: c.inputs.clone(), gates, outputs: c.outputs.clone() })
}

/// Largest number of controls left on any gate, counting a controlled
/// global phase as a gate on its last control.
pub fn max_census(c: &QuipCircuit) -> usize {
    c.gates
        .iter()
        .map(|g| match g {
            QuipGate::Unitary { gate, controls, .. } => crate::gate::census(gate.tag(), controls.len()),
            QuipGate::GPhase { controls, .. } => controls.len().saturating_sub(1),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

/// Whether the circuit is in the form `elim_ctrls` produces.
pub fn is_ctrl_free(c: &QuipCircuit) -> bool {
    c.gates.iter().all(|g| match g {
        QuipGate::Unitary { gate, controls, .. } => {
            controls.iter().all(|c| c.1) && is_quipper_base(gate.tag(), controls.len(), true)
        }
        QuipGate::GPhase { controls, .. } => controls.len() <= 1 && controls.iter().all(|c| c.1),
        _ => true,
    })
}

struct Elim {
    first_free: usize,
    live: BTreeSet<usize>,
}

fn hole(tag: GateTag, ctrls: usize) -> PassError {
    PassError::CatalogHole { gate: format!("{tag:?}"), ctrls }
}

fn x(w: usize) -> QuipGate {
    QuipGate::unitary(GateKind::X, vec![w])
}

/// Inverse of a gate sequence whose ancillas start and end in `|0>`.
fn invert_seq(v: Vec<QuipGate>) -> Vec<QuipGate> {
    v.into_iter()
        .rev()
        .map(|g| match g {
            QuipGate::Unitary { gate, wires, controls, inverted } => {
                let inverted = if gate.tag().is_self_inverse() { inverted } else { !inverted };
                QuipGate::Unitary { gate, wires, controls, inverted }
            }
            QuipGate::GPhase { angle, controls } => QuipGate::GPhase { angle: -angle, controls },
            QuipGate::QInit(v, w) => QuipGate::QTerm(v, w),
            QuipGate::QTerm(v, w) => QuipGate::QInit(v, w),
            other => other,
        })
        .collect()
}

impl Elim {
    fn alloc(&mut self, n: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut w = self.first_free;
        while out.len() < n {
            if self.live.insert(w) {
                out.push(w);
            }
            w += 1;
        }
        out
    }

    fn release(&mut self, ws: &[usize]) {
        for w in ws {
            self.live.remove(w);
        }
    }

    fn expand(&mut self, g: QuipGate, depth: usize) -> Result<Vec<QuipGate>, PassError> {
        if depth > MAX_DEPTH {
            return Err(match &g {
                QuipGate::Unitary { gate, controls, .. } => hole(gate.tag(), controls.len()),
                _ => hole(GateTag::GPhase, g.controls().len()),
            });
        }
        let controls = g.controls().to_vec();
        if controls.is_empty() || !g.is_unitary() {
            return Ok(vec![g]);
        }
        if controls.iter().any(|c| !c.1) {
            return self.conjugate(g, &controls, depth);
        }
        match g {
            QuipGate::GPhase { angle, .. } => {
                if controls.len() == 1 {
                    return Ok(vec![g]);
                }
                let m = angle / FRAC_PI_4;
                if controls.len() == 2 && (m - m.round()).abs() < 1e-9 {
                    let mut out = vec![];
                    for (tag, inverted) in phase_gates(m.round() as i64) {
                        let gate = GateKind::from_tag(tag, vec![]).expect("phase gates take no parameters");
                        let cg = QuipGate::Unitary { gate, wires: vec![controls[1].0], controls: vec![controls[0]], inverted };
                        out.extend(self.expand(cg, depth + 1)?);
                    }
                    return Ok(out);
                }
                self.reduce(QuipGate::GPhase { angle, controls: vec![] }, &controls, depth)
            }
            QuipGate::Unitary { gate, wires, inverted, .. } => {
                let tag = gate.tag();
                let n = controls.len();
                if is_quipper_base(tag, n, true) {
                    return Ok(vec![QuipGate::Unitary { gate, wires, controls, inverted }]);
                }
                if inverted && !tag.is_self_inverse() {
                    let inner = QuipGate::Unitary { gate, wires, controls, inverted: false };
                    return Ok(invert_seq(self.expand(inner, depth + 1)?));
                }
                if let Some(rule) = find(Family::Control, tag, n, false).or_else(|| find(Family::LegacyControl, tag, n, false)) {
                    let params: Vec<f64> = gate.params().into_iter().copied().collect();
                    let main: Vec<usize> = controls.iter().map(|c| c.0).chain(wires).collect();
                    return self.apply(rule, &params, main, depth);
                }
                if n >= 2 {
                    return self.reduce(QuipGate::Unitary { gate, wires, controls: vec![], inverted }, &controls, depth);
                }
                Err(hole(tag, n))
            }
            _ => unreachable!("non-unitary gates returned early"),
        }
    }

    /// Negative controls become positive ones between `X` gates.
    fn conjugate(&mut self, g: QuipGate, controls: &[Control], depth: usize) -> Result<Vec<QuipGate>, PassError> {
        let negs: Vec<usize> = controls.iter().filter(|c| !c.1).map(|c| c.0).collect();
        let pos: Vec<Control> = controls.iter().map(|&(w, _)| (w, true)).collect();
        let g = match g {
            QuipGate::Unitary { gate, wires, inverted, .. } => QuipGate::Unitary { gate, wires, controls: pos, inverted },
            QuipGate::GPhase { angle, .. } => QuipGate::GPhase { angle, controls: pos },
            other => other,
        };
        let mut out: Vec<QuipGate> = negs.iter().map(|&w| x(w)).collect();
        out.extend(self.expand(g, depth + 1)?);
        out.extend(negs.iter().map(|&w| x(w)));
        Ok(out)
    }

    fn apply(&mut self, rule: &DecompRule, params: &[f64], main: Vec<usize>, depth: usize) -> Result<Vec<QuipGate>, PassError> {
        let ancs = self.alloc(rule.ancillas);
        let wires: Vec<usize> = main.into_iter().chain(ancs.iter().copied()).collect();
        let mut out: Vec<QuipGate> = ancs.iter().map(|&a| QuipGate::QInit(false, a)).collect();
        for inst in rule.instantiate(params, &wires, &[]) {
            let q = inst_to_quip(&inst).ok_or_else(|| hole(inst.gate.tag(), inst.controls.len()))?;
            out.extend(self.expand(q, depth + 1)?);
        }
        out.extend(ancs.iter().rev().map(|&a| QuipGate::QTerm(false, a)));
        self.release(&ancs);
        Ok(out)
    }

    /// Replaces the first two controls by one ancilla computed with a
    /// doubly-controlled `iX`.
    fn reduce(&mut self, bare: QuipGate, controls: &[Control], depth: usize) -> Result<Vec<QuipGate>, PassError> {
        let anc = self.alloc(1)[0];
        let compute = QuipGate::Unitary {
            gate: GateKind::IX,
            wires: vec![anc],
            controls: controls[..2].to_vec(),
            inverted: false,
        };
        let mut rest = vec![(anc, true)];
        rest.extend_from_slice(&controls[2..]);
        let mid = match bare {
            QuipGate::Unitary { gate, wires, inverted, .. } => QuipGate::Unitary { gate, wires, controls: rest, inverted },
            QuipGate::GPhase { angle, .. } => QuipGate::GPhase { angle, controls: rest },
            other => other,
        };
        let mut out = vec![QuipGate::QInit(false, anc)];
        out.extend(self.expand(compute.clone(), depth + 1)?);
        out.extend(self.expand(mid, depth + 1)?);
        out.extend(invert_seq(self.expand(compute, depth + 1)?));
        out.push(QuipGate::QTerm(false, anc));
        self.release(&[anc]);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::quip_isometry;
    use crate::matrix::eq_upto_phase;
    use crate::quipper::parse_quip;

    fn check(src: &str) -> QuipCircuit {
        let c = parse_quip(src).unwrap();
        let e = elim_ctrls(&c).unwrap();
        assert!(is_ctrl_free(&e), "{e:?}");
        let (a, b) = (quip_isometry(&c).unwrap(), quip_isometry(&e).unwrap());
        assert!(eq_upto_phase(&a, &b, 1e-9));
        e
    }

    #[test]
    fn uncontrolled_gate_is_unchanged() {
        let src = "Inputs: 0:Qbit\nQGate[\"not\"](0)\nOutputs: 0:Qbit\n";
        assert_eq!(check(src), parse_quip(src).unwrap());
    }

    #[test]
    fn controlled_h_uses_seven_gates() {
        let e = check("Inputs: 0:Qbit, 1:Qbit\nQGate[\"H\"](1) with controls=[+0]\nOutputs: 0:Qbit, 1:Qbit\n");
        assert_eq!(e.gates.len(), 7);
    }

    #[test]
    fn toffoli_uses_four_ancillas() {
        let e = check("Inputs: 0:Qbit, 1:Qbit, 2:Qbit\nQGate[\"not\"](2) with controls=[+0,+1]\nOutputs: 0:Qbit, 1:Qbit, 2:Qbit\n");
        let inits: BTreeSet<usize> = e.gates.iter().filter_map(|g| g.birth().map(|b| b.0)).collect();
        assert_eq!(inits, [3, 4, 5, 6].into_iter().collect());
    }

    #[test]
    fn mixed_controls_and_inverses() {
        check(
            "Inputs: 0:Qbit, 1:Qbit, 2:Qbit\n\
             QGate[\"T\"]*(2) with controls=[+0]\n\
             QGate[\"H\"](2) with controls=[-0,+1]\n\
             QRot[\"R(2pi/%)\",3]*(1) with controls=[+0]\n\
             GPhase[0.3] with controls=[+0,-1,+2]\n\
             QGate[\"S\"](0) with controls=[+1,+2]\n\
             Outputs: 0:Qbit, 1:Qbit, 2:Qbit\n",
        );
    }

    #[test]
    fn census_after_elimination() {
        let e = check("Inputs: 0:Qbit, 1:Qbit\nQRot[\"exp(-i%Z)\",0.7](1) with controls=[+0]\nOutputs: 0:Qbit, 1:Qbit\n");
        assert!(max_census(&e) <= 1);
        assert_eq!(elim_ctrls(&e).unwrap(), e);
    }
}
