use std::collections::BTreeMap;

use thiserror::Error;

use super::{Control, QuipCircuit, QuipGate, WireType};
use crate::gate::{quipper_tag, GateKind, EXPZ_NAME, RGATE_NAME};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum QuipError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Type { line: usize, msg: String },
    #[error("outputs do not match the circuit: declared {declared}, inferred {inferred}")]
    Outputs { declared: String, inferred: String },
}

struct Cursor<'a> {
    s: &'a [u8],
    i: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, QuipError> {
        Err(QuipError::Syntax { line: self.line, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(lit.as_bytes()) {
            self.i += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), QuipError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn done(&mut self) -> bool {
        self.ws();
        self.i >= self.s.len()
    }

    fn uint(&mut self) -> Result<usize, QuipError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        match txt.parse() {
            Ok(v) => Ok(v),
            Err(_) => self.err("expected a wire index"),
        }
    }

    fn float(&mut self) -> Result<f64, QuipError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && matches!(self.s[self.i], b'0'..=b'9' | b'.' | b'-' | b'+' | b'e' | b'E') {
            self.i += 1;
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap();
        match txt.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => self.err(format!("expected a number, found `{txt}`")),
        }
    }

    fn string(&mut self) -> Result<String, QuipError> {
        self.expect("\"")?;
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i] != b'"' {
            self.i += 1;
        }
        if self.i >= self.s.len() {
            return self.err("unterminated string");
        }
        let txt = std::str::from_utf8(&self.s[start..self.i]).unwrap().to_string();
        self.i += 1;
        Ok(txt)
    }

    fn wire_list(&mut self) -> Result<Vec<usize>, QuipError> {
        self.expect("(")?;
        let mut out = vec![];
        if self.eat(")") {
            return Ok(out);
        }
        loop {
            out.push(self.uint()?);
            if self.eat(")") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn typed_list(&mut self) -> Result<BTreeMap<usize, WireType>, QuipError> {
        let mut out = BTreeMap::new();
        if self.eat("none") || self.done() {
            return Ok(out);
        }
        loop {
            let w = self.uint()?;
            self.expect(":")?;
            let t = if self.eat("Qbit") {
                WireType::Qbit
            } else if self.eat("Cbit") {
                WireType::Cbit
            } else {
                return self.err("expected `Qbit` or `Cbit`");
            };
            if out.insert(w, t).is_some() {
                return self.err(format!("wire {w} listed twice"));
            }
            if self.done() {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    /// Trailing `with controls=[...]` and `with inverse` clauses.
    fn suffix(&mut self, inverted: &mut bool) -> Result<Vec<Control>, QuipError> {
        let mut controls = vec![];
        let mut seen = false;
        while self.eat("with") {
            if self.eat("controls") {
                if seen {
                    return self.err("controls given twice");
                }
                seen = true;
                self.expect("=")?;
                self.expect("[")?;
                if !self.eat("]") {
                    loop {
                        let pos = if self.eat("+") {
                            true
                        } else if self.eat("-") {
                            false
                        } else {
                            return self.err("control must start with `+` or `-`");
                        };
                        controls.push((self.uint()?, pos));
                        if self.eat("]") {
                            break;
                        }
                        self.expect(",")?;
                    }
                }
            } else if self.eat("inverse") {
                *inverted = !*inverted;
            } else {
                return self.err("expected `controls` or `inverse` after `with`");
            }
        }
        if !self.done() {
            return self.err("unexpected trailing text");
        }
        Ok(controls)
    }
}

fn named_op(name: &str) -> Option<fn(usize) -> QuipGate> {
    Some(match name {
        "QInit0" => |w| QuipGate::QInit(false, w),
        "QInit1" => |w| QuipGate::QInit(true, w),
        "QTerm0" => |w| QuipGate::QTerm(false, w),
        "QTerm1" => |w| QuipGate::QTerm(true, w),
        "QDiscard" => |w| QuipGate::QDiscard(w),
        "QMeas" => |w| QuipGate::QMeas(w),
        "CInit0" => |w| QuipGate::CInit(false, w),
        "CInit1" => |w| QuipGate::CInit(true, w),
        "CTerm0" => |w| QuipGate::CTerm(false, w),
        "CTerm1" => |w| QuipGate::CTerm(true, w),
        "CDiscard" => |w| QuipGate::CDiscard(w),
        _ => return None,
    })
}

fn parse_gate(cur: &mut Cursor) -> Result<QuipGate, QuipError> {
    if cur.eat("QGate[") {
        let name = cur.string()?;
        cur.expect("]")?;
        let mut inverted = cur.eat("*");
        let wires = cur.wire_list()?;
        let controls = cur.suffix(&mut inverted)?;
        let Some(tag) = quipper_tag(&name) else {
            return cur.err(format!("unknown gate \"{name}\""));
        };
        let gate = GateKind::from_tag(tag, vec![]).expect("named gates take no parameters");
        if wires.len() != tag.arity() {
            return cur.err(format!("\"{name}\" acts on {} wires, got {}", tag.arity(), wires.len()));
        }
        return Ok(QuipGate::Unitary { gate, wires, controls, inverted });
    }
    if cur.eat("QRot[") {
        let name = cur.string()?;
        cur.expect(",")?;
        let t = cur.float()?;
        cur.expect("]")?;
        let mut inverted = cur.eat("*");
        let wires = cur.wire_list()?;
        let controls = cur.suffix(&mut inverted)?;
        let gate = match name.as_str() {
            EXPZ_NAME => GateKind::ExpZ(t),
            RGATE_NAME => GateKind::RGate(t),
            _ => return cur.err(format!("unknown rotation \"{name}\"")),
        };
        if wires.len() != 1 {
            return cur.err("rotations act on one wire");
        }
        return Ok(QuipGate::Unitary { gate, wires, controls, inverted });
    }
    if cur.eat("GPhase") {
        let angle = if cur.eat("[") {
            let t = cur.float()?;
            cur.expect("]")?;
            t
        } else {
            cur.expect("()")?;
            cur.expect("with")?;
            cur.expect("t")?;
            cur.expect("=")?;
            cur.float()?
        };
        let mut inverted = false;
        let controls = cur.suffix(&mut inverted)?;
        return Ok(QuipGate::GPhase { angle: if inverted { -angle } else { angle }, controls });
    }
    cur.ws();
    let start = cur.i;
    while cur.i < cur.s.len() && cur.s[cur.i].is_ascii_alphanumeric() {
        cur.i += 1;
    }
    let name = std::str::from_utf8(&cur.s[start..cur.i]).unwrap().to_string();
    let Some(make) = named_op(&name) else {
        return cur.err(format!("unknown gate `{name}`"));
    };
    let wires = cur.wire_list()?;
    if wires.len() != 1 {
        return cur.err(format!("`{name}` takes one wire"));
    }
    let mut inverted = false;
    let controls = cur.suffix(&mut inverted)?;
    if !controls.is_empty() || inverted {
        return cur.err(format!("`{name}` cannot be controlled or inverted"));
    }
    Ok(make(wires[0]))
}

fn check_wires(g: &QuipGate, line: usize) -> Result<(), QuipError> {
    let ws = g.wires();
    for (i, w) in ws.iter().enumerate() {
        if ws[..i].contains(w) {
            return Err(QuipError::Syntax { line, msg: format!("wire {w} appears twice in one gate") });
        }
    }
    Ok(())
}

fn fmt_types(m: &BTreeMap<usize, WireType>) -> String {
    if m.is_empty() {
        return "none".into();
    }
    m.iter().map(|(w, t)| format!("{w}:{t}")).collect::<Vec<_>>().join(", ")
}

/// Parses a circuit and checks wire types and the `Outputs:` line.
pub fn parse_quip(text: &str) -> Result<QuipCircuit, QuipError> {
    let mut inputs = None;
    let mut outputs = None;
    let mut gates = vec![];
    let mut lines = vec![];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let mut cur = Cursor { s: raw.as_bytes(), i: 0, line };
        if outputs.is_some() {
            return cur.err("text after the `Outputs:` line");
        }
        if cur.eat("Inputs:") {
            if inputs.is_some() || !gates.is_empty() {
                return cur.err("`Inputs:` must be the first line");
            }
            inputs = Some(cur.typed_list()?);
            continue;
        }
        if inputs.is_none() {
            return cur.err("expected `Inputs:`");
        }
        if cur.eat("Outputs:") {
            outputs = Some(cur.typed_list()?);
            continue;
        }
        let g = parse_gate(&mut cur)?;
        check_wires(&g, line)?;
        gates.push(g);
        lines.push(line);
    }
    let last = text.lines().count().max(1);
    let Some(inputs) = inputs else {
        return Err(QuipError::Syntax { line: last, msg: "missing `Inputs:` line".into() });
    };
    let Some(outputs) = outputs else {
        return Err(QuipError::Syntax { line: last, msg: "missing `Outputs:` line".into() });
    };
    let c = QuipCircuit { inputs, gates, outputs };
    let inferred = c
        .check_types()
        .map_err(|e| QuipError::Type { line: lines[e.gate], msg: e.msg })?;
    if inferred != c.outputs {
        return Err(QuipError::Outputs { declared: fmt_types(&c.outputs), inferred: fmt_types(&inferred) });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn body(gates: &str, inputs: &str, outputs: &str) -> String {
        format!("Inputs: {inputs}\n{gates}\nOutputs: {outputs}\n")
    }

    #[test]
    fn controlled_not() {
        let c = parse_quip(&body("QGate[\"not\"](2) with controls=[+0,+1]", "0:Qbit, 1:Qbit, 2:Qbit", "0:Qbit, 1:Qbit, 2:Qbit")).unwrap();
        assert_eq!(
            c.gates[0],
            QuipGate::Unitary { gate: GateKind::X, wires: vec![2], controls: vec![(0, true), (1, true)], inverted: false }
        );
    }

    #[test]
    fn ancilla_pair_and_measure() {
        let c = parse_quip(&body("QInit0(3)\nQTerm0(3)\nQMeas(2)", "2:Qbit", "2:Cbit")).unwrap();
        assert_eq!(c.gates, vec![QuipGate::QInit(false, 3), QuipGate::QTerm(false, 3), QuipGate::QMeas(2)]);
        assert_eq!(c.outputs.get(&2), Some(&WireType::Cbit));
    }

    #[test]
    fn rotations_phases_and_inverse_forms() {
        let src = body(
            "QRot[\"exp(-i%Z)\",0.5](0)\nQRot[\"R(2pi/%)\",3]*(0) with controls=[-1]\nGPhase[0.25] with controls=[+1]\nGPhase() with t=1.5\nQGate[\"S\"](0) with inverse",
            "0:Qbit, 1:Qbit",
            "0:Qbit, 1:Qbit",
        );
        let c = parse_quip(&src).unwrap();
        assert_eq!(c.gates[0], QuipGate::Unitary { gate: GateKind::ExpZ(0.5), wires: vec![0], controls: vec![], inverted: false });
        assert_eq!(
            c.gates[1],
            QuipGate::Unitary { gate: GateKind::RGate(3.0), wires: vec![0], controls: vec![(1, false)], inverted: true }
        );
        assert_eq!(c.gates[2], QuipGate::GPhase { angle: 0.25, controls: vec![(1, true)] });
        assert_eq!(c.gates[3], QuipGate::GPhase { angle: 1.5, controls: vec![] });
        assert!(matches!(c.gates[4], QuipGate::Unitary { inverted: true, .. }));
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_quip("Inputs: 0:Qbit\nQGate[\"nope\"](0)\nOutputs: 0:Qbit\n").unwrap_err();
        assert_eq!(e, QuipError::Syntax { line: 2, msg: "unknown gate \"nope\"".into() });
        let e = parse_quip("Inputs: 0:Qbit\nQMeas(0)\nQGate[\"H\"](0)\nOutputs: 0:Cbit\n").unwrap_err();
        assert!(matches!(e, QuipError::Type { line: 3, .. }));
        let e = parse_quip("Inputs: 0:Qbit\nQMeas(0)\nOutputs: 0:Qbit\n").unwrap_err();
        assert!(matches!(e, QuipError::Outputs { .. }));
        assert!(parse_quip("Inputs: 0:Qbit, 1:Qbit\nQGate[\"not\"](0) with controls=[+0]\nOutputs: 0:Qbit, 1:Qbit\n").is_err());
    }

    #[test]
    fn empty_inputs() {
        let c = parse_quip("Inputs: none\nQInit0(0)\nOutputs: 0:Qbit\n").unwrap();
        assert!(c.inputs.is_empty());
    }
}
