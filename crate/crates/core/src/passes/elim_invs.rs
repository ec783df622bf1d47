use super::{add_needed_includes, gate_name, PassError};
use crate::decompose::{find, inst_to_stmt, Family, Inst};
use crate::expr::Expr;
use crate::gate::GateKind;
use crate::qasm::{Modifier, QasmProgram, Statement};

fn pow_of(mods: &[Modifier]) -> i64 {
    mods.iter()
        .map(|m| match m {
            Modifier::Pow(k) => *k,
            _ => 1,
        })
        .product()
}

/// Inlines `inv` modifiers using the inverse rules. Self-inverse gates just
/// drop the modifier; an even number of `inv` cancels.
pub fn elim_invs(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    let mut out = QasmProgram { stmts: vec![], ..p.clone() };
    for (i, s) in p.stmts.iter().enumerate() {
        let Statement::Gate { mods, gate, operands } = s else {
            out.stmts.push(s.clone());
            continue;
        };
        let invs = mods.iter().filter(|m| **m == Modifier::Inv).count();
        if invs == 0 {
            out.stmts.push(s.clone());
            continue;
        }
        let rest: Vec<Modifier> = mods.iter().copied().filter(|m| *m != Modifier::Inv).collect();
        if invs % 2 == 0 || gate.tag().is_self_inverse() {
            out.stmts.push(Statement::Gate { mods: rest, gate: gate.clone(), operands: operands.clone() });
            continue;
        }
        let rule = find(Family::Inverse, gate.tag(), 0, true)
            .ok_or_else(|| PassError::NoInverse { stmt: i, gate: gate_name(s) })?;
        let polarity: Vec<(usize, bool)> = rest
            .iter()
            .filter(|m| m.is_control())
            .enumerate()
            .map(|(k, m)| (k, *m == Modifier::Ctrl))
            .collect();
        let n = polarity.len();
        let wires: Vec<usize> = (n..operands.len()).collect();
        let params: Vec<Expr> = gate.params().into_iter().cloned().collect();
        let body = rule.instantiate(&params, &wires, &polarity);
        let e = pow_of(&rest);
        if body.len() == 1 {
            // A single gate keeps the power as a modifier.
            let Statement::Gate { mut mods, gate, operands } = inst_to_stmt(&body[0], operands) else { unreachable!() };
            if e != 1 {
                mods.insert(0, Modifier::Pow(e));
            }
            out.stmts.push(Statement::Gate { mods, gate, operands });
            continue;
        }
        // (G^-1)^e for e < 0 is G^|e|.
        let seq = if e < 0 {
            vec![Inst { gate: gate.clone(), targets: wires, controls: polarity, inverted: false }]
        } else {
            body
        };
        for _ in 0..e.unsigned_abs() {
            out.stmts.extend(seq.iter().map(|inst| inst_to_stmt(inst, operands)));
        }
    }
    add_needed_includes(&mut out);
    Ok(out)
}

/// Inlines `pow(k)` modifiers by repetition; negative powers become `inv`.
pub fn elim_pows(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    let mut out = QasmProgram { stmts: vec![], ..p.clone() };
    for s in &p.stmts {
        match s {
            Statement::Gate { mods, gate, operands } if mods.iter().any(|m| matches!(m, Modifier::Pow(_))) => {
                let e = pow_of(mods);
                let mut rest: Vec<Modifier> = mods.iter().copied().filter(|m| !matches!(m, Modifier::Pow(_))).collect();
                if e < 0 {
                    rest.insert(0, Modifier::Inv);
                }
                for _ in 0..e.unsigned_abs() {
                    out.stmts.push(Statement::Gate { mods: rest.clone(), gate: gate.clone(), operands: operands.clone() });
                }
            }
            _ => out.stmts.push(s.clone()),
        }
    }
    Ok(out)
}

/// Folds every built-in function call in gate parameters to a literal.
pub fn elim_funs(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    let mut out = p.clone();
    for (i, s) in out.stmts.iter_mut().enumerate() {
        if let Statement::Gate { gate, .. } = s {
            let folded: GateKind<Expr> =
                gate.try_map(|e| e.fold_calls()).map_err(|source| PassError::Angle { stmt: i, source })?;
            *gate = folded;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::{parse_qasm, write_qasm};

    fn run(f: fn(&QasmProgram) -> Result<QasmProgram, PassError>, body: &str) -> String {
        let src = format!("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[3] q;\n{body}");
        let p = parse_qasm(&src).unwrap();
        let out = f(&p).unwrap();
        assert_eq!(f(&out).unwrap(), out, "not idempotent");
        let text = write_qasm(&out).unwrap();
        text.split_once("qubit[3] q;\n").unwrap().1.trim_start().to_string()
    }

    #[test]
    fn inverse_of_rx_negates() {
        assert_eq!(run(elim_invs, "inv @ rx(0.5) q[0];"), "rx(-0.5) q[0];\n");
    }

    #[test]
    fn self_inverse_drops_modifier() {
        assert_eq!(run(elim_invs, "inv @ x q[0];\ninv @ inv @ t q[1];\n"), "x q[0];\nt q[1];\n");
    }

    #[test]
    fn inverse_of_u2() {
        assert_eq!(run(elim_invs, "inv @ u2(0.1, 0.2) q[0];"), "u3(-(pi / 2), -0.2, -0.1) q[0];\n");
    }

    #[test]
    fn inverse_keeps_controls_and_power() {
        assert_eq!(run(elim_invs, "pow(2) @ ctrl @ inv @ s q[0], q[1];"), "pow(2) @ ctrl @ sdg q[0], q[1];\n");
    }

    #[test]
    fn powers_repeat() {
        assert_eq!(run(elim_pows, "pow(2) @ ctrl @ t q[1], q[0];"), "ctrl @ t q[1], q[0];\nctrl @ t q[1], q[0];\n");
        assert_eq!(run(elim_pows, "pow(0) @ x q[0];"), "");
        assert_eq!(run(elim_pows, "pow(-1) @ s q[0];"), "inv @ s q[0];\n");
    }

    #[test]
    fn calls_fold() {
        assert_eq!(run(elim_funs, "rz(cos(pi / 3)) q[0];"), "rz(0.5000000000000001) q[0];\n");
        assert_eq!(run(elim_funs, "rz(pi) q[0];"), "rz(pi) q[0];\n");
    }

    #[test]
    fn bad_argument_is_reported() {
        // The parser rejects this already; passes must too.
        let mut p = parse_qasm("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit q;\nrz(0) q;\n").unwrap();
        let Statement::Gate { gate, .. } = &mut p.stmts[0] else { unreachable!() };
        *gate = GateKind::Rz(Expr::Call(crate::expr::Func::Arcsin, vec![Expr::num(2.0)]));
        assert!(matches!(elim_funs(&p), Err(PassError::Angle { stmt: 0, .. })));
    }
}
