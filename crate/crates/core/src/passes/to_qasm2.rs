use super::{gate_name, PassError};
use crate::decompose::{inst_to_stmt, lookup, Lookup, Target};
use crate::expr::{angle_literal, BinOp, Expr};
use crate::gate::{GateKind, GateTag};
use crate::qasm::names::QELIB1_INC;
use crate::qasm::{Modifier, Operand, QasmProgram, Statement, Version};

const MAX_DEPTH: usize = 16;

/// Rewrites a modifier-free OpenQASM 3 program as OpenQASM 2.0 over
/// `qelib1.inc`. Gates missing there are expanded by the backport rules.
/// Scalar registers become arrays of size one.
pub fn to_qasm2(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    let mut out = QasmProgram::new(Version::V2);
    out.add_include(QELIB1_INC);
    let scalar = |o: &Operand| o.index.is_none();
    out.decls = p
        .decls
        .iter()
        .map(|d| {
            let mut d = d.clone();
            d.size = Some(d.size.unwrap_or(1));
            d
        })
        .collect();
    for (i, s) in p.stmts.iter().enumerate() {
        let mut s = s.clone();
        for o in s.operands_mut() {
            if scalar(o) {
                o.index = Some(0);
            }
        }
        match s {
            Statement::Gate { mods, gate, operands } => {
                let mut pos = vec![];
                let mut negs = vec![];
                for (k, m) in mods.iter().enumerate() {
                    match m {
                        Modifier::Ctrl => pos.push(Modifier::Ctrl),
                        Modifier::NegCtrl => {
                            pos.push(Modifier::Ctrl);
                            negs.push(operands[k].clone());
                        }
                        Modifier::Inv => return Err(PassError::Residual { stmt: i, what: "inv modifier".into() }),
                        Modifier::Pow(_) => return Err(PassError::Residual { stmt: i, what: "pow modifier".into() }),
                    }
                }
                let gate = gate.try_map(|e| v2_param(e, i))?;
                let flip = |o: &Operand| Statement::gate(GateKind::X, vec![o.clone()]);
                out.stmts.extend(negs.iter().map(flip));
                lower(i, Statement::Gate { mods: pos, gate, operands }, &mut out.stmts, 0)?;
                out.stmts.extend(negs.iter().map(flip));
            }
            Statement::Call { .. } => {
                return Err(PassError::Residual { stmt: i, what: format!("call to {}", gate_name(&s)) })
            }
            other => out.stmts.push(other),
        }
    }
    Ok(out)
}

fn contains_pow(e: &Expr) -> bool {
    match e {
        Expr::Bin(BinOp::Pow, ..) => true,
        Expr::Bin(_, a, b) => contains_pow(a) || contains_pow(b),
        Expr::Neg(a) => contains_pow(a),
        Expr::Call(_, args) => args.iter().any(contains_pow),
        _ => false,
    }
}

/// OpenQASM 2.0 has neither built-in functions nor an exponent operator
/// that agrees with OpenQASM 3, so such angles are folded.
fn v2_param(e: &Expr, stmt: usize) -> Result<Expr, PassError> {
    if e.contains_call() {
        return Err(PassError::Residual { stmt, what: "function call".into() });
    }
    if contains_pow(e) {
        return Ok(angle_literal(e.eval().map_err(|source| PassError::Angle { stmt, source })?));
    }
    Ok(e.clone())
}

fn lower(i: usize, s: Statement, out: &mut Vec<Statement>, depth: usize) -> Result<(), PassError> {
    let Statement::Gate { gate, operands, .. } = &s else {
        out.push(s);
        return Ok(());
    };
    let n = s.control_count();
    let unreducible = || PassError::Unreducible { stmt: i, gate: format!("{:?} with {n} controls", gate.tag()) };
    if gate.tag() == GateTag::GPhase && n == 0 {
        // A global phase is unobservable and has no OpenQASM 2.0 form.
        return Ok(());
    }
    if depth > MAX_DEPTH {
        return Err(unreducible());
    }
    match lookup(gate.tag(), n, false, Target::Qasm2).map_err(|_| unreducible())? {
        Lookup::Base => out.push(s),
        Lookup::Rule(rule) => {
            if rule.ancillas > 0 {
                return Err(unreducible());
            }
            let params: Vec<Expr> = gate.params().into_iter().cloned().collect();
            let wires: Vec<usize> = (0..operands.len()).collect();
            for inst in rule.instantiate(&params, &wires, &[]) {
                if inst.inverted {
                    return Err(unreducible());
                }
                let g = inst_to_stmt(&inst, operands);
                let Statement::Gate { mods, gate, operands } = g else { unreachable!() };
                let gate = gate.try_map(|e| v2_param(e, i))?;
                lower(i, Statement::Gate { mods, gate, operands }, out, depth + 1)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::{parse_qasm, parse_qasm_with, write_qasm, ParseOptions};

    fn run(body: &str) -> String {
        let src = format!("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit[2] q;\nqubit a;\nbit b;\n{body}");
        let out = to_qasm2(&parse_qasm(&src).unwrap()).unwrap();
        let text = write_qasm(&out).unwrap();
        parse_qasm_with(&text, &ParseOptions::default()).unwrap();
        text.split_once("creg b[1];\n").unwrap().1.trim_start().to_string()
    }

    #[test]
    fn header_and_declarations() {
        let p = parse_qasm("OPENQASM 3;\nqubit a;\nbit[2] c;\n").unwrap();
        let text = write_qasm(&to_qasm2(&p).unwrap()).unwrap();
        assert_eq!(text, "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n\nqreg a[1];\ncreg c[2];\n");
    }

    #[test]
    fn shared_gates_are_kept() {
        assert_eq!(run("x a;\ncx q[0], q[1];\nb = measure a;\n"), "x a[0];\ncx q[0], q[1];\nmeasure a[0] -> b[0];\n");
    }

    #[test]
    fn sx_and_swap_are_expanded() {
        assert_eq!(run("sx a;\n"), "h a[0];\ns a[0];\nh a[0];\n");
        assert_eq!(run("swap q[0], q[1];\n"), "cx q[0], q[1];\ncx q[1], q[0];\ncx q[0], q[1];\n");
    }

    #[test]
    fn phase_gates() {
        assert_eq!(run("p(0.5) a;\ngphase(0.5);\nctrl @ gphase(0.25) a;\n"), "u1(0.5) a[0];\nu1(0.25) a[0];\n");
    }

    #[test]
    fn negative_controls_are_flipped() {
        assert_eq!(run("negctrl @ x q[0], q[1];\n"), "x q[0];\ncx q[0], q[1];\nx q[0];\n");
    }

    #[test]
    fn residual_modifiers_are_rejected() {
        let p = parse_qasm("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit a;\ninv @ s a;\n").unwrap();
        assert!(matches!(to_qasm2(&p), Err(PassError::Residual { stmt: 0, .. })));
    }
}
