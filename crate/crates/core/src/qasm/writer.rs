use std::fmt::Write as _;

use thiserror::Error;

use super::names;
use super::{Modifier, QasmProgram, RegKind, Statement, Version};

#[derive(Clone, Debug, Error, PartialEq)]
pub enum WriteError {
    #[error("statement {stmt}: {msg}")]
    Dialect { stmt: usize, msg: String },
    #[error("statement {stmt}: no spelling for {gate} with the included libraries")]
    NoSpelling { stmt: usize, gate: String },
}

/// Renders a program in the syntax of its own version.
pub fn write_qasm(p: &QasmProgram) -> Result<String, WriteError> {
    let mut out = String::new();
    let v3 = p.version == Version::V3;
    writeln!(out, "OPENQASM {};", p.version).unwrap();
    for inc in &p.includes {
        writeln!(out, "include \"{inc}\";").unwrap();
    }
    if !p.decls.is_empty() {
        out.push('\n');
    }
    for d in &p.decls {
        let line = match (v3, d.kind, d.size) {
            (true, RegKind::Qubit, None) => format!("qubit {};", d.name),
            (true, RegKind::Qubit, Some(n)) => format!("qubit[{n}] {};", d.name),
            (true, RegKind::Bit, None) => format!("bit {};", d.name),
            (true, RegKind::Bit, Some(n)) => format!("bit[{n}] {};", d.name),
            (false, RegKind::Qubit, Some(n)) => format!("qreg {}[{n}];", d.name),
            (false, RegKind::Bit, Some(n)) => format!("creg {}[{n}];", d.name),
            (false, _, None) => {
                return Err(WriteError::Dialect {
                    stmt: 0,
                    msg: format!("scalar `{}` cannot be declared in OpenQASM 2.0", d.name),
                })
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    if !p.stmts.is_empty() {
        out.push('\n');
    }
    for (i, s) in p.stmts.iter().enumerate() {
        match s {
            Statement::Gate { mods, gate, operands } => {
                let trailing = mods.iter().rev().take_while(|m| **m == Modifier::Ctrl).count();
                let mut spelled = None;
                for k in (0..=trailing).rev() {
                    if let Some(n) = names::spell(p.version, &p.includes, gate.tag(), k) {
                        spelled = Some((n, k));
                        break;
                    }
                }
                let Some((name, k)) = spelled else {
                    return Err(WriteError::NoSpelling { stmt: i, gate: format!("{:?}", gate.tag()) });
                };
                if !v3 && k < mods.len() {
                    return Err(WriteError::Dialect { stmt: i, msg: "modifiers need OpenQASM 3".into() });
                }
                for m in &mods[..mods.len() - k] {
                    match m {
                        Modifier::Ctrl => out.push_str("ctrl @ "),
                        Modifier::NegCtrl => out.push_str("negctrl @ "),
                        Modifier::Inv => out.push_str("inv @ "),
                        Modifier::Pow(e) => write!(out, "pow({e}) @ ").unwrap(),
                    }
                }
                out.push_str(name);
                let params = gate.params();
                if !params.is_empty() {
                    let ps: Vec<String> = params.iter().map(|e| e.to_string()).collect();
                    write!(out, "({})", ps.join(", ")).unwrap();
                }
                if !operands.is_empty() {
                    let os: Vec<String> = operands.iter().map(|o| o.to_string()).collect();
                    write!(out, " {}", os.join(", ")).unwrap();
                }
                out.push_str(";\n");
            }
            Statement::Measure { src, dst } => {
                if v3 {
                    writeln!(out, "{dst} = measure {src};").unwrap();
                } else {
                    writeln!(out, "measure {src} -> {dst};").unwrap();
                }
            }
            Statement::Reset(o) => writeln!(out, "reset {o};").unwrap(),
            Statement::Call { func, arg, result } => {
                if !v3 {
                    return Err(WriteError::Dialect { stmt: i, msg: "function calls need OpenQASM 3".into() });
                }
                if let Some(r) = result {
                    write!(out, "{r} = ").unwrap();
                }
                let a = arg.as_ref().map(|o| o.to_string()).unwrap_or_default();
                writeln!(out, "{}({a});", func.name()).unwrap();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::{parse_qasm, structural_eq};

    const FIG: &str = "OPENQASM 3;
include \"stdgates.inc\";

qubit phi;
qubit[3] x;
bit[3] c;

x phi;
h x[0];
pow(2) @ ctrl @ t x[1], phi;
ctrl @ t x[2], phi;
inv @ t phi;
cp(pi / 2) x[2], x[1];
negctrl @ ccx x[0], x[1], x[2], phi;
c[0] = measure x[0];
reset x[0];
";

    #[test]
    fn retraction_on_fixture() {
        let p = parse_qasm(FIG).unwrap();
        let text = write_qasm(&p).unwrap();
        assert_eq!(text, FIG);
        assert!(structural_eq(&parse_qasm(&text).unwrap(), &p, false));
    }

    #[test]
    fn controls_collapse_into_names() {
        let p = parse_qasm("OPENQASM 3; include \"stdgates.inc\"; qubit[3] q; ctrl @ ctrl @ x q[0], q[1], q[2];").unwrap();
        assert!(write_qasm(&p).unwrap().contains("ccx q[0], q[1], q[2];"));
    }

    #[test]
    fn empty_program_is_header_only() {
        let p = parse_qasm("OPENQASM 3;").unwrap();
        assert_eq!(write_qasm(&p).unwrap(), "OPENQASM 3;\n");
    }

    #[test]
    fn v2_syntax() {
        let src = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n\nqreg q[2];\ncreg c[2];\n\ncx q[0], q[1];\nu1(0.5) q[1];\nmeasure q[1] -> c[0];\n";
        let p = parse_qasm(src).unwrap();
        let out = write_qasm(&p).unwrap();
        assert_eq!(out, src);
        for tok in ["ctrl", "negctrl", "inv @", "pow("] {
            assert!(!out.contains(tok));
        }
    }
}
