use std::collections::BTreeMap;

use super::PassError;
use crate::qasm::{Decl, Operand, QasmProgram, RegKind};

/// Original operand to merged operand.
pub type RegMap = Vec<(Operand, Operand)>;

pub fn reg_merge(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    Ok(reg_merge_with_map(p)?.0)
}

/// Merges every qubit declaration into `q[N]` and every bit declaration into
/// `c[M]`, in declaration order.
pub fn reg_merge_with_map(p: &QasmProgram) -> Result<(QasmProgram, RegMap), PassError> {
    let mut map = RegMap::new();
    let mut decls = vec![];
    for (kind, name) in [(RegKind::Qubit, "q"), (RegKind::Bit, "c")] {
        let slots = p.slots(kind);
        if slots.is_empty() {
            continue;
        }
        decls.push(Decl { kind, name: name.into(), size: Some(slots.len()) });
        map.extend(slots.into_iter().enumerate().map(|(i, s)| (s, Operand::at(name, i))));
    }
    let lookup: BTreeMap<&Operand, &Operand> = map.iter().map(|(a, b)| (a, b)).collect();
    let mut stmts = p.stmts.clone();
    for s in &mut stmts {
        for o in s.operands_mut() {
            if let Some(&n) = lookup.get(&*o) {
                *o = n.clone();
            }
        }
    }
    let out = QasmProgram { version: p.version, includes: p.includes.clone(), decls, stmts };
    Ok((out, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::{parse_qasm, write_qasm};

    #[test]
    fn merges_in_declaration_order() {
        let p = parse_qasm("OPENQASM 3;\ninclude \"stdgates.inc\";\nqubit phi;\nqubit[3] x;\nbit[2] c;\ncx x[1], phi;\nc[0] = measure x[2];\n").unwrap();
        let (m, map) = reg_merge_with_map(&p).unwrap();
        assert_eq!(map[0], (Operand::scalar("phi"), Operand::at("q", 0)));
        assert_eq!(map[3], (Operand::at("x", 2), Operand::at("q", 3)));
        let text = write_qasm(&m).unwrap();
        assert!(text.contains("qubit[4] q;\nbit[2] c;\n\ncx q[2], q[0];\nc[0] = measure q[3];"), "{text}");
        assert_eq!(reg_merge(&m).unwrap(), m);
    }

    #[test]
    fn no_qubits_no_declaration() {
        let p = parse_qasm("OPENQASM 3;\nbit b;\n").unwrap();
        let m = reg_merge(&p).unwrap();
        assert_eq!(m.decls, [Decl { kind: RegKind::Bit, name: "c".into(), size: Some(1) }]);
    }
}
