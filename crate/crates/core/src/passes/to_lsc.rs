use std::f64::consts::FRAC_PI_4;

use serde::Deserialize;

use super::PassError;
use crate::decompose::{find, inst_to_stmt, phase_gates, Family};
use crate::expr::Expr;
use crate::gate::{GateKind, GateTag};
use crate::qasm::names::{self, QELIB1_INC};
use crate::qasm::{Modifier, QasmProgram, RegKind, Statement, Version};

const MAX_DEPTH: usize = 16;
const BUNDLED: &str = include_str!("../../lib/lsc.toml");

/// Gate set of the lattice-surgery compiler.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LscConfig {
    pub gates: Vec<String>,
    pub measure: bool,
    pub reset: bool,
}

impl LscConfig {
    pub fn from_toml(text: &str) -> Result<LscConfig, PassError> {
        toml::from_str(text).map_err(|e| PassError::Config(e.to_string()))
    }
}

impl Default for LscConfig {
    fn default() -> LscConfig {
        LscConfig::from_toml(BUNDLED).expect("bundled configuration parses")
    }
}

pub fn to_lsc(p: &QasmProgram) -> Result<QasmProgram, PassError> {
    to_lsc_with(p, &LscConfig::default())
}

/// Restricts a merged OpenQASM 2.0 program to the configured gate set.
pub fn to_lsc_with(p: &QasmProgram, cfg: &LscConfig) -> Result<QasmProgram, PassError> {
    if p.version != Version::V2 {
        return Err(PassError::Version("2.0"));
    }
    for (kind, what) in [(RegKind::Qubit, "qreg"), (RegKind::Bit, "creg")] {
        let n = p.decls.iter().filter(|d| d.kind == kind).count();
        if n > 1 {
            return Err(PassError::NotMerged(format!("{n} {what} declarations")));
        }
    }
    let mut out = QasmProgram { stmts: vec![], ..p.clone() };
    out.includes = vec![QELIB1_INC.to_string()];
    for (i, s) in p.stmts.iter().enumerate() {
        match s {
            Statement::Gate { mods, .. } => {
                if mods.iter().any(|m| *m != Modifier::Ctrl) {
                    return Err(PassError::Residual { stmt: i, what: "modifier".into() });
                }
                lower(i, s.clone(), cfg, &mut out.stmts, 0)?;
            }
            Statement::Measure { .. } if cfg.measure => out.stmts.push(s.clone()),
            Statement::Reset(_) if cfg.reset => out.stmts.push(s.clone()),
            Statement::Measure { .. } => return Err(PassError::Unreducible { stmt: i, gate: "measure".into() }),
            Statement::Reset(_) => return Err(PassError::Unreducible { stmt: i, gate: "reset".into() }),
            Statement::Call { .. } => return Err(PassError::Residual { stmt: i, what: "call".into() }),
        }
    }
    Ok(out)
}

/// Folds an inverted `S` or `T` into `sdg` or `tdg`.
fn plain(tag: GateTag, inverted: bool) -> GateKind<Expr> {
    let t = match (tag, inverted) {
        (GateTag::S, true) => GateTag::Sdg,
        (GateTag::T, true) => GateTag::Tdg,
        (GateTag::Sdg, true) => GateTag::S,
        (GateTag::Tdg, true) => GateTag::T,
        (t, _) => t,
    };
    GateKind::from_tag(t, vec![]).expect("parameterless gate")
}

fn lower(i: usize, s: Statement, cfg: &LscConfig, out: &mut Vec<Statement>, depth: usize) -> Result<(), PassError> {
    let Statement::Gate { gate, operands, .. } = &s else { unreachable!() };
    let n = s.control_count();
    let tag = gate.tag();
    let incs = [QELIB1_INC.to_string()];
    if let Some(name) = names::spell(Version::V2, &incs, tag, n) {
        if cfg.gates.iter().any(|g| g == name) {
            out.push(s);
            return Ok(());
        }
    }
    let unreducible = || PassError::Unreducible { stmt: i, gate: format!("{tag:?} with {n} controls") };
    if depth > MAX_DEPTH {
        return Err(unreducible());
    }
    if n == 0 && matches!(tag, GateTag::Rz | GateTag::U1 | GateTag::P) {
        // Phase rotations by multiples of pi/4 (rz up to a global phase).
        let v = gate.params()[0].eval().map_err(|source| PassError::Angle { stmt: i, source })?;
        let m = v / FRAC_PI_4;
        if (m - m.round()).abs() > 1e-9 {
            return Err(unreducible());
        }
        for (t, inv) in phase_gates(m.round() as i64) {
            lower(i, Statement::gate(plain(t, inv), operands.clone()), cfg, out, depth + 1)?;
        }
        return Ok(());
    }
    let rule = find(Family::Lsc, tag, n, false).ok_or_else(unreducible)?;
    let params: Vec<Expr> = gate.params().into_iter().cloned().collect();
    let wires: Vec<usize> = (0..operands.len()).collect();
    for inst in rule.instantiate(&params, &wires, &[]) {
        let Statement::Gate { mods, gate, operands } = inst_to_stmt(&inst, operands) else { unreachable!() };
        let mut mods: Vec<Modifier> = mods.into_iter().filter(|m| *m != Modifier::Inv).collect();
        let gate = if inst.inverted { plain(gate.tag(), true) } else { gate };
        if inst.controls.iter().any(|c| !c.1) {
            return Err(unreducible());
        }
        mods.retain(|m| m.is_control());
        lower(i, Statement::Gate { mods, gate, operands }, cfg, out, depth + 1)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::{parse_qasm, write_qasm};

    fn run(body: &str) -> Result<String, PassError> {
        let src = format!("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[3];\ncreg c[3];\n{body}");
        let out = to_lsc(&parse_qasm(&src).unwrap())?;
        assert_eq!(to_lsc(&out).unwrap(), out);
        Ok(write_qasm(&out).unwrap().split_once("creg c[3];\n").unwrap().1.trim_start().to_string())
    }

    #[test]
    fn bundled_config() {
        let cfg = LscConfig::default();
        assert_eq!(cfg.gates.len(), 8);
        assert!(cfg.measure && !cfg.reset);
        assert!(LscConfig::from_toml("gates = 3").is_err());
    }

    #[test]
    fn whitelisted_program_is_unchanged() {
        let body = "h q[0];\ncx q[0], q[1];\ntdg q[2];\nmeasure q[0] -> c[0];\n";
        assert_eq!(run(body).unwrap(), body);
    }

    #[test]
    fn cz_uses_hadamards() {
        assert_eq!(run("cz q[0], q[1];\n").unwrap(), "h q[1];\ncx q[0], q[1];\nh q[1];\n");
    }

    #[test]
    fn phases_at_multiples_of_pi_over_4() {
        assert_eq!(run("u1(3 * pi / 4) q[0];\n").unwrap(), "s q[0];\nt q[0];\n");
        assert!(matches!(run("u1(0.3) q[0];\n"), Err(PassError::Unreducible { .. })));
    }

    #[test]
    fn unmerged_registers_are_rejected() {
        let p = parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg a[1];\nqreg b[1];\n").unwrap();
        assert!(matches!(to_lsc(&p), Err(PassError::NotMerged(_))));
    }

    #[test]
    fn reset_is_not_accepted() {
        assert!(matches!(run("reset q[0];\n"), Err(PassError::Unreducible { .. })));
    }
}
