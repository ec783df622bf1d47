//! Per-wire register shadows used when printing Quipper wires as OpenQASM
//! variables.

use std::collections::BTreeMap;

use crate::qasm::{Decl, Operand, RegKind};
use crate::quipper::WireType;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Shadow {
    pub qreg: Option<Operand>,
    pub creg: Option<Operand>,
    pub current: Option<WireType>,
}

impl Shadow {
    /// The register currently carrying the wire.
    pub fn carrier(&self) -> Option<&Operand> {
        match self.current? {
            WireType::Qbit => self.qreg.as_ref(),
            WireType::Cbit => self.creg.as_ref(),
        }
    }
}

/// Shadows are allocated on demand and never released: a field, once set,
/// is only ever replaced by a newer register of the same kind.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShadowMap {
    wires: BTreeMap<usize, Shadow>,
    decls: Vec<Decl>,
    next_q: usize,
    next_c: usize,
}

impl ShadowMap {
    pub fn new() -> ShadowMap {
        ShadowMap::default()
    }

    pub fn get(&self, wire: usize) -> Option<&Shadow> {
        self.wires.get(&wire)
    }

    /// Scalar declarations made so far, in allocation order.
    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    /// Binds an existing register (such as an input array element).
    pub fn bind(&mut self, wire: usize, ty: WireType, reg: Operand) {
        let s = self.wires.entry(wire).or_default();
        match ty {
            WireType::Qbit => s.qreg = Some(reg),
            WireType::Cbit => s.creg = Some(reg),
        }
        s.current = Some(ty);
    }

    fn fresh(&mut self, ty: WireType) -> Operand {
        let (name, kind) = match ty {
            WireType::Qbit => {
                self.next_q += 1;
                (format!("qtmp_{}", self.next_q - 1), RegKind::Qubit)
            }
            WireType::Cbit => {
                self.next_c += 1;
                (format!("ctmp_{}", self.next_c - 1), RegKind::Bit)
            }
        };
        self.decls.push(Decl { kind, name: name.clone(), size: None });
        Operand::scalar(&name)
    }

    /// A new register of type `ty` for `wire`, replacing any earlier one.
    pub fn alloc_fresh(&mut self, wire: usize, ty: WireType) -> Operand {
        let reg = self.fresh(ty);
        self.bind(wire, ty, reg.clone());
        reg
    }

    /// The wire's existing shadow of type `ty`, or a new one. The wire's
    /// current type becomes `ty`.
    pub fn shadow_alloc(&mut self, wire: usize, ty: WireType) -> Operand {
        let existing = self.wires.get(&wire).and_then(|s| match ty {
            WireType::Qbit => s.qreg.clone(),
            WireType::Cbit => s.creg.clone(),
        });
        match existing {
            Some(reg) => {
                self.wires.get_mut(&wire).unwrap().current = Some(ty);
                reg
            }
            None => self.alloc_fresh(wire, ty),
        }
    }

    /// Marks the wire as released; its shadows stay recorded.
    pub fn release(&mut self, wire: usize) {
        if let Some(s) = self.wires.get_mut(&wire) {
            s.current = None;
        }
    }

    pub fn carrier(&self, wire: usize) -> Option<&Operand> {
        self.wires.get(&wire)?.carrier()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measurement_shadows_are_reused() {
        let mut m = ShadowMap::new();
        m.bind(0, WireType::Qbit, Operand::at("input_qwires", 0));
        let c0 = m.shadow_alloc(0, WireType::Cbit);
        assert_eq!(c0, Operand::scalar("ctmp_0"));
        m.release(0);
        let q = m.alloc_fresh(0, WireType::Qbit);
        assert_eq!(q, Operand::scalar("qtmp_0"));
        assert_eq!(m.get(0).unwrap().creg, Some(c0.clone()));
        assert_eq!(m.shadow_alloc(0, WireType::Cbit), c0);
        assert_eq!(m.decls().len(), 2);
    }

    #[test]
    fn cbit_gets_quantum_shadow() {
        let mut m = ShadowMap::new();
        m.bind(3, WireType::Cbit, Operand::at("input_cwires", 0));
        let q = m.shadow_alloc(3, WireType::Qbit);
        assert_eq!(q.name, "qtmp_0");
        assert_eq!(m.carrier(3), Some(&q));
        assert_eq!(m.get(3).unwrap().creg, Some(Operand::at("input_cwires", 0)));
    }
}
