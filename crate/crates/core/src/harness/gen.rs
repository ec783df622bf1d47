//! Seeded random programs for the law checks.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{angle_literal, BinOp, Expr, Func};
use crate::gate::{GateKind, GateTag};
use crate::qasm::names::{self, QELIB1_INC, QUIPGATES_INC, STDGATES_INC};
use crate::qasm::{Decl, Modifier, Operand, QasmProgram, RegKind, Statement, Version};
use crate::quipper::{Control, QuipCircuit, QuipGate, WireType};

/// Upper bound on wires of any generated program.
pub const MAX_WIRES: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub version: Version,
    /// Qubits (OpenQASM) or input qubits (Quipper).
    pub max_qubits: usize,
    /// Statements (OpenQASM) or gates (Quipper).
    pub size: usize,
    /// Measurements, resets, discards and classical wires.
    pub measurements: bool,
    /// Angles restricted to multiples of pi/4 and gates with a
    /// Clifford+T expansion.
    pub clifford_t: bool,
}

impl GenConfig {
    pub fn new(version: Version, size: usize) -> GenConfig {
        GenConfig { version, max_qubits: 4, size, measurements: true, clifford_t: false }
    }

    /// Measurement-free programs on at most four qubits, where the oracle
    /// defines the semantics.
    pub fn oracle(version: Version, size: usize) -> GenConfig {
        GenConfig { measurements: false, ..GenConfig::new(version, size) }
    }
}

pub fn gen_qasm(seed: u64, size: usize) -> QasmProgram {
    gen_qasm_with(seed, &GenConfig::new(Version::V3, size))
}

pub fn gen_quip(seed: u64, size: usize) -> QuipCircuit {
    gen_quip_with(seed, &GenConfig::new(Version::V3, size))
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn quarter(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-7i32..=7) as f64 * PI / 4.0
}

fn angle_f64(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> f64 {
    if cfg.clifford_t || rng.gen_bool(0.3) {
        quarter(rng)
    } else {
        rng.gen_range(-PI..PI)
    }
}

fn angle_expr(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Expr {
    if cfg.clifford_t {
        let k = rng.gen_range(-7i64..=7);
        return match rng.gen_range(0..3) {
            0 => angle_literal(k as f64 * PI / 4.0),
            1 => Expr::bin(BinOp::Mul, Expr::num(k as f64), Expr::bin(BinOp::Div, Expr::pi(), Expr::num(4.0))),
            _ => Expr::bin(BinOp::Div, Expr::bin(BinOp::Mul, Expr::num(k as f64), Expr::pi()), Expr::num(4.0)),
        };
    }
    let v3 = cfg.version == Version::V3;
    match rng.gen_range(0..6) {
        0 | 1 => Expr::num(rng.gen_range(-4.0..4.0)),
        2 => Expr::bin(BinOp::Div, Expr::pi(), Expr::num(rng.gen_range(1..9) as f64)),
        3 => Expr::bin(BinOp::Sub, Expr::pi(), Expr::num(rng.gen_range(0.0..1.0))).negated(),
        4 if v3 => {
            let f = *[Func::Sin, Func::Cos, Func::Arctan, Func::Sqrt].choose(rng).unwrap();
            Expr::Call(f, vec![Expr::num(rng.gen_range(0.0..2.0))])
        }
        _ if v3 => Expr::bin(BinOp::Div, Expr::pi(), Expr::bin(BinOp::Pow, Expr::num(2.0), Expr::num(rng.gen_range(0..4) as f64))),
        _ => Expr::bin(BinOp::Mul, Expr::num(2.0), Expr::pi()),
    }
}

const CLIFFORD_T_QASM: &[GateTag] = &[
    GateTag::X,
    GateTag::Y,
    GateTag::Z,
    GateTag::H,
    GateTag::S,
    GateTag::Sdg,
    GateTag::T,
    GateTag::Tdg,
    GateTag::SX,
    GateTag::Swap,
    GateTag::P,
    GateTag::Rz,
];

/// Random valid OpenQASM program. Version 2.0 programs use arrays and the
/// `qelib1.inc` names only.
pub fn gen_qasm_with(seed: u64, cfg: &GenConfig) -> QasmProgram {
    let mut rng = rng_for(seed);
    let v3 = cfg.version == Version::V3;
    let mut p = QasmProgram::new(cfg.version);
    p.add_include(if v3 { STDGATES_INC } else { QELIB1_INC });
    let n = rng.gen_range(1..=cfg.max_qubits.clamp(1, MAX_WIRES));
    declare(&mut rng, &mut p, RegKind::Qubit, n, v3);
    if cfg.measurements {
        let m = rng.gen_range(1..=n);
        declare(&mut rng, &mut p, RegKind::Bit, m, v3);
    }
    let qs = p.slots(RegKind::Qubit);
    let bs = p.slots(RegKind::Bit);
    let tags: Vec<GateTag> = if cfg.clifford_t {
        CLIFFORD_T_QASM.to_vec()
    } else {
        GateTag::ALL.iter().copied().filter(|&t| names::include_for(cfg.version, t, 0).is_some()).collect()
    };
    while p.stmts.len() < cfg.size {
        if cfg.measurements && rng.gen_bool(0.15) {
            let q = qs.choose(&mut rng).unwrap().clone();
            if rng.gen_bool(0.7) {
                p.stmts.push(Statement::Measure { src: q, dst: bs.choose(&mut rng).unwrap().clone() });
            } else {
                p.stmts.push(Statement::Reset(q));
            }
            continue;
        }
        let tag = *tags.choose(&mut rng).unwrap();
        if tag.arity() > n || (!v3 && tag == GateTag::GPhase) {
            continue;
        }
        let Some(stmt) = (if v3 { gate_v3(&mut rng, cfg, tag, &qs) } else { gate_v2(&mut rng, cfg, tag, &qs) }) else {
            continue;
        };
        if let Statement::Gate { gate, .. } = &stmt {
            if names::include_for(cfg.version, gate.tag(), 0) == Some(QUIPGATES_INC) {
                p.add_include(QUIPGATES_INC);
            }
        }
        p.stmts.push(stmt);
    }
    p
}

fn declare(rng: &mut ChaCha8Rng, p: &mut QasmProgram, kind: RegKind, mut n: usize, v3: bool) {
    let prefix = if kind == RegKind::Qubit { "q" } else { "c" };
    let mut k = 0;
    while n > 0 {
        let size = rng.gen_range(1..=n);
        let scalar = v3 && size == 1 && rng.gen_bool(0.5);
        let name = if scalar { format!("{prefix}s{k}") } else { format!("{prefix}{k}") };
        p.decls.push(Decl { kind, name, size: if scalar { None } else { Some(size) } });
        n -= size;
        k += 1;
    }
}

fn params(rng: &mut ChaCha8Rng, cfg: &GenConfig, tag: GateTag) -> Vec<Expr> {
    (0..tag.param_count()).map(|_| angle_expr(rng, cfg)).collect()
}

fn gate_v3(rng: &mut ChaCha8Rng, cfg: &GenConfig, tag: GateTag, qs: &[Operand]) -> Option<Statement> {
    let room = qs.len() - tag.arity();
    let max_ctrl = if cfg.clifford_t { 0 } else { room.min(2) };
    let ctrls = rng.gen_range(0..=max_ctrl);
    let ops: Vec<Operand> = qs.choose_multiple(rng, ctrls + tag.arity()).cloned().collect();
    if ops.is_empty() && tag != GateTag::GPhase {
        return None;
    }
    let mut mods = vec![];
    for _ in 0..ctrls {
        mods.push(if rng.gen_bool(0.7) { Modifier::Ctrl } else { Modifier::NegCtrl });
    }
    if !cfg.clifford_t {
        if rng.gen_bool(0.25) {
            mods.insert(rng.gen_range(0..=mods.len()), Modifier::Inv);
        }
        if rng.gen_bool(0.15) {
            mods.insert(rng.gen_range(0..=mods.len()), Modifier::Pow(rng.gen_range(-2..=2)));
        }
    }
    let gate = GateKind::from_tag(tag, params(rng, cfg, tag))?;
    Some(Statement::Gate { mods, gate, operands: ops })
}

fn gate_v2(rng: &mut ChaCha8Rng, cfg: &GenConfig, tag: GateTag, qs: &[Operand]) -> Option<Statement> {
    let incs = [QELIB1_INC.to_string()];
    let spellable: Vec<usize> = (0..=2).filter(|&k| names::spell(Version::V2, &incs, tag, k).is_some()).collect();
    let &ctrls = spellable.choose(rng)?;
    if ctrls + tag.arity() > qs.len() {
        return None;
    }
    let ops: Vec<Operand> = qs.choose_multiple(rng, ctrls + tag.arity()).cloned().collect();
    let gate = GateKind::from_tag(tag, params(rng, cfg, tag))?;
    Some(Statement::Gate { mods: vec![Modifier::Ctrl; ctrls], gate, operands: ops })
}

const QUIP_TAGS: &[GateTag] = &[
    GateTag::X,
    GateTag::Y,
    GateTag::Z,
    GateTag::H,
    GateTag::S,
    GateTag::T,
    GateTag::SX,
    GateTag::IX,
    GateTag::Omega,
    GateTag::E,
    GateTag::W,
    GateTag::Swap,
    GateTag::ExpZ,
    GateTag::RGate,
];

struct QuipGen<'a> {
    rng: ChaCha8Rng,
    cfg: &'a GenConfig,
    live: BTreeMap<usize, WireType>,
    dead: BTreeSet<usize>,
    next: usize,
    gates: Vec<QuipGate>,
}

/// Random circuit accepted by the wire automaton. Without measurements,
/// every ancilla is computed and uncomputed so the oracle can run it.
pub fn gen_quip_with(seed: u64, cfg: &GenConfig) -> QuipCircuit {
    let mut g = QuipGen {
        rng: rng_for(seed),
        cfg,
        live: BTreeMap::new(),
        dead: BTreeSet::new(),
        next: 0,
        gates: vec![],
    };
    let n = g.rng.gen_range(1..=cfg.max_qubits.clamp(1, MAX_WIRES));
    let mut inputs = BTreeMap::new();
    for w in 0..n {
        let t = if cfg.measurements && w > 0 && g.rng.gen_bool(0.2) { WireType::Cbit } else { WireType::Qbit };
        inputs.insert(w, t);
    }
    g.live = inputs.clone();
    g.next = n;
    let mut guard = 0;
    while g.gates.len() < cfg.size && guard < 50 * cfg.size + 50 {
        guard += 1;
        g.step();
    }
    QuipCircuit { inputs, gates: g.gates, outputs: BTreeMap::new() }
        .with_inferred_outputs()
        .expect("generated circuits are well typed")
}

impl QuipGen<'_> {
    fn qubits(&self) -> Vec<usize> {
        self.live.iter().filter(|(_, t)| **t == WireType::Qbit).map(|(w, _)| *w).collect()
    }

    fn budget(&self) -> usize {
        self.cfg.size - self.gates.len()
    }

    fn fresh_wire(&mut self) -> Option<usize> {
        if self.live.len() >= MAX_WIRES {
            return None;
        }
        if let Some(&w) = self.dead.iter().next() {
            if self.rng.gen_bool(0.6) {
                self.dead.remove(&w);
                return Some(w);
            }
        }
        if self.next >= MAX_WIRES + 2 {
            let w = *self.dead.iter().next()?;
            self.dead.remove(&w);
            return Some(w);
        }
        self.next += 1;
        Some(self.next - 1)
    }

    fn random_unitary(&mut self, must_use: Option<usize>) -> Option<QuipGate> {
        let qs = self.qubits();
        let tag = if self.rng.gen_bool(0.1) { GateTag::GPhase } else { *QUIP_TAGS.choose(&mut self.rng).unwrap() };
        let arity = tag.arity();
        if arity > qs.len() {
            return None;
        }
        let max_ctrl = (qs.len() - arity).min(2);
        let ctrls = self.rng.gen_range(0..=max_ctrl);
        let mut ws: Vec<usize> = qs.choose_multiple(&mut self.rng, ctrls + arity).copied().collect();
        if let Some(a) = must_use {
            if !ws.contains(&a) {
                if ws.is_empty() {
                    ws.push(a);
                } else {
                    let k = self.rng.gen_range(0..ws.len());
                    ws[k] = a;
                }
            }
        }
        if ws.len() < arity {
            return None;
        }
        let split = ws.len() - arity;
        let controls: Vec<Control> = ws[..split].iter().map(|&w| (w, self.rng.gen_bool(0.75))).collect();
        let wires = ws[split..].to_vec();
        let inverted = self.rng.gen_bool(0.3);
        let clifford = self.cfg.clifford_t;
        Some(match tag {
            GateTag::GPhase => {
                let angle = if clifford { quarter(&mut self.rng) } else { angle_f64(&mut self.rng, self.cfg) };
                QuipGate::GPhase { angle, controls }
            }
            GateTag::ExpZ => {
                let t = if clifford { self.rng.gen_range(-3i32..=3) as f64 * PI / 8.0 } else { angle_f64(&mut self.rng, self.cfg) };
                QuipGate::Unitary { gate: GateKind::ExpZ(t), wires, controls, inverted }
            }
            GateTag::RGate => {
                let k = self.rng.gen_range(0..=3) as f64;
                QuipGate::Unitary { gate: GateKind::RGate(k), wires, controls, inverted }
            }
            t => QuipGate::Unitary { gate: GateKind::from_tag(t, vec![])?, wires, controls, inverted },
        })
    }

    fn step(&mut self) {
        let roll = self.rng.gen_range(0..100);
        let qs = self.qubits();
        if roll < 12 && self.budget() >= 4 {
            self.ancilla_block();
        } else if self.cfg.measurements && roll < 30 {
            self.classical_step();
        } else if !qs.is_empty() {
            if let Some(g) = self.random_unitary(None) {
                self.gates.push(g);
            }
        } else if let Some(w) = self.fresh_wire() {
            self.gates.push(QuipGate::QInit(self.rng.gen_bool(0.5), w));
            self.live.insert(w, WireType::Qbit);
        }
    }

    /// `QInit; U; U^-1; QTerm` on a fresh wire.
    fn ancilla_block(&mut self) {
        let Some(a) = self.fresh_wire() else { return };
        let v = self.rng.gen_bool(0.3);
        self.live.insert(a, WireType::Qbit);
        let room = (self.budget() - 2) / 2;
        let len = self.rng.gen_range(1..=room.min(3));
        let mut body = vec![];
        for _ in 0..len {
            if let Some(g) = self.random_unitary(Some(a)) {
                body.push(g);
            }
        }
        self.gates.push(QuipGate::QInit(v, a));
        self.gates.extend(body.iter().cloned());
        self.gates.extend(body.into_iter().rev().map(invert));
        if !self.cfg.measurements || self.rng.gen_bool(0.8) {
            self.gates.push(QuipGate::QTerm(v, a));
            self.live.remove(&a);
            self.dead.insert(a);
        }
    }

    fn classical_step(&mut self) {
        let qs = self.qubits();
        let cs: Vec<usize> = self.live.iter().filter(|(_, t)| **t == WireType::Cbit).map(|(w, _)| *w).collect();
        match self.rng.gen_range(0..5) {
            0 if !qs.is_empty() => {
                let w = *qs.choose(&mut self.rng).unwrap();
                self.gates.push(QuipGate::QMeas(w));
                self.live.insert(w, WireType::Cbit);
            }
            1 if !cs.is_empty() => {
                let w = *cs.choose(&mut self.rng).unwrap();
                self.gates.push(if self.rng.gen_bool(0.7) { QuipGate::CDiscard(w) } else { QuipGate::CTerm(self.rng.gen_bool(0.5), w) });
                self.live.remove(&w);
                self.dead.insert(w);
            }
            2 if !qs.is_empty() => {
                // Reset: discard, then prepare the same wire.
                let w = *qs.choose(&mut self.rng).unwrap();
                self.gates.push(QuipGate::QDiscard(w));
                self.gates.push(QuipGate::QInit(false, w));
            }
            3 => {
                if let Some(w) = self.fresh_wire() {
                    self.gates.push(QuipGate::CInit(self.rng.gen_bool(0.5), w));
                    self.live.insert(w, WireType::Cbit);
                }
            }
            _ => {
                if let Some(w) = self.fresh_wire() {
                    self.gates.push(QuipGate::QInit(self.rng.gen_bool(0.5), w));
                    self.live.insert(w, WireType::Qbit);
                }
            }
        }
    }
}

fn invert(g: QuipGate) -> QuipGate {
    match g {
        QuipGate::Unitary { gate, wires, controls, inverted } => {
            let inverted = if gate.tag().is_self_inverse() { inverted } else { !inverted };
            QuipGate::Unitary { gate, wires, controls, inverted }
        }
        QuipGate::GPhase { angle, controls } => QuipGate::GPhase { angle: -angle, controls },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::validate;
    use crate::translate::check_circuit;

    #[test]
    fn deterministic_per_seed() {
        assert_eq!(gen_qasm(7, 20), gen_qasm(7, 20));
        assert_eq!(gen_quip(7, 20), gen_quip(7, 20));
        assert_ne!(gen_qasm(7, 20), gen_qasm(8, 20));
    }

    #[test]
    fn size_one_is_one_gate() {
        assert_eq!(gen_qasm(0, 1).stmts.len(), 1);
        assert_eq!(gen_quip(0, 1).gates.len(), 1);
    }

    #[test]
    fn generated_programs_are_valid() {
        for seed in 0..300 {
            for cfg in [GenConfig::new(Version::V3, 12), GenConfig::new(Version::V2, 12), GenConfig::oracle(Version::V3, 12)] {
                let p = gen_qasm_with(seed, &cfg);
                assert!(validate(&p).is_empty(), "seed {seed}: {:?}", validate(&p));
            }
            for cfg in [GenConfig::new(Version::V3, 16), GenConfig::oracle(Version::V3, 16)] {
                let c = gen_quip_with(seed, &cfg);
                check_circuit(&c).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
                assert!(c.wire_count() <= MAX_WIRES + 2);
            }
        }
    }
}
