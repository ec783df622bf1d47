//! Matrix semantics of gates and circuits.
//!
//! Wire 0 is the most significant tensor factor. A gate sequence `g1; g2`
//! denotes the product `M(g2)·M(g1)`. Circuits with ancillas are interpreted
//! as isometries from their input wires to their output wires.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use thiserror::Error;

use crate::gate::{rgate_angle, GateKind};
use crate::matrix::{c, cis, Matrix, C64};

/// Largest number of input or output wires `isometry` will build a matrix for.
pub const MAX_MATRIX_WIRES: usize = 7;
/// Largest total wire count the state-vector simulator accepts.
pub const MAX_SIM_WIRES: usize = 20;

const CLEAN_TOL: f64 = 1e-9;

fn zero() -> C64 {
    c(0.0, 0.0)
}

fn one() -> C64 {
    c(1.0, 0.0)
}

fn m2(a: C64, b: C64, cc: C64, d: C64) -> Matrix {
    Matrix::from_rows(&[&[a, b], &[cc, d]])
}

pub fn u_matrix(theta: f64, phi: f64, lambda: f64) -> Matrix {
    let (ct, st) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    m2(
        c(ct, 0.0),
        -cis(lambda) * st,
        cis(phi) * st,
        cis(phi + lambda) * ct,
    )
}

pub fn rz_matrix(theta: f64) -> Matrix {
    Matrix::diag(&[cis(-theta / 2.0), cis(theta / 2.0)])
}

pub fn p_matrix(theta: f64) -> Matrix {
    Matrix::diag(&[one(), cis(theta)])
}

/// Unitary denoted by an uncontrolled, non-inverted gate.
pub fn gate_matrix(kind: &GateKind<f64>) -> Matrix {
    use GateKind as K;
    let h = FRAC_1_SQRT_2;
    match *kind {
        K::X => m2(zero(), one(), one(), zero()),
        K::Y => m2(zero(), c(0.0, -1.0), c(0.0, 1.0), zero()),
        K::Z => Matrix::diag(&[one(), c(-1.0, 0.0)]),
        K::H => m2(c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)),
        K::S => p_matrix(FRAC_PI_2),
        K::Sdg => p_matrix(-FRAC_PI_2),
        K::T => p_matrix(FRAC_PI_4),
        K::Tdg => p_matrix(-FRAC_PI_4),
        K::SX => m2(c(0.5, 0.5), c(0.5, -0.5), c(0.5, -0.5), c(0.5, 0.5)),
        K::IX => m2(zero(), c(0.0, 1.0), c(0.0, 1.0), zero()),
        K::Omega => Matrix::identity(2).scale(cis(FRAC_PI_4)),
        K::E => {
            let s3 = p_matrix(3.0 * FRAC_PI_2);
            gate_matrix(&K::H).mul(&s3).scale(cis(3.0 * FRAC_PI_4))
        }
        K::W => {
            let mut m = Matrix::identity(4);
            m[(1, 1)] = c(h, 0.0);
            m[(1, 2)] = c(h, 0.0);
            m[(2, 1)] = c(h, 0.0);
            m[(2, 2)] = c(-h, 0.0);
            m
        }
        K::Swap => {
            let mut m = Matrix::zeros(4, 4);
            m[(0, 0)] = one();
            m[(1, 2)] = one();
            m[(2, 1)] = one();
            m[(3, 3)] = one();
            m
        }
        K::Rx(t) => {
            let (ct, st) = ((t / 2.0).cos(), (t / 2.0).sin());
            m2(c(ct, 0.0), c(0.0, -st), c(0.0, -st), c(ct, 0.0))
        }
        K::Ry(t) => {
            let (ct, st) = ((t / 2.0).cos(), (t / 2.0).sin());
            m2(c(ct, 0.0), c(-st, 0.0), c(st, 0.0), c(ct, 0.0))
        }
        K::Rz(t) => rz_matrix(t),
        K::P(t) | K::U1(t) => p_matrix(t),
        K::ExpZ(t) => rz_matrix(2.0 * t),
        K::RGate(t) => p_matrix(rgate_angle(t)),
        K::U(t, p, l) => u_matrix(t, p, l),
        K::U2(p, l) => u_matrix(FRAC_PI_2, p, l).scale(cis(-(p + l) / 2.0)),
        K::U3(t, p, l) => u_matrix(t, p, l).scale(cis(-(p + l) / 2.0)),
        K::CU(t, p, l, g) => u_matrix(t, p, l)
            .scale(cis(g))
            .controlled()
            .expect("U is unitary"),
        K::GPhase(t) => Matrix::scalar(cis(t)),
    }
}

/// A gate applied to specific wires. Controls are `(wire, positive)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Op {
    pub gate: GateKind<f64>,
    pub inverted: bool,
    pub targets: Vec<usize>,
    pub controls: Vec<(usize, bool)>,
}

impl Op {
    pub fn new(gate: GateKind<f64>, targets: Vec<usize>) -> Op {
        Op { gate, inverted: false, targets, controls: vec![] }
    }

    pub fn ctrl(mut self, wire: usize, positive: bool) -> Op {
        self.controls.push((wire, positive));
        self
    }

    pub fn inv(mut self, inverted: bool) -> Op {
        self.inverted ^= inverted;
        self
    }

    pub fn matrix(&self) -> Matrix {
        let m = gate_matrix(&self.gate);
        if self.inverted {
            m.adjoint()
        } else {
            m
        }
    }

    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().map(|c| c.0).chain(self.targets.iter().copied())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("circuit has {0} wires; the simulator supports at most {MAX_SIM_WIRES}")]
    TooManyWires(usize),
    #[error("matrix would span {0} wires; the oracle supports at most {MAX_MATRIX_WIRES}")]
    MatrixTooLarge(usize),
    #[error("wire {wire} is used out of range or twice in one gate")]
    BadWire { wire: usize },
    #[error("gate expects {expected} targets, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("termination of wire {wire} at event {event} is not clean (residual {residual:.3e})")]
    DirtyTerm { wire: usize, event: usize, residual: f64 },
    #[error("initialization of wire {wire} at event {event} on a wire that is not |0>")]
    DirtyInit { wire: usize, event: usize },
    #[error("non-output wire {wire} is not returned to |0> (residual {residual:.3e})")]
    DirtyAncilla { wire: usize, residual: f64 },
}

/// Applies `op` in place to a state vector over `n` wires.
pub fn apply_op(state: &mut [C64], n: usize, op: &Op) -> Result<(), SimError> {
    let k = op.targets.len();
    if k != op.gate.arity() {
        return Err(SimError::Arity { expected: op.gate.arity(), got: k });
    }
    let mut seen = 0usize;
    for w in op.wires() {
        if w >= n || seen & (1 << w) != 0 {
            return Err(SimError::BadWire { wire: w });
        }
        seen |= 1 << w;
    }
    let bit = |w: usize| 1usize << (n - 1 - w);
    let (mut cmask, mut cval) = (0usize, 0usize);
    for &(w, pos) in &op.controls {
        cmask |= bit(w);
        if pos {
            cval |= bit(w);
        }
    }
    let m = op.matrix();
    if k == 0 {
        let ph = m[(0, 0)];
        for (i, a) in state.iter_mut().enumerate() {
            if i & cmask == cval {
                *a *= ph;
            }
        }
        return Ok(());
    }
    let tbits: Vec<usize> = op.targets.iter().map(|&w| bit(w)).collect();
    let tmask: usize = tbits.iter().sum();
    let dim = 1usize << k;
    let offsets: Vec<usize> = (0..dim)
        .map(|s| {
            (0..k)
                .filter(|j| s & (1 << (k - 1 - j)) != 0)
                .map(|j| tbits[j])
                .sum()
        })
        .collect();
    let mut buf = vec![zero(); dim];
    for base in 0..state.len() {
        if base & tmask != 0 || base & cmask != cval {
            continue;
        }
        for s in 0..dim {
            buf[s] = state[base + offsets[s]];
        }
        for r in 0..dim {
            let mut acc = zero();
            for s in 0..dim {
                acc += m[(r, s)] * buf[s];
            }
            state[base + offsets[r]] = acc;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub enum Event {
    Apply(Op),
    /// Prepare a wire that currently holds `|0>` in the given basis state.
    Init(usize, bool),
    /// Assert a wire holds the given basis state and release it.
    Term(usize, bool),
}

/// A circuit reduced to what the oracle understands.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SimProgram {
    pub wires: usize,
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub events: Vec<Event>,
}

impl SimProgram {
    pub fn unitary(wires: usize, ops: Vec<Op>) -> SimProgram {
        SimProgram {
            wires,
            inputs: (0..wires).collect(),
            outputs: (0..wires).collect(),
            events: ops.into_iter().map(Event::Apply).collect(),
        }
    }

    /// Runs the events on one input state. Non-input wires start in `|0>`.
    pub fn run(&self, state: &mut [C64]) -> Result<(), SimError> {
        let n = self.wires;
        for (i, ev) in self.events.iter().enumerate() {
            match ev {
                Event::Apply(op) => apply_op(state, n, op)?,
                Event::Init(w, v) => {
                    if *w >= n {
                        return Err(SimError::BadWire { wire: *w });
                    }
                    if wire_mass(state, n, *w, true) > CLEAN_TOL {
                        return Err(SimError::DirtyInit { wire: *w, event: i });
                    }
                    if *v {
                        apply_op(state, n, &Op::new(GateKind::X, vec![*w]))?;
                    }
                }
                Event::Term(w, v) => {
                    if *w >= n {
                        return Err(SimError::BadWire { wire: *w });
                    }
                    let residual = wire_mass(state, n, *w, !*v);
                    if residual > CLEAN_TOL {
                        return Err(SimError::DirtyTerm { wire: *w, event: i, residual });
                    }
                    project(state, n, *w, *v);
                    if *v {
                        apply_op(state, n, &Op::new(GateKind::X, vec![*w]))?;
                    }
                }
            }
        }
        Ok(())
    }

    /// The linear map from input wires to output wires, listed in the order
    /// of `inputs` and `outputs` (first listed is most significant).
    pub fn isometry(&self) -> Result<Matrix, SimError> {
        let width = self.inputs.len().max(self.outputs.len());
        if width > MAX_MATRIX_WIRES {
            return Err(SimError::MatrixTooLarge(width));
        }
        for &w in self.inputs.iter().chain(&self.outputs) {
            if w >= self.wires {
                return Err(SimError::BadWire { wire: w });
            }
        }
        let Compacted { prog, origin } = self.compact()?;
        let n = prog.wires;
        if n > MAX_SIM_WIRES {
            return Err(SimError::TooManyWires(n));
        }
        // Report errors against the wires and events of `self`.
        let relabel = |e: SimError| match e {
            SimError::DirtyTerm { event, residual, .. } => match origin[event] {
                (wire, Some(event)) => SimError::DirtyTerm { wire, event, residual },
                (wire, None) => SimError::DirtyAncilla { wire, residual },
            },
            SimError::DirtyInit { event, .. } => {
                let (wire, ev) = origin[event];
                SimError::DirtyInit { wire, event: ev.unwrap_or(event) }
            }
            e => e,
        };
        let place = |wires: &[usize], k: usize| -> usize {
            let m = wires.len();
            wires
                .iter()
                .enumerate()
                .filter(|(j, _)| k & (1 << (m - 1 - j)) != 0)
                .map(|(_, &w)| 1usize << (n - 1 - w))
                .sum()
        };
        let (ni, no) = (prog.inputs.len(), prog.outputs.len());
        let mut result = Matrix::zeros(1 << no, 1 << ni);
        let mut state = vec![zero(); 1 << n];
        for j in 0..(1usize << ni) {
            state.iter_mut().for_each(|a| *a = zero());
            state[place(&prog.inputs, j)] = one();
            prog.run(&mut state).map_err(relabel)?;
            for k in 0..(1usize << no) {
                result[(k, j)] = state[place(&prog.outputs, k)];
            }
        }
        Ok(result)
    }

    /// Maps wires with disjoint lifetimes onto the same simulator wire.
    /// A non-output wire is released right after its last event with a
    /// check that it holds `|0>`, which is what `isometry` requires of it.
    fn compact(&self) -> Result<Compacted, SimError> {
        let n = self.wires;
        let mut last: Vec<Option<usize>> = vec![None; n];
        for (i, ev) in self.events.iter().enumerate() {
            let ws = ev.wires();
            for (k, &w) in ws.iter().enumerate() {
                if w >= n || ws[..k].contains(&w) {
                    return Err(SimError::BadWire { wire: w });
                }
                last[w] = Some(i);
            }
        }
        let mut c = Compactor { phys: vec![None; n], free: (0..n).collect(), out: Compacted::default() };
        for &w in self.inputs.iter().chain(&self.outputs) {
            c.alloc(w);
        }
        let released = |w: usize| !self.outputs.contains(&w);
        for &w in &self.inputs {
            if last[w].is_none() && released(w) {
                c.release(w);
            }
        }
        for (i, ev) in self.events.iter().enumerate() {
            let ws = ev.wires();
            let mapped = match ev {
                Event::Apply(op) => {
                    let mut op = op.clone();
                    for t in &mut op.targets {
                        *t = c.alloc(*t);
                    }
                    for ctl in &mut op.controls {
                        ctl.0 = c.alloc(ctl.0);
                    }
                    Event::Apply(op)
                }
                Event::Init(w, v) => Event::Init(c.alloc(*w), *v),
                Event::Term(w, v) => Event::Term(c.alloc(*w), *v),
            };
            c.out.prog.events.push(mapped);
            c.out.origin.push((ws.first().copied().unwrap_or(0), Some(i)));
            for &w in &ws {
                if last[w] == Some(i) && released(w) {
                    c.release(w);
                }
            }
        }
        let Compactor { phys, mut out, .. } = c;
        let at = |w: usize| phys[w].expect("allocated");
        out.prog.inputs = self.inputs.iter().map(|&w| at(w)).collect();
        out.prog.outputs = self.outputs.iter().map(|&w| at(w)).collect();
        out.prog.wires = phys.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
        Ok(out)
    }
}

impl Event {
    fn wires(&self) -> Vec<usize> {
        match self {
            Event::Apply(op) => op.wires().collect(),
            Event::Init(w, _) | Event::Term(w, _) => vec![*w],
        }
    }
}

/// A compacted program and, per event, the wire and event of the original
/// it came from (`None` for inserted releases).
#[derive(Default)]
struct Compacted {
    prog: SimProgram,
    origin: Vec<(usize, Option<usize>)>,
}

struct Compactor {
    phys: Vec<Option<usize>>,
    free: std::collections::BTreeSet<usize>,
    out: Compacted,
}

impl Compactor {
    fn alloc(&mut self, w: usize) -> usize {
        if let Some(p) = self.phys[w] {
            return p;
        }
        let p = self.free.pop_first().expect("at least one free wire per logical wire");
        self.phys[w] = Some(p);
        self.out.prog.wires = self.out.prog.wires.max(p + 1);
        p
    }

    fn release(&mut self, w: usize) {
        let p = self.phys[w].expect("allocated");
        self.out.prog.events.push(Event::Term(p, false));
        self.out.origin.push((w, None));
        self.free.insert(p);
    }
}

/// Squared norm of the component with `wire` equal to `value`.
fn wire_mass(state: &[C64], n: usize, wire: usize, value: bool) -> f64 {
    let b = 1usize << (n - 1 - wire);
    state
        .iter()
        .enumerate()
        .filter(|(i, _)| (i & b != 0) == value)
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

fn project(state: &mut [C64], n: usize, wire: usize, value: bool) {
    let b = 1usize << (n - 1 - wire);
    for (i, a) in state.iter_mut().enumerate() {
        if (i & b != 0) != value {
            *a = zero();
        }
    }
}

/// Unitary of a gate list on `n` wires.
pub fn circuit_matrix(n: usize, ops: &[Op]) -> Result<Matrix, SimError> {
    SimProgram::unitary(n, ops.to_vec()).isometry()
}

/// Embeds `op` into `n` wires by Kronecker products and a wire permutation.
/// Independent of [`apply_op`]; used to cross-check the simulator.
pub fn embed_kron(op: &Op, n: usize) -> Matrix {
    let mut g = op.matrix();
    for _ in &op.controls {
        g = g.controlled().expect("gate matrices are unitary");
    }
    let used: Vec<usize> = op.wires().collect();
    let rest: Vec<usize> = (0..n).filter(|w| !used.contains(w)).collect();
    let full = g.kron(&Matrix::identity(1 << rest.len()));
    // order[p] = wire placed at position p
    let order: Vec<usize> = used.iter().chain(&rest).copied().collect();
    let dim = 1usize << n;
    let mut perm = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let mut j = 0usize;
        for (p, &w) in order.iter().enumerate() {
            if i & (1 << (n - 1 - w)) != 0 {
                j |= 1 << (n - 1 - p);
            }
        }
        perm[(j, i)] = one();
    }
    let mut m = perm.adjoint().mul(&full).mul(&perm);
    for &(w, pos) in &op.controls {
        if !pos {
            let x = embed_kron(&Op::new(GateKind::X, vec![w]), n);
            m = x.mul(&m).mul(&x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateTag;
    use crate::matrix::{basis, eq_upto_phase, TOL_UNITARY};
    use std::f64::consts::PI;

    fn sample(tag: GateTag) -> GateKind<f64> {
        let ps = [0.3, -1.1, 2.4, 0.7];
        GateKind::from_tag(tag, ps[..tag.param_count()].to_vec()).unwrap()
    }

    #[test]
    fn every_gate_is_unitary() {
        for tag in GateTag::ALL {
            let m = gate_matrix(&sample(tag));
            assert!(m.is_unitary(TOL_UNITARY), "{tag:?}");
            assert_eq!(m.dim(), 1 << tag.arity(), "{tag:?}");
        }
    }

    #[test]
    fn p_special_angles() {
        assert!(p_matrix(PI / 2.0).approx_eq(&gate_matrix(&GateKind::S), 1e-15));
        assert!(p_matrix(-PI / 2.0).approx_eq(&gate_matrix(&GateKind::Sdg), 1e-15));
    }

    #[test]
    fn sim_matches_kron_embedding() {
        let ops = vec![
            Op::new(GateKind::H, vec![2]),
            Op::new(GateKind::X, vec![0]).ctrl(2, true),
            Op::new(GateKind::W, vec![2, 1]).ctrl(0, false),
            Op::new(GateKind::T, vec![1]).inv(true),
            Op::new(GateKind::GPhase(0.4), vec![]).ctrl(1, true).ctrl(2, false),
            Op::new(GateKind::U(0.3, 0.2, 0.1), vec![0]).ctrl(1, true),
        ];
        let mut k = Matrix::identity(8);
        for op in &ops {
            k = embed_kron(op, 3).mul(&k);
        }
        let s = circuit_matrix(3, &ops).unwrap();
        assert!(s.approx_eq(&k, 1e-12));
    }

    #[test]
    fn toffoli_by_brute_force() {
        let ccx = gate_matrix(&GateKind::X).controlled().unwrap().controlled().unwrap();
        for b in 0..8 {
            let out = ccx.apply(&basis(3, b));
            let expect = if b >= 6 { b ^ 1 } else { b };
            assert_eq!(out, basis(3, expect));
        }
    }

    #[test]
    fn ancilla_isometry() {
        let prog = SimProgram {
            wires: 2,
            inputs: vec![0],
            outputs: vec![0],
            events: vec![
                Event::Init(1, false),
                Event::Apply(Op::new(GateKind::X, vec![1]).ctrl(0, true)),
                Event::Apply(Op::new(GateKind::X, vec![1]).ctrl(0, true)),
                Event::Term(1, false),
            ],
        };
        assert!(prog.isometry().unwrap().approx_eq(&Matrix::identity(2), 1e-12));
        let mut dirty = prog.clone();
        dirty.events.remove(2);
        let mut h = prog.clone();
        h.events.insert(0, Event::Apply(Op::new(GateKind::H, vec![0])));
        h.events.remove(2);
        assert!(matches!(h.isometry(), Err(SimError::DirtyTerm { wire: 1, .. })));
    }

    #[test]
    fn u_family_phases() {
        let (t, p, l) = (0.9, -0.4, 1.3);
        let u3 = gate_matrix(&GateKind::U3(t, p, l));
        assert!(eq_upto_phase(&u3, &u_matrix(t, p, l), 1e-12));
        let u2 = gate_matrix(&GateKind::U2(p, l));
        assert!(u2.approx_eq(&gate_matrix(&GateKind::U3(PI / 2.0, p, l)), 1e-12));
    }
}
