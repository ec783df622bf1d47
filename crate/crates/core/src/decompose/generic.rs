//! Generic constructions: change of basis between rotations, the ABC
//! control pattern, control reduction with a Toffoli-like gate, and control
//! by square roots.
//!
//! Rule wires follow the catalog convention: controls, targets, ancillas.

use super::{Ang, TGate};
use crate::gate::GateTag as G;

/// Self-inverse gate `D` with `V = DXD` and `V·R(θ)·V = R(-θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conj {
    I,
    H,
}

/// Rotations the ABC pattern supports, with their `D`.
pub const ABC_REGISTRY: &[(G, Conj)] = &[
    (G::Rz, Conj::I),
    (G::ExpZ, Conj::I),
    (G::P, Conj::I),
    (G::U1, Conj::I),
    (G::Rx, Conj::H),
    (G::Ry, Conj::H),
];

fn rot(tag: G, w: usize, k: f64) -> TGate {
    TGate::new(tag, &[w]).with(vec![Ang::scaled(0, k)])
}

/// `R_B(θ) = V; R_A(θ'); V†` with only the middle rotation inheriting
/// controls.
pub fn basis_change(tag: G) -> Option<Vec<TGate>> {
    let mid = || rot(G::ExpZ, 0, 0.5).inherit();
    let g = |t: G| TGate::new(t, &[0]);
    Some(match tag {
        G::Rz => vec![mid()],
        G::Rx => vec![g(G::H), mid(), g(G::H)],
        G::Ry => vec![g(G::X), g(G::S), g(G::H), mid(), g(G::H), g(G::Sdg), g(G::X)],
        _ => return None,
    })
}

/// `C(R(θ))` on (control 0, target 1) as
/// `R(θ/2); D; CX; D; R(-θ/2); D; CX; D`. Phase rotations add `P(θ/2)`
/// on the control.
pub fn abc_control(tag: G) -> Option<Vec<TGate>> {
    let &(_, d) = ABC_REGISTRY.iter().find(|(t, _)| *t == tag)?;
    let flip = match d {
        Conj::I => G::X,
        Conj::H => G::Z,
    };
    let cx = || TGate::new(flip, &[1]).ctrl(0);
    let mut v = vec![rot(tag, 1, 0.5), cx(), rot(tag, 1, -0.5), cx()];
    if matches!(tag, G::P | G::U1) {
        v.push(rot(tag, 0, 0.5));
    }
    Some(v)
}

/// Three-qubit gates `U` with `U|ab0⟩ = λ_ab |ab(a∧b)⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToffoliLike {
    CCX,
    CCiX,
}

impl ToffoliLike {
    pub fn tag(self) -> G {
        match self {
            ToffoliLike::CCX => G::X,
            ToffoliLike::CCiX => G::IX,
        }
    }
}

/// Removes one control from `C^n(G)` with a fresh ancilla:
/// `U(c0, c1 → a); C^(n-1)(G) with a in place of c0, c1; U†`.
pub fn toffoli_like_reduce(tag: G, n: usize, u: ToffoliLike) -> Option<Vec<TGate>> {
    if n < 2 {
        return None;
    }
    let arity = tag.arity();
    let anc = n + arity;
    let params = (0..tag.param_count()).map(Ang::param).collect();
    let targets: Vec<usize> = (n..n + arity).collect();
    let mut mid = TGate::new(tag, &targets).with(params).ctrl(anc).inherit();
    for c in 2..n {
        mid = mid.ctrl(c);
    }
    let compute = TGate::new(u.tag(), &[anc]).ctrl(0).ctrl(1);
    let mut uncompute = compute.clone();
    if u == ToffoliLike::CCiX {
        uncompute = uncompute.inv();
    }
    Some(vec![compute, mid, uncompute])
}

/// Registered square roots `V` with `V² = U`.
pub fn square_root(tag: G) -> Option<G> {
    match tag {
        G::X => Some(G::SX),
        G::Z => Some(G::S),
        G::S => Some(G::T),
        _ => None,
    }
}

/// `CC(U)` on (c1 = 0, c2 = 1, t = 2) as
/// `C(V)(c2,t); CX(c1,c2); C(V†)(c2,t); CX(c1,c2); C(V)(c1,t)`.
pub fn sqrt_control(tag: G) -> Option<Vec<TGate>> {
    let v = square_root(tag)?;
    let cv = |c: usize| TGate::new(v, &[2]).ctrl(c);
    let cx = || TGate::new(G::X, &[1]).ctrl(0);
    Some(vec![cv(1), cx(), cv(1).inv(), cx(), cv(0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gate::GateKind;
    use crate::matrix::{basis, TOL_EXACT};
    use crate::semantics::{circuit_matrix, Op};

    #[test]
    fn toffoli_like_property() {
        for u in [ToffoliLike::CCX, ToffoliLike::CCiX] {
            let kind = GateKind::from_tag(u.tag(), vec![]).unwrap();
            let m = circuit_matrix(3, &[Op::new(kind, vec![2]).ctrl(0, true).ctrl(1, true)]).unwrap();
            for ab in 0..4usize {
                let out = m.apply(&basis(3, ab << 1));
                let want = (ab << 1) | usize::from(ab == 3);
                for (i, a) in out.iter().enumerate() {
                    if i != want {
                        assert!(a.norm() < TOL_EXACT);
                    }
                }
                assert!((out[want].norm() - 1.0).abs() < TOL_EXACT);
            }
        }
    }

    #[test]
    fn unsupported_inputs() {
        assert!(basis_change(G::H).is_none());
        assert!(abc_control(G::H).is_none());
        assert!(toffoli_like_reduce(G::X, 1, ToffoliLike::CCX).is_none());
        assert!(sqrt_control(G::Y).is_none());
    }

    #[test]
    fn reduce_shape() {
        let r = toffoli_like_reduce(G::Rz, 3, ToffoliLike::CCiX).unwrap();
        assert_eq!(r[0].targets, [4]);
        assert_eq!(r[1].targets, [3]);
        assert_eq!(r[1].controls, [(4, true), (2, true)]);
        assert!(r[2].inverted);
    }
}
