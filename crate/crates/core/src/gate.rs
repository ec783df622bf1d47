//! Gate kinds shared by the OpenQASM and Quipper representations.
//!
//! `GateKind` is generic over the angle carrier: the OpenQASM side keeps
//! symbolic [`Expr`](crate::expr::Expr) angles, the Quipper side keeps `f64`.

use std::fmt;

/// Operations an angle carrier must support so templates can be instantiated
/// on either side.
pub trait Angle: Clone + fmt::Debug + PartialEq {
    fn value(&self) -> f64;
    fn constant(v: f64) -> Self;
    fn neg(&self) -> Self;
    /// `k * self`
    fn scale(&self, k: f64) -> Self;
    fn add(&self, other: &Self) -> Self;
    /// `2π / 2^self`
    fn rgate_phase(&self) -> Self;
}

impl Angle for f64 {
    fn value(&self) -> f64 {
        *self
    }
    fn constant(v: f64) -> Self {
        v
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn scale(&self, k: f64) -> Self {
        k * *self
    }
    fn add(&self, other: &Self) -> Self {
        *self + *other
    }
    fn rgate_phase(&self) -> Self {
        rgate_angle(*self)
    }
}

/// Phase applied by Quipper's `R(2pi/%)` rotation with parameter `t`.
pub fn rgate_angle(t: f64) -> f64 {
    2.0 * std::f64::consts::PI / 2f64.powf(t)
}

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind<A = f64> {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    IX,
    Omega,
    E,
    W,
    Swap,
    Rx(A),
    Ry(A),
    Rz(A),
    P(A),
    ExpZ(A),
    RGate(A),
    U(A, A, A),
    U1(A),
    U2(A, A),
    U3(A, A, A),
    CU(A, A, A, A),
    GPhase(A),
}

/// Parameter-free mirror of [`GateKind`], used as a table key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateTag {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    SX,
    IX,
    Omega,
    E,
    W,
    Swap,
    Rx,
    Ry,
    Rz,
    P,
    ExpZ,
    RGate,
    U,
    U1,
    U2,
    U3,
    CU,
    GPhase,
}

impl GateTag {
    pub const ALL: [GateTag; 26] = [
        GateTag::X,
        GateTag::Y,
        GateTag::Z,
        GateTag::H,
        GateTag::S,
        GateTag::Sdg,
        GateTag::T,
        GateTag::Tdg,
        GateTag::SX,
        GateTag::IX,
        GateTag::Omega,
        GateTag::E,
        GateTag::W,
        GateTag::Swap,
        GateTag::Rx,
        GateTag::Ry,
        GateTag::Rz,
        GateTag::P,
        GateTag::ExpZ,
        GateTag::RGate,
        GateTag::U,
        GateTag::U1,
        GateTag::U2,
        GateTag::U3,
        GateTag::CU,
        GateTag::GPhase,
    ];

    pub fn param_count(self) -> usize {
        use GateTag::*;
        match self {
            Rx | Ry | Rz | P | ExpZ | RGate | U1 | GPhase => 1,
            U2 => 2,
            U | U3 => 3,
            CU => 4,
            _ => 0,
        }
    }

    /// Number of target qubits.
    pub fn arity(self) -> usize {
        match self {
            GateTag::W | GateTag::Swap | GateTag::CU => 2,
            GateTag::GPhase => 0,
            _ => 1,
        }
    }

    pub fn is_self_inverse(self) -> bool {
        matches!(
            self,
            GateTag::X | GateTag::Y | GateTag::Z | GateTag::H | GateTag::W | GateTag::Swap
        )
    }
}

impl<A> GateKind<A> {
    pub fn tag(&self) -> GateTag {
        use GateKind as K;
        match self {
            K::X => GateTag::X,
            K::Y => GateTag::Y,
            K::Z => GateTag::Z,
            K::H => GateTag::H,
            K::S => GateTag::S,
            K::Sdg => GateTag::Sdg,
            K::T => GateTag::T,
            K::Tdg => GateTag::Tdg,
            K::SX => GateTag::SX,
            K::IX => GateTag::IX,
            K::Omega => GateTag::Omega,
            K::E => GateTag::E,
            K::W => GateTag::W,
            K::Swap => GateTag::Swap,
            K::Rx(_) => GateTag::Rx,
            K::Ry(_) => GateTag::Ry,
            K::Rz(_) => GateTag::Rz,
            K::P(_) => GateTag::P,
            K::ExpZ(_) => GateTag::ExpZ,
            K::RGate(_) => GateTag::RGate,
            K::U(..) => GateTag::U,
            K::U1(_) => GateTag::U1,
            K::U2(..) => GateTag::U2,
            K::U3(..) => GateTag::U3,
            K::CU(..) => GateTag::CU,
            K::GPhase(_) => GateTag::GPhase,
        }
    }

    pub fn arity(&self) -> usize {
        self.tag().arity()
    }

    pub fn params(&self) -> Vec<&A> {
        use GateKind as K;
        match self {
            K::Rx(a) | K::Ry(a) | K::Rz(a) | K::P(a) | K::ExpZ(a) | K::RGate(a) => vec![a],
            K::U1(a) | K::GPhase(a) => vec![a],
            K::U2(a, b) => vec![a, b],
            K::U(a, b, c) | K::U3(a, b, c) => vec![a, b, c],
            K::CU(a, b, c, d) => vec![a, b, c, d],
            _ => vec![],
        }
    }

    pub fn map<B>(&self, mut f: impl FnMut(&A) -> B) -> GateKind<B> {
        let ps: Vec<B> = self.params().into_iter().map(&mut f).collect();
        GateKind::from_tag(self.tag(), ps).expect("parameter count preserved by map")
    }

    pub fn try_map<B, E>(&self, mut f: impl FnMut(&A) -> Result<B, E>) -> Result<GateKind<B>, E> {
        let mut ps = Vec::new();
        for p in self.params() {
            ps.push(f(p)?);
        }
        Ok(GateKind::from_tag(self.tag(), ps).expect("parameter count preserved by map"))
    }

    /// Builds a kind from its tag and parameters; `None` on a count mismatch.
    pub fn from_tag(tag: GateTag, params: Vec<A>) -> Option<Self> {
        if params.len() != tag.param_count() {
            return None;
        }
        let mut it = params.into_iter();
        let mut nx = || it.next().unwrap();
        use GateKind as K;
        Some(match tag {
            GateTag::X => K::X,
            GateTag::Y => K::Y,
            GateTag::Z => K::Z,
            GateTag::H => K::H,
            GateTag::S => K::S,
            GateTag::Sdg => K::Sdg,
            GateTag::T => K::T,
            GateTag::Tdg => K::Tdg,
            GateTag::SX => K::SX,
            GateTag::IX => K::IX,
            GateTag::Omega => K::Omega,
            GateTag::E => K::E,
            GateTag::W => K::W,
            GateTag::Swap => K::Swap,
            GateTag::Rx => K::Rx(nx()),
            GateTag::Ry => K::Ry(nx()),
            GateTag::Rz => K::Rz(nx()),
            GateTag::P => K::P(nx()),
            GateTag::ExpZ => K::ExpZ(nx()),
            GateTag::RGate => K::RGate(nx()),
            GateTag::U => {
                let (a, b, c) = (nx(), nx(), nx());
                K::U(a, b, c)
            }
            GateTag::U1 => K::U1(nx()),
            GateTag::U2 => {
                let (a, b) = (nx(), nx());
                K::U2(a, b)
            }
            GateTag::U3 => {
                let (a, b, c) = (nx(), nx(), nx());
                K::U3(a, b, c)
            }
            GateTag::CU => {
                let (a, b, c, d) = (nx(), nx(), nx(), nx());
                K::CU(a, b, c, d)
            }
            GateTag::GPhase => K::GPhase(nx()),
        })
    }
}

impl<A: Angle> GateKind<A> {
    pub fn eval(&self) -> GateKind<f64> {
        self.map(|a| a.value())
    }
}

/// Spelling of a native gate in Quipper's ASCII format.
pub fn quipper_name(tag: GateTag) -> Option<&'static str> {
    Some(match tag {
        GateTag::X => "not",
        GateTag::Y => "Y",
        GateTag::Z => "Z",
        GateTag::H => "H",
        GateTag::S => "S",
        GateTag::T => "T",
        GateTag::SX => "V",
        GateTag::IX => "iX",
        GateTag::Omega => "omega",
        GateTag::E => "E",
        GateTag::W => "W",
        GateTag::Swap => "swap",
        _ => return None,
    })
}

/// Rotation names used by `QRot[...]` lines.
pub const EXPZ_NAME: &str = "exp(-i%Z)";
pub const RGATE_NAME: &str = "R(2pi/%)";

/// Inverse of [`quipper_name`]; also accepts the `X` alias.
pub fn quipper_tag(name: &str) -> Option<GateTag> {
    Some(match name {
        "not" | "X" => GateTag::X,
        "Y" => GateTag::Y,
        "Z" => GateTag::Z,
        "H" => GateTag::H,
        "S" => GateTag::S,
        "T" => GateTag::T,
        "V" => GateTag::SX,
        "iX" => GateTag::IX,
        "omega" => GateTag::Omega,
        "E" => GateTag::E,
        "W" => GateTag::W,
        "swap" => GateTag::Swap,
        _ => return None,
    })
}

/// Gates Quipper can express directly (as `QGate` or `QRot`).
pub fn is_quipper_native(tag: GateTag) -> bool {
    quipper_name(tag).is_some() || matches!(tag, GateTag::ExpZ | GateTag::RGate)
}

/// Control census of a gate: controls plus targets, minus one.
///
/// A bare two-qubit gate counts as singly controlled and a controlled global
/// phase as a phase gate on its last control.
pub fn census(tag: GateTag, controls: usize) -> usize {
    (controls + tag.arity()).saturating_sub(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_tag_round_trips_every_tag() {
        for tag in GateTag::ALL {
            let params = vec![0.5; tag.param_count()];
            let k = GateKind::from_tag(tag, params).unwrap();
            assert_eq!(k.tag(), tag);
            assert_eq!(k.params().len(), tag.param_count());
        }
        assert!(GateKind::<f64>::from_tag(GateTag::U, vec![1.0]).is_none());
    }

    #[test]
    fn quipper_names_are_bijective() {
        for tag in GateTag::ALL {
            if let Some(n) = quipper_name(tag) {
                assert_eq!(quipper_tag(n), Some(tag));
            }
        }
        assert_eq!(quipper_tag("X"), Some(GateTag::X));
    }

    #[test]
    fn census_counts() {
        assert_eq!(census(GateTag::X, 1), 1);
        assert_eq!(census(GateTag::W, 0), 1);
        assert_eq!(census(GateTag::GPhase, 1), 0);
        assert_eq!(census(GateTag::GPhase, 0), 0);
        assert_eq!(census(GateTag::CU, 1), 2);
    }
}
