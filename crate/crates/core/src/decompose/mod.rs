//! The rewrite catalog.
//!
//! Every rule is data: a left-hand gate (tag, number of controls, inverse
//! flag) and a template circuit over the rule's wires. Wires `0..ctrls` are
//! the controls, followed by the targets and then any ancillas, which start
//! and end in `|0>`. Template gates marked `inherit` also receive whatever
//! extra controls the rewritten gate carries; rules with such gates hold
//! exactly, including global phase.
//!
//! [`verify_catalog`] checks every rule against the matrix semantics.

mod catalog;
pub mod generic;
mod verify;

use std::sync::OnceLock;

use crate::expr::Expr;
use crate::gate::{census, Angle, GateKind, GateTag};
use crate::qasm::{Modifier, Operand, Statement};
use crate::quipper::QuipGate;

pub use catalog::{negative_cases, phase_gates};
pub use verify::{verify_catalog, verify_rule, CatalogReport, RuleReport};

/// Angle template over the rule parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Ang {
    /// `Σ k·p[i] + c`
    Lin(Vec<(usize, f64)>, f64),
    /// `k · 2π/2^p[i]`
    RPhase(usize, f64),
}

impl Ang {
    pub fn konst(v: f64) -> Ang {
        Ang::Lin(vec![], v)
    }

    pub fn param(i: usize) -> Ang {
        Ang::Lin(vec![(i, 1.0)], 0.0)
    }

    pub fn scaled(i: usize, k: f64) -> Ang {
        Ang::Lin(vec![(i, k)], 0.0)
    }

    pub fn eval<A: Angle>(&self, params: &[A]) -> A {
        match self {
            Ang::Lin(terms, c) => {
                let mut acc: Option<A> = None;
                for &(i, k) in terms {
                    let t = params[i].scale(k);
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.add(&t),
                    });
                }
                match acc {
                    None => A::constant(*c),
                    Some(a) if *c == 0.0 => a,
                    Some(a) => a.add(&A::constant(*c)),
                }
            }
            Ang::RPhase(i, k) => params[*i].rgate_phase().scale(*k),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TGate {
    pub tag: GateTag,
    pub params: Vec<Ang>,
    pub targets: Vec<usize>,
    pub controls: Vec<(usize, bool)>,
    pub inverted: bool,
    pub inherit: bool,
}

impl TGate {
    pub fn new(tag: GateTag, targets: &[usize]) -> TGate {
        TGate { tag, params: vec![], targets: targets.to_vec(), controls: vec![], inverted: false, inherit: false }
    }

    pub fn ctrl(mut self, w: usize) -> TGate {
        self.controls.push((w, true));
        self
    }

    pub fn negctrl(mut self, w: usize) -> TGate {
        self.controls.push((w, false));
        self
    }

    pub fn with(mut self, params: Vec<Ang>) -> TGate {
        self.params = params;
        self
    }

    pub fn inv(mut self) -> TGate {
        self.inverted = !self.inverted;
        self
    }

    pub fn inherit(mut self) -> TGate {
        self.inherit = true;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Bodies of the gates in `quipgates.inc`.
    QuipGates,
    /// OpenQASM gates without a Quipper counterpart, written with Quipper gates.
    ToQuipper,
    /// Gates missing from `qelib1.inc`, as shipped in `bkpgates.inc`.
    BkpGates,
    /// Inverses of gates that are not self-inverse.
    Inverse,
    /// Control removal on the Quipper side.
    Control,
    /// Control removal needed only for OpenQASM 2.0 output.
    LegacyControl,
    /// Rewrites into the lattice-surgery gate set.
    Lsc,
    /// Instances of the generic constructions.
    Generic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecompRule {
    pub id: String,
    pub family: Family,
    pub source: &'static str,
    pub lhs: GateTag,
    pub ctrls: usize,
    pub inverted: bool,
    pub ancillas: usize,
    pub rhs: Vec<TGate>,
    pub phase_exact: bool,
}

/// A template gate bound to concrete wires and angles.
#[derive(Clone, Debug, PartialEq)]
pub struct Inst<A> {
    pub gate: GateKind<A>,
    pub targets: Vec<usize>,
    pub controls: Vec<(usize, bool)>,
    pub inverted: bool,
}

impl DecompRule {
    /// Controls plus targets of the left-hand side.
    pub fn main_wires(&self) -> usize {
        self.ctrls + self.lhs.arity()
    }

    pub fn wires(&self) -> usize {
        self.main_wires() + self.ancillas
    }

    pub fn controllable(&self) -> bool {
        self.rhs.iter().any(|g| g.inherit)
    }

    /// Binds the template. `wires` maps rule wires (controls, targets,
    /// ancillas) to circuit wires; `extra` goes to inheriting gates.
    pub fn instantiate<A: Angle>(&self, params: &[A], wires: &[usize], extra: &[(usize, bool)]) -> Vec<Inst<A>> {
        assert_eq!(params.len(), self.lhs.param_count(), "rule {}", self.id);
        assert_eq!(wires.len(), self.wires(), "rule {}", self.id);
        self.rhs
            .iter()
            .map(|t| {
                let ps: Vec<A> = t.params.iter().map(|a| a.eval(params)).collect();
                let gate = GateKind::from_tag(t.tag, ps).expect("template parameter count");
                let mut controls: Vec<(usize, bool)> = if t.inherit { extra.to_vec() } else { vec![] };
                controls.extend(t.controls.iter().map(|&(w, p)| (wires[w], p)));
                Inst { gate, targets: t.targets.iter().map(|&w| wires[w]).collect(), controls, inverted: t.inverted }
            })
            .collect()
    }

    /// Largest control census on the right-hand side does not exceed the
    /// left-hand side's, for every number of extra controls.
    pub fn adds_no_controls(&self) -> bool {
        let lhs = census(self.lhs, self.ctrls);
        self.rhs.iter().all(|g| {
            let own = census(g.tag, g.controls.len());
            if g.inherit {
                own <= lhs && g.controls.len() + g.tag.arity() <= self.ctrls + self.lhs.arity().max(1)
            } else {
                own <= lhs
            }
        })
    }
}

pub fn catalog() -> &'static [DecompRule] {
    static CATALOG: OnceLock<Vec<DecompRule>> = OnceLock::new();
    CATALOG.get_or_init(catalog::build)
}

/// First rule of `family` for the given left-hand side.
pub fn find(family: Family, tag: GateTag, ctrls: usize, inverted: bool) -> Option<&'static DecompRule> {
    catalog()
        .iter()
        .find(|r| r.family == family && r.lhs == tag && r.ctrls == ctrls && r.inverted == inverted)
}

/// Where rewritten gates are headed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    /// Quipper control elimination; `legacy` also removes C(H) and C(swap).
    Quipper { legacy: bool },
    /// OpenQASM 3 with `stdgates.inc` only.
    Qasm3,
    /// OpenQASM 2.0 with `qelib1.inc` only.
    Qasm2,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Lookup {
    /// Directly expressible.
    Base,
    Rule(&'static DecompRule),
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("no rule for {tag:?} with {ctrls} controls{} towards {target:?}", if *.inverted { " (inverted)" } else { "" })]
pub struct LookupError {
    pub tag: GateTag,
    pub ctrls: usize,
    pub inverted: bool,
    pub target: Target,
}

/// Whether Quipper control elimination keeps this gate as is.
pub fn is_quipper_base(tag: GateTag, ctrls: usize, legacy: bool) -> bool {
    match ctrls {
        0 => true,
        1 => match tag {
            GateTag::X | GateTag::Y | GateTag::Z | GateTag::GPhase => true,
            GateTag::H | GateTag::Swap => !legacy,
            _ => false,
        },
        _ => false,
    }
}

/// Resolves a gate for `target`: either it is a base case or a catalog rule
/// rewrites it. Inverted gates resolve through the inverse rules first.
pub fn lookup(tag: GateTag, ctrls: usize, inverted: bool, target: Target) -> Result<Lookup, LookupError> {
    use crate::qasm::{names, Version};
    let err = LookupError { tag, ctrls, inverted, target };
    if inverted && !tag.is_self_inverse() {
        return find(Family::Inverse, tag, 0, true).map(Lookup::Rule).ok_or(err);
    }
    match target {
        Target::Quipper { legacy } => {
            if is_quipper_base(tag, ctrls, legacy) {
                return Ok(Lookup::Base);
            }
            let fams: &[Family] = if legacy { &[Family::Control, Family::LegacyControl] } else { &[Family::Control] };
            fams.iter().find_map(|&f| find(f, tag, ctrls, false)).map(Lookup::Rule).ok_or(err)
        }
        Target::Qasm3 => {
            let incs = [names::STDGATES_INC.to_string()];
            if names::spell(Version::V3, &incs, tag, 0).is_some() {
                return Ok(Lookup::Base);
            }
            find(Family::QuipGates, tag, 0, false).map(Lookup::Rule).ok_or(err)
        }
        Target::Qasm2 => {
            let incs = [names::QELIB1_INC.to_string()];
            if names::spell(Version::V2, &incs, tag, ctrls).is_some() {
                return Ok(Lookup::Base);
            }
            find(Family::BkpGates, tag, ctrls, false)
                .or_else(|| if ctrls == 0 { find(Family::QuipGates, tag, 0, false) } else { None })
                .map(Lookup::Rule)
                .ok_or(err)
        }
    }
}

/// Quipper gate for an instantiated template gate. `Sdg`/`Tdg` become
/// inverted `S`/`T`, `P` a global phase controlled by its target.
pub fn inst_to_quip(i: &Inst<f64>) -> Option<QuipGate> {
    let inv = i.inverted;
    Some(match &i.gate {
        GateKind::GPhase(t) => QuipGate::GPhase { angle: if inv { -t } else { *t }, controls: i.controls.clone() },
        GateKind::P(t) => {
            let mut controls = i.controls.clone();
            controls.push((i.targets[0], true));
            QuipGate::GPhase { angle: if inv { -t } else { *t }, controls }
        }
        GateKind::Sdg | GateKind::Tdg => QuipGate::Unitary {
            gate: if i.gate == GateKind::Sdg { GateKind::S } else { GateKind::T },
            wires: i.targets.clone(),
            controls: i.controls.clone(),
            inverted: !inv,
        },
        g if crate::gate::is_quipper_native(g.tag()) => QuipGate::Unitary {
            gate: g.clone(),
            wires: i.targets.clone(),
            controls: i.controls.clone(),
            inverted: inv,
        },
        _ => return None,
    })
}

/// OpenQASM statement for an instantiated template gate; wires index
/// `operands`.
pub fn inst_to_stmt(i: &Inst<Expr>, operands: &[Operand]) -> Statement {
    let mut mods = vec![];
    if i.inverted {
        mods.push(Modifier::Inv);
    }
    let mut ops = vec![];
    for &(w, p) in &i.controls {
        mods.push(if p { Modifier::Ctrl } else { Modifier::NegCtrl });
        ops.push(operands[w].clone());
    }
    ops.extend(i.targets.iter().map(|&w| operands[w].clone()));
    Statement::Gate { mods, gate: i.gate.clone(), operands: ops }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_templates() {
        let a = Ang::Lin(vec![(0, 0.5), (1, -1.0)], 0.25);
        assert_eq!(a.eval(&[2.0, 1.0]), 0.25);
        let e = Ang::Lin(vec![(0, -1.0)], -std::f64::consts::FRAC_PI_2).eval(&[Expr::pi()]);
        assert_eq!(e.to_string(), "-pi - pi / 2");
        assert_eq!(Ang::RPhase(0, -1.0).eval(&[2.0]), -std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn lookup_examples() {
        let w = lookup(GateTag::W, 0, false, Target::Qasm3).unwrap();
        assert!(matches!(w, Lookup::Rule(r) if r.family == Family::QuipGates));
        let om = lookup(GateTag::Omega, 1, false, Target::Quipper { legacy: true }).unwrap();
        let Lookup::Rule(r) = om else { panic!() };
        assert_eq!(r.rhs.len(), 1);
        assert_eq!(r.rhs[0].tag, GateTag::GPhase);
        let t = lookup(GateTag::T, 1, false, Target::Quipper { legacy: true }).unwrap();
        assert!(matches!(t, Lookup::Rule(r) if r.ancillas == 1));
        let ix = lookup(GateTag::IX, 0, false, Target::Qasm2).unwrap();
        let Lookup::Rule(r) = ix else { panic!() };
        let tags: Vec<GateTag> = r.rhs.iter().map(|g| g.tag).collect();
        assert_eq!(tags, [GateTag::X, GateTag::S, GateTag::X, GateTag::S, GateTag::X]);
        assert_eq!(lookup(GateTag::X, 1, false, Target::Quipper { legacy: true }), Ok(Lookup::Base));
        assert!(lookup(GateTag::Rx, 5, false, Target::Quipper { legacy: true }).is_err());
    }
}
