use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::generic;
use super::{Ang, DecompRule, Family, TGate};
use crate::gate::GateTag as G;

/// Parses a compact gate list such as `"X[2]c1 Tdg[0] H[1]n0"`: the name,
/// the target wires, then `c`/`n` for positive/negative controls and an
/// optional trailing `*` marking the gate as inheriting extra controls.
pub(crate) fn seq(s: &str) -> Vec<TGate> {
    s.split_whitespace().map(tok).collect()
}

fn tok(t: &str) -> TGate {
    let open = t.find('[').unwrap_or_else(|| panic!("bad template token {t}"));
    let close = t.find(']').unwrap_or_else(|| panic!("bad template token {t}"));
    let tag = match &t[..open] {
        "X" => G::X,
        "Y" => G::Y,
        "Z" => G::Z,
        "H" => G::H,
        "S" => G::S,
        "Sdg" => G::Sdg,
        "T" => G::T,
        "Tdg" => G::Tdg,
        "SX" => G::SX,
        "IX" => G::IX,
        "Omega" => G::Omega,
        "E" => G::E,
        "W" => G::W,
        "Swap" => G::Swap,
        other => panic!("unknown template gate {other}"),
    };
    let targets: Vec<usize> = t[open + 1..close].split(',').map(|w| w.parse().unwrap()).collect();
    let mut g = TGate::new(tag, &targets);
    let mut rest = &t[close + 1..];
    if let Some(r) = rest.strip_suffix('*') {
        g = g.inherit();
        rest = r;
    }
    let mut chars = rest.chars().peekable();
    while let Some(k) = chars.next() {
        let mut n = String::new();
        while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
            n.push(*d);
            chars.next();
        }
        let w = n.parse().unwrap_or_else(|_| panic!("bad control in {t}"));
        g = match k {
            'c' => g.ctrl(w),
            'n' => g.negctrl(w),
            _ => panic!("bad control in {t}"),
        };
    }
    g
}

fn p(tag: G, w: usize, params: Vec<Ang>) -> TGate {
    TGate::new(tag, &[w]).with(params)
}

fn gphase(a: Ang) -> TGate {
    TGate::new(G::GPhase, &[]).with(vec![a])
}

fn lin(terms: &[(usize, f64)], c: f64) -> Ang {
    Ang::Lin(terms.to_vec(), c)
}

fn all_inherit(v: Vec<TGate>) -> Vec<TGate> {
    v.into_iter().map(TGate::inherit).collect()
}

fn cat(parts: Vec<Vec<TGate>>) -> Vec<TGate> {
    parts.into_iter().flatten().collect()
}

struct Row {
    family: Family,
    source: &'static str,
    lhs: G,
    ctrls: usize,
    inverted: bool,
    ancillas: usize,
    rhs: Vec<TGate>,
    phase_exact: bool,
}

fn row(family: Family, source: &'static str, lhs: G, ctrls: usize, rhs: Vec<TGate>) -> Row {
    Row { family, source, lhs, ctrls, inverted: false, ancillas: 0, rhs, phase_exact: true }
}

impl Row {
    fn inverted(mut self) -> Row {
        self.inverted = true;
        self
    }
    fn ancillas(mut self, n: usize) -> Row {
        self.ancillas = n;
        self
    }
    fn upto_phase(mut self) -> Row {
        self.phase_exact = false;
        self
    }
}

fn fam_tag(f: Family) -> &'static str {
    match f {
        Family::QuipGates => "quipgates",
        Family::ToQuipper => "to-quipper",
        Family::BkpGates => "bkpgates",
        Family::Inverse => "inverse",
        Family::Control => "control",
        Family::LegacyControl => "legacy-control",
        Family::Lsc => "lsc",
        Family::Generic => "generic",
    }
}

const CCZ: &str = "X[5]c1 X[3]c0 X[4]c1 X[5]c2 X[6]c3 X[4]c0 X[6]c2 X[3]c5 T[0] T[1] T[2] T[3] Tdg[4] Tdg[5] Tdg[6] \
                   X[3]c5 X[6]c2 X[4]c0 X[6]c3 X[5]c2 X[4]c1 X[3]c0 X[5]c1";

const CCIX: &str = "H[2] X[3]c0 X[1]c2 X[0]c2 X[3]c1 T[0] T[1] Tdg[2] Tdg[3] X[3]c1 X[0]c2 X[1]c2 X[3]c0 H[2]";

const CT: &str = "H[2] X[1]c2 X[0]c1 Tdg[0] T[1] X[1]c2 X[0]c1 T[0] Tdg[2] X[0]c2 H[2] T[2] H[2] X[0]c2 Tdg[0] T[2] \
                  X[0]c1 X[1]c2 T[0] Tdg[1] X[0]c1 X[1]c2 H[2]";

const CW: &str = "X[2]c1 Sdg[1] H[1] Tdg[1] H[1] T[0] T[1] T[2] X[0]c2 X[2]c1 X[1]c0 T[1] Tdg[2] X[2]c0 Tdg[0] \
                  Tdg[2] X[2]c1 X[1]c0 X[0]c2 H[1] T[1] H[1] S[1] X[2]c1";

const CSWAP: &str = "X[1]c2 H[2] T[0] T[1] T[2] X[0]c1 X[1]c2 X[2]c0 Tdg[1] T[2] X[1]c0 Tdg[0] Tdg[1] X[1]c2 X[2]c0 \
                     X[0]c1 H[2] X[1]c2";

const TOFFOLI_7T: &str = "H[2] X[2]c1 Tdg[2] X[2]c0 T[2] X[2]c1 Tdg[2] X[2]c0 T[1] T[2] H[2] X[1]c0 T[0] Tdg[1] X[1]c0";

/// The Toffoli gate through the ancilla-based CCZ.
pub(crate) fn toffoli_rhs() -> Vec<TGate> {
    cat(vec![seq("H[2]"), seq(CCZ), seq("H[2]")])
}

/// Doubly-controlled `iX` with one ancilla; a Toffoli-like gate.
pub(crate) fn ccix_rhs() -> Vec<TGate> {
    seq(CCIX)
}

/// `U3(θ, φ, λ)` on wire `w` written with `expZ`; rotations inherit, the
/// Clifford conjugations do not. `extra` adds controls to the rotations.
fn u3_body(w: usize, th: Ang, ph: Ang, la: Ang, extra: &[usize]) -> Vec<TGate> {
    let rot = |a: Ang| {
        let mut g = p(G::ExpZ, w, vec![a]).inherit();
        for &c in extra {
            g = g.ctrl(c);
        }
        g
    };
    vec![
        rot(la),
        TGate::new(G::Sdg, &[w]),
        TGate::new(G::H, &[w]),
        rot(th),
        TGate::new(G::H, &[w]),
        TGate::new(G::S, &[w]),
        rot(ph),
    ]
}

/// `U(θ, φ, λ)` as `g · P(λ-π/2) H P(θ) H P(φ+π/2)` in time order.
fn phase_form(g: Ang) -> Vec<TGate> {
    vec![
        gphase(g).inherit(),
        p(G::P, 0, vec![lin(&[(2, 1.0)], -FRAC_PI_2)]).inherit(),
        TGate::new(G::H, &[0]),
        p(G::P, 0, vec![Ang::param(0)]).inherit(),
        TGate::new(G::H, &[0]),
        p(G::P, 0, vec![lin(&[(1, 1.0)], FRAC_PI_2)]).inherit(),
    ]
}

fn half(i: usize) -> Ang {
    Ang::scaled(i, 0.5)
}

/// Clifford+T gates, as `(gate, inverted)`, composing to `P(mπ/4)`.
pub fn phase_gates(m: i64) -> Vec<(G, bool)> {
    match m.rem_euclid(8) {
        0 => vec![],
        1 => vec![(G::T, false)],
        2 => vec![(G::S, false)],
        3 => vec![(G::S, false), (G::T, false)],
        4 => vec![(G::Z, false)],
        5 => vec![(G::Z, false), (G::T, false)],
        6 => vec![(G::S, true)],
        _ => vec![(G::T, true)],
    }
}

#[allow(clippy::vec_init_then_push)]
fn rows() -> Vec<Row> {
    use Family::*;
    let mut r = vec![];

    // Bodies of quipgates.inc.
    r.push(row(QuipGates, "quipgates: iX = XSXSX", G::IX, 0, seq("X[0] S[0] X[0] S[0] X[0]")));
    r.push(row(
        QuipGates,
        "quipgates: omega = P(pi/4) X P(pi/4) X",
        G::Omega,
        0,
        vec![p(G::P, 0, vec![Ang::konst(FRAC_PI_4)]), TGate::new(G::X, &[0]), p(G::P, 0, vec![Ang::konst(FRAC_PI_4)]), TGate::new(G::X, &[0])],
    ));
    r.push(row(QuipGates, "quipgates: E = omega^3 S^3 H", G::E, 0, seq("Omega[0] Omega[0] Omega[0] S[0] S[0] S[0] H[0]")));
    r.push(row(QuipGates, "quipgates: W via controlled H", G::W, 0, seq("X[0]c1 X[1] H[1]c0 X[1] X[0]c1")));
    r.push(row(QuipGates, "quipgates: expZ(t) = Rz(2t)", G::ExpZ, 0, vec![p(G::Rz, 0, vec![Ang::scaled(0, 2.0)]).inherit()]));
    r.push(row(QuipGates, "quipgates: R(2pi/2^t) = P(2pi/2^t)", G::RGate, 0, vec![p(G::P, 0, vec![Ang::RPhase(0, 1.0)]).inherit()]));

    // OpenQASM gates written with Quipper gates.
    r.push(row(ToQuipper, "basis change: Rx = H expZ H", G::Rx, 0, generic::basis_change(G::Rx).unwrap()));
    r.push(row(ToQuipper, "basis change: Ry = XSH expZ HS'X", G::Ry, 0, generic::basis_change(G::Ry).unwrap()));
    r.push(row(ToQuipper, "basis change: Rz = expZ", G::Rz, 0, generic::basis_change(G::Rz).unwrap()));
    r.push(row(ToQuipper, "P = controlled global phase", G::P, 0, vec![gphase(Ang::param(0)).ctrl(0).inherit()]));
    r.push(row(
        ToQuipper,
        "u1 = e^(i l/2) Rz(l)",
        G::U1,
        0,
        vec![gphase(half(0)).inherit(), p(G::ExpZ, 0, vec![half(0)]).inherit()],
    ));
    r.push(row(
        ToQuipper,
        "u2 = e^(-i pi/4) Rz(p) S H S H S' Rz(l)",
        G::U2,
        0,
        cat(vec![
            vec![p(G::ExpZ, 0, vec![half(1)]).inherit()],
            all_inherit(seq("Sdg[0] H[0] S[0] H[0] S[0]")),
            vec![p(G::ExpZ, 0, vec![half(0)]).inherit(), gphase(Ang::konst(-FRAC_PI_4)).inherit()],
        ]),
    ));
    r.push(row(ToQuipper, "u3 = Rz(p) S H Rz(t) H S' Rz(l)", G::U3, 0, u3_body(0, half(0), half(1), half(2), &[])));
    r.push(row(
        ToQuipper,
        "U = e^(i(p+l)/2) u3",
        G::U,
        0,
        cat(vec![vec![gphase(half(2)).inherit(), gphase(half(1)).inherit()], u3_body(0, half(0), half(1), half(2), &[])]),
    ));
    r.push(row(
        ToQuipper,
        "cu = controlled e^(ig) U",
        G::CU,
        0,
        cat(vec![
            vec![gphase(Ang::param(3)).ctrl(0).inherit(), gphase(half(2)).ctrl(0).inherit(), gphase(half(1)).ctrl(0).inherit()],
            u3_body(1, half(0), half(1), half(2), &[0]),
        ]),
    ));

    // bkpgates.inc.
    r.push(row(BkpGates, "bkpgates: p = u1", G::P, 0, vec![p(G::U1, 0, vec![Ang::param(0)]).inherit()]));
    r.push(row(BkpGates, "bkpgates: sx = H S H", G::SX, 0, all_inherit(seq("H[0] S[0] H[0]"))));
    r.push(row(BkpGates, "bkpgates: swap = three CX", G::Swap, 0, all_inherit(seq("X[1]c0 X[0]c1 X[1]c0"))));
    r.push(row(BkpGates, "bkpgates: cswap = CX CCX CX", G::Swap, 1, all_inherit(seq("X[2]c1 X[1]c0c2 X[2]c1"))));
    for (tag, name) in [(G::Rx, "bkpgates: crx, D = H"), (G::Ry, "bkpgates: cry, D = H")] {
        r.push(row(BkpGates, name, tag, 1, all_inherit(generic::abc_control(tag).unwrap())));
    }
    r.push(row(BkpGates, "bkpgates: cp", G::P, 1, all_inherit(generic::abc_control(G::U1).unwrap())));
    r.push(row(
        BkpGates,
        "bkpgates: cu = u1(g) on control, cu3",
        G::CU,
        0,
        vec![
            p(G::U1, 0, vec![Ang::param(3)]).inherit(),
            TGate::new(G::U, &[1]).with(vec![Ang::param(0), Ang::param(1), Ang::param(2)]).ctrl(0).inherit(),
        ],
    ));
    r.push(row(BkpGates, "bkpgates: controlled gphase = u1", G::GPhase, 1, vec![p(G::U1, 0, vec![Ang::param(0)]).inherit()]));

    // Inverses.
    let neg = |i: usize| Ang::scaled(i, -1.0);
    for (a, b) in [(G::S, G::Sdg), (G::Sdg, G::S), (G::T, G::Tdg), (G::Tdg, G::T)] {
        r.push(row(Inverse, "inverse: Clifford+T pair", a, 0, vec![TGate::new(b, &[0]).inherit()]).inverted());
    }
    for tag in [G::Rx, G::Ry, G::Rz, G::P, G::U1, G::ExpZ] {
        r.push(row(Inverse, "inverse: negate angle", tag, 0, vec![p(tag, 0, vec![neg(0)]).inherit()]).inverted());
    }
    r.push(row(Inverse, "inverse: negate angle", G::GPhase, 0, vec![gphase(neg(0)).inherit()]).inverted());
    r.push(row(Inverse, "inverse: U(-t,-l,-p)", G::U, 0, vec![p(G::U, 0, vec![neg(0), neg(2), neg(1)]).inherit()]).inverted());
    r.push(row(Inverse, "inverse: u3(-t,-l,-p)", G::U3, 0, vec![p(G::U3, 0, vec![neg(0), neg(2), neg(1)]).inherit()]).inverted());
    r.push(row(
        Inverse,
        "inverse: u3(-pi/2,-l,-p)",
        G::U2,
        0,
        vec![p(G::U3, 0, vec![Ang::konst(-FRAC_PI_2), neg(1), neg(0)]).inherit()],
    )
    .inverted());
    r.push(row(
        Inverse,
        "inverse: cu(-t,-l,-p,-g)",
        G::CU,
        0,
        vec![TGate::new(G::CU, &[0, 1]).with(vec![neg(0), neg(2), neg(1), neg(3)]).inherit()],
    )
    .inverted());
    r.push(row(Inverse, "inverse: sx^3", G::SX, 0, all_inherit(seq("SX[0] X[0]"))).inverted());
    r.push(row(Inverse, "inverse: -iX", G::IX, 0, vec![gphase(Ang::konst(PI)).inherit(), TGate::new(G::IX, &[0]).inherit()]).inverted());
    r.push(row(Inverse, "inverse: omega^7", G::Omega, 0, vec![gphase(Ang::konst(7.0 * FRAC_PI_4)).inherit()]).inverted());
    r.push(row(
        Inverse,
        "inverse: e^(5i pi/4) S H",
        G::E,
        0,
        cat(vec![vec![gphase(Ang::konst(5.0 * FRAC_PI_4)).inherit()], all_inherit(seq("H[0] S[0]"))]),
    )
    .inverted());
    r.push(row(Inverse, "inverse: negated phase", G::RGate, 0, vec![p(G::P, 0, vec![Ang::RPhase(0, -1.0)]).inherit()]).inverted());

    // Single-control elimination on Quipper circuits.
    r.push(row(Control, "controlled omega = P(pi/4) on control", G::Omega, 1, vec![gphase(Ang::konst(FRAC_PI_4)).ctrl(0)]));
    r.push(row(Control, "controlled iX = CX, S on control", G::IX, 1, seq("X[1]c0 S[0]")));
    r.push(row(Control, "controlled S via CX and T", G::S, 1, seq("X[0]c1 Tdg[0] X[0]c1 T[0] T[1]")));
    r.push(row(Control, "controlled T with one ancilla", G::T, 1, seq(CT)).ancillas(1));
    r.push(row(Control, "controlled V = H C(S) H", G::SX, 1, seq("T[0] H[1] X[0]c1 Tdg[0] T[1] X[0]c1 H[1]")));
    r.push(row(Control, "controlled E", G::E, 1, seq("S[0] H[1] T[1] X[1]c0 Tdg[1] H[1] X[0]c1 T[0] Tdg[1] X[0]c1")));
    r.push(row(Control, "controlled expZ, D = I", G::ExpZ, 1, generic::abc_control(G::ExpZ).unwrap()));
    r.push(row(Control, "controlled W", G::W, 1, seq(CW)));
    r.push(row(
        Control,
        "controlled R = doubly-controlled phase",
        G::RGate,
        1,
        vec![gphase(Ang::RPhase(0, 1.0)).ctrl(0).ctrl(1)],
    ));
    r.push(row(Control, "doubly-controlled Z with four ancillas", G::Z, 2, seq(CCZ)).ancillas(4));
    r.push(row(Control, "Toffoli with four ancillas", G::X, 2, toffoli_rhs()).ancillas(4));
    r.push(row(Control, "doubly-controlled iX with one ancilla", G::IX, 2, ccix_rhs()).ancillas(1));
    r.push(row(LegacyControl, "controlled H (Amy-Maslov-Mosca-Roetteler)", G::H, 1, seq("S[1] H[1] T[1] X[1]c0 Tdg[1] H[1] Sdg[1]")));
    r.push(row(LegacyControl, "controlled swap", G::Swap, 1, seq(CSWAP)));

    // Lattice-surgery gate set.
    r.push(row(Lsc, "Y = iXZ", G::Y, 0, seq("Z[0] X[0]")).upto_phase());
    r.push(row(Lsc, "CZ = H CX H", G::Z, 1, seq("H[1] X[1]c0 H[1]")));
    r.push(row(Lsc, "CY = S CX S'", G::Y, 1, seq("Sdg[1] X[1]c0 S[1]")));
    r.push(row(Lsc, "controlled H (Amy-Maslov-Mosca-Roetteler)", G::H, 1, seq("S[1] H[1] T[1] X[1]c0 Tdg[1] H[1] Sdg[1]")));
    r.push(row(Lsc, "Toffoli, seven T gates", G::X, 2, seq(TOFFOLI_7T)));
    r.push(row(
        Lsc,
        "cu1 = u1 CX u1 CX u1",
        G::U1,
        1,
        vec![
            p(G::U1, 1, vec![half(0)]),
            TGate::new(G::X, &[1]).ctrl(0),
            p(G::U1, 1, vec![Ang::scaled(0, -0.5)]),
            TGate::new(G::X, &[1]).ctrl(0),
            p(G::U1, 0, vec![half(0)]),
        ],
    ));
    r.push(row(
        Lsc,
        "crz = rz CX rz CX",
        G::Rz,
        1,
        vec![
            p(G::Rz, 1, vec![half(0)]),
            TGate::new(G::X, &[1]).ctrl(0),
            p(G::Rz, 1, vec![Ang::scaled(0, -0.5)]),
            TGate::new(G::X, &[1]).ctrl(0),
        ],
    ));
    r.push(row(Lsc, "swap = three CX", G::Swap, 0, seq("X[1]c0 X[0]c1 X[1]c0")));

    // Generic constructions.
    r.push(row(Generic, "U through phase gates", G::U, 0, phase_form(Ang::scaled(0, -0.5))));
    r.push(row(Generic, "Toffoli-like reduction with CCiX", G::X, 3, generic::toffoli_like_reduce(G::X, 3, generic::ToffoliLike::CCiX).unwrap()).ancillas(1));
    r.push(row(Generic, "Toffoli-like reduction with CCX", G::Z, 3, generic::toffoli_like_reduce(G::Z, 3, generic::ToffoliLike::CCX).unwrap()).ancillas(1));
    r.push(row(Generic, "Toffoli-like reduction with CCiX", G::H, 2, generic::toffoli_like_reduce(G::H, 2, generic::ToffoliLike::CCiX).unwrap()).ancillas(1));
    r.push(row(Generic, "ABC control, D = I", G::Rz, 1, generic::abc_control(G::Rz).unwrap()));
    r.push(row(Generic, "ABC control, D = H", G::Rx, 1, generic::abc_control(G::Rx).unwrap()));
    for u in [G::X, G::Z, G::S] {
        let v = generic::square_root(u).unwrap();
        r.push(row(Generic, v_label(v), u, 2, generic::sqrt_control(u).unwrap()));
    }
    r
}

fn v_label(v: G) -> &'static str {
    match v {
        G::SX => "square-root control, V = sx",
        G::S => "square-root control, V = S",
        _ => "square-root control, V = T",
    }
}

pub(super) fn build() -> Vec<DecompRule> {
    let mut counts = std::collections::HashMap::new();
    rows()
        .into_iter()
        .map(|r| {
            let base = format!(
                "{}/{:?}{}{}",
                fam_tag(r.family),
                r.lhs,
                if r.ctrls > 0 { format!("/c{}", r.ctrls) } else { String::new() },
                if r.inverted { "/inv" } else { "" }
            );
            let n = counts.entry(base.clone()).or_insert(0usize);
            *n += 1;
            let id = if *n == 1 { base } else { format!("{base}#{n}") };
            DecompRule {
                id,
                family: r.family,
                source: r.source,
                lhs: r.lhs,
                ctrls: r.ctrls,
                inverted: r.inverted,
                ancillas: r.ancillas,
                rhs: r.rhs,
                phase_exact: r.phase_exact,
            }
        })
        .collect()
}

/// Printed variants of catalog identities that do not hold. Each must fail
/// [`verify_rule`](super::verify_rule).
pub fn negative_cases() -> Vec<DecompRule> {
    let mk = |id: &str, lhs: G, ctrls: usize, rhs: Vec<TGate>| DecompRule {
        id: id.into(),
        family: Family::Generic,
        source: "negative case",
        lhs,
        ctrls,
        inverted: false,
        ancillas: 0,
        rhs,
        phase_exact: true,
    };
    let pk = |v: f64| p(G::P, 0, vec![Ang::konst(v)]);
    let x = || TGate::new(G::X, &[0]);
    vec![
        mk("omega with P(-pi/4)", G::Omega, 0, vec![pk(FRAC_PI_4), x(), pk(-FRAC_PI_4), x()]),
        mk("sx = H S' H", G::SX, 0, seq("H[0] Sdg[0] H[0]")),
        mk("controlled V, conjugated phases", G::SX, 1, seq("Tdg[0] H[1] X[0]c1 T[0] Tdg[1] X[0]c1 H[1]")),
        mk("U = e^(it/2) P(p+pi/2) H P(t) H P(l-pi/2)", G::U, 0, phase_form(Ang::scaled(0, 0.5))),
        mk(
            "U = e^(it) e^(i(p+l)/2) Rz(p) S H Rz(t) H S' Rz(l)",
            G::U,
            0,
            cat(vec![
                vec![gphase(Ang::param(0)), gphase(half(1)), gphase(half(2))],
                u3_body(0, half(0), half(1), half(2), &[]),
            ]),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_tokens() {
        let g = tok("X[1]c0n2*");
        assert_eq!(g.tag, G::X);
        assert_eq!(g.targets, [1]);
        assert_eq!(g.controls, [(0, true), (2, false)]);
        assert!(g.inherit);
        assert_eq!(seq(CCZ).len(), 23);
    }

    #[test]
    fn ids_are_unique() {
        let rules = build();
        let mut ids: Vec<&str> = rules.iter().map(|r| r.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), rules.len());
    }
}
