//! Gate spellings per include file.
//!
//! A spelling maps to a gate tag plus the number of positive controls the
//! name implies (`ccx` is `X` with two controls). The first spelling listed
//! for a `(tag, controls)` pair is the one the writer prefers.

use crate::gate::GateTag;

use super::{QuipFunc, Version};

pub type Spelling = (&'static str, GateTag, usize);

use GateTag as G;

pub const BUILTIN_V3: &[Spelling] = &[("U", G::U, 0), ("gphase", G::GPhase, 0)];

pub const BUILTIN_V2: &[Spelling] = &[("U", G::U, 0), ("CX", G::X, 1)];

pub const STDGATES: &[Spelling] = &[
    ("p", G::P, 0),
    ("x", G::X, 0),
    ("y", G::Y, 0),
    ("z", G::Z, 0),
    ("h", G::H, 0),
    ("s", G::S, 0),
    ("sdg", G::Sdg, 0),
    ("t", G::T, 0),
    ("tdg", G::Tdg, 0),
    ("sx", G::SX, 0),
    ("rx", G::Rx, 0),
    ("ry", G::Ry, 0),
    ("rz", G::Rz, 0),
    ("cx", G::X, 1),
    ("cy", G::Y, 1),
    ("cz", G::Z, 1),
    ("cp", G::P, 1),
    ("crx", G::Rx, 1),
    ("cry", G::Ry, 1),
    ("crz", G::Rz, 1),
    ("ch", G::H, 1),
    ("swap", G::Swap, 0),
    ("ccx", G::X, 2),
    ("cswap", G::Swap, 1),
    ("cu", G::CU, 0),
    ("CX", G::X, 1),
    ("phase", G::P, 0),
    ("cphase", G::P, 1),
    ("u1", G::U1, 0),
    ("u2", G::U2, 0),
    ("u3", G::U3, 0),
];

pub const QELIB1: &[Spelling] = &[
    ("u3", G::U3, 0),
    ("u2", G::U2, 0),
    ("u1", G::U1, 0),
    ("cx", G::X, 1),
    ("x", G::X, 0),
    ("y", G::Y, 0),
    ("z", G::Z, 0),
    ("h", G::H, 0),
    ("s", G::S, 0),
    ("sdg", G::Sdg, 0),
    ("t", G::T, 0),
    ("tdg", G::Tdg, 0),
    ("rx", G::Rx, 0),
    ("ry", G::Ry, 0),
    ("rz", G::Rz, 0),
    ("cz", G::Z, 1),
    ("cy", G::Y, 1),
    ("ch", G::H, 1),
    ("ccx", G::X, 2),
    ("crz", G::Rz, 1),
    ("cu1", G::U1, 1),
    ("cu3", G::U, 1),
];

pub const QUIPGATES: &[Spelling] = &[
    ("quip_ix", G::IX, 0),
    ("quip_omega", G::Omega, 0),
    ("quip_e", G::E, 0),
    ("quip_w", G::W, 0),
    ("quip_expz", G::ExpZ, 0),
    ("quip_rgate", G::RGate, 0),
];

pub const BKPGATES: &[Spelling] = &[
    ("p", G::P, 0),
    ("sx", G::SX, 0),
    ("swap", G::Swap, 0),
    ("cswap", G::Swap, 1),
    ("crx", G::Rx, 1),
    ("cry", G::Ry, 1),
    ("cp", G::P, 1),
];

pub const QUIPFUNCS: &[QuipFunc] = &[
    QuipFunc::QInit0,
    QuipFunc::QInit1,
    QuipFunc::QTerm0,
    QuipFunc::QTerm1,
    QuipFunc::QMeas,
    QuipFunc::QDiscard,
    QuipFunc::CInit0,
    QuipFunc::CInit1,
    QuipFunc::CTerm0,
    QuipFunc::CTerm1,
    QuipFunc::CDiscard,
];

pub const STDGATES_INC: &str = "stdgates.inc";
pub const QELIB1_INC: &str = "qelib1.inc";
pub const QUIPGATES_INC: &str = "quipgates.inc";
pub const QUIPFUNCS_INC: &str = "quipfuncs.inc";
pub const BKPGATES_INC: &str = "bkpgates.inc";

/// Includes the front end understands, with the versions they may appear in.
pub fn known_include(name: &str, version: Version) -> bool {
    match name {
        STDGATES_INC => version == Version::V3,
        QELIB1_INC => version == Version::V2,
        QUIPGATES_INC | QUIPFUNCS_INC => version == Version::V3,
        BKPGATES_INC => true,
        _ => false,
    }
}

/// Gate spellings an include contributes.
pub fn include_gates(name: &str) -> &'static [Spelling] {
    match name {
        STDGATES_INC => STDGATES,
        QELIB1_INC => QELIB1,
        QUIPGATES_INC => QUIPGATES,
        BKPGATES_INC => BKPGATES,
        _ => &[],
    }
}

pub fn builtins(version: Version) -> &'static [Spelling] {
    match version {
        Version::V2 => BUILTIN_V2,
        Version::V3 => BUILTIN_V3,
    }
}

/// Every spelling visible to a program with the given header.
pub fn visible<'a>(version: Version, includes: &'a [String]) -> impl Iterator<Item = Spelling> + 'a {
    builtins(version)
        .iter()
        .copied()
        .chain(includes.iter().flat_map(|i| include_gates(i).iter().copied()))
}

pub fn lookup(version: Version, includes: &[String], name: &str) -> Option<(GateTag, usize)> {
    visible(version, includes).find(|s| s.0 == name).map(|s| (s.1, s.2))
}

/// Preferred spelling for a tag with exactly `ctrls` implied controls.
/// Included names win over built-in ones.
pub fn spell(version: Version, includes: &[String], tag: GateTag, ctrls: usize) -> Option<&'static str> {
    includes
        .iter()
        .flat_map(|i| include_gates(i).iter().copied())
        .chain(builtins(version).iter().copied())
        .find(|s| s.1 == tag && s.2 == ctrls)
        .map(|s| s.0)
}

/// Spelling from any table, ignoring includes. Used to pick which include a
/// generated program needs.
pub fn include_for(version: Version, tag: GateTag, ctrls: usize) -> Option<&'static str> {
    if builtins(version).iter().any(|s| s.1 == tag && s.2 == ctrls) {
        return Some("");
    }
    let order: &[&str] = match version {
        Version::V3 => &[STDGATES_INC, QUIPGATES_INC],
        Version::V2 => &[QELIB1_INC, BKPGATES_INC],
    };
    order
        .iter()
        .copied()
        .find(|inc| include_gates(inc).iter().any(|s| s.1 == tag && s.2 == ctrls))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_have_no_duplicate_names() {
        for table in [STDGATES, QELIB1, QUIPGATES, BKPGATES, BUILTIN_V2, BUILTIN_V3] {
            for (i, a) in table.iter().enumerate() {
                assert!(table[i + 1..].iter().all(|b| b.0 != a.0), "{}", a.0);
            }
        }
    }

    #[test]
    fn name_kind_name_round_trips() {
        for v in [Version::V2, Version::V3] {
            let incs: Vec<String> = match v {
                Version::V2 => vec![QELIB1_INC.into(), BKPGATES_INC.into()],
                Version::V3 => vec![STDGATES_INC.into(), QUIPGATES_INC.into()],
            };
            for s in visible(v, &incs) {
                let preferred = spell(v, &incs, s.1, s.2).unwrap();
                assert_eq!(lookup(v, &incs, preferred), Some((s.1, s.2)));
            }
        }
    }

    #[test]
    fn every_tag_is_spellable_in_v3() {
        let incs = vec![STDGATES_INC.to_string(), QUIPGATES_INC.to_string()];
        for tag in GateTag::ALL {
            assert!(spell(Version::V3, &incs, tag, 0).is_some(), "{tag:?}");
        }
    }
}
