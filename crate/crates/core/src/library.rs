//! The bundled include files and include resolution.
//!
//! `quipgates.inc` and `bkpgates.inc` are rendered from the decomposition
//! catalog; the copies under `lib/` are checked against the rendering so the
//! two cannot drift.

use std::fmt::Write as _;
use std::path::PathBuf;

use crate::decompose::{catalog, DecompRule, Family};
use crate::expr::angle_literal;
use crate::gate::{Angle, GateTag};
use crate::qasm::names::{self, BKPGATES_INC, QELIB1_INC, QUIPFUNCS_INC, QUIPGATES_INC, STDGATES_INC};
use crate::qasm::Version;

pub const QUIPGATES_TEXT: &str = include_str!("../lib/quipgates.inc");
pub const QUIPFUNCS_TEXT: &str = include_str!("../lib/quipfuncs.inc");
pub const BKPGATES_TEXT: &str = include_str!("../lib/bkpgates.inc");

/// Environment variable with extra include directories, `:`-separated.
pub const INCLUDE_PATH_VAR: &str = "LINGUA_INCLUDE_PATH";

pub fn is_bundled(name: &str) -> bool {
    matches!(name, QUIPGATES_INC | QUIPFUNCS_INC | BKPGATES_INC)
}

pub fn bundled(name: &str) -> Option<&'static str> {
    match name {
        QUIPGATES_INC => Some(QUIPGATES_TEXT),
        QUIPFUNCS_INC => Some(QUIPFUNCS_TEXT),
        BKPGATES_INC => Some(BKPGATES_TEXT),
        _ => None,
    }
}

/// Directories from [`INCLUDE_PATH_VAR`].
pub fn env_include_paths() -> Vec<PathBuf> {
    std::env::var_os(INCLUDE_PATH_VAR)
        .map(|v| std::env::split_paths(&v).filter(|p| !p.as_os_str().is_empty()).collect())
        .unwrap_or_default()
}

/// Text of a bundled include: the first copy found on `paths`, otherwise
/// the built-in one.
pub fn resolve_include(name: &str, paths: &[PathBuf]) -> Result<String, String> {
    for dir in paths {
        let p = dir.join(name);
        if p.is_file() {
            return std::fs::read_to_string(&p).map_err(|e| format!("cannot read {}: {e}", p.display()));
        }
    }
    bundled(name).map(str::to_string).ok_or_else(|| format!("include `{name}` not found"))
}

/// Names introduced by `gate` and `def` declarations.
pub fn declared_names(text: &str) -> Vec<String> {
    let mut out = vec![];
    for line in text.lines() {
        let line = line.split("//").next().unwrap_or("").trim_start();
        for kw in ["gate ", "def "] {
            if let Some(rest) = line.strip_prefix(kw) {
                let name: String = rest.trim_start().chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
                if !name.is_empty() {
                    out.push(name);
                }
            }
        }
    }
    out
}

/// Symbolic angle used to print gate bodies.
#[derive(Clone, Debug, PartialEq)]
struct Sym {
    text: String,
    atomic: bool,
}

impl Sym {
    fn var(name: &str) -> Sym {
        Sym { text: name.into(), atomic: true }
    }

    fn compound(text: String) -> Sym {
        Sym { text, atomic: false }
    }

    fn wrapped(&self) -> String {
        if self.atomic {
            self.text.clone()
        } else {
            format!("({})", self.text)
        }
    }
}

impl Angle for Sym {
    fn value(&self) -> f64 {
        f64::NAN
    }

    fn constant(v: f64) -> Self {
        let text = angle_literal(v).to_string();
        let atomic = !text.contains(' ') && !text.starts_with('-');
        Sym { text, atomic }
    }

    fn neg(&self) -> Self {
        Sym::compound(format!("-{}", self.wrapped()))
    }

    fn scale(&self, k: f64) -> Self {
        if k == 1.0 {
            return self.clone();
        }
        if k == -1.0 {
            return self.neg();
        }
        let m = k.abs();
        let inv = 1.0 / m;
        let body = if inv.fract() == 0.0 && inv > 1.0 {
            format!("{} / {inv}", self.wrapped())
        } else {
            format!("{m} * {}", self.wrapped())
        };
        if k < 0.0 {
            Sym::compound(format!("-({body})"))
        } else {
            Sym::compound(body)
        }
    }

    fn add(&self, other: &Self) -> Self {
        let Some(rest) = other.text.strip_prefix('-') else {
            return Sym::compound(format!("{} + {}", self.text, other.text));
        };
        let inner = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')'));
        match inner {
            Some(i) if !i.contains(" + ") && !i.contains(" - ") => Sym::compound(format!("{} - {i}", self.text)),
            _ => Sym::compound(format!("{} - {rest}", self.text)),
        }
    }

    fn rgate_phase(&self) -> Self {
        Sym::compound(format!("2 * pi / 2 ** {}", self.wrapped()))
    }
}

const PARAM_NAMES: [&str; 4] = ["theta", "phi", "lambda", "gamma"];
const WIRE_NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn param_names(tag: GateTag) -> Vec<&'static str> {
    match tag {
        GateTag::U2 => vec!["phi", "lambda"],
        GateTag::RGate => vec!["k"],
        t => PARAM_NAMES[..t.param_count()].to_vec(),
    }
}

fn render_rule(out: &mut String, name: &str, rule: &DecompRule, version: Version, includes: &[String]) {
    let pnames = param_names(rule.lhs);
    let params: Vec<Sym> = pnames.iter().map(|n| Sym::var(n)).collect();
    let wires: Vec<usize> = (0..rule.wires()).collect();
    let head = if pnames.is_empty() { name.to_string() } else { format!("{name}({})", pnames.join(", ")) };
    let args: Vec<&str> = WIRE_NAMES[..rule.main_wires()].to_vec();
    writeln!(out, "gate {head} {} {{", args.join(", ")).unwrap();
    for g in rule.instantiate(&params, &wires, &[]) {
        let ctrls = g.controls.len();
        let all_pos = g.controls.iter().all(|c| c.1);
        let (spelled, implied) = (0..=ctrls)
            .rev()
            .filter(|&k| all_pos || k == 0)
            .find_map(|k| names::spell(version, includes, g.gate.tag(), k).map(|n| (n, k)))
            .unwrap_or_else(|| panic!("no spelling for {:?} in {name}", g.gate.tag()));
        let mut line = String::from("  ");
        if g.inverted {
            line.push_str("inv @ ");
        }
        for &(_, pos) in &g.controls[..ctrls - implied] {
            line.push_str(if pos { "ctrl @ " } else { "negctrl @ " });
        }
        line.push_str(spelled);
        let ps = g.gate.params();
        if !ps.is_empty() {
            let ps: Vec<&str> = ps.iter().map(|s| s.text.as_str()).collect();
            write!(line, "({})", ps.join(", ")).unwrap();
        }
        let ops: Vec<&str> = g.controls.iter().map(|c| c.0).chain(g.targets.iter().copied()).map(|w| WIRE_NAMES[w]).collect();
        if !ops.is_empty() {
            write!(line, " {}", ops.join(", ")).unwrap();
        }
        writeln!(out, "{line};").unwrap();
    }
    out.push_str("}\n");
}

/// `quipgates.inc` as rendered from the catalog.
pub fn render_quipgates() -> String {
    let mut out = String::from("// Quipper gates without an OpenQASM 3 standard gate.\ninclude \"stdgates.inc\";\n\n");
    let mut incs = vec![STDGATES_INC.to_string()];
    for &(name, tag, _) in names::QUIPGATES {
        let rule = catalog()
            .iter()
            .find(|r| r.family == Family::QuipGates && r.lhs == tag)
            .expect("every quipgates entry has a body");
        render_rule(&mut out, name, rule, Version::V3, &incs);
        incs.push(QUIPGATES_INC.to_string());
    }
    out
}

/// `bkpgates.inc` as rendered from the catalog.
pub fn render_bkpgates() -> String {
    let mut out = String::from("// OpenQASM 3 standard gates missing from qelib1.inc.\n\n");
    let incs = vec![QELIB1_INC.to_string()];
    for &(name, tag, ctrls) in names::BKPGATES {
        let rule = catalog()
            .iter()
            .find(|r| r.family == Family::BkpGates && r.lhs == tag && r.ctrls == ctrls)
            .expect("every bkpgates entry has a body");
        render_rule(&mut out, name, rule, Version::V2, &incs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qasm::QuipFunc;

    #[test]
    fn bundled_files_match_catalog() {
        assert_eq!(QUIPGATES_TEXT, render_quipgates());
        assert_eq!(BKPGATES_TEXT, render_bkpgates());
    }

    /// Rewrites `lib/` from the catalog: `cargo test -- --ignored regenerate`.
    #[test]
    #[ignore]
    fn regenerate_bundled_files() {
        let lib = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("lib");
        std::fs::write(lib.join(QUIPGATES_INC), render_quipgates()).unwrap();
        std::fs::write(lib.join(BKPGATES_INC), render_bkpgates()).unwrap();
    }

    #[test]
    fn quipfuncs_declares_every_function() {
        let got = declared_names(QUIPFUNCS_TEXT);
        let want: Vec<String> = names::QUIPFUNCS.iter().map(|f| f.name().to_string()).collect();
        assert_eq!(got, want);
        assert!(got.iter().all(|n| QuipFunc::from_name(n).is_some()));
    }

    #[test]
    fn declared_names_skip_comments() {
        let t = "// gate fake q {}\ngate quip_ix q { x q; }\ndef QMeas(qubit q) -> bit { return measure q; }\n";
        assert_eq!(declared_names(t), ["quip_ix", "QMeas"]);
    }

    #[test]
    fn search_path_overrides_bundled_copy() {
        let dir = std::env::temp_dir().join(format!("qasmquip-inc-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(dir.join(QUIPGATES_INC), "gate quip_ix q { x q; }\n").unwrap();
        let text = resolve_include(QUIPGATES_INC, std::slice::from_ref(&dir)).unwrap();
        assert_eq!(declared_names(&text), ["quip_ix"]);
        assert_eq!(resolve_include(QUIPFUNCS_INC, std::slice::from_ref(&dir)).unwrap(), QUIPFUNCS_TEXT);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn symbolic_angles() {
        let t = Sym::var("theta");
        assert_eq!(t.scale(0.5).text, "theta / 2");
        assert_eq!(t.scale(-0.5).text, "-(theta / 2)");
        assert_eq!(Sym::var("lambda").add(&Sym::constant(-std::f64::consts::FRAC_PI_2)).text, "lambda - pi / 2");
    }
}
