//! OpenQASM programs: IR, validation and normalization.

mod lexer;
pub mod names;
mod parser;
mod writer;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::expr::Expr;
use crate::gate::GateKind;

pub use lexer::Pos;
pub use parser::{parse_angle_expr, parse_qasm, parse_qasm_with, ParseError, ParseOptions};
pub use writer::{write_qasm, WriteError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Version {
    V2,
    V3,
}

impl fmt::Display for Version {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Version::V2 => "2.0",
            Version::V3 => "3",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegKind {
    Qubit,
    Bit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: RegKind,
    pub name: String,
    /// `None` for a scalar declaration.
    pub size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operand {
    pub name: String,
    pub index: Option<usize>,
}

impl Operand {
    pub fn scalar(name: &str) -> Operand {
        Operand { name: name.to_string(), index: None }
    }

    pub fn at(name: &str, index: usize) -> Operand {
        Operand { name: name.to_string(), index: Some(index) }
    }
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}[{}]", self.name, i),
            None => f.write_str(&self.name),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Modifier {
    Ctrl,
    NegCtrl,
    Inv,
    Pow(i64),
}

impl Modifier {
    pub fn is_control(self) -> bool {
        matches!(self, Modifier::Ctrl | Modifier::NegCtrl)
    }
}

/// Ancilla-management functions from `quipfuncs.inc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuipFunc {
    QInit0,
    QInit1,
    QTerm0,
    QTerm1,
    QMeas,
    QDiscard,
    CInit0,
    CInit1,
    CTerm0,
    CTerm1,
    CDiscard,
}

impl QuipFunc {
    pub fn name(self) -> &'static str {
        match self {
            QuipFunc::QInit0 => "QInit0",
            QuipFunc::QInit1 => "QInit1",
            QuipFunc::QTerm0 => "QTerm0",
            QuipFunc::QTerm1 => "QTerm1",
            QuipFunc::QMeas => "QMeas",
            QuipFunc::QDiscard => "QDiscard",
            QuipFunc::CInit0 => "CInit0",
            QuipFunc::CInit1 => "CInit1",
            QuipFunc::CTerm0 => "CTerm0",
            QuipFunc::CTerm1 => "CTerm1",
            QuipFunc::CDiscard => "CDiscard",
        }
    }

    pub fn from_name(s: &str) -> Option<QuipFunc> {
        names::QUIPFUNCS.iter().copied().find(|f| f.name() == s)
    }

    /// Register kind of the argument, if the function takes one.
    pub fn arg_kind(self) -> Option<RegKind> {
        use QuipFunc::*;
        match self {
            QInit0 | QInit1 | QTerm0 | QTerm1 | QMeas | QDiscard => Some(RegKind::Qubit),
            CTerm0 | CTerm1 | CDiscard => Some(RegKind::Bit),
            CInit0 | CInit1 => None,
        }
    }

    /// Register kind of the assigned result, if any.
    pub fn result_kind(self) -> Option<RegKind> {
        match self {
            QuipFunc::QMeas | QuipFunc::CInit0 | QuipFunc::CInit1 => Some(RegKind::Bit),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Statement {
    Gate {
        mods: Vec<Modifier>,
        gate: GateKind<Expr>,
        operands: Vec<Operand>,
    },
    Measure {
        src: Operand,
        dst: Operand,
    },
    Reset(Operand),
    Call {
        func: QuipFunc,
        arg: Option<Operand>,
        result: Option<Operand>,
    },
}

impl Statement {
    pub fn gate(gate: GateKind<Expr>, operands: Vec<Operand>) -> Statement {
        Statement::Gate { mods: vec![], gate, operands }
    }

    pub fn operands(&self) -> Vec<&Operand> {
        match self {
            Statement::Gate { operands, .. } => operands.iter().collect(),
            Statement::Measure { src, dst } => vec![src, dst],
            Statement::Reset(o) => vec![o],
            Statement::Call { arg, result, .. } => result.iter().chain(arg.iter()).collect(),
        }
    }

    pub fn operands_mut(&mut self) -> Vec<&mut Operand> {
        match self {
            Statement::Gate { operands, .. } => operands.iter_mut().collect(),
            Statement::Measure { src, dst } => vec![src, dst],
            Statement::Reset(o) => vec![o],
            Statement::Call { arg, result, .. } => result.iter_mut().chain(arg.iter_mut()).collect(),
        }
    }

    pub fn control_count(&self) -> usize {
        match self {
            Statement::Gate { mods, .. } => mods.iter().filter(|m| m.is_control()).count(),
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QasmProgram {
    pub version: Version,
    pub includes: Vec<String>,
    pub decls: Vec<Decl>,
    pub stmts: Vec<Statement>,
}

impl QasmProgram {
    pub fn new(version: Version) -> QasmProgram {
        QasmProgram { version, includes: vec![], decls: vec![], stmts: vec![] }
    }

    pub fn decl(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name == name)
    }

    pub fn add_include(&mut self, name: &str) {
        if !self.includes.iter().any(|i| i == name) {
            self.includes.push(name.to_string());
        }
    }

    /// Every qubit (or bit) operand in declaration order, expanded by index.
    pub fn slots(&self, kind: RegKind) -> Vec<Operand> {
        let mut out = vec![];
        for d in self.decls.iter().filter(|d| d.kind == kind) {
            match d.size {
                None => out.push(Operand::scalar(&d.name)),
                Some(n) => out.extend((0..n).map(|i| Operand::at(&d.name, i))),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    /// Statement index, or `None` for header and declaration problems.
    pub stmt: Option<usize>,
    pub reason: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stmt {
            Some(i) => write!(f, "statement {}: {}", i, self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

/// Checks the IR invariants. An empty result means the program is valid.
pub fn validate(p: &QasmProgram) -> Vec<Diagnostic> {
    let mut out = vec![];
    let mut seen: HashMap<&str, &Decl> = HashMap::new();
    for d in &p.decls {
        if seen.insert(d.name.as_str(), d).is_some() {
            out.push(Diagnostic { stmt: None, reason: format!("duplicate declaration of `{}`", d.name) });
        }
        if d.size == Some(0) {
            out.push(Diagnostic { stmt: None, reason: format!("register `{}` has size zero", d.name) });
        }
    }
    for inc in &p.includes {
        if !names::known_include(inc, p.version) {
            out.push(Diagnostic { stmt: None, reason: format!("unknown include \"{inc}\"") });
        }
    }
    for (i, s) in p.stmts.iter().enumerate() {
        let mut diag = |reason: String| out.push(Diagnostic { stmt: Some(i), reason });
        let check = |o: &Operand, kind: RegKind| -> Option<String> {
            let Some(d) = seen.get(o.name.as_str()) else {
                return Some(format!("undeclared operand `{}`", o.name));
            };
            if d.kind != kind {
                let want = if kind == RegKind::Qubit { "qubit" } else { "bit" };
                return Some(format!("`{}` is not a {want}", o.name));
            }
            match (d.size, o.index) {
                (None, Some(_)) => Some(format!("`{}` is a scalar and cannot be indexed", o.name)),
                (Some(_), None) => Some(format!("broadcast over `{}` is not supported", o.name)),
                (Some(n), Some(k)) if k >= n => {
                    Some(format!("index {k} out of range for `{}[{n}]`", o.name))
                }
                _ => None,
            }
        };
        match s {
            Statement::Gate { mods, gate, operands } => {
                let ctrls = mods.iter().filter(|m| m.is_control()).count();
                let want = gate.arity() + ctrls;
                if operands.len() != want {
                    diag(format!("gate expects {want} operands, got {}", operands.len()));
                }
                for o in operands {
                    if let Some(r) = check(o, RegKind::Qubit) {
                        diag(r);
                    }
                }
                let uniq: HashSet<&Operand> = operands.iter().collect();
                if uniq.len() != operands.len() {
                    diag("an operand appears twice in one gate".into());
                }
                if p.version == Version::V2
                    && (mods.iter().any(|m| *m != Modifier::Ctrl)
                        || names::spell(p.version, &p.includes, gate.tag(), mods.len()).is_none())
                {
                    diag("modifiers are not available in OpenQASM 2.0".into());
                }
                if p.version == Version::V2 && gate.tag() == crate::gate::GateTag::GPhase {
                    diag("gphase is not available in OpenQASM 2.0".into());
                }
            }
            Statement::Measure { src, dst } => {
                if let Some(r) = check(src, RegKind::Qubit) {
                    diag(r);
                }
                if let Some(r) = check(dst, RegKind::Bit) {
                    diag(r);
                }
            }
            Statement::Reset(o) => {
                if let Some(r) = check(o, RegKind::Qubit) {
                    diag(r);
                }
            }
            Statement::Call { func, arg, result } => {
                if !p.includes.iter().any(|i| i == names::QUIPFUNCS_INC) {
                    diag(format!("`{}` requires quipfuncs.inc", func.name()));
                }
                match (func.arg_kind(), arg) {
                    (Some(k), Some(o)) => {
                        if let Some(r) = check(o, k) {
                            diag(r);
                        }
                    }
                    (None, None) => {}
                    _ => diag(format!("wrong argument count for `{}`", func.name())),
                }
                match (func.result_kind(), result) {
                    (Some(k), Some(o)) => {
                        if let Some(r) = check(o, k) {
                            diag(r);
                        }
                    }
                    (None, None) => {}
                    (Some(_), None) => diag(format!("result of `{}` must be assigned", func.name())),
                    (None, Some(_)) => diag(format!("`{}` returns no value", func.name())),
                }
            }
        }
    }
    out
}

/// Canonical form: declarations ordered by first use (unused ones last, in
/// their original order) and includes sorted.
pub fn normalize(p: &QasmProgram) -> QasmProgram {
    let order = first_use_order(p);
    let mut decls: Vec<Decl> = order.iter().filter_map(|n| p.decl(n).cloned()).collect();
    for d in &p.decls {
        if !order.contains(&d.name) {
            decls.push(d.clone());
        }
    }
    let mut includes = p.includes.clone();
    includes.sort();
    includes.dedup();
    QasmProgram { version: p.version, includes, decls, stmts: p.stmts.clone() }
}

fn first_use_order(p: &QasmProgram) -> Vec<String> {
    let mut order: Vec<String> = vec![];
    for s in &p.stmts {
        for o in s.operands() {
            if !order.contains(&o.name) {
                order.push(o.name.clone());
            }
        }
    }
    order
}

/// Normal form with registers renamed `q0, q1, ...` and `c0, c1, ...` in
/// order of first use.
pub fn normalize_alpha(p: &QasmProgram) -> QasmProgram {
    let mut n = normalize(p);
    let mut map: BTreeMap<String, String> = BTreeMap::new();
    let (mut qi, mut ci) = (0, 0);
    for d in &mut n.decls {
        let fresh = match d.kind {
            RegKind::Qubit => {
                qi += 1;
                format!("q{}", qi - 1)
            }
            RegKind::Bit => {
                ci += 1;
                format!("c{}", ci - 1)
            }
        };
        map.insert(d.name.clone(), fresh.clone());
        d.name = fresh;
    }
    for s in &mut n.stmts {
        for o in s.operands_mut() {
            if let Some(f) = map.get(&o.name) {
                o.name = f.clone();
            }
        }
    }
    n
}

pub fn structural_eq(a: &QasmProgram, b: &QasmProgram, alpha: bool) -> bool {
    if alpha {
        normalize_alpha(a) == normalize_alpha(b)
    } else {
        normalize(a) == normalize(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prog() -> QasmProgram {
        let mut p = QasmProgram::new(Version::V3);
        p.includes.push("stdgates.inc".into());
        p.decls.push(Decl { kind: RegKind::Qubit, name: "x".into(), size: Some(3) });
        p.decls.push(Decl { kind: RegKind::Qubit, name: "phi".into(), size: None });
        p.stmts.push(Statement::Gate {
            mods: vec![Modifier::Ctrl],
            gate: GateKind::T,
            operands: vec![Operand::at("x", 2), Operand::scalar("phi")],
        });
        p
    }

    #[test]
    fn valid_program_has_no_diagnostics() {
        assert!(validate(&prog()).is_empty());
    }

    #[test]
    fn undeclared_and_arity() {
        let mut p = prog();
        p.stmts.push(Statement::gate(GateKind::H, vec![Operand::scalar("q")]));
        p.stmts.push(Statement::Gate {
            mods: vec![Modifier::Ctrl],
            gate: GateKind::T,
            operands: vec![Operand::scalar("phi")],
        });
        let d = validate(&p);
        assert_eq!(d.len(), 2);
        assert!(d[0].reason.contains("undeclared operand"));
        assert_eq!(d[1].stmt, Some(2));
    }

    #[test]
    fn normalize_orders_by_first_use() {
        let n = normalize(&prog());
        assert_eq!(n.decls[0].name, "x");
        let mut p = prog();
        p.decls.swap(0, 1);
        assert_eq!(normalize(&p), n);
        assert_eq!(normalize(&n), n);
    }

    #[test]
    fn alpha_equivalence_is_opt_in() {
        let a = prog();
        let mut b = prog();
        b.decls[0].name = "y".into();
        if let Statement::Gate { operands, .. } = &mut b.stmts[0] {
            operands[0].name = "y".into();
        }
        assert!(!structural_eq(&a, &b, false));
        assert!(structural_eq(&a, &b, true));
    }
}
