use std::collections::HashMap;
use std::path::PathBuf;

use thiserror::Error;

use crate::expr::{BinOp, Constant, Expr, Func};
use crate::gate::{GateKind, GateTag};
use crate::library;

use super::lexer::{lex, Pos, Tok};
use super::names;
use super::{validate, Decl, Modifier, Operand, QasmProgram, QuipFunc, RegKind, Statement, Version};

#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    /// Required version; a header naming another version is an error.
    pub dialect: Option<Version>,
    /// Directories searched for library includes before the bundled copies.
    pub include_paths: Vec<PathBuf>,
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum ParseError {
    #[error("{pos}: syntax error: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("{pos}: {msg}")]
    Dialect { pos: Pos, msg: String },
    #[error("{pos}: unknown gate `{name}`")]
    UnknownGate { pos: Pos, name: String },
    #[error("{pos}: unknown include \"{name}\"")]
    UnknownInclude { pos: Pos, name: String },
    #[error("{pos}: {msg}")]
    Invalid { pos: Pos, msg: String },
}

impl ParseError {
    pub fn pos(&self) -> Pos {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::Dialect { pos, .. }
            | ParseError::UnknownGate { pos, .. }
            | ParseError::UnknownInclude { pos, .. }
            | ParseError::Invalid { pos, .. } => *pos,
        }
    }
}

pub fn parse_qasm(text: &str) -> Result<QasmProgram, ParseError> {
    parse_qasm_with(text, &ParseOptions::default())
}

pub fn parse_qasm_with(text: &str, opts: &ParseOptions) -> Result<QasmProgram, ParseError> {
    let toks = lex(text).map_err(|e| ParseError::Syntax { pos: e.pos, msg: e.msg })?;
    let mut p = Parser {
        toks,
        i: 0,
        opts,
        prog: QasmProgram::new(Version::V3),
        gates: HashMap::new(),
        funcs: false,
        positions: vec![],
    };
    p.program()?;
    let diags = validate(&p.prog);
    if let Some(d) = diags.first() {
        let pos = d.stmt.map(|i| p.positions[i]).unwrap_or_default();
        return Err(ParseError::Invalid { pos, msg: d.reason.clone() });
    }
    Ok(p.prog)
}

/// Parses and evaluates a constant angle expression.
pub fn parse_angle_expr(text: &str) -> Result<f64, ParseError> {
    let toks = lex(text).map_err(|e| ParseError::Syntax { pos: e.pos, msg: e.msg })?;
    let opts = ParseOptions::default();
    let mut p = Parser {
        toks,
        i: 0,
        opts: &opts,
        prog: QasmProgram::new(Version::V3),
        gates: HashMap::new(),
        funcs: false,
        positions: vec![],
    };
    let pos = p.pos();
    let e = p.expr()?;
    p.expect(&Tok::Eof)?;
    e.eval().map_err(|err| ParseError::Invalid { pos, msg: err.to_string() })
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    opts: &'a ParseOptions,
    prog: QasmProgram,
    gates: HashMap<String, (GateTag, usize)>,
    funcs: bool,
    positions: Vec<Pos>,
}

fn is_reserved(name: &str) -> bool {
    matches!(
        name,
        "OPENQASM"
            | "include"
            | "qubit"
            | "bit"
            | "qreg"
            | "creg"
            | "measure"
            | "reset"
            | "ctrl"
            | "negctrl"
            | "inv"
            | "pow"
            | "gate"
            | "pi"
            | "tau"
            | "euler"
    )
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let j = (self.i + k).min(self.toks.len() - 1);
        &self.toks[j].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.i].0.clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn syntax<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, t: &Tok) -> Result<(), ParseError> {
        if self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.syntax(&t.to_string())
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.syntax("identifier"),
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        match self.peek().clone() {
            Tok::Num(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                let pos = self.pos();
                self.bump();
                s.parse().map_err(|_| ParseError::Syntax { pos, msg: format!("integer `{s}` too large") })
            }
            _ => self.syntax("integer"),
        }
    }

    fn v3_only(&self, pos: Pos, what: &str) -> Result<(), ParseError> {
        if self.prog.version == Version::V2 {
            Err(ParseError::Dialect { pos, msg: format!("{what} is not available in OpenQASM 2.0") })
        } else {
            Ok(())
        }
    }

    fn program(&mut self) -> Result<(), ParseError> {
        let pos = self.pos();
        if self.is_kw("OPENQASM") {
            self.bump();
            let v = match self.bump() {
                Tok::Num(s) if s == "2.0" || s == "2" => Version::V2,
                Tok::Num(s) if s == "3" || s == "3.0" => Version::V3,
                t => {
                    return Err(ParseError::Dialect { pos, msg: format!("unsupported version {t}") })
                }
            };
            self.expect(&Tok::Semi)?;
            self.prog.version = v;
        }
        if let Some(d) = self.opts.dialect {
            if d != self.prog.version {
                return Err(ParseError::Dialect {
                    pos,
                    msg: format!("expected OpenQASM {d}, found OpenQASM {}", self.prog.version),
                });
            }
        }
        for s in names::builtins(self.prog.version) {
            self.gates.insert(s.0.to_string(), (s.1, s.2));
        }
        while *self.peek() != Tok::Eof {
            self.statement()?;
        }
        Ok(())
    }

    fn include(&mut self) -> Result<(), ParseError> {
        let pos = self.pos();
        self.bump();
        let name = match self.bump() {
            Tok::Str(s) => s,
            _ => return Err(ParseError::Syntax { pos, msg: "expected include file name".into() }),
        };
        self.expect(&Tok::Semi)?;
        if !names::known_include(&name, self.prog.version) {
            return Err(ParseError::UnknownInclude { pos, name });
        }
        if self.prog.includes.contains(&name) {
            return Ok(());
        }
        let table = names::include_gates(&name);
        if library::is_bundled(&name) {
            let text = library::resolve_include(&name, &self.opts.include_paths)
                .map_err(|msg| ParseError::Invalid { pos, msg })?;
            for decl in library::declared_names(&text) {
                if name == names::QUIPFUNCS_INC {
                    if QuipFunc::from_name(&decl).is_none() {
                        return Err(ParseError::Invalid {
                            pos,
                            msg: format!("{name} declares `{decl}`, which has no built-in meaning"),
                        });
                    }
                    continue;
                }
                match table.iter().find(|s| s.0 == decl) {
                    Some(s) => {
                        self.gates.insert(s.0.to_string(), (s.1, s.2));
                    }
                    None => {
                        return Err(ParseError::Invalid {
                            pos,
                            msg: format!("{name} declares `{decl}`, which has no built-in meaning"),
                        })
                    }
                }
            }
        } else {
            for s in table {
                self.gates.insert(s.0.to_string(), (s.1, s.2));
            }
        }
        if name == names::QUIPFUNCS_INC {
            self.funcs = true;
        }
        self.prog.includes.push(name);
        Ok(())
    }

    fn declare(&mut self, pos: Pos, kind: RegKind, name: String, size: Option<usize>) -> Result<(), ParseError> {
        if is_reserved(&name) {
            return Err(ParseError::Syntax { pos, msg: format!("`{name}` is reserved") });
        }
        if self.prog.decl(&name).is_some() {
            return Err(ParseError::Invalid { pos, msg: format!("duplicate declaration of `{name}`") });
        }
        if size == Some(0) {
            return Err(ParseError::Invalid { pos, msg: format!("register `{name}` has size zero") });
        }
        self.prog.decls.push(Decl { kind, name, size });
        Ok(())
    }

    fn push(&mut self, pos: Pos, s: Statement) {
        self.positions.push(pos);
        self.prog.stmts.push(s);
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        let pos = self.pos();
        let Tok::Ident(head) = self.peek().clone() else {
            return self.syntax("statement");
        };
        match head.as_str() {
            "include" => self.include(),
            "qubit" | "bit" => {
                self.v3_only(pos, "`qubit`/`bit` declaration")?;
                self.bump();
                let kind = if head == "qubit" { RegKind::Qubit } else { RegKind::Bit };
                let size = if *self.peek() == Tok::LBracket {
                    self.bump();
                    let n = self.uint()?;
                    self.expect(&Tok::RBracket)?;
                    Some(n)
                } else {
                    None
                };
                let name = self.ident()?;
                self.declare(pos, kind, name.clone(), size)?;
                if kind == RegKind::Bit && *self.peek() == Tok::Eq {
                    self.bump();
                    let dst = Operand { name, index: None };
                    self.assignment(pos, dst)?;
                    return Ok(());
                }
                self.expect(&Tok::Semi)
            }
            "qreg" | "creg" => {
                self.bump();
                let name = self.ident()?;
                self.expect(&Tok::LBracket)?;
                let n = self.uint()?;
                self.expect(&Tok::RBracket)?;
                self.expect(&Tok::Semi)?;
                let kind = if head == "qreg" { RegKind::Qubit } else { RegKind::Bit };
                self.declare(pos, kind, name, Some(n))
            }
            "measure" => {
                self.bump();
                let src = self.operand()?;
                self.expect(&Tok::Arrow)?;
                let dst = self.operand()?;
                self.expect(&Tok::Semi)?;
                self.push(pos, Statement::Measure { src, dst });
                Ok(())
            }
            "reset" => {
                self.bump();
                let o = self.operand()?;
                self.expect(&Tok::Semi)?;
                self.push(pos, Statement::Reset(o));
                Ok(())
            }
            "gate" | "def" | "opaque" | "if" | "for" | "while" | "barrier" | "input" | "output" => {
                Err(ParseError::Syntax { pos, msg: format!("`{head}` statements are not supported") })
            }
            _ => {
                if let Some(f) = QuipFunc::from_name(&head) {
                    if *self.peek_at(1) == Tok::LParen {
                        return self.call(pos, f, None);
                    }
                }
                if matches!(self.peek_at(1), Tok::Eq | Tok::LBracket) {
                    let dst = self.operand()?;
                    self.expect(&Tok::Eq)?;
                    return self.assignment(pos, dst);
                }
                self.gate_application(pos)
            }
        }
    }

    /// The right-hand side of `dst = ...;`.
    fn assignment(&mut self, pos: Pos, dst: Operand) -> Result<(), ParseError> {
        self.v3_only(pos, "assignment")?;
        if self.is_kw("measure") {
            self.bump();
            let src = self.operand()?;
            self.expect(&Tok::Semi)?;
            self.push(pos, Statement::Measure { src, dst });
            return Ok(());
        }
        let fpos = self.pos();
        let name = self.ident()?;
        match QuipFunc::from_name(&name) {
            Some(f) if f.result_kind().is_some() => self.call(pos, f, Some(dst)),
            Some(f) => Err(ParseError::Invalid { pos: fpos, msg: format!("`{}` returns no value", f.name()) }),
            None => Err(ParseError::Syntax {
                pos: fpos,
                msg: format!("expected `measure` or a value-returning function, found `{name}`"),
            }),
        }
    }

    fn call(&mut self, pos: Pos, f: QuipFunc, result: Option<Operand>) -> Result<(), ParseError> {
        self.v3_only(pos, "function call")?;
        if !self.funcs {
            return Err(ParseError::Invalid { pos, msg: format!("`{}` requires quipfuncs.inc", f.name()) });
        }
        if result.is_none() && f.result_kind().is_some() {
            return Err(ParseError::Invalid { pos, msg: format!("result of `{}` must be assigned", f.name()) });
        }
        if *self.peek() == Tok::Ident(f.name().into()) {
            self.bump();
        }
        self.expect(&Tok::LParen)?;
        let arg = if *self.peek() == Tok::RParen { None } else { Some(self.operand()?) };
        self.expect(&Tok::RParen)?;
        self.expect(&Tok::Semi)?;
        if arg.is_some() != f.arg_kind().is_some() {
            return Err(ParseError::Invalid { pos, msg: format!("wrong argument count for `{}`", f.name()) });
        }
        self.push(pos, Statement::Call { func: f, arg, result });
        Ok(())
    }

    fn operand(&mut self) -> Result<Operand, ParseError> {
        let pos = self.pos();
        let name = self.ident()?;
        let index = if *self.peek() == Tok::LBracket {
            self.bump();
            let k = self.uint()?;
            self.expect(&Tok::RBracket)?;
            Some(k)
        } else {
            None
        };
        if self.prog.decl(&name).is_none() {
            return Err(ParseError::Invalid { pos, msg: format!("undeclared operand `{name}`") });
        }
        Ok(Operand { name, index })
    }

    fn const_int(&mut self, what: &str) -> Result<i64, ParseError> {
        let pos = self.pos();
        let e = self.expr()?;
        let v = e.eval().map_err(|err| ParseError::Invalid { pos, msg: err.to_string() })?;
        if v.fract() != 0.0 || !v.is_finite() || v.abs() > 1e15 {
            return Err(ParseError::Invalid {
                pos,
                msg: format!("{what} must be an integer (non-integer powers are not supported), got {v}"),
            });
        }
        Ok(v as i64)
    }

    fn gate_application(&mut self, pos: Pos) -> Result<(), ParseError> {
        let mut mods = vec![];
        loop {
            let mpos = self.pos();
            let m = match self.peek() {
                Tok::Ident(s) if s == "ctrl" || s == "negctrl" => s.clone(),
                Tok::Ident(s) if s == "inv" || s == "pow" => s.clone(),
                _ => break,
            };
            if *self.peek_at(1) != Tok::At && *self.peek_at(1) != Tok::LParen {
                break;
            }
            self.v3_only(mpos, "gate modifier")?;
            self.bump();
            match m.as_str() {
                "inv" => mods.push(Modifier::Inv),
                "pow" => {
                    self.expect(&Tok::LParen)?;
                    let k = self.const_int("power exponent")?;
                    self.expect(&Tok::RParen)?;
                    mods.push(Modifier::Pow(k));
                }
                _ => {
                    let mut n = 1;
                    if *self.peek() == Tok::LParen {
                        self.bump();
                        let k = self.const_int("control count")?;
                        if k < 1 {
                            return Err(ParseError::Invalid { pos: mpos, msg: "control count must be positive".into() });
                        }
                        n = k as usize;
                        self.expect(&Tok::RParen)?;
                    }
                    let c = if m == "ctrl" { Modifier::Ctrl } else { Modifier::NegCtrl };
                    mods.extend(std::iter::repeat_n(c, n));
                }
            }
            self.expect(&Tok::At)?;
        }
        let gpos = self.pos();
        let name = self.ident()?;
        let Some(&(tag, implied)) = self.gates.get(&name) else {
            return Err(ParseError::UnknownGate { pos: gpos, name });
        };
        let mut params = vec![];
        if *self.peek() == Tok::LParen {
            self.bump();
            if *self.peek() != Tok::RParen {
                loop {
                    let epos = self.pos();
                    let e = self.expr()?;
                    e.eval().map_err(|err| ParseError::Invalid { pos: epos, msg: err.to_string() })?;
                    params.push(e);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.expect(&Tok::RParen)?;
        }
        if params.len() != tag.param_count() {
            return Err(ParseError::Invalid {
                pos: gpos,
                msg: format!("`{name}` takes {} parameters, got {}", tag.param_count(), params.len()),
            });
        }
        let gate = GateKind::from_tag(tag, params).expect("parameter count checked");
        let mut operands = vec![];
        if *self.peek() != Tok::Semi {
            loop {
                operands.push(self.operand()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(&Tok::Semi)?;
        mods.extend(std::iter::repeat_n(Modifier::Ctrl, implied));
        let want = mods.iter().filter(|m| m.is_control()).count() + gate.arity();
        if operands.len() != want {
            return Err(ParseError::Invalid {
                pos: gpos,
                msg: format!("`{name}` expects {want} operands, got {}", operands.len()),
            });
        }
        self.push(pos, Statement::Gate { mods, gate, operands });
        Ok(())
    }

    pub fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.term()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            let rhs = self.unary()?;
            lhs = Expr::bin(op, lhs, rhs);
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::StarStar {
            self.bump();
            let exp = self.unary()?;
            return Ok(Expr::bin(BinOp::Pow, base, exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                let v: f64 = s
                    .parse()
                    .map_err(|_| ParseError::Syntax { pos, msg: format!("malformed number `{s}`") })?;
                if !v.is_finite() {
                    return Err(ParseError::Invalid { pos, msg: format!("number `{s}` is out of range") });
                }
                Ok(Expr::Num(v))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) => {
                self.bump();
                match s.as_str() {
                    "pi" | "π" => return Ok(Expr::Const(Constant::Pi)),
                    "tau" | "τ" => return Ok(Expr::Const(Constant::Tau)),
                    "euler" | "ℇ" => return Ok(Expr::Const(Constant::Euler)),
                    _ => {}
                }
                let Some(f) = Func::from_name(&s) else {
                    return Err(ParseError::Invalid {
                        pos,
                        msg: format!("`{s}` is not a constant; only constant expressions are supported"),
                    });
                };
                self.expect(&Tok::LParen)?;
                let mut args = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.expr()?);
                }
                self.expect(&Tok::RParen)?;
                if args.len() != f.arity() {
                    return Err(ParseError::Invalid {
                        pos,
                        msg: format!("`{s}` takes {} arguments, got {}", f.arity(), args.len()),
                    });
                }
                Ok(Expr::Call(f, args))
            }
            _ => self.syntax("expression"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stmts(src: &str) -> Vec<Statement> {
        parse_qasm(src).unwrap().stmts
    }

    #[test]
    fn modifiers_in_order() {
        let s = stmts("OPENQASM 3; include \"stdgates.inc\"; qubit phi; qubit[3] x;\npow(2) @ ctrl @ t x[1], phi;");
        assert_eq!(
            s[0],
            Statement::Gate {
                mods: vec![Modifier::Pow(2), Modifier::Ctrl],
                gate: GateKind::T,
                operands: vec![Operand::at("x", 1), Operand::scalar("phi")],
            }
        );
    }

    #[test]
    fn implied_controls_are_innermost() {
        let s = stmts("OPENQASM 3; include \"stdgates.inc\"; qubit[3] q; inv @ cx q[0], q[1];");
        let Statement::Gate { mods, gate, .. } = &s[0] else { panic!() };
        assert_eq!(mods, &vec![Modifier::Inv, Modifier::Ctrl]);
        assert_eq!(*gate, GateKind::X);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_qasm("OPENQASM 3;\nqubit q;\nfoo q;").unwrap_err();
        assert_eq!(e, ParseError::UnknownGate { pos: Pos { line: 3, col: 1 }, name: "foo".into() });
        let e = parse_qasm("OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[1];\ninv @ x q[0];").unwrap_err();
        assert!(matches!(e, ParseError::Dialect { pos: Pos { line: 4, col: 1 }, .. }));
        let e = parse_qasm("OPENQASM 3; include \"nope.inc\";").unwrap_err();
        assert!(matches!(e, ParseError::UnknownInclude { .. }));
        let e = parse_qasm("OPENQASM 3; include \"stdgates.inc\"; qubit q; pow(0.5) @ x q;").unwrap_err();
        assert!(e.to_string().contains("non-integer"));
        let e = parse_qasm("OPENQASM 3; include \"stdgates.inc\"; h q; qubit q;").unwrap_err();
        assert!(e.to_string().contains("undeclared"));
        let e = parse_qasm("OPENQASM 3; include \"stdgates.inc\"; qubit[2] q; h q;").unwrap_err();
        assert!(e.to_string().contains("broadcast"));
    }

    #[test]
    fn empty_program() {
        let p = parse_qasm("OPENQASM 3;").unwrap();
        assert!(p.stmts.is_empty() && p.decls.is_empty());
    }

    #[test]
    fn angle_expressions() {
        assert_eq!(parse_angle_expr("pi / 2").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(parse_angle_expr("2 * pi / 4").unwrap(), std::f64::consts::FRAC_PI_2);
        assert_eq!(parse_angle_expr("arccos(1)").unwrap(), 0.0);
        assert_eq!(parse_angle_expr("-2 ** 2").unwrap(), -4.0);
        assert_eq!(parse_angle_expr("2 ** -1").unwrap(), 0.5);
        assert!(parse_angle_expr("1 / 0").is_err());
        assert!(parse_angle_expr("x + 1").is_err());
    }

    #[test]
    fn measurement_forms() {
        let p = parse_qasm("OPENQASM 3; qubit q; bit c = measure q; bit[2] d; d[1] = measure q; measure q -> d[0];").unwrap();
        assert_eq!(p.stmts.len(), 3);
        let p = parse_qasm("OPENQASM 2.0; qreg q[1]; creg c[1]; measure q[0] -> c[0];").unwrap();
        assert_eq!(p.version, Version::V2);
        assert!(parse_qasm("OPENQASM 2.0; qreg q[1]; creg c[1]; c[0] = measure q[0];").is_err());
    }

    #[test]
    fn calls_need_quipfuncs() {
        let src = "OPENQASM 3; include \"quipfuncs.inc\"; qubit q; bit c; QInit0(q); c = QMeas(q); CDiscard(c);";
        let p = parse_qasm(src).unwrap();
        assert_eq!(
            p.stmts[1],
            Statement::Call { func: QuipFunc::QMeas, arg: Some(Operand::scalar("q")), result: Some(Operand::scalar("c")) }
        );
        assert!(parse_qasm("OPENQASM 3; qubit q; QInit0(q);").is_err());
        assert!(parse_qasm("OPENQASM 3; include \"quipfuncs.inc\"; qubit q; QMeas(q);").is_err());
    }
}
