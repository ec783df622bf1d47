//! Constant angle expressions as they appear in OpenQASM gate parameters.

use std::f64::consts::{E as EULER, PI, TAU};
use std::fmt;

use thiserror::Error;

use crate::gate::Angle;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    Tau,
    Euler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Arcsin,
    Arccos,
    Arctan,
    Exp,
    Log,
    Sqrt,
    Ceiling,
    Floor,
    Mod,
    Pow,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Arcsin => "arcsin",
            Func::Arccos => "arccos",
            Func::Arctan => "arctan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Ceiling => "ceiling",
            Func::Floor => "floor",
            Func::Mod => "mod",
            Func::Pow => "pow",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "arcsin" => Func::Arcsin,
            "arccos" => Func::Arccos,
            "arctan" => Func::Arctan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "ceiling" => Func::Ceiling,
            "floor" => Func::Floor,
            "mod" => Func::Mod,
            "pow" => Func::Pow,
            _ => return None,
        })
    }

    pub fn arity(self) -> usize {
        match self {
            Func::Mod | Func::Pow => 2,
            _ => 1,
        }
    }
}

/// A constant real-valued expression. Literals are always non-negative;
/// negation is explicit so that printing and parsing agree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Const(Constant),
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExprError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("argument outside the domain of {0}")]
    Domain(&'static str),
    #[error("expression does not evaluate to a finite number")]
    NonFinite,
}

impl Expr {
    /// Literal for `v`, with the sign pulled out into a `Neg` node.
    pub fn num(v: f64) -> Expr {
        if v < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-v)))
        } else {
            Expr::Num(v.abs())
        }
    }

    pub fn pi() -> Expr {
        Expr::Const(Constant::Pi)
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn negated(self) -> Expr {
        match self {
            Expr::Neg(e) => *e,
            Expr::Num(0.0) => Expr::Num(0.0),
            e => Expr::Neg(Box::new(e)),
        }
    }

    pub fn eval(&self) -> Result<f64, ExprError> {
        let v = match self {
            Expr::Num(v) => *v,
            Expr::Const(Constant::Pi) => PI,
            Expr::Const(Constant::Tau) => TAU,
            Expr::Const(Constant::Euler) => EULER,
            Expr::Neg(e) => -e.eval()?,
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval()?, b.eval()?);
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(ExprError::DivisionByZero);
                        }
                        x / y
                    }
                    BinOp::Pow => x.powf(y),
                }
            }
            Expr::Call(f, args) => {
                let vals = args.iter().map(Expr::eval).collect::<Result<Vec<_>, _>>()?;
                apply_func(*f, &vals)?
            }
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ExprError::NonFinite)
        }
    }

    pub fn contains_call(&self) -> bool {
        match self {
            Expr::Call(..) => true,
            Expr::Neg(e) => e.contains_call(),
            Expr::Bin(_, a, b) => a.contains_call() || b.contains_call(),
            _ => false,
        }
    }

    /// Replaces every subexpression containing a call by its value.
    pub fn fold_calls(&self) -> Result<Expr, ExprError> {
        Ok(match self {
            Expr::Call(..) => Expr::num(self.eval()?),
            Expr::Neg(e) => Expr::Neg(Box::new(e.fold_calls()?)),
            Expr::Bin(op, a, b) => Expr::bin(*op, a.fold_calls()?, b.fold_calls()?),
            e => e.clone(),
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Bin(BinOp::Add | BinOp::Sub, ..) => 1,
            Expr::Bin(BinOp::Mul | BinOp::Div, ..) => 2,
            Expr::Neg(_) => 3,
            Expr::Bin(BinOp::Pow, ..) => 4,
            _ => 5,
        }
    }
}

fn apply_func(f: Func, v: &[f64]) -> Result<f64, ExprError> {
    let x = v[0];
    let r = match f {
        Func::Sin => x.sin(),
        Func::Cos => x.cos(),
        Func::Tan => x.tan(),
        Func::Arcsin | Func::Arccos if !(-1.0..=1.0).contains(&x) => {
            return Err(ExprError::Domain(f.name()))
        }
        Func::Arcsin => x.asin(),
        Func::Arccos => x.acos(),
        Func::Arctan => x.atan(),
        Func::Exp => x.exp(),
        Func::Log if x <= 0.0 => return Err(ExprError::Domain("log")),
        Func::Log => x.ln(),
        Func::Sqrt if x < 0.0 => return Err(ExprError::Domain("sqrt")),
        Func::Sqrt => x.sqrt(),
        Func::Ceiling => x.ceil(),
        Func::Floor => x.floor(),
        Func::Mod if v[1] == 0.0 => return Err(ExprError::DivisionByZero),
        Func::Mod => x.rem_euclid(v[1]),
        Func::Pow => x.powf(v[1]),
    };
    Ok(r)
}

/// Renders a non-negative literal in the shortest form that parses back to
/// the same double.
pub fn fmt_num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => f.write_str(&fmt_num(*v)),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::Tau) => f.write_str("tau"),
            Expr::Const(Constant::Euler) => f.write_str("euler"),
            Expr::Neg(e) => {
                if e.prec() < 3 {
                    write!(f, "-({e})")
                } else {
                    write!(f, "-{e}")
                }
            }
            Expr::Bin(op, a, b) => {
                let p = self.prec();
                let sym = match op {
                    BinOp::Add => "+",
                    BinOp::Sub => "-",
                    BinOp::Mul => "*",
                    BinOp::Div => "/",
                    BinOp::Pow => "**",
                };
                let (lp, rp) = if *op == BinOp::Pow {
                    (a.prec() <= p, b.prec() < p)
                } else {
                    (a.prec() < p, b.prec() <= p)
                };
                wrap(f, a, lp)?;
                write!(f, " {sym} ")?;
                wrap(f, b, rp)
            }
            Expr::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, parens: bool) -> fmt::Result {
    if parens {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

const PI_DENOMS: [u32; 9] = [1, 2, 4, 8, 16, 32, 64, 3, 6];

/// Expression for `v`, written as a rational multiple of `pi` when that
/// reproduces `v` bit for bit.
pub fn angle_literal(v: f64) -> Expr {
    if v == 0.0 {
        return Expr::Num(0.0);
    }
    let neg = v < 0.0;
    let a = v.abs();
    for d in PI_DENOMS {
        let k = a * d as f64 / PI;
        let kr = k.round();
        if !(1.0..=4096.0).contains(&kr) || (k - kr).abs() > 1e-9 {
            continue;
        }
        let mut e = if kr == 1.0 {
            Expr::pi()
        } else {
            Expr::bin(BinOp::Mul, Expr::Num(kr), Expr::pi())
        };
        if d > 1 {
            e = Expr::bin(BinOp::Div, e, Expr::Num(d as f64));
        }
        if e.eval() == Ok(a) {
            return if neg { e.negated() } else { e };
        }
    }
    Expr::num(v)
}

impl Angle for Expr {
    fn value(&self) -> f64 {
        self.eval().unwrap_or(f64::NAN)
    }

    fn constant(v: f64) -> Self {
        angle_literal(v)
    }

    fn neg(&self) -> Self {
        self.clone().negated()
    }

    fn scale(&self, k: f64) -> Self {
        if k == 1.0 {
            return self.clone();
        }
        if k == -1.0 {
            return self.neg();
        }
        let (sign, m) = (k < 0.0, k.abs());
        let inv = 1.0 / m;
        let e = if inv.fract() == 0.0 && inv > 1.0 {
            Expr::bin(BinOp::Div, self.clone(), Expr::Num(inv))
        } else {
            Expr::bin(BinOp::Mul, Expr::Num(m), self.clone())
        };
        if sign {
            e.negated()
        } else {
            e
        }
    }

    fn add(&self, other: &Self) -> Self {
        match other {
            Expr::Neg(o) => Expr::bin(BinOp::Sub, self.clone(), (**o).clone()),
            o => Expr::bin(BinOp::Add, self.clone(), o.clone()),
        }
    }

    fn rgate_phase(&self) -> Self {
        Expr::bin(
            BinOp::Div,
            Expr::bin(BinOp::Mul, Expr::Num(2.0), Expr::pi()),
            Expr::bin(BinOp::Pow, Expr::Num(2.0), self.clone()),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals_keep_sign_outside() {
        assert_eq!(Expr::num(-1.5), Expr::Neg(Box::new(Expr::Num(1.5))));
        assert_eq!(Expr::num(-0.0), Expr::Num(0.0));
        assert_eq!(fmt_num(0.50), "0.5");
        assert_eq!(fmt_num(2.0), "2");
    }

    #[test]
    fn display_parenthesizes_minimally() {
        let e = Expr::bin(BinOp::Div, Expr::pi(), Expr::Num(2.0));
        assert_eq!(e.to_string(), "pi / 2");
        let e = Expr::bin(
            BinOp::Sub,
            Expr::Num(1.0),
            Expr::bin(BinOp::Sub, Expr::Num(2.0), Expr::Num(3.0)),
        );
        assert_eq!(e.to_string(), "1 - (2 - 3)");
        let e = Expr::bin(BinOp::Pow, Expr::num(-2.0), Expr::Num(2.0));
        assert_eq!(e.to_string(), "(-2) ** 2");
        let e = Expr::Neg(Box::new(Expr::bin(BinOp::Pow, Expr::Num(2.0), Expr::Num(2.0))));
        assert_eq!(e.to_string(), "-2 ** 2");
    }

    #[test]
    fn angle_literal_is_exact() {
        for v in [PI / 4.0, -PI / 2.0, 3.0 * PI / 4.0, 2.0 * PI / 8.0, 0.3, PI / 3.0] {
            let e = angle_literal(v);
            assert_eq!(e.eval().unwrap(), v, "{e}");
        }
        assert_eq!(angle_literal(PI / 4.0).to_string(), "pi / 4");
        assert_eq!(angle_literal(-PI).to_string(), "-pi");
        assert_eq!(angle_literal(0.3).to_string(), "0.3");
    }

    #[test]
    fn eval_domains() {
        let e = Expr::Call(Func::Arccos, vec![Expr::Num(1.0)]);
        assert_eq!(e.eval().unwrap(), 0.0);
        let e = Expr::Call(Func::Arcsin, vec![Expr::Num(2.0)]);
        assert_eq!(e.eval(), Err(ExprError::Domain("arcsin")));
        let e = Expr::bin(BinOp::Div, Expr::Num(1.0), Expr::Num(0.0));
        assert_eq!(e.eval(), Err(ExprError::DivisionByZero));
    }

    #[test]
    fn scale_and_add_build_readable_trees() {
        let t = Expr::pi();
        assert_eq!(t.scale(0.5).to_string(), "pi / 2");
        assert_eq!(t.scale(-0.5).to_string(), "-(pi / 2)");
        assert_eq!(t.scale(2.0).to_string(), "2 * pi");
        assert_eq!(t.add(&Expr::num(-1.0)).to_string(), "pi - 1");
    }
}
