use std::fmt;

use num_traits::Signed;

use super::{Constant, SmoothExpr};

/// Prints an expression in the parser's grammar with minimal parentheses.
pub struct ExprDisplay<'a> {
    expr: &'a SmoothExpr,
    names: &'a [String],
}

impl<'a> ExprDisplay<'a> {
    pub(crate) fn new(expr: &'a SmoothExpr, names: &'a [String]) -> Self {
        ExprDisplay { expr, names }
    }
}

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const PREFIX: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

fn precedence(e: &SmoothExpr) -> u8 {
    match e {
        SmoothExpr::Add(..) | SmoothExpr::Sub(..) => SUM,
        SmoothExpr::Mul(..) | SmoothExpr::Div(..) => PRODUCT,
        SmoothExpr::Neg(_) => PREFIX,
        SmoothExpr::Pow(..) | SmoothExpr::PowRational(..) => POWER,
        SmoothExpr::Const(Constant::Rational(q)) if !q.is_integer() => PRODUCT,
        SmoothExpr::Const(Constant::Rational(q)) if q.is_negative() => PREFIX,
        _ => ATOM,
    }
}

impl ExprDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &SmoothExpr, min: u8) -> fmt::Result {
        let prec = precedence(e);
        if prec < min {
            write!(f, "(")?;
            self.write_bare(f, e)?;
            write!(f, ")")
        } else {
            self.write_bare(f, e)
        }
    }

    fn write_bare(&self, f: &mut fmt::Formatter<'_>, e: &SmoothExpr) -> fmt::Result {
        match e {
            SmoothExpr::Var(i) => match self.names.get(*i) {
                Some(name) => write!(f, "{name}"),
                None => write!(f, "x{i}"),
            },
            SmoothExpr::Const(c) => write!(f, "{c}"),
            SmoothExpr::Neg(a) => {
                write!(f, "-")?;
                self.write(f, a, PREFIX)
            }
            SmoothExpr::Add(a, b) => self.infix(f, a, " + ", b, SUM),
            SmoothExpr::Sub(a, b) => self.infix(f, a, " - ", b, SUM),
            SmoothExpr::Mul(a, b) => self.infix(f, a, " * ", b, PRODUCT),
            SmoothExpr::Div(a, b) => self.infix(f, a, " / ", b, PRODUCT),
            SmoothExpr::Pow(a, n) => {
                self.write(f, a, ATOM)?;
                write!(f, "^{n}")
            }
            SmoothExpr::PowRational(a, q) => {
                self.write(f, a, ATOM)?;
                write!(f, "^({q})")
            }
            SmoothExpr::Apply(g, a) => {
                write!(f, "{g}(")?;
                self.write(f, a, 0)?;
                write!(f, ")")
            }
        }
    }

    fn infix(
        &self,
        f: &mut fmt::Formatter<'_>,
        a: &SmoothExpr,
        op: &str,
        b: &SmoothExpr,
        prec: u8,
    ) -> fmt::Result {
        self.write(f, a, prec)?;
        f.write_str(op)?;
        self.write(f, b, prec + 1)
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.expr, 0)
    }
}
