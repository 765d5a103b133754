//! Smooth-function expressions: AST, parser, printer, evaluation over any
//! carrier, symbolic differentiation and light normalisation.

mod diff;
mod eval;
mod normalise;
mod parse;
mod poly;
mod print;
mod symbolic;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

pub use diff::{symbolic_partial, symbolic_partial_multi};
pub use eval::{eval_expr, Carrier};
pub use normalise::normalise;
pub use parse::{parse_expr, parse_expr_list};
pub use poly::{expr_to_polynomial, parse_polynomials};
pub use print::ExprDisplay;
pub use symbolic::Symbolic;

pub(crate) use normalise::simplify_node;

/// A constant leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Constant {
    Rational(BigRational),
    Pi,
    E,
}

impl Constant {
    pub fn int(n: i64) -> Self {
        Constant::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Constant::Rational(q) => Some(q),
            _ => None,
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constant::Rational(q) => write!(f, "{q}"),
            Constant::Pi => write!(f, "pi"),
            Constant::E => write!(f, "e"),
        }
    }
}

/// The elementary function vocabulary. Negation, reciprocals and powers are
/// expression nodes rather than entries here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elementary {
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Asin,
    Acos,
    Atan,
}

impl Elementary {
    pub const ALL: [Elementary; 12] = [
        Elementary::Sqrt,
        Elementary::Exp,
        Elementary::Log,
        Elementary::Sin,
        Elementary::Cos,
        Elementary::Tan,
        Elementary::Sinh,
        Elementary::Cosh,
        Elementary::Tanh,
        Elementary::Asin,
        Elementary::Acos,
        Elementary::Atan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Elementary::Sqrt => "sqrt",
            Elementary::Exp => "exp",
            Elementary::Log => "log",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
            Elementary::Tan => "tan",
            Elementary::Sinh => "sinh",
            Elementary::Cosh => "cosh",
            Elementary::Tanh => "tanh",
            Elementary::Asin => "asin",
            Elementary::Acos => "acos",
            Elementary::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|f| f.name() == name)
    }

    pub fn eval_f64(self, x: f64) -> f64 {
        match self {
            Elementary::Sqrt => x.sqrt(),
            Elementary::Exp => x.exp(),
            Elementary::Log => x.ln(),
            Elementary::Sin => x.sin(),
            Elementary::Cos => x.cos(),
            Elementary::Tan => x.tan(),
            Elementary::Sinh => x.sinh(),
            Elementary::Cosh => x.cosh(),
            Elementary::Tanh => x.tanh(),
            Elementary::Asin => x.asin(),
            Elementary::Acos => x.acos(),
            Elementary::Atan => x.atan(),
        }
    }

    /// Describes why `x` lies outside the real domain, if it does.
    pub fn domain_violation(self, x: f64) -> Option<String> {
        let bad = match self {
            Elementary::Sqrt => x < 0.0,
            Elementary::Log => x <= 0.0,
            Elementary::Asin | Elementary::Acos => x.abs() > 1.0,
            _ => false,
        };
        bad.then(|| format!("{}({x}) is undefined", self.name()))
    }

    /// Same check for an exact argument; `None` when the domain is fine.
    pub(crate) fn rational_domain_violation(self, x: &BigRational) -> Option<String> {
        use num_traits::{One, Signed};
        let bad = match self {
            Elementary::Sqrt => x.is_negative(),
            Elementary::Log => !x.is_positive(),
            Elementary::Asin | Elementary::Acos => x.abs() > BigRational::one(),
            _ => false,
        };
        bad.then(|| format!("{}({x}) is undefined", self.name()))
    }
}

impl fmt::Display for Elementary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Expression tree of a smooth map `ℝ^m → ℝ` over variables `Var(0..m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SmoothExpr {
    Var(usize),
    Const(Constant),
    Neg(Box<SmoothExpr>),
    Add(Box<SmoothExpr>, Box<SmoothExpr>),
    Sub(Box<SmoothExpr>, Box<SmoothExpr>),
    Mul(Box<SmoothExpr>, Box<SmoothExpr>),
    Div(Box<SmoothExpr>, Box<SmoothExpr>),
    /// Integer power.
    Pow(Box<SmoothExpr>, i64),
    /// Power with a non-integer rational exponent.
    PowRational(Box<SmoothExpr>, BigRational),
    Apply(Elementary, Box<SmoothExpr>),
}

impl SmoothExpr {
    pub fn var(i: usize) -> Self {
        SmoothExpr::Var(i)
    }

    pub fn int(n: i64) -> Self {
        SmoothExpr::Const(Constant::int(n))
    }

    pub fn rational(q: BigRational) -> Self {
        SmoothExpr::Const(Constant::Rational(q))
    }

    pub fn pi() -> Self {
        SmoothExpr::Const(Constant::Pi)
    }

    pub fn apply(f: Elementary, arg: SmoothExpr) -> Self {
        SmoothExpr::Apply(f, Box::new(arg))
    }

    pub fn powi(self, n: i64) -> Self {
        SmoothExpr::Pow(Box::new(self), n)
    }

    /// `self ^ q`, using the integer node when `q` is integral.
    pub fn pow_rational(self, q: BigRational) -> Self {
        use num_traits::ToPrimitive;
        if q.is_integer() {
            if let Some(n) = q.to_integer().to_i64() {
                return SmoothExpr::Pow(Box::new(self), n);
            }
        }
        SmoothExpr::PowRational(Box::new(self), q)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            SmoothExpr::Const(c) => c.as_rational(),
            _ => None,
        }
    }

    pub fn is_const_int(&self, n: i64) -> bool {
        self.as_rational()
            .is_some_and(|q| *q == BigRational::from_integer(BigInt::from(n)))
    }

    /// One more than the largest variable index, i.e. the smallest valid arity.
    pub fn min_arity(&self) -> usize {
        let mut m = 0;
        self.visit(&mut |e| {
            if let SmoothExpr::Var(i) = e {
                m = m.max(i + 1);
            }
        });
        m
    }

    /// Indices of the variables occurring in the expression.
    pub fn variables(&self) -> std::collections::BTreeSet<usize> {
        let mut out = std::collections::BTreeSet::new();
        self.visit(&mut |e| {
            if let SmoothExpr::Var(i) = e {
                out.insert(*i);
            }
        });
        out
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn visit(&self, f: &mut impl FnMut(&SmoothExpr)) {
        f(self);
        match self {
            SmoothExpr::Var(_) | SmoothExpr::Const(_) => {}
            SmoothExpr::Neg(a)
            | SmoothExpr::Pow(a, _)
            | SmoothExpr::PowRational(a, _)
            | SmoothExpr::Apply(_, a) => a.visit(f),
            SmoothExpr::Add(a, b)
            | SmoothExpr::Sub(a, b)
            | SmoothExpr::Mul(a, b)
            | SmoothExpr::Div(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    /// Replaces `Var(j)` by `args[j]`.
    pub fn substitute(&self, args: &[SmoothExpr]) -> SmoothExpr {
        self.map_vars(&|j| args[j].clone())
    }

    pub(crate) fn map_vars(&self, f: &impl Fn(usize) -> SmoothExpr) -> SmoothExpr {
        use SmoothExpr::*;
        match self {
            Var(j) => f(*j),
            Const(c) => Const(c.clone()),
            Neg(a) => Neg(Box::new(a.map_vars(f))),
            Add(a, b) => Add(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Sub(a, b) => Sub(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Mul(a, b) => Mul(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Div(a, b) => Div(Box::new(a.map_vars(f)), Box::new(b.map_vars(f))),
            Pow(a, n) => Pow(Box::new(a.map_vars(f)), *n),
            PowRational(a, q) => PowRational(Box::new(a.map_vars(f)), q.clone()),
            Apply(g, a) => Apply(*g, Box::new(a.map_vars(f))),
        }
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay::new(self, names)
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ExprDisplay::new(self, &[]).fmt(f)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for SmoothExpr {
            type Output = SmoothExpr;
            fn $method(self, rhs: SmoothExpr) -> SmoothExpr {
                SmoothExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl Neg for SmoothExpr {
    type Output = SmoothExpr;
    fn neg(self) -> SmoothExpr {
        SmoothExpr::Neg(Box::new(self))
    }
}
