use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use super::{normalise, simplify_node, Constant, Elementary, SmoothExpr};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A symbolic coefficient: an expression over free symbols `Var(i)`.
///
/// Every operation applies one normalisation step at the new root, so
/// coefficients stay readable without a full simplifier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Symbolic(pub SmoothExpr);

impl Symbolic {
    /// The free symbol with index `i`.
    pub fn symbol(i: usize) -> Self {
        Symbolic(SmoothExpr::Var(i))
    }

    pub fn expr(&self) -> &SmoothExpr {
        &self.0
    }

    pub fn into_expr(self) -> SmoothExpr {
        self.0
    }

    pub fn normalise(&self) -> Symbolic {
        Symbolic(normalise(&self.0))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> super::ExprDisplay<'a> {
        self.0.display_with(names)
    }
}

impl fmt::Display for Symbolic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

macro_rules! symbolic_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl $tr for Symbolic {
            type Output = Symbolic;
            fn $method(self, rhs: Symbolic) -> Symbolic {
                Symbolic(simplify_node(SmoothExpr::$variant(
                    Box::new(self.0),
                    Box::new(rhs.0),
                )))
            }
        }
    };
}

symbolic_binop!(Add, add, Add);
symbolic_binop!(Sub, sub, Sub);
symbolic_binop!(Mul, mul, Mul);

impl Neg for Symbolic {
    type Output = Symbolic;
    fn neg(self) -> Symbolic {
        Symbolic(simplify_node(SmoothExpr::Neg(Box::new(self.0))))
    }
}

impl Scalar for Symbolic {
    fn zero() -> Self {
        Symbolic(SmoothExpr::int(0))
    }

    fn one() -> Self {
        Symbolic(SmoothExpr::int(1))
    }

    fn is_zero(&self) -> bool {
        self.0.as_rational().is_some_and(Zero::is_zero)
    }

    fn from_rational(q: &BigRational) -> Self {
        Symbolic(SmoothExpr::rational(q.clone()))
    }

    fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(Symbolic(simplify_node(SmoothExpr::Div(
            Box::new(self.0.clone()),
            Box::new(rhs.0.clone()),
        ))))
    }

    fn constant(c: &Constant) -> Result<Self> {
        Ok(Symbolic(SmoothExpr::Const(c.clone())))
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        if let Some(q) = self.0.as_rational() {
            if let Some(msg) = f.rational_domain_violation(q) {
                return Err(Error::domain(msg));
            }
        }
        Ok(Symbolic(SmoothExpr::apply(f, self.0.clone())))
    }

    fn powf(&self, exponent: &BigRational) -> Result<Self> {
        Ok(Symbolic(self.0.clone().pow_rational(exponent.clone())))
    }
}
