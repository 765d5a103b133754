use num_rational::BigRational;

use super::{Constant, Elementary, SmoothExpr};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Anything an expression can be evaluated over: plain scalars, truncated
/// jets and Weil-algebra elements.
///
/// `Context` carries whatever is needed to embed a constant (jet caps, the
/// Weil settings); it is `()` for scalars.
pub trait Carrier: Clone {
    type Context;

    fn constant(ctx: &Self::Context, c: &Constant) -> Result<Self>;
    fn plus(&self, rhs: &Self) -> Result<Self>;
    fn minus(&self, rhs: &Self) -> Result<Self>;
    fn times(&self, rhs: &Self) -> Result<Self>;
    fn divide(&self, rhs: &Self) -> Result<Self>;
    fn negate(&self) -> Self;
    fn apply(&self, f: Elementary) -> Result<Self>;
    fn power_rational(&self, q: &BigRational) -> Result<Self>;

    /// Integer power by binary exponentiation; negative powers divide.
    fn power(&self, ctx: &Self::Context, n: i64) -> Result<Self> {
        let one = Self::constant(ctx, &Constant::int(1))?;
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.times(&base)?,
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base)?;
            }
        }
        let pos = acc.unwrap_or_else(|| one.clone());
        if n < 0 {
            one.divide(&pos)
        } else {
            Ok(pos)
        }
    }
}

impl<S: Scalar> Carrier for S {
    type Context = ();

    fn constant(_: &(), c: &Constant) -> Result<Self> {
        match c {
            Constant::Rational(q) => Ok(S::from_rational(q)),
            other => S::constant(other),
        }
    }

    fn plus(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() + rhs.clone())
    }

    fn minus(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() - rhs.clone())
    }

    fn times(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.clone())
    }

    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn negate(&self) -> Self {
        -self.clone()
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        Scalar::apply(self, f)
    }

    fn power_rational(&self, q: &BigRational) -> Result<Self> {
        self.powf(q)
    }
}

/// Folds `e` over `args`, mapping each node to the carrier's operation.
pub fn eval_expr<C: Carrier>(e: &SmoothExpr, args: &[C], ctx: &C::Context) -> Result<C> {
    Ok(match e {
        SmoothExpr::Var(i) => args.get(*i).cloned().ok_or(Error::IndexOutOfRange {
            index: *i,
            limit: args.len(),
        })?,
        SmoothExpr::Const(c) => C::constant(ctx, c)?,
        SmoothExpr::Neg(a) => eval_expr(a, args, ctx)?.negate(),
        SmoothExpr::Add(a, b) => eval_expr(a, args, ctx)?.plus(&eval_expr(b, args, ctx)?)?,
        SmoothExpr::Sub(a, b) => eval_expr(a, args, ctx)?.minus(&eval_expr(b, args, ctx)?)?,
        SmoothExpr::Mul(a, b) => eval_expr(a, args, ctx)?.times(&eval_expr(b, args, ctx)?)?,
        SmoothExpr::Div(a, b) => eval_expr(a, args, ctx)?.divide(&eval_expr(b, args, ctx)?)?,
        SmoothExpr::Pow(a, n) => eval_expr(a, args, ctx)?.power(ctx, *n)?,
        SmoothExpr::PowRational(a, q) => eval_expr(a, args, ctx)?.power_rational(q)?,
        SmoothExpr::Apply(f, a) => eval_expr(a, args, ctx)?.apply(*f)?,
    })
}
