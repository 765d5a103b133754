use num_rational::BigRational;
use num_traits::Zero;

use super::{parse_expr_list, Constant, SmoothExpr};
use crate::error::{Error, Result};
use crate::polyring::QPolynomial;

/// Expands a polynomial expression into a sparse rational polynomial.
///
/// Allowed: variables, rational constants, `+ - *`, division by a nonzero
/// constant and nonnegative integer powers. Returns a description of the
/// offending subterm otherwise.
pub fn expr_to_polynomial(e: &SmoothExpr, nvars: usize) -> Result<QPolynomial, String> {
    use SmoothExpr::*;
    let rec = |a: &SmoothExpr| expr_to_polynomial(a, nvars);
    Ok(match e {
        Var(i) => QPolynomial::var(nvars, *i).map_err(|err| err.to_string())?,
        Const(Constant::Rational(q)) => QPolynomial::constant(nvars, q.clone()),
        Const(c) => return Err(format!("constant `{c}` is not rational")),
        Neg(a) => rec(a)?.scale(&-BigRational::from_integer(1.into())),
        Add(a, b) => rec(a)?.checked_add(&rec(b)?).map_err(|e| e.to_string())?,
        Sub(a, b) => rec(a)?.checked_sub(&rec(b)?).map_err(|e| e.to_string())?,
        Mul(a, b) => rec(a)?.checked_mul(&rec(b)?).map_err(|e| e.to_string())?,
        Div(a, b) => {
            let den = rec(b)?;
            if !den.is_constant() || den.is_zero() {
                return Err(format!("division by `{b}` is not polynomial"));
            }
            let c = den.coeff(&crate::polyring::ExponentVector::zero(nvars));
            debug_assert!(!c.is_zero());
            rec(a)?.scale(&c.recip())
        }
        Pow(a, n) if *n >= 0 => rec(a)?.pow(*n as u32),
        Pow(..) => return Err(format!("negative power in `{e}`")),
        PowRational(..) => return Err(format!("fractional power in `{e}`")),
        Apply(f, _) => return Err(format!("`{f}` is not polynomial")),
    })
}

/// Parses a comma-separated list of polynomials over the named variables.
pub fn parse_polynomials<V: AsRef<str>>(text: &str, vars: &[V]) -> Result<Vec<QPolynomial>> {
    parse_expr_list(text, vars)?
        .into_iter()
        .map(|(at, e)| {
            expr_to_polynomial(&e, vars.len())
                .map_err(|msg| Error::parse(at, format!("not a polynomial: {msg}")))
        })
        .collect()
}
