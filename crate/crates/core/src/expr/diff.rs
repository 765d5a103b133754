use num_rational::BigRational;
use num_traits::One;

use super::{normalise, SmoothExpr};
use crate::smooth::elementary_partial;

/// `∂e/∂x_var` by structural rewriting, normalised.
///
/// Independent of the jet engine: elementary functions use the shared
/// first-derivative table, everything else is the textbook rules.
pub fn symbolic_partial(e: &SmoothExpr, var: usize) -> SmoothExpr {
    normalise(&raw_partial(e, var))
}

/// Iterated partial `D^α e`, one variable at a time.
pub fn symbolic_partial_multi(e: &SmoothExpr, alpha: &[u32]) -> SmoothExpr {
    let mut cur = normalise(e);
    for (var, &times) in alpha.iter().enumerate() {
        for _ in 0..times {
            cur = symbolic_partial(&cur, var);
        }
    }
    cur
}

fn raw_partial(e: &SmoothExpr, var: usize) -> SmoothExpr {
    use SmoothExpr::*;
    match e {
        Var(j) => SmoothExpr::int(i64::from(*j == var)),
        Const(_) => SmoothExpr::int(0),
        Neg(a) => -raw_partial(a, var),
        Add(a, b) => raw_partial(a, var) + raw_partial(b, var),
        Sub(a, b) => raw_partial(a, var) - raw_partial(b, var),
        Mul(a, b) => raw_partial(a, var) * (**b).clone() + (**a).clone() * raw_partial(b, var),
        Div(a, b) => {
            (raw_partial(a, var) * (**b).clone() - (**a).clone() * raw_partial(b, var))
                / (**b).clone().powi(2)
        }
        Pow(a, n) => {
            if *n == 0 {
                SmoothExpr::int(0)
            } else {
                SmoothExpr::int(*n) * (**a).clone().powi(n - 1) * raw_partial(a, var)
            }
        }
        PowRational(a, q) => {
            let lowered = q - BigRational::one();
            SmoothExpr::rational(q.clone())
                * (**a).clone().pow_rational(lowered)
                * raw_partial(a, var)
        }
        Apply(f, a) => {
            elementary_partial(*f).substitute(std::slice::from_ref(a)) * raw_partial(a, var)
        }
    }
}
