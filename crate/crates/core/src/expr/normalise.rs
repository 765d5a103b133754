use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Constant, SmoothExpr};

fn q(e: &SmoothExpr) -> Option<&BigRational> {
    e.as_rational()
}

fn konst(v: BigRational) -> SmoothExpr {
    SmoothExpr::Const(Constant::Rational(v))
}

/// One rewrite step at the root, assuming the children are already simplified.
///
/// Folds rational constants, drops additive zeros and multiplicative ones,
/// collapses double negation and keeps constant factors on the left.
pub(crate) fn simplify_node(e: SmoothExpr) -> SmoothExpr {
    use SmoothExpr::*;
    match e {
        Neg(a) => match *a {
            Const(Constant::Rational(v)) => konst(-v),
            Neg(inner) => *inner,
            other => Neg(Box::new(other)),
        },
        Add(a, b) => match (q(&a), q(&b)) {
            (Some(x), Some(y)) => konst(x + y),
            (Some(x), _) if x.is_zero() => *b,
            (_, Some(y)) if y.is_zero() => *a,
            _ => match *b {
                Neg(nb) => simplify_node(Sub(a, nb)),
                other => Add(a, Box::new(other)),
            },
        },
        Sub(a, b) => match (q(&a), q(&b)) {
            (Some(x), Some(y)) => konst(x - y),
            (_, Some(y)) if y.is_zero() => *a,
            (Some(x), _) if x.is_zero() => simplify_node(Neg(b)),
            _ => match *b {
                Neg(nb) => simplify_node(Add(a, nb)),
                other => Sub(a, Box::new(other)),
            },
        },
        Mul(a, b) if matches!(*a, Neg(_)) || matches!(*b, Neg(_)) => {
            let strip = |x: Box<SmoothExpr>| match *x {
                Neg(inner) => (true, inner),
                other => (false, Box::new(other)),
            };
            let (na, a) = strip(a);
            let (nb, b) = strip(b);
            let product = simplify_node(Mul(a, b));
            if na != nb {
                simplify_node(Neg(Box::new(product)))
            } else {
                product
            }
        }
        Mul(a, b) => match (q(&a), q(&b)) {
            (Some(x), Some(y)) => konst(x * y),
            (Some(x), _) | (_, Some(x)) if x.is_zero() => konst(BigRational::zero()),
            (Some(x), _) if x.is_one() => *b,
            (_, Some(y)) if y.is_one() => *a,
            (Some(x), _) if *x == -BigRational::one() => simplify_node(Neg(b)),
            (_, Some(y)) if *y == -BigRational::one() => simplify_node(Neg(a)),
            // keep the constant factor on the left
            (None, Some(_)) => simplify_node(Mul(b, a)),
            (Some(x), None) => match *b {
                Mul(c, d) if q(&c).is_some() => {
                    let folded = x * q(&c).unwrap();
                    simplify_node(Mul(Box::new(konst(folded)), d))
                }
                other => Mul(a, Box::new(other)),
            },
            _ => Mul(a, b),
        },
        Div(a, b) => match (q(&a), q(&b)) {
            (Some(x), Some(y)) if !y.is_zero() => konst(x / y),
            (_, Some(y)) if y.is_one() => *a,
            (Some(x), _) if x.is_zero() && q(&b).is_none_or(|y| !y.is_zero()) => {
                konst(BigRational::zero())
            }
            _ => match *a {
                Neg(na) => simplify_node(Neg(Box::new(simplify_node(Div(na, b))))),
                other => Div(Box::new(other), b),
            },
        },
        Pow(a, n) => match (q(&a), n) {
            (_, 0) => konst(BigRational::one()),
            (_, 1) => *a,
            (Some(x), n) if n > 0 || !x.is_zero() => {
                let base = if n < 0 { x.recip() } else { x.clone() };
                konst(num_traits::pow(base, n.unsigned_abs() as usize))
            }
            _ => Pow(a, n),
        },
        other => other,
    }
}

fn bottom_up(e: &SmoothExpr) -> SmoothExpr {
    use SmoothExpr::*;
    let rebuilt = match e {
        Var(_) | Const(_) => return e.clone(),
        Neg(a) => Neg(Box::new(bottom_up(a))),
        Add(a, b) => Add(Box::new(bottom_up(a)), Box::new(bottom_up(b))),
        Sub(a, b) => Sub(Box::new(bottom_up(a)), Box::new(bottom_up(b))),
        Mul(a, b) => Mul(Box::new(bottom_up(a)), Box::new(bottom_up(b))),
        Div(a, b) => Div(Box::new(bottom_up(a)), Box::new(bottom_up(b))),
        Pow(a, n) => Pow(Box::new(bottom_up(a)), *n),
        PowRational(a, r) => PowRational(Box::new(bottom_up(a)), r.clone()),
        Apply(f, a) => Apply(*f, Box::new(bottom_up(a))),
    };
    simplify_node(rebuilt)
}

/// Light canonicalisation to a fixpoint: constant folding, 0/1 identities,
/// double negation. Idempotent; no algebraic identities beyond these.
pub fn normalise(e: &SmoothExpr) -> SmoothExpr {
    let mut cur = bottom_up(e);
    loop {
        let next = bottom_up(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}
