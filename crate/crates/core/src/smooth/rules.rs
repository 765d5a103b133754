use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::expr::{symbolic_partial, Elementary, SmoothExpr};

/// A smooth function together with its first partial derivatives, all as
/// expressions over `Var(0..arity)`. Higher derivatives come from recursion.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeRule {
    name: String,
    arity: usize,
    body: SmoothExpr,
    partials: Vec<SmoothExpr>,
}

impl DerivativeRule {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        body: SmoothExpr,
        partials: Vec<SmoothExpr>,
    ) -> Result<Self> {
        if partials.len() != arity {
            return Err(Error::Dimension {
                expected: arity,
                found: partials.len(),
            });
        }
        for e in std::iter::once(&body).chain(&partials) {
            if e.min_arity() > arity {
                return Err(Error::IndexOutOfRange {
                    index: e.min_arity() - 1,
                    limit: arity,
                });
            }
        }
        Ok(DerivativeRule {
            name: name.into(),
            arity,
            body,
            partials,
        })
    }

    /// Derives the partials of `body` symbolically.
    pub fn from_expr(name: impl Into<String>, arity: usize, body: SmoothExpr) -> Result<Self> {
        let partials = (0..arity).map(|i| symbolic_partial(&body, i)).collect();
        Self::new(name, arity, body, partials)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &SmoothExpr {
        &self.body
    }

    pub fn partials(&self) -> &[SmoothExpr] {
        &self.partials
    }

    pub fn elementary(f: Elementary) -> &'static DerivativeRule {
        static TABLE: OnceLock<Vec<DerivativeRule>> = OnceLock::new();
        let table = TABLE.get_or_init(|| {
            Elementary::ALL
                .iter()
                .map(|&g| DerivativeRule {
                    name: g.name().to_string(),
                    arity: 1,
                    body: SmoothExpr::apply(g, SmoothExpr::Var(0)),
                    partials: vec![elementary_partial(g)],
                })
                .collect()
        });
        let i = Elementary::ALL.iter().position(|&g| g == f).unwrap();
        &table[i]
    }

    /// `x ↦ 1/x`.
    pub fn recip() -> &'static DerivativeRule {
        static RULE: OnceLock<DerivativeRule> = OnceLock::new();
        RULE.get_or_init(|| {
            let x = || SmoothExpr::Var(0);
            DerivativeRule {
                name: "recip".into(),
                arity: 1,
                body: SmoothExpr::int(1) / x(),
                partials: vec![-(SmoothExpr::int(1) / x().powi(2))],
            }
        })
    }

    /// `x ↦ -x`.
    pub fn neg() -> DerivativeRule {
        DerivativeRule {
            name: "neg".into(),
            arity: 1,
            body: -SmoothExpr::Var(0),
            partials: vec![SmoothExpr::int(-1)],
        }
    }

    /// `x ↦ x^n`.
    pub fn powi(n: i64) -> DerivativeRule {
        let x = SmoothExpr::Var(0);
        let partial = if n == 0 {
            SmoothExpr::int(0)
        } else {
            SmoothExpr::int(n) * x.clone().powi(n - 1)
        };
        DerivativeRule {
            name: format!("pow{n}"),
            arity: 1,
            body: x.powi(n),
            partials: vec![partial],
        }
    }

    /// `x ↦ x^q`.
    pub fn pow_rational(q: BigRational) -> DerivativeRule {
        let x = SmoothExpr::Var(0);
        let lowered = &q - BigRational::one();
        DerivativeRule {
            name: format!("pow({q})"),
            arity: 1,
            body: x.clone().pow_rational(q.clone()),
            partials: vec![SmoothExpr::rational(q) * x.pow_rational(lowered)],
        }
    }
}

/// First derivative of an elementary function as an expression in `Var(0)`.
pub fn elementary_partial(f: Elementary) -> SmoothExpr {
    use Elementary::*;
    let x = || SmoothExpr::Var(0);
    let one = || SmoothExpr::int(1);
    let ap = |g: Elementary| SmoothExpr::apply(g, x());
    match f {
        Sqrt => one() / (SmoothExpr::int(2) * ap(Sqrt)),
        Exp => ap(Exp),
        Log => one() / x(),
        Sin => ap(Cos),
        Cos => -ap(Sin),
        Tan => one() + ap(Tan).powi(2),
        Sinh => ap(Cosh),
        Cosh => ap(Sinh),
        Tanh => one() - ap(Tanh).powi(2),
        Asin => one() / SmoothExpr::apply(Sqrt, one() - x().powi(2)),
        Acos => -(one() / SmoothExpr::apply(Sqrt, one() - x().powi(2))),
        Atan => one() / (one() + x().powi(2)),
    }
}
