use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::{Carrier, Constant, Elementary};
use crate::polyring::{ExponentVector, MultiIndexIter};
use crate::scalar::Scalar;

use super::lift::jet_lift_nary;
use super::rules::DerivativeRule;

/// Dense row-major storage over the box `α ≤ caps`, variable 0 slowest.
#[derive(Clone, PartialEq)]
struct Dense<S> {
    caps: Vec<u32>,
    coeffs: Vec<S>,
}

fn box_len(caps: &[u32]) -> usize {
    caps.iter().map(|&c| c as usize + 1).product()
}

fn offset(caps: &[u32], alpha: &[u32]) -> Option<usize> {
    if alpha.len() != caps.len() {
        return None;
    }
    let mut idx = 0usize;
    for (&a, &c) in alpha.iter().zip(caps) {
        if a > c {
            return None;
        }
        idx = idx * (c as usize + 1) + a as usize;
    }
    Some(idx)
}

impl<S: Scalar> Dense<S> {
    fn from_fn(caps: &[u32], mut f: impl FnMut(&ExponentVector) -> S) -> Self {
        Dense {
            caps: caps.to_vec(),
            coeffs: MultiIndexIter::new(caps).map(|a| f(&a)).collect(),
        }
    }

    fn constant(caps: &[u32], value: S) -> Self {
        let mut coeffs = vec![S::zero(); box_len(caps)];
        coeffs[0] = value;
        Dense {
            caps: caps.to_vec(),
            coeffs,
        }
    }

    fn from_coeffs(caps: &[u32], coeffs: Vec<S>) -> Result<Self> {
        let expected = box_len(caps);
        if coeffs.len() != expected {
            return Err(Error::Dimension {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Dense {
            caps: caps.to_vec(),
            coeffs,
        })
    }

    fn get(&self, alpha: &[u32]) -> Option<&S> {
        offset(&self.caps, alpha).map(|i| &self.coeffs[i])
    }

    fn iter(&self) -> impl Iterator<Item = (ExponentVector, &S)> {
        MultiIndexIter::new(&self.caps).zip(self.coeffs.iter())
    }

    fn map(&self, f: impl Fn(&ExponentVector, &S) -> S) -> Self {
        Dense {
            caps: self.caps.clone(),
            coeffs: self.iter().map(|(a, c)| f(&a, c)).collect(),
        }
    }

    fn check_caps(&self, other: &Self) -> Result<()> {
        if self.caps == other.caps {
            Ok(())
        } else {
            Err(Error::CapsMismatch {
                left: self.caps.clone(),
                right: other.caps.clone(),
            })
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.check_caps(other)?;
        Ok(Dense {
            caps: self.caps.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }
}

impl<S: fmt::Debug> fmt::Debug for Dense<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (a, c) in MultiIndexIter::new(&self.caps).zip(&self.coeffs) {
            m.entry(&a, c);
        }
        m.finish()
    }
}

/// Truncated multivariate derivative tower.
///
/// The coefficient at `α` is `D^α g(0)` for the function `g` the jet
/// represents; only `α ≤ caps` is kept. Products use the binomial-weighted
/// Leibniz rule.
#[derive(Clone, PartialEq)]
pub struct TowerJet<S> {
    data: Dense<S>,
}

/// Truncated power series: the coefficient at `α` is `D^α g(0) / α!`.
#[derive(Clone, PartialEq)]
pub struct TaylorPoly<S> {
    data: Dense<S>,
}

macro_rules! shared_accessors {
    ($ty:ident) => {
        impl<S: Scalar> $ty<S> {
            pub fn constant(caps: &[u32], value: S) -> Self {
                $ty {
                    data: Dense::constant(caps, value),
                }
            }

            pub fn zero(caps: &[u32]) -> Self {
                Self::constant(caps, S::zero())
            }

            pub fn from_fn(caps: &[u32], f: impl FnMut(&ExponentVector) -> S) -> Self {
                $ty {
                    data: Dense::from_fn(caps, f),
                }
            }

            /// Coefficients in row-major order over `α ≤ caps`.
            pub fn from_coeffs(caps: &[u32], coeffs: Vec<S>) -> Result<Self> {
                Ok($ty {
                    data: Dense::from_coeffs(caps, coeffs)?,
                })
            }

            pub fn caps(&self) -> &[u32] {
                &self.data.caps
            }

            pub fn nvars(&self) -> usize {
                self.data.caps.len()
            }

            pub fn value(&self) -> &S {
                &self.data.coeffs[0]
            }

            /// Coefficient at `alpha`, or `None` outside the caps.
            pub fn get(&self, alpha: &[u32]) -> Option<&S> {
                self.data.get(alpha)
            }

            pub fn coeffs(&self) -> &[S] {
                &self.data.coeffs
            }

            pub fn iter(&self) -> impl Iterator<Item = (ExponentVector, &S)> {
                self.data.iter()
            }

            /// Every coefficient past the value is zero.
            pub fn is_constant(&self) -> bool {
                self.data.coeffs[1..].iter().all(S::is_zero)
            }

            pub fn is_zero(&self) -> bool {
                self.data.coeffs.iter().all(S::is_zero)
            }

            pub fn checked_add(&self, other: &Self) -> Result<Self> {
                Ok($ty {
                    data: self.data.zip(&other.data, |a, b| a.clone() + b.clone())?,
                })
            }

            pub fn checked_sub(&self, other: &Self) -> Result<Self> {
                Ok($ty {
                    data: self.data.zip(&other.data, |a, b| a.clone() - b.clone())?,
                })
            }

            pub fn scale(&self, c: &S) -> Self {
                $ty {
                    data: self.data.map(|_, a| a.clone() * c.clone()),
                }
            }

            pub fn neg(&self) -> Self {
                $ty {
                    data: self.data.map(|_, a| -a.clone()),
                }
            }

            /// Restriction to smaller caps.
            pub fn truncate(&self, caps: &[u32]) -> Result<Self> {
                if caps.len() != self.nvars() || caps.iter().zip(self.caps()).any(|(a, b)| a > b) {
                    return Err(Error::CapsMismatch {
                        left: self.caps().to_vec(),
                        right: caps.to_vec(),
                    });
                }
                Ok(Self::from_fn(caps, |a| {
                    self.data.get(a.as_slice()).unwrap().clone()
                }))
            }
        }

        impl<S: fmt::Debug> fmt::Debug for $ty<S> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!(stringify!($ty), "{:?}"), self.data)
            }
        }
    };
}

shared_accessors!(TowerJet);
shared_accessors!(TaylorPoly);

fn pascal<S: Scalar>(max: u32) -> Vec<Vec<S>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::from(1u32)]];
    for n in 1..=max as usize {
        let prev = &rows[n - 1];
        let mut row = vec![BigUint::from(1u32); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|b| S::from_integer(&BigInt::from(b)))
                .collect()
        })
        .collect()
}

impl<S: Scalar> TowerJet<S> {
    /// The jet of `t ↦ value + t_var`: value, unit first derivative along `var`.
    pub fn variable(caps: &[u32], value: S, var: usize) -> Result<Self> {
        if var >= caps.len() {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: caps.len(),
            });
        }
        let mut jet = Self::constant(caps, value);
        let mut alpha = vec![0; caps.len()];
        alpha[var] = 1;
        if let Some(i) = offset(caps, &alpha) {
            jet.data.coeffs[i] = S::one();
        }
        Ok(jet)
    }

    /// Leibniz product `D^α(fg) = Σ_{β≤α} C(α,β) D^β f D^{α−β} g`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.data.check_caps(&other.data)?;
        let caps = self.caps();
        let max = caps.iter().copied().max().unwrap_or(0);
        let binom = pascal::<S>(max);
        let mut out = Vec::with_capacity(self.data.coeffs.len());
        for (ia, alpha) in MultiIndexIter::new(caps).enumerate() {
            let mut acc: Option<S> = None;
            for beta in MultiIndexIter::new(alpha.as_slice()) {
                let ib = offset(caps, beta.as_slice()).unwrap();
                let f = &self.data.coeffs[ib];
                let g = &other.data.coeffs[ia - ib];
                if acc.is_some() && (f.is_zero() || g.is_zero()) {
                    continue;
                }
                let mut term = f.clone() * g.clone();
                for (&a, &b) in alpha.as_slice().iter().zip(beta.as_slice()) {
                    if b != 0 && b != a {
                        term = binom[a as usize][b as usize].clone() * term;
                    }
                }
                acc = Some(match acc {
                    None => term,
                    Some(a) => a + term,
                });
            }
            out.push(acc.unwrap_or_else(S::zero));
        }
        Ok(TowerJet {
            data: Dense {
                caps: caps.to_vec(),
                coeffs: out,
            },
        })
    }

    /// `1 / self`, lifted through the reciprocal rule.
    pub fn recip(&self) -> Result<Self> {
        jet_lift_nary(DerivativeRule::recip(), std::slice::from_ref(self))
    }

    /// `∂/∂x_0` of the represented function; caps lose one order in variable 0.
    pub(crate) fn first_derivative(&self) -> Option<Self> {
        let k0 = *self.caps().first()?;
        if k0 == 0 {
            return None;
        }
        let block = box_len(&self.caps()[1..]);
        let mut caps = self.caps().to_vec();
        caps[0] -= 1;
        Some(TowerJet {
            data: Dense {
                caps,
                coeffs: self.data.coeffs[block..].to_vec(),
            },
        })
    }

    /// Rebuilds a jet from its restriction to `α_0 = 0` and its `x_0` derivative.
    pub(crate) fn assemble(k0: u32, rest: Self, deriv: Option<Self>) -> Self {
        let mut caps = vec![k0];
        caps.extend_from_slice(rest.caps());
        let block = rest.data.coeffs.len();
        let mut coeffs = rest.data.coeffs;
        coeffs.reserve(block * k0 as usize);
        match deriv {
            Some(d) => coeffs.extend(d.data.coeffs),
            None => coeffs.extend(std::iter::repeat_n(S::zero(), block * k0 as usize)),
        }
        debug_assert_eq!(coeffs.len(), box_len(&caps));
        TowerJet {
            data: Dense { caps, coeffs },
        }
    }
}

/// Retires variable 0: the restriction to `α_0 = 0`, as a jet in the others.
pub fn diff_other<S: Scalar>(x: &TowerJet<S>) -> Result<TowerJet<S>> {
    if x.nvars() == 0 {
        return Err(Error::Dimension {
            expected: 1,
            found: 0,
        });
    }
    let block = box_len(&x.caps()[1..]);
    Ok(TowerJet {
        data: Dense {
            caps: x.caps()[1..].to_vec(),
            coeffs: x.data.coeffs[..block].to_vec(),
        },
    })
}

fn factorial<S: Scalar>(alpha: &ExponentVector) -> S {
    S::from_integer(&BigInt::from(alpha.factorial()))
}

/// Reciprocal factorial transform: divides the coefficient at `α` by `α!`.
pub fn rf<S: Scalar>(t: &TowerJet<S>) -> TaylorPoly<S> {
    TaylorPoly {
        data: t.data.map(|a, c| {
            c.checked_div(&factorial(a))
                .expect("factorials are nonzero")
        }),
    }
}

/// Inverse transform: multiplies the coefficient at `α` by `α!`.
pub fn rf_inv<S: Scalar>(p: &TaylorPoly<S>) -> TowerJet<S> {
    TowerJet {
        data: p.data.map(|a, c| factorial::<S>(a) * c.clone()),
    }
}

impl<S: Scalar> Carrier for TowerJet<S> {
    type Context = Vec<u32>;

    fn constant(caps: &Vec<u32>, c: &Constant) -> Result<Self> {
        let v = match c {
            Constant::Rational(q) => S::from_rational(q),
            other => S::constant(other)?,
        };
        Ok(TowerJet::constant(caps, v))
    }

    fn plus(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs)
    }

    fn minus(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs)
    }

    fn times(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs)
    }

    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.data.check_caps(&rhs.data)?;
        if rhs.is_constant() {
            let c = rhs.value();
            let coeffs = self
                .data
                .coeffs
                .iter()
                .map(|a| a.checked_div(c))
                .collect::<Result<Vec<_>>>()?;
            return TowerJet::from_coeffs(self.caps(), coeffs);
        }
        self.checked_mul(&rhs.recip()?)
    }

    fn negate(&self) -> Self {
        self.neg()
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        super::lift::jet_lift_unary(f, self)
    }

    fn power_rational(&self, q: &BigRational) -> Result<Self> {
        jet_lift_nary(
            &DerivativeRule::pow_rational(q.clone()),
            std::slice::from_ref(self),
        )
    }
}
