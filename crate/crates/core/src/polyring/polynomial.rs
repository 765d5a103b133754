use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::monomial::{ExponentVector, MonomialOrder};
use crate::error::{check_dim, Error, Result};

/// Coefficient ring for [`Polynomial`].
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Coefficient field; required for division.
pub trait Field: Ring + Div<Output = Self> {}

impl<T> Field for T where T: Ring + Div<Output = T> {}

/// Sparse multivariate polynomial keyed by exponent vector.
///
/// No stored coefficient is zero, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<S> {
    nvars: usize,
    terms: BTreeMap<ExponentVector, S>,
}

/// Polynomials with exact rational coefficients, the carrier for ideals.
pub type QPolynomial = Polynomial<BigRational>;

impl<S: Ring> Polynomial<S> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        Self::monomial(ExponentVector::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, S::one())
    }

    /// The variable `X_var`.
    pub fn var(nvars: usize, var: usize) -> Result<Self> {
        if var >= nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: nvars,
            });
        }
        Ok(Self::monomial(ExponentVector::unit(nvars, var), S::one()))
    }

    pub fn monomial(exps: ExponentVector, c: S) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, S)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            check_dim(nvars, e.len())?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in plain lexicographic key order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &S)> {
        self.terms.iter()
    }

    /// Terms sorted descending by `ord`.
    pub fn terms_ordered(&self, ord: MonomialOrder) -> Vec<(&ExponentVector, &S)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.cmp(b.0, a.0));
        v
    }

    pub fn coeff(&self, e: &ExponentVector) -> S {
        self.terms.get(e).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading_term(&self, ord: MonomialOrder) -> Option<(&ExponentVector, &S)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: MonomialOrder) -> Option<&ExponentVector> {
        self.leading_term(ord).map(|(e, _)| e)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    /// A single term with coefficient one.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_zero)
    }

    pub(crate) fn add_term(&mut self, e: ExponentVector, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea.mul(eb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    /// `c · X^e · self`.
    pub fn mul_term(&self, e: &ExponentVector, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(f, a)| (f.mul(e), a.clone() * c.clone()))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..n {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    /// Maps coefficients into another ring.
    pub fn map_coeffs<T: Ring>(&self, mut f: impl FnMut(&S) -> T) -> Polynomial<T> {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Renders with the given variable names, terms descending by `ord`.
    pub fn display_with<'a>(
        &'a self,
        names: &'a [String],
        ord: MonomialOrder,
    ) -> PolyDisplay<'a, S> {
        PolyDisplay {
            poly: self,
            names,
            ord,
        }
    }
}

impl<S: Field> Polynomial<S> {
    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn make_monic(&self, ord: MonomialOrder) -> Self {
        match self.leading_term(ord) {
            Some((_, lc)) if !lc.is_one() => {
                let inv = S::one() / lc.clone();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }
}

/// Multivariate division: `f = Σ qᵢ·gᵢ + r` with no term of `r` divisible by
/// any leading monomial of `divisors`.
pub fn divide_with_remainder<S: Field>(
    f: &Polynomial<S>,
    divisors: &[Polynomial<S>],
    ord: MonomialOrder,
) -> Result<(Vec<Polynomial<S>>, Polynomial<S>)> {
    let n = f.nvars();
    for g in divisors {
        check_dim(n, g.nvars())?;
    }
    let leads: Vec<Option<(ExponentVector, S)>> = divisors
        .iter()
        .map(|g| g.leading_term(ord).map(|(e, c)| (e.clone(), c.clone())))
        .collect();
    let mut quotients = vec![Polynomial::zero(n); divisors.len()];
    let mut remainder = Polynomial::zero(n);
    let mut p = f.clone();
    while let Some((lm, lc)) = p.leading_term(ord).map(|(e, c)| (e.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find_map(|(i, lead)| {
            let (e, c) = lead.as_ref()?;
            lm.div(e).map(|q| (i, q, lc.clone() / c.clone()))
        });
        match hit {
            Some((i, qe, qc)) => {
                quotients[i].add_term(qe.clone(), qc.clone());
                p = p.checked_sub(&divisors[i].mul_term(&qe, &qc))?;
            }
            None => {
                p.terms.remove(&lm);
                remainder.add_term(lm, lc);
            }
        }
    }
    Ok((quotients, remainder))
}

impl<S: Ring> fmt::Debug for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a Polynomial<S>,
    names: &'a [String],
    ord: MonomialOrder,
}

impl<S: Ring + fmt::Display> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.poly.terms_ordered(self.ord);
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = self
                        .names
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| format!("x{i}"));
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

fn is_negative<S: Ring + fmt::Display>(c: &S) -> bool {
    c.to_string().starts_with('-')
}
