use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::{Carrier, Constant, Elementary, SmoothExpr};
use crate::scalar::Scalar;
use crate::smooth::lift_weil;

use super::settings::WeilSettings;

/// An element of a Weil algebra: coordinates over the settings' basis.
#[derive(Clone)]
pub struct WeilElement<S> {
    settings: Arc<WeilSettings>,
    coeffs: Vec<S>,
}

impl<S: Scalar> WeilElement<S> {
    pub fn new(settings: Arc<WeilSettings>, coeffs: Vec<S>) -> Result<Self> {
        if coeffs.len() != settings.dim() {
            return Err(Error::Dimension {
                expected: settings.dim(),
                found: coeffs.len(),
            });
        }
        Ok(WeilElement { settings, coeffs })
    }

    pub fn zero(settings: &Arc<WeilSettings>) -> Self {
        Self::inject(S::zero(), settings)
    }

    pub fn one(settings: &Arc<WeilSettings>) -> Self {
        Self::inject(S::one(), settings)
    }

    /// `c · 1`: the scalar placed at the unit basis monomial.
    pub fn inject(c: S, settings: &Arc<WeilSettings>) -> Self {
        let mut coeffs = vec![S::zero(); settings.dim()];
        coeffs[0] = c;
        WeilElement {
            settings: settings.clone(),
            coeffs,
        }
    }

    /// The class of the variable `X_i`.
    pub fn generator(settings: &Arc<WeilSettings>, i: usize) -> Result<Self> {
        if i >= settings.var_count() {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: settings.var_count(),
            });
        }
        let mut coeffs = vec![S::zero(); settings.dim()];
        let unit = crate::polyring::ExponentVector::unit(settings.var_count(), i);
        if let Some(repr) = settings.non_van_sparse(&unit) {
            for (j, c) in repr {
                coeffs[*j] = S::from_rational(c);
            }
        }
        Ok(WeilElement {
            settings: settings.clone(),
            coeffs,
        })
    }

    pub fn settings(&self) -> &Arc<WeilSettings> {
        &self.settings
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// The standard part: the coefficient of the unit monomial.
    pub fn real_part(&self) -> &S {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn same_algebra(&self, settings: &Arc<WeilSettings>) -> bool {
        Arc::ptr_eq(&self.settings, settings) || *self.settings == **settings
    }

    fn check(&self, other: &Self) -> Result<()> {
        if other.same_algebra(&self.settings) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch)
        }
    }

    fn zip(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Result<Self> {
        self.check(other)?;
        Ok(WeilElement {
            settings: self.settings.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() + b.clone())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        WeilElement {
            settings: self.settings.clone(),
            coeffs: self.coeffs.iter().map(|a| c.clone() * a.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        WeilElement {
            settings: self.settings.clone(),
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }

    /// Product through the multiplication table.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let l = self.settings.dim();
        let mut out = vec![S::zero(); l];
        for i in 0..l {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..l {
                let b = &other.coeffs[j];
                if b.is_zero() {
                    continue;
                }
                let entry = self.settings.mult_sparse(i, j);
                if entry.is_empty() {
                    continue;
                }
                let ab = a.clone() * b.clone();
                for (k, c) in entry {
                    out[*k] = out[*k].clone() + ab.clone() * S::from_rational(c);
                }
            }
        }
        Ok(WeilElement {
            settings: self.settings.clone(),
            coeffs: out,
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.settings);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same algebra");
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base).expect("same algebra");
            }
        }
        acc
    }

    /// Applies a smooth function through the C∞ structure of the algebra.
    pub fn lift(&self, f: &SmoothExpr) -> Result<Self> {
        lift_weil(&self.settings, f, std::slice::from_ref(self))
    }
}

impl<S: Scalar> PartialEq for WeilElement<S> {
    fn eq(&self, other: &Self) -> bool {
        other.same_algebra(&self.settings) && self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Debug for WeilElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeilElement")
            .field("basis", &self.settings.basis())
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl<S: Scalar> Carrier for WeilElement<S> {
    type Context = Arc<WeilSettings>;

    fn constant(settings: &Arc<WeilSettings>, c: &Constant) -> Result<Self> {
        let v = match c {
            Constant::Rational(q) => S::from_rational(q),
            other => S::constant(other)?,
        };
        Ok(Self::inject(v, settings))
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
        self.check(rhs)?;
        if rhs.coeffs[1..].iter().all(Scalar::is_zero) {
            let d = &rhs.coeffs[0];
            let coeffs = self
                .coeffs
                .iter()
                .map(|a| a.checked_div(d))
                .collect::<Result<Vec<_>>>()?;
            return Ok(WeilElement {
                settings: self.settings.clone(),
                coeffs,
            });
        }
        let recip = rhs.lift(&(SmoothExpr::int(1) / SmoothExpr::var(0)))?;
        self.checked_mul(&recip)
    }

    fn negate(&self) -> Self {
        self.neg()
    }

    fn apply(&self, f: Elementary) -> Result<Self> {
        self.lift(&SmoothExpr::apply(f, SmoothExpr::var(0)))
    }

    fn power_rational(&self, q: &BigRational) -> Result<Self> {
        self.lift(&SmoothExpr::var(0).pow_rational(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_expr, parse_expr};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn dual_number_product() {
        let w = Arc::new(WeilSettings::d1());
        let u = WeilElement::new(w.clone(), vec![q(2, 1), q(3, 1)]).unwrap();
        let v = WeilElement::new(w.clone(), vec![q(5, 1), q(-1, 2)]).unwrap();
        let p = u.checked_mul(&v).unwrap();
        assert_eq!(p.coeffs(), &[q(10, 1), q(-1, 1) + q(15, 1)]);
    }

    #[test]
    fn nilpotent_generator() {
        let w = Arc::new(WeilSettings::d_order(4).unwrap());
        let e = WeilElement::<BigRational>::generator(&w, 0).unwrap();
        assert!(!e.pow(3).is_zero());
        assert!(e.pow(4).is_zero());
        assert!(e.pow(2).checked_mul(&e.pow(2)).unwrap().is_zero());
        assert!(WeilElement::<BigRational>::generator(&w, 1).is_err());
    }

    #[test]
    fn linear_operations() {
        let w = Arc::new(WeilSettings::d1());
        let u = WeilElement::new(w.clone(), vec![q(1, 3), q(7, 1)]).unwrap();
        assert_eq!(u.checked_add(&WeilElement::zero(&w)).unwrap(), u);
        assert!(u.checked_sub(&u).unwrap().is_zero());
        assert_eq!(u.scale(&q(2, 1)).coeffs(), &[q(2, 3), q(14, 1)]);
        assert_eq!(WeilElement::one(&w).checked_mul(&u).unwrap(), u);
    }

    #[test]
    fn mismatched_algebras() {
        let a = Arc::new(WeilSettings::d1());
        let b = Arc::new(WeilSettings::d_order(3).unwrap());
        let u = WeilElement::<f64>::one(&a);
        let v = WeilElement::<f64>::one(&b);
        assert_eq!(u.checked_mul(&v), Err(Error::AlgebraMismatch));
        let a2 = Arc::new(WeilSettings::d1());
        assert!(u.checked_add(&WeilElement::one(&a2)).is_ok());
    }

    #[test]
    fn sine_of_dual_number() {
        let w = Arc::new(WeilSettings::d1());
        let x = WeilElement::inject(std::f64::consts::FRAC_PI_6, &w)
            .checked_add(&WeilElement::generator(&w, 0).unwrap())
            .unwrap();
        let s = x.apply(Elementary::Sin).unwrap();
        let a = std::f64::consts::FRAC_PI_6;
        assert!((s.coeffs()[0] - a.sin()).abs() < 1e-15);
        assert!((s.coeffs()[1] - a.cos()).abs() < 1e-15);
    }

    #[test]
    fn division_by_non_constant() {
        let w = Arc::new(WeilSettings::d_order(3).unwrap());
        let e = WeilElement::<BigRational>::generator(&w, 0).unwrap();
        let x = WeilElement::inject(q(2, 1), &w).checked_add(&e).unwrap();
        let f = parse_expr("1 / x", &["x"]).unwrap();
        let r = eval_expr(&f, std::slice::from_ref(&x), &w).unwrap();
        assert_eq!(r.coeffs(), &[q(1, 2), q(-1, 4), q(1, 8)]);
        assert_eq!(r.checked_mul(&x).unwrap(), WeilElement::one(&w));
    }
}
