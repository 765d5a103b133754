//! Sparse multivariate polynomials, term orders and multivariate division.

mod monomial;
mod polynomial;

pub use monomial::{ExponentVector, MonomialOrder, MultiIndexIter};
pub use polynomial::{divide_with_remainder, Field, PolyDisplay, Polynomial, QPolynomial, Ring};

use crate::error::{check_dim, Error, Result};

/// A list of generators over exact rationals sharing one variable count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    generators: Vec<QPolynomial>,
    nvars: usize,
}

impl Ideal {
    pub fn new(nvars: usize, generators: Vec<QPolynomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidIdeal(
                "an ideal needs at least one generator".into(),
            ));
        }
        for g in &generators {
            check_dim(nvars, g.nvars())?;
            if g.is_zero() {
                return Err(Error::InvalidIdeal("zero generator".into()));
            }
        }
        Ok(Ideal { generators, nvars })
    }

    pub fn generators(&self) -> &[QPolynomial] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }
}
