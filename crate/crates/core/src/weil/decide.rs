use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::polyring::{ExponentVector, Ideal, MonomialOrder, Polynomial};

use super::settings::{box_size, WeilSettings, DEFAULT_SIZE_LIMIT};

/// Why an ideal does not present a Weil algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotWeil {
    /// The ideal is the whole ring.
    UnitIdeal,
    /// The quotient is infinite-dimensional.
    NotZeroDimensional,
    /// The minimal generator of `I ∩ ℝ[X_var]` is not a monomial.
    NotNilpotent { var: usize },
}

impl fmt::Display for NotWeil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotWeil::UnitIdeal => write!(f, "unit ideal"),
            NotWeil::NotZeroDimensional => write!(f, "not zero-dimensional"),
            NotWeil::NotNilpotent { var } => write!(f, "variable {var} is not nilpotent"),
        }
    }
}

/// Outcome of the Weil test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeilTest {
    Weil(WeilSettings),
    No(NotWeil),
}

impl WeilTest {
    pub fn settings(&self) -> Option<&WeilSettings> {
        match self {
            WeilTest::Weil(s) => Some(s),
            WeilTest::No(_) => None,
        }
    }

    pub fn into_settings(self) -> Option<WeilSettings> {
        match self {
            WeilTest::Weil(s) => Some(s),
            WeilTest::No(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct WeilTestOptions {
    pub order: MonomialOrder,
    pub size_limit: u128,
}

impl Default for WeilTestOptions {
    fn default() -> Self {
        WeilTestOptions {
            order: MonomialOrder::DegRevLex,
            size_limit: DEFAULT_SIZE_LIMIT,
        }
    }
}

/// Decides whether `ℝ[X]/I` is a Weil algebra and, if so, computes its settings.
pub fn weil_test(ideal: &Ideal) -> Result<WeilTest> {
    weil_test_with(ideal, &WeilTestOptions::default())
}

pub fn weil_test_with(ideal: &Ideal, opts: &WeilTestOptions) -> Result<WeilTest> {
    let gb = groebner_basis(ideal, opts.order);
    weil_settings_from_basis(&gb, opts.size_limit)
}

/// The Weil test on an already computed Gröbner basis.
pub fn weil_settings_from_basis(gb: &GroebnerBasis, size_limit: u128) -> Result<WeilTest> {
    if gb.is_unit() {
        return Ok(WeilTest::No(NotWeil::UnitIdeal));
    }
    if !gb.is_zero_dimensional() {
        return Ok(WeilTest::No(NotWeil::NotZeroDimensional));
    }
    let n = gb.nvars();
    let mut max_powers = Vec::with_capacity(n);
    for var in 0..n {
        let g = gb.univariate_minimal_generator(var)?;
        if !g.is_monomial() {
            return Ok(WeilTest::No(NotWeil::NotNilpotent { var }));
        }
        let deg = g.total_degree().expect("generator is nonzero");
        max_powers.push(u32::try_from(deg).expect("degree fits") - 1);
    }
    let size = box_size(&max_powers);
    if size > size_limit {
        return Err(Error::TooLarge {
            size,
            limit: size_limit,
        });
    }
    let basis = gb.quotient_monomial_basis()?;
    let index: HashMap<ExponentVector, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(j, b)| (b, j))
        .collect();
    let settings = WeilSettings::from_representation(basis, max_powers, |alpha| {
        let mono = Polynomial::monomial(alpha.clone(), BigRational::from_integer(1.into()));
        gb.coordinates(&mono, &index)
    })?;
    Ok(WeilTest::Weil(settings))
}
