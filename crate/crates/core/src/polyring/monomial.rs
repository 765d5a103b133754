use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result};

/// Exponent vector of a monomial `X^α`, one entry per variable.
///
/// The derived `Ord` is the plain lexicographic order on the entries, which is
/// what `BTreeMap` keys and basis listings use. Term orders go through
/// [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    /// The exponent vector of `X_var`.
    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        ExponentVector(e)
    }

    pub fn pure_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        ExponentVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `true` when every entry of `self` is at most the matching entry of `other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise bound check, `α ≤ caps`.
    pub fn within(&self, caps: &[u32]) -> bool {
        self.0.len() == caps.len() && self.0.iter().zip(caps).all(|(a, c)| a <= c)
    }

    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        if other.divides(self) {
            Some(ExponentVector(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// If this is `X_i^p` with `p > 0` for a single `i`, returns `i`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Concatenation: the monomial `X^α Y^β` over the disjoint union of variables.
    pub fn concat(&self, other: &ExponentVector) -> ExponentVector {
        let mut e = self.0.clone();
        e.extend_from_slice(&other.0);
        ExponentVector(e)
    }

    /// `α!` as an exact integer.
    pub fn factorial(&self) -> num_bigint::BigUint {
        let mut acc = num_bigint::BigUint::from(1u32);
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// All multi-indices `α` with `α ≤ caps` componentwise, in row-major order
/// (the last variable varies fastest).
#[derive(Debug, Clone)]
pub struct MultiIndexIter {
    caps: Vec<u32>,
    cur: Option<Vec<u32>>,
}

impl MultiIndexIter {
    pub fn new(caps: &[u32]) -> Self {
        MultiIndexIter {
            caps: caps.to_vec(),
            cur: Some(vec![0; caps.len()]),
        }
    }
}

impl Iterator for MultiIndexIter {
    type Item = ExponentVector;

    fn next(&mut self) -> Option<ExponentVector> {
        let cur = self.cur.as_mut()?;
        let out = ExponentVector(cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.caps[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// Term orders on exponent vectors. Variable 0 is the largest variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    DegLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        check_dim(a.len(), b.len())?;
        Ok(self.cmp(a, b))
    }

    /// Comparison without the length check; callers guarantee matching lengths.
    pub(crate) fn cmp(self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::DegRevLex => a.total_degree().cmp(&b.total_degree()).then_with(|| {
                // the last differing exponent decides, smaller exponent wins
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "degrevlex" | "grevlex" => Ok(MonomialOrder::DegRevLex),
            "lex" => Ok(MonomialOrder::Lex),
            "deglex" | "grlex" => Ok(MonomialOrder::DegLex),
            other => Err(format!("unknown monomial order `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn lex_prefers_first_variable() {
        assert_eq!(
            MonomialOrder::Lex
                .compare(&ev(&[1, 0]), &ev(&[0, 1]))
                .unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn degrevlex_compares_degree_first() {
        assert_eq!(
            MonomialOrder::DegRevLex
                .compare(&ev(&[0, 2]), &ev(&[1, 0]))
                .unwrap(),
            Ordering::Greater
        );
        // same degree: x^2 y > y^3
        assert_eq!(
            MonomialOrder::DegRevLex
                .compare(&ev(&[2, 1]), &ev(&[0, 3]))
                .unwrap(),
            Ordering::Greater
        );
        // classic separator between deglex and degrevlex: x y z^2 vs x^2... (deg 4, 3 vars)
        let a = ev(&[1, 2, 1]);
        let b = ev(&[2, 0, 2]);
        assert_eq!(
            MonomialOrder::DegRevLex.compare(&a, &b).unwrap(),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::DegLex.compare(&a, &b).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn reflexive_in_every_order() {
        for ord in [
            MonomialOrder::Lex,
            MonomialOrder::DegLex,
            MonomialOrder::DegRevLex,
        ] {
            assert_eq!(
                ord.compare(&ev(&[1, 1]), &ev(&[1, 1])).unwrap(),
                Ordering::Equal
            );
        }
    }

    #[test]
    fn length_mismatch_is_a_dimension_error() {
        assert_eq!(
            MonomialOrder::Lex.compare(&ev(&[1]), &ev(&[1, 0])),
            Err(Error::Dimension {
                expected: 1,
                found: 2
            })
        );
    }

    #[test]
    fn multi_indices_are_row_major() {
        let all: Vec<_> = MultiIndexIter::new(&[1, 2]).collect();
        assert_eq!(
            all,
            vec![
                ev(&[0, 0]),
                ev(&[0, 1]),
                ev(&[0, 2]),
                ev(&[1, 0]),
                ev(&[1, 1]),
                ev(&[1, 2])
            ]
        );
        assert_eq!(MultiIndexIter::new(&[]).count(), 1);
    }

    #[test]
    fn factorial_of_multi_index() {
        assert_eq!(ev(&[3, 2, 0]).factorial(), num_bigint::BigUint::from(12u32));
    }
}
