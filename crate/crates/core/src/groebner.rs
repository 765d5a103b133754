//! Buchberger's algorithm and the zero-dimensional toolkit built on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::polyring::{
    divide_with_remainder, ExponentVector, Ideal, MonomialOrder, MultiIndexIter, QPolynomial,
};

/// A reduced Gröbner basis, sorted ascending by leading monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    polys: Vec<QPolynomial>,
    order: MonomialOrder,
    nvars: usize,
}

impl GroebnerBasis {
    pub fn polys(&self) -> &[QPolynomial] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn leading_monomials(&self) -> Vec<&ExponentVector> {
        self.polys
            .iter()
            .filter_map(|p| p.leading_monomial(self.order))
            .collect()
    }

    /// `⟨G⟩ = (1)`.
    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant())
    }

    pub fn normal_form(&self, f: &QPolynomial) -> Result<QPolynomial> {
        check_dim(self.nvars, f.nvars())?;
        let (_, r) = divide_with_remainder(f, &self.polys, self.order)?;
        Ok(r)
    }

    pub fn contains(&self, f: &QPolynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// For every variable some leading monomial is a pure power of it.
    pub fn is_zero_dimensional(&self) -> bool {
        self.pure_power_bounds().is_some()
    }

    /// Smallest `d_i` with `X_i^{d_i}` a leading monomial, per variable.
    fn pure_power_bounds(&self) -> Option<Vec<u32>> {
        if self.is_unit() {
            return Some(vec![0; self.nvars]);
        }
        let mut bounds: Vec<Option<u32>> = vec![None; self.nvars];
        for lm in self.leading_monomials() {
            if let Some(i) = lm.pure_power_var() {
                let d = lm[i];
                bounds[i] = Some(bounds[i].map_or(d, |b| b.min(d)));
            }
        }
        bounds.into_iter().collect()
    }

    /// Standard monomials: those divisible by no leading monomial, a vector
    /// space basis of the quotient ring. Sorted ascending lexicographically by
    /// exponent vector, so the unit monomial comes first.
    pub fn quotient_monomial_basis(&self) -> Result<Vec<ExponentVector>> {
        let bounds = self.pure_power_bounds().ok_or(Error::NotZeroDimensional)?;
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let leads = self.leading_monomials();
        let mut out = Vec::new();
        for_each_bounded(&bounds, |e| {
            if !leads.iter().any(|lm| lm.divides(e)) {
                out.push(e.clone());
            }
        });
        out.sort();
        Ok(out)
    }

    /// Normal form of `f` as coordinates over `basis` (standard monomials).
    pub fn coordinates(
        &self,
        f: &QPolynomial,
        index: &HashMap<ExponentVector, usize>,
    ) -> Result<Vec<BigRational>> {
        let nf = self.normal_form(f)?;
        let mut v = vec![BigRational::zero(); index.len()];
        for (e, c) in nf.terms() {
            let k = *index
                .get(e)
                .expect("normal forms are supported on standard monomials");
            v[k] = c.clone();
        }
        Ok(v)
    }

    /// The monic generator of `⟨G⟩ ∩ ℚ[X_var]`, found as the first linear
    /// dependency among the normal forms of `1, X_var, X_var², …`.
    pub fn univariate_minimal_generator(&self, var: usize) -> Result<QPolynomial> {
        if var >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: var,
                limit: self.nvars,
            });
        }
        if !self.is_zero_dimensional() {
            return Err(Error::NotZeroDimensional);
        }
        let n = self.nvars;
        if self.is_unit() {
            return Ok(QPolynomial::one(n));
        }
        let x = QPolynomial::var(n, var)?;
        let mut elim = Eliminator::default();
        let mut power = QPolynomial::one(n);
        for degree in 0usize.. {
            let nf = self.normal_form(&power)?;
            let row: BTreeMap<ExponentVector, BigRational> =
                nf.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
            if let Some(combo) = elim.insert(row, degree) {
                // combo[k] is the coefficient of X_var^k; the top one is nonzero
                let lead = combo[degree].clone();
                let terms = combo.into_iter().enumerate().map(|(k, c)| {
                    (
                        ExponentVector::pure_power(n, var, k as u32),
                        c / lead.clone(),
                    )
                });
                return QPolynomial::from_terms(n, terms);
            }
            power = nf.checked_mul(&x)?;
        }
        unreachable!("zero-dimensional quotients are finite dimensional")
    }
}

/// Incremental exact Gaussian elimination tracking combinations of inserted rows.
#[derive(Default)]
struct Eliminator {
    // (pivot monomial, row, combination of original rows)
    rows: Vec<(
        ExponentVector,
        BTreeMap<ExponentVector, BigRational>,
        Vec<BigRational>,
    )>,
}

impl Eliminator {
    /// Inserts row number `id`; returns the dependency combination if the row is
    /// in the span of earlier rows.
    fn insert(
        &mut self,
        mut row: BTreeMap<ExponentVector, BigRational>,
        id: usize,
    ) -> Option<Vec<BigRational>> {
        let mut combo = vec![BigRational::zero(); id + 1];
        combo[id] = BigRational::one();
        for (pivot, prow, pcombo) in &self.rows {
            if let Some(c) = row.get(pivot).cloned() {
                for (e, v) in prow {
                    let entry = row.entry(e.clone()).or_insert_with(BigRational::zero);
                    *entry -= &c * v;
                    if entry.is_zero() {
                        row.remove(e);
                    }
                }
                for (k, v) in pcombo.iter().enumerate() {
                    combo[k] -= &c * v;
                }
            }
        }
        match row.iter().next().map(|(e, c)| (e.clone(), c.clone())) {
            None => Some(combo),
            Some((pivot, pc)) => {
                let inv = BigRational::one() / pc;
                let row = row.into_iter().map(|(e, v)| (e, v * &inv)).collect();
                let combo = combo.into_iter().map(|v| v * &inv).collect();
                self.rows.push((pivot, row, combo));
                None
            }
        }
    }
}

/// Calls `f` on every `e` with `e_i < bounds_i`.
pub(crate) fn for_each_bounded(bounds: &[u32], mut f: impl FnMut(&ExponentVector)) {
    if bounds.contains(&0) {
        return;
    }
    let caps: Vec<u32> = bounds.iter().map(|b| b - 1).collect();
    for e in MultiIndexIter::new(&caps) {
        f(&e);
    }
}

fn s_polynomial(f: &QPolynomial, g: &QPolynomial, ord: MonomialOrder) -> QPolynomial {
    let (fe, fc) = f.leading_term(ord).expect("nonzero");
    let (ge, gc) = g.leading_term(ord).expect("nonzero");
    let lcm = fe.lcm(ge);
    let a = f.mul_term(&lcm.div(fe).unwrap(), &(BigRational::one() / fc.clone()));
    let b = g.mul_term(&lcm.div(ge).unwrap(), &(BigRational::one() / gc.clone()));
    a.checked_sub(&b).expect("same ring")
}

/// Reduced Gröbner basis of `ideal` under `ord`.
///
/// Buchberger's algorithm with the coprime and chain criteria; pairs are
/// processed by the normal strategy (smallest lcm first, ties by index).
pub fn groebner_basis(ideal: &Ideal, ord: MonomialOrder) -> GroebnerBasis {
    let nvars = ideal.nvars();
    let mut basis: Vec<QPolynomial> = Vec::new();
    for g in ideal.generators() {
        let (_, r) = divide_with_remainder(g, &basis, ord).expect("same ring");
        if !r.is_zero() {
            basis.push(r.make_monic(ord));
        }
    }
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let (i, j) = *pending
            .iter()
            .min_by(|&&(a, b), &&(c, d)| {
                let l1 = pair_lcm(&basis, a, b, ord);
                let l2 = pair_lcm(&basis, c, d, ord);
                ord.cmp(&l1, &l2).then((a, b).cmp(&(c, d)))
            })
            .unwrap();
        pending.remove(&(i, j));

        let li = basis[i].leading_monomial(ord).unwrap().clone();
        let lj = basis[j].leading_monomial(ord).unwrap().clone();
        if li.is_coprime(&lj) {
            continue;
        }
        let lcm = li.lcm(&lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_monomial(ord).unwrap().divides(&lcm)
                && !pending.contains(&ordered(i, k))
                && !pending.contains(&ordered(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let (_, r) = divide_with_remainder(&s, &basis, ord).expect("same ring");
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic(ord);
        if r.is_constant() {
            return GroebnerBasis {
                polys: vec![QPolynomial::one(nvars)],
                order: ord,
                nvars,
            };
        }
        let m = basis.len();
        basis.push(r);
        for k in 0..m {
            pending.insert((k, m));
        }
    }

    GroebnerBasis {
        polys: reduce_basis(basis, ord),
        order: ord,
        nvars,
    }
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn pair_lcm(basis: &[QPolynomial], i: usize, j: usize, ord: MonomialOrder) -> ExponentVector {
    basis[i]
        .leading_monomial(ord)
        .unwrap()
        .lcm(basis[j].leading_monomial(ord).unwrap())
}

/// Minimalises, inter-reduces, normalises and sorts a Gröbner basis.
fn reduce_basis(mut basis: Vec<QPolynomial>, ord: MonomialOrder) -> Vec<QPolynomial> {
    if basis.iter().any(|p| p.is_constant()) {
        let n = basis[0].nvars();
        return vec![QPolynomial::one(n)];
    }
    basis.sort_by(|a, b| {
        ord.cmp(
            a.leading_monomial(ord).unwrap(),
            b.leading_monomial(ord).unwrap(),
        )
    });
    let mut minimal: Vec<QPolynomial> = Vec::new();
    for p in basis {
        let lm = p.leading_monomial(ord).unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial(ord).unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<QPolynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let (_, r) = divide_with_remainder(&minimal[k], &others, ord).expect("same ring");
        reduced.push(r.make_monic(ord));
    }
    reduced.sort_by(|a, b| {
        let o = ord.cmp(
            a.leading_monomial(ord).unwrap(),
            b.leading_monomial(ord).unwrap(),
        );
        debug_assert_ne!(o, Ordering::Equal);
        o
    });
    reduced
}
