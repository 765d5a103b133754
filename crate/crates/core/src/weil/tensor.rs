use num_rational::BigRational;
use num_traits::Zero;

use crate::error::Result;
use crate::polyring::MultiIndexIter;

use super::settings::WeilSettings;

/// Kronecker product: `out[j·ℓ₂ + k] = c_j · d_k`.
pub fn kronecker(c: &[BigRational], d: &[BigRational]) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(c.len() * d.len());
    for cj in c {
        for dk in d {
            out.push(cj * dk);
        }
    }
    out
}

fn sparse_kronecker(
    c: &[(usize, BigRational)],
    d: &[(usize, BigRational)],
    l2: usize,
    len: usize,
) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (j, cj) in c {
        for (k, dk) in d {
            out[j * l2 + k] = cj * dk;
        }
    }
    out
}

/// Settings of `W₁ ⊗ W₂` on the disjoint union of the variables.
///
/// Basis monomial `j·ℓ₂ + k` is `b¹_j b²_k`; tables are Kronecker products of
/// the factors' tables.
pub fn weil_tensor(w1: &WeilSettings, w2: &WeilSettings) -> Result<WeilSettings> {
    let (l1, l2) = (w1.dim(), w2.dim());
    let len = l1 * l2;
    let basis: Vec<_> = w1
        .basis()
        .iter()
        .flat_map(|b1| w2.basis().iter().map(move |b2| b1.concat(b2)))
        .collect();

    let mut table = Vec::new();
    for i1 in 0..l1 {
        for i2 in 0..l2 {
            let i = i1 * l2 + i2;
            for j1 in 0..l1 {
                let e1 = w1.mult_sparse(i1, j1);
                if e1.is_empty() {
                    continue;
                }
                for j2 in 0..l2 {
                    let j = j1 * l2 + j2;
                    if j < i {
                        continue;
                    }
                    let e2 = w2.mult_sparse(i2, j2);
                    if e2.is_empty() {
                        continue;
                    }
                    table.push(((i, j), sparse_kronecker(e1, e2, l2, len)));
                }
            }
        }
    }

    let mut non_van = Vec::new();
    for a1 in MultiIndexIter::new(w1.max_powers()) {
        let r1 = w1.non_van_sparse(&a1).expect("inside box");
        if r1.is_empty() {
            continue;
        }
        for a2 in MultiIndexIter::new(w2.max_powers()) {
            let r2 = w2.non_van_sparse(&a2).expect("inside box");
            if r2.is_empty() {
                continue;
            }
            non_van.push((a1.concat(&a2), sparse_kronecker(r1, r2, l2, len)));
        }
    }

    let mut max_powers = w1.max_powers().to_vec();
    max_powers.extend_from_slice(w2.max_powers());
    WeilSettings::from_parts(
        w1.var_count() + w2.var_count(),
        basis,
        max_powers,
        table,
        non_van,
    )
}
