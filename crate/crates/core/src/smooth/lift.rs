use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{eval_expr, Elementary, SmoothExpr};
use crate::scalar::Scalar;
use crate::weil::{WeilElement, WeilSettings};

use super::jet::{diff_other, rf, rf_inv, TaylorPoly, TowerJet};
use super::rules::DerivativeRule;

/// Lifts an m-ary smooth function to jets.
///
/// Mirrors the lazy tower recursion: the value is `f` at the values; the
/// branch differentiated by `x_0` is `Σ_i ∂_0(x_i) · (∂_i f)(x)`, evaluated one
/// order lower in `x_0`; the remaining branch lifts `f` again with `x_0` retired.
pub fn jet_lift_nary<S: Scalar>(rule: &DerivativeRule, xs: &[TowerJet<S>]) -> Result<TowerJet<S>> {
    if xs.len() != rule.arity() {
        return Err(Error::Dimension {
            expected: rule.arity(),
            found: xs.len(),
        });
    }
    let Some(first) = xs.first() else {
        return Err(Error::Dimension {
            expected: 1,
            found: 0,
        });
    };
    for x in &xs[1..] {
        if x.caps() != first.caps() {
            return Err(Error::CapsMismatch {
                left: first.caps().to_vec(),
                right: x.caps().to_vec(),
            });
        }
    }
    lift_rec(rule, xs)
}

fn lift_rec<S: Scalar>(rule: &DerivativeRule, xs: &[TowerJet<S>]) -> Result<TowerJet<S>> {
    let caps = xs[0].caps().to_vec();
    if caps.is_empty() {
        let values: Vec<S> = xs.iter().map(|x| x.value().clone()).collect();
        let v = eval_expr(rule.body(), &values, &())?;
        return Ok(TowerJet::constant(&[], v));
    }
    let retired = xs.iter().map(diff_other).collect::<Result<Vec<_>>>()?;
    let rest = lift_rec(rule, &retired)?;

    let mut lower = caps.clone();
    let deriv = if caps[0] == 0 {
        None
    } else {
        lower[0] -= 1;
        let truncated = xs
            .iter()
            .map(|x| x.truncate(&lower))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = TowerJet::zero(&lower);
        for (x, partial) in xs.iter().zip(rule.partials()) {
            let dx = x.first_derivative().expect("caps[0] > 0");
            if dx.is_zero() {
                continue;
            }
            let p = eval_expr(partial, &truncated, &lower)?;
            acc = acc.checked_add(&dx.checked_mul(&p)?)?;
        }
        Some(acc)
    };
    Ok(TowerJet::assemble(caps[0], rest, deriv))
}

/// Lifts an elementary function to jets.
pub fn jet_lift_unary<S: Scalar>(f: Elementary, x: &TowerJet<S>) -> Result<TowerJet<S>> {
    jet_lift_nary(DerivativeRule::elementary(f), std::slice::from_ref(x))
}

/// The tower of `f(g_1, …, g_m)`: the expression folded over jet arithmetic.
pub fn tower_eval<S: Scalar>(
    f: &SmoothExpr,
    xs: &[TowerJet<S>],
    caps: &[u32],
) -> Result<TowerJet<S>> {
    for x in xs {
        if x.caps() != caps {
            return Err(Error::CapsMismatch {
                left: caps.to_vec(),
                right: x.caps().to_vec(),
            });
        }
    }
    eval_expr(f, xs, &caps.to_vec())
}

/// C∞ lifting to truncated power series: `RF(Tower(f)(RF⁻¹ g_1, …, RF⁻¹ g_m))`.
pub fn lift_series<S: Scalar>(f: &SmoothExpr, gs: &[TaylorPoly<S>]) -> Result<TaylorPoly<S>> {
    let first = gs.first().ok_or(Error::Dimension {
        expected: 1,
        found: 0,
    })?;
    lift_series_with_caps(f, gs, first.caps())
}

pub(crate) fn lift_series_with_caps<S: Scalar>(
    f: &SmoothExpr,
    gs: &[TaylorPoly<S>],
    caps: &[u32],
) -> Result<TaylorPoly<S>> {
    if f.min_arity() > gs.len() {
        return Err(Error::Dimension {
            expected: f.min_arity(),
            found: gs.len(),
        });
    }
    let towers: Vec<TowerJet<S>> = gs.iter().map(rf_inv).collect();
    let h = tower_eval(f, &towers, caps)?;
    Ok(rf(&h))
}

/// C∞ structure of a Weil algebra: `W(f)(u_1, …, u_m)`.
///
/// Each `u_i` becomes the polynomial `Σ_j u_i[j] X^{b_j}`, the series lifting
/// is truncated at the maximal nonvanishing powers, and the result is mapped
/// back through the non-vanishing monomial table.
pub fn lift_weil<S: Scalar>(
    settings: &Arc<WeilSettings>,
    f: &SmoothExpr,
    us: &[WeilElement<S>],
) -> Result<WeilElement<S>> {
    for u in us {
        if !u.same_algebra(settings) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let caps = settings.max_powers().to_vec();
    let gs: Vec<TaylorPoly<S>> = us
        .iter()
        .map(|u| {
            let mut coeffs = vec![S::zero(); caps.iter().map(|&c| c as usize + 1).product()];
            for (b, c) in settings.basis().iter().zip(u.coeffs()) {
                coeffs[settings.box_offset(b)] = c.clone();
            }
            TaylorPoly::from_coeffs(&caps, coeffs)
        })
        .collect::<Result<_>>()?;
    let h = lift_series_with_caps(f, &gs, &caps)?;

    let mut v = vec![S::zero(); settings.dim()];
    for (alpha, c) in h.iter() {
        if c.is_zero() {
            continue;
        }
        let repr = settings
            .non_van_sparse(&alpha)
            .expect("non-vanishing table covers every α ≤ max powers");
        for (j, r) in repr {
            v[*j] = v[*j].clone() + c.clone() * S::from_rational(r);
        }
    }
    WeilElement::new(settings.clone(), v)
}
