#![allow(dead_code)]

use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use weil_core::expr::parse_polynomials;
use weil_core::weil::{weil_tensor, weil_test};
use weil_core::{Elementary, Ideal, SmoothExpr, WeilSettings};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn ideal(text: &str, vars: &[&str]) -> Ideal {
    Ideal::new(vars.len(), parse_polynomials(text, vars).unwrap()).unwrap()
}

/// The quotient by `⟨x² − y³, y⁴⟩`.
pub fn cusp_algebra() -> WeilSettings {
    weil_test(&ideal("x^2 - y^3, y^4", &["x", "y"]))
        .unwrap()
        .into_settings()
        .unwrap()
}

pub fn tensor_power(w: &WeilSettings, n: usize) -> WeilSettings {
    let mut acc = w.clone();
    for _ in 1..n {
        acc = weil_tensor(&acc, w).unwrap();
    }
    acc
}

/// A named algebra together with whether its ideal is generated by monomials.
pub struct Algebra {
    pub name: String,
    pub settings: Arc<WeilSettings>,
    pub monomial: bool,
}

pub fn algebra_zoo() -> Vec<Algebra> {
    let d1 = WeilSettings::d1();
    let mut out = vec![
        ("D1".to_string(), d1.clone(), true),
        ("D1 * D1".to_string(), tensor_power(&d1, 2), true),
        ("D1 * D1 * D1".to_string(), tensor_power(&d1, 3), true),
    ];
    for m in 1..=5 {
        out.push((
            format!("DOrder {m}"),
            WeilSettings::d_order(m).unwrap(),
            true,
        ));
    }
    out.push((
        "DOrder 3 * DOrder 2".to_string(),
        weil_tensor(
            &WeilSettings::d_order(3).unwrap(),
            &WeilSettings::d_order(2).unwrap(),
        )
        .unwrap(),
        true,
    ));
    out.push(("<x^2 - y^3, y^4>".to_string(), cusp_algebra(), false));
    out.into_iter()
        .map(|(name, s, monomial)| Algebra {
            name,
            settings: Arc::new(s),
            monomial,
        })
        .collect()
}

/// Random polynomial expression in `arity` variables of total degree at most
/// `budget`, built from sums, differences, products, negation, integer powers
/// and division by nonzero constants.
pub fn random_polynomial_expr<R: Rng>(
    rng: &mut R,
    arity: usize,
    budget: u32,
    depth: u32,
) -> SmoothExpr {
    let leaf = depth == 0 || rng.gen_bool(0.25);
    if leaf {
        return if budget >= 1 && rng.gen_bool(0.6) {
            SmoothExpr::var(rng.gen_range(0..arity))
        } else {
            SmoothExpr::rational(random_rational(rng))
        };
    }
    match rng.gen_range(0..6) {
        0 => {
            random_polynomial_expr(rng, arity, budget, depth - 1)
                + random_polynomial_expr(rng, arity, budget, depth - 1)
        }
        1 => {
            random_polynomial_expr(rng, arity, budget, depth - 1)
                - random_polynomial_expr(rng, arity, budget, depth - 1)
        }
        2 => -random_polynomial_expr(rng, arity, budget, depth - 1),
        3 => {
            let left = rng.gen_range(0..=budget);
            random_polynomial_expr(rng, arity, left, depth - 1)
                * random_polynomial_expr(rng, arity, budget - left, depth - 1)
        }
        4 if budget >= 2 => {
            let k = rng.gen_range(2..=budget);
            random_polynomial_expr(rng, arity, budget / k, depth - 1).powi(i64::from(k))
        }
        _ => {
            let mut c = random_rational(rng);
            if c == q(0, 1) {
                c = q(3, 2);
            }
            random_polynomial_expr(rng, arity, budget, depth - 1) / SmoothExpr::rational(c)
        }
    }
}

/// Random smooth composition over the elementary vocabulary, kept inside the
/// functions' domains for real arguments.
pub fn random_smooth_expr<R: Rng>(rng: &mut R, arity: usize, depth: u32) -> SmoothExpr {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.75) {
            SmoothExpr::var(rng.gen_range(0..arity))
        } else {
            SmoothExpr::rational(q(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
        };
    }
    let sub = |rng: &mut R| random_smooth_expr(rng, arity, depth - 1);
    match rng.gen_range(0..12) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 => sub(rng) * sub(rng),
        3 => SmoothExpr::apply(Elementary::Sin, sub(rng)),
        4 => SmoothExpr::apply(Elementary::Cos, sub(rng)),
        5 => SmoothExpr::apply(
            Elementary::Exp,
            SmoothExpr::apply(Elementary::Sin, sub(rng)),
        ),
        6 => SmoothExpr::apply(Elementary::Atan, sub(rng)),
        7 => SmoothExpr::apply(Elementary::Tanh, sub(rng)),
        8 => SmoothExpr::apply(Elementary::Log, SmoothExpr::int(1) + sub(rng).powi(2)),
        9 => SmoothExpr::apply(
            Elementary::Sqrt,
            SmoothExpr::int(2) + SmoothExpr::apply(Elementary::Sin, sub(rng)),
        ),
        10 => sub(rng) / (SmoothExpr::int(2) + SmoothExpr::apply(Elementary::Cos, sub(rng))),
        _ => sub(rng).powi(rng.gen_range(2..=3)),
    }
}
