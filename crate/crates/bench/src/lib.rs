//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use weil_core::expr::parse_polynomials;
use weil_core::{parse_expr, weil_tensor, Ideal, SmoothExpr, WeilElement, WeilSettings};

/// `(x^2 - y^3, y^4)` over `x, y`.
pub fn cusp_ideal() -> Ideal {
    Ideal::new(2, parse_polynomials("x^2 - y^3, y^4", &["x", "y"]).unwrap()).unwrap()
}

/// The `n`-fold tensor power of `w`.
pub fn tensor_power(w: &WeilSettings, n: usize) -> WeilSettings {
    let mut acc = w.clone();
    for _ in 1..n {
        acc = weil_tensor(&acc, w).unwrap();
    }
    acc
}

/// `sin(c + d_0 + ... + d_{k-1})` with one generator per variable of `settings`.
pub fn sine_of_sum(settings: &Arc<WeilSettings>, c: f64) -> (SmoothExpr, Vec<WeilElement<f64>>) {
    let k = settings.var_count();
    let names: Vec<String> = (0..k).map(|i| format!("d{i}")).collect();
    let text = format!("sin({c} + {})", names.join(" + "));
    let f = parse_expr(&text, &names).unwrap();
    let us = (0..k)
        .map(|i| WeilElement::generator(settings, i).unwrap())
        .collect();
    (f, us)
}
