use std::cmp::Ordering;
use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use weil_core::polyring::MultiIndexIter;
use weil_core::{ExponentVector, MonomialOrder, Symbolic, WeilSettings};

pub fn monomial_name(e: &ExponentVector, names: &[String]) -> String {
    let parts: Vec<String> = e
        .as_slice()
        .iter()
        .zip(names)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, n)| {
            if k == 1 {
                n.clone()
            } else {
                format!("{n}^{k}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Linear combination `c_1 b_1 + …` over the named basis.
fn combination(coeffs: &[BigRational], basis: &[ExponentVector], names: &[String]) -> String {
    let mut out = String::new();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        let mono = monomial_name(b, names);
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        match (mag.is_one(), mono == "1") {
            (true, _) => out.push_str(&mono),
            (false, true) => out.push_str(&mag.to_string()),
            (false, false) => {
                let _ = write!(out, "{mag}*{mono}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Basis indices, highest total degree first, then descending in degrevlex.
pub fn print_order(basis: &[ExponentVector]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| {
        let (ea, eb) = (&basis[a], &basis[b]);
        eb.total_degree().cmp(&ea.total_degree()).then_with(|| {
            MonomialOrder::DegRevLex
                .compare(eb, ea)
                .unwrap_or(Ordering::Equal)
        })
    });
    idx
}

fn aligned(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(l, _)| l.chars().count())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    for (l, r) in rows {
        let _ = writeln!(out, "{l:<width$}  {r}");
    }
    out
}

pub fn settings_text(s: &WeilSettings, names: &[String]) -> String {
    let basis = s.basis();
    let mut out = aligned(&[
        ("variables".into(), names.join(", ")),
        ("dimension".into(), s.dim().to_string()),
        (
            "max powers".into(),
            s.max_powers()
                .iter()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(", "),
        ),
        (
            "basis".into(),
            basis
                .iter()
                .map(|b| monomial_name(b, names))
                .collect::<Vec<_>>()
                .join(", "),
        ),
    ]);

    out.push_str("multiplication table\n");
    let mut rows = Vec::new();
    for i in 1..s.dim() {
        for j in i..s.dim() {
            let v = s.mult_entry(i, j).expect("indices in range");
            rows.push((
                format!(
                    "  {} * {}",
                    monomial_name(&basis[i], names),
                    monomial_name(&basis[j], names)
                ),
                format!("= {}", combination(&v, basis, names)),
            ));
        }
    }
    out.push_str(&aligned(&rows));

    out.push_str("non-basis monomials\n");
    let mut rows = Vec::new();
    for alpha in MultiIndexIter::new(s.max_powers()) {
        if s.index_of(&alpha).is_some() {
            continue;
        }
        let v = s.non_van(&alpha).expect("inside the box");
        rows.push((
            format!("  {}", monomial_name(&alpha, names)),
            format!("= {}", combination(&v, basis, names)),
        ));
    }
    out.push_str(&aligned(&rows));
    out
}

/// A coefficient of an evaluated element, in one of the three carriers.
pub trait Coefficient {
    fn text(&self, symbols: &[String]) -> String;
    fn json(&self, symbols: &[String]) -> Value;
    /// Whether the coefficient is suppressed by `--zero-tol`.
    fn negligible(&self, tol: f64) -> bool;
}

impl Coefficient for f64 {
    fn text(&self, _: &[String]) -> String {
        format!("{self:?}")
    }

    fn json(&self, _: &[String]) -> Value {
        json!(self)
    }

    fn negligible(&self, tol: f64) -> bool {
        tol > 0.0 && self.abs() < tol
    }
}

impl Coefficient for BigRational {
    fn text(&self, _: &[String]) -> String {
        self.to_string()
    }

    fn json(&self, _: &[String]) -> Value {
        match (self.is_integer(), self.numer().to_i64()) {
            (true, Some(n)) => json!(n),
            _ => json!(self.to_string()),
        }
    }

    fn negligible(&self, tol: f64) -> bool {
        tol > 0.0 && self.abs().to_f64().is_some_and(|v| v < tol)
    }
}

impl Coefficient for Symbolic {
    fn text(&self, symbols: &[String]) -> String {
        self.normalise().display_with(symbols).to_string()
    }

    fn json(&self, symbols: &[String]) -> Value {
        json!(self.text(symbols))
    }

    fn negligible(&self, tol: f64) -> bool {
        tol > 0.0 && weil_core::Scalar::is_zero(&self.normalise())
    }
}

pub fn element_text<C: Coefficient>(
    basis: &[ExponentVector],
    coeffs: &[C],
    names: &[String],
    symbols: &[String],
    tol: f64,
) -> String {
    let rows: Vec<(String, String)> = print_order(basis)
        .into_iter()
        .filter(|&k| !coeffs[k].negligible(tol))
        .map(|k| (monomial_name(&basis[k], names), coeffs[k].text(symbols)))
        .collect();
    aligned(&rows)
}

pub fn element_json<C: Coefficient>(
    basis: &[ExponentVector],
    coeffs: &[C],
    names: &[String],
    symbols: &[String],
    tol: f64,
) -> Value {
    let terms: Vec<Value> = print_order(basis)
        .into_iter()
        .filter(|&k| !coeffs[k].negligible(tol))
        .map(|k| {
            json!({
                "monomial": basis[k].as_slice(),
                "name": monomial_name(&basis[k], names),
                "coeff": coeffs[k].json(symbols),
            })
        })
        .collect();
    json!({ "variables": names, "terms": terms })
}
