use weil_core::expr::parse_polynomials;
use weil_core::weil::{weil_tensor, weil_test};
use weil_core::{Ideal, WeilSettings, WeilTest};

use crate::error::CliError;

/// An algebra description: a preset, a presenting ideal, or a tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSpec {
    D1,
    DOrder(u32),
    Ideal { polys: String, vars: Vec<String> },
    Tensor(Box<AlgebraSpec>, Box<AlgebraSpec>),
}

fn spec_error(spec: &str, message: impl Into<String>) -> CliError {
    CliError::AlgebraSpec {
        spec: spec.to_string(),
        message: message.into(),
    }
}

/// Splits on `sep` outside parentheses.
fn split_top_level(text: &str, sep: char) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&text[start..]);
    Some(parts)
}

pub fn split_names(text: &str) -> Vec<String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

impl AlgebraSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts =
            split_top_level(text, '*').ok_or_else(|| spec_error(text, "unbalanced parentheses"))?;
        let mut factors = parts
            .into_iter()
            .map(|p| Self::parse_factor(p.trim(), text))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter();
        let first = factors.next().expect("split yields a part");
        Ok(factors.fold(first, |acc, f| {
            AlgebraSpec::Tensor(Box::new(acc), Box::new(f))
        }))
    }

    fn parse_factor(p: &str, whole: &str) -> Result<Self, CliError> {
        if p.is_empty() {
            return Err(spec_error(whole, "empty factor"));
        }
        if let Some(inner) = p.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            if split_top_level(inner, '*').is_some() {
                return Self::parse(inner);
            }
        }
        if p == "D1" {
            return Ok(AlgebraSpec::D1);
        }
        if let Some(rest) = p.strip_prefix("DOrder") {
            let m: u32 = rest
                .trim()
                .parse()
                .map_err(|_| spec_error(whole, format!("bad order in `{p}`")))?;
            if m == 0 {
                return Err(spec_error(whole, "DOrder needs m >= 1"));
            }
            return Ok(AlgebraSpec::DOrder(m));
        }
        if let Some(body) = p
            .strip_prefix("ideal")
            .map(str::trim_start)
            .and_then(|s| s.strip_prefix('('))
            .and_then(|s| s.strip_suffix(')'))
        {
            let (polys, vars) = body
                .rsplit_once(';')
                .ok_or_else(|| spec_error(whole, "expected `ideal(<polys>; vars=<names>)`"))?;
            let vars = vars
                .trim()
                .strip_prefix("vars")
                .map(str::trim_start)
                .and_then(|s| s.strip_prefix('='))
                .ok_or_else(|| spec_error(whole, "expected `vars=` after `;`"))?;
            let vars = split_names(vars);
            if vars.is_empty() {
                return Err(spec_error(whole, "ideal needs at least one variable"));
            }
            return Ok(AlgebraSpec::Ideal {
                polys: polys.trim().to_string(),
                vars,
            });
        }
        Err(spec_error(whole, format!("unknown factor `{p}`")))
    }

    /// Computes the Weil settings, failing with `NotWeil` for non-Weil ideals.
    pub fn build(&self) -> Result<WeilSettings, CliError> {
        Ok(match self {
            AlgebraSpec::D1 => WeilSettings::d1(),
            AlgebraSpec::DOrder(m) => WeilSettings::d_order(*m)?,
            AlgebraSpec::Ideal { polys, vars } => {
                let ideal = Ideal::new(vars.len(), parse_polynomials(polys, vars)?)?;
                match weil_test(&ideal)? {
                    WeilTest::Weil(s) => s,
                    WeilTest::No(reason) => return Err(CliError::NotWeil(reason)),
                }
            }
            AlgebraSpec::Tensor(a, b) => weil_tensor(&a.build()?, &b.build()?)?,
        })
    }
}
