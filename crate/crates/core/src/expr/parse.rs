use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::{eval_expr, Constant, Elementary, SmoothExpr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigRational),
    Ident(String),
    Op(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit))
        {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let int_part = &text[start..i];
            let mut value = if int_part.is_empty() {
                BigRational::from_integer(BigInt::from(0))
            } else {
                BigRational::from_integer(BigInt::from_str_radix(int_part, 10).unwrap())
            };
            if i < bytes.len() && bytes[i] == b'.' {
                i += 1;
                let frac_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let frac = &text[frac_start..i];
                if !frac.is_empty() {
                    let num = BigInt::from_str_radix(frac, 10).unwrap();
                    let den = num_traits::pow(BigInt::from(10), frac.len());
                    value += BigRational::new(num, den);
                }
            }
            out.push((Tok::Num(value), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(),".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap();
            return Err(Error::parse(i, format!("unexpected character `{ch}`")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser<'a, V> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [V],
}

impl<V: AsRef<str>> Parser<'_, V> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, op: char) -> bool {
        if *self.peek() == Tok::Op(op) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected `{op}`")))
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        let found = match self.peek() {
            Tok::Num(q) => format!("number `{q}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Op(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        };
        Error::parse(self.offset(), format!("{what}, found {found}"))
    }

    fn expr(&mut self) -> Result<SmoothExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = lhs + self.term()?;
            } else if self.eat('-') {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<SmoothExpr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = lhs * self.unary()?;
            } else if self.eat('/') {
                lhs = lhs / self.unary()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<SmoothExpr> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<SmoothExpr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.offset();
        let exponent = self.unary()?;
        let q: BigRational = eval_expr(&exponent, &[], &())
            .map_err(|_| Error::parse(at, "exponent must be a rational constant"))?;
        if q.is_integer() {
            let n = q
                .to_integer()
                .to_i64()
                .ok_or_else(|| Error::parse(at, "exponent out of range"))?;
            Ok(base.powi(n))
        } else {
            Ok(SmoothExpr::PowRational(Box::new(base), q))
        }
    }

    fn atom(&mut self) -> Result<SmoothExpr> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Num(q) => {
                self.bump();
                Ok(SmoothExpr::Const(Constant::Rational(q)))
            }
            Tok::Op('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                if let Some(i) = self.vars.iter().position(|v| v.as_ref() == name) {
                    return Ok(SmoothExpr::Var(i));
                }
                if let Some(f) = Elementary::from_name(&name) {
                    self.expect('(')?;
                    let arg = self.expr()?;
                    self.expect(')')?;
                    return Ok(SmoothExpr::apply(f, arg));
                }
                match name.as_str() {
                    "pi" => Ok(SmoothExpr::Const(Constant::Pi)),
                    "e" => Ok(SmoothExpr::Const(Constant::E)),
                    _ => Err(Error::UnknownIdentifier { name, position: at }),
                }
            }
            _ => Err(self.unexpected("expected an operand")),
        }
    }
}

/// Parses one expression over the named variables (`Var(i)` is `vars[i]`).
///
/// Grammar: `+ - * /`, `^` with a rational-constant exponent, function calls
/// such as `sin(...)`, constants `pi` and `e`, integer and decimal literals.
/// Variable names shadow the constants.
pub fn parse_expr<V: AsRef<str>>(text: &str, vars: &[V]) -> Result<SmoothExpr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("expected an operator or end of input"));
    }
    Ok(e)
}

/// Parses a comma-separated list, returning each item with its start offset.
pub fn parse_expr_list<V: AsRef<str>>(text: &str, vars: &[V]) -> Result<Vec<(usize, SmoothExpr)>> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        vars,
    };
    let mut out = Vec::new();
    loop {
        let at = p.offset();
        out.push((at, p.expr()?));
        if p.eat(',') {
            continue;
        }
        if *p.peek() != Tok::End {
            return Err(p.unexpected("expected `,` or end of input"));
        }
        return Ok(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SmoothExpr as E;

    const XY: [&str; 2] = ["x", "y"];

    #[test]
    fn function_application() {
        assert_eq!(
            parse_expr("sin(x + y)", &XY).unwrap(),
            E::apply(Elementary::Sin, E::var(0) + E::var(1))
        );
    }

    #[test]
    fn product_of_applications() {
        assert_eq!(
            parse_expr("exp(2*x) * sin(y)", &XY).unwrap(),
            E::apply(Elementary::Exp, E::int(2) * E::var(0)) * E::apply(Elementary::Sin, E::var(1))
        );
    }

    #[test]
    fn powers_bind_tighter_than_subtraction() {
        assert_eq!(
            parse_expr("x ^ 2 - y ^ 3", &XY).unwrap(),
            E::var(0).powi(2) - E::var(1).powi(3)
        );
        assert_eq!(parse_expr("-x^2", &XY).unwrap(), -(E::var(0).powi(2)));
        assert_eq!(parse_expr("x^-2", &XY).unwrap(), E::var(0).powi(-2));
        assert_eq!(
            parse_expr("x^(1/2)", &XY).unwrap(),
            E::PowRational(Box::new(E::var(0)), BigRational::new(1.into(), 2.into()))
        );
    }

    #[test]
    fn literals_and_constants() {
        assert_eq!(parse_expr("3/4", &XY).unwrap(), E::int(3) / E::int(4));
        assert_eq!(
            parse_expr("0.25", &XY).unwrap(),
            E::rational(BigRational::new(1.into(), 4.into()))
        );
        assert_eq!(parse_expr("pi/6", &XY).unwrap(), E::pi() / E::int(6));
        // variables shadow constants
        assert_eq!(parse_expr("e", &["e"]).unwrap(), E::var(0));
    }

    #[test]
    fn left_associativity() {
        assert_eq!(
            parse_expr("x - y - 1", &XY).unwrap(),
            (E::var(0) - E::var(1)) - E::int(1)
        );
        assert_eq!(
            parse_expr("x / y * 2", &XY).unwrap(),
            (E::var(0) / E::var(1)) * E::int(2)
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_expr("x + z", &XY),
            Err(Error::UnknownIdentifier {
                name: "z".into(),
                position: 4
            })
        );
        assert!(matches!(
            parse_expr("2x", &XY),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            parse_expr("(x + y", &XY),
            Err(Error::Parse { position: 6, .. })
        ));
        assert!(matches!(
            parse_expr("x ^ y", &XY),
            Err(Error::Parse { position: 4, .. })
        ));
        assert!(matches!(
            parse_expr("x $ y", &XY),
            Err(Error::Parse { position: 2, .. })
        ));
        assert!(matches!(parse_expr("sin x", &XY), Err(Error::Parse { .. })));
    }

    #[test]
    fn lists_record_offsets() {
        let items = parse_expr_list("x^2 - y^3, y^4", &XY).unwrap();
        assert_eq!(items.len(), 2);
        assert_eq!(items[1].0, 11);
    }
}
