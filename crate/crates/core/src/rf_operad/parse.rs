//! Text form of `RF^θ` elements:
//!
//! ```text
//! fraction := ARITY ":" poly [ "/" factor+ ]
//! poly     := ["-"] term { ("+" | "-") term }
//! term     := atom { "*" atom }
//! atom     := INT | "(" poly ")" ["^" INT] | "x" INT ["^" INT] | ("theta" | "θ" | "t") ["^" INT]
//! factor   := "{" INT { "," INT } "}" ["^" INT]
//! ```
//!
//! Inside parentheses an integer may be followed by `/ INT`, giving a
//! rational constant such as `(1/2)` or `(x1 - 3/4)`. Displayed elements
//! parse back to themselves.
//!
//! e.g. `2: 1 / {1}` is `ν`, `3: x1 + theta*x2 / {1,2}^2 {3}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use super::RFElem;
use crate::exact::{FactorMultiset, FactoredRatFn, LinFactor, MPoly, ThetaScalar};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("at byte {pos}: {msg}")]
pub struct ParseFractionError {
    pub pos: usize,
    pub msg: String,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseFractionError> {
        Err(ParseFractionError {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseFractionError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseFractionError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            return self.err("expected an integer");
        }
        self.pos += digits;
        Ok(self.src[start..self.pos].parse().expect("ascii digits"))
    }

    fn small(&mut self, what: &str) -> Result<usize, ParseFractionError> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).map_err(|_| ParseFractionError {
            pos: start,
            msg: format!("{what} too large"),
        })
    }

    fn exponent(&mut self) -> Result<u32, ParseFractionError> {
        if self.eat('^') {
            Ok(self.small("exponent")? as u32)
        } else {
            Ok(1)
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

fn atom(
    cur: &mut Cursor,
    nvars: usize,
    nested: bool,
) -> Result<MPoly<ThetaScalar>, ParseFractionError> {
    match cur.peek() {
        Some('(') => {
            cur.eat('(');
            let inner = poly(cur, nvars, true)?;
            cur.expect(')')?;
            Ok(inner.pow(cur.exponent()?))
        }
        Some('x') => {
            cur.eat('x');
            let at = cur.pos;
            let i = cur.small("variable index")?;
            if !(1..=nvars).contains(&i) {
                return Err(ParseFractionError {
                    pos: at,
                    msg: format!("x{i} outside arity {nvars}"),
                });
            }
            let e = cur.exponent()?;
            Ok(MPoly::var(nvars, i - 1).pow(e))
        }
        Some(c) if c.is_ascii_digit() => {
            let num = cur.int()?;
            let r = if nested && cur.eat('/') {
                let den_pos = cur.pos;
                let den = cur.int()?;
                if den.is_zero() {
                    return Err(ParseFractionError {
                        pos: den_pos,
                        msg: "zero denominator".into(),
                    });
                }
                BigRational::new(num, den)
            } else {
                BigRational::from_integer(num)
            };
            Ok(MPoly::constant(nvars, ThetaScalar::constant(r)))
        }
        _ => {
            if cur.eat_word("theta") || cur.eat_word("θ") || cur.eat_word("t") {
                let e = cur.exponent()?;
                Ok(MPoly::constant(nvars, ThetaScalar::var().pow(e)))
            } else {
                cur.err("expected a coefficient, variable or theta")
            }
        }
    }
}

/// `nested` is set inside parentheses, where `INT/INT` reads as a rational.
fn poly(
    cur: &mut Cursor,
    nvars: usize,
    nested: bool,
) -> Result<MPoly<ThetaScalar>, ParseFractionError> {
    let mut acc = MPoly::zero(nvars);
    let mut sign = if cur.eat('-') { -1 } else { 1 };
    loop {
        let mut term = atom(cur, nvars, nested)?;
        while cur.eat('*') {
            term = term.mul(&atom(cur, nvars, nested)?);
        }
        acc = if sign < 0 {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
        sign = if cur.eat('+') {
            1
        } else if cur.eat('-') {
            -1
        } else {
            return Ok(acc);
        };
    }
}

fn factors(cur: &mut Cursor, nvars: usize) -> Result<FactorMultiset, ParseFractionError> {
    let mut den = FactorMultiset::new();
    while !cur.at_end() {
        cur.expect('{')?;
        let mut vars = Vec::new();
        loop {
            let at = cur.pos;
            let v = cur.small("variable index")?;
            if !(1..=nvars).contains(&v) || vars.contains(&v) {
                return Err(ParseFractionError {
                    pos: at,
                    msg: format!("bad factor variable {v}"),
                });
            }
            vars.push(v);
            if !cur.eat(',') {
                break;
            }
        }
        cur.expect('}')?;
        let e = cur.exponent()?;
        *den.entry(LinFactor::from_vars(&vars)).or_insert(0) += e;
    }
    if den.is_empty() {
        return cur.err("expected at least one factor after '/'");
    }
    Ok(den)
}

/// Byte offset of the `/` separating numerator from factors, ignoring
/// slashes inside parenthesised coefficients.
fn top_level_slash(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

/// Parse a fraction. `theta` is the parameter value; a symbol `theta` in
/// the numerator is evaluated at it when it is a constant.
pub fn parse_fraction(
    src: &str,
    theta: &ThetaScalar,
) -> Result<RFElem<ThetaScalar>, ParseFractionError> {
    let mut cur = Cursor { src, pos: 0 };
    let nvars = cur.small("arity")?;
    if nvars > 32 {
        return cur.err("arity above 32");
    }
    cur.expect(':')?;
    let body_start = cur.pos;
    let split = top_level_slash(&src[body_start..]).map(|i| body_start + i);
    let num_src = &src[..split.unwrap_or(src.len())];
    let mut num_cur = Cursor {
        src: num_src,
        pos: body_start,
    };
    let mut num = poly(&mut num_cur, nvars, false)?;
    if !num_cur.at_end() {
        return num_cur.err("unexpected trailing input");
    }
    let den = match split {
        Some(s) => {
            let mut den_cur = Cursor { src, pos: s + 1 };
            factors(&mut den_cur, nvars)?
        }
        None => FactorMultiset::new(),
    };
    if theta.degree().unwrap_or(0) == 0 {
        let c = theta.coeff(0);
        num = num.map_coeffs(|a| ThetaScalar::constant(a.eval(&c)));
    }
    Ok(RFElem::new(FactoredRatFn::new(num, den, theta.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn parses_nu() {
        let th = ThetaScalar::zero();
        let nu = parse_fraction("2: 1 / {1}", &th).unwrap();
        assert_eq!(nu, RFElem::nu(th));
    }

    #[test]
    fn parses_rich_numerators() {
        let th = ThetaScalar::var();
        let f = parse_fraction("3: (1/2)*x1^2 - theta*x2 + 3 / {1,2}^2 {3}", &th).unwrap();
        assert_eq!(f.arity(), 3);
        assert_eq!(f.value().numerator().len(), 3);
        assert_eq!(
            f.value().denominator().get(&LinFactor::from_vars(&[1, 2])),
            Some(&2)
        );
        let g = parse_fraction("1: (-1/2)", &th).unwrap();
        assert_eq!(
            g.value().numerator().as_constant(),
            Some(ThetaScalar::constant(q(-1, 2)))
        );
    }

    #[test]
    fn theta_is_specialised() {
        let f = parse_fraction("1: theta*x1", &ThetaScalar::constant(q(2, 1))).unwrap();
        let expect = MPoly::var(1, 0).scale(&ThetaScalar::constant(q(2, 1)));
        assert_eq!(f.value().numerator(), &expect);
    }

    #[test]
    fn errors_have_positions() {
        let th = ThetaScalar::zero();
        let e = parse_fraction("2: x3", &th).unwrap_err();
        assert_eq!(e.pos, 4);
        assert!(parse_fraction("2 1", &th).is_err());
        assert!(parse_fraction("2: 1 /", &th).is_err());
        assert!(parse_fraction("2: 1 / {1,1}", &th).is_err());
        assert!(parse_fraction("2: (1/0)", &th).is_err());
        assert!(parse_fraction("2: 1 1", &th).is_err());
    }

    #[test]
    fn display_round_trips() {
        let th = ThetaScalar::var();
        for src in [
            "2: 1 / {1}",
            "3: (1/2)*x1^2 - theta*x2 + 3 / {1,2}^2 {3}",
            "2: (1 + 2*theta)*x1*x2 - (3/4) / {1} {1,2}",
            "1: (theta^2 - 1/3)",
        ] {
            let f = parse_fraction(src, &th).unwrap();
            let shown = f.to_string();
            assert_eq!(
                parse_fraction(&shown, &th).unwrap(),
                f,
                "{src} shown as {shown}"
            );
        }
        let nu = RFElem::nu(th.clone());
        let composed = nu.compose(&nu, 1).unwrap();
        assert_eq!(
            parse_fraction(&composed.to_string(), &th).unwrap(),
            composed
        );
    }
}
