//! Text syntax for polynomials and rational functions in `x`.
//!
//! Accepts integer and rational coefficients, `+ - * /`, `^` with integer
//! exponents, parentheses and implicit multiplication (`2x`, `3(x+1)`),
//! e.g. `3*x^2 - 1/2*x + 7` or `(x^2+1)/(2x-1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::poly_fp::PolyFp;
use super::poly_q::{PolyQ, RatFunc};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    X,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '0'..='9' => {
                let start = i;
                while i + 1 < chars.len() && chars[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..=i].iter().collect();
                out.push(Tok::Num(digits.parse().map_err(|_| perr("bad integer"))?));
            }
            'x' | 'X' => out.push(Tok::X),
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '/' => out.push(Tok::Slash),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            other => return Err(perr(format!("unexpected character {other:?} in {s:?}"))),
        }
        i += 1;
    }
    if out.is_empty() {
        return Err(perr("empty expression"));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.div(&d).map_err(|_| perr("division by zero"))?;
                }
                // implicit multiplication
                Some(Tok::X) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        let hit = self.peek() == Some(t);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn power(&mut self) -> Result<RatFunc> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.eat(&Tok::LParen);
        let neg = self.eat(&Tok::Minus);
        let e = match self.next() {
            Some(Tok::Num(n)) => n.to_i64().filter(|e| *e <= 4096).ok_or_else(|| perr("exponent too large"))?,
            _ => return Err(perr("expected integer exponent after '^'")),
        };
        if paren && !self.eat(&Tok::RParen) {
            return Err(perr("unbalanced parentheses in exponent"));
        }
        base.powi(if neg { -e } else { e }).map_err(|_| perr("zero raised to a negative power"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(RatFunc::from_poly(PolyQ::constant(BigRational::from_integer(n)))),
            Some(Tok::X) => Ok(RatFunc::from_poly(PolyQ::x())),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(perr("unbalanced parentheses")),
                }
            }
            Some(t) => Err(perr(format!("unexpected token {t:?}"))),
            None => Err(perr("unexpected end of input")),
        }
    }
}

/// Parses a rational function in `x`.
pub fn parse_ratfunc(s: &str) -> Result<RatFunc> {
    let mut parser = Parser { toks: lex(s)?, pos: 0 };
    let e = parser.expr()?;
    if parser.pos != parser.toks.len() {
        return Err(perr(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

/// Parses a polynomial in `x`; a nonconstant denominator is an error.
pub fn parse_poly_q(s: &str) -> Result<PolyQ> {
    let r = parse_ratfunc(s)?;
    if !r.den().is_constant() {
        return Err(perr(format!("{s:?} is not a polynomial")));
    }
    Ok(r.num().scale(&r.den().leading().recip()))
}

/// Parses a rational constant such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let p = parse_poly_q(s)?;
    if !p.is_constant() {
        return Err(perr(format!("{s:?} is not a constant")));
    }
    Ok(p.coeff(0))
}

/// Parses a polynomial and reduces it modulo the odd prime `p`.
pub fn parse_poly_fp(s: &str, p: u64) -> Result<PolyFp> {
    reduce_poly_q(&parse_poly_q(s)?, p)
}

/// Reduces a p-integral rational polynomial modulo `p`.
pub fn reduce_poly_q(f: &PolyQ, p: u64) -> Result<PolyFp> {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| reduce_rational(c, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyFp::new(p, coeffs))
}

/// Image of a p-integral rational in F_p.
pub fn reduce_rational(c: &BigRational, p: u64) -> Result<u64> {
    let pb = BigInt::from(p);
    let den = c.denom() % &pb;
    if den.is_zero() {
        return Err(Error::Domain(format!("denominator of {c} is divisible by {p}")));
    }
    let num = ((c.numer() % &pb) + &pb) % &pb;
    let inv = den.modpow(&(&pb - 2u32), &pb);
    let v = (num * inv) % &pb;
    Ok(((v + &pb) % &pb).to_u64().unwrap())
}

/// Parses rational function text and returns `(num, den)` over F_p.
pub fn parse_ratfunc_fp(s: &str, p: u64) -> Result<(PolyFp, PolyFp)> {
    let r = parse_ratfunc(s)?;
    let num = reduce_poly_q(r.num(), p)?;
    let den = reduce_poly_q(r.den(), p)?;
    if den.is_zero() {
        return Err(Error::Domain(format!("denominator of {s:?} vanishes mod {p}")));
    }
    Ok((num, den))
}

impl std::str::FromStr for PolyQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_poly_q(s)
    }
}
