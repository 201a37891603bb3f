//! Text form of rational functions: integer or rational coefficients, the variable `x`,
//! `+ - * / ^`, parentheses, and `{...}` for a cyclotomic constant such as
//! `{Q(zeta 5): 1 + z - z^3}`.

use super::{Poly, RatFun};
use crate::error::{Error, Result};
use crate::exactnum::CycNum;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    X,
    Cyc(String),
    Op(char),
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            'x' => {
                out.push(Tok::X);
                i += 1;
            }
            '{' => {
                let close = chars[i..]
                    .iter()
                    .position(|&ch| ch == '}')
                    .ok_or_else(|| Error::Parse("unterminated '{'".into()))?;
                out.push(Tok::Cyc(chars[i + 1..i + close].iter().collect()));
                i += close + 1;
            }
            '+' | '-' | '*' | '/' | '^' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
    }
    Ok(out)
}

/// A quotient of polynomials with no degree restriction.
#[derive(Clone)]
struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    fn poly(p: Poly) -> Self {
        Frac { num: p, den: Poly::one() }
    }

    fn add(&self, o: &Frac, sign: i64) -> Frac {
        let s = CycNum::from_int(sign);
        if self.den == o.den {
            return Frac { num: &self.num + &o.num.scale(&s), den: self.den.clone() };
        }
        let right = (&o.num * &self.den).scale(&s);
        Frac { num: &(&self.num * &o.den) + &right, den: &self.den * &o.den }
    }

    fn mul(&self, o: &Frac) -> Frac {
        Frac { num: &self.num * &o.num, den: &self.den * &o.den }
    }

    fn div(&self, o: &Frac) -> Result<Frac> {
        if o.num.is_zero() {
            return Err(Error::DivByZero);
        }
        Ok(Frac { num: &self.num * &o.den, den: &self.den * &o.num })
    }

    fn pow(&self, k: usize) -> Frac {
        Frac { num: self.num.pow(k), den: self.den.pow(k) }
    }
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

    fn expr(&mut self) -> Result<Frac> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, if c == '+' { 1 } else { -1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Frac> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    acc = acc.div(&self.unary()?)?;
                }
                Some(Tok::Num(_) | Tok::X | Tok::Cyc(_) | Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Frac> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                let v = self.unary()?;
                Ok(Frac { num: -&v.num, den: v.den })
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Frac> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(k)) => {
                    let k: usize = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {k}")))?;
                    if k > 10_000 {
                        return Err(Error::Parse(format!("exponent {k} too large")));
                    }
                    return Ok(base.pow(k));
                }
                other => return Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Frac> {
        match self.next() {
            Some(Tok::Num(s)) => {
                let v: num_bigint::BigInt = s.parse().map_err(|_| Error::Parse(s.clone()))?;
                Ok(Frac::poly(Poly::constant(CycNum::from_bigint(v))))
            }
            Some(Tok::X) => Ok(Frac::poly(Poly::x())),
            Some(Tok::Cyc(s)) => Ok(Frac::poly(Poly::constant(s.parse()?))),
            Some(Tok::LParen) => {
                let v = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(v),
                    other => Err(Error::Parse(format!("expected ')', found {other:?}"))),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_ratfun(s: &str) -> Result<RatFun> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let mut v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input at token {}", p.pos)));
    }
    if v.num.is_zero() {
        return Ok(RatFun::zero());
    }
    while v.den.coeff(0).is_zero() && v.num.coeff(0).is_zero() {
        v.num = Poly::new(v.num.coeffs()[1..].to_vec());
        v.den = Poly::new(v.den.coeffs()[1..].to_vec());
    }
    RatFun::new(v.num, v.den)
}
