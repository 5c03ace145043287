//! Parser for the canonical text rendering of polynomials and elements of
//! the localized ring, e.g. `4 + 5*b*y1/(1+b*y1) + 6*b^2*z1*z2`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{Family, TruncPoly, Var};
use super::yrat::YRational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Beta,
    Var(Var),
    Op(char),
}

fn err(reason: impl Into<String>) -> Error {
    Error::Parse { what: "expression", reason: reason.into() }
}

fn lex(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            '0'..='9' => {
                let s = digits(&mut i);
                out.push(Tok::Int(s.parse().map_err(|_| err(format!("bad integer {s:?}")))?));
            }
            'b' | 'β' => {
                out.push(Tok::Beta);
                i += 1;
            }
            'x' | 'y' | 'z' => {
                i += 1;
                let s = digits(&mut i);
                let index: u32 = s.parse().map_err(|_| err(format!("variable {c} needs an index")))?;
                if index == 0 {
                    return Err(err("variable indices start at 1"));
                }
                let family = match c {
                    'x' => Family::X,
                    'y' => Family::Y,
                    _ => Family::Z,
                };
                out.push(Tok::Var(Var { family, index }));
            }
            other => return Err(err(format!("unexpected character {other:?}"))),
        }
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

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<YRational> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<YRational> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc * invert(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<YRational> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| err("exponent too large"))?;
                    let mut out = YRational::one();
                    for _ in 0..e {
                        out = &out * &base;
                    }
                    Ok(out)
                }
                _ => Err(err("expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<YRational> {
        match self.peek().cloned() {
            Some(Tok::Int(c)) => {
                self.pos += 1;
                Ok(YRational::constant(c))
            }
            Some(Tok::Beta) => {
                self.pos += 1;
                Ok(YRational::from(TruncPoly::beta()))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(YRational::from(TruncPoly::var(v)))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err("missing ')'"));
                }
                Ok(inner)
            }
            Some(t) => Err(err(format!("unexpected token {t:?}"))),
            None => Err(err("unexpected end of input")),
        }
    }
}

/// Inverts a product of factors `(1 + β y_i)^{±1}` up to sign.
fn invert(d: &YRational) -> Result<YRational> {
    let mut num = d.numerator().clone();
    let mut factors: BTreeMap<u32, u32> = BTreeMap::new();
    'strip: loop {
        for i in 1..=num.max_index(Family::Y) {
            if let Some(q) = num.div_one_plus_beta(Var::y(i)) {
                num = q;
                *factors.entry(i).or_default() += 1;
                continue 'strip;
            }
        }
        break;
    }
    let sign = if num == TruncPoly::one() {
        BigInt::one()
    } else if num == -TruncPoly::one() {
        -BigInt::one()
    } else {
        return Err(err("only products of (1+b*yi) factors may appear in a denominator"));
    };
    let mut den_poly = TruncPoly::one();
    for (&i, &e) in d.denominator() {
        den_poly = den_poly * TruncPoly::one_plus_beta(Var::y(i)).pow(e);
    }
    Ok(YRational::new(den_poly.scale(&sign), factors))
}

pub fn parse_yrational(text: &str) -> Result<YRational> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(err("empty expression"));
    }
    let mut p = Parser { toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

pub fn parse_poly(text: &str) -> Result<TruncPoly> {
    let r = parse_yrational(text)?;
    if !r.is_polynomial() {
        return Err(err("expression has a denominator"));
    }
    Ok(r.numerator().clone())
}
