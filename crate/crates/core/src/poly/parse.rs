//! Text syntax for polynomial maps.
//!
//! ```text
//! map    := '[' poly (';' poly)* ']'
//! poly   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := nat | nat '/' nat | var | factor '^' nat | '(' poly ')'
//! var    := 'x' nat
//! ```
//!
//! Whitespace is insignificant. `-` is rejected over the naturals and
//! fractions are accepted only over the rationals.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::polynomial::{PolyMap, Polynomial};
use crate::algebra::{Rig, RigSpec, RigValue};
use crate::error::{Error, Result};

struct Parser<'a, R> {
    src: Vec<(usize, char)>,
    at: usize,
    arity: usize,
    text: &'a str,
    _rig: std::marker::PhantomData<R>,
}

fn literal<R: Rig>(n: &BigUint) -> Result<R> {
    let v = match R::spec() {
        RigSpec::Nat => RigValue::Nat(n.clone()),
        RigSpec::Int => RigValue::Int(BigInt::from(n.clone())),
        RigSpec::Rat => RigValue::Rat(BigInt::from(n.clone()).into()),
        RigSpec::ZMod(m) => {
            let r = n % BigUint::from(m);
            RigValue::ZMod { modulus: m, residue: r.try_into().expect("residue below modulus") }
        }
    };
    R::from_value(&v)
}

impl<'a, R: Rig> Parser<'a, R> {
    fn pos(&self) -> usize {
        self.src.get(self.at).map_or(self.text.len(), |(p, _)| *p)
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.at).is_some_and(|(_, c)| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.at).map(|(_, c)| *c)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::ParseError { pos: self.pos(), msg: msg.into() }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected '{want}', found '{c}'"))),
            None => Err(self.err(format!("expected '{want}', found end of input"))),
        }
    }

    fn nat(&mut self) -> Result<BigUint> {
        self.skip_ws();
        let start = self.at;
        while self.src.get(self.at).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.at += 1;
        }
        if start == self.at {
            return Err(self.err("expected a natural number"));
        }
        let digits: String = self.src[start..self.at].iter().map(|(_, c)| c).collect();
        Ok(digits.parse().expect("digits"))
    }

    fn map(&mut self) -> Result<PolyMap<R>> {
        self.expect('[')?;
        let mut comps = vec![self.poly()?];
        while self.peek() == Some(';') {
            self.at += 1;
            comps.push(self.poly()?);
        }
        self.expect(']')?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected '{c}' after the closing bracket")));
        }
        PolyMap::new(self.arity, comps)
    }

    fn poly(&mut self) -> Result<Polynomial<R>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.at += 1;
                    acc = acc.plus(&self.term()?)?;
                }
                Some('-') => {
                    if !R::has_negation() {
                        return Err(Error::NegationUnsupported(format!("'-' at position {}", self.pos())));
                    }
                    self.at += 1;
                    let minus = R::one().try_neg().expect("ring");
                    acc = acc.plus(&self.term()?.scaled(&minus))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<R>> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.at += 1;
            acc = acc.times(&self.factor()?)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial<R>> {
        let mut base = self.atom()?;
        while self.peek() == Some('^') {
            self.at += 1;
            let pos = self.pos();
            let e = self.nat()?;
            let e: u32 = e.try_into().map_err(|_| Error::ParseError { pos, msg: "exponent too large".into() })?;
            base = base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial<R>> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let p = self.poly()?;
                self.expect(')')?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                if self.peek() == Some('/') {
                    let pos = self.pos();
                    self.at += 1;
                    let den = self.nat()?;
                    if R::spec() != RigSpec::Rat {
                        return Err(Error::ParseError { pos, msg: format!("fractions are not literals of {}", R::spec()) });
                    }
                    if den.is_zero() {
                        return Err(Error::ParseError { pos, msg: "zero denominator".into() });
                    }
                    let q = num_rational::BigRational::new(BigInt::from(num), BigInt::from(den));
                    return Ok(Polynomial::constant(self.arity, R::from_value(&RigValue::Rat(q))?));
                }
                Ok(Polynomial::constant(self.arity, literal::<R>(&num)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let pos = self.pos();
                let start = self.at;
                while self.src.get(self.at).is_some_and(|(_, c)| c.is_ascii_alphanumeric() || *c == '_') {
                    self.at += 1;
                }
                let name: String = self.src[start..self.at].iter().map(|(_, c)| c).collect();
                let index = name
                    .strip_prefix('x')
                    .filter(|d| !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()))
                    .and_then(|d| d.parse::<usize>().ok())
                    .filter(|i| (1..=self.arity).contains(i));
                match index {
                    Some(i) => Polynomial::var(self.arity, i - 1),
                    None => Err(Error::UnknownVariable { name, pos }),
                }
            }
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses a polynomial map in the variables `x1 .. x{arity}` over `R`.
pub fn parse_poly_map<R: Rig>(src: &str, arity: usize) -> Result<PolyMap<R>> {
    let mut p = Parser::<R> {
        src: src.char_indices().collect(),
        at: 0,
        arity,
        text: src,
        _rig: std::marker::PhantomData,
    };
    p.map()
}
