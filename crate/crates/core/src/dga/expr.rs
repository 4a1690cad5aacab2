//! Text syntax for DGA elements.
//!
//! `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := '-' factor | atom ('^' int)?`, `atom := int | name | '(' expr ')'`.
//! Names resolve to ring variables first, then generators. Only ring
//! variables admit negative exponents. Integer literals are element codes:
//! reduced mod `p` over a prime field, and `0..q` over an extension.

use alloc::string::String;
use alloc::vec::Vec;

use super::{Dga, Element};
use crate::coeff::Ring;
use crate::error::{LchError, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Name(String),
    Sym(char),
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            let v = lit.parse::<i64>().map_err(|_| LchError::Format(alloc::format!("integer `{lit}` too large")))?;
            out.push(Tok::Int(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && is_name_char(cs[i]) {
                i += 1;
            }
            out.push(Tok::Name(cs[st..i].iter().collect()));
        } else if "+-*^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(LchError::Format(alloc::format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    dga: &'a Dga,
    src: &'a str,
}

impl Parser<'_> {
    fn ring(&self) -> &Ring {
        self.dga.ring()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> LchError {
        LchError::Format(alloc::format!("{what} in `{}`", self.src))
    }

    fn expr(&mut self) -> Result<Element> {
        let mut acc = if self.eat('-') { self.term()?.neg(self.ring()) } else { self.term()? };
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc.add_assign(&t, self.dga.ring());
            } else if self.eat('-') {
                let t = self.term()?.neg(self.ring());
                acc.add_assign(&t, self.dga.ring());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Element> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            let f = self.factor()?;
            acc = acc.mul(&f, self.ring());
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let paren = !neg && self.eat('(');
        let neg = neg || (paren && self.eat('-'));
        let v = match self.peek() {
            Some(Tok::Int(v)) => *v,
            _ => return Err(self.err("expected integer exponent")),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(self.err("expected `)`"));
        }
        Ok(if neg { -v } else { v })
    }

    fn factor(&mut self) -> Result<Element> {
        if self.eat('-') {
            return Ok(self.factor()?.neg(self.ring()));
        }
        let (base, var) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if let Some(v) = var {
            let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return Ok(Element::scalar(self.ring().var(v, e)));
        }
        if e < 0 {
            return Err(self.err("negative exponent on a non-invertible factor"));
        }
        let mut acc = Element::unit(self.ring());
        for _ in 0..e {
            acc = acc.mul(&base, self.ring());
        }
        Ok(acc)
    }

    /// The atom, plus its ring-variable index when it is a bare variable.
    fn atom(&mut self) -> Result<(Element, Option<usize>)> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of expression"))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => {
                let c = self.ring().field().from_code(v)?;
                Ok((Element::scalar(self.ring().scalar(c)), None))
            }
            Tok::Name(n) => {
                if let Some(v) = self.ring().var_index(&n) {
                    Ok((Element::scalar(self.ring().var(v, 1)), Some(v)))
                } else {
                    let g = self.dga.lookup(&n)?;
                    Ok((Element::generator(g, self.ring()), None))
                }
            }
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok((e, None))
            }
            Tok::Sym(c) => Err(self.err(&alloc::format!("unexpected `{c}`"))),
        }
    }
}

impl Dga {
    /// Parses an element in this DGA's generators and ring variables.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let toks = tokenize(s)?;
        if toks.is_empty() {
            return Err(LchError::Format("empty expression".into()));
        }
        let mut p = Parser { toks, pos: 0, dga: self, src: s };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::field::{Field, Scalar};

    fn sample() -> Dga {
        let ring = Ring::new(Field::new(5).unwrap(), alloc::vec!["t".into()], alloc::vec![2]).unwrap();
        Dga::from_spec(ring, 0, &[("a", 1), ("b'", 0), ("x1", 0)], &[]).unwrap()
    }

    #[test]
    fn parses_and_round_trips() {
        let d = sample();
        for s in ["a*b' + 3*t^-1*x1", "(a + x1)^2", "-t*a + 1", "t^(-2)*x1*x1 - 4", "0"] {
            let e = d.parse_element(s).unwrap();
            let back = d.parse_element(&d.format_element(&e)).unwrap();
            assert_eq!(e, back, "{s}");
        }
    }

    #[test]
    fn arithmetic_matches() {
        let d = sample();
        let sq = d.parse_element("(a + x1)^2").unwrap();
        let expanded = d.parse_element("a*a + a*x1 + x1*a + x1*x1").unwrap();
        assert_eq!(sq, expanded);
        let e = d.parse_element("5*a + 2 - 2").unwrap();
        assert!(e.is_zero());
        let c = d.parse_element("-1").unwrap();
        assert_eq!(c.constant_term().unwrap().constant(1), Scalar(4));
    }

    #[test]
    fn rejects_bad_input() {
        let d = sample();
        for s in ["", "a +", "q", "a^-1", "(a", "a ) b", "a # b"] {
            assert!(d.parse_element(s).is_err(), "{s}");
        }
    }
}
