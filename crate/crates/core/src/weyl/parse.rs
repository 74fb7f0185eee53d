use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Sig, WeylElement, WeylError};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, WeylError> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(WeylError::Parse(format!("unexpected character '{c}' at {i}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    sig: &'a Sig,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeylElement, WeylError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeylElement, WeylError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let Some(Tok::Num(n)) = self.peek().cloned() else {
                    return Err(WeylError::Parse("division only by integer literals".into()));
                };
                self.pos += 1;
                if n.is_zero() {
                    return Err(WeylError::Parse("division by zero".into()));
                }
                acc = acc.scale(&BigRational::new(BigInt::one(), n));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<WeylElement, WeylError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylElement, WeylError> {
        let (base, generator) = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err(WeylError::Parse("exponent must be an integer literal".into()));
        };
        self.pos += 1;
        let e: i32 = i32::try_from(n).map_err(|_| WeylError::Parse("exponent too large".into()))?;
        if !neg {
            return Ok(base.pow(e as u32));
        }
        match generator {
            Some(Gen::Var(i)) if self.sig.is_invertible(i) => Ok(WeylElement::var_pow(self.sig, i, -e)),
            Some(Gen::Central(j)) if self.sig.is_central_invertible(j) => Ok(WeylElement::central_pow(self.sig, j, -e)),
            _ => Err(WeylError::Parse("negative exponent on a non-invertible factor".into())),
        }
    }

    fn atom(&mut self) -> Result<(WeylElement, Option<Gen>), WeylError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok((WeylElement::constant(self.sig, BigRational::from_integer(n)), None))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if let Some(i) = self.sig.var_index(&name) {
                    return Ok((WeylElement::var(self.sig, i), Some(Gen::Var(i))));
                }
                if let Some(j) = self.sig.central_index(&name) {
                    return Ok((WeylElement::central(self.sig, j), Some(Gen::Central(j))));
                }
                if let Some(rest) = name.strip_prefix("d_") {
                    if let Some(i) = self.sig.var_index(rest) {
                        return Ok((WeylElement::partial(self.sig, i), None));
                    }
                }
                Err(WeylError::UnknownName(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(WeylError::Parse("missing ')'".into()));
                }
                Ok((e, None))
            }
            other => Err(WeylError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[derive(Clone, Copy)]
enum Gen {
    Var(usize),
    Central(usize),
}

/// Parses an operator literal such as `3*w1^2*d_w1 - d_w2` or `z*d_l0`. Factors are
/// multiplied in the Weyl algebra in the written order.
pub fn parse_element(sig: &Sig, text: &str) -> Result<WeylElement, WeylError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(WeylError::Parse("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, sig };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(WeylError::Parse(format!("trailing input at token {}", p.pos)));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Signature;

    #[test]
    fn round_trip() {
        let s = Signature::new(&["w1", "w2"]).unwrap().with_central("z", true).unwrap().into_arc();
        for text in ["3*w1^2*d_w1 - d_w2", "z*d_w1", "-1/2*w1 + 7", "z^-2*w2*d_w2^3 + 2/3*z"] {
            let p = parse_element(&s, text).unwrap();
            let again = parse_element(&s, &p.to_string()).unwrap();
            assert_eq!(p, again, "{text}");
        }
        assert_eq!(parse_element(&s, "d_w1*w1").unwrap().to_string(), "w1*d_w1 + 1");
        assert_eq!(parse_element(&s, "(w1 + 1)^2").unwrap().to_string(), "w1^2 + 2*w1 + 1");
    }

    #[test]
    fn errors() {
        let s = Signature::new(&["w"]).unwrap().into_arc();
        assert!(matches!(parse_element(&s, "q"), Err(WeylError::UnknownName(_))));
        assert!(parse_element(&s, "w^-1").is_err());
        assert!(parse_element(&s, "w +").is_err());
        assert!(parse_element(&s, "").is_err());
    }
}
