use alloc::string::String;
use alloc::vec::Vec;
use num_bigint::BigInt;

use super::{MultiPoly, PolyRing};
use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("division by zero at position {position}")]
    DivisionByZero { position: usize },
    #[error("exponent at position {position} is not a small nonnegative integer")]
    BadExponent { position: usize },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. }
            | ParseError::UnknownVariable { position, .. }
            | ParseError::DivisionByZero { position }
            | ParseError::BadExponent { position } => *position,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            out.push((Tok::Num(BigInt::parse_bytes(s.as_bytes(), 10).unwrap()), start));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(bytes[start..i].iter().collect()), start));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else if c == '\u{2212}' {
            out.push((Tok::Op('-'), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax { position: i, message: alloc::format!("unexpected character `{}`", c) });
        }
    }
    out.push((Tok::End, bytes.len()));
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a PolyRing<F>,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

type P<F> = MultiPoly<<F as Field>::Elem>;

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn syntax<T>(&self, message: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax { position: self.pos(), message: message.into() })
    }

    // expr := ['-'|'+'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<P<F>, ParseError> {
        let mut acc = match self.peek() {
            Tok::Op('-') => {
                self.at += 1;
                let t = self.term()?;
                self.ring.neg(&t)
            }
            Tok::Op('+') => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Tok::Op('-') => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*'|'/') factor)*, division only by nonzero constants
    fn term(&mut self) -> Result<P<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.at += 1;
                    let f = self.factor()?;
                    acc = self.ring.mul(&acc, &f);
                }
                Tok::Op('/') => {
                    self.at += 1;
                    let pos = self.pos();
                    let f = self.factor()?;
                    let field = self.ring.field();
                    let c = match f.num_terms() {
                        0 => return Err(ParseError::DivisionByZero { position: pos }),
                        1 if f.terms().next().unwrap().0.iter().all(|e| *e == 0) => {
                            f.terms().next().unwrap().1.clone()
                        }
                        _ => {
                            return Err(ParseError::Syntax {
                                position: pos,
                                message: "divisor must be a constant".into(),
                            })
                        }
                    };
                    acc = self.ring.scale(&acc, &field.inv(&c).unwrap());
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ('^' integer)?
    fn factor(&mut self) -> Result<P<F>, ParseError> {
        let base = self.atom()?;
        if let Tok::Op('^') = self.peek() {
            self.at += 1;
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Num(n) => {
                    self.at += 1;
                    let e = u32::try_from(&n).ok().filter(|e| *e <= 1 << 16);
                    match e {
                        Some(e) => Ok(self.ring.pow(&base, e)),
                        None => Err(ParseError::BadExponent { position: pos }),
                    }
                }
                _ => Err(ParseError::BadExponent { position: pos }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<P<F>, ParseError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Num(n) => {
                self.at += 1;
                let field = self.ring.field();
                match field.from_fraction(&n, &BigInt::from(1)) {
                    Some(c) => Ok(self.ring.constant(c)),
                    None => Err(ParseError::DivisionByZero { position: pos }),
                }
            }
            Tok::Ident(name) => {
                self.at += 1;
                match self.ring.var_names().iter().position(|v| *v == name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(ParseError::UnknownVariable { name, position: pos }),
                }
            }
            Tok::Op('(') => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.syntax("expected `)`");
                }
                self.at += 1;
                Ok(e)
            }
            Tok::Op('-') => {
                self.at += 1;
                let f = self.factor()?;
                Ok(self.ring.neg(&f))
            }
            Tok::End => self.syntax("unexpected end of input"),
            Tok::Op(c) => self.syntax(&alloc::format!("unexpected `{}`", c)),
        }
    }
}

pub(super) fn parse<F: Field>(ring: &PolyRing<F>, text: &str) -> Result<P<F>, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { ring, toks, at: 0 };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.syntax("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rational, Rationals};
    use crate::polyring::MonomialOrder;
    use alloc::string::ToString;
    use alloc::vec;

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, vec!["x".to_string(), "y".to_string()])
    }

    #[test]
    fn basic_parse() {
        let r = ring();
        let p = r.parse("x^2 + 3*y").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2, 0]), Some(&Rational::ONE));
        assert_eq!(p.coeff(&[0, 1]), Some(&Rational::from_int(3)));
        assert!(r.parse("0").unwrap().is_zero());
        assert!(r.parse(" x - x ").unwrap().is_zero());
    }

    #[test]
    fn square_expands() {
        let r = ring();
        let p = r.parse("(x+y)^2").unwrap();
        // expansion by direct term listing
        let q = r.from_terms([
            (vec![2, 0], Rational::ONE),
            (vec![1, 1], Rational::from_int(2)),
            (vec![0, 2], Rational::ONE),
        ]);
        assert_eq!(p, q);
    }

    #[test]
    fn rationals_and_precedence() {
        let r = ring();
        let p = r.parse("1/2*x - -y^2").unwrap();
        assert_eq!(p.coeff(&[1, 0]), Some(&Rational::new(1, 2)));
        assert_eq!(p.coeff(&[0, 2]), Some(&Rational::ONE));
        let q = r.parse("-x^2").unwrap();
        assert_eq!(q.coeff(&[2, 0]), Some(&Rational::from_int(-1)));
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            r.parse("x + z").unwrap_err(),
            ParseError::UnknownVariable { name: "z".into(), position: 4 }
        );
        assert_eq!(r.parse("x + * y").unwrap_err().position(), 4);
        assert_eq!(r.parse("(x + y").unwrap_err().position(), 6);
        assert_eq!(r.parse("x/0").unwrap_err(), ParseError::DivisionByZero { position: 2 });
        let f3 = PolyRing::new(PrimeField::new(3).unwrap(), vec!["x".to_string()]);
        assert!(matches!(f3.parse("x/3"), Err(ParseError::DivisionByZero { .. })));
        assert_eq!(f3.parse("x/2").unwrap().coeff(&[1]), Some(&2));
    }

    #[test]
    fn round_trip_through_printing() {
        let r = ring();
        let o = MonomialOrder::grevlex(2);
        for s in ["x^3*y - 2/3*x + 7", "0", "-y", "x*y^2 + x^2*y"] {
            let p = r.parse(s).unwrap();
            let printed = r.format(&p, &o);
            assert_eq!(r.parse(&printed).unwrap(), p, "{}", printed);
        }
    }
}
