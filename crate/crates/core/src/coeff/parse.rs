//! Infix expression reader: integers, registered names, `+ - * / ^`, parentheses.

use super::ratfunc::RatFunc;
use super::registry::VariableRegistry;
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub fn parse_expr<F: Scalar>(src: &str, reg: &VariableRegistry) -> Result<RatFunc<F>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, reg };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    reg: &'a VariableRegistry,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> Error {
        Error::Parse { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr<F: Scalar>(&mut self) -> Result<RatFunc<F>> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term<F: Scalar>(&mut self) -> Result<RatFunc<F>> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| Error::Parse { offset: at, message: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary<F: Scalar>(&mut self) -> Result<RatFunc<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<F: Scalar>(&mut self) -> Result<RatFunc<F>> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let e = self.exponent()?;
        base.pow(e).map_err(|_| Error::Parse { offset: at, message: "negative power of zero".into() })
    }

    fn exponent(&mut self) -> Result<i32> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.exponent()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.exponent()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits();
                s.parse::<i32>().map_err(|_| self.err("exponent too large"))
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom<F: Scalar>(&mut self) -> Result<RatFunc<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits();
                let n: i64 = s.parse().map_err(|_| self.err("integer literal too large"))?;
                Ok(RatFunc::from_int(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = self.reg.lookup(name)?;
                Ok(RatFunc::var(v))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn reg() -> VariableRegistry {
        VariableRegistry::new(&["x1", "x2"], &["a", "b", "c"], &[] as &[&str]).unwrap()
    }

    #[test]
    fn precedence_and_powers() {
        let r = reg();
        let f: RatFunc<BigRational> = parse_expr("-x1^2 + 2*a*(b - 1)/2", &r).unwrap();
        let g: RatFunc<BigRational> = parse_expr("a*b - a - x1*x1", &r).unwrap();
        assert_eq!(f, g);
        let h: RatFunc<BigRational> = parse_expr("a^-1 * a", &r).unwrap();
        assert!(h.is_one());
    }

    #[test]
    fn reports_errors() {
        let r = reg();
        assert!(matches!(parse_expr::<BigRational>("x1 +", &r), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr::<BigRational>("y", &r), Err(Error::UnknownVariable(_))));
        assert!(matches!(parse_expr::<BigRational>("1/(a-a)", &r), Err(Error::Parse { .. })));
    }
}
