//! One small expression grammar shared by scalars, Hopf elements, forms and
//! tensors:
//!
//! ```text
//! sum    := tensor (('+' | '-') tensor)*
//! tensor := term ('@' term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' ['-'] integer)?
//! atom   := integer | name | '(' sum ')'
//! ```
//!
//! Names are resolved by whoever evaluates the tree.

use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Name(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(s.parse().expect("digits")));
        } else if "+-*/^@()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '⊗' {
            out.push(Tok::Op('@'));
            i += 1;
        } else if c == '·' {
            out.push(Tok::Op('*'));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push(Tok::Name(chars[start..i].iter().collect()));
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        while let Some(op) = self.peek_op() {
            if op != '+' && op != '-' {
                break;
            }
            self.pos += 1;
            let rhs = self.tensor()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek_op() == Some('@') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Tensor(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.peek_op() {
            if op != '*' && op != '/' {
                break;
            }
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = if op == '*' {
                Expr::Mul(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Div(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.peek_op() == Some('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            let neg = if self.peek_op() == Some('-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let k = match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let k: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    k
                }
                _ => return Err(self.err("expected integer exponent")),
            };
            return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Name(s)) => {
                self.pos += 1;
                Ok(Expr::Name(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if self.peek_op() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, src };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Evaluates a tree in a ring-like target. Implementors map names and
/// supply the operations; unsupported operations return errors.
pub trait Evaluator {
    type Value;
    fn number(&self, n: &BigInt) -> Result<Self::Value>;
    fn name(&self, s: &str) -> Result<Self::Value>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value>;
    fn tensor(&self, _a: Self::Value, _b: Self::Value) -> Result<Self::Value> {
        Err(Error::Parse("'@' is not allowed here".into()))
    }
    fn pow(&self, a: Self::Value, k: i64) -> Result<Self::Value>;

    fn eval(&self, e: &Expr) -> Result<Self::Value> {
        Ok(match e {
            Expr::Num(n) => self.number(n)?,
            Expr::Name(s) => self.name(s)?,
            Expr::Neg(a) => self.neg(self.eval(a)?)?,
            Expr::Add(a, b) => self.add(self.eval(a)?, self.eval(b)?)?,
            Expr::Sub(a, b) => {
                let b = self.neg(self.eval(b)?)?;
                self.add(self.eval(a)?, b)?
            }
            Expr::Mul(a, b) => self.mul(self.eval(a)?, self.eval(b)?)?,
            Expr::Div(a, b) => self.div(self.eval(a)?, self.eval(b)?)?,
            Expr::Tensor(a, b) => self.tensor(self.eval(a)?, self.eval(b)?)?,
            Expr::Pow(a, k) => self.pow(self.eval(a)?, *k)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_binds_looser_than_product() {
        let e = parse("mu*a@b").unwrap();
        assert!(matches!(e, Expr::Tensor(..)));
        let e = parse("a@b - c@d").unwrap();
        assert!(matches!(e, Expr::Sub(..)));
    }

    #[test]
    fn negative_exponent() {
        assert_eq!(parse("u^-2").unwrap(), Expr::Pow(Box::new(Expr::Name("u".into())), -2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("1 +").is_err());
        assert!(parse("(a").is_err());
        assert!(parse("a $ b").is_err());
    }
}
