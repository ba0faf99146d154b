//! The scalar/polynomial mini-language used in spec files.
//!
//! Grammar, loosest binding first: `+ -`, `@` (tensor), `* /`, unary `-`, `^` with a signed
//! integer exponent, then atoms: numbers, identifiers, `name(args)`, parentheses.

use std::fmt;

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(String),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Tensor(Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, CliError> {
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
            out.push(Tok::Num(cs[st..i].iter().collect()));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^@(),".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(CliError::Input(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
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

    fn err(&self, what: &str) -> CliError {
        CliError::Input(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn sum(&mut self) -> Result<Expr, CliError> {
        let mut e = self.tensor()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.tensor()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.tensor()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr, CliError> {
        let mut e = self.product()?;
        while self.eat('@') {
            e = Expr::Tensor(Box::new(e), Box::new(self.product()?));
        }
        Ok(e)
    }

    fn product(&mut self) -> Result<Expr, CliError> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let k: i64 = n.parse().map_err(|_| self.err("exponent out of range"))?;
                    return Ok(Expr::Pow(Box::new(base), if neg { -k } else { k }));
                }
                _ => return Err(self.err("expected an integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.sum()?];
                    while self.eat(',') {
                        args.push(self.sum()?);
                    }
                    if !self.eat(')') {
                        return Err(self.err("expected ')'"));
                    }
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Sym(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

pub fn parse(s: &str) -> Result<Expr, CliError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, src: s };
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(e) => write!(f, "-({e})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, k) => write!(f, "({a})^{k}"),
            Expr::Tensor(a, b) => write!(f, "({a} @ {b})"),
            Expr::Call(n, args) => {
                write!(f, "{n}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        assert_eq!(parse("1 + 2*a^2").unwrap().to_string(), "(1 + (2 * (a)^2))");
        assert_eq!(parse("-a^-1*b").unwrap().to_string(), "(-((a)^-1) * b)");
        assert_eq!(parse("x@1 + 2*y@x").unwrap().to_string(), "((x @ 1) + ((2 * y) @ x))");
    }

    #[test]
    fn tensor_binds_between_sum_and_product() {
        match parse("a + b @ c").unwrap() {
            Expr::Add(l, r) => {
                assert_eq!(*l, Expr::Sym("a".into()));
                assert_eq!(*r, parse("(b) @ (c)").unwrap());
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn calls_and_errors() {
        assert_eq!(parse("exp(-2*h)").unwrap(), Expr::Call("exp".into(), vec![parse("-2*h").unwrap()]));
        assert!(parse("a +").is_err());
        assert!(parse("a ^ b").is_err());
        assert!(parse("a $ b").is_err());
        assert!(parse("(a").is_err());
    }
}
