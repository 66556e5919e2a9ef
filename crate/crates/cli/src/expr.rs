//! Small complex-expression language for the `--function` and `--z0` flags.
//!
//! Supports numbers, `i`, `pi`, `e`, the variable `z`, `+ - * / ^`,
//! implicit multiplication (`2i`, `3z^2`) and the functions `exp`, `sqrt`,
//! `log`, `sin`, `cos`. Expressions in `z` evaluate to truncated series;
//! `log`, `sin` and `cos` are only available on constants.

use num_complex::Complex;
use subord_core::series::Series;
use subord_core::{Series64, C64};

use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Exp,
    Sqrt,
    Log,
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(C64),
    Z,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Expression(msg.into())
}

fn tokenize(src: &str) -> Result<Vec<Token>, CliError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3; a bare `e` after a number is Euler's number
            if i + 1 < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    while j < chars.len() && chars[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let text: String = chars[start..i].iter().collect();
            let v = text.parse::<f64>().map_err(|_| bad(format!("bad number '{text}'")))?;
            out.push(Token::Num(v));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect::<String>().to_ascii_lowercase()));
        } else {
            out.push(match c {
                '+' | '-' | '*' | '/' | '^' => Token::Op(c),
                '(' => Token::LParen,
                ')' => Token::RParen,
                ',' => Token::Comma,
                _ => return Err(bad(format!("unexpected character '{c}'"))),
            });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), CliError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(bad(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.term()?;
        while let Some(Token::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Token::Op('*')) => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Op('/')) => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Token::Num(_) | Token::Ident(_) | Token::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, CliError> {
        match self.peek() {
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.unary()?)))
            }
            Some(Token::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, CliError> {
        let base = self.primary()?;
        if let Some(Token::Op('^')) = self.peek() {
            self.pos += 1;
            let exp = self.unary()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        match self.next() {
            Some(Token::Num(v)) => Ok(Expr::Const(Complex::new(v, 0.0))),
            Some(Token::LParen) => {
                let e = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(e)
            }
            Some(Token::Ident(name)) => {
                let func = match name.as_str() {
                    "z" => return Ok(Expr::Z),
                    "i" | "j" => return Ok(Expr::Const(Complex::new(0.0, 1.0))),
                    "pi" => return Ok(Expr::Const(Complex::new(std::f64::consts::PI, 0.0))),
                    "e" => return Ok(Expr::Const(Complex::new(std::f64::consts::E, 0.0))),
                    "exp" => Func::Exp,
                    "sqrt" => Func::Sqrt,
                    "log" | "ln" => Func::Log,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    _ => return Err(bad(format!("unknown name '{name}'"))),
                };
                self.expect(Token::LParen)?;
                let arg = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Call(func, Box::new(arg)))
            }
            t => Err(bad(format!("unexpected token {t:?}"))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        tokens: tokenize(src)?,
        pos: 0,
    };
    if p.tokens.is_empty() {
        return Err(bad("empty expression"));
    }
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(bad(format!("trailing input in '{src}'")));
    }
    Ok(e)
}

impl Expr {
    fn has_z(&self) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Z => true,
            Expr::Neg(a) | Expr::Call(_, a) => a.has_z(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) | Expr::Pow(a, b) => {
                a.has_z() || b.has_z()
            }
        }
    }

    /// Value of an expression free of `z`.
    pub fn constant(&self) -> Result<C64, CliError> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Z => return Err(bad("expected a constant, found z")),
            Expr::Neg(a) => -a.constant()?,
            Expr::Add(a, b) => a.constant()? + b.constant()?,
            Expr::Sub(a, b) => a.constant()? - b.constant()?,
            Expr::Mul(a, b) => a.constant()? * b.constant()?,
            Expr::Div(a, b) => a.constant()? / b.constant()?,
            Expr::Pow(a, b) => {
                let (a, b) = (a.constant()?, b.constant()?);
                match integer(b) {
                    Some(k) if k.abs() <= i32::MAX as i64 => a.powi(k as i32),
                    _ => a.powc(b),
                }
            }
            Expr::Call(f, a) => {
                let a = a.constant()?;
                match f {
                    Func::Exp => a.exp(),
                    Func::Sqrt => a.sqrt(),
                    Func::Log => a.ln(),
                    Func::Sin => a.sin(),
                    Func::Cos => a.cos(),
                }
            }
        };
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(bad("expression is not finite"));
        }
        Ok(v)
    }

    /// Truncated Taylor series about the origin.
    pub fn series(&self, degree: usize) -> Result<Series64, CliError> {
        if !self.has_z() {
            return Ok(Series::constant(self.constant()?).with_degree(degree));
        }
        Ok(match self {
            Expr::Z => Series::identity().with_degree(degree),
            Expr::Neg(a) => -&a.series(degree)?,
            Expr::Add(a, b) => &a.series(degree)? + &b.series(degree)?,
            Expr::Sub(a, b) => &a.series(degree)? - &b.series(degree)?,
            Expr::Mul(a, b) => &a.series(degree)? * &b.series(degree)?,
            Expr::Div(a, b) => a.series(degree)?.div_trunc(&b.series(degree)?)?,
            Expr::Pow(a, b) => {
                let k = integer(b.constant()?).ok_or_else(|| bad("powers of z need an integer exponent"))?;
                let base = a.series(degree)?;
                let pos = base.powi(k.unsigned_abs() as u32);
                if k >= 0 {
                    pos
                } else {
                    Series::constant(Complex::new(1.0, 0.0)).with_degree(degree).div_trunc(&pos)?
                }
            }
            Expr::Call(Func::Exp, a) => a.series(degree)?.exp()?,
            Expr::Call(Func::Sqrt, a) => a.series(degree)?.sqrt()?,
            Expr::Call(f, _) => return Err(bad(format!("{f:?} is only supported on constants"))),
            Expr::Const(_) => unreachable!(),
        })
    }
}

fn integer(c: C64) -> Option<i64> {
    (c.im == 0.0 && c.re.fract() == 0.0 && c.re.abs() < 1e9).then_some(c.re as i64)
}

/// Splits `name(a, b, ...)` into the name and its constant arguments.
pub fn call(src: &str) -> Result<(String, Vec<C64>), CliError> {
    let src = src.trim();
    let open = src.find('(').ok_or_else(|| bad(format!("expected name(args) in '{src}'")))?;
    if !src.ends_with(')') {
        return Err(bad(format!("missing ')' in '{src}'")));
    }
    let name = src[..open].trim().to_ascii_lowercase().replace(['-', '_'], "");
    let inner = &src[open + 1..src.len() - 1];
    let args = split_top_level(inner)
        .into_iter()
        .map(|a| parse(a)?.constant())
        .collect::<Result<Vec<_>, _>>()?;
    Ok((name, args))
}

/// Splits on commas outside parentheses.
pub fn split_top_level(src: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in src.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(src[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    let last = src[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use subord_core::Analytic;

    fn val(s: &str) -> C64 {
        parse(s).unwrap().constant().unwrap()
    }

    #[test]
    fn constants() {
        assert_eq!(val("1 + 2i"), Complex::new(1.0, 2.0));
        assert_eq!(val("2^3"), Complex::new(8.0, 0.0));
        assert_eq!(val("-2^2"), Complex::new(-4.0, 0.0));
        assert_eq!(val("1e-3"), Complex::new(1e-3, 0.0));
        let z = val("0.7*exp(i*pi/3)");
        assert!((z - Complex::from_polar(0.7, std::f64::consts::PI / 3.0)).norm() < 1e-15);
        assert!((val("2e") - 2.0 * std::f64::consts::E).norm() < 1e-15);
        assert!(parse("1 +").is_err());
        assert!(parse("foo(1)").is_err());
        assert!(parse("z").unwrap().constant().is_err());
    }

    #[test]
    fn series_forms() {
        let s = parse("z^2").unwrap().series(8).unwrap();
        assert_eq!(s.coeff(2), Complex::new(1.0, 0.0));
        let s = parse("z/(1 - z)").unwrap().series(16).unwrap();
        assert!((0..=16).skip(1).all(|k| (s.coeff(k) - 1.0).norm() < 1e-15));
        let s = parse("exp(z) - 1").unwrap().series(20).unwrap();
        let z = Complex::new(0.3, 0.2);
        assert!((s.value(z) - (z.exp() - 1.0)).norm() < 1e-14);
        assert!(parse("z^0.5").unwrap().series(8).is_err());
        assert!(parse("log(z)").unwrap().series(8).is_err());
    }

    #[test]
    fn calls() {
        let (name, args) = call("half-plane(0, 1 + 0i)").unwrap();
        assert_eq!(name, "halfplane");
        assert_eq!(args, vec![Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)]);
        assert_eq!(split_top_level("exp(1, 2), 3"), vec!["exp(1, 2)", "3"]);
        assert!(call("disk 1").is_err());
    }
}
