//! Arithmetic expressions in one variable `x`.
//!
//! Grammar: numbers, `x`, `pi`, `e`, `+ - * / ^` (also `×` and `÷`),
//! parentheses and the functions `exp`, `log`/`ln`, `sin`, `cos`.
//! `^` is right-associative and binds tighter than unary minus.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    X,
    Neg(Box<Expr>),
    Bin(Op, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Func {
    Exp,
    Log,
    Sin,
    Cos,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

impl Expr {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Expr::Num(v) => *v,
            Expr::X => x,
            Expr::Neg(e) => -e.eval(x),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(x), b.eval(x));
                match op {
                    Op::Add => a + b,
                    Op::Sub => a - b,
                    Op::Mul => a * b,
                    Op::Div => a / b,
                    Op::Pow => a.powf(b),
                }
            }
            Expr::Call(func, e) => {
                let v = e.eval(x);
                match func {
                    Func::Exp => v.exp(),
                    Func::Log => v.ln(),
                    Func::Sin => v.sin(),
                    Func::Cos => v.cos(),
                }
            }
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let tokens = lex(src)?;
    let mut p = Parser { tokens, pos: 0, end: src.len() };
    let e = p.sum()?;
    match p.peek() {
        None => Ok(e),
        Some((at, t)) => Err(ParseError { pos: at, msg: format!("unexpected {t:?}") }),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() || c == '.' {
            let mut end = i;
            let mut prev = ' ';
            while let Some(&(j, d)) = chars.peek() {
                let exp_sign = (d == '+' || d == '-') && (prev == 'e' || prev == 'E');
                if d.is_ascii_digit() || d == '.' || d == 'e' || d == 'E' || exp_sign {
                    end = j + d.len_utf8();
                    prev = d;
                    chars.next();
                } else {
                    break;
                }
            }
            let text = &src[i..end];
            let v = text
                .parse()
                .map_err(|_| ParseError { pos: i, msg: format!("bad number {text:?}") })?;
            out.push((i, Tok::Num(v)));
        } else if c.is_alphabetic() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if d.is_alphanumeric() {
                    end = j + d.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            out.push((i, Tok::Ident(src[i..end].to_string())));
        } else {
            let sym = match c {
                '×' => '*',
                '÷' => '/',
                '−' => '-',
                '+' | '-' | '*' | '/' | '^' | '(' | ')' => c,
                _ => return Err(ParseError { pos: i, msg: format!("unexpected character {c:?}") }),
            };
            out.push((i, Tok::Sym(sym)));
            chars.next();
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.pos).map(|(i, t)| (*i, t))
    }

    fn at(&self) -> usize {
        self.peek().map_or(self.end, |(i, _)| i)
    }

    fn eat(&mut self, sym: char) -> bool {
        if matches!(self.peek(), Some((_, Tok::Sym(c))) if *c == sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            let op = if self.eat('+') {
                Op::Add
            } else if self.eat('-') {
                Op::Sub
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.product()?));
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                Op::Mul
            } else if self.eat('/') {
                Op::Div
            } else {
                return Ok(lhs);
            };
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(Expr::Bin(Op::Pow, Box::new(base), Box::new(self.unary()?)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let at = self.at();
        let Some((_, tok)) = self.peek() else {
            return Err(ParseError { pos: at, msg: "unexpected end of expression".into() });
        };
        let tok = tok.clone();
        self.pos += 1;
        match tok {
            Tok::Num(v) => Ok(Expr::Num(v)),
            Tok::Sym('(') => {
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(ParseError { pos: self.at(), msg: "expected ')'".into() });
                }
                Ok(e)
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "x" => return Ok(Expr::X),
                    "pi" => return Ok(Expr::Num(std::f64::consts::PI)),
                    "e" => return Ok(Expr::Num(std::f64::consts::E)),
                    "exp" => Func::Exp,
                    "log" | "ln" => Func::Log,
                    "sin" => Func::Sin,
                    "cos" => Func::Cos,
                    _ => return Err(ParseError { pos: at, msg: format!("unknown name {name:?}") }),
                };
                if !self.eat('(') {
                    return Err(ParseError { pos: self.at(), msg: format!("expected '(' after {name}") });
                }
                let arg = self.sum()?;
                if !self.eat(')') {
                    return Err(ParseError { pos: self.at(), msg: "expected ')'".into() });
                }
                Ok(Expr::Call(func, Box::new(arg)))
            }
            Tok::Sym(c) => Err(ParseError { pos: at, msg: format!("unexpected {c:?}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(src: &str, x: f64) -> f64 {
        parse(src).unwrap().eval(x)
    }

    #[test]
    fn precedence() {
        assert_eq!(ev("1 + 2 * 3", 0.0), 7.0);
        assert_eq!(ev("(1 + 2) * 3", 0.0), 9.0);
        assert_eq!(ev("2 ^ 3 ^ 2", 0.0), 512.0);
        assert_eq!(ev("-x^2", 3.0), -9.0);
        assert_eq!(ev("8 / 4 / 2", 0.0), 1.0);
        assert_eq!(ev("2 ^ -1", 0.0), 0.5);
        assert_eq!(ev("10 - 4 - 3", 0.0), 3.0);
    }

    #[test]
    fn targets_from_the_examples() {
        assert_eq!(ev("1+x^2", 0.5), 1.25);
        assert_eq!(ev("x*exp(x)", 1.0), std::f64::consts::E);
        assert_eq!(ev("sin(x)", 0.3), 0.3f64.sin());
        assert_eq!(ev("exp(x)", 1.0), std::f64::consts::E);
        assert_eq!(ev("3 × x ÷ 2", 2.0), 3.0);
        assert_eq!(ev("log(e) + cos(0)", 0.0), 2.0);
        assert_eq!(ev("1.5e-3*x", 2.0), 3e-3);
    }

    #[test]
    fn errors_point_at_the_problem() {
        assert_eq!(parse("1 + ").unwrap_err().pos, 4);
        assert_eq!(parse("foo(x)").unwrap_err().pos, 0);
        assert!(parse("(x").is_err());
        assert!(parse("x $ 2").is_err());
        assert!(parse("sin x").is_err());
        assert!(parse("x x").is_err());
        assert!(parse("").is_err());
    }
}
