//! Closed-form scalar fields in chart coordinates: a small recursive-descent
//! parser and an IEEE-double evaluator.
//!
//! Grammar (standard precedence, `^` binds tightest then unary minus, then
//! `* /`, then `+ -`; binary operators are left associative and `^` takes an
//! integer literal exponent):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' int)?
//! atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//! ```

use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("point has length {got}, chart has {expected} coordinates")]
    PointLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }

    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

/// Expression tree; every coordinate reference is resolved at parse time.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Coord { index: usize, name: String },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn zero() -> Expr {
        Expr::Num(0.0)
    }

    /// Evaluate at a chart point.
    pub fn eval(&self, point: &[f64]) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Coord { index, .. } => {
                *point.get(*index).ok_or(EvalError::PointLength {
                    expected: index + 1,
                    got: point.len(),
                })?
            }
            Expr::Add(a, b) => a.eval(point)? + b.eval(point)?,
            Expr::Sub(a, b) => a.eval(point)? - b.eval(point)?,
            Expr::Mul(a, b) => a.eval(point)? * b.eval(point)?,
            Expr::Div(a, b) => {
                let d = b.eval(point)?;
                if d == 0.0 {
                    return Err(EvalError::Domain("division by zero"));
                }
                a.eval(point)? / d
            }
            Expr::Pow(b, e) => {
                let base = b.eval(point)?;
                if base == 0.0 && *e < 0 {
                    return Err(EvalError::Domain("zero raised to a negative power"));
                }
                base.powi(*e as i32)
            }
            Expr::Neg(a) => -a.eval(point)?,
            Expr::Call(f, a) => {
                let x = a.eval(point)?;
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Exp => x.exp(),
                    Func::Log => {
                        if x <= 0.0 {
                            return Err(EvalError::Domain("log of a non-positive value"));
                        }
                        x.ln()
                    }
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::Domain("sqrt of a negative value"));
                        }
                        x.sqrt()
                    }
                }
            }
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min_prec: u8) -> fmt::Result {
            if e.prec() < min_prec {
                write!(f, "(")?;
                write!(f, "{e}")?;
                write!(f, ")")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Num(v) => {
                if v.fract() == 0.0 && v.abs() < 1e15 {
                    write!(f, "{}", *v as i64)
                } else {
                    write!(f, "{v}")
                }
            }
            Expr::Coord { name, .. } => write!(f, "{name}"),
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                write!(f, " + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                write!(f, " - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                write!(f, "*")?;
                child(f, b, 3)
            }
            Expr::Div(a, b) => {
                child(f, a, 2)?;
                write!(f, "/")?;
                child(f, b, 3)
            }
            Expr::Pow(b, e) => {
                child(f, b, 5)?;
                write!(f, "^{e}")
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                child(f, a, 3)
            }
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    coords: &'a [String],
}

/// Parse `src` over the given coordinate names.
pub fn parse(src: &str, coords: &[String]) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, coords };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            self.skip_ws();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.integer()?;
            Ok(Expr::Pow(Box::new(base), exp))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat(b'-');
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: i64 = text.parse().map_err(|_| self.err("exponent out of range"))?;
        self.skip_ws();
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.skip_ws();
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.ident(),
            _ => Err(self.err("expected a number, identifier or `(`")),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'.') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        if self.peek().is_some_and(|c| c == b'e' || c == b'E') {
            let save = self.pos;
            self.pos += 1;
            if self.peek().is_some_and(|c| c == b'+' || c == b'-') {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = save; // `e` was an identifier, not an exponent
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        let v: f64 = text.parse().map_err(|_| ParseError::Syntax {
            offset: start,
            message: format!("bad numeric literal `{text}`"),
        })?;
        self.skip_ws();
        Ok(Expr::Num(v))
    }

    fn ident(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        self.skip_ws();
        if self.peek() == Some(b'(') {
            let Some(func) = Func::from_name(&name) else {
                return Err(ParseError::UnknownIdentifier { name, offset: start });
            };
            self.pos += 1;
            self.skip_ws();
            let arg = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected `)` after function argument"));
            }
            return Ok(Expr::Call(func, Box::new(arg)));
        }
        match self.coords.iter().position(|c| *c == name) {
            Some(index) => Ok(Expr::Coord { index, name }),
            None => Err(ParseError::UnknownIdentifier { name, offset: start }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coords(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn basic_shapes() {
        let c = coords(&["x", "y"]);
        let e = parse("x + 2*y", &c).unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Coord { index: 0, name: "x".into() }),
                Box::new(Expr::Mul(
                    Box::new(Expr::Num(2.0)),
                    Box::new(Expr::Coord { index: 1, name: "y".into() })
                ))
            )
        );
        assert_eq!(parse("-y", &c).unwrap(), Expr::Neg(Box::new(Expr::Coord { index: 1, name: "y".into() })));
    }

    #[test]
    fn eval_examples() {
        let c = coords(&["x", "y"]);
        assert_eq!(parse("x*y", &c).unwrap().eval(&[2.0, 3.0]).unwrap(), 6.0);
        assert_eq!(parse("exp(0)", &c).unwrap().eval(&[0.0, 0.0]).unwrap(), 1.0);
        assert!(matches!(
            parse("1/x", &c).unwrap().eval(&[0.0, 1.0]),
            Err(EvalError::Domain(_))
        ));
        assert!(parse("log(x)", &c).unwrap().eval(&[-1.0, 0.0]).is_err());
        assert!(parse("sqrt(x)", &c).unwrap().eval(&[-1.0, 0.0]).is_err());
    }

    #[test]
    fn pythagorean_identity_at_random_points() {
        use rand::{Rng, SeedableRng};
        let c = coords(&["x"]);
        let e = parse("sin(x)^2 + cos(x)^2", &c).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            let x: f64 = rng.random_range(-10.0..10.0);
            assert!((e.eval(&[x]).unwrap() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn errors_carry_offsets() {
        let c = coords(&["x"]);
        match parse("x + ", &c) {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected syntax error, got {other:?}"),
        }
        match parse("x + q", &c) {
            Err(ParseError::UnknownIdentifier { name, offset }) => {
                assert_eq!((name.as_str(), offset), ("q", 4));
            }
            other => panic!("expected unknown identifier, got {other:?}"),
        }
        // `^` takes integer literal exponents only
        assert!(parse("x^y", &c).is_err());
        assert!(parse("x^(2)", &c).is_err());
        assert!(parse("x^-2", &c).is_ok());
    }

    #[test]
    fn precedence_fixed_cases() {
        let c = coords(&["x", "y"]);
        let cases = [
            ("1 + 2*3", 7.0),
            ("2*3^2", 18.0),
            ("-3^2", -9.0),
            ("(1 + 2)*3", 9.0),
            ("4/2/2", 1.0),
            ("1 - 2 - 3", -4.0),
            ("2^-1", 0.5),
        ];
        for (src, want) in cases {
            assert_eq!(parse(src, &c).unwrap().eval(&[0.0, 0.0]).unwrap(), want, "{src}");
        }
    }
}
