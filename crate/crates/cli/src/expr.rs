//! Expression language for Clifford arithmetic:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := '-' factor | call | atom
//! call   := ('rev' | 'conj' | 'gr' | 'inv') '(' expr ')'
//! atom   := rational | generator | '(' expr ')'
//! ```
//!
//! Rationals are `digits` or `digits/digits` with no inner whitespace;
//! generators are `e1`..`e12` (`e0` is the unit).

use std::fmt;

use cliffmoeb_core::{Error as CoreError, Multivector, Rational, Signature};
use num_bigint::BigInt;

/// Deepest nesting accepted before parsing stops with an error.
pub const MAX_DEPTH: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Rev,
    Conj,
    Gr,
    Inv,
}

impl Func {
    fn name(self) -> &'static str {
        match self {
            Func::Rev => "rev",
            Func::Conj => "conj",
            Func::Gr => "gr",
            Func::Inv => "inv",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "rev" => Func::Rev,
            "conj" => Func::Conj,
            "gr" => Func::Gr,
            "inv" => Func::Inv,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// Nonnegative literal.
    Num(Rational),
    /// Generator e_i; index 0 is the unit.
    Gen(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("inv() needs a vector argument")]
    InverseOfNonVector,
    #[error("inv() of a null vector")]
    NullVector,
    #[error(transparent)]
    Core(#[from] CoreError),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    n: usize,
}

pub fn parse(src: &str, sig: Signature) -> Result<Expr, ParseError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, depth: 0, n: sig.dim() };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected {}", p.describe())));
    }
    Ok(e)
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn describe(&self) -> String {
        match std::str::from_utf8(&self.src[self.pos..]).ok().and_then(|s| s.chars().next()) {
            Some(c) => format!("character {c:?}"),
            None if self.pos < self.src.len() => "invalid UTF-8".into(),
            None => "end of input".into(),
        }
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

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => return Err(self.error("division is only available as inv() of a vector")),
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        self.enter()?;
        let e = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Expr::Neg(Box::new(self.factor()?))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(format!("expected ')', found {}", self.describe())));
                }
                self.pos += 1;
                e
            }
            Some(c) if c.is_ascii_digit() => self.number()?,
            Some(c) if c.is_ascii_alphabetic() => self.word()?,
            _ => return Err(self.error(format!("expected an operand, found {}", self.describe()))),
        };
        self.depth -= 1;
        Ok(e)
    }

    fn digits(&mut self) -> &[u8] {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let num = BigInt::parse_bytes(self.digits(), 10).expect("nonempty digit run");
        if self.src.get(self.pos) != Some(&b'/') {
            return Ok(Expr::Num(Rational::from_integer(num)));
        }
        self.pos += 1;
        let at = self.pos;
        let den = self.digits();
        if den.is_empty() {
            return Err(self.error("expected digits after '/' in a rational literal"));
        }
        let den = BigInt::parse_bytes(den, 10).expect("nonempty digit run");
        if den == BigInt::from(0) {
            return Err(ParseError { offset: at, message: "zero denominator".into() });
        }
        Ok(Expr::Num(Rational::new(num, den)))
    }

    fn word(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ASCII");
        if name == "e" {
            let digits = self.digits();
            if digits.is_empty() {
                return Err(ParseError { offset: start, message: "expected a generator index after 'e'".into() });
            }
            let index = std::str::from_utf8(digits).expect("ASCII").parse::<usize>().ok().filter(|&i| i <= self.n);
            return match index {
                Some(i) => Ok(Expr::Gen(i)),
                None => Err(ParseError { offset: start, message: "generator index exceeds n".into() }),
            };
        }
        let Some(f) = Func::from_name(name) else {
            return Err(ParseError { offset: start, message: format!("unknown name {name:?}") });
        };
        if self.peek() != Some(b'(') {
            return Err(self.error(format!("expected '(' after {name}")));
        }
        self.pos += 1;
        let arg = self.expr()?;
        if self.peek() != Some(b')') {
            return Err(self.error(format!("expected ')', found {}", self.describe())));
        }
        self.pos += 1;
        Ok(Expr::Call(f, Box::new(arg)))
    }
}

fn is_additive(e: &Expr) -> bool {
    matches!(e, Expr::Add(..) | Expr::Sub(..))
}

impl fmt::Display for Expr {
    /// Minimal parentheses such that the output parses back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |f: &mut fmt::Formatter<'_>, e: &Expr, wrap: bool| {
            if wrap {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(r) => write!(f, "{r}"),
            Expr::Gen(i) => write!(f, "e{i}"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                paren(f, e, is_additive(e) || matches!(**e, Expr::Mul(..)))
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                write!(f, "{a}")?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                paren(f, b, is_additive(b))
            }
            Expr::Mul(a, b) => {
                paren(f, a, is_additive(a))?;
                f.write_str("*")?;
                paren(f, b, is_additive(b) || matches!(**b, Expr::Mul(..)))
            }
            Expr::Call(func, e) => write!(f, "{}({e})", func.name()),
        }
    }
}

pub fn eval(e: &Expr, sig: Signature) -> Result<Multivector<Rational>, EvalError> {
    Ok(match e {
        Expr::Num(r) => Multivector::scalar(sig, r.clone()),
        Expr::Gen(0) => Multivector::one(sig),
        Expr::Gen(i) => Multivector::basis_vector(sig, *i)?,
        Expr::Neg(a) => -eval(a, sig)?,
        Expr::Add(a, b) => eval(a, sig)?.try_add(&eval(b, sig)?)?,
        Expr::Sub(a, b) => eval(a, sig)?.try_sub(&eval(b, sig)?)?,
        Expr::Mul(a, b) => eval(a, sig)?.geometric_product(&eval(b, sig)?)?,
        Expr::Call(func, a) => {
            let x = eval(a, sig)?;
            match func {
                Func::Rev => x.reversion(),
                Func::Conj => x.conjugation(),
                Func::Gr => x.grade_involution(),
                Func::Inv => match x.kelvin_inverse() {
                    Ok(y) => y,
                    Err(CoreError::NotAVector) => return Err(EvalError::InverseOfNonVector),
                    Err(CoreError::NullVector) => return Err(EvalError::NullVector),
                    Err(other) => return Err(other.into()),
                },
            }
        }
    })
}

/// Parses and evaluates in one step.
pub fn evaluate(src: &str, sig: Signature) -> Result<Multivector<Rational>, String> {
    let e = parse(src, sig).map_err(|e| e.to_string())?;
    eval(&e, sig).map_err(|e| e.to_string())
}
