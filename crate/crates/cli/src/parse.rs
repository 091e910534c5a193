//! Input grammar for surds and continued fractions.
//!
//! ```text
//! operand   := "root+" int int int | "root-" int int int | cf | expr
//! cf     := "[" [int ";"] {int ","} ["(" int {"," int} ")"] "]"
//! expr   := term {("+" | "-") term}
//! term   := unary {("*" | "/") unary}
//! unary  := "-" unary | atom
//! atom   := int | "sqrt" "(" int ["/" int] ")" | "(" expr ")"
//! ```
//!
//! Whitespace is ignored between tokens. Positions are 1-based columns.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use surd_sails::arith::exact_sqrt;
use surd_sails::{FieldElement, Op, PeriodicCF, QuadraticSurd, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

type Parsed<T> = Result<T, ParseError>;

/// A parsed command-line operand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operand {
    Surd(QuadraticSurd),
    Cf(PeriodicCF),
}

impl Operand {
    pub fn surd(&self) -> QuadraticSurd {
        match self {
            Operand::Surd(x) => x.clone(),
            Operand::Cf(cf) => surd_sails::cfrac::value(cf),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Sym(char),
    Sqrt,
    Root(bool),
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

fn err<T>(column: usize, message: impl Into<String>) -> Parsed<T> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

fn lex(input: &str) -> Parsed<Vec<(Tok, usize)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphabetic() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "sqrt" => out.push((Tok::Sqrt, col)),
                "root" => match chars.get(i) {
                    Some('+') => {
                        out.push((Tok::Root(true), col));
                        i += 1;
                    }
                    Some('-') => {
                        out.push((Tok::Root(false), col));
                        i += 1;
                    }
                    _ => return err(i + 1, "expected '+' or '-' after 'root'"),
                },
                _ => return err(col, format!("unknown word '{word}'")),
            }
        } else if "+-*/()[];,".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return err(col, format!("unexpected character '{c}'"));
        }
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

impl Lexer {
    fn new(input: &str) -> Parsed<Self> {
        Ok(Lexer {
            toks: lex(input)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn column(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Parsed<()> {
        if self.eat(c) {
            Ok(())
        } else {
            err(self.column(), format!("expected '{c}', found {}", self.describe()))
        }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Int(n) => format!("'{n}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::Sqrt => "'sqrt'".into(),
            Tok::Root(_) => "'root'".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn finish(&self) -> Parsed<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => err(self.column(), format!("unexpected {}", self.describe())),
        }
    }

    /// Optionally signed integer.
    fn int(&mut self) -> Parsed<BigInt> {
        let neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => err(self.column(), format!("expected an integer, found {}", self.describe())),
        }
    }
}

/// Any operand: a surd expression, a `root±` triple or a CF literal.
pub fn parse_operand(input: &str) -> Parsed<Operand> {
    let mut lx = Lexer::new(input)?;
    let operand = match lx.peek().clone() {
        Tok::Sym('[') => Operand::Cf(cf(&mut lx)?),
        Tok::Root(larger) => {
            let col = lx.column();
            lx.bump();
            let (a, b, c) = (lx.int()?, lx.int()?, lx.int()?);
            lx.finish()?;
            return QuadraticSurd::polynomial_root(&a, &b, &c, larger)
                .map(Operand::Surd)
                .or_else(|e| err(col, e.to_string()));
        }
        _ => {
            let col = lx.column();
            match expr(&mut lx)? {
                FieldElement::Surd(x) => Operand::Surd(x),
                FieldElement::Rational(r) => return err(col, format!("value {r} is rational")),
            }
        }
    };
    lx.finish()?;
    Ok(operand)
}

/// A continued fraction literal only.
pub fn parse_cf(input: &str) -> Parsed<PeriodicCF> {
    let mut lx = Lexer::new(input)?;
    if *lx.peek() != Tok::Sym('[') {
        return err(lx.column(), format!("expected '[', found {}", lx.describe()));
    }
    let cf = cf(&mut lx)?;
    lx.finish()?;
    Ok(cf)
}

fn cf(lx: &mut Lexer) -> Parsed<PeriodicCF> {
    let open = lx.column();
    lx.expect('[')?;
    let mut pre = Vec::new();
    if *lx.peek() != Tok::Sym('(') {
        pre.push(lx.int()?);
        lx.expect(';')?;
    }
    while *lx.peek() != Tok::Sym('(') {
        let col = lx.column();
        let a = lx.int()?;
        if !a.is_positive() {
            return err(col, format!("partial quotient {a} must be positive"));
        }
        pre.push(a);
        lx.expect(',')?;
    }
    lx.expect('(')?;
    let mut period = Vec::new();
    loop {
        let col = lx.column();
        let a = lx.int()?;
        if !a.is_positive() {
            return err(col, format!("partial quotient {a} must be positive"));
        }
        period.push(a);
        if !lx.eat(',') {
            break;
        }
    }
    lx.expect(')')?;
    lx.expect(']')?;
    PeriodicCF::new(pre, period).or_else(|e| err(open, e.to_string()))
}

fn combine(col: usize, x: FieldElement, y: FieldElement, op: Op) -> Parsed<FieldElement> {
    x.arith(&y, op).or_else(|e| err(col, e.to_string()))
}

fn expr(lx: &mut Lexer) -> Parsed<FieldElement> {
    let mut acc = term(lx)?;
    loop {
        let col = lx.column();
        let op = if lx.eat('+') {
            Op::Add
        } else if lx.eat('-') {
            Op::Sub
        } else {
            return Ok(acc);
        };
        let rhs = term(lx)?;
        acc = combine(col, acc, rhs, op)?;
    }
}

fn term(lx: &mut Lexer) -> Parsed<FieldElement> {
    let mut acc = unary(lx)?;
    loop {
        let col = lx.column();
        let op = if lx.eat('*') {
            Op::Mul
        } else if lx.eat('/') {
            Op::Div
        } else {
            return Ok(acc);
        };
        let rhs = unary(lx)?;
        acc = combine(col, acc, rhs, op)?;
    }
}

fn unary(lx: &mut Lexer) -> Parsed<FieldElement> {
    let col = lx.column();
    if lx.eat('-') {
        let x = unary(lx)?;
        return combine(col, FieldElement::from(&BigInt::zero()), x, Op::Sub);
    }
    atom(lx)
}

fn atom(lx: &mut Lexer) -> Parsed<FieldElement> {
    let col = lx.column();
    let tok = lx.peek().clone();
    if matches!(tok, Tok::End) {
        return err(col, "expected a number, 'sqrt' or '(', found end of input");
    }
    match lx.bump() {
        Tok::Int(n) => Ok(FieldElement::from(&n)),
        Tok::Sym('(') => {
            let x = expr(lx)?;
            lx.expect(')')?;
            Ok(x)
        }
        Tok::Sqrt => {
            lx.expect('(')?;
            let inner = lx.column();
            let p = lx.int()?;
            let q = if lx.eat('/') { lx.int()? } else { BigInt::from(1) };
            lx.expect(')')?;
            if q.is_zero() {
                return err(inner, "zero denominator");
            }
            let r = Rational::new(p, q);
            if !r.is_positive() {
                return err(inner, format!("sqrt of non-positive {r}"));
            }
            match (exact_sqrt(r.numer()), exact_sqrt(r.denom())) {
                (Some(n), Some(d)) => Ok(FieldElement::from(Rational::new(n, d))),
                _ => QuadraticSurd::sqrt(&r)
                    .map(FieldElement::from)
                    .or_else(|e| err(inner, e.to_string())),
            }
        }
        _ => {
            lx.at = lx.at.saturating_sub(1);
            err(col, format!("expected a number, 'sqrt' or '(', found {}", lx.describe()))
        }
    }
}

/// `k0:k1` with either end possibly negative.
pub fn parse_range(input: &str) -> Parsed<(i64, i64)> {
    let Some((lo, hi)) = input.split_once(':') else {
        return err(1, "expected k0:k1");
    };
    let num = |s: &str, col: usize| {
        s.trim()
            .parse::<i64>()
            .or_else(|_| err(col, format!("'{s}' is not an integer")))
    };
    let (k0, k1) = (num(lo, 1)?, num(hi, lo.len() + 2)?);
    if k0 > k1 {
        return err(1, format!("empty range {k0}:{k1}"));
    }
    Ok((k0, k1))
}
