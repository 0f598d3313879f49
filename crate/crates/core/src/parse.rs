//! Plain-text polynomial expressions.
//!
//! Grammar (explicit `*` and `^`, no juxtaposition):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' unary) | ('/' integer))*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Division is accepted only by a nonzero integer literal, which is how rational
//! constants such as `1/100` are written.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::ParseDiagnostic;
use crate::poly::{Polynomial, RingRef};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

/// Largest number of monomials a power may expand into, counted as the number of
/// degree-`e` products of the base's terms.
pub const MAX_POWER_TERMS: u64 = 100_000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, (usize, String)> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            let start = i;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    i += 1;
                    continue;
                }
                b'+' => lx.push(Tok::Plus, start),
                b'-' => lx.push(Tok::Minus, start),
                b'*' => lx.push(Tok::Star, start),
                b'/' => lx.push(Tok::Slash, start),
                b'^' => lx.push(Tok::Caret, start),
                b'(' => lx.push(Tok::LParen, start),
                b')' => lx.push(Tok::RParen, start),
                b'0'..=b'9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let v: BigInt = lx.src[start..i].parse().expect("digits");
                    lx.toks.push((Tok::Int(v), start));
                    continue;
                }
                c if c.is_ascii_alphabetic() => {
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                        i += 1;
                    }
                    lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), start));
                    continue;
                }
                _ => {
                    let ch = src[start..].chars().next().unwrap_or('?');
                    return Err((start, format!("unexpected character `{ch}`")));
                }
            }
            i += 1;
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }

    fn push(&mut self, t: Tok, at: usize) {
        self.toks.push((t, at));
    }
}

struct Parser<'r> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    ring: &'r RingRef,
    depth: usize,
}

type PResult<T> = Result<T, (usize, String)>;

const MAX_NESTING: usize = 200;

impl<'r> Parser<'r> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err((self.offset(), "expression nested too deeply".into()));
        }
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.bump();
                    let at = self.offset();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => {
                            let inv = BigRational::new(1.into(), d);
                            let c = self
                                .ring
                                .field()
                                .from_rational(&inv)
                                .map_err(|e| (at, e.to_string()))?;
                            acc = acc.scale(&c);
                        }
                        Tok::Int(_) => return Err((at, "division by zero".into())),
                        _ => {
                            return Err((at, "division is only allowed by a nonzero integer literal".into()))
                        }
                    }
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {
                    return Err((self.offset(), "implicit multiplication is not allowed; use `*`".into()))
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> PResult<Polynomial> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err((self.offset(), "expression nested too deeply".into()));
                }
                let v = self.unary()?;
                self.depth -= 1;
                Ok(-&v)
            }
            Tok::Plus => {
                self.bump();
                self.depth += 1;
                if self.depth > MAX_NESTING {
                    return Err((self.offset(), "expression nested too deeply".into()));
                }
                let v = self.unary();
                self.depth -= 1;
                v
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let at = self.offset();
        match self.bump() {
            Tok::Int(e) => {
                let e: u32 = e
                    .try_into()
                    .ok()
                    .filter(|&e: &u32| e <= MAX_EXPONENT)
                    .ok_or((at, format!("exponent must be an integer between 0 and {MAX_EXPONENT}")))?;
                if *self.peek() == Tok::Caret {
                    return Err((self.offset(), "chained exponents are ambiguous; use parentheses".into()));
                }
                if expansion_bound(base.len() as u64, e as u64) > MAX_POWER_TERMS {
                    return Err((at, format!("power would expand into more than {MAX_POWER_TERMS} terms")));
                }
                Ok(base.pow(e))
            }
            _ => Err((at, "malformed exponent: expected a nonnegative integer literal".into())),
        }
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(v) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v))),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err((at, format!("unknown variable `{name}`"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err((self.toks[self.pos.saturating_sub(1)].1, "expected `)`".into())),
                }
            }
            Tok::End => Err((at, "unexpected end of expression".into())),
            other => Err((at, format!("unexpected token {}", describe(&other)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Plus => "`+`",
        Tok::Minus => "`-`",
        Tok::Star => "`*`",
        Tok::Slash => "`/`",
        Tok::Caret => "`^`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Int(_) => "integer",
        Tok::Ident(_) => "identifier",
        Tok::End => "end of input",
    }
}

/// Converts a byte offset into a 1-based (line, column) pair.
/// `C(len + e - 1, e)`, saturating above [`MAX_POWER_TERMS`].
fn expansion_bound(len: u64, e: u64) -> u64 {
    if len <= 1 {
        return len;
    }
    let mut acc: u64 = 1;
    for i in 1..len {
        // acc = C(e + i, i) after this step.
        acc = acc * (e + i) / i;
        if acc > MAX_POWER_TERMS {
            return MAX_POWER_TERMS + 1;
        }
    }
    acc
}

pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Parses `src` into a canonical polynomial of `ring`.
pub fn parse_polynomial(src: &str, ring: &RingRef) -> Result<Polynomial, ParseDiagnostic> {
    let fail = |(off, msg): (usize, String)| {
        let (l, c) = line_col(src, off);
        ParseDiagnostic::new(l, c, msg)
    };
    if src.trim().is_empty() {
        return Err(ParseDiagnostic::new(1, 1, "empty expression"));
    }
    let toks = Lexer::run(src).map_err(fail)?;
    let mut p = Parser { toks, pos: 0, ring, depth: 0 };
    let value = p.expr().map_err(fail)?;
    if *p.peek() != Tok::End {
        let off = p.offset();
        let msg = match p.peek() {
            Tok::RParen => "unbalanced `)`".to_string(),
            t => format!("unexpected {}", describe(t)),
        };
        return Err(fail((off, msg)));
    }
    Ok(value)
}

/// Checks the variable naming rule: a letter followed by letters, digits or `_`.
pub fn is_valid_variable_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::monomial::MonomialOrder;
    use crate::poly::Ring;

    fn ring(names: &[&str]) -> RingRef {
        Ring::new(names.iter().map(|s| s.to_string()).collect(), FieldSpec::Rationals, MonomialOrder::DegRevLex)
    }

    #[test]
    fn generic_minor() {
        let r = ring(&["x1", "x2", "x3", "x4", "x5", "x6"]);
        let p = parse_polynomial("x1*x5 - x2*x4", &r).unwrap();
        let expected = &(&Polynomial::var(&r, 0) * &Polynomial::var(&r, 4))
            - &(&Polynomial::var(&r, 1) * &Polynomial::var(&r, 3));
        assert_eq!(p, expected);
    }

    #[test]
    fn zero_and_binomial() {
        let r = ring(&["x"]);
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        // (x+1)^3 = x^3 + 3x^2 + 3x + 1 by the binomial theorem.
        let p = parse_polynomial("(x+1)^3", &r).unwrap();
        let q = parse_polynomial("x^3 + 3*x^2 + 3*x + 1", &r).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.to_string(), "x^3 + 3*x^2 + 3*x + 1");
    }

    #[test]
    fn rational_literals() {
        let r = ring(&["x4"]);
        let p = parse_polynomial("x4 - 1/100", &r).unwrap();
        assert_eq!(p.to_string(), "x4 - 1/100");
        let q = parse_polynomial("-(3/4)*x4", &r).unwrap();
        assert_eq!(q.to_string(), "-3/4*x4");
    }

    #[test]
    fn diagnostics() {
        let r = ring(&["x", "y"]);
        let e = parse_polynomial("x + z", &r).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(e.message.contains("unknown variable"));
        assert!(parse_polynomial("x^-1", &r).unwrap_err().message.contains("exponent"));
        assert!(parse_polynomial("x^y", &r).unwrap_err().message.contains("exponent"));
        assert!(parse_polynomial("x/y", &r).unwrap_err().message.contains("division"));
        assert!(parse_polynomial("x/0", &r).unwrap_err().message.contains("zero"));
        assert!(parse_polynomial("2x", &r).unwrap_err().message.contains("implicit"));
        assert!(parse_polynomial("(x", &r).is_err());
        assert!(parse_polynomial("x)", &r).is_err());
        assert!(parse_polynomial("", &r).is_err());
        let multi = parse_polynomial("x +\n  $", &r).unwrap_err();
        assert_eq!((multi.line, multi.column), (2, 3));
    }

    #[test]
    fn names() {
        assert!(is_valid_variable_name("x1"));
        assert!(is_valid_variable_name("alpha_2"));
        assert!(!is_valid_variable_name("_w"));
        assert!(!is_valid_variable_name("1x"));
    }
}
