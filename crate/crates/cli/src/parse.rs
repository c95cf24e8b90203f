//! Text input: Puiseux series expressions and lattice specifications.
//!
//! Series grammar (whitespace is ignored):
//!
//! ```text
//! series   := sign? term (sign term)*
//! term     := factor ('*'? factor)*
//! factor   := number ('/' number)?            rational coefficient
//!           | 'zeta' '(' number ')' ('^' int)? root of unity
//!           | var ('^' exponent)?
//! exponent := int | '(' int ('/' int)? ')'
//! ```
//!
//! Variables are `x1, ..., xn`; for `n <= 4` the aliases `x, y, z, w` name
//! the first four. Like terms are merged and zero terms dropped.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;
use toricnorm::{CycloNumber, ExpVec, PuiseuxSeries, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse: {message} at column {column}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
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

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Num(BigInt::from_str(&digits).expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return err(col, format!("unexpected character '{c}'")),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// A variable occurrence before the dimension is known.
#[derive(Clone, Copy, Debug)]
enum VarRef {
    Indexed(usize),
    Alias(usize),
}

struct RawTerm {
    coeff: CycloNumber,
    vars: Vec<(VarRef, Rational, usize)>,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn next(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        let (t, col) = self.next();
        if t == want {
            Ok(())
        } else {
            err(col, format!("expected {want}, found {t}"))
        }
    }

    fn number(&mut self) -> Result<BigInt, ParseError> {
        match self.next() {
            (Tok::Num(n), _) => Ok(n),
            (t, col) => err(col, format!("expected a number, found {t}")),
        }
    }

    fn series(&mut self) -> Result<Vec<RawTerm>, ParseError> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Tok::Plus => {
                self.next();
                false
            }
            Tok::Minus => {
                self.next();
                true
            }
            _ => false,
        };
        loop {
            let mut t = self.term()?;
            if negative {
                t.coeff = t.coeff.neg();
            }
            terms.push(t);
            negative = match self.next() {
                (Tok::Plus, _) => false,
                (Tok::Minus, _) => true,
                (Tok::End, _) => return Ok(terms),
                (t, col) => return err(col, format!("expected '+', '-' or end of input, found {t}")),
            };
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let mut term = RawTerm {
            coeff: CycloNumber::one(),
            vars: Vec::new(),
        };
        self.factor(&mut term)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                    self.factor(&mut term)?;
                }
                Tok::Num(_) | Tok::Ident(_) => self.factor(&mut term)?,
                _ => return Ok(term),
            }
        }
    }

    fn factor(&mut self, term: &mut RawTerm) -> Result<(), ParseError> {
        match self.next() {
            (Tok::Num(p), _) => {
                let mut r = Rational::from_integer(p);
                if *self.peek() == Tok::Slash {
                    self.next();
                    let col = self.col();
                    let q = self.number()?;
                    if q.is_zero() {
                        return err(col, "division by zero");
                    }
                    r /= Rational::from_integer(q);
                }
                term.coeff = term.coeff.mul(&CycloNumber::rational(r));
                Ok(())
            }
            (Tok::Ident(name), _) if name == "zeta" => {
                self.expect(Tok::LParen)?;
                let ncol = self.col();
                let n = self.number()?;
                self.expect(Tok::RParen)?;
                let n = match n.to_u64() {
                    Some(n) if (1..=1 << 16).contains(&n) => n,
                    _ => return err(ncol, "zeta order must be between 1 and 65536"),
                };
                let j = if *self.peek() == Tok::Caret {
                    self.next();
                    self.signed_int()?
                } else {
                    BigInt::from(1)
                };
                let j = (j % BigInt::from(n)).to_i64().expect("reduced exponent");
                term.coeff = term.coeff.mul(&CycloNumber::zeta_pow(n, j));
                Ok(())
            }
            (Tok::Ident(name), col) => {
                let var = resolve_name(&name).ok_or_else(|| ParseError {
                    column: col,
                    message: format!("unknown variable '{name}'"),
                })?;
                let exp = if *self.peek() == Tok::Caret {
                    self.next();
                    self.exponent()?
                } else {
                    Rational::from_integer(BigInt::from(1))
                };
                term.vars.push((var, exp, col));
                Ok(())
            }
            (t, col) => err(col, format!("expected a coefficient or variable, found {t}")),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(-self.number()?);
        }
        self.number()
    }

    fn exponent(&mut self) -> Result<Rational, ParseError> {
        let col = self.col();
        let value = if *self.peek() == Tok::LParen {
            self.next();
            let p = self.signed_int()?;
            let q = if *self.peek() == Tok::Slash {
                self.next();
                let qcol = self.col();
                let q = self.signed_int()?;
                if q.is_zero() {
                    return err(qcol, "division by zero");
                }
                q
            } else {
                BigInt::from(1)
            };
            self.expect(Tok::RParen)?;
            Rational::new(p, q)
        } else {
            Rational::from_integer(self.signed_int()?)
        };
        if value.is_negative() {
            return err(col, "exponents must be nonnegative");
        }
        Ok(value)
    }
}

fn resolve_name(name: &str) -> Option<VarRef> {
    if let Some(i) = ["x", "y", "z", "w"].iter().position(|a| *a == name) {
        return Some(VarRef::Alias(i));
    }
    let digits = name.strip_prefix('x')?;
    if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse::<usize>().ok().map(|k| VarRef::Indexed(k - 1))
}

/// Parse a series in `n` variables; with `n = None` the dimension is the
/// largest variable index used (at least 1).
pub fn parse_series(text: &str, n: Option<usize>) -> Result<PuiseuxSeries, ParseError> {
    if text.trim().is_empty() {
        return err(1, "empty input");
    }
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let terms = p.series()?;

    let needed = terms
        .iter()
        .flat_map(|t| t.vars.iter())
        .map(|(v, _, _)| match v {
            VarRef::Indexed(i) | VarRef::Alias(i) => i + 1,
        })
        .max()
        .unwrap_or(1);
    let n = n.unwrap_or(needed);
    if n == 0 {
        return err(1, "number of variables must be positive");
    }

    let mut series = PuiseuxSeries::zero(n);
    for t in terms {
        let mut e = vec![Rational::zero(); n];
        for (v, a, col) in t.vars {
            let i = match v {
                VarRef::Alias(_) if n > 4 => {
                    return err(
                        col,
                        format!("aliases x, y, z, w need at most 4 variables; use x1..x{n}"),
                    )
                }
                VarRef::Alias(i) | VarRef::Indexed(i) => i,
            };
            if i >= n {
                return err(col, format!("unknown variable (only {n} variables)"));
            }
            e[i] += a;
        }
        series = series.add(&PuiseuxSeries::monomial(ExpVec::new(e), t.coeff));
    }
    Ok(series)
}

/// Parse `"(1,1);(1,-1)"` into integer vectors of a common length.
pub fn parse_lattice_spec(text: &str) -> Result<Vec<Vec<BigInt>>, ParseError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        let start = offset + chunk.len() - chunk.trim_start().len() + 1;
        offset += chunk.chars().count() + 1;
        let body = chunk.trim();
        if body.is_empty() {
            if text.trim().is_empty() {
                return err(1, "empty lattice specification");
            }
            continue;
        }
        let inner = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| ParseError {
                column: start,
                message: "expected a tuple like (1,-2)".into(),
            })?;
        let mut row = Vec::new();
        for part in inner.split(',') {
            let v = BigInt::from_str(part.trim()).map_err(|_| ParseError {
                column: start,
                message: format!("'{}' is not an integer", part.trim()),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return err(
                    start,
                    format!("tuple has {} entries, expected {}", row.len(), first.len()),
                );
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return err(1, "empty lattice specification");
    }
    Ok(rows)
}

/// Parse `--omega` weights `w1,...,wn` (integers or `p/q`).
pub fn parse_weights(text: &str) -> Result<Vec<Rational>, ParseError> {
    text.split(',')
        .map(|s| {
            toricnorm::expvec::parse_rational(s).ok_or_else(|| ParseError {
                column: 1,
                message: format!("'{}' is not a rational weight", s.trim()),
            })
        })
        .collect()
}
