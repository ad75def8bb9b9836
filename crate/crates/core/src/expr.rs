//! Text form of polynomials and `ħ`-series.
//!
//! ```text
//! series   = term { ("+" | "-") term }
//! term     = [sign] [rational] { factor }
//! factor   = ("z" | "xi") ["^" int] | ("u" | "v") ["^" nat] | "h" ["^" nat]
//! rational = int ["/" posint]
//! ```
//!
//! `xi` and `v` are accepted as spellings of the same two exponent slots, for
//! inputs given in `V`-chart coordinates. A term may carry at most one `h`
//! factor. Example: `1/2 z^-1 u^2 + 3 z u h^1`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{HbarSeries, LaurentPoly, Monomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[error("parse error at column {position}: found {found}, expected one of {}", .expected.join(", "))]
pub struct ParseError {
    /// 1-based character column.
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Poly(LaurentPoly),
    Series(HbarSeries),
}

impl Expression {
    /// Series view; a plain polynomial sits at `ħ^0`.
    pub fn into_series(self, order: usize) -> HbarSeries {
        match self {
            Expression::Poly(p) => HbarSeries::from_poly(p, order),
            Expression::Series(s) => s.truncate(order),
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expression::Poly(p) => write!(f, "{p}"),
            Expression::Series(s) => write!(f, "{s}"),
        }
    }
}

struct Scanner {
    chars: Vec<char>,
    pos: usize,
}

impl Scanner {
    fn new(src: &str) -> Self {
        Scanner {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        let found = match self.chars.get(self.pos) {
            Some(c) => format!("'{c}'"),
            None => "end of input".to_string(),
        };
        ParseError {
            position: self.pos + 1,
            found,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().ok()
    }

    /// Exponent after `^`; `signed` allows a leading minus.
    fn exponent(&mut self, signed: bool) -> Result<i64, ParseError> {
        self.skip_ws();
        let mut neg = false;
        if signed && self.peek_raw() == Some('-') {
            neg = true;
            self.pos += 1;
            self.skip_ws();
        }
        let expected: &[&str] = if signed { &["integer"] } else { &["natural number"] };
        let start = self.pos;
        let value = self.digits().ok_or_else(|| self.error(expected))?;
        let value: i64 = value.try_into().map_err(|_| {
            let mut e = self.error(&["exponent that fits in 64 bits"]);
            e.position = start + 1;
            e
        })?;
        Ok(if neg { -value } else { value })
    }

    fn optional_exponent(&mut self, signed: bool) -> Result<i64, ParseError> {
        if self.peek() == Some('^') {
            self.pos += 1;
            self.exponent(signed)
        } else {
            Ok(1)
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            let next = self.chars.get(self.pos + w.len());
            if next.is_none_or(|c| !c.is_ascii_alphabetic()) {
                self.pos += w.len();
                return true;
            }
        }
        false
    }
}

struct Term {
    coeff: Rational,
    mono: Monomial,
    hbar: usize,
}

const TERM_START: &[&str] = &["number", "'z'", "'u'", "'xi'", "'v'", "'h'"];

fn parse_term(sc: &mut Scanner, sign: Rational) -> Result<Term, ParseError> {
    let mut coeff = sign;
    let mut seen_anything = false;
    if let Some(c) = sc.peek() {
        if c.is_ascii_digit() {
            let num = sc.digits().expect("digit present");
            let mut q = Rational::from_integer(num);
            if sc.peek() == Some('/') {
                sc.pos += 1;
                sc.skip_ws();
                let den = sc.digits().ok_or_else(|| sc.error(&["positive integer"]))?;
                if den.is_zero() {
                    sc.pos -= 1;
                    return Err(sc.error(&["positive integer"]));
                }
                q /= Rational::from_integer(den);
            }
            coeff *= q;
            seen_anything = true;
        }
    }
    let mut z = 0i64;
    let mut u = 0i64;
    let mut hbar: Option<usize> = None;
    loop {
        match sc.peek() {
            Some('*') if seen_anything => {
                sc.pos += 1;
                continue;
            }
            Some(_) => {}
            None => break,
        }
        let save = sc.pos;
        if sc.keyword("xi") || sc.keyword("z") {
            z += sc.optional_exponent(true)?;
        } else if sc.keyword("u") || sc.keyword("v") {
            u += sc.optional_exponent(false)?;
        } else if sc.keyword("h") {
            if hbar.is_some() {
                sc.pos = save;
                return Err(sc.error(&["at most one 'h' factor per term"]));
            }
            let e = sc.optional_exponent(false)?;
            hbar = Some(e as usize);
        } else {
            break;
        }
        seen_anything = true;
    }
    if !seen_anything {
        return Err(sc.error(TERM_START));
    }
    Ok(Term {
        coeff,
        mono: Monomial::new(z, u as u32),
        hbar: hbar.unwrap_or(0),
    })
}

fn parse_terms(text: &str) -> Result<Vec<Term>, ParseError> {
    let mut sc = Scanner::new(text);
    let mut terms = Vec::new();
    let mut sign = Rational::one();
    match sc.peek() {
        Some('-') => {
            sc.pos += 1;
            sign = -Rational::one();
        }
        Some('+') => sc.pos += 1,
        _ => {}
    }
    terms.push(parse_term(&mut sc, sign)?);
    loop {
        match sc.peek() {
            None => break,
            Some('+') => {
                sc.pos += 1;
                terms.push(parse_term(&mut sc, Rational::one())?);
            }
            Some('-') => {
                sc.pos += 1;
                terms.push(parse_term(&mut sc, -Rational::one())?);
            }
            Some(_) => return Err(sc.error(&["'+'", "'-'", "end of input"])),
        }
    }
    Ok(terms)
}

/// Parses either a plain polynomial or, when any `h` factor occurs, a series.
pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let terms = parse_terms(text)?;
    let max_h = terms.iter().map(|t| t.hbar).max().unwrap_or(0);
    let has_h = text.contains('h');
    if !has_h {
        let p = LaurentPoly::from_terms(terms.into_iter().map(|t| (t.mono, t.coeff)));
        return Ok(Expression::Poly(p));
    }
    let mut coeffs = vec![LaurentPoly::zero(); max_h + 1];
    for t in terms {
        coeffs[t.hbar].add_term(t.mono, t.coeff);
    }
    Ok(Expression::Series(HbarSeries::from_coeffs(coeffs, max_h)))
}

pub fn parse_poly(text: &str) -> Result<LaurentPoly, ParseError> {
    match parse_expression(text)? {
        Expression::Poly(p) => Ok(p),
        Expression::Series(s) => {
            if s.coeffs()[1..].iter().all(LaurentPoly::is_zero) {
                Ok(s.classical_limit().clone())
            } else {
                let col = text.find('h').map(|i| text[..i].chars().count() + 1).unwrap_or(1);
                Err(ParseError {
                    position: col,
                    found: "'h'".into(),
                    expected: vec!["polynomial without h".into()],
                })
            }
        }
    }
}

/// Parses a series and fixes its truncation order.
pub fn parse_series(text: &str, order: usize) -> Result<HbarSeries, ParseError> {
    Ok(parse_expression(text)?.into_series(order))
}
