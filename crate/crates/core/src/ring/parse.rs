//! Text syntax for polynomials: `1 - 2*y + y^2`, `3/2*y^-1`,
//! `u^2*v^2 + u*v + 1`. Whitespace is insignificant.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParsePolyError {
    #[error("empty polynomial")]
    Empty,
    #[error("unexpected `{found}` at offset {offset} in `{input}`")]
    Unexpected { input: String, offset: usize, found: String },
    #[error("variable not allowed here in `{input}`")]
    UnexpectedVariable { input: String },
    #[error("zero denominator in `{input}`")]
    ZeroDenominator { input: String },
    #[error("exponent out of range in `{input}`")]
    ExponentRange { input: String },
}

/// Exponents of the variables `y`, `u`, `v` in one parsed term.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VarExponents {
    pub y: i64,
    pub u: i64,
    pub v: i64,
}

struct Cursor<'a> {
    input: &'a str,
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(input: &'a str) -> Self {
        let chars = input.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
        Cursor { input, chars, pos: 0 }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        self.pos += 1;
        c
    }

    fn error(&self) -> ParsePolyError {
        match self.chars.get(self.pos) {
            Some(&(offset, c)) => ParsePolyError::Unexpected {
                input: self.input.to_string(),
                offset,
                found: c.to_string(),
            },
            None => ParsePolyError::Unexpected {
                input: self.input.to_string(),
                offset: self.input.len(),
                found: "end of input".to_string(),
            },
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn exponent(&mut self) -> Result<i64, ParsePolyError> {
        let negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let value = self.digits().ok_or_else(|| self.error())?;
        let value: i64 = value.try_into().map_err(|_| ParsePolyError::ExponentRange {
            input: self.input.to_string(),
        })?;
        Ok(if negative { -value } else { value })
    }

    /// One factor: a number, `a/b`, or a variable with optional exponent.
    fn factor(&mut self, coeff: &mut Rational, exps: &mut VarExponents) -> Result<(), ParsePolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let numer = self.digits().ok_or_else(|| self.error())?;
                let mut value = Rational::from_integer(numer);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let denom = self.digits().ok_or_else(|| self.error())?;
                    if denom.is_zero() {
                        return Err(ParsePolyError::ZeroDenominator {
                            input: self.input.to_string(),
                        });
                    }
                    value /= Rational::from_integer(denom);
                }
                *coeff *= value;
                Ok(())
            }
            Some(var @ ('y' | 'u' | 'v')) => {
                self.pos += 1;
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                let slot = match var {
                    'y' => &mut exps.y,
                    'u' => &mut exps.u,
                    _ => &mut exps.v,
                };
                *slot += e;
                Ok(())
            }
            _ => Err(self.error()),
        }
    }

    fn term(&mut self) -> Result<(VarExponents, Rational), ParsePolyError> {
        let mut coeff = Rational::one();
        let mut exps = VarExponents::default();
        self.factor(&mut coeff, &mut exps)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut exps)?;
                }
                // implicit product such as `2y`
                Some(c) if c.is_ascii_digit() || matches!(c, 'y' | 'u' | 'v') => {
                    self.factor(&mut coeff, &mut exps)?;
                }
                _ => break,
            }
        }
        Ok((exps, coeff))
    }
}

/// Parses a sum of signed terms into `(exponents, coefficient)` pairs.
/// Repeated monomials are returned separately; callers combine them.
pub(crate) fn parse_terms(input: &str) -> Result<Vec<(VarExponents, Rational)>, ParsePolyError> {
    let mut cur = Cursor::new(input);
    if cur.peek().is_none() {
        return Err(ParsePolyError::Empty);
    }
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let sign = match cur.peek() {
            Some('+') => {
                cur.bump();
                1
            }
            Some('-') => {
                cur.bump();
                -1
            }
            None => break,
            _ if first => 1,
            _ => return Err(cur.error()),
        };
        first = false;
        let (exps, coeff) = cur.term()?;
        out.push((exps, if sign < 0 { -coeff } else { coeff }));
    }
    Ok(out)
}

/// Parses `a`, `-a`, or `a/b` as an exact rational.
pub fn parse_rational(input: &str) -> Result<Rational, ParsePolyError> {
    let terms = parse_terms(input)?;
    let mut acc = Rational::zero();
    for (exps, c) in terms {
        if exps != VarExponents::default() {
            return Err(ParsePolyError::UnexpectedVariable { input: input.to_string() });
        }
        acc += c;
    }
    Ok(acc)
}
