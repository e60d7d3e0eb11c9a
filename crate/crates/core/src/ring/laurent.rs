use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::{parse_terms, ParsePolyError, VarExponents};
use super::{rat, Rational, Ring};

/// Exponent data of a Laurent monomial.
pub trait Monomial: Copy + Ord + Debug {
    /// Exponent of the constant monomial.
    fn unit() -> Self;
    /// Exponent of a product.
    fn combine(self, other: Self) -> Self;
    /// Order in which terms are printed; `Less` prints first.
    fn print_order(a: &Self, b: &Self) -> Ordering;
    /// Writes the monomial without coefficient. Never called on `unit()`.
    fn write_monomial(&self, out: &mut String);
    fn from_exponents(e: &VarExponents) -> Option<Self>;
}

/// Exponent of `y`.
impl Monomial for i64 {
    fn unit() -> Self {
        0
    }
    fn combine(self, other: Self) -> Self {
        self + other
    }
    fn print_order(a: &Self, b: &Self) -> Ordering {
        a.cmp(b)
    }
    fn write_monomial(&self, out: &mut String) {
        write_power(out, 'y', *self);
    }
    fn from_exponents(e: &VarExponents) -> Option<Self> {
        (e.u == 0 && e.v == 0).then_some(e.y)
    }
}

/// Exponents of `(u, v)`.
impl Monomial for (i64, i64) {
    fn unit() -> Self {
        (0, 0)
    }
    fn combine(self, other: Self) -> Self {
        (self.0 + other.0, self.1 + other.1)
    }
    fn print_order(a: &Self, b: &Self) -> Ordering {
        // descending total degree, then descending u-exponent
        (b.0 + b.1).cmp(&(a.0 + a.1)).then(b.0.cmp(&a.0))
    }
    fn write_monomial(&self, out: &mut String) {
        let mut first = true;
        for (var, exp) in [('u', self.0), ('v', self.1)] {
            if exp == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            write_power(out, var, exp);
            first = false;
        }
    }
    fn from_exponents(e: &VarExponents) -> Option<Self> {
        (e.y == 0).then_some((e.u, e.v))
    }
}

fn write_power(out: &mut String, var: char, exp: i64) {
    out.push(var);
    if exp != 1 {
        out.push('^');
        out.push_str(&exp.to_string());
    }
}

/// Sparse Laurent polynomial with rational coefficients.
///
/// Zero coefficients are never stored, so two polynomials are equal exactly
/// when their term maps are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent<M: Monomial> {
    terms: BTreeMap<M, Rational>,
}

/// Laurent polynomial in `y`.
pub type LaurentPoly = Laurent<i64>;
/// Laurent polynomial in `(u, v)`.
pub type BiLaurentPoly = Laurent<(i64, i64)>;

impl<M: Monomial> Laurent<M> {
    pub fn from_terms<I: IntoIterator<Item = (M, Rational)>>(terms: I) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            add_term(&mut out, m, c);
        }
        Laurent { terms: out }
    }

    pub fn monomial(coeff: Rational, exp: M) -> Self {
        Self::from_terms([(exp, coeff)])
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, M::unit())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: M) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(M::unit())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul_ref(self))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn coefficient_sum(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |a, c| a + c)
    }
}

fn add_term<M: Monomial>(map: &mut BTreeMap<M, Rational>, m: M, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(existing) => {
            *existing += c;
            if existing.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

impl<M: Monomial> Ring for Laurent<M> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            add_term(&mut terms, *m, c.clone());
        }
        Laurent { terms }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                add_term(&mut terms, ma.combine(*mb), ca * cb);
            }
        }
        Laurent { terms }
    }
    fn neg_ref(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

super::forward_ring_ops!(LaurentPoly);
super::forward_ring_ops!(BiLaurentPoly);

impl LaurentPoly {
    /// The variable `y`.
    pub fn y() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `1 + y`.
    pub fn one_plus_y() -> Self {
        Self::one() + Self::y()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Evaluates at `y = value`. `None` when `value` is zero and a negative
    /// power of `y` is present.
    pub fn eval(&self, value: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            if value.is_zero() {
                match e.cmp(&0) {
                    Ordering::Less => return None,
                    Ordering::Equal => acc += c,
                    Ordering::Greater => {}
                }
                continue;
            }
            acc += c * pow_rational(value, *e);
        }
        Some(acc)
    }

    /// Exact quotient by `1 + y`, or `None` if `1 + y` does not divide.
    pub fn div_one_plus_y(&self) -> Option<Self> {
        let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(Self::zero()),
        };
        // self = y^lo * q(y), deg q = hi - lo; synthetic division of q by (y + 1)
        let degree = (hi - lo) as usize;
        let dense: Vec<Rational> = (0..=degree).map(|i| self.coeff(lo + i as i64)).collect();
        if degree == 0 {
            return None;
        }
        let mut quotient = vec![Rational::zero(); degree];
        let mut carry = dense[degree].clone();
        quotient[degree - 1] = carry.clone();
        for i in (1..degree).rev() {
            carry = &dense[i] - &carry;
            quotient[i - 1] = carry.clone();
        }
        let remainder = &dense[0] - &carry;
        if !remainder.is_zero() {
            return None;
        }
        Some(Self::from_terms(
            quotient.into_iter().enumerate().map(|(i, c)| (lo + i as i64, c)),
        ))
    }

    /// Multiplies by `y^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }
}

impl BiLaurentPoly {
    pub fn u() -> Self {
        Self::monomial(Rational::one(), (1, 0))
    }

    pub fn v() -> Self {
        Self::monomial(Rational::one(), (0, 1))
    }

    /// `uv`.
    pub fn uv() -> Self {
        Self::monomial(Rational::one(), (1, 1))
    }

    /// Substitutes `u = -y`, `v = 1`.
    pub fn specialize_uv(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(&(i, _), c)| {
            let c = if i.rem_euclid(2) == 1 { -c } else { c.clone() };
            (i, c)
        }))
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&(i, j), c) in &self.terms {
            let pu = pow_or_none(u, i)?;
            let pv = pow_or_none(v, j)?;
            acc += c * pu * pv;
        }
        Some(acc)
    }
}

fn pow_or_none(x: &Rational, e: i64) -> Option<Rational> {
    if x.is_zero() {
        return match e.cmp(&0) {
            Ordering::Less => None,
            Ordering::Equal => Some(Rational::one()),
            Ordering::Greater => Some(Rational::zero()),
        };
    }
    Some(pow_rational(x, e))
}

fn pow_rational(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl<M: Monomial> Display for Laurent<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&M, &Rational)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| M::print_order(a.0, b.0));
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let magnitude = c.abs();
            if *m == M::unit() {
                out.push_str(&fmt_rational(&magnitude));
            } else {
                if !magnitude.is_one() {
                    out.push_str(&fmt_rational(&magnitude));
                    out.push('*');
                }
                m.write_monomial(&mut out);
            }
        }
        f.write_str(&out)
    }
}

impl<M: Monomial> Debug for Laurent<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

impl<M: Monomial> FromStr for Laurent<M> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = BTreeMap::new();
        for (exps, c) in parse_terms(s)? {
            let m = M::from_exponents(&exps).ok_or_else(|| ParsePolyError::UnexpectedVariable {
                input: s.to_string(),
            })?;
            add_term(&mut out, m, c);
        }
        Ok(Laurent { terms: out })
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(Rational::from_integer(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ratio;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn b(s: &str) -> BiLaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn worked_arithmetic() {
        assert_eq!(p("1 - y") + p("1 - y"), p("2 - 2*y"));
        assert_eq!(b("1 + u*v") * BiLaurentPoly::one(), b("1 + u*v"));
        assert_eq!(p("1 - y") * p("1 + y"), p("1 - y^2"));
        assert!((p("y + 1") - p("1 + y")).is_zero());
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(b("1 + u*v").specialize_uv(), p("1 - y"));
        assert_eq!(BiLaurentPoly::one().specialize_uv(), LaurentPoly::one());
        assert_eq!(b("u^2*v^2 + u*v + 1").specialize_uv(), p("y^2 - y + 1"));
        assert_eq!(b("u + v").specialize_uv(), p("1 - y"));
    }

    #[test]
    fn canonical_printing() {
        assert_eq!(p("y^2 - 2*y + 1").to_string(), "1 - 2*y + y^2");
        assert_eq!(p("3/2*y^-1").to_string(), "3/2*y^-1");
        assert_eq!(p("-y").to_string(), "-y");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("y - y").to_string(), "0");
        assert_eq!(b("1 + u*v + u^2*v^2").to_string(), "u^2*v^2 + u*v + 1");
        assert_eq!(b("v + u - 1").to_string(), "u + v - 1");
        assert_eq!(p("-1/2 + y").to_string(), "-1/2 + y");
    }

    #[test]
    fn parse_rejects_wrong_variables() {
        assert!("1 + u".parse::<LaurentPoly>().is_err());
        assert!("1 + y".parse::<BiLaurentPoly>().is_err());
        assert!("1 + ".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn division_by_one_plus_y() {
        assert_eq!(p("1 - y^2").div_one_plus_y(), Some(p("1 - y")));
        assert_eq!(p("1 + 2*y + y^2").div_one_plus_y(), Some(p("1 + y")));
        assert_eq!(p("y^-1 + 1").div_one_plus_y(), Some(p("y^-1")));
        assert_eq!(p("1 - y").div_one_plus_y(), None);
        assert_eq!(p("3").div_one_plus_y(), None);
        assert_eq!(LaurentPoly::zero().div_one_plus_y(), Some(LaurentPoly::zero()));
    }

    #[test]
    fn evaluation() {
        assert_eq!(p("1 - 2*y + y^2").eval(&rat(1)), Some(rat(0)));
        assert_eq!(p("y^-1 + 1").eval(&rat(2)), Some(ratio(3, 2)));
        assert_eq!(p("y^-1 + 1").eval(&rat(0)), None);
        assert_eq!(b("u*v + 1").eval(&rat(2), &rat(3)), Some(rat(7)));
    }
}
