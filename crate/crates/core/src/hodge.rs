//! Classes of graded-polarizable mixed Hodge structures, recorded through
//! their Hodge numbers.
//!
//! A [`HodgeClass`] stores, for every bigrade `(p, q)`, the (virtual)
//! dimension of `gr^p_F gr^W_{p+q}`. The weight is implicit in `p + q`.
//! Tensor product convolves bigrades, and both [`HodgeClass::e_poly`] and
//! [`HodgeClass::chi_y`] are ring homomorphisms out of this ring.

use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{BiLaurentPoly, LaurentPoly, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HodgeClass {
    bigrades: BTreeMap<(i64, i64), BigInt>,
}

impl HodgeClass {
    pub fn from_entries<I, T>(entries: I) -> Self
    where
        I: IntoIterator<Item = ((i64, i64), T)>,
        T: Into<BigInt>,
    {
        let mut out = HodgeClass::default();
        for (pq, m) in entries {
            out.add_entry(pq, m.into());
        }
        out
    }

    fn add_entry(&mut self, pq: (i64, i64), m: BigInt) {
        if m.is_zero() {
            return;
        }
        let slot = self.bigrades.entry(pq).or_insert_with(BigInt::zero);
        *slot += m;
        if slot.is_zero() {
            self.bigrades.remove(&pq);
        }
    }

    /// The pure Tate structure of type `(p, p)`.
    pub fn tate(p: i64) -> Self {
        Self::from_entries([((p, p), 1)])
    }

    /// Cohomology of complex projective `n`-space: `(p, p)` for `p = 0..=n`.
    pub fn projective_space(n: u32) -> Self {
        Self::from_entries((0..=n as i64).map(|p| ((p, p), 1)))
    }

    pub fn multiplicity(&self, p: i64, q: i64) -> BigInt {
        self.bigrades.get(&(p, q)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.bigrades.iter()
    }

    /// Virtual dimension, the value at `y = -1` of the `chi_y` image.
    pub fn dimension(&self) -> BigInt {
        self.bigrades.values().sum()
    }

    /// `sum mult * u^p v^q`.
    pub fn e_poly(&self) -> BiLaurentPoly {
        BiLaurentPoly::from_terms(
            self.bigrades.iter().map(|(&pq, m)| (pq, Rational::from_integer(m.clone()))),
        )
    }

    /// `sum_p (sum_q mult(p, q)) (-y)^p`.
    pub fn chi_y(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.bigrades.iter().map(|(&(p, _), m)| {
            let m = if p.rem_euclid(2) == 1 { -m } else { m.clone() };
            (p, Rational::from_integer(m))
        }))
    }

    pub fn tensor(&self, other: &Self) -> Self {
        self.mul_ref(other)
    }
}

impl Ring for HodgeClass {
    fn zero() -> Self {
        HodgeClass::default()
    }
    fn one() -> Self {
        Self::tate(0)
    }
    fn is_zero(&self) -> bool {
        self.bigrades.is_empty()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&pq, m) in &rhs.bigrades {
            out.add_entry(pq, m.clone());
        }
        out
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = HodgeClass::default();
        for (&(p1, q1), a) in &self.bigrades {
            for (&(p2, q2), b) in &rhs.bigrades {
                out.add_entry((p1 + p2, q1 + q2), a * b);
            }
        }
        out
    }
    fn neg_ref(&self) -> Self {
        HodgeClass {
            bigrades: self.bigrades.iter().map(|(&pq, m)| (pq, -m)).collect(),
        }
    }
}

crate::ring::forward_ring_ops!(HodgeClass);
crate::ring::ring_is_module!(HodgeClass);

impl Display for HodgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bigrades.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.bigrades.iter().map(|(&(p, q), m)| format!("{p},{q}:{m}")).collect();
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for HodgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HodgeClass({self})")
    }
}

/// Syntax: `p,q:mult; p,q:mult; ...`, or `0` for the zero class.
impl FromStr for HodgeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Syntax { line: 0, message: format!("{msg} in Hodge class `{s}`") };
        let mut out = HodgeClass::default();
        if s.trim() == "0" {
            return Ok(out);
        }
        let mut seen_any = false;
        for entry in s.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (pq, m) = entry.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let (p, q) = pq.split_once(',').ok_or_else(|| bad("missing `,`"))?;
            let p: i64 = p.trim().parse().map_err(|_| bad("bad p"))?;
            let q: i64 = q.trim().parse().map_err(|_| bad("bad q"))?;
            let m: BigInt = m.trim().parse().map_err(|_| bad("bad multiplicity"))?;
            out.add_entry((p, q), m);
            seen_any = true;
        }
        if !seen_any {
            return Err(bad("no entries"));
        }
        Ok(out)
    }
}

/// Hodge diamond helper used by tests and builders: `h^{p,q}` entries of a
/// pure structure placed with sign `(-1)^k` for cohomological degree `k`.
pub fn from_cohomology<I>(groups: I) -> HodgeClass
where
    I: IntoIterator<Item = (u32, (i64, i64), i64)>,
{
    HodgeClass::from_entries(groups.into_iter().map(|(k, pq, dim)| {
        let sign = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        (pq, sign * BigInt::from(dim))
    }))
}
