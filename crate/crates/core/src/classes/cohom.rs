use std::collections::BTreeMap;
use std::fmt::{self, Display};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, LocalizedElem, Rational, Ring};

/// `Q[y][(1+y)^-1][h_1, ..., h_k] / (h_i^{n_i + 1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CohomRing {
    truncations: Vec<u32>,
}

impl CohomRing {
    pub fn new(truncations: Vec<u32>) -> Self {
        CohomRing { truncations }
    }

    /// Cohomology of `P^n`: one generator `h` with `h^{n+1} = 0`.
    pub fn projective(n: u32) -> Self {
        CohomRing::new(vec![n])
    }

    pub fn product(&self, other: &CohomRing) -> CohomRing {
        CohomRing::new(self.truncations.iter().chain(&other.truncations).copied().collect())
    }

    pub fn truncations(&self) -> &[u32] {
        &self.truncations
    }

    pub fn num_generators(&self) -> usize {
        self.truncations.len()
    }

    /// Complex dimension of the ambient space, the degree of the top monomial.
    pub fn dim(&self) -> u32 {
        self.truncations.iter().sum()
    }

    pub fn top_monomial(&self) -> Vec<u32> {
        self.truncations.clone()
    }

    pub fn zero(&self) -> CohomClass {
        CohomClass { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> CohomClass {
        self.constant(LocalizedElem::one())
    }

    pub fn constant(&self, c: LocalizedElem) -> CohomClass {
        self.monomial(vec![0; self.num_generators()], c)
    }

    pub fn generator(&self, i: usize) -> CohomClass {
        let mut exp = vec![0; self.num_generators()];
        exp[i] = 1;
        self.monomial(exp, LocalizedElem::one())
    }

    /// `c * h^exp`, or zero if the monomial is truncated away.
    pub fn monomial(&self, exp: Vec<u32>, c: LocalizedElem) -> CohomClass {
        assert_eq!(exp.len(), self.num_generators(), "exponent vector has the wrong length");
        let mut out = self.zero();
        if self.survives(&exp) && !c.is_zero() {
            out.terms.insert(exp, c);
        }
        out
    }

    fn survives(&self, exp: &[u32]) -> bool {
        exp.iter().zip(&self.truncations).all(|(e, n)| e <= n)
    }

    fn generator_name(&self, i: usize) -> String {
        if self.num_generators() == 1 {
            "h".into()
        } else {
            format!("h{}", i + 1)
        }
    }
}

/// Element of a [`CohomRing`].
#[derive(Clone, PartialEq, Eq)]
pub struct CohomClass {
    ring: CohomRing,
    terms: BTreeMap<Vec<u32>, LocalizedElem>,
}

impl CohomClass {
    pub fn ring(&self) -> &CohomRing {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &LocalizedElem)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exp: &[u32]) -> LocalizedElem {
        self.terms.get(exp).cloned().unwrap_or_else(LocalizedElem::zero)
    }

    pub fn constant_term(&self) -> LocalizedElem {
        self.coeff(&vec![0; self.ring.num_generators()])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_ring(&self, other: &CohomClass) {
        assert_eq!(self.ring, other.ring, "classes live in different cohomology rings");
    }

    fn insert_add(&mut self, exp: Vec<u32>, c: LocalizedElem) {
        if !self.ring.survives(&exp) || c.is_zero() {
            return;
        }
        let next = match self.terms.get(&exp) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if next.is_zero() {
            self.terms.remove(&exp);
        } else {
            self.terms.insert(exp, next);
        }
    }

    /// Panics if the rings differ.
    pub fn add(&self, other: &CohomClass) -> CohomClass {
        self.check_ring(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> CohomClass {
        self.map_coeffs(|_, c| c.neg_ref())
    }

    pub fn sub(&self, other: &CohomClass) -> CohomClass {
        self.add(&other.neg())
    }

    /// Truncated product. Panics if the rings differ.
    pub fn mul(&self, other: &CohomClass) -> CohomClass {
        self.check_ring(other);
        let mut out = self.ring.zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                if self.ring.survives(&e) {
                    out.insert_add(e, c1.mul_ref(c2));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> CohomClass {
        (0..n).fold(self.ring.one(), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &LocalizedElem) -> CohomClass {
        self.map_coeffs(|_, x| x.mul_ref(c))
    }

    /// Applies `f(degree, coefficient)` to every term.
    pub fn map_coeffs(&self, f: impl Fn(u32, &LocalizedElem) -> LocalizedElem) -> CohomClass {
        let mut out = self.ring.zero();
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), f(e.iter().sum(), c));
        }
        out
    }

    /// `sum_m coeffs[m] * self^m`, evaluated by Horner's rule.
    pub fn compose_series(&self, coeffs: &[LocalizedElem]) -> CohomClass {
        coeffs
            .iter()
            .rev()
            .fold(self.ring.zero(), |acc, c| acc.mul(self).add(&self.ring.constant(c.clone())))
    }

    /// Inverse of `1 - x` for nilpotent `x`, when the constant term is 1.
    pub fn inverse_unipotent(&self) -> Option<CohomClass> {
        if !self.constant_term().is_one() {
            return None;
        }
        let x = self.ring.one().sub(self);
        let mut out = self.ring.one();
        let mut power = self.ring.one();
        for _ in 0..self.ring.dim() {
            power = power.mul(&x);
            out = out.add(&power);
        }
        Some(out)
    }

    /// Places this class into `target`, shifting generator indices by `offset`.
    pub fn embed(&self, target: &CohomRing, offset: usize) -> Result<CohomClass> {
        let k = self.ring.num_generators();
        if offset + k > target.num_generators()
            || self.ring.truncations() != &target.truncations()[offset..offset + k]
        {
            return Err(Error::BasisMismatch("embedding into a ring with different generators".into()));
        }
        let mut out = target.zero();
        for (e, c) in &self.terms {
            let mut full = vec![0; target.num_generators()];
            full[offset..offset + k].copy_from_slice(e);
            out.insert_add(full, c.clone());
        }
        Ok(out)
    }

    /// Substitutes a rational value for `y`; `None` at a pole.
    pub fn eval_y(&self, y: &Rational) -> Option<CohomClass> {
        let mut out = self.ring.zero();
        for (e, c) in &self.terms {
            out.insert_add(e.clone(), LocalizedElem::from(LaurentPoly::constant(c.eval(y)?)));
        }
        Some(out)
    }

    /// Builds a class from rational coefficients of powers of one element.
    pub fn from_rational_series(x: &CohomClass, coeffs: &[Rational]) -> CohomClass {
        let coeffs: Vec<LocalizedElem> =
            coeffs.iter().map(|c| LocalizedElem::from(LaurentPoly::constant(c.clone()))).collect();
        x.compose_series(&coeffs)
    }
}

impl Display for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse((*e).clone())));
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let monomial: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| {
                    let name = self.ring.generator_name(i);
                    if p == 1 {
                        name
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect();
            let simple = c.denominator_exponent() == 0 && c.numerator().num_terms() == 1;
            let coeff = if simple || monomial.is_empty() { c.to_string() } else { format!("({c})") };
            let term = match (monomial.is_empty(), c.is_one()) {
                (true, _) => coeff,
                (false, true) => monomial.join("*"),
                (false, false) if coeff == "-1" => format!("-{}", monomial.join("*")),
                (false, false) => format!("{coeff}*{}", monomial.join("*")),
            };
            if first {
                f.write_str(&term)?;
            } else if let Some(rest) = term.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {term}")?;
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for CohomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CohomClass({self})")
    }
}
