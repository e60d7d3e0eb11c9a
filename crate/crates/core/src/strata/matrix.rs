use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ring::Ring;

use super::Poset;

/// Matrix over a commutative ring indexed by a finite poset, with unit
/// diagonal and entries only at `W < V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniTriMatrix<R: Ring> {
    poset: Poset,
    entries: BTreeMap<(usize, usize), R>,
}

impl<R: Ring> UniTriMatrix<R> {
    pub fn identity(poset: Poset) -> Self {
        UniTriMatrix { poset, entries: BTreeMap::new() }
    }

    /// Sets the entry at `(lower, upper)`; the pair must satisfy
    /// `lower < upper`.
    pub fn set(&mut self, lower: usize, upper: usize, value: R) -> Result<()> {
        if !self.poset.lt(lower, upper) {
            return Err(Error::InvalidParameter(format!(
                "entry ({}, {}) is not above the diagonal of the order",
                self.poset.id(lower),
                self.poset.id(upper)
            )));
        }
        if value.is_zero() {
            self.entries.remove(&(lower, upper));
        } else {
            self.entries.insert((lower, upper), value);
        }
        Ok(())
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn size(&self) -> usize {
        self.poset.len()
    }

    pub fn get(&self, row: usize, col: usize) -> R {
        if row == col {
            return R::one();
        }
        self.entries.get(&(row, col)).cloned().unwrap_or_else(R::zero)
    }

    /// Inverse by the recursion `a'_{V,V} = 1`,
    /// `a'_{W,V} = -sum_{W <= T < V} a'_{W,T} a_{T,V}`.
    pub fn invert(&self) -> Self {
        let n = self.size();
        let mut inv = Self::identity(self.poset.clone());
        for v in 0..n {
            for w in self.poset.below(v).collect::<Vec<_>>() {
                let mut acc = R::zero();
                for t in (w..v).filter(|&t| self.poset.le(w, t) && self.poset.lt(t, v)) {
                    acc = acc.add_ref(&inv.get(w, t).mul_ref(&self.get(t, v)));
                }
                let value = acc.neg_ref();
                if !value.is_zero() {
                    inv.entries.insert((w, v), value);
                }
            }
        }
        inv
    }

    /// Matrix product; both factors must share the same poset.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.poset != rhs.poset {
            return Err(Error::BasisMismatch("matrices over different posets".into()));
        }
        let n = self.size();
        let mut out = Self::identity(self.poset.clone());
        for w in 0..n {
            for v in self.poset.at_or_above(w) {
                if v == w {
                    continue;
                }
                let mut acc = R::zero();
                for t in (w..=v).filter(|&t| self.poset.le(w, t) && self.poset.le(t, v)) {
                    acc = acc.add_ref(&self.get(w, t).mul_ref(&rhs.get(t, v)));
                }
                if !acc.is_zero() {
                    out.entries.insert((w, v), acc);
                }
            }
        }
        // the diagonal of a product of unitriangular matrices is 1
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_empty()
    }

    /// Column `v` as `(row, entry)` pairs over `W <= V`, diagonal included.
    pub fn column(&self, v: usize) -> Vec<(usize, R)> {
        (0..=v).filter(|&w| self.poset.le(w, v)).map(|w| (w, self.get(w, v))).filter(|(_, r)| !r.is_zero()).collect()
    }
}

impl Poset {
    /// Strata `V` with `w <= V`.
    pub(crate) fn at_or_above(&self, w: usize) -> Vec<usize> {
        (w..self.len()).filter(|&v| self.le(w, v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::HodgeClass;
    use crate::ring::LaurentPoly;

    fn chain(n: usize) -> Poset {
        let lt = (0..n).map(|i| (0..n).map(|j| i < j).collect()).collect();
        Poset::from_relation((0..n).map(|i| format!("s{i}")).collect(), lt)
    }

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn two_by_two() {
        let mut a = UniTriMatrix::identity(chain(2));
        a.set(0, 1, lp("3 - y")).unwrap();
        let inv = a.invert();
        assert_eq!(inv.get(0, 1), lp("-3 + y"));
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn identity_inverts_to_identity() {
        let a: UniTriMatrix<HodgeClass> = UniTriMatrix::identity(chain(4));
        assert!(a.invert().is_identity());
    }

    #[test]
    fn three_chain_symbolic() {
        // x = 2 + y, z = y^-1, w = 5y
        let (x, z, w) = (lp("2 + y"), lp("y^-1"), lp("5*y"));
        let mut a = UniTriMatrix::identity(chain(3));
        a.set(0, 1, x.clone()).unwrap();
        a.set(1, 2, z.clone()).unwrap();
        a.set(0, 2, w.clone()).unwrap();
        let inv = a.invert();
        assert_eq!(inv.get(0, 2), &x * &z - w);
        assert_eq!(inv.get(0, 1), -x);
        assert_eq!(inv.get(1, 2), -z);
    }

    #[test]
    fn entries_only_above_order() {
        let lt = vec![vec![false, false], vec![false, false]];
        let antichain = Poset::from_relation(vec!["a".into(), "b".into()], lt);
        let mut a = UniTriMatrix::identity(antichain);
        assert!(a.set(0, 1, lp("1")).is_err());
        assert!(a.set(1, 0, lp("1")).is_err());
    }
}
