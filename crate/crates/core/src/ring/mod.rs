//! Exact coefficient rings.
//!
//! Everything here is exact: coefficients are arbitrary-precision
//! rationals and every value is kept in a canonical form so that `==` is
//! structural equality.

mod laurent;
mod localized;
mod parse;
mod series;

pub use laurent::{BiLaurentPoly, Laurent, LaurentPoly, Monomial};
pub use localized::LocalizedElem;
pub use parse::{parse_rational, ParsePolyError};
pub use series::{qy_series, todd_coefficients, PowerSeries};

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary precision rational number.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A commutative ring with unit whose values are in canonical form.
pub trait Ring: Clone + PartialEq + Eq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// A module over the ring `R`: finite formal combinations that can be
/// added and scaled.
pub trait Module<R: Ring>: Clone + PartialEq + Debug {
    fn null() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn scale(&self, by: &R) -> Self;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.scale(&R::one().neg_ref()))
    }
}

macro_rules! ring_is_module {
    ($t:ty) => {
        impl $crate::ring::Module<$t> for $t {
            fn null() -> Self {
                <$t as $crate::ring::Ring>::zero()
            }
            fn plus(&self, rhs: &Self) -> Self {
                <$t as $crate::ring::Ring>::add_ref(self, rhs)
            }
            fn scale(&self, by: &$t) -> Self {
                <$t as $crate::ring::Ring>::mul_ref(self, by)
            }
        }
    };
}

/// Implements the `std::ops` arithmetic traits on top of [`Ring`].
macro_rules! forward_ring_ops {
    ($t:ty) => {
        impl ::std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                $crate::ring::Ring::add_ref(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Add<&'a $t> for &'a $t {
            type Output = $t;
            fn add(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::add_ref(self, rhs)
            }
        }
        impl ::std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                $crate::ring::Ring::sub_ref(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Sub<&'a $t> for &'a $t {
            type Output = $t;
            fn sub(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::sub_ref(self, rhs)
            }
        }
        impl ::std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                $crate::ring::Ring::mul_ref(&self, &rhs)
            }
        }
        impl<'a> ::std::ops::Mul<&'a $t> for &'a $t {
            type Output = $t;
            fn mul(self, rhs: &'a $t) -> $t {
                $crate::ring::Ring::mul_ref(self, rhs)
            }
        }
        impl ::std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg_ref(&self)
            }
        }
        impl<'a> ::std::ops::Neg for &'a $t {
            type Output = $t;
            fn neg(self) -> $t {
                $crate::ring::Ring::neg_ref(self)
            }
        }
    };
}

pub(crate) use forward_ring_ops;
pub(crate) use ring_is_module;

ring_is_module!(LaurentPoly);
ring_is_module!(BiLaurentPoly);
ring_is_module!(LocalizedElem);

/// `sum_{i=1}^{r} (-y)^i`, the correction factor of a smooth blow-up with
/// fiber the projective `r`-space.
pub fn blowup_factor(r: u32) -> LaurentPoly {
    (1..=r as i64).fold(<LaurentPoly as Ring>::zero(), |acc, i| {
        acc + LaurentPoly::monomial(rat(if i % 2 == 0 { 1 } else { -1 }), i)
    })
}

/// `sum_{p=0}^{n} (-y)^p`.
pub fn alternating_geometric(n: u32) -> LaurentPoly {
    LaurentPoly::one() + blowup_factor(n)
}
