use std::fmt::{self, Display};
use std::str::FromStr;

use super::parse::ParsePolyError;
use super::{LaurentPoly, Rational, Ring};

/// Element `num / (1 + y)^k` of `Q[y, y^-1, (1 + y)^-1]`.
///
/// Always reduced: either `k == 0` or `1 + y` does not divide `num`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalizedElem {
    num: LaurentPoly,
    k: u32,
}

impl LocalizedElem {
    pub fn new(num: LaurentPoly, k: u32) -> Self {
        let mut out = LocalizedElem { num, k };
        out.reduce();
        out
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    /// Exponent of `1 + y` in the denominator.
    pub fn denominator_exponent(&self) -> u32 {
        self.k
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.k = 0;
            return;
        }
        while self.k > 0 {
            match self.num.div_one_plus_y() {
                Some(q) => {
                    self.num = q;
                    self.k -= 1;
                }
                None => break,
            }
        }
    }

    /// The polynomial itself, if no denominator survives reduction.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        (self.k == 0).then(|| self.num.clone())
    }

    /// Multiplies by `(1 + y)^-j`.
    pub fn div_one_plus_y_pow(&self, j: u32) -> Self {
        Self::new(self.num.clone(), self.k + j)
    }

    /// Value at `y = value`; `None` at a pole.
    pub fn eval(&self, value: &Rational) -> Option<Rational> {
        let n = self.num.eval(value)?;
        if self.k == 0 {
            return Some(n);
        }
        let d = LaurentPoly::one_plus_y().pow(self.k).eval(value)?;
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(n / d)
    }
}

impl From<LaurentPoly> for LocalizedElem {
    fn from(num: LaurentPoly) -> Self {
        LocalizedElem { num, k: 0 }
    }
}

impl Ring for LocalizedElem {
    fn zero() -> Self {
        LaurentPoly::zero().into()
    }
    fn one() -> Self {
        LaurentPoly::one().into()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        let k = self.k.max(rhs.k);
        let lift = |e: &LocalizedElem| &e.num * &LaurentPoly::one_plus_y().pow(k - e.k);
        Self::new(lift(self) + lift(rhs), k)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, self.k + rhs.k)
    }
    fn neg_ref(&self) -> Self {
        LocalizedElem { num: -&self.num, k: self.k }
    }
}

super::forward_ring_ops!(LocalizedElem);

impl Display for LocalizedElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/(1 + y)", self.num),
            k => write!(f, "({})/(1 + y)^{k}", self.num),
        }
    }
}

/// Accepts `<poly>`, `(<poly>)/(1 + y)` and `(<poly>)/(1 + y)^k`.
impl FromStr for LocalizedElem {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ParsePolyError::Unexpected {
            input: s.to_string(),
            offset: 0,
            found: "malformed denominator".to_string(),
        };
        let Some((head, tail)) = compact.rsplit_once(")/(1+y)") else {
            return Ok(s.parse::<LaurentPoly>()?.into());
        };
        let num = head.strip_prefix('(').ok_or_else(bad)?;
        let k = match tail {
            "" => 1,
            t => t.strip_prefix('^').and_then(|e| e.parse::<u32>().ok()).ok_or_else(bad)?,
        };
        Ok(Self::new(num.parse()?, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(LocalizedElem::new(p("1 - y^2"), 1), LocalizedElem::from(p("1 - y")));
        assert_eq!(LocalizedElem::new(p("1 + 2*y + y^2"), 1), LocalizedElem::from(p("1 + y")));
        let sum = LocalizedElem::from(p("1")) + LocalizedElem::from(p("y"));
        assert_eq!(sum, LocalizedElem::from(p("1 + y")));
        assert_eq!(LocalizedElem::new(LaurentPoly::zero(), 3).denominator_exponent(), 0);
    }

    #[test]
    fn fractions_combine() {
        let half = LocalizedElem::new(p("1"), 1);
        let other = LocalizedElem::new(p("y"), 1);
        assert_eq!(half + other, LocalizedElem::one());
        let a = LocalizedElem::new(p("1 - y"), 2);
        assert_eq!(a.denominator_exponent(), 2);
        assert_eq!(&a * &LocalizedElem::from(p("1 + y")), LocalizedElem::new(p("1 - y"), 1));
    }

    #[test]
    fn text_round_trip() {
        for e in [
            LocalizedElem::new(p("1 - y"), 2),
            LocalizedElem::new(p("3/2*y^-1"), 1),
            LocalizedElem::from(p("1 - 2*y + y^2")),
        ] {
            assert_eq!(e.to_string().parse::<LocalizedElem>().unwrap(), e);
        }
        assert_eq!(LocalizedElem::new(p("1 - y"), 2).to_string(), "(1 - y)/(1 + y)^2");
        assert!("(1 - y)/(1 + y)^x".parse::<LocalizedElem>().is_err());
    }

    #[test]
    fn evaluation_at_pole() {
        let a = LocalizedElem::new(p("1"), 1);
        assert_eq!(a.eval(&crate::ring::rat(-1)), None);
        assert_eq!(a.eval(&crate::ring::rat(1)), Some(crate::ring::ratio(1, 2)));
    }
}
