use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{LaurentPoly, Rational};

/// Truncated power series `sum_{m=0}^{N} c_m(y) alpha^m` with coefficients
/// in `Q[y, y^-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<LaurentPoly>,
}

impl PowerSeries {
    /// `coeffs` must be non-empty; its length is `order + 1`.
    pub fn new(coeffs: Vec<LaurentPoly>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series has at least one coefficient");
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, m: usize) -> &LaurentPoly {
        &self.coeffs[m]
    }

    /// Coefficients after substituting a value for `y`.
    pub fn eval_y(&self, y: &Rational) -> Option<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval(y)).collect()
    }
}

/// First `n + 1` coefficients of `x / (1 - e^{-x})`, obtained by inverting
/// `(1 - e^{-x}) / x = sum_m (-1)^m x^m / (m + 1)!`.
pub fn todd_coefficients(n: usize) -> Vec<Rational> {
    let mut factorial = BigInt::one();
    let mut g = Vec::with_capacity(n + 1);
    for m in 0..=n {
        factorial *= BigInt::from(m + 1);
        let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        g.push(Rational::new(sign, factorial.clone()));
    }
    let mut inv: Vec<Rational> = Vec::with_capacity(n + 1);
    inv.push(Rational::one());
    for m in 1..=n {
        let s = (1..=m).fold(Rational::zero(), |acc, i| acc + &g[i] * &inv[m - i]);
        inv.push(-s);
    }
    inv
}

/// `Q_y(alpha) = alpha(1+y) / (1 - e^{-alpha(1+y)}) - alpha y` truncated at
/// `alpha^n`.
pub fn qy_series(n: usize) -> PowerSeries {
    let one_plus_y = LaurentPoly::one_plus_y();
    let coeffs = todd_coefficients(n)
        .into_iter()
        .enumerate()
        .map(|(m, b)| {
            let c = one_plus_y.pow(m as u32).scale(&b);
            if m == 1 {
                c - LaurentPoly::y()
            } else {
                c
            }
        })
        .collect();
    PowerSeries::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::ring::{rat, ratio};

    #[test]
    fn first_coefficients() {
        let q = qy_series(1);
        assert_eq!(q.order(), 1);
        assert_eq!(q.coeff(0), &LaurentPoly::one());
        assert_eq!(q.coeff(1), &"1/2 - 1/2*y".parse::<LaurentPoly>().unwrap());
        assert_eq!(qy_series(0).coeffs(), &[LaurentPoly::one()]);
    }

    #[test]
    fn todd_numbers() {
        assert_eq!(
            todd_coefficients(6),
            vec![rat(1), ratio(1, 2), ratio(1, 12), rat(0), ratio(-1, 720), rat(0), ratio(1, 30240)]
        );
    }

    #[test]
    fn chern_specialization() {
        let at = qy_series(6).eval_y(&rat(-1)).unwrap();
        assert_eq!(at, vec![rat(1), rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)]);
    }
}
