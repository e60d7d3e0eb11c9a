//! Characteristic classes: the Hirzebruch class `T_y` of a bundle given by
//! Chern roots, its two constructions, and push-forwards of `IT_y` classes
//! along stratified maps.

mod cohom;
mod graded;

pub use cohom::{CohomClass, CohomRing};
pub use graded::{classes_to_text, parse_classes, smooth_blowup_class, td_twist, GradedClass};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::genus::{assemble, corrections, FiberMode, StratifiedMapData};
use crate::ring::{qy_series, LaurentPoly, LocalizedElem, Rational, Ring};
use crate::strata::hat_recursion;

/// Formal Chern roots of a bundle `E`, possibly describing `E + O^e` for a
/// trivial excess `e` (as for `TP^n + O = O(1)^{n+1}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleRoots {
    pub roots: Vec<CohomClass>,
    pub trivial_excess: u32,
}

impl BundleRoots {
    pub fn new(roots: Vec<CohomClass>) -> Self {
        BundleRoots { roots, trivial_excess: 0 }
    }

    pub fn with_trivial_excess(mut self, e: u32) -> Self {
        self.trivial_excess = e;
        self
    }

    /// `TP^n` through the Euler sequence: `n + 1` roots `h`, excess one.
    pub fn projective_space(n: u32) -> (CohomRing, BundleRoots) {
        let ring = CohomRing::projective(n);
        let h = ring.generator(0);
        (ring, BundleRoots::new(vec![h; n as usize + 1]).with_trivial_excess(1))
    }

    /// Tangent bundle roots of `P^{n_1} x ... x P^{n_k}`.
    pub fn projective_product(dims: &[u32]) -> Result<(CohomRing, BundleRoots)> {
        let mut ring = CohomRing::new(Vec::new());
        let mut factors = Vec::new();
        for &n in dims {
            let f = BundleRoots::projective_space(n);
            ring = ring.product(&f.0);
            factors.push(f);
        }
        let mut roots = Vec::new();
        let mut excess = 0;
        for (i, (_, f)) in factors.iter().enumerate() {
            for r in &f.roots {
                roots.push(r.embed(&ring, i)?);
            }
            excess += f.trivial_excess;
        }
        Ok((ring, BundleRoots::new(roots).with_trivial_excess(excess)))
    }

    fn check(&self, ring: &CohomRing) -> Result<()> {
        for r in &self.roots {
            if r.ring() != ring {
                return Err(Error::BasisMismatch("Chern root lives in a different ring".into()));
            }
            if !r.constant_term().is_zero() {
                return Err(Error::RootConstantTerm(r.to_string()));
            }
        }
        Ok(())
    }
}

/// `T_y^*(E) = prod_i Q_y(alpha_i)`.
pub fn ty_class(b: &BundleRoots, ring: &CohomRing) -> Result<CohomClass> {
    b.check(ring)?;
    let q: Vec<LocalizedElem> = qy_series(ring.dim() as usize).coeffs().iter().cloned().map(LocalizedElem::from).collect();
    Ok(b.roots.iter().fold(ring.one(), |acc, a| acc.mul(&a.compose_series(&q))))
}

/// `sum_p ch(Lambda^p E^*) y^p * td(E)`, computed from exponentials and a
/// unipotent inverse, followed by the twist that divides cohomological
/// degree `j` by `(1+y)^{n-j}`.
pub fn lambda_class_route(b: &BundleRoots, ring: &CohomRing) -> Result<CohomClass> {
    b.check(ring)?;
    let n = ring.dim();
    let mut exp_neg = Vec::new();
    let mut todd_denominator = Vec::new();
    let mut factorial = BigInt::one();
    for m in 0..=n as i64 + 1 {
        if m > 0 {
            factorial *= BigInt::from(m);
        }
        let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        exp_neg.push(Rational::new(sign.clone(), factorial.clone()));
        if m > 0 {
            // (1 - e^{-a}) / a = sum_m (-1)^m a^m / (m+1)!
            todd_denominator.push(Rational::new(-sign, factorial.clone()));
        }
    }
    let y = ring.constant(LocalizedElem::from(LaurentPoly::y()));
    let mut total = ring.one();
    for a in &b.roots {
        let lambda = ring.one().add(&y.mul(&CohomClass::from_rational_series(a, &exp_neg)));
        let td = CohomClass::from_rational_series(a, &todd_denominator)
            .inverse_unipotent()
            .expect("(1 - e^-a)/a has constant term 1");
        total = total.mul(&lambda.mul(&td));
    }
    let e = b.trivial_excess;
    Ok(total.map_coeffs(|j, c| c.div_one_plus_y_pow(n - j + e)))
}

/// Coefficient of the top monomial, the degree of the zero-dimensional part
/// after capping with the fundamental class.
pub fn cap_and_degree(c: &CohomClass, n: u32) -> Result<LaurentPoly> {
    if c.ring().dim() != n {
        return Err(Error::InvalidParameter(format!(
            "ambient dimension {n} does not match the ring dimension {}",
            c.ring().dim()
        )));
    }
    let top = c.coeff(&c.ring().top_monomial());
    top.to_laurent().ok_or_else(|| Error::DenominatorSurvives(format!("the degree {top}")))
}

/// `T_y(P^n)` in the basis `[P^k]`.
pub fn ty_projective(n: u32) -> GradedClass {
    let (ring, roots) = BundleRoots::projective_space(n);
    let class = ty_class(&roots, &ring).expect("projective roots are valid");
    GradedClass::cap_fundamental(&class).expect("one generator")
}

fn pushforward_classes(
    m: &StratifiedMapData,
    classes: &BTreeMap<String, GradedClass>,
    mode: FiberMode,
) -> Result<GradedClass> {
    let c = corrections::<LaurentPoly>(m, mode)?;
    let poset = &c.data.poset;
    let lookup = |v: usize| {
        let id = poset.id(v);
        classes.get(id).cloned().ok_or_else(|| Error::MissingData { what: "stratum class", id: id.to_string() })
    };
    let top = lookup(poset.top())?;
    for v in 0..poset.len() {
        let class = lookup(v)?;
        if class.dim() != top.dim() {
            return Err(Error::BasisMismatch(format!(
                "class of `{}` is recorded in dimension {}, the target in {}",
                poset.id(v),
                class.dim(),
                top.dim()
            )));
        }
    }
    let hats = hat_recursion(poset, lookup, |w, v| c.data.link(w, v))?;
    Ok(assemble(&top, &hats, &c))
}

/// `f_* IT_y(X) = IT_y(Y) I chi_y(F) + sum_{V<S} hat IT_y(V) (I chi_y(f^-1 cone) - I chi_y(F) I chi_y(cone))`.
pub fn pushforward_ity(m: &StratifiedMapData, classes: &BTreeMap<String, GradedClass>) -> Result<GradedClass> {
    if !m.has_cone_preimages() && m.space.poset()?.top() > 0 {
        return Err(Error::MissingData { what: "cone preimage classes", id: m.space.name.clone() });
    }
    pushforward_classes(m, classes, FiberMode::ConePreimages)
}

/// `f_* T_y(X)` with fiber data over every stratum.
pub fn pushforward_ty(m: &StratifiedMapData, classes: &BTreeMap<String, GradedClass>) -> Result<GradedClass> {
    pushforward_classes(m, classes, FiberMode::Fibers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{alternating_geometric, rat, todd_coefficients};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn loc(s: &str) -> LocalizedElem {
        s.parse().unwrap()
    }

    #[test]
    fn projective_line_by_one_root() {
        let ring = CohomRing::projective(1);
        let two_h = ring.generator(0).scale(&loc("2"));
        let b = BundleRoots::new(vec![two_h]);
        let t = ty_class(&b, &ring).unwrap();
        assert_eq!(t.to_string(), "1 + (1 - y)*h");
        assert_eq!(lambda_class_route(&b, &ring).unwrap(), t);
        assert_eq!(cap_and_degree(&t, 1).unwrap(), lp("1 - y"));
    }

    #[test]
    fn empty_roots() {
        let ring = CohomRing::projective(3);
        let b = BundleRoots::new(Vec::new());
        assert_eq!(ty_class(&b, &ring).unwrap(), ring.one());
        // with no roots the twist leaves only (1+y)^-(n-j) on the unit
        let ring0 = CohomRing::new(Vec::new());
        assert_eq!(lambda_class_route(&b, &ring0).unwrap(), ring0.one());
        assert_eq!(cap_and_degree(&ring0.one(), 0).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn projective_plane() {
        let (ring, b) = BundleRoots::projective_space(2);
        let t = ty_class(&b, &ring).unwrap();
        assert_eq!(t.coeff(&[1]), loc("3/2 - 3/2*y"));
        assert_eq!(t.coeff(&[2]), loc("1 - y + y^2"));
        assert_eq!(lambda_class_route(&b, &ring).unwrap(), t);
    }

    #[test]
    fn degrees_of_projective_spaces() {
        for n in 1..=6 {
            let (ring, b) = BundleRoots::projective_space(n);
            let t = ty_class(&b, &ring).unwrap();
            assert_eq!(cap_and_degree(&t, n).unwrap(), alternating_geometric(n));
            assert_eq!(ty_projective(n).degree().unwrap(), alternating_geometric(n));
        }
    }

    #[test]
    fn products_agree_on_both_routes() {
        for dims in [[1, 1], [1, 2]] {
            let (ring, b) = BundleRoots::projective_product(&dims).unwrap();
            let t = ty_class(&b, &ring).unwrap();
            assert_eq!(lambda_class_route(&b, &ring).unwrap(), t);
            let expected = alternating_geometric(dims[0]) * alternating_geometric(dims[1]);
            assert_eq!(cap_and_degree(&t, ring.dim()).unwrap(), expected);
        }
    }

    #[test]
    fn root_with_constant_term() {
        let ring = CohomRing::projective(1);
        let b = BundleRoots::new(vec![ring.one()]);
        assert!(matches!(ty_class(&b, &ring), Err(Error::RootConstantTerm(_))));
        assert!(matches!(cap_and_degree(&ring.one(), 2), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn surviving_denominator_is_reported() {
        let ring = CohomRing::projective(1);
        let c = ring.generator(0).scale(&loc("(1)/(1 + y)"));
        assert!(matches!(cap_and_degree(&c, 1), Err(Error::DenominatorSurvives(_))));
    }

    #[test]
    fn specialization_at_zero_is_todd() {
        let (ring, b) = BundleRoots::projective_space(3);
        let t = ty_class(&b, &ring).unwrap().eval_y(&rat(0)).unwrap();
        let td = CohomClass::from_rational_series(&ring.generator(0), &todd_coefficients(3)).pow(4);
        assert_eq!(t, td);
    }

    #[test]
    fn twist() {
        let g = GradedClass::from_components(1, [(1, loc("1 + y")), (0, loc("1"))]).unwrap();
        let t = td_twist(&g);
        assert_eq!(t.component(1), loc("1"));
        assert_eq!(t.component(0), loc("1"));
        let g = ty_projective(3);
        assert_eq!(td_twist(&g).eval_y(&rat(0)), g.eval_y(&rat(0)));
    }

    #[test]
    fn blowup_class_of_plane() {
        let ty = ty_projective(2);
        let point = GradedClass::point(2);
        let b = smooth_blowup_class(&ty, &point, 1).unwrap();
        assert_eq!(b.degree().unwrap(), lp("1 - 2*y + y^2"));
        assert_eq!(smooth_blowup_class(&ty, &point, 0).unwrap(), ty);
        assert_eq!(b.eval_y(&rat(0)), ty.eval_y(&rat(0)));
        assert!(smooth_blowup_class(&ty, &GradedClass::point(3), 1).is_err());
    }

    #[test]
    fn classes_file_round_trip() {
        let mut classes = BTreeMap::new();
        classes.insert("S".to_string(), ty_projective(2));
        classes.insert("p".to_string(), GradedClass::point(2));
        let text = classes_to_text(&classes).unwrap();
        assert_eq!(parse_classes(&text).unwrap(), classes);
        assert!(parse_classes("[class S]\n0: 1\n").is_err());
        assert!(parse_classes("[classes]\ndim = 1\n[class S]\n2: 1\n").is_err());
    }

    #[test]
    fn display_of_classes() {
        let (ring, b) = BundleRoots::projective_product(&[1, 1]).unwrap();
        let t = ty_class(&b, &ring).unwrap();
        assert_eq!(t.to_string(), "1 + (1 - y)*h1 + (1 - y)*h2 + (1 - 2*y + y^2)*h1*h2");
        let g = ty_projective(1);
        assert_eq!(g.to_string(), "1: 1\n0: 1 - y\n");
        assert_eq!(ring.one().scale(&loc("-y")).add(&ring.generator(0).neg()).to_string(), "-y - h1");
    }
}
