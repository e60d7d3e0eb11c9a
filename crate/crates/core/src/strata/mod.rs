//! Stratified spaces, the inductive correction terms attached to their
//! strata, and the identification of coefficients on the basis of
//! intersection-complex classes.
//!
//! Link-cone classes are input data. At the level of bigrade tables the
//! stalk matrix is always unitriangular, so [`decompose`] solves for any
//! stalk assignment; whether the result describes an actual mixed Hodge
//! module is a property of the input that cannot be read off the numbers.

mod format;
mod matrix;
mod space;

pub use format::{parse_stalks, stalks_to_text};
pub(crate) use format::{parse_datum, write_datum};
pub use matrix::UniTriMatrix;
pub use space::{Datum, Diagnostic, Level, Poset, Severity, StratifiedSpace, Stratum};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hodge::HodgeClass;
use crate::ring::{BiLaurentPoly, LaurentPoly, Module, Ring};

/// A ring that input data can be read in: the Hodge ring itself, or one of
/// its images under `E` and `chi_y`.
pub trait Coefficient: Ring + Module<Self> {
    const NAME: &'static str;
    fn project(d: &Datum) -> Result<Self>;
}

impl Coefficient for LaurentPoly {
    const NAME: &'static str = "chi_y";
    fn project(d: &Datum) -> Result<Self> {
        Ok(d.chi_y())
    }
}

impl Coefficient for BiLaurentPoly {
    const NAME: &'static str = "E-polynomial";
    fn project(d: &Datum) -> Result<Self> {
        match d {
            Datum::Hodge(h) => Ok(h.e_poly()),
            Datum::Chi(_) => Err(Error::HodgeDataRequired(Self::NAME)),
        }
    }
}

impl Coefficient for HodgeClass {
    const NAME: &'static str = "Hodge class";
    fn project(d: &Datum) -> Result<Self> {
        match d {
            Datum::Hodge(h) => Ok(h.clone()),
            Datum::Chi(_) => Err(Error::HodgeDataRequired(Self::NAME)),
        }
    }
}

/// Element of the free module on the basis `{[IC'_{closure(V)}]}`, keyed by
/// stratum id. Zero coefficients are omitted.
#[derive(Clone, PartialEq, Eq)]
pub struct KModuleElement<R: Ring = HodgeClass> {
    coeffs: BTreeMap<String, R>,
}

impl<R: Ring> KModuleElement<R> {
    pub fn basis(id: &str) -> Self {
        Self::from_coeffs([(id.to_string(), R::one())])
    }

    pub fn from_coeffs<I: IntoIterator<Item = (String, R)>>(coeffs: I) -> Self {
        let mut out = KModuleElement { coeffs: BTreeMap::new() };
        for (id, c) in coeffs {
            out.add_at(&id, &c);
        }
        out
    }

    fn add_at(&mut self, id: &str, c: &R) {
        let next = match self.coeffs.get(id) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.coeffs.remove(id);
        } else {
            self.coeffs.insert(id.to_string(), next);
        }
    }

    pub fn coeff(&self, id: &str) -> R {
        self.coeffs.get(id).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&str, &R)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.coeffs.keys().map(String::as_str)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> KModuleElement<S> {
        KModuleElement::from_coeffs(self.coeffs.iter().map(|(k, v)| (k.clone(), f(v))))
    }
}

impl<R: Ring> Module<R> for KModuleElement<R> {
    fn null() -> Self {
        KModuleElement { coeffs: BTreeMap::new() }
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in &rhs.coeffs {
            out.add_at(id, c);
        }
        out
    }
    fn scale(&self, by: &R) -> Self {
        KModuleElement::from_coeffs(self.coeffs.iter().map(|(k, v)| (k.clone(), v.mul_ref(by))))
    }
}

impl<R: Ring> std::fmt::Debug for KModuleElement<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

/// Read-only access to closure and link data in a chosen coefficient ring.
pub(crate) struct Data<'a, R> {
    pub space: &'a StratifiedSpace,
    pub poset: Poset,
    _ring: std::marker::PhantomData<R>,
}

impl<'a, R: Coefficient> Data<'a, R> {
    pub fn new(space: &'a StratifiedSpace) -> Result<Self> {
        let poset = space.poset()?;
        Ok(Data { space, poset, _ring: std::marker::PhantomData })
    }

    pub fn closure(&self, v: usize) -> Result<R> {
        let id = self.poset.id(v);
        let d = self.space.closure(id).ok_or_else(|| Error::MissingData { what: "closure data", id: id.into() })?;
        R::project(d)
    }

    /// `link_cone(W, V)` for `W < V`, the unit for `W = V`, zero otherwise.
    pub fn link(&self, w: usize, v: usize) -> Result<R> {
        if w == v {
            return Ok(R::one());
        }
        if !self.poset.lt(w, v) {
            return Ok(R::zero());
        }
        let (a, b) = (self.poset.id(w), self.poset.id(v));
        let d = self
            .space
            .link(a, b)
            .ok_or_else(|| Error::MissingData { what: "link data", id: format!("{a} < {b}") })?;
        R::project(d)
    }

    /// The stalk matrix `a_{W,V}` over every stratum except the top one.
    pub fn lower_matrix(&self) -> Result<UniTriMatrix<R>> {
        let top = self.poset.top();
        let ids: Vec<String> = self.poset.ids()[..top].to_vec();
        let lt = (0..top).map(|i| (0..top).map(|j| self.poset.lt(i, j)).collect()).collect();
        let mut m = UniTriMatrix::identity(Poset::from_relation(ids, lt));
        for v in 0..top {
            for w in self.poset.below(v) {
                m.set(w, v, self.link(w, v)?)?;
            }
        }
        Ok(m)
    }
}

/// The recursion `hat(V) = value(V) - sum_{W < V} hat(W) * link(W, V)`
/// over all non-top strata, in topological order.
pub(crate) fn hat_recursion<R, M>(
    poset: &Poset,
    mut value: impl FnMut(usize) -> Result<M>,
    mut link: impl FnMut(usize, usize) -> Result<R>,
) -> Result<Vec<M>>
where
    R: Ring,
    M: Module<R>,
{
    let mut hats: Vec<M> = Vec::with_capacity(poset.top());
    for v in poset.lower_strata() {
        let mut acc = value(v)?;
        for w in poset.below(v) {
            acc = acc.minus(&hats[w].scale(&link(w, v)?));
        }
        hats.push(acc);
    }
    Ok(hats)
}

fn keyed<T>(poset: &Poset, values: Vec<T>) -> BTreeMap<String, T> {
    values.into_iter().enumerate().map(|(i, v)| (poset.id(i).to_string(), v)).collect()
}

/// Corrected closure genera for every non-top stratum, in the ring `R`.
pub fn hat_closure_genera<R: Coefficient>(space: &StratifiedSpace) -> Result<BTreeMap<String, R>> {
    let data = Data::<R>::new(space)?;
    let hats = hat_recursion(&data.poset, |v| data.closure(v), |w, v| data.link(w, v))?;
    Ok(keyed(&data.poset, hats))
}

/// `hat I chi_y(closure(V)) = I chi_y(closure(V)) - sum_{W<V} hat I chi_y(closure(W)) * I chi_y(cone(L_{W,V}))`.
pub fn hat_ichi(space: &StratifiedSpace) -> Result<BTreeMap<String, LaurentPoly>> {
    hat_closure_genera::<LaurentPoly>(space)
}

/// `hat IC(closure(V)) = e_V - sum_{W<V} hat IC(closure(W)) * a_{W,V}` on
/// the basis of closure intersection complexes, for every non-top stratum.
pub fn hat_icc<R: Coefficient>(space: &StratifiedSpace) -> Result<BTreeMap<String, KModuleElement<R>>> {
    let data = Data::<R>::new(space)?;
    let hats = hat_recursion(
        &data.poset,
        |v| Ok(KModuleElement::basis(data.poset.id(v))),
        |w, v| data.link(w, v),
    )?;
    Ok(keyed(&data.poset, hats))
}

fn stalk_lookup<R: Clone>(stalks: &BTreeMap<String, R>, id: &str) -> Result<R> {
    stalks.get(id).cloned().ok_or_else(|| Error::MissingData { what: "stalk", id: id.to_string() })
}

/// Coefficients `L(V)` with `[M] = sum_V [IC'_{closure(V)}] L(V)` for the
/// given stalk classes `i_v^*[M]`.
pub fn decompose<R: Coefficient>(space: &StratifiedSpace, stalks: &BTreeMap<String, R>) -> Result<KModuleElement<R>> {
    let data = Data::<R>::new(space)?;
    let poset = &data.poset;
    let top = poset.top();
    let top_stalk = stalk_lookup(stalks, poset.id(top))?;
    // L'(W) = i_w^*[M] - a_{W,S} i_s^*[M]
    let mut reduced = Vec::with_capacity(top);
    for w in poset.lower_strata() {
        let s = stalk_lookup(stalks, poset.id(w))?;
        reduced.push(s.sub_ref(&data.link(w, top)?.mul_ref(&top_stalk)));
    }
    let inverse = data.lower_matrix()?.invert();
    let mut out = KModuleElement::from_coeffs([(poset.id(top).to_string(), top_stalk)]);
    for w in poset.lower_strata() {
        let mut acc = R::zero();
        for v in poset.at_or_above(w).into_iter().filter(|&v| v < top) {
            acc = acc.add_ref(&inverse.get(w, v).mul_ref(&reduced[v]));
        }
        out.add_at(poset.id(w), &acc);
    }
    Ok(out)
}

/// The stalks `i_w^*` of `sum_V [IC'_{closure(V)}] L(V)`:
/// `sum_{V >= W} a_{W,V} L(V)`.
pub fn stalk_map<R: Coefficient>(space: &StratifiedSpace, element: &KModuleElement<R>) -> Result<BTreeMap<String, R>> {
    let data = Data::<R>::new(space)?;
    let poset = &data.poset;
    for id in element.support() {
        if poset.index_of(id).is_none() {
            return Err(Error::MissingData { what: "stratum", id: id.to_string() });
        }
    }
    let mut out = BTreeMap::new();
    for w in 0..poset.len() {
        let mut acc = R::zero();
        for v in poset.at_or_above(w) {
            acc = acc.add_ref(&data.link(w, v)?.mul_ref(&element.coeff(poset.id(v))));
        }
        out.insert(poset.id(w).to_string(), acc);
    }
    Ok(out)
}

/// Right-hand side of
/// `[M] = [IC'_Y] i_s^*[M] + sum_{V<S} hat IC(closure(V)) (i_v^*[M] - i_s^*[M] i_v^*[IC'_Y])`.
pub fn reconstruct_m_e<R: Coefficient>(
    space: &StratifiedSpace,
    stalks: &BTreeMap<String, R>,
) -> Result<KModuleElement<R>> {
    let data = Data::<R>::new(space)?;
    let poset = &data.poset;
    let top = poset.top();
    let top_stalk = stalk_lookup(stalks, poset.id(top))?;
    let hats = hat_icc::<R>(space)?;
    let mut out = KModuleElement::basis(poset.id(top)).scale(&top_stalk);
    for v in poset.lower_strata() {
        let id = poset.id(v);
        let factor = stalk_lookup(stalks, id)?.sub_ref(&top_stalk.mul_ref(&data.link(v, top)?));
        out = out.plus(&hats[id].scale(&factor));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    /// W < V < S with chi-level data.
    fn chain_space(link_wv: &str) -> StratifiedSpace {
        let mut s = StratifiedSpace::new("chain");
        s.add_stratum(Stratum::new("W", 0))
            .add_stratum(Stratum::new("V", 1))
            .add_stratum(Stratum::new("S", 2))
            .add_relation("W", "V")
            .add_relation("V", "S")
            .set_closure("W", lp("1"))
            .set_closure("V", lp("1 - y"))
            .set_closure("S", lp("1 - y + y^2"))
            .set_link("W", "V", lp(link_wv))
            .set_link("W", "S", lp("1"))
            .set_link("V", "S", lp("1"));
        s
    }

    #[test]
    fn hat_ichi_chain() {
        let hats = hat_ichi(&chain_space("1")).unwrap();
        assert_eq!(hats["W"], lp("1"));
        assert_eq!(hats["V"], lp("-y"));
        assert!(!hats.contains_key("S"));
    }

    #[test]
    fn hat_ichi_point_in_plane() {
        let mut s = StratifiedSpace::new("P2");
        s.add_stratum(Stratum::new("p", 0))
            .add_stratum(Stratum::new("S", 2).smooth())
            .add_relation("p", "S")
            .set_closure("p", HodgeClass::tate(0))
            .set_closure("S", HodgeClass::projective_space(2))
            .set_link("p", "S", HodgeClass::tate(0));
        assert_eq!(hat_ichi(&s).unwrap()["p"], lp("1"));
    }

    #[test]
    fn hat_icc_chain() {
        let s = chain_space("3 + y");
        let hats = hat_icc::<LaurentPoly>(&s).unwrap();
        assert_eq!(hats["W"], KModuleElement::basis("W"));
        let expected = KModuleElement::from_coeffs([("V".to_string(), lp("1")), ("W".to_string(), lp("-3 - y"))]);
        assert_eq!(hats["V"], expected);
    }

    #[test]
    fn hat_icc_pairs_with_closures_to_hat_ichi() {
        let s = chain_space("3 + y");
        let icc = hat_icc::<LaurentPoly>(&s).unwrap();
        let ichi = hat_ichi(&s).unwrap();
        for (id, element) in &icc {
            let paired = element
                .coeffs()
                .fold(LaurentPoly::zero(), |acc, (w, c)| acc + c * &s.closure(w).unwrap().chi_y());
            assert_eq!(&paired, &ichi[id]);
        }
    }

    #[test]
    fn decompose_basis_element() {
        let s = chain_space("3 + y");
        let mut stalks = BTreeMap::new();
        for id in ["W", "V"] {
            stalks.insert(id.to_string(), s.link(id, "S").unwrap().chi_y());
        }
        stalks.insert("S".to_string(), lp("1"));
        assert_eq!(decompose(&s, &stalks).unwrap(), KModuleElement::basis("S"));
        assert_eq!(reconstruct_m_e(&s, &stalks).unwrap(), KModuleElement::basis("S"));
    }

    #[test]
    fn single_stratum_decomposition() {
        let mut s = StratifiedSpace::new("pt");
        s.add_stratum(Stratum::new("S", 0)).set_closure("S", HodgeClass::tate(0));
        let h: HodgeClass = "0,0:2; 1,1:-1".parse().unwrap();
        let stalks = BTreeMap::from([("S".to_string(), h.clone())]);
        let expected = KModuleElement::from_coeffs([("S".to_string(), h)]);
        assert_eq!(decompose(&s, &stalks).unwrap(), expected);
        assert_eq!(reconstruct_m_e(&s, &stalks).unwrap(), expected);
    }

    #[test]
    fn missing_stalk_is_an_error() {
        let s = chain_space("1");
        let stalks = BTreeMap::from([("S".to_string(), lp("1"))]);
        assert!(matches!(decompose(&s, &stalks), Err(Error::MissingData { .. })));
    }

    #[test]
    fn invalid_space_is_rejected() {
        let mut s = chain_space("1");
        s.add_stratum(Stratum::new("S", 2));
        assert!(matches!(hat_ichi(&s), Err(Error::InvalidSpace(_))));
    }

    #[test]
    fn genus_only_data_refuses_hodge_level() {
        let s = chain_space("1");
        assert!(matches!(hat_icc::<HodgeClass>(&s), Err(Error::HodgeDataRequired(_))));
    }
}
