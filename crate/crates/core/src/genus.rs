//! Genera of the source of a proper map computed from data on the strata
//! of the target.
//!
//! Every formula here has the shape
//! `value(Y) * F + sum_{V<S} hat(V) * (term(V) - F * link(V, S))`, where
//! `F` is the generic-fiber class and `term(V)` is either the fiber over
//! `V` (for `chi_y`) or the intersection cohomology of the preimage of a
//! cone on the link (for `I chi_y`). The same engine serves the Hodge-class
//! level, the E-polynomial level, the `chi_y` level and, in
//! [`crate::classes`], homology classes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hodge::HodgeClass;
use crate::ring::{blowup_factor, alternating_geometric, LaurentPoly, Module, Ring};
use crate::strata::{hat_recursion, parse_datum, write_datum, Coefficient, Data, Datum, Level, StratifiedSpace};
use crate::text::sections;

/// Fiber data of a proper map over the strata of its target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratifiedMapData {
    pub space: StratifiedSpace,
    fiber: BTreeMap<String, Datum>,
    icone_preimage: Option<BTreeMap<String, Datum>>,
}

/// Which stratum data enters the correction terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberMode {
    /// `chi_y(F_V)`: fibers over the strata.
    Fibers,
    /// `I chi_y(f^-1(cone(L_{V,Y})))`: preimages of link cones.
    ConePreimages,
}

impl StratifiedMapData {
    pub fn new(space: StratifiedSpace) -> Self {
        StratifiedMapData { space, fiber: BTreeMap::new(), icone_preimage: None }
    }

    /// The identity map: every fiber is a point.
    pub fn identity(space: StratifiedSpace) -> Self {
        let level = space.level();
        let point = match level {
            Level::Hodge => Datum::Hodge(HodgeClass::one()),
            Level::Chi => Datum::Chi(LaurentPoly::one()),
        };
        let ids: Vec<String> = space.strata().iter().map(|s| s.id.clone()).collect();
        let top = space.poset().ok().map(|p| p.id(p.top()).to_string());
        let mut m = StratifiedMapData::new(space);
        for id in ids {
            m.set_fiber(&id, point.clone());
            // the preimage of a cone under the identity is the cone itself
            let link = top.as_deref().and_then(|t| m.space.link(&id, t)).cloned();
            if let Some(link) = link {
                m.set_cone_preimage(&id, link);
            }
        }
        m
    }

    pub fn set_fiber(&mut self, id: &str, datum: impl Into<Datum>) -> &mut Self {
        self.fiber.insert(id.to_string(), datum.into());
        self
    }

    pub fn set_cone_preimage(&mut self, id: &str, datum: impl Into<Datum>) -> &mut Self {
        self.icone_preimage.get_or_insert_with(BTreeMap::new).insert(id.to_string(), datum.into());
        self
    }

    pub fn fiber(&self, id: &str) -> Option<&Datum> {
        self.fiber.get(id)
    }

    pub fn cone_preimage(&self, id: &str) -> Option<&Datum> {
        self.icone_preimage.as_ref().and_then(|m| m.get(id))
    }

    pub fn has_cone_preimages(&self) -> bool {
        self.icone_preimage.is_some()
    }

    /// Hodge if the space and every fiber datum are Hodge classes.
    pub fn level(&self) -> Level {
        self.fiber
            .values()
            .chain(self.icone_preimage.iter().flat_map(|m| m.values()))
            .map(Datum::level)
            .chain(std::iter::once(self.space.level()))
            .min()
            .unwrap_or(Level::Hodge)
    }

    fn stratum_datum(&self, mode: FiberMode, id: &str) -> Result<&Datum> {
        match mode {
            FiberMode::Fibers => self.fiber(id).ok_or_else(|| Error::MissingData { what: "fiber class", id: id.into() }),
            FiberMode::ConePreimages => self
                .cone_preimage(id)
                .ok_or_else(|| Error::MissingData { what: "cone preimage class", id: id.into() }),
        }
    }

    /// Checks that every id refers to a stratum of the target.
    fn check_ids(&self) -> Result<()> {
        let keys = self.fiber.keys().chain(self.icone_preimage.iter().flat_map(|m| m.keys()));
        for id in keys {
            if self.space.stratum(id).is_none() {
                return Err(Error::MissingData { what: "stratum in target", id: id.clone() });
            }
        }
        Ok(())
    }
}

/// Scalars of the push-forward formula: the generic fiber class and, per
/// non-top stratum in topological order, `term(V) - F * link(V, S)`.
pub(crate) struct Corrections<'a, R> {
    pub data: Data<'a, R>,
    pub generic: R,
    pub per_stratum: Vec<R>,
}

pub(crate) fn corrections<R: Coefficient>(m: &StratifiedMapData, mode: FiberMode) -> Result<Corrections<'_, R>> {
    let data = Data::<R>::new(&m.space)?;
    m.check_ids()?;
    for w in m.space.warnings() {
        log::warn!("{}: {w}", m.space.name);
    }
    let top = data.poset.top();
    let generic = R::project(m.stratum_datum(FiberMode::Fibers, data.poset.id(top))?)?;
    let mut per_stratum = Vec::with_capacity(top);
    for v in data.poset.lower_strata() {
        let term = R::project(m.stratum_datum(mode, data.poset.id(v))?)?;
        per_stratum.push(term.sub_ref(&generic.mul_ref(&data.link(v, top)?)));
    }
    Ok(Corrections { data, generic, per_stratum })
}

/// `top * F + sum_V hat(V) * c_V`.
pub(crate) fn assemble<R: Ring, M: Module<R>>(top: &M, hats: &[M], c: &Corrections<'_, R>) -> M {
    hats.iter()
        .zip(&c.per_stratum)
        .fold(top.scale(&c.generic), |acc, (hat, scalar)| acc.plus(&hat.scale(scalar)))
}

/// The push-forward genus in the ring `R`.
pub fn pushforward<R: Coefficient>(m: &StratifiedMapData, mode: FiberMode) -> Result<R> {
    let c = corrections::<R>(m, mode)?;
    let hats = hat_recursion(&c.data.poset, |v| c.data.closure(v), |w, v| c.data.link(w, v))?;
    let top = c.data.closure(c.data.poset.top())?;
    Ok(assemble(&top, &hats, &c))
}

/// `chi_y(X) = I chi_y(Y) chi_y(F) + sum_{V<S} hat I chi_y(V) (chi_y(F_V) - chi_y(F) I chi_y(cone(L_{V,Y})))`.
pub fn pushforward_chi(m: &StratifiedMapData) -> Result<LaurentPoly> {
    pushforward::<LaurentPoly>(m, FiberMode::Fibers)
}

/// `I chi_y(X)` via the stratified multiplicative property.
pub fn pushforward_ichi(m: &StratifiedMapData) -> Result<LaurentPoly> {
    if !m.has_cone_preimages() && m.space.poset()?.top() > 0 {
        return Err(Error::MissingData { what: "cone preimage classes", id: m.space.name.clone() });
    }
    pushforward::<LaurentPoly>(m, FiberMode::ConePreimages)
}

/// `chi_y(Y) = I chi_y(Y) + sum_{V<S} hat I chi_y(V) (1 - I chi_y(cone(L_{V,Y})))`.
pub fn chi_from_ichi<R: Coefficient>(space: &StratifiedSpace) -> Result<R> {
    let data = Data::<R>::new(space)?;
    let top = data.poset.top();
    let hats = hat_recursion(&data.poset, |v| data.closure(v), |w, v| data.link(w, v))?;
    let mut acc = data.closure(top)?;
    for (v, hat) in hats.iter().enumerate() {
        acc = acc.add_ref(&hat.mul_ref(&R::one().sub_ref(&data.link(v, top)?)));
    }
    Ok(acc)
}

pub fn chi_vs_ichi(space: &StratifiedSpace) -> Result<LaurentPoly> {
    chi_from_ichi::<LaurentPoly>(space)
}

/// Genus of a fibration with trivial monodromy on the fiber cohomology.
pub fn fibration_mult(chi_base: &LaurentPoly, chi_fiber: &LaurentPoly) -> LaurentPoly {
    chi_base * chi_fiber
}

/// Class-level form of [`fibration_mult`].
pub fn fibration_mult_hodge(base: &HodgeClass, fiber: &HodgeClass) -> HodgeClass {
    base.tensor(fiber)
}

/// `chi_y(X) = chi_y(Y) + chi_y(Z) (-y + ... + (-y)^r)` for the blow-up along
/// a smooth center of codimension `r + 1`.
pub fn blowup_chi(chi_y: &LaurentPoly, chi_z: &LaurentPoly, r: u32) -> LaurentPoly {
    chi_y + &(chi_z * &blowup_factor(r))
}

/// The two-stratum model of a blow-up: `Z < Y \ Z` with trivial links,
/// generic fiber a point and fiber `P^r` over `Z`.
pub fn blowup_model(chi_y: &LaurentPoly, chi_z: &LaurentPoly, dim_y: u32, dim_z: u32, r: u32) -> StratifiedMapData {
    let mut space = StratifiedSpace::new("blow-up model");
    space
        .add_stratum(crate::strata::Stratum::new("S", dim_y).smooth())
        .add_stratum(crate::strata::Stratum::new("Z", dim_z).smooth())
        .add_relation("Z", "S")
        .set_closure("S", chi_y.clone())
        .set_closure("Z", chi_z.clone())
        .set_link("Z", "S", LaurentPoly::one());
    let mut m = StratifiedMapData::new(space);
    m.set_fiber("S", LaurentPoly::one())
        .set_fiber("Z", alternating_geometric(r))
        .set_cone_preimage("Z", alternating_geometric(r));
    m
}

impl StratifiedMapData {
    /// Parses a map file. `load_space` resolves the `space = <path>` entry to
    /// the text of a stratified-space file.
    pub fn parse_with(input: &str, load_space: impl FnOnce(&str) -> Result<String>) -> Result<Self> {
        let mut space_path: Option<String> = None;
        let mut fiber = BTreeMap::new();
        let mut cones: Option<BTreeMap<String, Datum>> = None;
        for section in sections(input)? {
            match section.name.as_str() {
                "map" => {
                    section.arity(0)?;
                    for line in &section.lines {
                        match line.key_value()? {
                            ("space", v) => space_path = Some(v.to_string()),
                            (k, _) => return Err(line.error(format!("unknown key `{k}` in [map]"))),
                        }
                    }
                }
                name @ ("fiber" | "icone_preimage") => {
                    section.arity(1)?;
                    let id = section.args[0].clone();
                    let mut datum = None;
                    for line in &section.lines {
                        let (k, v) = line.key_value()?;
                        match parse_datum(line, k, v, "class", "chi")? {
                            Some(d) if datum.is_none() => datum = Some(d),
                            Some(_) => return Err(line.error("duplicate class")),
                            None => return Err(line.error(format!("unknown key `{k}` in [{name} {id}]"))),
                        }
                    }
                    let datum = datum.ok_or_else(|| section.header.error(format!("[{name} {id}] has no class")))?;
                    let target = if name == "fiber" { &mut fiber } else { cones.get_or_insert_with(BTreeMap::new) };
                    if target.insert(id.clone(), datum).is_some() {
                        return Err(section.header.error(format!("duplicate [{name} {id}]")));
                    }
                }
                other => return Err(section.header.error(format!("unknown section [{other}]"))),
            }
        }
        let path = space_path.ok_or_else(|| Error::Syntax { line: 1, message: "map file has no `space = <path>`".into() })?;
        let space: StratifiedSpace = load_space(&path)?.parse()?;
        Ok(StratifiedMapData { space, fiber, icone_preimage: cones })
    }

    pub fn to_file_text(&self, space_path: &str) -> String {
        let mut out = format!("[map]\nspace = {space_path}\n");
        let order = self.space.poset().ok();
        let mut ids: Vec<&String> = self.fiber.keys().collect();
        if let Some(p) = &order {
            ids.sort_by_key(|id| p.index_of(id));
        }
        for id in ids {
            let _ = writeln!(out, "\n[fiber {id}]");
            write_datum(&mut out, "class", "chi", &self.fiber[id]);
        }
        if let Some(cones) = &self.icone_preimage {
            let mut ids: Vec<&String> = cones.keys().collect();
            if let Some(p) = &order {
                ids.sort_by_key(|id| p.index_of(id));
            }
            for id in ids {
                let _ = writeln!(out, "\n[icone_preimage {id}]");
                write_datum(&mut out, "class", "chi", &cones[id]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::BiLaurentPoly;
    use crate::strata::Stratum;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn plane_with_point() -> StratifiedSpace {
        let mut s = StratifiedSpace::new("P2");
        s.add_stratum(Stratum::new("S", 2).smooth())
            .add_stratum(Stratum::new("p", 0).smooth())
            .add_relation("p", "S")
            .set_closure("S", HodgeClass::projective_space(2))
            .set_closure("p", HodgeClass::one())
            .set_link("p", "S", HodgeClass::one());
        s
    }

    fn point_blowup() -> StratifiedMapData {
        let mut m = StratifiedMapData::new(plane_with_point());
        m.set_fiber("S", HodgeClass::one())
            .set_fiber("p", HodgeClass::projective_space(1))
            .set_cone_preimage("p", HodgeClass::projective_space(1));
        m
    }

    #[test]
    fn identity_on_plane() {
        let m = StratifiedMapData::identity(plane_with_point());
        assert_eq!(pushforward_chi(&m).unwrap(), lp("1 - y + y^2"));
        assert_eq!(pushforward_ichi(&m).unwrap(), lp("1 - y + y^2"));
    }

    #[test]
    fn blowup_of_plane_at_point() {
        let m = point_blowup();
        assert_eq!(pushforward_chi(&m).unwrap(), lp("1 - 2*y + y^2"));
        assert_eq!(pushforward_ichi(&m).unwrap(), lp("1 - 2*y + y^2"));
        let e = pushforward::<BiLaurentPoly>(&m, FiberMode::Fibers).unwrap();
        assert_eq!(e, "u^2*v^2 + 2*u*v + 1".parse().unwrap());
        let h = pushforward::<HodgeClass>(&m, FiberMode::Fibers).unwrap();
        assert_eq!(h, "0,0:1; 1,1:2; 2,2:1".parse().unwrap());
    }

    #[test]
    fn single_stratum_is_multiplicative() {
        let mut s = StratifiedSpace::new("P1");
        s.add_stratum(Stratum::new("S", 1)).set_closure("S", HodgeClass::projective_space(1));
        let mut m = StratifiedMapData::new(s);
        m.set_fiber("S", HodgeClass::projective_space(2));
        assert_eq!(pushforward_chi(&m).unwrap(), lp("1 - y") * lp("1 - y + y^2"));
        assert_eq!(pushforward_ichi(&m).unwrap(), lp("1 - y") * lp("1 - y + y^2"));
    }

    #[test]
    fn corollary_on_nodal_cubic() {
        let mut s = StratifiedSpace::new("nodal cubic");
        s.add_stratum(Stratum::new("S", 1))
            .add_stratum(Stratum::new("node", 0))
            .add_relation("node", "S")
            .set_closure("S", lp("1 - y"))
            .set_closure("node", lp("1"))
            .set_link("node", "S", lp("2"));
        assert_eq!(chi_vs_ichi(&s).unwrap(), lp("-y"));
        assert_eq!(pushforward_chi(&StratifiedMapData::identity(s)).unwrap(), lp("-y"));
    }

    #[test]
    fn blowup_formula() {
        let p2 = lp("1 - y + y^2");
        assert_eq!(blowup_chi(&p2, &lp("7 + y"), 0), p2);
        assert_eq!(blowup_chi(&p2, &lp("1"), 1), lp("1 - 2*y + y^2"));
        assert_eq!(blowup_chi(&lp("1 - y + y^2 - y^3"), &lp("1 - y"), 1), lp("1 - 2*y + 2*y^2 - y^3"));
    }

    #[test]
    fn fibration_examples() {
        assert_eq!(fibration_mult(&lp("1 - y"), &lp("1 - y")), lp("1 - 2*y + y^2"));
        assert_eq!(fibration_mult(&lp("3 - y^-2"), &LaurentPoly::one()), lp("3 - y^-2"));
        let h = fibration_mult_hodge(&HodgeClass::projective_space(1), &HodgeClass::projective_space(1));
        assert_eq!(h.chi_y(), lp("1 - 2*y + y^2"));
    }

    #[test]
    fn missing_fiber_data() {
        let mut m = StratifiedMapData::new(plane_with_point());
        m.set_fiber("S", HodgeClass::one());
        assert!(matches!(pushforward_chi(&m), Err(Error::MissingData { .. })));
        let mut m = StratifiedMapData::new(plane_with_point());
        m.set_fiber("S", HodgeClass::one()).set_fiber("p", HodgeClass::one());
        assert!(matches!(pushforward_ichi(&m), Err(Error::MissingData { .. })));
        m.set_fiber("q", HodgeClass::one());
        assert!(pushforward_chi(&m).is_err());
    }

    #[test]
    fn map_file_round_trip() {
        let m = point_blowup();
        let space_text = m.space.to_file_text();
        let text = m.to_file_text("plane.strat");
        let parsed = StratifiedMapData::parse_with(&text, |p| {
            assert_eq!(p, "plane.strat");
            Ok(space_text.clone())
        })
        .unwrap();
        assert_eq!(parsed, m);
    }
}
