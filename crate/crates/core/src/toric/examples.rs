//! The worked example spaces, with hand-derived intersection cohomology data
//! for the singular ones.

use std::collections::BTreeMap;

use crate::classes::{ty_projective, GradedClass};
use crate::error::{Error, Result};
use crate::genus::StratifiedMapData;
use crate::hodge::HodgeClass;
use crate::ring::{LaurentPoly, LocalizedElem, Ring};
use crate::strata::{StratifiedSpace, Stratum};

use super::Fan;

pub const STANDARD_KINDS: &[&str] = &[
    "pn <n>",
    "identity_p2",
    "blowup_p2_point",
    "blowup_p3_line",
    "blowup_linear <n> <m>",
    "nodal_cubic",
    "p1xp1",
    "hirzebruch <a>",
];

/// A target space with a map onto it, the `IT_y` classes of the stratum
/// closures and, for toric examples, the fan.
#[derive(Clone, Debug)]
pub struct StandardExample {
    pub name: String,
    pub map: StratifiedMapData,
    pub classes: Option<BTreeMap<String, GradedClass>>,
    pub fan: Option<Fan>,
}

impl StandardExample {
    pub fn space(&self) -> &StratifiedSpace {
        &self.map.space
    }
}

fn param(kind: &str, params: &[i64], i: usize) -> Result<i64> {
    params
        .get(i)
        .copied()
        .ok_or_else(|| Error::InvalidParameter(format!("`{kind}` needs {} parameter(s)", i + 1)))
}

fn nonnegative(kind: &str, v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::InvalidParameter(format!("`{kind}` parameter must be nonnegative, got {v}")))
}

fn check_arity(kind: &str, params: &[i64], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(Error::InvalidParameter(format!("`{kind}` takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Builds one of [`STANDARD_KINDS`].
pub fn standard_space(kind: &str, params: &[i64]) -> Result<StandardExample> {
    match kind {
        "pn" => {
            check_arity(kind, params, 1)?;
            let n = nonnegative(kind, param(kind, params, 0)?)?;
            let fan = if n > 0 { Some(Fan::projective_space(n)?) } else { None };
            Ok(smooth(format!("P{n}"), n, HodgeClass::projective_space(n), Some(ty_projective(n)), fan))
        }
        "p1xp1" => {
            check_arity(kind, params, 0)?;
            let p1 = HodgeClass::projective_space(1);
            let fan = Fan::projective_space(1)?.product(&Fan::projective_space(1)?);
            Ok(smooth("P1xP1".into(), 2, p1.tensor(&p1), None, Some(fan)))
        }
        "hirzebruch" => {
            check_arity(kind, params, 1)?;
            let a = param(kind, params, 0)?;
            let diamond: HodgeClass = "0,0:1; 1,1:2; 2,2:1".parse()?;
            Ok(smooth(format!("F{a}"), 2, diamond, None, Some(Fan::hirzebruch_surface(a))))
        }
        "identity_p2" => {
            check_arity(kind, params, 0)?;
            let space = linear_center_space(2, 0, "p");
            let mut ex = example("identity on P2 with a marked point", StratifiedMapData::identity(space));
            ex.classes = Some(linear_center_classes(2, 0, "p"));
            Ok(ex)
        }
        "blowup_p2_point" => {
            check_arity(kind, params, 0)?;
            blowup_linear(2, 0, "p")
        }
        "blowup_p3_line" => {
            check_arity(kind, params, 0)?;
            blowup_linear(3, 1, "L")
        }
        "blowup_linear" => {
            check_arity(kind, params, 2)?;
            let n = nonnegative(kind, param(kind, params, 0)?)?;
            let m = nonnegative(kind, param(kind, params, 1)?)?;
            blowup_linear(n, m, "Z")
        }
        "nodal_cubic" => {
            check_arity(kind, params, 0)?;
            Ok(nodal_cubic())
        }
        other => Err(Error::UnknownKind(other.to_string())),
    }
}

fn example(name: &str, map: StratifiedMapData) -> StandardExample {
    StandardExample { name: name.to_string(), map, classes: None, fan: None }
}

fn smooth(name: String, n: u32, diamond: HodgeClass, ty: Option<GradedClass>, fan: Option<Fan>) -> StandardExample {
    let mut space = StratifiedSpace::new(name.clone());
    space.add_stratum(Stratum::new("S", n).smooth()).set_closure("S", diamond);
    StandardExample {
        name,
        map: StratifiedMapData::identity(space),
        classes: ty.map(|t| BTreeMap::from([("S".to_string(), t)])),
        fan,
    }
}

/// `P^n` stratified by a linear `P^m` and its complement. Both closures are
/// smooth, so the link cone has the class of a point.
fn linear_center_space(n: u32, m: u32, center: &str) -> StratifiedSpace {
    let mut space = StratifiedSpace::new(format!("P{n} along P{m}"));
    space
        .add_stratum(Stratum::new(center, m).smooth())
        .add_stratum(Stratum::new("S", n).smooth())
        .add_relation(center, "S")
        .set_closure(center, HodgeClass::projective_space(m))
        .set_closure("S", HodgeClass::projective_space(n))
        .set_link(center, "S", HodgeClass::one());
    space
}

fn linear_center_classes(n: u32, m: u32, center: &str) -> BTreeMap<String, GradedClass> {
    let center_class = ty_projective(m).push_linear(n).expect("m <= n");
    BTreeMap::from([("S".to_string(), ty_projective(n)), (center.to_string(), center_class)])
}

/// Blow-up of `P^n` along a linear `P^m`: the fiber over the center is
/// `P^r` with `r = n - m - 1`, a point elsewhere; the preimage of a small
/// cone over the center retracts onto that fiber.
fn blowup_linear(n: u32, m: u32, center: &str) -> Result<StandardExample> {
    if m >= n {
        return Err(Error::InvalidParameter(format!("the center P{m} must have smaller dimension than P{n}")));
    }
    let r = n - m - 1;
    let mut map = StratifiedMapData::new(linear_center_space(n, m, center));
    map.set_fiber("S", HodgeClass::one())
        .set_fiber(center, HodgeClass::projective_space(r))
        .set_cone_preimage(center, HodgeClass::projective_space(r));
    let mut ex = example(&format!("blow-up of P{n} along P{m}"), map);
    ex.map.space.name = ex.name.clone();
    ex.classes = Some(linear_center_classes(n, m, center));
    Ok(ex)
}

/// Nodal plane cubic `{node} < S` with its normalization `P^1 -> Y`.
///
/// The normalization is small, so `IH(Y) = H(P^1)`. A neighborhood of the
/// node is two disks meeting in a point, so the link is two circles and the
/// cone on it has `IH^0` of rank 2 and nothing else. The preimage of that
/// cone is two disjoint disks, again rank 2 in degree 0.
fn nodal_cubic() -> StandardExample {
    let two = HodgeClass::from_entries([((0, 0), 2)]);
    let mut space = StratifiedSpace::new("nodal cubic");
    space
        .add_stratum(Stratum::new("node", 0).smooth())
        .add_stratum(Stratum::new("S", 1))
        .add_relation("node", "S")
        .set_closure("node", HodgeClass::one())
        .set_closure("S", HodgeClass::projective_space(1))
        .set_link("node", "S", two.clone());
    let mut map = StratifiedMapData::new(space);
    map.set_fiber("S", HodgeClass::one()).set_fiber("node", two.clone()).set_cone_preimage("node", two);
    let it_curve = GradedClass::from_components(
        1,
        [(1, LocalizedElem::one()), (0, LocalizedElem::from("1 - y".parse::<LaurentPoly>().expect("valid")))],
    )
    .expect("degrees within the curve");
    let mut ex = example("nodal cubic", map);
    ex.classes = Some(BTreeMap::from([("S".to_string(), it_curve), ("node".to_string(), GradedClass::point(1))]));
    ex
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::pushforward_ity;
    use crate::genus::{chi_vs_ichi, pushforward_chi, pushforward_ichi};

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn every_kind_builds_and_validates() {
        for (kind, params) in [
            ("pn", vec![3]),
            ("pn", vec![0]),
            ("identity_p2", vec![]),
            ("blowup_p2_point", vec![]),
            ("blowup_p3_line", vec![]),
            ("blowup_linear", vec![4, 1]),
            ("nodal_cubic", vec![]),
            ("p1xp1", vec![]),
            ("hirzebruch", vec![2]),
        ] {
            let ex = standard_space(kind, &params).unwrap();
            assert!(ex.space().is_valid(), "{kind}: {:?}", ex.space().diagnostics());
        }
    }

    #[test]
    fn genera_of_examples() {
        let chi = |k: &str, p: &[i64]| pushforward_chi(&standard_space(k, p).unwrap().map).unwrap();
        assert_eq!(chi("blowup_p2_point", &[]), lp("1 - 2*y + y^2"));
        assert_eq!(chi("blowup_p3_line", &[]), lp("1 - 2*y + 2*y^2 - y^3"));
        assert_eq!(chi("identity_p2", &[]), lp("1 - y + y^2"));
        assert_eq!(chi("nodal_cubic", &[]), lp("1 - y"));
        let nodal = standard_space("nodal_cubic", &[]).unwrap();
        assert_eq!(chi_vs_ichi(nodal.space()).unwrap(), lp("-y"));
        assert_eq!(pushforward_ichi(&nodal.map).unwrap(), lp("1 - y"));
    }

    #[test]
    fn class_degrees_match_genera() {
        for (kind, params) in [("blowup_p2_point", vec![]), ("blowup_p3_line", vec![]), ("nodal_cubic", vec![]), ("pn", vec![4])] {
            let ex = standard_space(kind, &params).unwrap();
            let classes = ex.classes.as_ref().unwrap();
            let pushed = pushforward_ity(&ex.map, classes).unwrap();
            assert_eq!(pushed.degree().unwrap(), pushforward_ichi(&ex.map).unwrap(), "{kind}");
        }
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(standard_space("moon", &[]), Err(Error::UnknownKind(_))));
        assert!(standard_space("pn", &[]).is_err());
        assert!(standard_space("pn", &[-1]).is_err());
        assert!(standard_space("blowup_linear", &[2, 2]).is_err());
        assert!(standard_space("identity_p2", &[1]).is_err());
    }
}
