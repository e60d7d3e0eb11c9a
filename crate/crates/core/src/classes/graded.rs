use std::collections::BTreeMap;
use std::fmt::{self, Display, Write as _};

use crate::error::{Error, Result};
use crate::ring::{LaurentPoly, LocalizedElem, Module, Rational, Ring};
use crate::text::sections;

use super::CohomClass;

/// Homology class of an ambient space of complex dimension `dim`, one
/// coefficient per homological degree `k` (complex units) relative to the
/// ambient basis `[P^k]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedClass {
    dim: u32,
    components: BTreeMap<u32, LocalizedElem>,
}

impl GradedClass {
    pub fn zero(dim: u32) -> Self {
        GradedClass { dim, components: BTreeMap::new() }
    }

    pub fn from_components<I>(dim: u32, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, LocalizedElem)>,
    {
        let mut out = GradedClass::zero(dim);
        for (k, c) in components {
            if k > dim {
                return Err(Error::InvalidParameter(format!("degree {k} exceeds ambient dimension {dim}")));
            }
            out.add_at(k, &c);
        }
        Ok(out)
    }

    /// The class of a point.
    pub fn point(dim: u32) -> Self {
        GradedClass::zero(dim).with(0, LocalizedElem::one())
    }

    fn with(mut self, k: u32, c: LocalizedElem) -> Self {
        self.add_at(k, &c);
        self
    }

    fn add_at(&mut self, k: u32, c: &LocalizedElem) {
        let next = match self.components.get(&k) {
            Some(old) => old.add_ref(c),
            None => c.clone(),
        };
        if next.is_zero() {
            self.components.remove(&k);
        } else {
            self.components.insert(k, next);
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn component(&self, k: u32) -> LocalizedElem {
        self.components.get(&k).cloned().unwrap_or_else(LocalizedElem::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &LocalizedElem)> {
        self.components.iter().map(|(&k, c)| (k, c))
    }

    /// Degree-zero part as a genus. Fails if a `(1+y)` denominator survives.
    pub fn degree(&self) -> Result<LaurentPoly> {
        let c = self.component(0);
        c.to_laurent().ok_or_else(|| Error::DenominatorSurvives(format!("the degree {c}")))
    }

    /// Caps a class on `P^n` with the fundamental class: `h^j` goes to `[P^{n-j}]`.
    pub fn cap_fundamental(c: &CohomClass) -> Result<Self> {
        let ring = c.ring();
        if ring.num_generators() > 1 {
            return Err(Error::BasisMismatch(
                "homology classes are recorded on a single hyperplane basis; products need the cohomology form".into(),
            ));
        }
        let n = ring.dim();
        let mut out = GradedClass::zero(n);
        for (e, coeff) in c.terms() {
            let j = e.first().copied().unwrap_or(0);
            out.add_at(n - j, coeff);
        }
        Ok(out)
    }

    /// Push-forward along a linear embedding `P^dim -> P^target`.
    pub fn push_linear(&self, target: u32) -> Result<Self> {
        if target < self.dim {
            return Err(Error::InvalidParameter(format!("cannot embed P^{} into P^{target}", self.dim)));
        }
        Ok(GradedClass { dim: target, components: self.components.clone() })
    }

    pub fn eval_y(&self, y: &Rational) -> Option<BTreeMap<u32, Rational>> {
        self.components.iter().map(|(&k, c)| Some((k, c.eval(y)?))).collect()
    }

    fn check_basis(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::BasisMismatch(format!(
                "classes in ambient dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        Ok(())
    }
}

impl Module<LaurentPoly> for GradedClass {
    /// The zero class takes the ambient dimension of whatever it meets.
    fn null() -> Self {
        GradedClass::zero(0)
    }
    fn plus(&self, rhs: &Self) -> Self {
        let mut out = GradedClass { dim: self.dim.max(rhs.dim), components: self.components.clone() };
        for (&k, c) in &rhs.components {
            out.add_at(k, c);
        }
        out
    }
    fn scale(&self, by: &LaurentPoly) -> Self {
        let by = LocalizedElem::from(by.clone());
        let mut out = GradedClass::zero(self.dim);
        for (&k, c) in &self.components {
            out.add_at(k, &c.mul_ref(&by));
        }
        out
    }
}

/// `[F] -> sum_k td_k([F]) (1+y)^{-k}`: degree `k` is divided by `(1+y)^k`.
pub fn td_twist(g: &GradedClass) -> GradedClass {
    GradedClass {
        dim: g.dim,
        components: g
            .components
            .iter()
            .map(|(&k, c)| (k, c.div_one_plus_y_pow(k)))
            .filter(|(_, c)| !c.is_zero())
            .collect(),
    }
}

/// `f_* T_y(X) = T_y(Y) + T_y(Z) (-y + ... + (-y)^r)` for the blow-up of
/// `Y` along a smooth center `Z` of codimension `r + 1`.
pub fn smooth_blowup_class(ty_y: &GradedClass, ty_z: &GradedClass, r: u32) -> Result<GradedClass> {
    ty_y.check_basis(ty_z)?;
    Ok(ty_y.plus(&ty_z.scale(&crate::ring::blowup_factor(r))))
}

impl Display for GradedClass {
    /// One `k: <coefficient>` line per degree, from `dim` down to 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in (0..=self.dim).rev() {
            writeln!(f, "{k}: {}", self.component(k))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedClass").field("dim", &self.dim).field("components", &self.components).finish()
    }
}

/// Parses a classes file:
///
/// ```text
/// [classes]
/// dim = 2
/// [class S]
/// 2: 1
/// 1: 3/2 - 3/2*y
/// 0: 1 - y + y^2
/// ```
pub fn parse_classes(input: &str) -> Result<BTreeMap<String, GradedClass>> {
    let mut dim: Option<u32> = None;
    let mut out = BTreeMap::new();
    for section in sections(input)? {
        match section.name.as_str() {
            "classes" => {
                section.arity(0)?;
                for line in &section.lines {
                    match line.key_value()? {
                        ("dim", v) => {
                            dim = Some(v.parse().map_err(|_| line.error(format!("bad dimension `{v}`")))?);
                        }
                        (k, _) => return Err(line.error(format!("unknown key `{k}` in [classes]"))),
                    }
                }
            }
            "class" => {
                section.arity(1)?;
                let id = section.args[0].clone();
                let n = dim.ok_or_else(|| section.header.error("[class] before `dim` is declared in [classes]"))?;
                let mut components = Vec::new();
                for line in &section.lines {
                    let (k, v) = line.split_on(':')?;
                    let k: u32 = k.parse().map_err(|_| line.error(format!("bad degree `{k}`")))?;
                    let c: LocalizedElem = v.parse().map_err(|e| line.context(e))?;
                    if k > n {
                        return Err(line.error(format!("degree {k} exceeds ambient dimension {n}")));
                    }
                    components.push((k, c));
                }
                if out.insert(id.clone(), GradedClass::from_components(n, components)?).is_some() {
                    return Err(section.header.error(format!("duplicate [class {id}]")));
                }
            }
            other => return Err(section.header.error(format!("unknown section [{other}]"))),
        }
    }
    if dim.is_none() {
        return Err(Error::Syntax { line: 1, message: "missing [classes] header with `dim`".into() });
    }
    Ok(out)
}

/// Writes classes that share one ambient dimension.
pub fn classes_to_text(classes: &BTreeMap<String, GradedClass>) -> Result<String> {
    let dim = classes.values().map(GradedClass::dim).max().unwrap_or(0);
    if let Some((id, _)) = classes.iter().find(|(_, c)| c.dim() != dim) {
        return Err(Error::BasisMismatch(format!("class `{id}` has a different ambient dimension")));
    }
    let mut out = format!("[classes]\ndim = {dim}\n");
    for (id, c) in classes {
        let _ = write!(out, "\n[class {id}]\n{c}");
    }
    Ok(out)
}
