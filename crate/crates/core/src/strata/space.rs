use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Display};

use crate::error::{Error, Result};
use crate::hodge::HodgeClass;
use crate::ring::LaurentPoly;

/// Input datum attached to a stratum or a pair of strata: either a full
/// Hodge class or only its `chi_y` image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Datum {
    Hodge(HodgeClass),
    Chi(LaurentPoly),
}

impl Datum {
    pub fn chi_y(&self) -> LaurentPoly {
        match self {
            Datum::Hodge(h) => h.chi_y(),
            Datum::Chi(p) => p.clone(),
        }
    }

    pub fn level(&self) -> Level {
        match self {
            Datum::Hodge(_) => Level::Hodge,
            Datum::Chi(_) => Level::Chi,
        }
    }
}

impl From<HodgeClass> for Datum {
    fn from(h: HodgeClass) -> Self {
        Datum::Hodge(h)
    }
}

impl From<LaurentPoly> for Datum {
    fn from(p: LaurentPoly) -> Self {
        Datum::Chi(p)
    }
}

/// Granularity of the data carried by a space or map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    /// Only `chi_y` images are known.
    Chi,
    /// Full Hodge-number classes.
    Hodge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: String,
    /// Complex dimension.
    pub dim: u32,
    pub simply_connected: bool,
    /// Declares the closure of this stratum nonsingular, which makes every
    /// link class into it trivial.
    pub smooth_closure: bool,
}

impl Stratum {
    pub fn new(id: impl Into<String>, dim: u32) -> Self {
        Stratum { id: id.into(), dim, simply_connected: true, smooth_closure: false }
    }

    pub fn smooth(mut self) -> Self {
        self.smooth_closure = true;
        self
    }

    pub fn not_simply_connected(mut self) -> Self {
        self.simply_connected = false;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub ids: Vec<String>,
}

impl Diagnostic {
    fn error(message: &str, ids: &[&str]) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.to_string(),
            ids: ids.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn warning(message: &str, ids: &[&str]) -> Self {
        Diagnostic { severity: Severity::Warning, ..Self::error(message, ids) }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}", self.message)?;
        if !self.ids.is_empty() {
            write!(f, " [{}]", self.ids.join(", "))?;
        }
        Ok(())
    }
}

/// A finite stratification: strata ordered by closure inclusion, the
/// intersection-cohomology class of every closure, and the class of the
/// open cone on the link for every comparable pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StratifiedSpace {
    pub name: String,
    /// Overrides the simple-connectivity hypothesis, e.g. for orbit
    /// stratifications of toric varieties.
    pub monodromy_ok: bool,
    strata: Vec<Stratum>,
    relations: BTreeSet<(String, String)>,
    ichi_closure: BTreeMap<String, Datum>,
    link_cone: BTreeMap<(String, String), Datum>,
}

impl StratifiedSpace {
    pub fn new(name: impl Into<String>) -> Self {
        StratifiedSpace { name: name.into(), ..Default::default() }
    }

    pub fn add_stratum(&mut self, stratum: Stratum) -> &mut Self {
        self.strata.push(stratum);
        self
    }

    /// Records `lower < upper`; the transitive closure is taken on use.
    pub fn add_relation(&mut self, lower: &str, upper: &str) -> &mut Self {
        self.relations.insert((lower.to_string(), upper.to_string()));
        self
    }

    pub fn set_closure(&mut self, id: &str, datum: impl Into<Datum>) -> &mut Self {
        self.ichi_closure.insert(id.to_string(), datum.into());
        self
    }

    pub fn set_link(&mut self, lower: &str, upper: &str, datum: impl Into<Datum>) -> &mut Self {
        self.link_cone.insert((lower.to_string(), upper.to_string()), datum.into());
        self
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.id == id)
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, &str)> {
        self.relations.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }

    pub fn closure(&self, id: &str) -> Option<&Datum> {
        self.ichi_closure.get(id)
    }

    pub fn link(&self, lower: &str, upper: &str) -> Option<&Datum> {
        self.link_cone.get(&(lower.to_string(), upper.to_string()))
    }

    pub fn links(&self) -> impl Iterator<Item = ((&str, &str), &Datum)> {
        self.link_cone.iter().map(|((a, b), d)| ((a.as_str(), b.as_str()), d))
    }

    /// Hodge if every datum is a Hodge class, Chi otherwise.
    pub fn level(&self) -> Level {
        self.ichi_closure
            .values()
            .chain(self.link_cone.values())
            .map(Datum::level)
            .min()
            .unwrap_or(Level::Hodge)
    }

    /// Every violated invariant, plus warnings for unmet hypotheses.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.strata.is_empty() {
            out.push(Diagnostic::error("space has no strata", &[]));
            return out;
        }

        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, s) in self.strata.iter().enumerate() {
            if s.id.is_empty() || s.id.chars().any(|c| c.is_whitespace() || "[]<=#".contains(c)) {
                out.push(Diagnostic::error("stratum id must be a non-empty token", &[&s.id]));
            }
            if index.insert(s.id.as_str(), i).is_some() {
                out.push(Diagnostic::error("duplicate stratum id", &[&s.id]));
            }
        }

        let n = self.strata.len();
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in &self.relations {
            match (index.get(a.as_str()), index.get(b.as_str())) {
                (Some(&i), Some(&j)) => lt[i][j] = true,
                _ => out.push(Diagnostic::error("order mentions unknown stratum", &[a, b])),
            }
        }
        transitive_closure(&mut lt);

        let ids: Vec<&str> = self.strata.iter().map(|s| s.id.as_str()).collect();
        for i in 0..n {
            if lt[i][i] {
                out.push(Diagnostic::error("order is not irreflexive (cycle through stratum)", &[ids[i]]));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && lt[i][j] && self.strata[i].dim >= self.strata[j].dim {
                    out.push(Diagnostic::error("order must decrease dimension", &[ids[i], ids[j]]));
                }
            }
        }

        let maximal: Vec<usize> = (0..n).filter(|&i| !(0..n).any(|j| j != i && lt[i][j])).collect();
        let max_dim = self.strata.iter().map(|s| s.dim).max().unwrap_or(0);
        match maximal.as_slice() {
            [top] => {
                if self.strata[*top].dim != max_dim {
                    out.push(Diagnostic::error("top stratum must have maximal dimension", &[ids[*top]]));
                }
            }
            many => {
                let names: Vec<&str> = many.iter().map(|&i| ids[i]).collect();
                out.push(Diagnostic::error("exactly one maximal stratum is required", &names));
            }
        }

        for i in 0..n {
            for j in 0..n {
                if i != j && lt[i][j] && self.link(ids[i], ids[j]).is_none() {
                    out.push(Diagnostic::error("missing link data", &[ids[i], ids[j]]));
                }
            }
        }
        for (a, b) in self.link_cone.keys() {
            let comparable = matches!(
                (index.get(a.as_str()), index.get(b.as_str())),
                (Some(&i), Some(&j)) if i != j && lt[i][j]
            );
            if !comparable {
                out.push(Diagnostic::error("link data for a non-comparable pair", &[a, b]));
            }
        }

        for s in &self.strata {
            if !self.ichi_closure.contains_key(&s.id) {
                out.push(Diagnostic::error("missing closure data", &[&s.id]));
            }
        }
        for id in self.ichi_closure.keys() {
            if !index.contains_key(id.as_str()) {
                out.push(Diagnostic::error("closure data for unknown stratum", &[id]));
            }
        }

        let levels: BTreeSet<Level> = self
            .ichi_closure
            .values()
            .chain(self.link_cone.values())
            .map(Datum::level)
            .collect();
        if levels.len() > 1 {
            out.push(Diagnostic::error(
                "mixed Hodge-level and chi-level data; genus-only mode needs chi data everywhere",
                &[],
            ));
        }

        for ((a, b), d) in &self.link_cone {
            let smooth = self.stratum(b).is_some_and(|s| s.smooth_closure);
            if smooth && d.chi_y().constant_term() != num_traits::One::one() {
                out.push(Diagnostic::error(
                    "link class into a smooth closure must have constant term 1",
                    &[a, b],
                ));
            }
        }

        if !self.monodromy_ok {
            for s in self.strata.iter().filter(|s| !s.simply_connected) {
                out.push(Diagnostic::warning(
                    "stratum is not simply connected; results assume trivial monodromy",
                    &[&s.id],
                ));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        !self.diagnostics().iter().any(Diagnostic::is_error)
    }

    pub fn warnings(&self) -> Vec<Diagnostic> {
        self.diagnostics().into_iter().filter(|d| !d.is_error()).collect()
    }

    /// Indexed, topologically sorted view of a valid space.
    pub fn poset(&self) -> Result<Poset> {
        let diagnostics = self.diagnostics();
        if diagnostics.iter().any(Diagnostic::is_error) {
            return Err(Error::InvalidSpace(diagnostics.into_iter().filter(Diagnostic::is_error).collect()));
        }
        let mut order: Vec<&Stratum> = self.strata.iter().collect();
        order.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.id.cmp(&b.id)));
        let ids: Vec<String> = order.iter().map(|s| s.id.clone()).collect();
        let dims: Vec<u32> = order.iter().map(|s| s.dim).collect();
        let index: HashMap<String, usize> = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = ids.len();
        let mut lt = vec![vec![false; n]; n];
        for (a, b) in &self.relations {
            lt[index[a]][index[b]] = true;
        }
        transitive_closure(&mut lt);
        Ok(Poset { ids, dims, index, lt, top: n - 1 })
    }

    /// Restriction to the closure of `id`: the strata `W <= id` with their
    /// data.
    pub fn closure_subspace(&self, id: &str) -> Result<StratifiedSpace> {
        let poset = self.poset()?;
        let v = poset.index_of(id).ok_or_else(|| Error::MissingData { what: "stratum", id: id.to_string() })?;
        let keep: BTreeSet<&str> = (0..poset.len()).filter(|&w| poset.le(w, v)).map(|w| poset.id(w)).collect();
        let mut sub = StratifiedSpace::new(format!("{}:closure({id})", self.name));
        sub.monodromy_ok = self.monodromy_ok;
        for s in self.strata.iter().filter(|s| keep.contains(s.id.as_str())) {
            sub.add_stratum(s.clone());
        }
        for (a, b) in self.relations() {
            if keep.contains(a) && keep.contains(b) {
                sub.add_relation(a, b);
            }
        }
        for (w, d) in &self.ichi_closure {
            if keep.contains(w.as_str()) {
                sub.set_closure(w, d.clone());
            }
        }
        for ((a, b), d) in &self.link_cone {
            if keep.contains(a.as_str()) && keep.contains(b.as_str()) {
                sub.set_link(a, b, d.clone());
            }
        }
        Ok(sub)
    }
}

fn transitive_closure(lt: &mut [Vec<bool>]) {
    let n = lt.len();
    for k in 0..n {
        for i in 0..n {
            if lt[i][k] {
                let above = lt[k].clone();
                for (slot, &b) in lt[i].iter_mut().zip(&above) {
                    *slot |= b;
                }
            }
        }
    }
}

/// Strata of a valid space in ascending (dimension, id) order with the
/// strict order relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    ids: Vec<String>,
    dims: Vec<u32>,
    index: HashMap<String, usize>,
    lt: Vec<Vec<bool>>,
    top: usize,
}

impl Poset {
    /// Builds a poset directly from ids in a linear extension of the order.
    /// The relation is closed transitively; callers guarantee `lt[i][j]`
    /// implies `i < j`.
    pub fn from_relation(ids: Vec<String>, mut lt: Vec<Vec<bool>>) -> Self {
        transitive_closure(&mut lt);
        let n = ids.len();
        debug_assert!((0..n).all(|i| (0..=i).all(|j| !lt[i][j])));
        let index = ids.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Poset { dims: (0..n as u32).collect(), ids, index, lt, top: n.saturating_sub(1) }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn dim(&self, i: usize) -> u32 {
        self.dims[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt[a][b]
    }

    /// The unique maximal stratum.
    pub fn top(&self) -> usize {
        self.top
    }

    /// Strata strictly below `v`, in topological order.
    pub fn below(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..v).filter(move |&w| self.lt[w][v])
    }

    /// All strata except the top one, in topological order.
    pub fn lower_strata(&self) -> impl Iterator<Item = usize> {
        0..self.top
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    fn two_strata() -> StratifiedSpace {
        let mut s = StratifiedSpace::new("blowup");
        s.add_stratum(Stratum::new("S", 2).smooth())
            .add_stratum(Stratum::new("p", 0).smooth())
            .add_relation("p", "S")
            .set_closure("S", HodgeClass::projective_space(2))
            .set_closure("p", HodgeClass::tate(0))
            .set_link("p", "S", HodgeClass::tate(0));
        s
    }

    fn errors(s: &StratifiedSpace) -> Vec<String> {
        s.diagnostics().into_iter().filter(Diagnostic::is_error).map(|d| d.message).collect()
    }

    #[test]
    fn single_stratum_is_valid() {
        let mut s = StratifiedSpace::new("pt");
        s.add_stratum(Stratum::new("S", 0)).set_closure("S", HodgeClass::tate(0));
        assert!(s.diagnostics().is_empty());
        let p = s.poset().unwrap();
        assert_eq!(p.top(), 0);
        assert_eq!(p.lower_strata().count(), 0);
    }

    #[test]
    fn order_must_decrease_dimension() {
        let mut s = StratifiedSpace::new("bad");
        s.add_stratum(Stratum::new("S", 1))
            .add_stratum(Stratum::new("W", 1))
            .add_relation("W", "S")
            .set_closure("S", HodgeClass::tate(0))
            .set_closure("W", HodgeClass::tate(0))
            .set_link("W", "S", HodgeClass::tate(0));
        assert!(errors(&s).contains(&"order must decrease dimension".to_string()));
    }

    #[test]
    fn missing_link_is_reported() {
        let mut s = two_strata();
        s.link_cone.clear();
        let d = s.diagnostics();
        let missing = d.iter().find(|d| d.message == "missing link data").unwrap();
        assert_eq!(missing.ids, vec!["p".to_string(), "S".to_string()]);
        assert!(s.poset().is_err());
    }

    #[test]
    fn structural_violations() {
        let mut s = two_strata();
        s.add_stratum(Stratum::new("T", 2)).set_closure("T", HodgeClass::tate(0));
        assert!(errors(&s).contains(&"exactly one maximal stratum is required".to_string()));

        let mut s = two_strata();
        s.add_relation("S", "p");
        let e = errors(&s);
        assert!(e.iter().any(|m| m.starts_with("order is not irreflexive")));

        let mut s = two_strata();
        s.set_closure("p", LaurentPoly::one());
        assert!(errors(&s).iter().any(|m| m.starts_with("mixed Hodge-level")));

        let mut s = two_strata();
        s.set_link("p", "S", HodgeClass::from_entries([((0, 0), 2)]));
        assert!(errors(&s).iter().any(|m| m.starts_with("link class into a smooth closure")));

        let mut s = two_strata();
        s.add_relation("p", "q");
        assert!(errors(&s).contains(&"order mentions unknown stratum".to_string()));
    }

    #[test]
    fn monodromy_warning_and_override() {
        let mut s = two_strata();
        s.strata[1].simply_connected = false;
        let w = s.warnings();
        assert_eq!(w.len(), 1);
        assert!(s.is_valid());
        s.monodromy_ok = true;
        assert!(s.warnings().is_empty());
    }

    #[test]
    fn topological_order_is_dimension_then_id() {
        let mut s = StratifiedSpace::new("chain");
        s.add_stratum(Stratum::new("S", 2))
            .add_stratum(Stratum::new("b", 0))
            .add_stratum(Stratum::new("a", 0))
            .add_stratum(Stratum::new("C", 1))
            .add_relation("a", "C")
            .add_relation("C", "S")
            .add_relation("b", "S");
        for id in ["S", "a", "b", "C"] {
            s.set_closure(id, HodgeClass::tate(0));
        }
        for (a, b) in [("a", "C"), ("C", "S"), ("b", "S"), ("a", "S")] {
            s.set_link(a, b, HodgeClass::tate(0));
        }
        let p = s.poset().unwrap();
        assert_eq!(p.ids(), &["a", "b", "C", "S"]);
        assert!(p.lt(0, 3), "transitive closure a < S");
        assert!(!p.lt(1, 2));
    }
}
