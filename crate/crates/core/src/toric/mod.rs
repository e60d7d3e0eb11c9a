//! Fans of toric varieties and the E-polynomials of their orbit
//! decompositions: the orbit of a cone `sigma` is a torus of dimension
//! `d - dim sigma`, with compactly supported E-polynomial `(uv - 1)^{d - dim sigma}`.

mod examples;

pub use examples::{standard_space, StandardExample, STANDARD_KINDS};

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{BiLaurentPoly, Ring};
use crate::text::sections;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub id: String,
    pub dim: u32,
    /// Indices into the fan's rays, when known.
    pub rays: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: u32,
    cones: Vec<Cone>,
    rays: Vec<Vec<i64>>,
}

fn cone_id(rays: &[usize]) -> String {
    if rays.is_empty() {
        "0".into()
    } else {
        rays.iter().map(|r| format!("r{r}")).collect::<Vec<_>>().join("_")
    }
}

impl Fan {
    pub fn new(dim: u32) -> Self {
        Fan { dim, cones: Vec::new(), rays: Vec::new() }
    }

    pub fn add_cone(&mut self, id: impl Into<String>, dim: u32) -> &mut Self {
        self.cones.push(Cone { id: id.into(), dim, rays: None });
        self
    }

    /// Fan whose cones are spanned by the given subsets of `rays`, with the
    /// dimension of each cone equal to its number of rays.
    pub fn from_rays(dim: u32, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Self {
        let cones = cones
            .into_iter()
            .map(|c| Cone { id: cone_id(&c), dim: c.len() as u32, rays: Some(c) })
            .collect();
        Fan { dim, cones, rays }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    /// Number of cones of each dimension `0..=d`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim as usize + 1];
        for c in &self.cones {
            if let Some(slot) = out.get_mut(c.dim as usize) {
                *slot += 1;
            }
        }
        out
    }

    /// Cones of the top dimension.
    pub fn maximal_cones(&self) -> usize {
        self.counts_by_dim()[self.dim as usize]
    }

    pub fn validate(&self) -> Result<()> {
        let zero_cones = self.cones.iter().filter(|c| c.dim == 0).count();
        if zero_cones != 1 {
            return Err(Error::InvalidFan(format!("expected exactly one zero-dimensional cone, found {zero_cones}")));
        }
        let mut ids = BTreeSet::new();
        for c in &self.cones {
            if c.dim > self.dim {
                return Err(Error::InvalidFan(format!(
                    "cone `{}` has dimension {} > {}",
                    c.id, c.dim, self.dim
                )));
            }
            if !ids.insert(c.id.as_str()) {
                return Err(Error::InvalidFan(format!("duplicate cone id `{}`", c.id)));
            }
            if let Some(rays) = &c.rays {
                if rays.iter().any(|&r| r >= self.rays.len()) {
                    return Err(Error::InvalidFan(format!("cone `{}` refers to an unknown ray", c.id)));
                }
            }
        }
        Ok(())
    }

    /// Standard fan of `P^n`: rays `e_1, ..., e_n, -(e_1 + ... + e_n)`, one
    /// cone for every subset of at most `n` rays.
    pub fn projective_space(n: u32) -> Result<Fan> {
        if n == 0 {
            return Err(Error::InvalidParameter("projective space needs n >= 1".into()));
        }
        let n = n as usize;
        let mut rays: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        rays.push(vec![-1; n]);
        let mut cones = Vec::new();
        for mask in 0u64..(1 << (n + 1)) {
            if (mask.count_ones() as usize) <= n {
                cones.push((0..=n).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>());
            }
        }
        cones.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(Fan::from_rays(n as u32, rays, cones))
    }

    /// Hirzebruch surface `F_a`: rays `(1,0), (0,1), (-1,a), (0,-1)`.
    pub fn hirzebruch_surface(a: i64) -> Fan {
        let rays = vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]];
        let mut cones = vec![vec![]];
        cones.extend((0..4).map(|i| vec![i]));
        cones.extend([vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]);
        Fan::from_rays(2, rays, cones)
    }

    /// Product fan: cones `sigma x tau` of dimension `dim sigma + dim tau`.
    pub fn product(&self, other: &Fan) -> Fan {
        let offset = self.rays.len();
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().copied().chain(std::iter::repeat_n(0, other.dim as usize)).collect())
            .chain(other.rays.iter().map(|r| std::iter::repeat_n(0, self.dim as usize).chain(r.iter().copied()).collect()))
            .collect();
        let mut cones = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                let dim = a.dim + b.dim;
                let cone = match (&a.rays, &b.rays) {
                    (Some(ra), Some(rb)) => {
                        let r: Vec<usize> = ra.iter().copied().chain(rb.iter().map(|r| r + offset)).collect();
                        Cone { id: cone_id(&r), dim, rays: Some(r) }
                    }
                    _ => Cone { id: format!("{}.{}", a.id, b.id), dim, rays: None },
                };
                cones.push(cone);
            }
        }
        cones.sort_by_key(|c| c.dim);
        Fan { dim: self.dim + other.dim, cones, rays }
    }

    /// `[fan] dim = d` followed by `cone <id> dim=<k>` lines.
    pub fn to_file_text(&self) -> String {
        let mut out = format!("[fan]\ndim = {}\n", self.dim);
        for (i, r) in self.rays.iter().enumerate() {
            let coords: Vec<String> = r.iter().map(i64::to_string).collect();
            let _ = writeln!(out, "# ray r{i} = ({})", coords.join(", "));
        }
        for c in &self.cones {
            let _ = writeln!(out, "cone {} dim={}", c.id, c.dim);
        }
        out
    }
}

impl FromStr for Fan {
    type Err = Error;

    fn from_str(input: &str) -> Result<Fan> {
        let mut fan: Option<Fan> = None;
        for section in sections(input)? {
            if section.name != "fan" {
                return Err(section.header.error(format!("unknown section [{}]", section.name)));
            }
            section.arity(0)?;
            for line in &section.lines {
                if let Some(rest) = line.text.strip_prefix("cone ") {
                    let f = fan.as_mut().ok_or_else(|| line.error("cone listed before `dim`"))?;
                    let mut parts = rest.split_whitespace();
                    let (id, dim) = match (parts.next(), parts.next(), parts.next()) {
                        (Some(id), Some(dim), None) => (id, dim),
                        _ => return Err(line.error("expected `cone <id> dim=<k>`")),
                    };
                    let k = dim
                        .strip_prefix("dim=")
                        .and_then(|k| k.parse::<u32>().ok())
                        .ok_or_else(|| line.error(format!("bad cone dimension `{dim}`")))?;
                    f.add_cone(id, k);
                } else {
                    match line.key_value()? {
                        ("dim", v) => {
                            if fan.is_some() {
                                return Err(line.error("duplicate `dim`"));
                            }
                            let d = v.parse().map_err(|_| line.error(format!("bad dimension `{v}`")))?;
                            fan = Some(Fan::new(d));
                        }
                        (k, _) => return Err(line.error(format!("unknown key `{k}` in [fan]"))),
                    }
                }
            }
        }
        fan.ok_or_else(|| Error::Syntax { line: 1, message: "missing [fan] header with `dim`".into() })
    }
}

/// `E_c = sum_sigma (uv - 1)^{d - dim sigma}`.
pub fn ec_from_fan(f: &Fan) -> Result<BiLaurentPoly> {
    f.validate()?;
    let torus = BiLaurentPoly::uv() - BiLaurentPoly::one();
    Ok(f.cones.iter().fold(BiLaurentPoly::zero(), |acc, c| acc + torus.pow(f.dim - c.dim)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> BiLaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn small_fans() {
        let p1 = Fan::projective_space(1).unwrap();
        assert_eq!(p1.counts_by_dim(), vec![1, 2]);
        assert_eq!(ec_from_fan(&p1).unwrap(), e("u*v + 1"));
        let p2 = Fan::projective_space(2).unwrap();
        assert_eq!(p2.counts_by_dim(), vec![1, 3, 3]);
        assert_eq!(ec_from_fan(&p2).unwrap().to_string(), "u^2*v^2 + u*v + 1");
        let mut line = Fan::new(1);
        line.add_cone("0", 0).add_cone("r0", 1);
        assert_eq!(ec_from_fan(&line).unwrap(), BiLaurentPoly::uv());
    }

    #[test]
    fn surfaces() {
        let square = e("u*v + 1").pow(2);
        let q = Fan::projective_space(1).unwrap().product(&Fan::projective_space(1).unwrap());
        assert_eq!(q.counts_by_dim(), vec![1, 4, 4]);
        assert_eq!(ec_from_fan(&q).unwrap(), square);
        for a in -3..=5 {
            let f = Fan::hirzebruch_surface(a);
            assert_eq!(f.counts_by_dim(), vec![1, 4, 4]);
            assert_eq!(ec_from_fan(&f).unwrap(), square);
        }
    }

    #[test]
    fn invalid_fans() {
        let mut f = Fan::new(1);
        f.add_cone("a", 1);
        assert!(matches!(ec_from_fan(&f), Err(Error::InvalidFan(_))));
        f.add_cone("0", 0).add_cone("b", 2);
        assert!(ec_from_fan(&f).is_err());
        let mut g = Fan::new(1);
        g.add_cone("0", 0).add_cone("0", 1);
        assert!(g.validate().is_err());
        assert!(Fan::projective_space(0).is_err());
    }

    #[test]
    fn file_round_trip() {
        let f = Fan::projective_space(2).unwrap();
        let parsed: Fan = f.to_file_text().parse().unwrap();
        assert_eq!(parsed.counts_by_dim(), f.counts_by_dim());
        assert_eq!(ec_from_fan(&parsed).unwrap(), ec_from_fan(&f).unwrap());
        assert!("[fan]\ncone 0 dim=0\n".parse::<Fan>().is_err());
        assert!("[fan]\ndim = 1\ncone 0 0\n".parse::<Fan>().is_err());
    }
}
