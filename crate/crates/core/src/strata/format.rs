//! Text format for stratified spaces and stalk assignments.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hodge::HodgeClass;
use crate::ring::LaurentPoly;
use crate::text::{parse_bool, sections, Line};

use super::{Datum, StratifiedSpace, Stratum};

/// Parses `class = <HodgeClass>` or `chi = <LaurentPoly>` style values.
pub(crate) fn parse_datum(line: &Line, key: &str, value: &str, hodge_key: &str, chi_key: &str) -> Result<Option<Datum>> {
    if key == hodge_key {
        let h: HodgeClass = value.parse().map_err(|e| line.context(e))?;
        Ok(Some(Datum::Hodge(h)))
    } else if key == chi_key {
        let p: LaurentPoly = value.parse().map_err(|e| line.context(e))?;
        Ok(Some(Datum::Chi(p)))
    } else {
        Ok(None)
    }
}

pub(crate) fn write_datum(out: &mut String, hodge_key: &str, chi_key: &str, d: &Datum) {
    match d {
        Datum::Hodge(h) => writeln!(out, "{hodge_key} = {h}"),
        Datum::Chi(p) => writeln!(out, "{chi_key} = {p}"),
    }
    .expect("writing to a String cannot fail");
}

/// Sets `slot` once; a second value for the same key is an error.
fn set_once<T>(line: &Line, slot: &mut Option<T>, value: T, what: &str) -> Result<()> {
    if slot.is_some() {
        return Err(line.error(format!("duplicate {what}")));
    }
    *slot = Some(value);
    Ok(())
}

impl FromStr for StratifiedSpace {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let mut space = StratifiedSpace::default();
        let mut seen_header = false;
        for section in sections(input)? {
            match section.name.as_str() {
                "space" => {
                    section.arity(0)?;
                    seen_header = true;
                    for line in &section.lines {
                        match line.key_value()? {
                            ("name", v) => space.name = v.to_string(),
                            ("monodromy_ok", v) => space.monodromy_ok = parse_bool(line, v)?,
                            (k, _) => return Err(line.error(format!("unknown key `{k}` in [space]"))),
                        }
                    }
                }
                "stratum" => {
                    section.arity(1)?;
                    let id = section.args[0].clone();
                    if space.stratum(&id).is_some() {
                        return Err(section.header.error(format!("duplicate stratum `{id}`")));
                    }
                    let mut dim = None;
                    let mut stratum = Stratum::new(id.clone(), 0);
                    let mut closure = None;
                    for line in &section.lines {
                        let (k, v) = line.key_value()?;
                        if let Some(d) = parse_datum(line, k, v, "ichi_closure", "ichi_closure_chi")? {
                            set_once(line, &mut closure, d, "closure data")?;
                            continue;
                        }
                        match k {
                            "dim" => {
                                let n = v.parse::<u32>().map_err(|_| line.error(format!("bad dimension `{v}`")))?;
                                set_once(line, &mut dim, n, "dim")?;
                            }
                            "simply_connected" => stratum.simply_connected = parse_bool(line, v)?,
                            "smooth_closure" => stratum.smooth_closure = parse_bool(line, v)?,
                            _ => return Err(line.error(format!("unknown key `{k}` in [stratum {id}]"))),
                        }
                    }
                    stratum.dim = dim.ok_or_else(|| section.header.error(format!("stratum `{id}` has no dim")))?;
                    space.add_stratum(stratum);
                    if let Some(d) = closure {
                        space.set_closure(&id, d);
                    }
                }
                "order" => {
                    section.arity(0)?;
                    for line in &section.lines {
                        let (a, b) = line.split_on('<')?;
                        if a.is_empty() || b.is_empty() || b.contains('<') {
                            return Err(line.error("expected `<lower> < <upper>`"));
                        }
                        space.add_relation(a, b);
                    }
                }
                "link" => {
                    section.arity(2)?;
                    let (a, b) = (&section.args[0], &section.args[1]);
                    let mut datum = None;
                    for line in &section.lines {
                        let (k, v) = line.key_value()?;
                        match parse_datum(line, k, v, "class", "chi")? {
                            Some(d) => set_once(line, &mut datum, d, "link class")?,
                            None => return Err(line.error(format!("unknown key `{k}` in [link {a} {b}]"))),
                        }
                    }
                    let datum = datum.ok_or_else(|| section.header.error("link section without class"))?;
                    if space.link(a, b).is_some() {
                        return Err(section.header.error(format!("duplicate link {a} {b}")));
                    }
                    space.set_link(a, b, datum);
                }
                other => return Err(section.header.error(format!("unknown section [{other}]"))),
            }
        }
        if !seen_header {
            return Err(Error::Syntax { line: 1, message: "missing [space] header".into() });
        }
        Ok(space)
    }
}

impl StratifiedSpace {
    /// Canonical file text; parsing it gives back an equal space.
    pub fn to_file_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[space]\nname = {}\nmonodromy_ok = {}", self.name, self.monodromy_ok);
        for s in self.strata() {
            let _ = writeln!(
                out,
                "\n[stratum {}]\ndim = {}\nsimply_connected = {}\nsmooth_closure = {}",
                s.id, s.dim, s.simply_connected, s.smooth_closure
            );
            if let Some(d) = self.closure(&s.id) {
                write_datum(&mut out, "ichi_closure", "ichi_closure_chi", d);
            }
        }
        let relations: Vec<(&str, &str)> = self.relations().collect();
        if !relations.is_empty() {
            out.push_str("\n[order]\n");
            for (a, b) in relations {
                let _ = writeln!(out, "{a} < {b}");
            }
        }
        for ((a, b), d) in self.links() {
            let _ = writeln!(out, "\n[link {a} {b}]");
            write_datum(&mut out, "class", "chi", d);
        }
        out
    }
}

/// Parses a stalks file: optional `[stalks]` header, then
/// `<id> = <HodgeClass>` lines.
pub fn parse_stalks(input: &str) -> Result<BTreeMap<String, HodgeClass>> {
    let wrapped;
    let text = if input.lines().any(|l| l.trim_start().starts_with('[')) {
        input
    } else {
        wrapped = format!("[stalks]\n{input}");
        &wrapped
    };
    let mut out = BTreeMap::new();
    for section in sections(text)? {
        if section.name != "stalks" {
            return Err(section.header.error(format!("unknown section [{}]", section.name)));
        }
        for line in &section.lines {
            let (id, v) = line.key_value()?;
            let h: HodgeClass = v.parse().map_err(|e| line.context(e))?;
            if out.insert(id.to_string(), h).is_some() {
                return Err(line.error(format!("duplicate stalk for `{id}`")));
            }
        }
    }
    Ok(out)
}

pub fn stalks_to_text(stalks: &BTreeMap<String, HodgeClass>) -> String {
    let mut out = String::from("[stalks]\n");
    for (id, h) in stalks {
        let _ = writeln!(out, "{id} = {h}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const BLOWUP: &str = "\
[space]            # header
name = P2 with a marked point
monodromy_ok = false
[stratum S]
dim = 2
simply_connected = true
ichi_closure = 0,0:1; 1,1:1; 2,2:1
[stratum p]
dim = 0
ichi_closure = 0,0:1
[order]
p < S      # one relation per line
[link p S]
class = 0,0:1
";

    #[test]
    fn parses_documented_layout() {
        let s: StratifiedSpace = BLOWUP.parse().unwrap();
        assert_eq!(s.name, "P2 with a marked point");
        assert_eq!(s.strata().len(), 2);
        assert_eq!(s.stratum("p").unwrap().dim, 0);
        assert!(s.stratum("p").unwrap().simply_connected);
        assert_eq!(s.link("p", "S"), Some(&Datum::Hodge(HodgeClass::tate(0))));
        assert!(s.is_valid());
    }

    #[test]
    fn canonical_text_round_trips() {
        let s: StratifiedSpace = BLOWUP.parse().unwrap();
        let again: StratifiedSpace = s.to_file_text().parse().unwrap();
        assert_eq!(s, again);
        assert_eq!(again.to_file_text(), s.to_file_text());
    }

    #[test]
    fn genus_only_keys() {
        let text = "[space]\nname=c\n[stratum S]\ndim=1\nichi_closure_chi = 1 - y\n[stratum n]\ndim=0\nichi_closure_chi=1\n[order]\nn < S\n[link n S]\nchi = 2\n";
        let s: StratifiedSpace = text.parse().unwrap();
        assert_eq!(s.level(), super::super::Level::Chi);
        assert!(s.is_valid());
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = "[space]\n[stratum p]\ndim = x\n".parse::<StratifiedSpace>().unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }), "{err}");
        let err = "[space]\n[bogus]\n".parse::<StratifiedSpace>().unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = "[space]\n[stratum p]\ndim = 0\nichi_closure = 0,0\n".parse::<StratifiedSpace>().unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 4, .. }));
        assert!("[stratum p]\ndim=0\n".parse::<StratifiedSpace>().is_err());
    }

    #[test]
    fn stalks_with_and_without_header() {
        let a = parse_stalks("S = 0,0:1\np = 0,0:1; 1,1:1\n").unwrap();
        let b = parse_stalks(&stalks_to_text(&a)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a["p"], HodgeClass::projective_space(1));
        assert!(parse_stalks("S = 0,0:1\nS = 0,0:2\n").is_err());
    }
}
