//! Command-line front end. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classes::{
    cap_and_degree, classes_to_text, parse_classes, pushforward_ity, pushforward_ty, smooth_blowup_class, ty_class,
    ty_projective, BundleRoots, GradedClass,
};
use crate::error::{Error, Result};
use crate::genus::{pushforward, pushforward_ichi, FiberMode, StratifiedMapData};
use crate::hodge::HodgeClass;
use crate::oracle;
use crate::ring::{parse_rational, BiLaurentPoly, LaurentPoly, Rational};
use crate::strata::{decompose, parse_stalks, reconstruct_m_e, stalk_map, stalks_to_text, StratifiedSpace};
use crate::toric::{ec_from_fan, standard_space, Fan};

#[derive(Parser, Debug)]
#[command(name = "ihgenera", version, about = "Hodge-theoretic genera and characteristic classes of stratified maps")]
struct Cli {
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a stratified-space file and list violations
    Validate { space: PathBuf },
    /// chi_y genus of the source of a stratified map
    Genus(GenusArgs),
    /// Intersection cohomology genus of the source of a stratified map
    Igenus(GenusArgs),
    /// Coefficients of a stalk assignment on the intersection-complex basis
    Decompose {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        stalks: PathBuf,
    },
    /// Characteristic classes
    #[command(subcommand)]
    Class(ClassCommand),
    /// Toric varieties
    #[command(subcommand)]
    Toric(ToricCommand),
    /// Reference checks
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args, Debug)]
struct GenusArgs {
    #[arg(long)]
    map: PathBuf,
    /// `y=<rational>`, or `u=<rational>,v=<rational>` with --e-poly
    #[arg(long)]
    eval: Option<String>,
    #[arg(long, value_enum, default_value_t = LevelArg::Chi)]
    level: LevelArg,
    /// Print the E-polynomial in u, v instead of chi_y
    #[arg(long)]
    e_poly: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum LevelArg {
    Hodge,
    Chi,
}

#[derive(Subcommand, Debug)]
enum ClassCommand {
    /// T_y of projective space or a product of projective spaces
    Ty {
        #[arg(long, conflicts_with = "product")]
        pn: Option<u32>,
        /// Comma-separated dimensions, e.g. `1,2`
        #[arg(long, value_delimiter = ',')]
        product: Option<Vec<u32>>,
    },
    /// Push-forward of IT_y (or T_y with --chi) along a stratified map
    Pushforward {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        classes: PathBuf,
        /// Use fibers over strata instead of cone preimages
        #[arg(long)]
        chi: bool,
    },
    /// T_y of a blow-up along a smooth center
    Blowup {
        /// Blow up P^n along a linear subspace
        #[arg(long, requires = "center", conflicts_with = "classes")]
        pn: Option<u32>,
        /// Dimension of the linear center
        #[arg(long)]
        center: Option<u32>,
        /// Classes file with entries `Y` and `Z`
        #[arg(long, requires = "r")]
        classes: Option<PathBuf>,
        /// Codimension of the center minus one
        #[arg(long)]
        r: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum ToricCommand {
    /// E-polynomial of a fan's orbit decomposition
    Ec {
        #[arg(long)]
        fan: PathBuf,
    },
    /// Write the files of a standard example
    Build {
        kind: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// Directory to write into; prints to standard output otherwise
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Run every reference check
    RunAll,
}

/// Result of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    json: bool,
    out: String,
    err: String,
    code: i32,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.out.push_str(s.as_ref());
        self.out.push('\n');
    }

    fn warn(&mut self, s: impl AsRef<str>) {
        self.err.push_str(s.as_ref());
        self.err.push('\n');
    }

    fn value(&mut self, v: Value) {
        self.line(v.to_string());
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: 1, stdout: String::new(), stderr: text },
            };
        }
    };
    let mut o = Output { json: cli.json, out: String::new(), err: String::new(), code: 0 };
    if let Err(e) = dispatch(cli.command, &mut o) {
        o.code = e.exit_code();
        if o.json {
            o.err.push_str(&json!({ "error": e.to_string(), "exit_code": o.code }).to_string());
            o.err.push('\n');
        } else {
            o.err.push_str(&format!("error: {e}\n"));
        }
    }
    Outcome { code: o.code, stdout: o.out, stderr: o.err }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })
}

fn read_space(path: &Path) -> Result<StratifiedSpace> {
    read(path)?.parse()
}

/// Reads a map file; the `space` entry is resolved relative to it.
fn read_map(path: &Path) -> Result<StratifiedMapData> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    StratifiedMapData::parse_with(&read(path)?, |p| read(&dir.join(p)))
}

fn report_warnings(space: &StratifiedSpace, o: &mut Output) {
    for w in space.warnings() {
        o.warn(w.to_string());
    }
}

fn dispatch(command: Command, o: &mut Output) -> Result<()> {
    match command {
        Command::Validate { space } => validate(&space, o),
        Command::Genus(args) => genus(&args, FiberMode::Fibers, o),
        Command::Igenus(args) => genus(&args, FiberMode::ConePreimages, o),
        Command::Decompose { space, stalks } => decompose_cmd(&space, &stalks, o),
        Command::Class(c) => class(c, o),
        Command::Toric(c) => toric(c, o),
        Command::Oracle(OracleCommand::RunAll) => oracle_run_all(o),
    }
}

fn validate(path: &Path, o: &mut Output) -> Result<()> {
    let space = read_space(path)?;
    let diagnostics = space.diagnostics();
    let errors: Vec<_> = diagnostics.iter().filter(|d| d.is_error()).collect();
    if o.json {
        let list: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
        o.value(json!({ "space": space.name, "valid": errors.is_empty(), "diagnostics": list }));
    } else if errors.is_empty() {
        o.line(format!("{}: valid", space.name));
    }
    if !o.json {
        for d in &diagnostics {
            o.warn(d.to_string());
        }
    }
    if !errors.is_empty() {
        o.code = 1;
    }
    Ok(())
}

fn parse_value(s: &str) -> Result<Rational> {
    Ok(parse_rational(s.trim())?)
}

fn eval_assignments(spec: &str) -> Result<BTreeMap<String, Rational>> {
    let mut out = BTreeMap::new();
    for part in spec.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameter(format!("expected `var=value` in `{spec}`")))?;
        out.insert(k.trim().to_string(), parse_value(v)?);
    }
    Ok(out)
}

fn lookup_var(vars: &BTreeMap<String, Rational>, name: &str, spec: &str) -> Result<Rational> {
    vars.get(name).cloned().ok_or_else(|| Error::InvalidParameter(format!("`--eval {spec}` does not set `{name}`")))
}

fn check_vars(vars: &BTreeMap<String, Rational>, allowed: &[&str], spec: &str) -> Result<()> {
    match vars.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(Error::InvalidParameter(format!("unknown variable `{k}` in `--eval {spec}`"))),
        None => Ok(()),
    }
}

fn pole(what: &str) -> Error {
    Error::InvalidParameter(format!("{what} has a pole at the requested point"))
}

fn genus(args: &GenusArgs, mode: FiberMode, o: &mut Output) -> Result<()> {
    let map = read_map(&args.map)?;
    report_warnings(&map.space, o);
    if mode == FiberMode::ConePreimages {
        // reports missing cone data with the genus-level message
        pushforward_ichi(&map)?;
    }
    let (chi_name, e_name) = match mode {
        FiberMode::Fibers => ("chi_y(X)", "E(X)"),
        FiberMode::ConePreimages => ("Ichi_y(X)", "IE(X)"),
    };
    let hodge = match args.level {
        LevelArg::Hodge => Some(pushforward::<HodgeClass>(&map, mode)?),
        LevelArg::Chi => None,
    };
    let mut record = serde_json::Map::new();
    if let Some(h) = &hodge {
        record.insert("class".into(), json!(h.to_string()));
        let name = if mode == FiberMode::Fibers { "H(X)" } else { "IH(X)" };
        o.line(format!("{name} = {h}"));
    }
    if args.e_poly {
        let e = match &hodge {
            Some(h) => h.e_poly(),
            None => pushforward::<BiLaurentPoly>(&map, mode)?,
        };
        record.insert("genus".into(), json!(e_name));
        record.insert("value".into(), json!(e.to_string()));
        o.line(format!("{e_name} = {e}"));
        if let Some(spec) = &args.eval {
            let vars = eval_assignments(spec)?;
            check_vars(&vars, &["u", "v"], spec)?;
            let value = e.eval(&lookup_var(&vars, "u", spec)?, &lookup_var(&vars, "v", spec)?).ok_or_else(|| pole(e_name))?;
            o.line(format!("{e_name} at {spec} = {value}"));
            record.insert("eval".into(), json!({ "at": spec, "value": value.to_string() }));
        }
    } else {
        let chi = match &hodge {
            Some(h) => h.chi_y(),
            None => pushforward::<LaurentPoly>(&map, mode)?,
        };
        record.insert("genus".into(), json!(chi_name));
        record.insert("value".into(), json!(chi.to_string()));
        o.line(format!("{chi_name} = {chi}"));
        if let Some(spec) = &args.eval {
            let vars = eval_assignments(spec)?;
            check_vars(&vars, &["y"], spec)?;
            let value = chi.eval(&lookup_var(&vars, "y", spec)?).ok_or_else(|| pole(chi_name))?;
            o.line(format!("{chi_name} at {spec} = {value}"));
            record.insert("eval".into(), json!({ "at": spec, "value": value.to_string() }));
        }
    }
    if o.json {
        o.out.clear();
        o.value(Value::Object(record));
    }
    Ok(())
}

fn decompose_cmd(space: &Path, stalks: &Path, o: &mut Output) -> Result<()> {
    let space = read_space(space)?;
    report_warnings(&space, o);
    let stalks = parse_stalks(&read(stalks)?)?;
    let coefficients = decompose(&space, &stalks)?;
    let reconstructed = reconstruct_m_e(&space, &stalks)?;
    let round_trip = stalk_map(&space, &coefficients)?;
    let consistent = reconstructed == coefficients && round_trip == stalks;
    let poset = space.poset()?;
    if o.json {
        let coeffs: serde_json::Map<String, Value> =
            poset.ids().iter().map(|id| (id.clone(), json!(coefficients.coeff(id).to_string()))).collect();
        o.value(json!({ "coefficients": coeffs, "reconstruction": consistent }));
    } else {
        for id in poset.ids() {
            o.line(format!("L({id}) = {}", coefficients.coeff(id)));
        }
        o.line(format!("reconstruction: {}", if consistent { "ok" } else { "FAILED" }));
    }
    if !consistent {
        o.warn(format!("stalks of the decomposition:\n{}", stalks_to_text(&round_trip)));
        o.code = 2;
    }
    Ok(())
}

fn graded_json(g: &GradedClass) -> Value {
    let components: serde_json::Map<String, Value> =
        (0..=g.dim()).rev().map(|k| (k.to_string(), json!(g.component(k).to_string()))).collect();
    json!({ "dim": g.dim(), "components": components })
}

fn print_graded(name: &str, g: &GradedClass, o: &mut Output) -> Result<()> {
    let degree = g.degree()?;
    if o.json {
        let mut v = graded_json(g);
        v["class"] = json!(name);
        v["degree"] = json!(degree.to_string());
        o.value(v);
    } else {
        o.out.push_str(&g.to_string());
        o.line(format!("degree = {degree}"));
    }
    Ok(())
}

fn class(c: ClassCommand, o: &mut Output) -> Result<()> {
    match c {
        ClassCommand::Ty { pn: Some(n), .. } => print_graded(&format!("T_y(P{n})"), &ty_projective(n), o),
        ClassCommand::Ty { product: Some(dims), .. } => {
            if dims.is_empty() {
                return Err(Error::InvalidParameter("--product needs at least one dimension".into()));
            }
            let (ring, roots) = BundleRoots::projective_product(&dims)?;
            let t = ty_class(&roots, &ring)?;
            let degree = cap_and_degree(&t, ring.dim())?;
            if o.json {
                o.value(json!({ "class": "T_y", "dims": dims, "cohomology": t.to_string(), "degree": degree.to_string() }));
            } else {
                o.line(format!("T_y = {t}"));
                o.line(format!("degree = {degree}"));
            }
            Ok(())
        }
        ClassCommand::Ty { .. } => Err(Error::InvalidParameter("give --pn <n> or --product <a,b,...>".into())),
        ClassCommand::Pushforward { map, classes, chi } => {
            let m = read_map(&map)?;
            report_warnings(&m.space, o);
            let classes = parse_classes(&read(&classes)?)?;
            if chi {
                print_graded("f_*T_y(X)", &pushforward_ty(&m, &classes)?, o)
            } else {
                print_graded("f_*IT_y(X)", &pushforward_ity(&m, &classes)?, o)
            }
        }
        ClassCommand::Blowup { pn: Some(n), center, .. } => {
            let m = center.ok_or_else(|| Error::InvalidParameter("--pn needs --center".into()))?;
            if m >= n {
                return Err(Error::InvalidParameter(format!("the center P{m} must be smaller than P{n}")));
            }
            let ty_z = ty_projective(m).push_linear(n)?;
            print_graded("f_*T_y(X)", &smooth_blowup_class(&ty_projective(n), &ty_z, n - m - 1)?, o)
        }
        ClassCommand::Blowup { classes: Some(path), r, .. } => {
            let classes = parse_classes(&read(&path)?)?;
            let get = |id: &str| {
                classes.get(id).ok_or_else(|| Error::MissingData { what: "class", id: id.to_string() })
            };
            let r = r.ok_or_else(|| Error::InvalidParameter("--classes needs --r".into()))?;
            print_graded("f_*T_y(X)", &smooth_blowup_class(get("Y")?, get("Z")?, r)?, o)
        }
        ClassCommand::Blowup { .. } => {
            Err(Error::InvalidParameter("give --pn <n> --center <m>, or --classes <file> --r <r>".into()))
        }
    }
}

fn toric(c: ToricCommand, o: &mut Output) -> Result<()> {
    match c {
        ToricCommand::Ec { fan } => {
            let fan: Fan = read(&fan)?.parse()?;
            let e = ec_from_fan(&fan)?;
            if o.json {
                o.value(json!({ "ec": e.to_string(), "chi_y": e.specialize_uv().to_string() }));
            } else {
                o.line(e.to_string());
            }
            Ok(())
        }
        ToricCommand::Build { kind, params, out } => {
            let ex = standard_space(&kind, &params)?;
            let stem = if params.is_empty() {
                kind.clone()
            } else {
                format!("{kind}_{}", params.iter().map(i64::to_string).collect::<Vec<_>>().join("_"))
            };
            let mut files = vec![
                (format!("{stem}.strat"), ex.space().to_file_text()),
                (format!("{stem}.map"), ex.map.to_file_text(&format!("{stem}.strat"))),
            ];
            if let Some(classes) = &ex.classes {
                files.push((format!("{stem}.classes"), classes_to_text(classes)?));
            }
            if let Some(fan) = &ex.fan {
                files.push((format!("{stem}.fan"), fan.to_file_text()));
            }
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)
                        .map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
                    let mut written = Vec::new();
                    for (name, text) in &files {
                        let path = dir.join(name);
                        std::fs::write(&path, text)
                            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
                        written.push(path.display().to_string());
                    }
                    if o.json {
                        o.value(json!({ "kind": kind, "written": written }));
                    } else {
                        for w in written {
                            o.line(format!("wrote {w}"));
                        }
                    }
                }
                None if o.json => {
                    let map: serde_json::Map<String, Value> =
                        files.into_iter().map(|(n, t)| (n, Value::String(t))).collect();
                    o.value(json!({ "kind": kind, "files": map }));
                }
                None => {
                    for (name, text) in files {
                        o.line(format!("==> {name} <=="));
                        o.out.push_str(&text);
                    }
                }
            }
            Ok(())
        }
    }
}

fn oracle_run_all(o: &mut Output) -> Result<()> {
    let outcomes = oracle::run_all();
    let passed = outcomes.iter().filter(|c| c.passed).count();
    if o.json {
        let cases: Vec<Value> =
            outcomes.iter().map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail })).collect();
        o.value(json!({ "passed": passed, "total": outcomes.len(), "cases": cases }));
    } else {
        for c in &outcomes {
            if c.passed {
                o.line(format!("PASS  {}", c.name));
            } else {
                o.line(format!("FAIL  {}: {}", c.name, c.detail));
            }
        }
        o.line(format!("{passed}/{} checks passed", outcomes.len()));
    }
    if passed != outcomes.len() {
        o.code = 2;
    }
    Ok(())
}
