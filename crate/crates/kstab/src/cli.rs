//! Argument parsing and dispatch for the `kstab` binary.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::alcove::{locate, path_from_neg, positive_path_element, separating_wall, Alcove};
use crate::cache;
use crate::error::{Error, Result};
use crate::hecke::Composite;
use crate::kclass::KClass;
use crate::rootdata::{CartanType, RootSystem};
use crate::stable::{Polarization, StableEngine, StableSpec};
use crate::text::{parse_alcove, parse_weight};
use crate::verify::{run_suite, SuiteReport, SUITES};

#[derive(Parser, Debug)]
#[command(name = "kstab", version, about = "K-theoretic stable bases of the Springer resolution")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[value(alias = "text")]
    Table,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Pol {
    #[value(name = "TB")]
    Tb,
    #[value(name = "TStarB", alias = "T*B")]
    TStarB,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Restrictions of a stable basis.
    Basis(BasisArgs),
    /// Wall-crossing coefficients between adjacent alcoves.
    Wallcross(WallcrossArgs),
    /// The K-theoretic pairing of two classes.
    Pair(PairArgs),
    /// Applies a composite of operators to a class.
    Apply(ApplyArgs),
    /// Alcove geometry.
    Alcove {
        #[command(subcommand)]
        command: AlcoveCommand,
    },
    /// Runs verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct SpecArgs {
    /// Chamber as a Weyl group word; `e` is the dominant chamber.
    #[arg(long, default_value = "e")]
    pub chamber: String,
    #[arg(long, value_enum, default_value = "TB")]
    pub pol: Pol,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long = "type")]
    pub cartan: String,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub alcove: String,
    /// Only this element; all elements otherwise.
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct WallcrossArgs {
    #[arg(long = "type")]
    pub cartan: String,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long, conflicts_with = "all_y")]
    pub element: Option<String>,
    #[arg(long)]
    pub all_y: bool,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    /// Element to pick when the left file holds a whole basis.
    #[arg(long)]
    pub left_element: Option<String>,
    #[arg(long)]
    pub right_element: Option<String>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    /// Expected type; checked against the input file.
    #[arg(long = "type")]
    pub cartan: Option<String>,
    /// Comma-separated operators, applied right to left.
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub element: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum AlcoveCommand {
    /// Canonical form of the alcove containing a point.
    Locate {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Vertices of the closure of an alcove.
    Vertices {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        alcove: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The wall between two adjacent alcoves.
    Wall {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Positive-path braid element to an alcove, from `--from` or the antidominant alcove.
    Path {
        #[arg(long = "type")]
        cartan: String,
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite name or `all`.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long = "type")]
    pub cartan: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub window: Option<i32>,
    #[arg(long, value_enum, default_value = "table")]
    pub format: Format,
}

/// Captured result of one invocation.
#[derive(Debug, Default)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn parse_and_dispatch<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let start = Instant::now();
    let mut out = match dispatch(&cli.command) {
        Ok((passed, stdout)) => Output {
            code: if passed { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        },
        Err(e) => Output {
            // A malformed flag value is a usage error; everything else is a domain error.
            code: if is_flag_error(&e) { 2 } else { 1 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    };
    out.stderr.push_str(&format!("elapsed: {:.3}s\n", start.elapsed().as_secs_f64()));
    out
}

fn is_flag_error(e: &Error) -> bool {
    matches!(e, Error::Context { context, .. } if context.starts_with("--"))
}

fn cartan(s: &str) -> Result<CartanType> {
    s.parse::<CartanType>().map_err(|e| e.context("--type"))
}

/// Engine for a type, seeded from `STABLE_CACHE_DIR` when set.
fn engine(t: CartanType) -> Result<std::sync::Arc<StableEngine>> {
    let e = StableEngine::for_type(t);
    if let Some(dir) = std::env::var_os("STABLE_CACHE_DIR") {
        cache::load_or_store(&e, &PathBuf::from(dir))?;
    }
    Ok(e)
}

fn spec_from(rs: &RootSystem, a: &SpecArgs, alcove: Alcove) -> Result<StableSpec> {
    let c = rs
        .weyl
        .parse(&a.chamber)
        .map_err(|e| e.context("--chamber"))?;
    let pol = match a.pol {
        Pol::Tb => Polarization::TB,
        Pol::TStarB => Polarization::TStarB,
    };
    Ok(StableSpec::new(c, pol, alcove))
}

fn alcove_arg(s: &str, rs: &RootSystem, flag: &str) -> Result<Alcove> {
    parse_alcove(s, rs).map_err(|e| e.context(flag.to_string()))
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serializes");
    s.push('\n');
    s
}

fn alcove_json(rs: &RootSystem, a: &Alcove) -> Value {
    json!({
        "x": rs.weyl.label(a.x),
        "mu": crate::ring::format_weight(&a.mu, rs.rank),
        "label": a.label(rs),
    })
}

fn dispatch(cmd: &Command) -> Result<(bool, String)> {
    match cmd {
        Command::Basis(a) => basis(a).map(|s| (true, s)),
        Command::Wallcross(a) => wallcross(a).map(|s| (true, s)),
        Command::Pair(a) => pair(a).map(|s| (true, s)),
        Command::Apply(a) => apply(a).map(|s| (true, s)),
        Command::Alcove { command } => alcove(command).map(|s| (true, s)),
        Command::Verify(a) => verify(a),
    }
}

fn basis(a: &BasisArgs) -> Result<String> {
    let t = cartan(&a.cartan)?;
    let e = engine(t)?;
    let rs = e.root_system();
    let alc = alcove_arg(&a.alcove, rs, "--alcove")?;
    let spec = spec_from(rs, &a.spec, alc)?;
    let b = e.basis(&spec);
    let elements: Vec<usize> = match &a.element {
        Some(s) => vec![rs.weyl.parse(s).map_err(|e| e.context("--element"))?],
        None => (0..rs.weyl.order()).collect(),
    };
    let spec_json = json!({
        "chamber": rs.weyl.label(spec.chamber),
        "polarization": spec.polarization.label(),
        "alcove": alcove_json(rs, &spec.alcove),
    });
    match a.format {
        Format::Json => {
            if let [y] = elements[..] {
                let mut v = b[y].to_json();
                v["element"] = json!(rs.weyl.label(y));
                v["spec"] = spec_json;
                Ok(json_text(&v))
            } else {
                let mut m = Map::new();
                for &y in &elements {
                    m.insert(rs.weyl.label(y), b[y].to_json()["restrictions"].clone());
                }
                Ok(json_text(&json!({"type": t.label(), "spec": spec_json, "basis": m})))
            }
        }
        Format::Table => {
            let mut s = format!("# {}\n", spec.label(rs));
            for &y in &elements {
                s.push_str(&format!("## stab {}\n", rs.weyl.label(y)));
                s.push_str(&b[y].to_table());
            }
            Ok(s)
        }
    }
}

fn wallcross(a: &WallcrossArgs) -> Result<String> {
    let t = cartan(&a.cartan)?;
    let e = engine(t)?;
    let rs = e.root_system();
    let from = alcove_arg(&a.from, rs, "--from")?;
    let to = alcove_arg(&a.to, rs, "--to")?;
    let spec = spec_from(rs, &a.spec, from)?;
    let ys: Vec<usize> = match &a.element {
        Some(s) if !a.all_y => vec![rs.weyl.parse(s).map_err(|e| e.context("--element"))?],
        _ => (0..rs.weyl.order()).collect(),
    };
    let mut rows = Vec::new();
    for y in ys {
        rows.push((y, e.wall_cross_coefficient(&spec, &from, &to, y)?));
    }
    let wall = rows.first().map(|(_, w)| (w.wall, w.first_below));
    match a.format {
        Format::Json => {
            let mut m = Map::new();
            for (y, w) in &rows {
                m.insert(rs.weyl.label(*y), w.coefficient.to_json(rs.rank));
            }
            let (wall, below) = wall.expect("at least one element");
            Ok(json_text(&json!({
                "type": t.label(),
                "from": alcove_json(rs, &from),
                "to": alcove_json(rs, &to),
                "wall": wall.display(rs),
                "first_below": below,
                "coefficients": m,
            })))
        }
        Format::Table => {
            let mut s = String::new();
            if let Some((wall, below)) = wall {
                s.push_str(&format!(
                    "# {} from=[{}] to=[{}] wall={} first={}\n",
                    spec.label(rs),
                    from.label(rs),
                    to.label(rs),
                    wall.display(rs),
                    if below { "below" } else { "above" }
                ));
            }
            for (y, w) in &rows {
                s.push_str(&format!("{}\t{}\n", rs.weyl.label(*y), w.coefficient.display(rs.rank)));
            }
            Ok(s)
        }
    }
}

/// Reads a class from a file holding a class or a whole basis.
pub fn read_class(path: &PathBuf, element: Option<&str>) -> Result<KClass> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if let Some(basis) = v.get("basis").and_then(Value::as_object) {
        let el = element.ok_or_else(|| {
            Error::Parse(format!("{} holds a basis; pass an element to select", path.display()))
        })?;
        let t: CartanType = v
            .get("type")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing `type`".into()))?
            .parse()?;
        let rs = t.root_system();
        let label = rs.weyl.label(rs.weyl.parse(el)?);
        let res = basis
            .get(&label)
            .ok_or_else(|| Error::Parse(format!("no element `{label}` in {}", path.display())))?;
        return KClass::from_json(&json!({"type": t.label(), "restrictions": res}));
    }
    KClass::from_json(&v)
}

fn pair(a: &PairArgs) -> Result<String> {
    let l = read_class(&a.left, a.left_element.as_deref())?;
    let r = read_class(&a.right, a.right_element.as_deref())?;
    if l.cartan_type() != r.cartan_type() {
        return Err(Error::UnsupportedType(format!(
            "cannot pair classes of types {} and {}",
            l.cartan_type(),
            r.cartan_type()
        )));
    }
    let rank = l.root_system().rank;
    let p = l.pair(&r);
    Ok(match a.format {
        Format::Json => json_text(&json!({"type": l.cartan_type().label(), "pairing": p.to_json(rank)})),
        Format::Table => format!("{}\n", p.display(rank)),
    })
}

fn apply(a: &ApplyArgs) -> Result<String> {
    let f = read_class(&a.input, a.element.as_deref())?;
    if let Some(t) = &a.cartan {
        let t = cartan(t)?;
        if t != f.cartan_type() {
            return Err(Error::UnsupportedType(format!(
                "--type {t} does not match input of type {}",
                f.cartan_type()
            )));
        }
    }
    let rs = f.root_system().clone();
    let op = Composite::parse(&a.op, &rs).map_err(|e| e.context("--op"))?;
    let g = op.apply(&f);
    Ok(match a.format {
        Format::Json => json_text(&g.to_json()),
        Format::Table => g.to_table(),
    })
}

fn alcove(cmd: &AlcoveCommand) -> Result<String> {
    match cmd {
        AlcoveCommand::Locate { cartan: t, point, format } => {
            let rs = cartan(t)?.root_system();
            let p = parse_weight(point, &rs).map_err(|e| e.context("--point"))?;
            let a = locate(&rs, &p)?;
            Ok(match format {
                Format::Json => json_text(&alcove_json(&rs, &a)),
                Format::Table => format!("{}\n", a.label(&rs)),
            })
        }
        AlcoveCommand::Vertices { cartan: t, alcove, format } => {
            let rs = cartan(t)?.root_system();
            let a = alcove_arg(alcove, &rs, "--alcove")?;
            let vs: Vec<String> = a.vertices(&rs).iter().map(|v| v.to_string()).collect();
            Ok(match format {
                Format::Json => json_text(&json!({"alcove": alcove_json(&rs, &a), "vertices": vs})),
                Format::Table => vs.iter().map(|v| format!("{v}\n")).collect(),
            })
        }
        AlcoveCommand::Wall { cartan: t, from, to, format } => {
            let rs = cartan(t)?.root_system();
            let a = alcove_arg(from, &rs, "--from")?;
            let b = alcove_arg(to, &rs, "--to")?;
            let (w, below) = separating_wall(&rs, &a, &b)?;
            let root = crate::ring::format_weight(&rs.positive_roots[w.root].wt, rs.rank);
            Ok(match format {
                Format::Json => json_text(&json!({
                    "root": root,
                    "n": w.n,
                    "wall": w.display(&rs),
                    "first_below": below,
                })),
                Format::Table => format!(
                    "{}\troot={}\tfirst={}\n",
                    w.display(&rs),
                    root,
                    if below { "below" } else { "above" }
                ),
            })
        }
        AlcoveCommand::Path { cartan: t, from, to, format } => {
            let rs = cartan(t)?.root_system();
            let b = alcove_arg(to, &rs, "--to")?;
            let word = match from {
                Some(f) => positive_path_element(&rs, &b, &alcove_arg(f, &rs, "--from")?),
                None => path_from_neg(&rs, &b),
            };
            let text = word.display(rs.rank);
            Ok(match format {
                Format::Json => json_text(&json!({"word": text})),
                Format::Table => format!("{text}\n"),
            })
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<(bool, String)> {
    let t = cartan(&a.cartan)?;
    let names: Vec<&str> = if a.suite == "all" {
        SUITES
            .iter()
            .copied()
            .filter(|s| match *s {
                "golden-sl2" => t == CartanType::A1,
                "golden-sl3" => t == CartanType::A2,
                _ => true,
            })
            .collect()
    } else {
        vec![a.suite.as_str()]
    };
    engine(t)?;
    let reports: Vec<SuiteReport> = names
        .iter()
        .map(|n| run_suite(n, t, a.seed, a.window))
        .collect::<Result<_>>()?;
    let passed = reports.iter().all(SuiteReport::passed);
    let text = match a.format {
        Format::Json => json_text(&json!({
            "type": t.label(),
            "seed": a.seed,
            "passed": passed,
            "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
        })),
        Format::Table => reports.iter().map(SuiteReport::to_text).collect(),
    };
    Ok((passed, text))
}
