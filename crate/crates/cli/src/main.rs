use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use trifact::brace::{brace_automorphisms, ker_lambda, lambda_map, BraceError};
use trifact::catalog;
use trifact::classify::{identify_kind, iso_classes, omega};
use trifact::enumerate::enumerate_braces;
use trifact::io::{
    brace_to_file, parse_any, parse_map, parse_trifact, to_json, trifact_to_file, CatalogFile,
    Document, IoError, MapFile,
};
use trifact::morphism::lift_brace_hom;
use trifact::quotients::ideal_quotient_tuple;
use trifact::search::IsoOutcome;
use trifact::subgroup::{all_subgroups, intersection, normal_subgroups};
use trifact::substructure::SubstructureContext;
use trifact::trifact::{
    generalised_trifact, large_trifact, recover_eta, small_trifact, TrifactError,
    TrifactorisedGroup,
};
use trifact::{Bounds, FiniteGroup, GroupError, SkewBrace, SubgroupSet};

mod report;

use report::{render, Format};

#[derive(Parser, Debug)]
#[command(
    name = "trifact",
    version,
    about = "Skew braces and their trifactorised groups"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Certify a group, brace, tuple, map or catalog file.
    Validate { path: PathBuf },
    /// Summarise a group, brace or tuple file.
    Info { path: PathBuf },
    /// Build a tuple from a brace: `large`, `small` or `kernel=<i,j,..>`.
    Trifact {
        path: PathBuf,
        #[arg(long)]
        kind: String,
        /// Tuple file to write; the tuple is printed when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isomorphism classes of the tuples attached to a brace.
    Classify {
        path: PathBuf,
        /// Also prove class representatives pairwise non-isomorphic.
        #[arg(long)]
        certify: bool,
    },
    /// Classify every additive subgroup of a brace, at brace and group level.
    Substructures { path: PathBuf },
    /// Quotient of a brace (or tuple) by an ideal.
    Quotient {
        path: PathBuf,
        /// Ideal as comma-separated brace indices.
        #[arg(long)]
        ideal: String,
        /// Quotient brace file; printed when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Quotient tuple file.
        #[arg(long)]
        tuple_out: Option<PathBuf>,
    },
    /// All braces with a given additive group.
    Enumerate {
        /// Group file or catalog name such as `C4`, `V4`, `S3`, `D8`, `Q8`.
        #[arg(long)]
        group: String,
        /// Catalog file; printed when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a brace homomorphism between the braces of two tuples.
    Lift {
        source: PathBuf,
        target: PathBuf,
        /// Map file `{"images":[..]}` on brace indices.
        map: PathBuf,
        /// Group map file; printed when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A failure with its exit code: 1 rejected, 2 I/O or format, 3 bound.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = if e.is_bound() {
            3
        } else if e.is_mathematical() {
            1
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<TrifactError> for Failure {
    fn from(e: TrifactError) -> Self {
        Failure {
            code: if e.is_bound() { 3 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<BraceError> for Failure {
    fn from(e: BraceError) -> Self {
        Failure {
            code: if e.is_bound() { 3 } else { 1 },
            message: e.to_string(),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        Failure {
            code: if e.is_bound() { 3 } else { 1 },
            message: e.to_string(),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let fail = |e: &dyn std::fmt::Display| Failure::io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| fail(&e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| fail(&e))?;
    tmp.persist(path).map_err(|e| fail(&e.error))?;
    Ok(())
}

/// Writes `artifact` to `out`, or returns it as the whole output.
fn emit(out: &Option<PathBuf>, artifact: String, report: Value) -> Result<Emitted, Failure> {
    match out {
        Some(path) => {
            write_atomic(path, &artifact)?;
            Ok(Emitted::Report(report))
        }
        None => Ok(Emitted::Raw(artifact)),
    }
}

enum Emitted {
    Report(Value),
    /// A report for an input that was read but rejected; exits with 1.
    Rejected(Value),
    Raw(String),
}

fn load(path: &Path, bounds: &Bounds) -> Result<Document, Failure> {
    Ok(parse_any(&read(path)?, bounds)?)
}

/// A brace, with the tuple it came from when the file held one.
fn load_brace(
    path: &Path,
    bounds: &Bounds,
) -> Result<(SkewBrace, Option<TrifactorisedGroup>), Failure> {
    match load(path, bounds)? {
        Document::Brace(b) => Ok((b, None)),
        Document::Trifact(t) => Ok((recover_eta(&t, bounds)?.brace, Some(t))),
        _ => Err(Failure::io(format!(
            "{}: expected a brace or tuple file",
            path.display()
        ))),
    }
}

fn parse_indices(text: &str) -> Result<SubgroupSet, Failure> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        out.push(
            part.parse::<usize>()
                .map_err(|_| Failure::io(format!("not an index: {part:?}")))?,
        );
    }
    Ok(SubgroupSet::new(out))
}

fn members(s: &SubgroupSet) -> Value {
    json!(s.members())
}

fn group_summary(g: &FiniteGroup) -> Value {
    json!({
        "order": g.order(),
        "abelian": g.is_abelian(),
        "realization": if g.semidirect().is_some() { "semidirect" } else { "table" },
    })
}

fn brace_summary(b: &SkewBrace) -> Value {
    json!({
        "order": b.order(),
        "trivial": b.is_trivial(),
        "additive_abelian": b.add_group().is_abelian(),
        "multiplicative_abelian": b.mul_group().is_abelian(),
        "ker_lambda": members(&ker_lambda(b)),
    })
}

fn tuple_summary(t: &TrifactorisedGroup, bounds: &Bounds) -> Outcome {
    let kind = identify_kind(t, bounds)?;
    Ok(json!({
        "order": t.order(),
        "K": t.k().len(),
        "H": t.h().len(),
        "E": t.e().len(),
        "K_cap_H": intersection(t.k(), t.h()).len(),
        "kind": kind.label(),
        "kernel": members(&kind.kernel),
        "provenance": t.provenance().is_some(),
    }))
}

fn validate(path: &Path, bounds: &Bounds) -> Result<Emitted, Failure> {
    let doc = match load(path, bounds) {
        Ok(doc) => doc,
        Err(f) if f.code == 1 => {
            return Ok(Emitted::Rejected(
                json!({"valid": false, "error": f.message}),
            ))
        }
        Err(f) => return Err(f),
    };
    let (kind, detail) = match &doc {
        Document::Group(g) => ("group", group_summary(g)),
        Document::Brace(b) => ("brace", brace_summary(b)),
        Document::Trifact(t) => ("trifactorised group", tuple_summary(t, bounds)?),
        Document::Map(m) => ("map", json!({"length": m.len()})),
        Document::Catalog(g, bs) => (
            "catalog",
            json!({"group_order": g.order(), "braces": bs.len()}),
        ),
    };
    Ok(Emitted::Report(
        json!({"valid": true, "document": kind, "details": detail}),
    ))
}

fn info(path: &Path, bounds: &Bounds) -> Outcome {
    match load(path, bounds)? {
        Document::Group(g) => {
            let normals = normal_subgroups(&g, bounds)?;
            let mut v = group_summary(&g);
            v["normal_subgroups"] = json!(normals.len());
            v["element_orders"] = json!(g.element_orders());
            Ok(v)
        }
        Document::Brace(b) => {
            let mut v = brace_summary(&b);
            let lam = lambda_map(&b).image(bounds);
            v["lambda_image_order"] = json!(lam.group.order());
            v["omega"] = json!(omega(&b, bounds)?.members.len());
            v["automorphisms"] = json!(brace_automorphisms(&b, bounds)?.len());
            Ok(v)
        }
        Document::Trifact(t) => {
            let mut v = tuple_summary(&t, bounds)?;
            v["centralizer_E_of_K"] = json!(t.centralizer_e_of_k().len());
            v["group"] = group_summary(t.group());
            Ok(v)
        }
        _ => Err(Failure::io(format!(
            "{}: expected a group, brace or tuple file",
            path.display()
        ))),
    }
}

fn trifact_cmd(
    path: &Path,
    kind: &str,
    out: &Option<PathBuf>,
    bounds: &Bounds,
) -> Result<Emitted, Failure> {
    let (brace, _) = load_brace(path, bounds)?;
    let t = match kind {
        "large" => large_trifact(&brace, bounds)?,
        "small" => small_trifact(&brace, bounds)?,
        _ => match kind.strip_prefix("kernel=") {
            Some(list) => generalised_trifact(&brace, &parse_indices(list)?, bounds)?,
            None => {
                return Err(Failure::io(format!(
                    "unknown kind {kind:?}: use large, small or kernel=<i,j,..>"
                )))
            }
        },
    };
    let report = tuple_summary(&t, bounds)?;
    emit(out, to_json(&trifact_to_file(&t)), report)
}

fn classify(path: &Path, certify: bool, bounds: &Bounds) -> Outcome {
    let (brace, _) = load_brace(path, bounds)?;
    let c = iso_classes(&brace, certify, bounds)?;
    let certs = c.certificates.as_deref().unwrap_or(&[]);
    let classes: Vec<Value> = c
        .classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let status = if !certify {
                "orbit-lifted".to_string()
            } else if certs
                .iter()
                .filter(|p| p.classes.0 == i || p.classes.1 == i)
                .all(|p| p.outcome.map().is_none())
            {
                "distinct".to_string()
            } else {
                "isomorphic to another class".to_string()
            };
            let kind = identify_kind(&class.tuple, bounds)
                .map(|k| k.label())
                .unwrap_or("unknown");
            json!({
                "N": members(&class.representative),
                "order_N": class.representative.len(),
                "orbit": class.members.len(),
                "order_G": class.tuple.order(),
                "kind": kind,
                "certificate": status,
            })
        })
        .collect();
    let mut v = json!({
        "order": brace.order(),
        "omega": c.orbits.omega.members.iter().map(members).collect::<Vec<_>>(),
        "automorphisms": c.orbits.automorphisms.len(),
        "orbits": c.orbits.orbits.len(),
        "classes": classes,
    });
    if let Some(certs) = &c.certificates {
        let pairs: Vec<Value> = certs
            .iter()
            .map(|p| {
                let outcome = match &p.outcome {
                    IsoOutcome::Exhausted { nodes } => format!("exhausted after {nodes} nodes"),
                    IsoOutcome::Found(_) => "isomorphism found".into(),
                };
                json!({"classes": [p.classes.0, p.classes.1], "search": outcome})
            })
            .collect();
        v["certificates"] = json!(pairs);
        v["certified"] = json!(c.certified_distinct());
    }
    Ok(v)
}

fn substructures(path: &Path, bounds: &Bounds) -> Outcome {
    let (brace, tuple) = load_brace(path, bounds)?;
    let t = match tuple {
        Some(t) => t,
        None => large_trifact(&brace, bounds)?,
    };
    let ctx = SubstructureContext::new(&t, bounds)?;
    let mut rows = Vec::new();
    let mut discrepancies = 0;
    for l in all_subgroups(brace.add_group(), bounds)? {
        let r = ctx.classify(&ctx.to_group(&l))?;
        let bad = r.discrepancies();
        discrepancies += bad.len() + usize::from(r.group_label() != r.brace_label.label);
        rows.push(json!({
            "L": members(&l),
            "order": l.len(),
            "brace_label": r.brace_label.label.name(),
            "group_label": r.group_label().name(),
            "discrepancies": bad,
        }));
    }
    Ok(json!({"tuple_order": t.order(), "subgroups": rows, "discrepancies": discrepancies}))
}

fn quotient(
    path: &Path,
    ideal: &str,
    out: &Option<PathBuf>,
    tuple_out: &Option<PathBuf>,
    bounds: &Bounds,
) -> Result<Emitted, Failure> {
    let (brace, tuple) = load_brace(path, bounds)?;
    let t = match tuple {
        Some(t) => t,
        None => large_trifact(&brace, bounds)?,
    };
    let ideal = parse_indices(ideal)?;
    let q = ideal_quotient_tuple(&t, &ideal, bounds)?;
    if let Some(p) = tuple_out {
        write_atomic(p, &to_json(&trifact_to_file(&q.quotient.tuple)))?;
    }
    let report = json!({
        "ideal": members(&ideal),
        "quotient_order": q.brace_quotient.brace.order(),
        "quotient_trivial": q.brace_quotient.brace.is_trivial(),
        "tuple_order": q.quotient.tuple.order(),
        "tables_match": q.tables_match,
        "stays_large": q.stays_large,
    });
    emit(
        out,
        to_json(&brace_to_file(&q.brace_quotient.brace)),
        report,
    )
}

fn load_group(name: &str, bounds: &Bounds) -> Result<FiniteGroup, Failure> {
    let path = Path::new(name);
    if path.exists() {
        return match load(path, bounds)? {
            Document::Group(g) => Ok(g),
            _ => Err(Failure::io(format!("{name}: expected a group file"))),
        };
    }
    catalog::by_name(name)
        .ok_or_else(|| Failure::io(format!("{name}: no such file or catalog group")))
}

fn enumerate(group: &str, out: &Option<PathBuf>, bounds: &Bounds) -> Result<Emitted, Failure> {
    let g = load_group(group, bounds)?;
    let braces = enumerate_braces(&g, bounds)?;
    let file = CatalogFile {
        group: trifact::io::group_to_file(&g),
        braces: braces.iter().map(brace_to_file).collect(),
    };
    let report = json!({
        "group_order": g.order(),
        "braces": braces.len(),
        "trivial": braces.iter().filter(|b| b.is_trivial()).count(),
    });
    emit(out, to_json(&file), report)
}

fn lift(
    source: &Path,
    target: &Path,
    map: &Path,
    out: &Option<PathBuf>,
    bounds: &Bounds,
) -> Result<Emitted, Failure> {
    let t1 = parse_trifact(&read(source)?, bounds)?;
    let t2 = parse_trifact(&read(target)?, bounds)?;
    let images = parse_map(&read(map)?)?;
    let f = lift_brace_hom(&images, &t1, &t2, bounds)?;
    let report = json!({
        "source_order": t1.order(),
        "target_order": t2.order(),
        "injective": f.is_injective(),
        "surjective": f.is_surjective(),
        "kernel_order": f.kernel().len(),
    });
    emit(
        out,
        to_json(&MapFile {
            images: f.map.images().to_vec(),
        }),
        report,
    )
}

fn run(cli: &Cli, bounds: &Bounds) -> Result<Emitted, Failure> {
    let report = |v: Outcome| v.map(Emitted::Report);
    match &cli.command {
        Command::Validate { path } => validate(path, bounds),
        Command::Info { path } => report(info(path, bounds)),
        Command::Trifact { path, kind, out } => trifact_cmd(path, kind, out, bounds),
        Command::Classify { path, certify } => report(classify(path, *certify, bounds)),
        Command::Substructures { path } => report(substructures(path, bounds)),
        Command::Quotient {
            path,
            ideal,
            out,
            tuple_out,
        } => quotient(path, ideal, out, tuple_out, bounds),
        Command::Enumerate { group, out } => enumerate(group, out, bounds),
        Command::Lift {
            source,
            target,
            map,
            out,
        } => lift(source, target, map, out, bounds),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let bounds = match Bounds::from_env() {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli, &bounds) {
        Ok(Emitted::Report(v)) => {
            print!("{}", render(&v, cli.format));
            ExitCode::SUCCESS
        }
        Ok(Emitted::Rejected(v)) => {
            print!("{}", render(&v, cli.format));
            ExitCode::from(1)
        }
        Ok(Emitted::Raw(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
