//! `cohiggs`: command-line access to the surface catalog, Higgs ranges,
//! integrability systems and field invariants.

mod svg;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cohiggs::catalog::{blow_up, make_surface, named_variable_map, resolve_surface, FanSpec, SurfaceId};
use cohiggs::higgs::{
    commute_at, generate_integrability_system, higgs_polytope, hitchin_data, is_integrable, min_poly_at_point,
    FieldFile, HiggsField, TorusPoint,
};
use cohiggs::klyachko::{parse_sheaf, sections, ToricSheaf};
use cohiggs::lattice::faces_2d;
use cohiggs::prehiggs::{higgs_range, pre_higgs_space, pre_higgs_space_cotangent, trace_split};
use cohiggs::symlaurent::format_univariate;
use cohiggs::{Fan, LatticePolytope, LatticeVec, Rat};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cohiggs", version, about = "Toric co-Higgs fields on smooth complete toric surfaces")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List the built-in surfaces, or show one fan.
    Catalog {
        #[arg(long, value_parser = parse_surface)]
        surface: Option<SurfaceArg>,
        #[arg(long)]
        json: bool,
    },
    /// Admissible degrees with their dimensions and the hull.
    Range {
        #[command(flatten)]
        sheaf: SheafArgs,
        #[arg(long)]
        trace_free: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graded global sections.
    Sections {
        #[command(flatten)]
        sheaf: SheafArgs,
        /// Print only the total dimension.
        #[arg(long)]
        total_dim: bool,
        #[arg(long)]
        json: bool,
    },
    /// Basis of the homogeneous pre-Higgs fields of one degree.
    Prehiggs {
        #[command(flatten)]
        sheaf: SheafArgs,
        #[arg(long, value_parser = parse_lattice_vec, allow_hyphen_values = true)]
        degree: LatticeVec,
        #[arg(long)]
        trace_free: bool,
        /// Use the cotangent-valued variant `E → E ⊗ Ω¹`.
        #[arg(long, conflicts_with_all = ["trace_free", "out"])]
        cotangent: bool,
        #[arg(long)]
        json: bool,
        /// Write basis element `--index` as a one-term field file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// The quadratic integrability system in CAS syntax.
    System {
        #[command(flatten)]
        sheaf: SheafArgs,
        #[arg(long)]
        trace_free: bool,
        /// Only degrees inside this polytope (`{"vertices": [[x,y],...]}`).
        #[arg(long)]
        filter: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrability verdict and Higgs polytope of a field file.
    Check {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
        /// Additionally test this many random pairs `(s, s')`.
        #[arg(long, default_value_t = 0)]
        random_pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Higgs polytope and its faces.
    Polytope {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Determinant and trace of `Φ_s` as polynomials in `(χ, s)`.
    Hitchin {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        json: bool,
    },
    /// Minimal polynomial of `Φ_s` at a torus point.
    Minpoly {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = parse_rat_list, allow_hyphen_values = true)]
        at: RatList,
        /// Contract with this `s` (default: every standard basis vector).
        #[arg(long, value_parser = parse_rat_list, allow_hyphen_values = true)]
        contract: Option<RatList>,
        #[arg(long)]
        json: bool,
    },
    /// Subdivide one maximal cone.
    Blowup {
        #[arg(long, value_parser = parse_surface)]
        surface: SurfaceArg,
        #[arg(long)]
        cone: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SheafArgs {
    /// Catalog id (P1, P2, Hirz:a, P1xP1, P2', P2'', P2''') or a fan JSON file.
    #[arg(long, value_parser = parse_surface)]
    surface: SurfaceArg,
    /// `tangent`, `cotangent`, `O(..)`, optionally twisted as `tangent*O(..)`.
    #[arg(long, default_value = "tangent")]
    sheaf: String,
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    field: PathBuf,
    /// Overrides the surface recorded in the field file.
    #[arg(long, value_parser = parse_surface)]
    surface: Option<SurfaceArg>,
    /// Overrides the sheaf recorded in the field file.
    #[arg(long)]
    sheaf: Option<String>,
}

#[derive(Clone)]
enum SurfaceArg {
    Id(SurfaceId),
    File(PathBuf),
}

fn parse_surface(s: &str) -> Result<SurfaceArg, String> {
    if let Ok(id) = s.parse::<SurfaceId>() {
        make_surface(&id).map_err(|e| e.to_string())?;
        return Ok(SurfaceArg::Id(id));
    }
    let path = PathBuf::from(s);
    if path.is_file() {
        Ok(SurfaceArg::File(path))
    } else {
        Err(format!("unknown surface {s:?}; expected one of {} or a fan JSON file", SurfaceId::CATALOG.join(", ")))
    }
}

fn parse_lattice_vec(s: &str) -> Result<LatticeVec, String> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer {x:?} in {s:?}")))
        .collect::<Result<Vec<_>, _>>()
        .map(LatticeVec)
}

/// Comma-separated rationals such as `1,-2/3`.
#[derive(Clone)]
struct RatList(Vec<Rat>);

fn parse_rat_list(s: &str) -> Result<RatList, String> {
    s.split(',')
        .map(|x| x.trim().parse::<Rat>().map_err(|_| format!("bad rational {x:?} in {s:?}")))
        .collect::<Result<_, _>>()
        .map(RatList)
}

/// Domain failures; usage failures are reported by clap with exit code 2.
#[derive(Debug)]
struct Failure(String);

impl From<cohiggs::Error> for Failure {
    fn from(e: cohiggs::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

impl SurfaceArg {
    fn fan(&self) -> Result<Fan, Failure> {
        Ok(resolve_surface(&self.to_json()?)?)
    }

    /// The id string, or the inline fan object of a file.
    fn to_json(&self) -> Result<Value, Failure> {
        match self {
            SurfaceArg::Id(id) => Ok(Value::String(id.to_string())),
            SurfaceArg::File(p) => Ok(serde_json::from_str(&std::fs::read_to_string(p)?)?),
        }
    }

    fn label(&self) -> String {
        match self {
            SurfaceArg::Id(id) => id.to_string(),
            SurfaceArg::File(p) => p.display().to_string(),
        }
    }
}

impl SheafArgs {
    fn load(&self) -> Result<ToricSheaf, Failure> {
        Ok(parse_sheaf(&self.surface.fan()?, &self.sheaf)?)
    }
}

impl FieldArgs {
    fn load(&self) -> Result<(FieldFile, HiggsField), Failure> {
        let file: FieldFile = serde_json::from_str(&std::fs::read_to_string(&self.field)?)?;
        let fan = match &self.surface {
            Some(s) => s.fan()?,
            None => resolve_surface(&file.surface)?,
        };
        let spec = self.sheaf.clone().or_else(|| file.sheaf.clone()).unwrap_or_else(|| "tangent".into());
        let sheaf = parse_sheaf(&fan, &spec)?;
        let phi = file.to_field(&sheaf)?;
        Ok((file, phi))
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn compact<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn catalog(surface: Option<&SurfaceArg>, as_json: bool) -> Outcome {
    let entries: Vec<(String, Fan)> = match surface {
        Some(s) => vec![(s.label(), s.fan()?)],
        None => ["P1", "P2", "Hirz:1", "Hirz:2", "Hirz:3", "Hirz:4", "P1xP1", "P2'", "P2''", "P2'''"]
            .iter()
            .map(|id| (id.to_string(), make_surface(&id.parse().expect("catalog id")).expect("catalog fan")))
            .collect(),
    };
    if as_json {
        let list: Vec<Value> = entries
            .iter()
            .map(|(id, f)| {
                json!({"id": id, "rays": f.rays(), "maxCones": f.max_cones(), "smooth": f.is_smooth(), "complete": f.is_complete()})
            })
            .collect();
        return Ok(pretty(&Value::Array(list)));
    }
    let mut out = String::new();
    for (id, f) in &entries {
        let rays: Vec<String> = f.rays().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{id}: {}", rays.join(" "));
    }
    if surface.is_none() {
        out.push_str("Hirz:a accepts any a >= 1; rays (-1,-a) (1,0) (0,1) (0,-1)\n");
    }
    Ok(out)
}

fn range(args: &SheafArgs, trace_free: bool, as_json: bool, svg_path: Option<&Path>, out: Option<&Path>) -> Outcome {
    let e = args.load()?;
    let range = higgs_range(&e, trace_free)?;
    let dims = range.dims();
    let mut report = serde_json::to_value(&range)?;
    report["surface"] = args.surface.to_json()?;
    report["sheaf"] = json!(args.sheaf);
    report["totalDim"] = json!(range.total_dim());
    if let Some(p) = svg_path {
        let points: Vec<(LatticeVec, Option<usize>)> = dims.iter().map(|(r, d)| (r.clone(), Some(*d))).collect();
        let outline = range.hull.as_ref().map(|h| h.vertices.clone()).unwrap_or_default();
        write_file(p, &svg::render(&svg::Figure { points: &points, outline: &outline })?)?;
    }
    if let Some(p) = out {
        write_file(p, &pretty(&report))?;
    }
    if as_json {
        return Ok(pretty(&report));
    }
    let mut s = String::new();
    let _ = writeln!(s, "surface: {}; sheaf: {}; traceFree: {trace_free}", args.surface.label(), args.sheaf);
    let _ = writeln!(s, "hull: {}", compact(&report["hull"]));
    for (r, d) in &dims {
        let _ = writeln!(s, "{r}: {d}");
    }
    let _ = writeln!(s, "total: {}", range.total_dim());
    Ok(s)
}

fn sections_cmd(args: &SheafArgs, total_only: bool, as_json: bool) -> Outcome {
    let e = args.load()?;
    let secs = sections(&e)?;
    let total: usize = secs.iter().map(|(_, d)| d).sum();
    if total_only && !as_json {
        return Ok(format!("{total}\n"));
    }
    if as_json {
        let degrees: Vec<Value> = secs.iter().map(|(r, d)| json!({"degree": r, "dim": d})).collect();
        return Ok(pretty(&json!({
            "surface": args.surface.to_json()?,
            "sheaf": args.sheaf,
            "degrees": degrees,
            "totalDim": total,
        })));
    }
    let mut s = String::new();
    for (r, d) in &secs {
        let _ = writeln!(s, "{r}: {d}");
    }
    let _ = writeln!(s, "total: {total}");
    Ok(s)
}

#[allow(clippy::too_many_arguments)]
fn prehiggs(
    args: &SheafArgs,
    degree: &LatticeVec,
    trace_free: bool,
    cotangent: bool,
    as_json: bool,
    out: Option<&Path>,
    index: usize,
) -> Outcome {
    let e = args.load()?;
    if degree.rank() != e.fan().rank() {
        return Err(cohiggs::Error::RankMismatch(e.fan().rank(), degree.rank()).into());
    }
    let space = if cotangent {
        pre_higgs_space_cotangent(&e, degree)?
    } else if trace_free {
        trace_split(&pre_higgs_space(&e, degree)?)?.0
    } else {
        pre_higgs_space(&e, degree)?
    };
    let basis = space.basis();
    if let Some(p) = out {
        let element = basis.get(index).ok_or_else(|| {
            Failure(format!("degree {degree} has {} basis elements, no index {index}", basis.len()))
        })?;
        let phi = HiggsField::new(&e, [(degree.clone(), element.clone())])?;
        let file = FieldFile::from_field(args.surface.to_json()?, Some(args.sheaf.clone()), &phi);
        write_file(p, &pretty(&serde_json::to_value(&file)?))?;
    }
    if as_json {
        return Ok(pretty(&json!({
            "degree": degree,
            "traceFree": trace_free,
            "cotangent": cotangent,
            "dim": basis.len(),
            "basis": basis,
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "degree {degree}: dim {}", basis.len());
    for b in &basis {
        let _ = writeln!(s, "{}", compact(b));
    }
    Ok(s)
}

fn system(args: &SheafArgs, trace_free: bool, filter: Option<&Path>, as_json: bool, out: Option<&Path>) -> Outcome {
    let e = args.load()?;
    let filter = match filter {
        Some(p) => {
            let poly: LatticePolytope = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            Some(poly.canonicalize()?)
        }
        None => None,
    };
    let sys = generate_integrability_system(&e, trace_free, filter.as_ref())?;
    let text = {
        let names: Vec<String> = sys.vars.iter().map(|v| v.cas_name()).collect();
        let mut s = String::new();
        let _ = writeln!(s, "# {} variables: {}", names.len(), names.join(", "));
        let _ = writeln!(s, "# {} generators", sys.polys.len());
        s.push_str(&sys.to_text());
        s
    };
    let report = || -> Result<Value, Failure> {
        let mut v = serde_json::to_value(&sys)?;
        let named = matches!(&args.surface, SurfaceArg::Id(SurfaceId::P2)) && args.sheaf == "tangent" && trace_free;
        if named {
            v["namedBasis"] = serde_json::to_value(named_variable_map(&SurfaceId::P2)?)?;
        }
        Ok(v)
    };
    if let Some(p) = out {
        let contents = if as_json { pretty(&report()?) } else { text.clone() };
        write_file(p, &contents)?;
    }
    if as_json {
        return Ok(pretty(&report()?));
    }
    Ok(text)
}

/// Deterministic rationals for extra pair checks (splitmix64).
struct Stream(u64);

impl Stream {
    fn next_small(&mut self) -> i64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) % 11) as i64 - 5
    }
}

fn check(args: &FieldArgs, as_json: bool, random_pairs: usize, seed: u64) -> Outcome {
    let (_, phi) = args.load()?;
    let verdict = is_integrable(&phi)?;
    let poly = higgs_polytope(&phi)?;
    let q = phi.sheaf().fan().rank();
    let mut stream = Stream(seed);
    let mut agree = 0;
    for _ in 0..random_pairs {
        let mut draw = || (0..q).map(|_| Rat::from_int(stream.next_small())).collect::<Vec<_>>();
        let (s, t) = (draw(), draw());
        if commute_at(&phi, &s, &t)? || !verdict.integrable {
            agree += 1;
        }
    }
    let certificate = verdict.certificate.as_ref().map(|c| {
        json!({"pair": [c.pair.0, c.pair.1], "degree": c.degree, "component": c.component.row_vecs()})
    });
    if as_json {
        let mut v = json!({"integrable": verdict.integrable, "higgsPolytope": poly.vertices, "support": phi.support()});
        if let Some(c) = certificate {
            v["certificate"] = c;
        }
        if random_pairs > 0 {
            v["randomPairs"] = json!({"tested": random_pairs, "consistent": agree, "seed": seed});
        }
        return Ok(pretty(&v));
    }
    let mut s = format!("integrable: {}; higgsPolytope: {}", verdict.integrable, compact(&poly.vertices));
    if let Some(c) = certificate {
        let _ = write!(s, "; certificate: {}", compact(&c));
    }
    s.push('\n');
    if random_pairs > 0 {
        let _ = writeln!(s, "random pairs consistent: {agree}/{random_pairs} (seed {seed})");
    }
    Ok(s)
}

fn polytope(args: &FieldArgs, as_json: bool, svg_path: Option<&Path>) -> Outcome {
    let (_, phi) = args.load()?;
    let poly = higgs_polytope(&phi)?;
    let faces = if poly.is_empty() || poly.rank != 2 { Vec::new() } else { faces_2d(&poly)? };
    if let Some(p) = svg_path {
        let points: Vec<(LatticeVec, Option<usize>)> = phi.support().into_iter().map(|r| (r, None)).collect();
        write_file(p, &svg::render(&svg::Figure { points: &points, outline: &poly.vertices })?)?;
    }
    if as_json {
        let faces: Vec<Value> = faces.iter().map(|f| json!({"vertices": f.face.vertices, "normal": f.normal})).collect();
        return Ok(pretty(&json!({"vertices": poly.vertices, "faces": faces})));
    }
    let mut s = format!("vertices: {}\n", compact(&poly.vertices));
    for f in &faces {
        let _ = writeln!(s, "face {} normal {}", compact(&f.face.vertices), f.normal);
    }
    Ok(s)
}

fn hitchin(args: &FieldArgs, as_json: bool) -> Outcome {
    let (_, phi) = args.load()?;
    let data = hitchin_data(&phi)?;
    let names: Vec<String> = ["x", "y", "s1", "s2"].iter().map(|s| s.to_string()).collect();
    let root = data.det.is_minus_perfect_square();
    if as_json {
        return Ok(pretty(&json!({
            "variables": names,
            "det": data.det,
            "trace": data.trace,
            "detText": data.det.format_with(&names),
            "traceText": data.trace.format_with(&names),
            "minusSquareRoot": root.as_ref().map(|r| r.format_with(&names)),
        })));
    }
    let mut s = String::new();
    let _ = writeln!(s, "det: {}", data.det.format_with(&names));
    let _ = writeln!(s, "trace: {}", data.trace.format_with(&names));
    match root {
        Some(r) => {
            let _ = writeln!(s, "det = -({})^2", r.format_with(&names));
        }
        None => s.push_str("det is not minus a square\n"),
    }
    Ok(s)
}

fn minpoly(args: &FieldArgs, at: &[Rat], contract: Option<&[Rat]>, as_json: bool) -> Outcome {
    let (_, phi) = args.load()?;
    let q = phi.sheaf().fan().rank();
    let t = TorusPoint::new(at.to_vec())?;
    if at.len() != q {
        return Err(cohiggs::Error::RankMismatch(q, at.len()).into());
    }
    let vectors: Vec<Vec<Rat>> = match contract {
        Some(s) => vec![s.to_vec()],
        None => (0..q).map(|k| LatticeVec::unit(q, k).to_rats()).collect(),
    };
    let mut results = Vec::new();
    for s in &vectors {
        results.push((s.clone(), min_poly_at_point(&phi, s, &t)?));
    }
    if as_json {
        let list: Vec<Value> = results
            .iter()
            .map(|(s, mp)| json!({"s": s, "coefficients": mp, "text": format_univariate(mp, "z")}))
            .collect();
        return Ok(pretty(&json!({"at": at, "minimalPolynomials": list})));
    }
    let mut out = String::new();
    for (s, mp) in &results {
        let s_text: Vec<String> = s.iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "s=({}): {}", s_text.join(","), format_univariate(mp, "z"));
    }
    Ok(out)
}

fn blowup(surface: &SurfaceArg, cone: usize, as_json: bool, out: Option<&Path>) -> Outcome {
    let fan = blow_up(&surface.fan()?, cone)?;
    let spec = FanSpec {
        rays: fan.rays().to_vec(),
        max_cones: Some(fan.max_cones().to_vec()),
    };
    let v = serde_json::to_value(&spec)?;
    if let Some(p) = out {
        write_file(p, &pretty(&v))?;
    }
    if as_json {
        return Ok(pretty(&v));
    }
    let rays: Vec<String> = fan.rays().iter().map(ToString::to_string).collect();
    Ok(format!("rays: {}\nmaxCones: {}\n", rays.join(" "), compact(&fan.max_cones())))
}

fn run(cli: Cli) -> Outcome {
    match &cli.verb {
        Verb::Catalog { surface, json } => catalog(surface.as_ref(), *json),
        Verb::Range { sheaf, trace_free, json, svg, out } => {
            range(sheaf, *trace_free, *json, svg.as_deref(), out.as_deref())
        }
        Verb::Sections { sheaf, total_dim, json } => sections_cmd(sheaf, *total_dim, *json),
        Verb::Prehiggs { sheaf, degree, trace_free, cotangent, json, out, index } => {
            prehiggs(sheaf, degree, *trace_free, *cotangent, *json, out.as_deref(), *index)
        }
        Verb::System { sheaf, trace_free, filter, json, out } => {
            system(sheaf, *trace_free, filter.as_deref(), *json, out.as_deref())
        }
        Verb::Check { field, json, random_pairs, seed } => check(field, *json, *random_pairs, *seed),
        Verb::Polytope { field, json, svg } => polytope(field, *json, svg.as_deref()),
        Verb::Hitchin { field, json } => hitchin(field, *json),
        Verb::Minpoly { field, at, contract, json } => {
            minpoly(field, &at.0, contract.as_ref().map(|c| c.0.as_slice()), *json)
        }
        Verb::Blowup { surface, cone, json, out } => blowup(surface, *cone, *json, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
