mod plot;
mod report;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use cryfan::arrangement::{crystallographic_report, enumerate_chambers, Arrangement};
use cryfan::catalog::{catalog, classical_names};
use cryfan::fan::{
    fan_automorphisms, fan_from_arrangement, insert_hyperplane, roots_from_fan, star_fan, Fan, PropertyReport,
};
use cryfan::io::{self, Kind};
use cryfan::linalg::{rational_to_string, IntMatrix, IntVec};
use cryfan::polytope::{build_polytope, phi_certificate, verify_normal_fan, HalfLatticePolytope};
use cryfan::poset::{intersection_poset, parabolic_arrangement_in, restricted_arrangement, FlatSubspace};
use cryfan::surface::{
    circular_graph, desingularize, doubled, graph_from_weights, symmetrize, triangulation_to_weights, triangulations,
    verify_picard_presentation, verify_weight_identity, weights_to_fan, y_divisor_class, CircularGraph, WeightMode,
};
use cryfan::Error;

use report::Report;

/// Exact tools for crystallographic arrangements and their chamber fans.
///
/// INPUT is a JSON file (arrangement, fan, polytope or weights, detected by
/// its keys), `-` for stdin, or `catalog:NAME`.
///
/// Exit codes: 0 ok, 1 verification failed, 2 parse or invalid input,
/// 3 bad reference, 4 unsupported rank, 10 not crystallographic,
/// 11 not simplicial, 12 not smooth, 13 not strongly symmetric,
/// 14 not complete, 15 weights do not close, 16 degenerate.
#[derive(Parser)]
#[command(name = "cryfan", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the output document here; the report then goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock timings to the report.
    #[arg(long, global = true)]
    timings: bool,
    /// Directory of extra arrangement files, addressable as `catalog:NAME`.
    #[arg(long, global = true)]
    sporadic_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in arrangement, or list the names.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Decide crystallographic (arrangements) or the fan properties (fans).
    Verify { input: String },
    /// Chamber fan of an arrangement.
    Fan { input: String },
    /// Root arrangement of a fan.
    Roots { input: String },
    /// Doubled vertices `2ρ^K` of the chamber polytope.
    Polytope { input: String },
    /// Star fan of a cone, given by ray indices.
    Star {
        input: String,
        #[arg(long, default_value = "")]
        cone: String,
    },
    /// Restriction to a flat spanned by the given rows.
    Restrict {
        input: String,
        #[arg(long)]
        subspace: String,
    },
    /// Intersection poset.
    Poset { input: String },
    /// Arrangement on the quotient by the span of a cone.
    Parabolic {
        input: String,
        #[arg(long, default_value = "")]
        cone: String,
    },
    /// Add one hyperplane and certify the blowup.
    Insert {
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        hyperplane: String,
    },
    /// Lattice automorphisms of the fan.
    Autos { input: String },
    /// Sign-vector embedding certificate.
    Embed { input: String },
    /// Rank-two surfaces.
    Surface {
        #[command(subcommand)]
        command: SurfaceCommand,
    },
    /// Render a rank-two fan or a rank-three arrangement.
    Plot {
        input: String,
        #[arg(long, default_value = "svg")]
        format: String,
    },
}

#[derive(Subcommand)]
enum SurfaceCommand {
    /// Weights and rays of the circular graph.
    Graph { input: String },
    /// Fan of a weight sequence.
    FromWeights {
        input: String,
        /// The input is the first half of a centrally symmetric sequence.
        #[arg(long)]
        half: bool,
    },
    /// Half weight sequences of all polygon triangulations.
    Triangulations {
        #[arg(long)]
        count: usize,
    },
    Symmetrize { input: String },
    Desingularize { input: String },
    /// Class and self-intersection of `Y1`.
    Divisor { input: String },
    /// Presentation of the Picard group.
    Picard { input: String },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Reference(String),
    Rank(usize),
    /// The report has been printed; only the exit code remains.
    Verdict(u8),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome<T = ()> = Result<T, Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::VerificationFailed(_) => 1,
        Error::UnknownCatalog(_)
        | Error::IndexOutOfRange { .. }
        | Error::ConeNotInFan(_)
        | Error::NotSpannedByCone
        | Error::NotAFlat
        | Error::AlreadyPresent(_) => 3,
        Error::UnsupportedRank { .. } => 4,
        Error::NotCrystallographic { .. } => 10,
        Error::NotSimplicial { .. } | Error::NonSimplicialCone { .. } => 11,
        Error::NotSmooth { .. } => 12,
        Error::NotStronglySymmetric { .. } | Error::NotCentrallySymmetric => 13,
        Error::NotComplete => 14,
        Error::DoesNotClose | Error::OrientationFailure => 15,
        Error::Degenerate(_) => 16,
        _ => 2,
    }
}

enum Input {
    Arrangement(Arrangement),
    Fan(Fan),
    Polytope(HalfLatticePolytope),
    Weights(Vec<BigInt>),
}

struct Loaded {
    input: Input,
    bytes: Vec<u8>,
}

struct Ctx {
    out: Option<PathBuf>,
    timings: bool,
    sporadic_dir: Option<PathBuf>,
}

impl Ctx {
    fn sporadic_path(&self, name: &str) -> Option<PathBuf> {
        let p = self.sporadic_dir.as_ref()?.join(format!("{name}.json"));
        p.is_file().then_some(p)
    }

    fn catalog_entry(&self, name: &str) -> Outcome<(Arrangement, Vec<u8>)> {
        match catalog(name) {
            Ok(a) => {
                let bytes = io::to_text(&io::arrangement_json(&a)).into_bytes();
                Ok((a, bytes))
            }
            Err(Error::UnknownCatalog(_)) if self.sporadic_path(name).is_some() => {
                let bytes = read_file(&self.sporadic_path(name).expect("checked"))?;
                let a = io::arrangement_from_value(&io::parse_value(&utf8(&bytes)?)?)?;
                Ok((a, bytes))
            }
            Err(e) => Err(e.into()),
        }
    }

    fn load(&self, spec: &str) -> Outcome<Loaded> {
        if let Some(name) = spec.strip_prefix("catalog:") {
            let (a, bytes) = self.catalog_entry(name)?;
            return Ok(Loaded { input: Input::Arrangement(a), bytes });
        }
        let bytes = if spec == "-" {
            let mut buf = Vec::new();
            std::io::stdin().read_to_end(&mut buf).map_err(|e| Failure::Usage(e.to_string()))?;
            buf
        } else {
            read_file(Path::new(spec))?
        };
        let value = io::parse_value(&utf8(&bytes)?)?;
        let input = match io::detect(&value)? {
            Kind::Arrangement => Input::Arrangement(io::arrangement_from_value(&value)?),
            Kind::Fan => Input::Fan(io::fan_from_value(&value)?),
            Kind::Polytope => Input::Polytope(io::polytope_from_value(&value)?),
            Kind::Weights => Input::Weights(io::weights_from_value(&value)?),
        };
        Ok(Loaded { input, bytes })
    }

    /// Writes `doc` to `--out` and the report to stdout, or `doc` to stdout
    /// and the report to stderr.
    fn emit(&self, doc: Option<String>, report: &Report) -> Outcome {
        let text = io::to_text(&report.to_value(self.timings));
        match (doc, &self.out) {
            (None, _) => print!("{text}"),
            (Some(doc), Some(path)) => {
                fs::write(path, doc).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                print!("{text}");
            }
            (Some(doc), None) => {
                print!("{doc}");
                eprint!("{text}");
            }
        }
        Ok(())
    }
}

fn read_file(path: &Path) -> Outcome<Vec<u8>> {
    fs::read(path).map_err(|e| Failure::Reference(format!("{}: {e}", path.display())))
}

fn utf8(bytes: &[u8]) -> Outcome<String> {
    String::from_utf8(bytes.to_vec()).map_err(|e| Failure::Usage(e.to_string()))
}

fn arrangement_of(input: &Input) -> Outcome<Arrangement> {
    match input {
        Input::Arrangement(a) => Ok(a.clone()),
        Input::Fan(f) => Ok(roots_from_fan(f)?),
        Input::Weights(w) => Ok(roots_from_fan(&weights_to_fan(w)?)?),
        Input::Polytope(_) => Err(Failure::Usage("expected an arrangement or a fan".into())),
    }
}

fn fan_of(input: &Input) -> Outcome<Fan> {
    match input {
        Input::Arrangement(a) => Ok(fan_from_arrangement(a)?),
        Input::Fan(f) => Ok(f.clone()),
        Input::Weights(w) => Ok(weights_to_fan(w)?),
        Input::Polytope(_) => Err(Failure::Usage("expected an arrangement or a fan".into())),
    }
}

fn graph_of(input: &Input) -> Outcome<CircularGraph> {
    match input {
        Input::Weights(w) => Ok(graph_from_weights(w)?),
        other => Ok(circular_graph(&fan_of(other)?)?),
    }
}

fn parse_cone(text: &str, f: &Fan) -> Outcome<Vec<usize>> {
    let mut cone = Vec::new();
    for part in text.trim_matches(|c| c == '[' || c == ']').split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i: usize = part.parse().map_err(|_| Failure::Usage(format!("bad ray index `{part}`")))?;
        if i >= f.rays().len() {
            return Err(Failure::Reference(format!("ray {i} out of range for {} rays", f.rays().len())));
        }
        cone.push(i);
    }
    cone.sort_unstable();
    if !f.contains_cone(&cone) {
        return Err(Failure::Reference(format!("{cone:?} is not a cone of the fan")));
    }
    Ok(cone)
}

fn parse_vector(text: &str) -> Outcome<IntVec> {
    text.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| BigInt::from_str(s).map_err(|_| Failure::Usage(format!("bad integer `{s}`"))))
        .collect()
}

fn properties_json(p: &PropertyReport) -> Value {
    json!({
        "smooth": p.smooth,
        "complete": p.complete,
        "centrally_symmetric": p.centrally_symmetric,
        "strongly_symmetric": p.strongly_symmetric,
    })
}

fn record_properties(report: &mut Report, f: &Fan) -> PropertyReport {
    let p = f.check_properties();
    for (k, v) in properties_json(&p).as_object().expect("object") {
        report.verdict(k, v.clone());
    }
    report.detail("rays", f.rays().len());
    report.detail("max_cones", f.max_cones().len());
    report.detail("hyperplanes", io::rows_json(&p.hyperplanes));
    for w in &p.failure_witness {
        report.witness(json!({ "property": w.property, "cones": w.cones }));
    }
    p
}

fn matrix_json(m: &IntMatrix) -> Value {
    io::rows_json(&m.to_rows())
}

fn cmd_catalog(ctx: &Ctx, name: Option<String>, list: bool) -> Outcome {
    match name {
        Some(name) if !list => {
            let (a, bytes) = ctx.catalog_entry(&name)?;
            let mut report = Report::new("catalog", &bytes);
            report.detail("name", name);
            report.detail("rank", a.rank());
            report.detail("hyperplanes", a.len());
            ctx.emit(Some(io::to_text(&io::arrangement_json(&a))), &report)
        }
        _ => {
            let mut names = classical_names(cryfan::catalog::MAX_RANK);
            names.push("ngon:T:INDEX".into());
            if let Some(dir) = &ctx.sporadic_dir {
                let mut extra: Vec<String> = fs::read_dir(dir)
                    .map_err(|e| Failure::Reference(format!("{}: {e}", dir.display())))?
                    .filter_map(|e| e.ok())
                    .filter_map(|e| e.file_name().to_str()?.strip_suffix(".json").map(String::from))
                    .collect();
                extra.sort();
                names.extend(extra);
            }
            for n in names {
                println!("{n}");
            }
            Ok(())
        }
    }
}

fn cmd_verify(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let mut report = Report::new("verify", &loaded.bytes);
    let code = match &loaded.input {
        Input::Arrangement(a) => match enumerate_chambers(a) {
            Err(Error::NotSimplicial { chamber, rays, rank }) => {
                report.verdict("simplicial", false);
                report.verdict("crystallographic", false);
                report.witness(json!({ "chamber": chamber, "rays": rays, "rank": rank }));
                11
            }
            Err(e) => return Err(e.into()),
            Ok(chambers) => {
                report.verdict("simplicial", true);
                report.detail("chambers", chambers.len());
                let c = crystallographic_report(a, &chambers);
                report.verdict("crystallographic", c.verdict);
                if let Some(w) = c.witness {
                    let coords: Vec<String> = w.coordinates.iter().map(rational_to_string).collect();
                    report.witness(json!({ "chamber": w.chamber, "root": w.root, "coordinates": coords }));
                    10
                } else {
                    0
                }
            }
        },
        Input::Fan(f) => {
            let p = record_properties(&mut report, f);
            if !p.smooth {
                12
            } else if !p.complete {
                14
            } else if !p.strongly_symmetric {
                13
            } else {
                0
            }
        }
        Input::Weights(w) => {
            let closes = verify_weight_identity(w, WeightMode::Full);
            report.verdict("product_is_identity", closes);
            match weights_to_fan(w) {
                Ok(f) => {
                    record_properties(&mut report, &f);
                    0
                }
                Err(e) => {
                    report.witness(json!({ "error": e.to_string() }));
                    exit_code(&e)
                }
            }
        }
        Input::Polytope(_) => return Err(Failure::Usage("nothing to verify for a polytope".into())),
    };
    ctx.emit(None, &report)?;
    if code == 0 {
        Ok(())
    } else {
        Err(Failure::Verdict(code))
    }
}

fn cmd_fan(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let f = fan_of(&loaded.input)?;
    let mut report = Report::new("fan", &loaded.bytes);
    record_properties(&mut report, &f);
    ctx.emit(Some(io::to_text(&io::fan_json(&f))), &report)
}

fn cmd_roots(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let mut report = Report::new("roots", &loaded.bytes);
    report.detail("rank", a.rank());
    report.detail("hyperplanes", a.len());
    ctx.emit(Some(io::to_text(&io::arrangement_json(&a))), &report)
}

fn cmd_polytope(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let p = build_polytope(&a)?;
    let mut report = Report::new("polytope", &loaded.bytes);
    report.verdict("normal_fan", verify_normal_fan(&p, &fan_from_arrangement(&a)?));
    report.verdict("centrally_symmetric", p.is_centrally_symmetric());
    report.detail("vertices", p.vertices.len());
    ctx.emit(Some(io::to_text(&io::polytope_json(&p))), &report)
}

fn cmd_star(ctx: &Ctx, loaded: &Loaded, cone: &str) -> Outcome {
    let f = fan_of(&loaded.input)?;
    let delta = parse_cone(cone, &f)?;
    let s = star_fan(&f, &delta)?;
    let mut report = Report::new("star", &loaded.bytes);
    report.detail("cone", delta);
    record_properties(&mut report, &s);
    ctx.emit(Some(io::to_text(&io::fan_json(&s))), &report)
}

fn cmd_restrict(ctx: &Ctx, loaded: &Loaded, subspace: &str) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let rows: Vec<IntVec> = io::parse_value(subspace).and_then(|v| {
        v.as_array().ok_or_else(|| Error::Parse("subspace must be a list of rows".into()))?.iter().map(io::int_vec).collect()
    })?;
    let e = FlatSubspace::span(a.rank(), &rows)?;
    let r = restricted_arrangement(&a, &e)?;
    let mut report = Report::new("restrict", &loaded.bytes);
    report.verdict("crystallographic", true);
    report.detail("basis", io::rows_json(e.basis()));
    report.detail("hyperplanes", r.len());
    ctx.emit(Some(io::to_text(&io::arrangement_json(&r))), &report)
}

fn cmd_poset(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let p = intersection_poset(&a);
    let mut report = Report::new("poset", &loaded.bytes);
    let counts: serde_json::Map<String, Value> =
        p.counts_by_dim().into_iter().map(|(d, n)| (d.to_string(), json!(n))).collect();
    report.detail("flats_by_dim", Value::Object(counts));
    report.detail("flats", p.flats.len());
    ctx.emit(Some(io::to_text(&io::poset_json(&p))), &report)
}

fn cmd_parabolic(ctx: &Ctx, loaded: &Loaded, cone: &str) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let f = fan_from_arrangement(&a)?;
    let delta = parse_cone(cone, &f)?;
    let p = parabolic_arrangement_in(&a, &f, &delta)?;
    let mut report = Report::new("parabolic", &loaded.bytes);
    report.verdict("matches_star_fan", true);
    report.detail("cone", delta);
    report.detail("hyperplanes", p.len());
    ctx.emit(Some(io::to_text(&io::arrangement_json(&p))), &report)
}

fn cmd_insert(ctx: &Ctx, loaded: &Loaded, hyperplane: &str) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let h = parse_vector(hyperplane)?;
    let (f, cert) = insert_hyperplane(&a, &h)?;
    let mut report = Report::new("insert", &loaded.bytes);
    report.verdict("sum_of_generators", true);
    report.detail("new_rays", io::rows_json(&cert.new_rays()));
    let entries: Vec<Value> = cert
        .entries
        .iter()
        .map(|e| {
            json!({
                "cone": io::rows_json(&e.cone),
                "rho1": io::vec_json(&e.rho1),
                "rho2": io::vec_json(&e.rho2),
                "new_ray": io::vec_json(&e.new_ray),
            })
        })
        .collect();
    report.detail("certificate", entries);
    ctx.emit(Some(io::to_text(&io::fan_json(&f))), &report)
}

fn cmd_autos(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let f = fan_of(&loaded.input)?;
    let autos = fan_automorphisms(&f)?;
    let mut minus = IntMatrix::identity(f.rank());
    for i in 0..f.rank() {
        minus.negate_row(i);
    }
    let mut report = Report::new("autos", &loaded.bytes);
    report.verdict("contains_minus_identity", autos.contains(&minus));
    report.detail("order", autos.len());
    let doc = json!({
        "rank": f.rank(),
        "order": autos.len(),
        "matrices": autos.iter().map(matrix_json).collect::<Vec<_>>(),
    });
    ctx.emit(Some(io::to_text(&doc)), &report)
}

fn cmd_embed(ctx: &Ctx, loaded: &Loaded) -> Outcome {
    let a = arrangement_of(&loaded.input)?;
    let c = phi_certificate(&a)?;
    let mut report = Report::new("embed", &loaded.bytes);
    report.verdict("split", c.is_split());
    report.verdict("sign_vectors_injective", true);
    report.detail("invariant_factors", io::vec_json(&c.invariant_factors));
    let rows: Vec<Value> = c
        .rows
        .iter()
        .map(|r| json!({ "index": r.index, "sign": r.sign, "root": io::vec_json(&r.vector(&a)) }))
        .collect();
    let signs: Vec<Value> =
        c.sign_vectors.iter().map(|(cone, s)| json!({ "cone": cone, "signs": s.0 })).collect();
    let doc = json!({
        "rank": a.rank(),
        "rows": rows,
        "matrix": matrix_json(&c.matrix),
        "invariant_factors": io::vec_json(&c.invariant_factors),
        "sign_vectors": signs,
    });
    ctx.emit(Some(io::to_text(&doc)), &report)
}

fn graph_json(g: &CircularGraph) -> Value {
    json!({ "weights": io::vec_json(&g.weights), "rays": io::rows_json(&g.rays) })
}

fn cmd_surface(ctx: &Ctx, command: SurfaceCommand) -> Outcome {
    match command {
        SurfaceCommand::Graph { input } => {
            let loaded = ctx.load(&input)?;
            let g = graph_of(&loaded.input)?;
            let mut report = Report::new("surface graph", &loaded.bytes);
            report.verdict("product_is_identity", verify_weight_identity(&g.weights, WeightMode::Full));
            ctx.emit(Some(io::to_text(&graph_json(&g))), &report)
        }
        SurfaceCommand::FromWeights { input, half } => {
            let loaded = ctx.load(&input)?;
            let Input::Weights(w) = &loaded.input else {
                return Err(Failure::Usage("expected a weights document".into()));
            };
            let mut report = Report::new("surface from-weights", &loaded.bytes);
            let full = if half {
                if !verify_weight_identity(w, WeightMode::Half) {
                    return Err(Error::DoesNotClose.into());
                }
                report.verdict("half_product_is_minus_identity", true);
                doubled(w)
            } else {
                w.clone()
            };
            let f = weights_to_fan(&full)?;
            record_properties(&mut report, &f);
            ctx.emit(Some(io::to_text(&io::fan_json(&f))), &report)
        }
        SurfaceCommand::Triangulations { count } => {
            let all = triangulations(count)?;
            let sequences: Vec<Value> = all
                .iter()
                .map(|d| triangulation_to_weights(count, d).map(|w| io::vec_json(&w)))
                .collect::<Result<_, _>>()?;
            let mut report = Report::new("surface triangulations", count.to_string().as_bytes());
            report.detail("count", all.len());
            let doc = json!({ "t": count, "count": all.len(), "half_weights": sequences });
            ctx.emit(Some(io::to_text(&doc)), &report)
        }
        SurfaceCommand::Symmetrize { input } => {
            let loaded = ctx.load(&input)?;
            let f = symmetrize(&fan_of(&loaded.input)?)?;
            let mut report = Report::new("surface symmetrize", &loaded.bytes);
            record_properties(&mut report, &f);
            ctx.emit(Some(io::to_text(&io::fan_json(&f))), &report)
        }
        SurfaceCommand::Desingularize { input } => {
            let loaded = ctx.load(&input)?;
            let f = desingularize(&fan_of(&loaded.input)?)?;
            let mut report = Report::new("surface desingularize", &loaded.bytes);
            record_properties(&mut report, &f);
            ctx.emit(Some(io::to_text(&io::fan_json(&f))), &report)
        }
        SurfaceCommand::Divisor { input } => {
            let loaded = ctx.load(&input)?;
            let g = graph_of(&loaded.input)?;
            let y = y_divisor_class(&g)?;
            let mut report = Report::new("surface divisor", &loaded.bytes);
            report.verdict("self_intersection_zero", num_traits::Zero::is_zero(&y.self_intersection));
            report.detail("class", io::vec_json(&y.class.coefficients));
            report.detail("products", io::vec_json(&y.products));
            let line = format!("Y1 ~ {}, Y1^2 = {}\n", y.class.render(), y.self_intersection);
            ctx.emit(Some(line), &report)
        }
        SurfaceCommand::Picard { input } => {
            let loaded = ctx.load(&input)?;
            let g = graph_of(&loaded.input)?;
            let p = verify_picard_presentation(&g)?;
            let mut report = Report::new("surface picard", &loaded.bytes);
            report.verdict("exact", true);
            report.detail("pic_rank", p.pic_rank);
            let doc = json!({
                "q": matrix_json(&p.q),
                "a_dual": matrix_json(&p.a_dual),
                "first": matrix_json(&p.first),
                "second": matrix_json(&p.second),
                "pic_rank": p.pic_rank,
            });
            ctx.emit(Some(io::to_text(&doc)), &report)
        }
    }
}

fn cmd_plot(ctx: &Ctx, loaded: &Loaded, format: &str) -> Outcome {
    if format != "svg" {
        return Err(Failure::Usage(format!("unsupported format `{format}`")));
    }
    let rank = match &loaded.input {
        Input::Arrangement(a) => a.rank(),
        Input::Fan(f) => f.rank(),
        Input::Weights(_) => 2,
        Input::Polytope(p) => p.rank,
    };
    let mut report = Report::new("plot", &loaded.bytes);
    let svg = match rank {
        2 => {
            let f = fan_of(&loaded.input)?;
            report.detail("rays", f.rays().len());
            plot::ray_wheel(f.rays())
        }
        3 => {
            let normals = match &loaded.input {
                Input::Arrangement(a) => a.covectors().to_vec(),
                Input::Fan(f) => f.check_properties().hyperplanes,
                _ => return Err(Failure::Usage("expected an arrangement or a fan".into())),
            };
            report.detail("lines", normals.len());
            plot::projective_lines(&normals)
        }
        r => return Err(Failure::Rank(r)),
    };
    ctx.emit(Some(svg), &report)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx { out: cli.out, timings: cli.timings, sporadic_dir: cli.sporadic_dir };
    match cli.command {
        Command::Catalog { name, list } => cmd_catalog(&ctx, name, list),
        Command::Surface { command } => cmd_surface(&ctx, command),
        Command::Verify { input } => cmd_verify(&ctx, &ctx.load(&input)?),
        Command::Fan { input } => cmd_fan(&ctx, &ctx.load(&input)?),
        Command::Roots { input } => cmd_roots(&ctx, &ctx.load(&input)?),
        Command::Polytope { input } => cmd_polytope(&ctx, &ctx.load(&input)?),
        Command::Star { input, cone } => cmd_star(&ctx, &ctx.load(&input)?, &cone),
        Command::Restrict { input, subspace } => cmd_restrict(&ctx, &ctx.load(&input)?, &subspace),
        Command::Poset { input } => cmd_poset(&ctx, &ctx.load(&input)?),
        Command::Parabolic { input, cone } => cmd_parabolic(&ctx, &ctx.load(&input)?, &cone),
        Command::Insert { input, hyperplane } => cmd_insert(&ctx, &ctx.load(&input)?, &hyperplane),
        Command::Autos { input } => cmd_autos(&ctx, &ctx.load(&input)?),
        Command::Embed { input } => cmd_embed(&ctx, &ctx.load(&input)?),
        Command::Plot { input, format } => cmd_plot(&ctx, &ctx.load(&input)?, &format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict(code)) => ExitCode::from(code),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Reference(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Rank(r)) => {
            eprintln!("error: plotting supports rank 2 and 3, got rank {r}");
            ExitCode::from(4)
        }
    }
}
