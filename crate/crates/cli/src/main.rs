//! Batch command-line front end: parse JSON inputs, dispatch to the library,
//! emit JSON or LaTeX. Exit codes: 0 success, 1 domain error, 2 usage error.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skein_core::dt::{self, DtDatum, FaceDiagram, FaceType, Family, GlobalCoord, StdTag};
use skein_core::presented::{
    ry_rescale, MonogonElement, Sigma02Element, Sigma03Element,
};
use skein_core::scalar::GroundScalar;
use skein_core::surface;
use skein_core::torus::TorusElement;
use skein_core::tri::{self, TriCoord, Triangulation};
use skein_core::verify;
use skein_core::{latex, weyl_normalize, Error, VarSet};

#[derive(Parser)]
#[command(name = "skein", version, about = "Exact quantum-torus and trace-model computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized verification suites (falls back to
    /// SKEIN_TORUS_SEED, then a fixed default).
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum torus operations.
    Torus(TorusCmd),
    /// Finitely presented algebras (monogon, sigma02, sigma03, rescale).
    Presented(PresentedCmd),
    /// Ideal triangulation operations.
    Tri(TriCmd),
    /// Dehn-Thurston coordinate operations.
    Coords(CoordsCmd),
    /// Closed-form quantum traces.
    Trace(TraceCmd),
    /// Global surface assembly.
    Surface(SurfaceCmd),
    /// Run named verification suites.
    Verify(VerifyCmd),
}

#[derive(Args)]
struct TorusCmd {
    #[command(subcommand)]
    op: TorusOp,
}

#[derive(Subcommand)]
enum TorusOp {
    /// Multiply two elements over the same form. Elements may omit their
    /// `form` field when --form supplies it.
    Mul {
        #[arg(long)]
        form: Option<PathBuf>,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Weyl-normalize an ordered word: JSON `{"form": ..., "word": [["x1",1],...]}`.
    Weyl {
        #[arg(long)]
        input: PathBuf,
    },
    /// Apply the reflection anti-automorphism.
    Reflect {
        #[arg(long)]
        a: PathBuf,
    },
    /// Reflection-normalize an element.
    Normalize {
        #[arg(long)]
        a: PathBuf,
    },
}

#[derive(Args)]
struct PresentedCmd {
    /// Algebra name: monogon | sigma02 | sigma03.
    #[arg(long)]
    algebra: String,
    #[command(subcommand)]
    op: PresentedOp,
}

#[derive(Subcommand)]
enum PresentedOp {
    /// Multiply two elements of the selected algebra.
    Mul {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Reduced trace (monogon only).
    Trace {
        #[arg(long)]
        a: PathBuf,
    },
    /// Embed into the half-variable scalar ring (sigma03 only).
    Embed {
        #[arg(long)]
        a: PathBuf,
    },
    /// Rescale a scalar by boundary hits: JSON `{"vars":[...], "coef": ..., "hits": {...}}`.
    Rescale {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct TriCmd {
    #[command(subcommand)]
    op: TriOp,
}

#[derive(Subcommand)]
enum TriOp {
    /// Face matrix (or the doubled matrix with --doubled).
    Qmatrix {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        doubled: bool,
    },
    /// Coordinate-monoid membership of `{"n": {edge: int, ...}}`.
    Member {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        coord: PathBuf,
    },
    /// Rank of the coordinate monoid.
    Rank {
        #[arg(long)]
        tri: PathBuf,
    },
    /// Cut along an interior edge; prints the cut triangulation and matrix.
    Cut {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        edge: String,
    },
    /// Graded-model product of two member coordinates.
    Gmul {
        #[arg(long)]
        tri: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Args)]
struct CoordsCmd {
    #[command(subcommand)]
    op: CoordsOp,
}

#[derive(Subcommand)]
enum CoordsOp {
    /// Membership of a coordinate: face-level with --face-type, else global.
    Member {
        #[arg(long)]
        datum: Option<PathBuf>,
        #[arg(long)]
        face_type: Option<u8>,
        #[arg(long)]
        coord: PathBuf,
    },
    /// Split a global member coordinate into per-face coordinates.
    Split {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        coord: PathBuf,
    },
    /// Decompose a face coordinate into its canonical diagram.
    Decompose {
        #[arg(long)]
        face_type: u8,
        #[arg(long)]
        coord: PathBuf,
    },
    /// Normalize a matched family to its canonical representative.
    Normalize {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        family: PathBuf,
    },
}

#[derive(Args)]
struct TraceCmd {
    #[command(subcommand)]
    op: TraceOp,
}

#[derive(Subcommand)]
enum TraceOp {
    /// Closed-form trace of one standard component with a twist power.
    Pants {
        #[arg(long = "type")]
        face_type: u8,
        #[arg(long)]
        component: String,
        #[arg(long, default_value_t = 0)]
        twist: i64,
    },
    /// Trace of a face diagram (JSON).
    Multicurve {
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Args)]
struct SurfaceCmd {
    #[command(subcommand)]
    op: SurfaceOp,
}

#[derive(Subcommand)]
enum SurfaceOp {
    /// Evaluate the basis map on a matched family.
    Phi {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Evaluate the family as given, without normalizing first.
        #[arg(long)]
        raw: bool,
    },
    /// The dual-graph form and its symplectic double.
    Qmatrix {
        #[arg(long)]
        datum: PathBuf,
    },
    /// Monoid rank behind the dimension statement.
    Gkdim {
        #[arg(long)]
        datum: PathBuf,
    },
    /// Graded product of two global member coordinates.
    Gmul {
        #[arg(long)]
        datum: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Args)]
struct VerifyCmd {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// List available suites.
    #[arg(long)]
    list: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("SKEIN_TORUS_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(verify::DEFAULT_SEED)
    });
    match run(&cli, seed) {
        Ok(output) => {
            let text = match cli.format {
                Format::Json => format!("{:#}", output.json),
                Format::Latex => output.latex.unwrap_or_else(|| format!("{:#}", output.json)),
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, text + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => println!("{text}"),
            }
            if output.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => println!(
                    "{:#}",
                    serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } })
                ),
                Format::Latex => eprintln!("error[{}]: {e}", e.code()),
            }
            ExitCode::from(1)
        }
    }
}

struct Output {
    json: serde_json::Value,
    latex: Option<String>,
    failed: bool,
}

impl Output {
    fn json(v: serde_json::Value) -> Self {
        Output { json: v, latex: None, failed: false }
    }

    fn element(e: &TorusElement) -> Self {
        Output { json: e.to_json(), latex: Some(latex::torus_to_latex(e)), failed: false }
    }

    fn scalar(s: &GroundScalar) -> Self {
        Output { json: s.to_json(), latex: Some(latex::scalar_to_latex(s)), failed: false }
    }
}

fn read_json(path: &PathBuf) -> Result<serde_json::Value, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::BadInput(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli, seed: u64) -> Result<Output, Error> {
    match &cli.command {
        Command::Torus(cmd) => torus_cmd(cmd),
        Command::Presented(cmd) => presented_cmd(cmd),
        Command::Tri(cmd) => tri_cmd(cmd),
        Command::Coords(cmd) => coords_cmd(cmd),
        Command::Trace(cmd) => trace_cmd(cmd),
        Command::Surface(cmd) => surface_cmd(cmd),
        Command::Verify(cmd) => verify_cmd(cmd, seed),
    }
}

fn torus_cmd(cmd: &TorusCmd) -> Result<Output, Error> {
    match &cmd.op {
        TorusOp::Mul { form, a, b } => {
            let form_json = form.as_ref().map(read_json).transpose()?;
            let mut ja = read_json(a)?;
            let mut jb = read_json(b)?;
            if let Some(fj) = &form_json {
                for j in [&mut ja, &mut jb] {
                    if j.get("form").is_none() {
                        j["form"] = fj.clone();
                    }
                }
            }
            let a = TorusElement::from_json(&ja)?;
            let b = TorusElement::from_json(&jb)?;
            Ok(Output::element(&a.mul(&b)?))
        }
        TorusOp::Weyl { input } => {
            let v = read_json(input)?;
            let form: skein_core::AntisymForm = serde_json::from_value(
                v.get("form")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("missing `form`".into()))?,
            )
            .map_err(|e| Error::BadInput(format!("form: {e}")))?;
            let form = std::sync::Arc::new(skein_core::AntisymForm::new(
                form.gens().to_vec(),
                form.matrix().to_vec(),
            )?);
            let word: Vec<(String, i64)> = serde_json::from_value(
                v.get("word")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("missing `word`".into()))?,
            )
            .map_err(|e| Error::BadInput(format!("word: {e}")))?;
            let vars = VarSet::empty();
            Ok(Output::element(&weyl_normalize(&form, &vars, &word)?))
        }
        TorusOp::Reflect { a } => {
            let a = TorusElement::from_json(&read_json(a)?)?;
            Ok(Output::element(&a.reflection()))
        }
        TorusOp::Normalize { a } => {
            let a = TorusElement::from_json(&read_json(a)?)?;
            Ok(Output::element(&a.reflection_normalize()?))
        }
    }
}

fn presented_cmd(cmd: &PresentedCmd) -> Result<Output, Error> {
    match (&cmd.algebra[..], &cmd.op) {
        ("monogon", PresentedOp::Mul { a, b }) => {
            let a = MonogonElement::from_json(&read_json(a)?)?;
            let b = MonogonElement::from_json(&read_json(b)?)?;
            Ok(Output::json(a.mul(&b).to_json()))
        }
        ("monogon", PresentedOp::Trace { a }) => {
            let a = MonogonElement::from_json(&read_json(a)?)?;
            Ok(Output::element(&a.reduced_trace()))
        }
        ("sigma02", PresentedOp::Mul { a, b }) => {
            let a = Sigma02Element::from_json(&read_json(a)?)?;
            let b = Sigma02Element::from_json(&read_json(b)?)?;
            Ok(Output::json(a.mul(&b).to_json()))
        }
        ("sigma03", PresentedOp::Mul { a, b }) => {
            let a = Sigma03Element::from_json(&read_json(a)?)?;
            let b = Sigma03Element::from_json(&read_json(b)?)?;
            Ok(Output::json(a.mul(&b).to_json()))
        }
        ("sigma03", PresentedOp::Embed { a }) => {
            let a = Sigma03Element::from_json(&read_json(a)?)?;
            Ok(Output::scalar(&a.embed()))
        }
        (_, PresentedOp::Rescale { input }) => {
            let v = read_json(input)?;
            let names: Vec<String> = serde_json::from_value(
                v.get("vars")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("missing `vars`".into()))?,
            )
            .map_err(|e| Error::BadInput(format!("vars: {e}")))?;
            let vars = VarSet::new(names)?;
            let coef = GroundScalar::from_json(
                &vars,
                v.get("coef").ok_or_else(|| Error::BadInput("missing `coef`".into()))?,
            )?;
            let hits: BTreeMap<String, u32> = serde_json::from_value(
                v.get("hits")
                    .cloned()
                    .ok_or_else(|| Error::BadInput("missing `hits`".into()))?,
            )
            .map_err(|e| Error::BadInput(format!("hits: {e}")))?;
            Ok(Output::scalar(&ry_rescale(&coef, &hits)?))
        }
        (alg, _) => Err(Error::BadInput(format!(
            "operation not available for algebra `{alg}`"
        ))),
    }
}

fn tri_cmd(cmd: &TriCmd) -> Result<Output, Error> {
    match &cmd.op {
        TriOp::Qmatrix { tri, doubled } => {
            let t = Triangulation::from_json(&read_json(tri)?)?;
            let q = if *doubled { t.doubled_matrix() } else { t.face_matrix() };
            Ok(Output::json(serde_json::to_value(&q).expect("form")))
        }
        TriOp::Member { tri, coord } => {
            let t = Triangulation::from_json(&read_json(tri)?)?;
            let v = read_json(coord)?;
            let n: TriCoord = serde_json::from_value(
                v.get("n").cloned().unwrap_or(v.clone()),
            )
            .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let violation = tri::lambda_delta_violation(&t, &n)?;
            Ok(Output::json(serde_json::json!({
                "member": violation.is_none(),
                "violation": violation,
            })))
        }
        TriOp::Rank { tri } => {
            let t = Triangulation::from_json(&read_json(tri)?)?;
            Ok(Output::json(serde_json::json!({ "rank": tri::lambda_delta_rank(&t)? })))
        }
        TriOp::Cut { tri, edge } => {
            let t = Triangulation::from_json(&read_json(tri)?)?;
            let cut = tri::cut_edge(&t, edge)?;
            Ok(Output::json(serde_json::json!({
                "cut": cut.cut.to_json(),
                "matrix": cut.matrix,
                "e_prime": cut.e_prime,
                "e_double": cut.e_double,
            })))
        }
        TriOp::Gmul { tri, a, b } => {
            let t = Triangulation::from_json(&read_json(tri)?)?;
            let pa: TriCoord = serde_json::from_value(read_json(a)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let pb: TriCoord = serde_json::from_value(read_json(b)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let elt = tri::graded_trace_element(&t, &pa, &pb)?;
            Ok(Output::element(&elt))
        }
    }
}

fn coords_cmd(cmd: &CoordsCmd) -> Result<Output, Error> {
    match &cmd.op {
        CoordsOp::Member { datum, face_type, coord } => match (datum, face_type) {
            (_, Some(ft)) => {
                let face = FaceType::from_number(*ft)?;
                let c: dt::FaceCoord = serde_json::from_value(read_json(coord)?)
                    .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
                let violation = dt::lambda_violation(face, &c)?;
                Ok(Output::json(serde_json::json!({
                    "member": violation.is_none(),
                    "violation": violation,
                })))
            }
            (Some(datum), None) => {
                let d = DtDatum::from_json(&read_json(datum)?)?;
                let c: GlobalCoord = serde_json::from_value(read_json(coord)?)
                    .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
                let violation = dt::global_violation(&d, &c)?;
                Ok(Output::json(serde_json::json!({
                    "member": violation.is_none(),
                    "violation": violation,
                })))
            }
            (None, None) => Err(Error::BadInput(
                "provide --face-type for face membership or --datum for global".into(),
            )),
        },
        CoordsOp::Split { datum, coord } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            let c: GlobalCoord = serde_json::from_value(read_json(coord)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let split = dt::split_coordinates(&d, &c)?;
            Ok(Output::json(serde_json::to_value(split).expect("coords")))
        }
        CoordsOp::Decompose { face_type, coord } => {
            let face = FaceType::from_number(*face_type)?;
            let c: dt::FaceCoord = serde_json::from_value(read_json(coord)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let d = dt::decompose_face_coord(face, &c)?;
            Ok(Output::json(d.to_json()))
        }
        CoordsOp::Normalize { datum, family } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            let fam = family_from_json(&d, &read_json(family)?)?;
            let norm = dt::normalize_matched(&d, &fam)?;
            Ok(Output::json(family_to_json(&norm)))
        }
    }
}

fn family_from_json(d: &DtDatum, v: &serde_json::Value) -> Result<Family, Error> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::BadInput("family must be a list of face diagrams".into()))?;
    if arr.len() != d.faces().len() {
        return Err(Error::BadInput(format!(
            "family has {} entries, datum has {} faces",
            arr.len(),
            d.faces().len()
        )));
    }
    let mut out = Vec::new();
    for (fi, item) in arr.iter().enumerate() {
        let mut value = item.clone();
        if value.get("face").is_none() {
            // Allow omitting the face type; fill from the datum.
            value["face"] =
                serde_json::Value::from(d.faces()[fi].face.type_number());
        }
        out.push(FaceDiagram::from_json(&value)?);
    }
    Ok(Family(out))
}

fn family_to_json(f: &Family) -> serde_json::Value {
    serde_json::Value::Array(f.0.iter().map(FaceDiagram::to_json).collect())
}

fn trace_cmd(cmd: &TraceCmd) -> Result<Output, Error> {
    match &cmd.op {
        TraceOp::Pants { face_type, component, twist } => {
            let face = FaceType::from_number(*face_type)?;
            let tag = StdTag::parse(component)?;
            let tr = skein_core::pants::trace_component(face, tag, *twist)?;
            Ok(Output::element(&tr))
        }
        TraceOp::Multicurve { diagram } => {
            let d = FaceDiagram::from_json(&read_json(diagram)?)?;
            let tr = skein_core::pants::trace_multicurve(&d)?;
            Ok(Output::element(&tr))
        }
    }
}

fn surface_cmd(cmd: &SurfaceCmd) -> Result<Output, Error> {
    match &cmd.op {
        SurfaceOp::Phi { datum, family, raw } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            let fam = family_from_json(&d, &read_json(family)?)?;
            let value = surface::phi(&d, &fam, !*raw)?;
            Ok(Output::element(&value))
        }
        SurfaceOp::Qmatrix { datum } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            let q = surface::dual_graph_form(&d);
            let doubled = surface::global_form(&d);
            Ok(Output::json(serde_json::json!({
                "q": serde_json::to_value(&q).expect("form"),
                "doubled": serde_json::to_value(doubled.as_ref()).expect("form"),
            })))
        }
        SurfaceOp::Gkdim { datum } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            Ok(Output::json(serde_json::json!({ "gk_dimension": surface::gk_dimension(&d)? })))
        }
        SurfaceOp::Gmul { datum, a, b } => {
            let d = DtDatum::from_json(&read_json(datum)?)?;
            let ka: GlobalCoord = serde_json::from_value(read_json(a)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let kb: GlobalCoord = serde_json::from_value(read_json(b)?)
                .map_err(|e| Error::BadInput(format!("coord: {e}")))?;
            let (pow, sum) = surface::gre_product(&d, &ka, &kb)?;
            Ok(Output::json(serde_json::json!({
                "q2": pow,
                "sum": serde_json::to_value(sum).expect("coord"),
            })))
        }
    }
}

fn verify_cmd(cmd: &VerifyCmd, seed: u64) -> Result<Output, Error> {
    if cmd.list {
        return Ok(Output::json(serde_json::json!({ "suites": verify::SUITE_NAMES })));
    }
    let reports = if cmd.suite == "all" {
        verify::run_all(seed)?
    } else {
        vec![verify::run_suite(&cmd.suite, seed)?]
    };
    let mut failed = false;
    let mut items = Vec::new();
    for r in &reports {
        failed |= !r.ok();
        eprintln!(
            "{}: {} ({} passed, {} failed)",
            r.name,
            if r.ok() { "PASS" } else { "FAIL" },
            r.passed,
            r.failed
        );
        items.push(serde_json::json!({
            "suite": r.name,
            "pass": r.ok(),
            "passed": r.passed,
            "failed": r.failed,
            "notes": r.notes,
        }));
    }
    Ok(Output {
        json: serde_json::Value::Array(items),
        latex: None,
        failed,
    })
}
