use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simplex_spectra::circuits::{classify_circuit, enumerate_circuits, DEFAULT_MAX_LEN};
use simplex_spectra::constructions::{
    cartesian_product, duplicate_motif, wedge_family, wedge_sum_renaming, FaceBijection,
};
use simplex_spectra::generate::{random_complex, seeded_rng, RandomParams};
use simplex_spectra::homology::betti;
use simplex_spectra::io::{digest, export_matrix, parse_complex, parse_weights, ComplexJson};
use simplex_spectra::laplacian::{down_laplacian_with, full_laplacian_with, up_laplacian};
use simplex_spectra::orientation::boundary_matrix;
use simplex_spectra::signed_graph::{balanced_components, BalanceWitness, SignedIncidenceGraph};
use simplex_spectra::spectra::{laplacian_spectrum, MULTIPLICITY_TOL, TOP_TOL};
use simplex_spectra::verify::{run_verification, Theorem, VerificationSummary, VerifyConfig};
use simplex_spectra::{
    normalized_weights, uniform_weights, Complex, EmptyFace, Error, LaplacianKind, Orientation, Regime,
    WeightFunction,
};

#[derive(Parser, Debug)]
#[command(name = "simspec", version, about = "Laplacian spectra and balance of simplicial complexes")]
struct Cli {
    /// Complex JSON file, or `-` for standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tolerance of the top-eigenvalue test.
    #[arg(long, global = true, default_value_t = TOP_TOL)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Up,
    Down,
    Full,
}

impl From<Op> for LaplacianKind {
    fn from(op: Op) -> Self {
        match op {
            Op::Up => LaplacianKind::Up,
            Op::Down => LaplacianKind::Down,
            Op::Full => LaplacianKind::Full,
        }
    }
}

#[derive(Args, Debug)]
struct LaplacianArgs {
    #[arg(long, allow_negative_numbers = true)]
    dim: isize,
    #[arg(long, value_enum, default_value_t = Op::Up)]
    op: Op,
    /// `normalized`, `uniform` or `file:<path>`.
    #[arg(long, default_value = "normalized")]
    weighting: String,
    /// Leave the empty face out of the down Laplacian at dimension 0.
    #[arg(long)]
    no_empty_face: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of a Laplacian.
    Spectrum {
        #[command(flatten)]
        lap: LaplacianArgs,
        #[arg(long)]
        vectors: bool,
    },
    /// Balance of the signed incidence graph, per component.
    Balance {
        #[arg(long, allow_negative_numbers = true)]
        dim: isize,
    },
    /// Path components of the faces of one dimension.
    Components {
        #[arg(long)]
        dim: isize,
    },
    /// Circuits of `(dim+1)`-faces and their classification.
    Circuits {
        #[arg(long)]
        dim: isize,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Reduced rational Betti numbers.
    Betti,
    /// Build a new complex from the input.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Randomized cross-checks; one JSON report per line, then a summary.
    Verify {
        #[arg(value_parser = parse_theorem)]
        theorem: Theorem,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
        max_len: usize,
    },
    /// Generate a complex.
    Generate {
        #[command(subcommand)]
        kind: Generate,
    },
    /// Laplacian or boundary matrix with face labels.
    Export {
        #[command(flatten)]
        lap: LaplacianArgs,
        /// Export the boundary matrix `∂_dim` instead of a Laplacian.
        #[arg(long)]
        boundary: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// Glue a second complex along a face.
    Wedge {
        #[arg(long)]
        other: String,
        /// Face of the input, as `a,b`.
        #[arg(long)]
        face: String,
        /// Face of the other complex.
        #[arg(long)]
        other_face: String,
        /// Vertex bijection `a:x,b:y`; defaults to sorted order.
        #[arg(long)]
        map: Option<String>,
    },
    /// Cartesian product with a second complex.
    Product {
        #[arg(long)]
        other: String,
    },
    /// Duplicate the motif spanned by the given vertices.
    Duplicate {
        #[arg(long)]
        motif_vertices: String,
        #[arg(long)]
        dim: isize,
    },
    /// Member `steps` of the iterated wedge family.
    Family {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        steps: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Generate {
    WedgeFamily {
        #[arg(long, default_value_t = 0)]
        dim: usize,
        #[arg(long)]
        steps: usize,
    },
    Random {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
    },
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn read_text(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_complex(path: &str) -> anyhow::Result<Complex> {
    Ok(parse_complex(&read_text(path)?)?)
}

fn split_labels(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|v| !v.is_empty()).collect()
}

fn weights(k: &Complex, spec: &str) -> anyhow::Result<WeightFunction> {
    match spec {
        "normalized" => Ok(normalized_weights(k)),
        "uniform" => Ok(uniform_weights(k)),
        other => match other.strip_prefix("file:") {
            Some(path) => Ok(parse_weights(k, &read_text(path)?)?),
            None => bail!(Error::MalformedInput(format!("unknown weighting {other:?}"))),
        },
    }
}

fn empty_face(lap: &LaplacianArgs) -> EmptyFace {
    if lap.no_empty_face {
        EmptyFace::Drop
    } else {
        EmptyFace::Keep
    }
}

fn complex_value(k: &Complex) -> Value {
    serde_json::to_value(ComplexJson::from(k)).expect("plain data")
}

fn cmd_spectrum(cli: &Cli, lap: &LaplacianArgs, vectors: bool) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    let w = weights(&k, &lap.weighting)?;
    let s = laplacian_spectrum(&k, lap.dim, lap.op.into(), &Orientation::canonical(), &w, empty_face(lap), vectors)?;
    let top = (lap.dim + 2) as f64;
    let mut out = json!({
        "dim": lap.dim,
        "op": s.source.kind,
        "regime": s.source.regime,
        "faces": k.faces(lap.dim).iter().map(|f| k.face_label(f)).collect::<Vec<_>>(),
        "eigenvalues": s.spectrum.eigenvalues,
        "lambda_max": s.spectrum.max(),
    });
    if matches!(lap.op, Op::Up) && w.regime() == Regime::Normalized {
        let lmax = s.spectrum.max().unwrap_or(0.0);
        out["has_top_eigenvalue"] = json!((lmax - top).abs() <= cli.tol);
        out["top_multiplicity"] = json!(s.spectrum.count_near(top, MULTIPLICITY_TOL));
    }
    if let Some(v) = &s.spectrum.vectors {
        out["vectors"] = json!(v.to_rows());
    }
    Ok(out)
}

fn node_label(k: &Complex, g: &SignedIncidenceGraph, node: usize) -> String {
    format!("{{{}}}", k.face_label(g.node_face(node)))
}

fn cmd_balance(cli: &Cli, dim: isize) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    let s = Orientation::canonical();
    let g = SignedIncidenceGraph::new(&k, dim, &s)?;
    let comps = balanced_components(&k, dim, &s)?;
    let components: Vec<Value> = comps
        .iter()
        .map(|c| {
            let witness = match &c.witness {
                BalanceWitness::Switching(signs) => json!({
                    "switching": signs.iter().map(|(n, x)| (node_label(&k, &g, *n), json!(x))).collect::<serde_json::Map<_, _>>()
                }),
                BalanceWitness::NegativeCycle(cycle) => json!({
                    "negative_cycle": cycle.iter().map(|n| node_label(&k, &g, *n)).collect::<Vec<_>>()
                }),
            };
            json!({
                "faces": c.nodes.iter().map(|n| node_label(&k, &g, *n)).collect::<Vec<_>>(),
                "balanced": c.balanced,
                "witness": witness,
            })
        })
        .collect();
    Ok(json!({
        "dim": dim,
        "balanced": comps.iter().all(|c| c.balanced),
        "balanced_components": comps.iter().filter(|c| c.balanced).count(),
        "components": components,
    }))
}

fn cmd_components(cli: &Cli, dim: isize) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    if dim < 0 || dim > k.dim() {
        bail!(Error::DimensionOutOfRange { dim, min: 0, max: k.dim() });
    }
    let comps: Vec<Vec<String>> =
        k.path_components(dim).iter().map(|c| c.iter().map(|f| k.face_label(f)).collect()).collect();
    Ok(json!({ "dim": dim, "connected": comps.len() == 1, "components": comps }))
}

fn cmd_circuits(cli: &Cli, dim: isize, max_len: usize) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    if dim < 0 || dim >= k.dim() {
        bail!(Error::DimensionOutOfRange { dim, min: 0, max: k.dim() - 1 });
    }
    let s = Orientation::canonical();
    let e = enumerate_circuits(&k, dim, max_len);
    let mut forbidden = false;
    let mut circuits = Vec::new();
    for c in &e.circuits {
        let f = c.is_forbidden(&s)?;
        forbidden |= f;
        circuits.push(json!({
            "faces": c.top_faces.iter().map(|f| k.face_label(f)).collect::<Vec<_>>(),
            "length": c.len(),
            "sign": c.sign(&s)?,
            "orientability": classify_circuit(&k, c, &s)?,
            "forbidden": f,
        }));
    }
    Ok(json!({ "dim": dim, "complete": e.complete, "forbidden": forbidden, "circuits": circuits }))
}

fn cmd_betti(cli: &Cli) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    let b = betti(&k);
    Ok(json!({ "reduced": b.reduced, "acyclic": b.is_zero(), "euler_characteristic": b.euler_characteristic() }))
}

fn cmd_construct(cli: &Cli, kind: &Construct) -> anyhow::Result<Value> {
    let k = match kind {
        Construct::Wedge { other, face, other_face, map } => {
            let (k1, k2) = (read_complex(&cli.input)?, read_complex(other)?);
            let (f1, f2) = (split_labels(face), split_labels(other_face));
            let phi = match map {
                Some(m) => FaceBijection::parse(m)?,
                None => FaceBijection::in_order(&f1, &f2)?,
            };
            wedge_sum_renaming(&k1, &k2, &f1, &f2, &phi)?
        }
        Construct::Product { other } => cartesian_product(&read_complex(&cli.input)?, &read_complex(other)?),
        Construct::Duplicate { motif_vertices, dim } => {
            let k = read_complex(&cli.input)?;
            let sigma = k.induced_subcomplex(&split_labels(motif_vertices))?;
            duplicate_motif(&k, &sigma, *dim)?.complex
        }
        Construct::Family { dim, steps } => wedge_family(*dim, *steps),
    };
    Ok(complex_value(&k))
}

fn cmd_generate(cli: &Cli, kind: &Generate) -> anyhow::Result<Value> {
    let k = match kind {
        Generate::WedgeFamily { dim, steps } => wedge_family(*dim, *steps),
        Generate::Random { max_vertices, max_dim, density } => {
            let params = RandomParams { max_vertices: *max_vertices, max_dim: *max_dim, density: *density };
            random_complex(&mut seeded_rng(cli.seed), &params)?
        }
    };
    let mut v = complex_value(&k);
    v["digest"] = json!(digest(&k));
    Ok(v)
}

fn cmd_export(cli: &Cli, lap: &LaplacianArgs, boundary: bool) -> anyhow::Result<Value> {
    let k = read_complex(&cli.input)?;
    if boundary {
        let d = boundary_matrix(&k, lap.dim, &Orientation::canonical())?;
        return Ok(json!({
            "dim": lap.dim,
            "rows": k.faces(lap.dim - 1).iter().map(|f| k.face_label(f)).collect::<Vec<_>>(),
            "cols": k.faces(lap.dim).iter().map(|f| k.face_label(f)).collect::<Vec<_>>(),
            "matrix": d.matrix.to_rows(),
        }));
    }
    let w = weights(&k, &lap.weighting)?;
    let s = Orientation::canonical();
    let l = match lap.op {
        Op::Up => up_laplacian(&k, lap.dim, &s, &w)?,
        Op::Down => down_laplacian_with(&k, lap.dim, &s, &w, empty_face(lap))?,
        Op::Full => full_laplacian_with(&k, lap.dim, &s, &w, empty_face(lap))?,
    };
    Ok(serde_json::to_value(export_matrix(&k, &l))?)
}

/// Streams reports; returns whether every report agreed.
fn cmd_verify(cli: &Cli, cfg: VerifyConfig) -> anyhow::Result<bool> {
    let reports = run_verification(&cfg)?;
    let mut out = io::stdout().lock();
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
    }
    let summary = VerificationSummary::of(&reports);
    writeln!(out, "{}", json!({ "theorem": cfg.theorem, "trials": cfg.trials, "seed": cli.seed, "summary": summary }))?;
    Ok(summary.disagreements == 0 && summary.truncated == 0)
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let Format::Json = cli.format;
    let value = match &cli.command {
        Command::Spectrum { lap, vectors } => cmd_spectrum(cli, lap, *vectors)?,
        Command::Balance { dim } => cmd_balance(cli, *dim)?,
        Command::Components { dim } => cmd_components(cli, *dim)?,
        Command::Circuits { dim, max_len } => cmd_circuits(cli, *dim, *max_len)?,
        Command::Betti => cmd_betti(cli)?,
        Command::Construct { kind } => cmd_construct(cli, kind)?,
        Command::Generate { kind } => cmd_generate(cli, kind)?,
        Command::Export { lap, boundary } => cmd_export(cli, lap, *boundary)?,
        Command::Verify { theorem, trials, max_vertices, max_dim, density, max_len } => {
            let cfg = VerifyConfig {
                theorem: *theorem,
                trials: *trials,
                seed: cli.seed,
                max_vertices: *max_vertices,
                max_dim: *max_dim,
                density: *density,
                max_len: *max_len,
                tol: cli.tol,
            };
            return cmd_verify(cli, cfg);
        }
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification found disagreements");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e.downcast_ref::<Error>().is_some_and(Error::is_internal);
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
