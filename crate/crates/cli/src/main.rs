use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nodalcodes::bounds::BoundReport;
use nodalcodes::classify::{classify_quartic_codes_with, ClassifyOptions};
use nodalcodes::evencode::{canonical_form, is_isomorphic, quartic_admissible, EvenSetCode};
use nodalcodes::nodal::{defect, defect_from_nodes, vanishing_dimension, verify_node, NodeConfiguration};
use nodalcodes::poly::HomogeneousForm;
use nodalcodes::series::symmetroid_hilbert_series;
use nodalcodes::symmetroid::{
    no_quadric_certificate, scan_nodes_fp_with, ScanOptions, SymmetricLinearMatrix, DEFAULT_DEGENERACY_THRESHOLD,
};
use serde::Serialize;

mod report;

use report::*;

#[derive(Parser)]
#[command(name = "nodalcodes", version, about = "Defects, codes and bounds for nodal surfaces")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Defect of the double solid branched along a nodal surface.
    Defect(DefectArgs),
    /// Dimension of the forms of a given degree through the nodes.
    VanishingDim {
        #[arg(long)]
        nodes: PathBuf,
        /// Defaults to 3b/2 - 4.
        #[arg(long)]
        form_degree: Option<u32>,
    },
    /// Check that every listed point is a node of the surface.
    VerifyNodes {
        #[arg(long)]
        nodes: PathBuf,
        /// Text file holding the surface equation; overrides the node file's.
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Lower bounds on the code dimension and the Miyaoka cap.
    Bounds {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        mu: u64,
        /// Report the printed closed form of the Beauville bound as the main value.
        #[arg(long)]
        paper_closed_form: bool,
    },
    /// All codes admissible for a quartic with `mu` nodes.
    ClassifyQuartic {
        #[arg(long)]
        mu: usize,
        /// Also list codes excluded only by the dimension lower bounds.
        #[arg(long)]
        audit: bool,
        /// Disable Griesmer pruning during the search.
        #[arg(long)]
        no_griesmer: bool,
    },
    /// Inspect codes given as code files.
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Rank-at-most-2 points of a symmetric linear matrix over F_p.
    SymmetroidScan(ScanArgs),
    /// Expand the symmetroid Hilbert series and check its leading terms.
    HilbertCheck {
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
}

#[derive(Args)]
struct DefectArgs {
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long, requires = "dim_m", conflicts_with = "nodes")]
    mu: Option<u64>,
    #[arg(long, requires = "mu")]
    dim_m: Option<u64>,
    #[arg(long)]
    nodes: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CodeAction {
    Info { code: PathBuf },
    Canonical { code: PathBuf },
    Isomorphic { first: PathBuf, second: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Web of quadrics through six points; all ten nodes are rational.
    Split,
    /// Uniformly random entries.
    General,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Split => "split",
            Family::General => "general",
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, required_unless_present = "matrix")]
    prime: Option<u64>,
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Family::Split, conflicts_with = "matrix")]
    family: Family,
    #[arg(long)]
    matrix: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_DEGENERACY_THRESHOLD)]
    threshold: usize,
}

enum Failure {
    Usage(String),
    Data(nodalcodes::Error),
    Verification(String),
}

impl From<nodalcodes::Error> for Failure {
    fn from(e: nodalcodes::Error) -> Self {
        Failure::Data(e)
    }
}

type Outcome = Result<(), Failure>;

/// Prefixes file-level errors with the offending path.
fn at<T>(path: &std::path::Path, r: nodalcodes::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        nodalcodes::Error::Io(_) | nodalcodes::Error::Json(_) => {
            Failure::Data(nodalcodes::Error::Data(format!("{}: {e}", path.display())))
        }
        e => Failure::Data(e),
    })
}

struct Output {
    json: bool,
}

impl Output {
    fn emit<T: Serialize>(&self, payload: &T, text: impl FnOnce() -> String) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(payload).expect("payload serializes"));
        } else {
            print!("{}", text());
        }
    }
}

fn configure_threads() -> Outcome {
    let Ok(value) = std::env::var("NODALCODES_THREADS") else { return Ok(()) };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("NODALCODES_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run_defect(args: DefectArgs, out: &Output) -> Outcome {
    let report = match (&args.nodes, args.mu, args.dim_m) {
        (Some(path), _, _) => {
            let cfg = at(path, NodeConfiguration::from_file(path))?;
            if let Some(b) = args.degree {
                if b != cfg.degree() {
                    return Err(Failure::Data(nodalcodes::Error::Data(format!(
                        "--degree {b} disagrees with degree {} in the node file",
                        cfg.degree()
                    ))));
                }
            }
            defect_from_nodes(&cfg)?
        }
        (None, Some(mu), Some(dim_m)) => {
            let b = args.degree.ok_or_else(|| Failure::Usage("--degree is required with --mu".into()))?;
            defect(b, mu, dim_m)?
        }
        _ => return Err(Failure::Usage("give either --nodes or --degree, --mu and --dim-m".into())),
    };
    out.emit(&report, || defect_text(&report));
    Ok(())
}

fn run_vanishing(nodes: PathBuf, form_degree: Option<u32>, out: &Output) -> Outcome {
    let cfg = at(&nodes, NodeConfiguration::from_file(&nodes))?;
    let d = match form_degree {
        Some(d) => d,
        None => {
            let d = 3 * cfg.degree() as i64 / 2 - 4;
            u32::try_from(d).map_err(|_| {
                Failure::Data(nodalcodes::Error::Domain(format!("default form degree {d} is negative; pass --form-degree")))
            })?
        }
    };
    let report = VanishingReport {
        mu: cfg.mu(),
        form_degree: d,
        field: cfg.field().to_string(),
        dimension: vanishing_dimension(&cfg, d),
        probabilistic: matches!(cfg.field(), nodalcodes::algebra::Field::Prime(_)),
    };
    out.emit(&report, || format!("dim of degree-{d} forms through {} nodes: {}\n", report.mu, report.dimension));
    Ok(())
}

fn run_verify(nodes: PathBuf, surface: Option<PathBuf>, out: &Output) -> Outcome {
    let cfg = at(&nodes, NodeConfiguration::from_file(&nodes))?;
    let f = match surface {
        Some(path) => {
            let text = at(&path, std::fs::read_to_string(&path).map_err(nodalcodes::Error::from))?;
            HomogeneousForm::parse(text.trim()).map_err(nodalcodes::Error::from)?.to_field(cfg.field())?
        }
        None => cfg
            .surface()
            .cloned()
            .ok_or_else(|| Failure::Data(nodalcodes::Error::Data("no surface equation given".into())))?,
    };
    if f.degree() != cfg.degree() {
        return Err(Failure::Data(nodalcodes::Error::Data(format!(
            "surface has degree {}, node file says {}",
            f.degree(),
            cfg.degree()
        ))));
    }
    let verified = cfg.nodes().iter().map(|p| verify_node(&f, p)).collect::<nodalcodes::Result<Vec<bool>>>()?;
    let report = VerifyReport { all_nodes: verified.iter().all(|&v| v), verified };
    out.emit(&report, || verify_text(&report));
    if report.all_nodes {
        Ok(())
    } else {
        Err(Failure::Verification("not every point is a node of the surface".into()))
    }
}

fn run_bounds(degree: u64, mu: u64, printed: bool, out: &Output) -> Outcome {
    let report = BoundReport::new(degree, mu)?;
    out.emit(&report, || bounds_text(&report, printed));
    Ok(())
}

fn run_classify(mu: usize, audit: bool, no_griesmer: bool, out: &Output) -> Outcome {
    let table = classify_quartic_codes_with(mu, ClassifyOptions { griesmer_pruning: !no_griesmer })?;
    let record = table.to_record(audit);
    out.emit(&record, || classify_text(&record));
    Ok(())
}

fn load_code(path: &PathBuf) -> Result<EvenSetCode, Failure> {
    at(path, EvenSetCode::from_file(path))
}

fn run_code(action: CodeAction, out: &Output) -> Outcome {
    match action {
        CodeAction::Info { code } => {
            let c = load_code(&code)?;
            let words = c.nonzero_words()?;
            let admissible = !words.is_empty()
                && words.iter().map(quartic_admissible).collect::<nodalcodes::Result<Vec<_>>>()?.iter().all(|&a| a);
            let report = CodeInfo {
                mu: c.mu(),
                dim: c.dim(),
                strict_dim: c.strict_dim(),
                profile: c.weight_profile()?,
                enumerator: c.weight_enumerator()?,
                canonical: canonical_form(&c)?.to_hex(),
                quartic_admissible: admissible,
            };
            out.emit(&report, || code_info_text(&report));
        }
        CodeAction::Canonical { code } => {
            let form = canonical_form(&load_code(&code)?)?;
            let report = CanonicalReport { canonical: form.to_hex(), representative: form.to_code().to_code_file() };
            out.emit(&report, || format!("{}\n", report.canonical));
        }
        CodeAction::Isomorphic { first, second } => {
            let report = IsomorphismReport { isomorphic: is_isomorphic(&load_code(&first)?, &load_code(&second)?)? };
            out.emit(&report, || format!("isomorphic: {}\n", report.isomorphic));
        }
    }
    Ok(())
}

fn run_scan(args: ScanArgs, out: &Output) -> Outcome {
    let (matrix, family, seed) = match (&args.matrix, args.seed) {
        (Some(path), _) => {
            let m = at(path, SymmetricLinearMatrix::from_file(path))?;
            if let Some(p) = args.prime {
                if p != m.prime() {
                    return Err(Failure::Data(nodalcodes::Error::Data(format!(
                        "--prime {p} disagrees with prime {} in the matrix file",
                        m.prime()
                    ))));
                }
            }
            (m, None, None)
        }
        (None, Some(seed)) => {
            let p = args.prime.ok_or_else(|| Failure::Usage("--prime is required with --seed".into()))?;
            let m = match args.family {
                Family::Split => SymmetricLinearMatrix::random_split(seed, p)?,
                Family::General => SymmetricLinearMatrix::random_general(seed, p)?,
            };
            (m, Some(args.family.name().to_string()), Some(seed))
        }
        (None, None) => return Err(Failure::Usage("give --matrix or --prime with --seed".into())),
    };
    let scan = scan_nodes_fp_with(&matrix, ScanOptions { degeneracy_threshold: args.threshold })?;
    let certificate = if !scan.degenerate && scan.points.len() == 10 {
        Some(no_quadric_certificate(&scan.points, scan.prime)?)
    } else {
        None
    };
    let certified = certificate.as_ref().is_some_and(|c| c.certified);
    let report = ScanReport { matrix: matrix.to_matrix_file(), family, seed, scan, certificate };
    out.emit(&report, || scan_text(&report));
    if certified {
        Ok(())
    } else {
        Err(Failure::Verification("no certified set of ten nodes".into()))
    }
}

fn run_hilbert(order: usize, out: &Output) -> Outcome {
    let coefficients = symmetroid_hilbert_series(order.max(5))?;
    let expected = [0, 0, 0, 10, 25, 46];
    let ok = coefficients.iter().zip(expected).all(|(c, e)| *c == e.into());
    let report = HilbertReport {
        coefficients: coefficients.iter().take(order + 1).map(|c| c.to_string()).collect(),
        check: ok,
    };
    out.emit(&report, || hilbert_text(&report));
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification("series does not start 10t^3 + 25t^4 + 46t^5".into()))
    }
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    let out = Output { json: cli.json };
    match cli.command {
        Command::Defect(args) => run_defect(args, &out),
        Command::VanishingDim { nodes, form_degree } => run_vanishing(nodes, form_degree, &out),
        Command::VerifyNodes { nodes, surface } => run_verify(nodes, surface, &out),
        Command::Bounds { degree, mu, paper_closed_form } => run_bounds(degree, mu, paper_closed_form, &out),
        Command::ClassifyQuartic { mu, audit, no_griesmer } => run_classify(mu, audit, no_griesmer, &out),
        Command::Code { action } => run_code(action, &out),
        Command::SymmetroidScan(args) => run_scan(args, &out),
        Command::HilbertCheck { order } => run_hilbert(order, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
    }
}
