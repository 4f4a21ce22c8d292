//! Command-line front end.
//!
//! Exit codes are a stable contract: 0 on success (verification clean),
//! 1 when a verification run finds mismatches or counterexamples, 2 on
//! input errors. Output goes to stdout (JSON by default), diagnostics to
//! stderr, and identical invocations produce identical bytes: worker
//! parallelism only reorders computation, never output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use std::io::Read;
use std::path::PathBuf;

use crate::families::FamilySpec;
use crate::graph::{parse_graph6, to_graph6, Graph, VertexSet};
use crate::spectral::{interlacing_check, normalized_laplacian, Spectrum};
use crate::structure::{coarsest_equitable_refinement, Partition};
use crate::verify::{
    self, classify, ClassificationReport,
};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "specmult",
    version,
    about = "Normalized-Laplacian spectra, multiplicity-(n-3) classification, and exhaustive verification for small graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalue clusters (and exact factors with --exact) per input graph
    Spectrum {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decision procedure per input graph (exact route)
    Classify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Enumerate order-n connected graphs and verify the characterization
    Verify {
        #[arg(long)]
        n: usize,
        /// graph6 corpus standing in for the built-in enumeration
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact cospectrality buckets; characterized graphs must sit alone
    DsCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List in-class graphs with second-least eigenvalue != 1 and nu = 2
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Twin, clique, interlacing, quotient-lifting and common-vertex suites
    Lemmas {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Construct a named family and print its graph6 line
    Build {
        #[command(flatten)]
        source: SourceArgs,
    },
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Family name: Kn, Kn-e, multipartite, G1, G2, G3, Gamma1, Gamma2, Gamma3
    #[arg(long)]
    family: Option<String>,
    /// Order for Kn / Kn-e
    #[arg(long)]
    n: Option<usize>,
    /// Clique parameter t
    #[arg(long)]
    t: Option<usize>,
    /// Clique parameter s (Gamma templates)
    #[arg(long)]
    s: Option<usize>,
    /// Clique parameter p (Gamma templates)
    #[arg(long)]
    p: Option<usize>,
    /// Part sizes for multipartite, comma separated
    #[arg(long, value_delimiter = ',')]
    parts: Option<Vec<usize>>,
    /// graph6 input file, one graph per line (default: stdin)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Clustering tolerance for the float route
    #[arg(long, default_value_t = crate::spectral::DEFAULT_TOL)]
    tolerance: f64,
    /// Attach exact factors (spectrum command; classification is always exact)
    #[arg(long, overrides_with = "float")]
    exact: bool,
    /// Float route only
    #[arg(long)]
    float: bool,
    /// Data-parallel workers for per-graph computation
    #[arg(long, env = "SPECMULT_WORKERS", default_value_t = 1)]
    workers: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Spectrum { source, output } => cmd_spectrum(&source, &output),
        Command::Classify { source, output } => cmd_classify(&source, &output),
        Command::Verify { n, input, output } => cmd_verify(n, input.as_deref(), &output),
        Command::DsCheck { n, input, output } => cmd_ds_check(n, input.as_deref(), &output),
        Command::Conjecture { n, input, output } => cmd_conjecture(n, input.as_deref(), &output),
        Command::Lemmas { source, output } => cmd_lemmas(&source, &output),
        Command::Build { source } => cmd_build(&source),
    }
}

// ---------------------------------------------------------------------------
// input plumbing

fn family_from_args(src: &SourceArgs) -> Result<FamilySpec> {
    let name = src
        .family
        .as_deref()
        .ok_or_else(|| Error::InvalidParameter("--family required".into()))?;
    let need = |v: Option<usize>, what: &str| {
        v.ok_or_else(|| Error::InvalidParameter(format!("--{what} required for {name}")))
    };
    let spec = match name.to_ascii_lowercase().as_str() {
        "kn" | "complete" => FamilySpec::Complete(need(src.n, "n")?),
        "kn-e" | "kne" => FamilySpec::KnMinusE(need(src.n, "n")?),
        "multipartite" | "kabc" => FamilySpec::CompleteMultipartite(
            src.parts
                .clone()
                .ok_or_else(|| Error::InvalidParameter("--parts required".into()))?,
        ),
        "g1" => FamilySpec::G1 { t: need(src.t, "t")? },
        "g2" => FamilySpec::G2 { t: need(src.t, "t")? },
        "g3" => FamilySpec::G3 { t: need(src.t, "t")? },
        "gamma1" => FamilySpec::Gamma1 {
            s: need(src.s, "s")?,
            t: need(src.t, "t")?,
            p: need(src.p, "p")?,
        },
        "gamma2" => FamilySpec::Gamma2 {
            p: need(src.p, "p")?,
            s: need(src.s, "s")?,
            t: need(src.t, "t")?,
        },
        "gamma3" => FamilySpec::Gamma3 {
            p: need(src.p, "p")?,
            s: need(src.s, "s")?,
            t: need(src.t, "t")?,
        },
        other => {
            return Err(Error::InvalidParameter(format!("unknown family '{other}'")));
        }
    };
    Ok(spec)
}

fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    let mut bad = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match parse_graph6(line) {
            Ok(g) => graphs.push(g),
            Err(e) => {
                eprintln!("line {}: {e}", lineno + 1);
                bad += 1;
            }
        }
    }
    if bad > 0 {
        return Err(Error::InvalidParameter(format!("{bad} unparsable lines")));
    }
    Ok(graphs)
}

/// Resolves the input graphs: family spec, file, or stdin, exactly one.
fn input_graphs(src: &SourceArgs) -> Result<Vec<Graph>> {
    if src.family.is_some() && src.input.is_some() {
        return Err(Error::InvalidParameter(
            "--family and --input are mutually exclusive".into(),
        ));
    }
    if src.family.is_some() {
        return Ok(vec![family_from_args(src)?.build()?]);
    }
    let text = match &src.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    let graphs = parse_graph6_lines(&text)?;
    if graphs.is_empty() {
        return Err(Error::InvalidParameter("no input graphs".into()));
    }
    Ok(graphs)
}

fn corpus_for(n: usize, input: Option<&std::path::Path>) -> Result<Vec<Graph>> {
    match input {
        None => verify::enumerate_connected(n),
        Some(path) => {
            let graphs = parse_graph6_lines(&std::fs::read_to_string(path)?)?;
            Ok(graphs)
        }
    }
}

/// Maps `f` over the graphs, on a sized pool when `workers > 1`; output
/// order always follows input order.
fn map_graphs<T: Send>(
    graphs: &[Graph],
    workers: usize,
    f: impl Fn(&Graph) -> Result<T> + Send + Sync,
) -> Result<Vec<T>> {
    if workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| graphs.par_iter().map(|g| f(g)).collect())
    } else {
        graphs.iter().map(|g| f(g)).collect()
    }
}

// ---------------------------------------------------------------------------
// commands

#[derive(Serialize)]
struct SpectrumRecord {
    graph6: String,
    n: usize,
    spectrum: Spectrum,
}

fn cmd_spectrum(source: &SourceArgs, output: &OutputArgs) -> Result<i32> {
    let graphs = input_graphs(source)?;
    let want_exact = output.exact && !output.float;
    let tol = output.tolerance;
    let records = map_graphs(&graphs, output.workers, |g| {
        let mut s = Spectrum::compute_allow_disconnected(g, tol)?;
        if want_exact {
            s = s.with_exact(g)?;
        }
        Ok(SpectrumRecord {
            graph6: to_graph6(g)?,
            n: g.order(),
            spectrum: s,
        })
    })?;
    match output.format {
        Format::Json => {
            for r in &records {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("graph6,value,multiplicity");
            for r in &records {
                for (v, m) in &r.spectrum.clusters {
                    println!("{},{v},{m}", r.graph6);
                }
            }
        }
        Format::Text => {
            for r in &records {
                println!("{}  n={}  spectrum {}", r.graph6, r.n, r.spectrum);
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ClassifyRecord {
    graph6: String,
    #[serde(flatten)]
    report: ClassificationReport,
    spectrum: Spectrum,
}

fn cmd_classify(source: &SourceArgs, output: &OutputArgs) -> Result<i32> {
    let graphs = input_graphs(source)?;
    let tol = output.tolerance;
    let records = map_graphs(&graphs, output.workers, |g| {
        let report = classify(g)?;
        let spectrum = Spectrum::compute(g, tol)?.with_exact(g)?;
        Ok(ClassifyRecord {
            graph6: to_graph6(g)?,
            report,
            spectrum,
        })
    })?;
    match output.format {
        Format::Json => {
            for r in &records {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("graph6,n,in_class,theta,rho_second_least_is_one,independence_number,family,theorem_case");
            for r in &records {
                let theta = r
                    .report
                    .theta
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                let family = r
                    .report
                    .family
                    .map_or_else(|| "None".to_string(), |f| f.to_string());
                println!(
                    "{},{},{},{},{},{},{},{}",
                    r.graph6,
                    r.report.n,
                    r.report.in_class,
                    theta,
                    r.report.rho_second_least_is_one,
                    r.report.independence_number,
                    family,
                    r.report.theorem_case
                );
            }
        }
        Format::Text => {
            for r in &records {
                let family = r
                    .report
                    .family
                    .map_or_else(|| "None".to_string(), |f| f.to_string());
                println!(
                    "{}  n={} case={} family={} nu={} rho1={} spectrum {}",
                    r.graph6,
                    r.report.n,
                    r.report.theorem_case,
                    family,
                    r.report.independence_number,
                    r.report.rho_second_least_is_one,
                    r.spectrum
                );
            }
        }
    }
    Ok(0)
}

fn cmd_verify(n: usize, input: Option<&std::path::Path>, output: &OutputArgs) -> Result<i32> {
    let corpus = corpus_for(n, input)?;
    let report = verify::verify_corpus(n, &corpus, output.workers)?;
    match output.format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
        Format::Csv => {
            println!("n,total,case_i,case_ii,uncharacterized_nu2,not_in_class,mismatches");
            println!(
                "{},{},{},{},{},{},{}",
                report.n,
                report.total,
                report.case_i,
                report.case_ii,
                report.uncharacterized_nu2,
                report.not_in_class,
                report.mismatches.len()
            );
        }
        Format::Text => {
            println!(
                "n={}: {} graphs, Case-i {}, Case-ii {}, nu2-gap {}, out of class {} ({} ms)",
                report.n,
                report.total,
                report.case_i,
                report.case_ii,
                report.uncharacterized_nu2,
                report.not_in_class,
                report.elapsed_ms
            );
            println!("mismatches: {}", report.mismatches.len());
            for m in &report.mismatches {
                println!("  {m}");
            }
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_ds_check(n: usize, input: Option<&std::path::Path>, output: &OutputArgs) -> Result<i32> {
    let corpus = corpus_for(n, input)?;
    let report = verify::ds_check_corpus(n, &corpus, output.workers)?;
    match output.format {
        Format::Json => println!("{}", serde_json::to_string(&report).expect("serializable")),
        Format::Csv => {
            println!("n,total,characterized,counterexamples");
            println!(
                "{},{},{},{}",
                report.n,
                report.total,
                report.characterized,
                report.counterexamples.len()
            );
        }
        Format::Text => {
            println!(
                "n={}: {} graphs, {} characterized, counterexamples: {}",
                report.n,
                report.total,
                report.characterized,
                report.counterexamples.len()
            );
            for group in &report.counterexamples {
                println!("  cospectral: {}", group.join(" "));
            }
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_conjecture(n: usize, input: Option<&std::path::Path>, output: &OutputArgs) -> Result<i32> {
    let corpus = corpus_for(n, input)?;
    let candidates = verify::conjecture_search_corpus(n, &corpus, output.workers)?;
    match output.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string(&serde_json::json!({
                    "n": n,
                    "candidates": candidates,
                }))
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("graph6,theta");
            for c in &candidates {
                let theta = c
                    .theta
                    .iter()
                    .map(|t| t.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                println!("{},{theta}", c.graph6);
            }
        }
        Format::Text => {
            println!("n={n}: {} candidates with rho != 1 and nu = 2", candidates.len());
            for c in &candidates {
                println!("  {}  spectrum {}", c.graph6, c.spectrum);
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct LemmaRecord {
    graph6: String,
    interlacing: &'static str,
    twin: &'static str,
    clique: &'static str,
    quotient_lifting: &'static str,
    common_vertex: &'static str,
}

fn cmd_lemmas(source: &SourceArgs, output: &OutputArgs) -> Result<i32> {
    let graphs = input_graphs(source)?;
    let records = map_graphs(&graphs, output.workers, lemma_record)?;
    match output.format {
        Format::Json => {
            for r in &records {
                println!("{}", serde_json::to_string(r).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("graph6,interlacing,twin,clique,quotient_lifting,common_vertex");
            for r in &records {
                println!(
                    "{},{},{},{},{},{}",
                    r.graph6, r.interlacing, r.twin, r.clique, r.quotient_lifting, r.common_vertex
                );
            }
        }
        Format::Text => {
            println!("graph6           interlacing twin clique lifting common-vertex");
            for r in &records {
                println!(
                    "{:<16} {:<11} {:<4} {:<6} {:<7} {}",
                    r.graph6, r.interlacing, r.twin, r.clique, r.quotient_lifting, r.common_vertex
                );
            }
        }
    }
    let all_pass = records.iter().all(|r| {
        r.interlacing == "pass"
            && r.twin == "pass"
            && r.clique == "pass"
            && r.quotient_lifting == "pass"
            && r.common_vertex != "fail"
    });
    Ok(if all_pass { 0 } else { 1 })
}

fn lemma_record(g: &Graph) -> Result<LemmaRecord> {
    let n = g.order();
    let pass = |ok: bool| if ok { "pass" } else { "fail" };

    // Interlacing on a deterministic sample of principal submatrices.
    let l = normalized_laplacian(g)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1ace);
    let mut interlacing_ok = true;
    for _ in 0..32 {
        let mask = rng.gen_range(1..(1u64 << n.min(63)));
        if !interlacing_check(&l, VertexSet::from_bits(mask))? {
            interlacing_ok = false;
            break;
        }
    }

    let twin_ok = crate::structure::verify_twin_lemma(g)?;
    let clique_ok = crate::structure::verify_clique_lemma(g)?;
    let partition = coarsest_equitable_refinement(g, &Partition::one_block(n))?;
    let lifting_ok = crate::structure::verify_quotient_lifting(g, &partition)?;

    // Common-vertex suite only under its hypotheses.
    let common = if n >= 5 && g.is_connected() {
        let report = classify(g)?;
        if report.in_class
            && !report.rho_second_least_is_one
            && report.independence_number == 3
        {
            let mut ok = true;
            for (u, v, w) in g.independent_triples() {
                ok &= crate::structure::verify_commonvertex_properties(g, u, v, w)?.all_pass();
            }
            pass(ok)
        } else {
            "n/a"
        }
    } else {
        "n/a"
    };

    Ok(LemmaRecord {
        graph6: to_graph6(g)?,
        interlacing: pass(interlacing_ok),
        twin: pass(twin_ok),
        clique: pass(clique_ok),
        quotient_lifting: pass(lifting_ok),
        common_vertex: common,
    })
}

fn cmd_build(source: &SourceArgs) -> Result<i32> {
    let g = family_from_args(source)?.build()?;
    println!("{}", to_graph6(&g)?);
    Ok(0)
}
