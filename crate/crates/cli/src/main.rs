//! `onevis`: 1-visibility layouts of embedded 1-planar graphs.
//!
//! Exit codes: 0 on success or a passing check, 1 when a check fails, 2 on
//! bad input or any other error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::Serialize;

use onevis::augmentation::planar_maximal_augment;
use onevis::embedding::embedding_stats;
use onevis::generators::{generate, Family, FamilySpec, Generated};
use onevis::io::{self, EmbeddingFile, GraphFile, LayoutFile};
use onevis::pipeline::{one_visibility_with, BlockMode, PipelineOptions};
use onevis::svg::{render_svg, SvgOptions};
use onevis::verify::verify_layout;
use onevis::{check_density, Error};

#[derive(Parser)]
#[command(name = "onevis", version, about = "1-visibility representations of embedded 1-planar graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a 1-visibility layout of an embedding.
    Layout {
        input: PathBuf,
        /// Layout JSON output; stdout if absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Draw helper edges dashed in the SVG.
        #[arg(long)]
        show_hidden: bool,
        /// Pipeline report JSON.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Also write the planar-maximal augmentation of the input.
        #[arg(long)]
        emit_augmented: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Blocks::Augment)]
        blocks: Blocks,
    },
    /// Check a layout against a graph.
    Verify {
        layout: PathBuf,
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a family member.
    Gen {
        family: Family,
        #[arg(long, default_value_t = 0)]
        param: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the layout of families without an embedding;
        /// defaults to OUTPUT with a `.hint.json` suffix.
        #[arg(long)]
        hint: Option<PathBuf>,
    },
    /// Face and crossing counts of an embedding.
    Stats {
        input: PathBuf,
        /// Augment to a planar-maximal embedding first.
        #[arg(long)]
        augment: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check the 4n-8 edge bound.
    CheckDensity {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Blocks {
    Augment,
    Compose,
    Reject,
}

impl From<Blocks> for BlockMode {
    fn from(b: Blocks) -> Self {
        match b {
            Blocks::Augment => BlockMode::Augment,
            Blocks::Compose => BlockMode::Compose,
            Blocks::Reject => BlockMode::Reject,
        }
    }
}

/// A failure reported with exit code 2.
#[derive(Debug, Serialize)]
struct Failure {
    schema: &'static str,
    error: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { schema: io::SCHEMA, error: e.kind(), message: e.to_string() }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { schema: io::SCHEMA, error: "Io", message: format!("{}: {e}", path.display()) }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| {
        let mut f = Failure::from(Error::from(e));
        f.message = format!("{}: {}", path.display(), f.message);
        f
    })
}

fn emit(text: &str, to: Option<&Path>) -> Result<(), Failure> {
    match to {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json<T: Serialize>(kind: &str, x: &T) -> Result<String, Failure> {
    Ok(io::report_to_json(kind, x)?)
}

fn cmd_layout(
    input: &Path,
    output: Option<&Path>,
    svg: Option<&Path>,
    show_hidden: bool,
    report: Option<&Path>,
    emit_augmented: Option<&Path>,
    blocks: Blocks,
) -> CmdResult {
    let emb = parse::<EmbeddingFile>(input)?.to_embedding()?;
    if let Some(p) = emit_augmented {
        write(p, &io::embedding_to_json(&planar_maximal_augment(&emb)?)?)?;
    }
    let opts = PipelineOptions { blocks: blocks.into(), ..Default::default() };
    let (layout, rep) = one_visibility_with(&emb, &opts)?;
    for w in &rep.warnings {
        warn!("{w}");
    }
    emit(&io::layout_to_json(&layout)?, output)?;
    if let Some(p) = svg {
        write(p, &render_svg(&layout, SvgOptions { show_hidden }))?;
    }
    if let Some(p) = report {
        write(p, &json("pipeline", &rep)?)?;
    }
    eprintln!(
        "n={} m={} crossings={} grid={}x{} within_bound={}",
        rep.n,
        rep.m,
        rep.crossings,
        rep.width,
        rep.height,
        rep.within_bound.map_or("n/a".to_string(), |b| b.to_string())
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(layout: &Path, graph: &Path, as_json: bool) -> CmdResult {
    let l = parse::<LayoutFile>(layout)?.to_layout()?;
    let g = parse::<GraphFile>(graph)?.to_graph()?;
    io::check_ids(&l, &g)?;
    let r = verify_layout(&l, &g);
    if as_json {
        print!("{}", json("verify", &r)?);
    } else if r.pass {
        println!("pass: {} vertices, {} edge segments, {} crossings, grid {}x{}", l.vertices.len(), l.edges.len(), l.crossings.len(), r.width, r.height);
    } else {
        println!("fail: {} violations", r.violations.len());
        for v in &r.violations {
            println!("  {v}");
        }
    }
    Ok(if r.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_gen(family: Family, param: usize, seed: u64, output: &Path, hint: Option<&Path>) -> CmdResult {
    let spec = FamilySpec { family, param, seed };
    match generate(&spec)? {
        Generated::Embedding(emb) => write(output, &io::embedding_to_json(&emb)?)?,
        Generated::Witness(g, l) => {
            write(output, &io::graph_to_json(&g)?)?;
            let hint = hint.map(Path::to_path_buf).unwrap_or_else(|| output.with_extension("hint.json"));
            write(&hint, &io::layout_to_json(&l)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_stats(input: &Path, augment: bool, as_json: bool) -> CmdResult {
    let mut emb = parse::<EmbeddingFile>(input)?.to_embedding()?;
    let report = onevis::embedding::validate_embedding(&emb);
    if !report.is_valid() {
        return Err(Error::InvalidEmbedding(report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")).into());
    }
    if augment {
        emb = planar_maximal_augment(&emb)?;
    }
    let s = embedding_stats(&emb)?;
    if as_json {
        print!("{}", json("stats", &s)?);
        return Ok(ExitCode::SUCCESS);
    }
    println!("n: {}\nm: {}\ncrossings: {} ({} crossed edges)\nfaces: {}", s.n, s.m, s.crossings, s.crossed_edges, s.faces);
    let sizes: Vec<String> = s.face_sizes.iter().map(|(k, c)| format!("{k}:{c}")).collect();
    println!("face sizes (half-edges:count): {}", sizes.join(" "));
    let points: Vec<String> = s.crossing_points.iter().map(usize::to_string).collect();
    println!("crossing points per face: {}", points.join(" "));
    println!(
        "max half-edges {}, max vertices {}, max crossing points {}, crossings span K4: {}",
        s.max_half_edges, s.max_vertices, s.max_crossing_points, s.crossings_span_k4
    );
    println!("planar-maximal face bounds hold: {}", s.planar_maximal_bounds);
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_density(graph: &Path, as_json: bool) -> CmdResult {
    let g = parse::<GraphFile>(graph)?.to_graph()?;
    let r = check_density(&g);
    if as_json {
        print!("{}", json("density", &r)?);
    } else {
        let bound = r.bound.map_or("n/a".to_string(), |b| b.to_string());
        println!("{}: n={} m={} bound={} tight={}", if r.pass { "pass" } else { "fail" }, r.n, r.m, bound, r.tight);
    }
    Ok(if r.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Layout { input, output, svg, show_hidden, report, emit_augmented, blocks } => cmd_layout(
            &input,
            output.as_deref(),
            svg.as_deref(),
            show_hidden,
            report.as_deref(),
            emit_augmented.as_deref(),
            blocks,
        ),
        Command::Verify { layout, graph, json } => cmd_verify(&layout, &graph, json),
        Command::Gen { family, param, seed, output, hint } => cmd_gen(family, param, seed, &output, hint.as_deref()),
        Command::Stats { input, augment, json } => cmd_stats(&input, augment, json),
        Command::CheckDensity { graph, json } => cmd_check_density(&graph, json),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("ONEVIS_LOG", "warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("{}", serde_json::to_string(&f).unwrap_or_else(|_| f.message.clone()));
            ExitCode::from(2)
        }
    }
}
