//! `hyperspan`: generators, solvers, constructive procedures and the
//! threshold lab behind one batch command.
//!
//! Exit status: 0 when the question was answered (either way), 1 for a
//! structured failure or an unknown verdict, 2 for usage errors and
//! unreadable input.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use hyperspan_core::constructions::Construction;
use hyperspan_core::format::{parse_hg, write_hg};
use hyperspan_core::lab::threshold::{exact_threshold, ThresholdConfig, ThresholdReport};
use hyperspan_core::lab::tightness::{tightness_report, TheoremId, TightnessConfig};
use hyperspan_core::procedures::{
    absorb, assemble_loose_hc_with, berge_lift, build_absorbing_path, perfect_matching_via_extenders,
    AbsorberConfig, AssemblyConfig,
};
use hyperspan_core::solvers::{solve_structure, SolveOptions, Structure};
use hyperspan_core::{complete, degree_profile, Hypergraph, SCHEMA_VERSION};

#[derive(Parser, Serialize)]
#[command(name = "hyperspan", version, about = "Spanning structures in uniform hypergraphs")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
enum Command {
    /// Write a construction as `.hg` plus `<name>.sheet.json`.
    Gen(GenArgs),
    /// Degree profile of a `.hg` file.
    Analyze { input: PathBuf },
    /// Exact solver for one spanning structure.
    Solve(SolveArgs),
    /// Berge Hamiltonian cycle by lifting from the shadow.
    Lift { input: PathBuf },
    /// Perfect matching in a 3-graph by augmentation steps.
    PmExtend { input: PathBuf },
    /// Build an absorbing path and absorb a few leftover vertices.
    AbsorbDemo(AbsorbArgs),
    /// Loose Hamiltonian cycle by the absorbing pipeline.
    Assemble(AssembleArgs),
    /// Exact threshold of one structure at one (r, n), as a CSV row.
    Scan(ScanArgs),
    /// Tightness of a degree condition against its construction.
    Report(ReportArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum GenKind {
    Huv,
    Complete,
    TwoCliques,
    LooseCycle,
    Sample,
}

#[derive(Args, Serialize)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    #[arg(long, default_value_t = 3)]
    r: usize,
    #[arg(long)]
    n: Option<usize>,
    /// |V| for huv.
    #[arg(long)]
    v: Option<usize>,
    /// Number of edges for loose-cycle.
    #[arg(long)]
    k: Option<usize>,
    /// Co-degree floor for sample.
    #[arg(long, default_value_t = 0)]
    t: usize,
    /// Edge probability for sample.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum StructureArg {
    Pm,
    BergeHc,
    LooseHc,
    C43Tiling,
    PathTiling,
}

impl From<StructureArg> for Structure {
    fn from(s: StructureArg) -> Self {
        match s {
            StructureArg::Pm => Structure::PerfectMatching,
            StructureArg::BergeHc => Structure::BergeHc,
            StructureArg::LooseHc => Structure::LooseHc,
            StructureArg::C43Tiling => Structure::C43Tiling,
            StructureArg::PathTiling => Structure::PathTiling,
        }
    }
}

#[derive(Args, Serialize)]
struct SolveArgs {
    #[arg(long, value_enum)]
    structure: StructureArg,
    #[arg(long)]
    deadline_ms: Option<u64>,
    /// Lift the size guardrails.
    #[arg(long)]
    force: bool,
    input: PathBuf,
}

#[derive(Args, Serialize)]
struct AbsorbArgs {
    /// Host `.hg` file; complete(3, n) when absent.
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 20)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    segments: usize,
    /// Number of leftover vertices to absorb (even).
    #[arg(long, default_value_t = 2)]
    absorb: usize,
}

#[derive(Args, Serialize)]
struct AssembleArgs {
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    #[arg(long, default_value_t = 4)]
    attempts: u64,
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args, Serialize)]
struct ScanArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    structure: StructureArg,
    /// Samples per co-degree floor when sampling.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Sample even within the exhaustive limits.
    #[arg(long)]
    sample: bool,
    #[arg(long)]
    deadline_ms: Option<u64>,
    /// Where witness `.hg` files go.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Args, Serialize)]
struct ReportArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: TheoremId,
    /// Vertex counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, default_value_t = 40)]
    samples: usize,
    #[arg(long, default_value_t = 10_000)]
    deadline_ms: u64,
}

fn parse_theorem(s: &str) -> std::result::Result<TheoremId, String> {
    s.parse().map_err(|e: hyperspan_core::Error| e.to_string())
}

/// Marks errors that are the caller's fault.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    anyhow!(Usage(e.to_string()))
}

fn read_hg(path: &Path) -> Result<Hypergraph> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    parse_hg(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(cli: &Cli, body: Value) -> Result<()> {
    let mut out = json!({
        "schema_version": SCHEMA_VERSION,
        "config": cli,
    });
    if let (Value::Object(out), Value::Object(body)) = (&mut out, body) {
        out.extend(body);
    }
    writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(&out)?)?;
    Ok(())
}

fn status(answered: bool) -> u8 {
    if answered {
        0
    } else {
        1
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Gen(a) => gen(cli, a),
        Command::Analyze { input } => {
            let h = read_hg(input)?;
            emit(
                cli,
                json!({"r": h.r(), "n": h.n(), "edges": h.edge_count(), "profile": degree_profile(&h)}),
            )?;
            Ok(0)
        }
        Command::Solve(a) => {
            let h = read_hg(&a.input)?;
            let opts = SolveOptions {
                deadline: a.deadline_ms.map(Duration::from_millis),
                force: a.force,
            };
            let solved = solve_structure(&h, a.structure.into(), &opts).map_err(usage)?;
            let answer = solved.verdict.label();
            let certificate = serde_json::to_value(&solved.verdict)?["certificate"].clone();
            emit(cli, json!({"answer": answer, "certificate": certificate, "stats": solved.stats}))?;
            Ok(status(answer != "unknown"))
        }
        Command::Lift { input } => {
            let h = read_hg(input)?;
            let out = berge_lift(&h).map_err(usage)?;
            let found = out.cycle.is_some();
            emit(
                cli,
                json!({
                    "hypotheses_met": out.hypotheses_met,
                    "answer": if found { "yes" } else { "failed" },
                    "certificate": out.cycle,
                    "strengthened": out.strengthened,
                    "stage_log": out.stage_log,
                    "failure": out.failure,
                }),
            )?;
            Ok(status(found))
        }
        Command::PmExtend { input } => {
            let h = read_hg(input)?;
            let out = perfect_matching_via_extenders(&h).map_err(usage)?;
            let log: Vec<String> = out
                .steps
                .iter()
                .map(|s| serde_json::to_string(s).unwrap_or_default())
                .collect();
            emit(
                cli,
                json!({
                    "hypotheses_met": out.hypotheses_met,
                    "answer": if out.perfect { "yes" } else { "stuck" },
                    "certificate": out.matching,
                    "stage_log": log,
                }),
            )?;
            Ok(status(out.perfect))
        }
        Command::AbsorbDemo(a) => absorb_demo(cli, a),
        Command::Assemble(a) => {
            let h = read_hg(&a.input)?;
            let mut cfg = AssemblyConfig::new(a.epsilon, cli.seed);
            cfg.attempts = a.attempts;
            let out = assemble_loose_hc_with(&h, &cfg).map_err(usage)?;
            let found = out.cycle.is_some();
            emit(
                cli,
                json!({
                    "hypotheses_met": out.hypotheses_met,
                    "answer": if found { "yes" } else { "failed" },
                    "certificate": out.cycle,
                    "stage_log": out.stage_log,
                    "failure": out.failure,
                    "absorb_capacity_fraction": out.absorb_capacity_fraction,
                }),
            )?;
            Ok(status(found))
        }
        Command::Scan(a) => scan(cli, a),
        Command::Report(a) => {
            let cfg = TightnessConfig {
                r: a.r,
                seed: cli.seed,
                samples: a.samples,
                deadline: Some(Duration::from_millis(a.deadline_ms)),
            };
            let rep = tightness_report(a.theorem, &a.n, &cfg).map_err(usage)?;
            emit(cli, json!({"discrepancies": rep.discrepancy_count(), "report": rep}))?;
            Ok(0)
        }
    }
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<u8> {
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| usage(format!("gen needs --{name}")));
    let c = match a.kind {
        GenKind::Huv => Construction::Huv {
            r: a.r,
            n: need(a.n, "n")?,
            v: need(a.v, "v")?,
        },
        GenKind::Complete => Construction::Complete { r: a.r, n: need(a.n, "n")? },
        GenKind::TwoCliques => Construction::TwoCliques { n: need(a.n, "n")? },
        GenKind::LooseCycle => Construction::LooseCycle { r: a.r, k: need(a.k, "k")? },
        GenKind::Sample => Construction::Sample {
            r: a.r,
            n: need(a.n, "n")?,
            t: a.t,
            p: a.p,
            seed: cli.seed,
        },
    };
    let (h, sheet) = c.build().map_err(usage)?;
    fs::create_dir_all(&a.out_dir).with_context(|| format!("creating {}", a.out_dir.display()))?;
    let stem = c.stem();
    let hg = a.out_dir.join(format!("{stem}.hg"));
    let sheet_path = a.out_dir.join(format!("{stem}.sheet.json"));
    fs::write(&hg, write_hg(&h))?;
    fs::write(&sheet_path, serde_json::to_string_pretty(&sheet)? + "\n")?;
    emit(
        cli,
        json!({"files": [hg.display().to_string(), sheet_path.display().to_string()], "sheet": sheet}),
    )?;
    Ok(0)
}

fn absorb_demo(cli: &Cli, a: &AbsorbArgs) -> Result<u8> {
    let h = match &a.input {
        Some(p) => read_hg(p)?,
        None => complete(3, a.n).map_err(usage)?,
    };
    let cfg = AbsorberConfig {
        segments: a.segments,
        seed: cli.seed,
        avoid: Vec::new(),
    };
    let mut log = Vec::new();
    let path = match build_absorbing_path(&h, &cfg) {
        Ok(p) => p,
        Err(f) => {
            emit(cli, json!({"hypotheses_met": true, "answer": "failed", "certificate": null, "stage_log": [f.to_string()]}))?;
            return Ok(1);
        }
    };
    log.push(format!("absorbing path on {} vertices", path.path.vertices.len()));
    let mut free: Vec<usize> = (0..h.n()).filter(|v| !path.path.vertices.contains(v)).collect();
    free.shuffle(&mut ChaCha8Rng::seed_from_u64(cli.seed));
    if a.absorb > free.len() {
        return Err(usage(format!("only {} vertices lie outside the path", free.len())));
    }
    let u = &free[..a.absorb];
    log.push(format!("absorbing {u:?}"));
    match absorb(&h, &path, u) {
        Ok(walk) => {
            emit(
                cli,
                json!({"hypotheses_met": true, "answer": "yes", "absorber": path, "absorbed": u, "certificate": walk, "stage_log": log}),
            )?;
            Ok(0)
        }
        Err(hyperspan_core::Error::Absorption(e)) => {
            log.push(e);
            emit(cli, json!({"hypotheses_met": true, "answer": "failed", "absorber": path, "certificate": null, "stage_log": log}))?;
            Ok(1)
        }
        Err(e) => Err(usage(e)),
    }
}

fn csv_row(rep: &ThresholdReport, witness_file: &str) -> String {
    let upper = rep.threshold_upper.map(|u| u.to_string()).unwrap_or_default();
    let method = serde_json::to_value(rep.method).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default();
    format!(
        "{},{},{},{},{},{},{}",
        rep.r,
        rep.n,
        rep.structure.name(),
        rep.threshold_lower,
        upper,
        method,
        witness_file
    )
}

fn scan(cli: &Cli, a: &ScanArgs) -> Result<u8> {
    let structure: Structure = a.structure.into();
    let cfg = ThresholdConfig {
        seed: cli.seed,
        samples_per_floor: a.samples,
        force_sampling: a.sample,
        deadline: a.deadline_ms.map(Duration::from_millis),
    };
    let rep = exact_threshold(a.r, a.n, structure, &cfg).map_err(usage)?;
    let mut witness_file = String::new();
    if let Some(w) = &rep.extremal_witness {
        fs::create_dir_all(&a.out_dir)?;
        let path = a.out_dir.join(format!("witness_{}_{}_{}.hg", a.r, a.n, structure.name()));
        fs::write(&path, write_hg(&w.hypergraph()?))?;
        witness_file = path.display().to_string();
    }
    match a.format {
        TableFormat::Csv => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "r,n,structure,threshold_lower,threshold_upper,method,witness_file")?;
            writeln!(out, "{}", csv_row(&rep, &witness_file))?;
        }
        TableFormat::Json => emit(cli, json!({"report": rep, "witness_file": witness_file}))?,
    }
    Ok(status(rep.exact_threshold.is_some() || rep.method == hyperspan_core::lab::Method::Sampled))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<Usage>() { 2 } else { 1 })
        }
    }
}
