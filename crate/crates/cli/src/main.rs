//! `sighom`: command-line front end for the verification engine.
//!
//! Exit codes: 0 ok, 1 property failed, 2 search budget hit, 3 error or usage.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sighom::acceptance::{criterion_ids, run_criterion, AcceptanceOptions};
use sighom::campaign::{parse_records, run_campaign_with, CampaignConfig};
use sighom::homsearch::{chi2_exact, chis_exact, find_hom_to_target, find_signed_hom, ChromaticOutcome, SearchConfig, SearchOutcome};
use sighom::props::{check_property, table1_scan, table1_text, TABLE1_GOLDEN};
use sighom::targets::{by_name, LabelledTarget};
use sighom::witnesses::{build_witness, verify_g4prime, verify_g_chain, verify_sp9_plus, ChainOptions, WitnessName};
use sighom::{init_pool, Exec, SignifiedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok,
    PropertyFailed,
    Indeterminate,
    Error,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailed => 1,
            Status::Indeterminate => 2,
            Status::Error => 3,
        }
    }

    fn of(ok: bool) -> Status {
        if ok {
            Status::Ok
        } else {
            Status::PropertyFailed
        }
    }

    fn worst(self, other: Status) -> Status {
        if other.code() > self.code() {
            other
        } else {
            self
        }
    }
}

type CmdResult = Result<Status, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "sighom", version, about = "Exact verification of signified and signed graph homomorphisms")]
struct Cli {
    /// Worker threads for parallel loops; 1 runs sequentially.
    #[arg(long, global = true, env = "SIGHOM_JOBS")]
    jobs: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(clap::Args, Clone, Debug)]
struct Limits {
    /// Stop after this many search nodes (0 = unlimited).
    #[arg(long, default_value_t = 0)]
    node_limit: u64,
    /// Stop after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl Limits {
    fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::default().with_node_limit(self.node_limit);
        if let Some(t) = self.time_limit {
            cfg = cfg.with_time_limit(Duration::from_secs_f64(t));
        }
        cfg
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a target or witness graph: at-k4star, k4star, zs-K, sp-Q, sp-Q-plus, tromp-Q, at-sp-Q, G1..G5, G4prime, G5prime.
    Build {
        name: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Search for a homomorphism from G to H. Graphs are JSON files or built-in names.
    CheckHom {
        g: String,
        h: String,
        /// Signed homomorphism (G may be resigned).
        #[arg(long)]
        signed: bool,
        #[command(flatten)]
        limits: Limits,
    },
    /// Exact signified chromatic number.
    Chi2 {
        g: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Exact signed chromatic number.
    Chis {
        g: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Check successor properties P(n,k) on a target.
    Props {
        #[arg(long)]
        target: String,
        /// Property as P:n:k; may be repeated.
        #[arg(long = "check", required = true)]
        checks: Vec<String>,
    },
    /// Scan AT(SP25) for triples with exactly four common positive successors and diff against the stored table.
    Table1,
    /// Certify the witness chain, or emit one witness graph.
    Witnesses {
        /// Write this witness as a JSON graph instead of running the chain.
        #[arg(long)]
        emit: Option<String>,
        /// Also try to refute an 18-coloring of G4 by raw search with this node budget.
        #[arg(long)]
        raw_g4_nodes: Option<u64>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Verify every signature class of each planar_code triangulation against a target.
    Campaign {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "tromp9")]
        target: String,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Classes between checkpoint writes.
        #[arg(long, default_value_t = 1 << 14)]
        chunk: u64,
        /// Stop after this many classes, leaving a resumable checkpoint.
        #[arg(long)]
        max_classes: Option<u64>,
        /// Re-solve a random resigning of every N-th class.
        #[arg(long)]
        sample_every: Option<u64>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Criterion ids to run; all by default.
        ids: Vec<u8>,
    },
}

fn load_graph(spec: &str) -> Result<SignifiedGraph, Box<dyn std::error::Error>> {
    let path = Path::new(spec);
    if path.exists() {
        return Ok(SignifiedGraph::from_json(&std::fs::read_to_string(path)?)?);
    }
    if let Ok(w) = spec.parse::<WitnessName>() {
        return Ok(build_witness(w)?);
    }
    match by_name(spec) {
        Ok(t) => Ok(t.graph),
        Err(_) => Err(format!("{spec:?} is neither a readable file nor a known graph name").into()),
    }
}

fn load_target(spec: &str) -> Result<LabelledTarget, Box<dyn std::error::Error>> {
    if !Path::new(spec).exists() {
        if let Ok(t) = by_name(spec) {
            return Ok(t);
        }
    }
    let g = load_graph(spec)?;
    let labels = (0..g.n()).map(sighom::targets::VertexLabel::Index).collect();
    Ok(LabelledTarget { graph: g, labels, field: None, symmetry: Default::default() })
}

/// Writes to stdout; a reader that hung up early (`| head`) is not an error.
fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn print_json(v: &Value) -> std::io::Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize")))
}

fn build(name: &str, format: Format) -> CmdResult {
    let (graph, labels) = match name.parse::<WitnessName>() {
        Ok(w) => (build_witness(w)?, None),
        Err(_) => {
            let t = by_name(name)?;
            let labels = t.label_strings();
            (t.graph, Some(labels))
        }
    };
    match format {
        Format::Json => emit(&format!("{}\n", graph.to_json()))?,
        Format::Dot => emit(&graph.to_dot(labels.as_deref()))?,
    }
    Ok(Status::Ok)
}

fn outcome_status<T>(o: &SearchOutcome<T>) -> Status {
    match o {
        SearchOutcome::Found(_) => Status::Ok,
        SearchOutcome::Absent => Status::PropertyFailed,
        SearchOutcome::Indeterminate => Status::Indeterminate,
    }
}

fn check_hom(g: &str, h: &str, signed: bool, limits: &Limits) -> CmdResult {
    let g = load_graph(g)?;
    let cfg = limits.config();
    if signed {
        let h = load_graph(h)?;
        let o = find_signed_hom(&g, &h, &cfg);
        let status = outcome_status(&o);
        let payload = match o {
            SearchOutcome::Found(s) => json!({ "found": true, "resign_set": s.resign_set, "mapping": s.mapping }),
            SearchOutcome::Absent => json!({ "found": false }),
            SearchOutcome::Indeterminate => json!({ "found": null, "indeterminate": true }),
        };
        print_json(&payload)?;
        return Ok(status);
    }
    let t = load_target(h)?;
    let o = find_hom_to_target(&g, &t, &cfg);
    let status = outcome_status(&o);
    let payload = match o {
        SearchOutcome::Found(phi) => {
            let images: Vec<String> = phi.0.iter().map(|&v| t.label_string(v)).collect();
            json!({ "found": true, "mapping": phi, "labels": images })
        }
        SearchOutcome::Absent => json!({ "found": false }),
        SearchOutcome::Indeterminate => json!({ "found": null, "indeterminate": true }),
    };
    print_json(&payload)?;
    Ok(status)
}

fn chromatic(g: &str, limits: &Limits, signed: bool) -> CmdResult {
    let g = load_graph(g)?;
    let o = if signed { chis_exact(&g, &limits.config()) } else { chi2_exact(&g, &limits.config()) };
    print_json(&o.to_json())?;
    Ok(match o {
        ChromaticOutcome::Decided(_) => Status::Ok,
        ChromaticOutcome::Indeterminate { .. } => Status::Indeterminate,
    })
}

fn parse_check(s: &str) -> Result<(usize, usize), Box<dyn std::error::Error>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["P", n, k] => Ok((n.parse()?, k.parse()?)),
        _ => Err(format!("bad property {s:?}; expected P:n:k").into()),
    }
}

fn props(target: &str, checks: &[String], exec: Exec) -> CmdResult {
    let t = load_target(target)?;
    let mut status = Status::Ok;
    let mut reports = Vec::new();
    for c in checks {
        let (n, k) = parse_check(c)?;
        let r = check_property(&t, n, k, exec);
        status = status.worst(Status::of(r.holds));
        reports.push(serde_json::to_value(&r)?);
    }
    print_json(&json!({ "target": target, "vertices": t.n(), "reports": reports }))?;
    Ok(status)
}

fn table1() -> CmdResult {
    let (at, rows) = table1_scan()?;
    let text = table1_text(&at, &rows);
    emit(&text)?;
    if text == TABLE1_GOLDEN {
        eprintln!("matches the stored table ({} rows)", rows.len());
        return Ok(Status::Ok);
    }
    eprintln!("differs from the stored table:");
    let got: Vec<&str> = text.lines().collect();
    let want: Vec<&str> = TABLE1_GOLDEN.lines().collect();
    for line in &want {
        if !got.contains(line) {
            eprintln!("- {line}");
        }
    }
    for line in &got {
        if !want.contains(line) {
            eprintln!("+ {line}");
        }
    }
    Ok(Status::PropertyFailed)
}

fn witnesses(emit_name: Option<&str>, raw_g4_nodes: Option<u64>, limits: &Limits) -> CmdResult {
    if let Some(name) = emit_name {
        let w: WitnessName = name.parse()?;
        emit(&format!("{}\n", build_witness(w)?.to_json()))?;
        return Ok(Status::Ok);
    }
    let cfg = limits.config();
    let chain = verify_g_chain(&ChainOptions { search: cfg.clone(), raw_g4_nodes })?;
    let mut status = Status::Ok;
    for s in &chain.stages {
        status = status.worst(match s.status {
            sighom::witnesses::StageStatus::Passed => Status::Ok,
            sighom::witnesses::StageStatus::Failed => Status::PropertyFailed,
            sighom::witnesses::StageStatus::Indeterminate => Status::Indeterminate,
        });
    }
    let g4p = verify_g4prime(&cfg)?;
    status = status.worst(Status::of(g4p["chi2"] == json!(9)));
    let t14 = verify_sp9_plus()?;
    status = status.worst(Status::of(t14.passed()));
    print_json(&json!({ "stages": chain.stages, "G4prime": g4p, "sp9_plus": t14 }))?;
    Ok(status)
}

#[allow(clippy::too_many_arguments)]
fn campaign(
    input: &Path,
    target: &str,
    checkpoint: Option<PathBuf>,
    chunk: u64,
    max_classes: Option<u64>,
    sample_every: Option<u64>,
    limits: &Limits,
    exec: Exec,
    seed: u64,
) -> CmdResult {
    let bytes = std::fs::read(input)?;
    let t = by_name(target)?;
    let cfg = CampaignConfig { search: limits.config(), exec, chunk, checkpoint, max_classes, sample_every, seed };
    let mut status = Status::Ok;
    run_campaign_with(parse_records(&bytes)?, &t, &cfg, |r| {
        emit(&format!("{}\n", serde_json::to_string(r)?))?;
        status = status.worst(if r.error.is_some() {
            Status::Error
        } else if !r.failures.is_empty() || !r.consistency_failures.is_empty() {
            Status::PropertyFailed
        } else if !r.indeterminate.is_empty() || !r.complete() {
            Status::Indeterminate
        } else {
            Status::Ok
        });
        Ok(())
    })?;
    Ok(status)
}

fn selftest(ids: &[u8], exec: Exec, seed: u64) -> CmdResult {
    let ids = if ids.is_empty() { criterion_ids() } else { ids.to_vec() };
    let opts = AcceptanceOptions { exec, seed };
    let mut ok = true;
    for id in ids {
        let r = run_criterion(id, &opts).ok_or_else(|| format!("unknown criterion {id}"))?;
        emit(&format!("{}\n", r.line()))?;
        ok &= r.passed;
    }
    Ok(Status::of(ok))
}

fn run(cli: Cli) -> CmdResult {
    let exec = match cli.jobs {
        Some(1) => Exec::Sequential,
        Some(0) => return Err("--jobs must be at least 1".into()),
        Some(n) => {
            init_pool(n);
            Exec::Parallel
        }
        None => Exec::Parallel,
    };
    match cli.cmd {
        Cmd::Build { name, format } => build(&name, format),
        Cmd::CheckHom { g, h, signed, limits } => check_hom(&g, &h, signed, &limits),
        Cmd::Chi2 { g, limits } => chromatic(&g, &limits, false),
        Cmd::Chis { g, limits } => chromatic(&g, &limits, true),
        Cmd::Props { target, checks } => props(&target, &checks, exec),
        Cmd::Table1 => table1(),
        Cmd::Witnesses { emit, raw_g4_nodes, limits } => witnesses(emit.as_deref(), raw_g4_nodes, &limits),
        Cmd::Campaign { input, target, checkpoint, chunk, max_classes, sample_every, limits } => {
            campaign(&input, &target, checkpoint, chunk, max_classes, sample_every, &limits, exec, cli.seed)
        }
        Cmd::Selftest { ids } => selftest(&ids, exec, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { Status::Error.code() } else { 0 });
        }
    };
    match run(cli) {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(Status::Error.code())
        }
    }
}
