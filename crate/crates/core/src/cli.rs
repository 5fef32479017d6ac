//! The `shortlist` command line: `build`, `certify`, `match`, `shortlist`
//! and `list-size`.
//!
//! Every numeric knob is a flag; `--config <json>` supplies defaults with the
//! same names, and flags win. Exit codes: 0 pass, 1 property failure, 2 usage
//! or input error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::combinators::{build_fk, build_gk, build_hk, PipelineConfig, PipelineManifest, ProviderKind};
use crate::graph::{complete_bipartite, edge_dump, BipartiteGraph, ExplicitGraph, Graph, Universe};
use crate::label::BitLabel;
use crate::matching::{discard_bound_check, parse_stream, random_streams};
use crate::shortlist::{
    list_size_audit, parse_corpus, shortlist_report, HkFamily, MachineTable, StandardMachine,
    DEFAULT_STEP_BUDGET,
};
use crate::verify::{check_disperser, check_expander, CheckBudget, CheckMode, Certificate};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "shortlist", version, about = "Short lists with short programs, at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a graph and write its manifest (and optionally an edge dump).
    Build(BuildArgs),
    /// Check expansion or dispersion of a built graph or an edge dump.
    Certify(CertifyArgs),
    /// Run request streams through the greedy matcher and check discards.
    Match(MatchArgs),
    /// Run f(x) against the brute-force complexity oracle over a corpus.
    Shortlist(ShortlistArgs),
    /// Report |f(x)| and the degree-sum envelope over a range of lengths.
    ListSize(ListSizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Hk,
    Gk,
    Fk,
    Complete,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Mode {
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum Provider {
    Random,
    Complete,
}

/// Shared knobs; every field may also come from `--config`.
#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Knobs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long)]
    cap: Option<usize>,
    #[arg(long)]
    lambda: Option<u64>,
    #[arg(long)]
    alpha: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Largest subset count checked exhaustively in auto mode.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    restarts: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    #[arg(long, value_enum)]
    provider: Option<Provider>,
    #[arg(long)]
    max_attempts: Option<u32>,
}

impl Knobs {
    fn merged(&self, file: &Knobs) -> Knobs {
        macro_rules! pick {
            ($($f:ident),*) => { Knobs { $($f: self.$f.or(file.$f)),* } };
        }
        pick!(k, c, cap, lambda, alpha, seed, budget, samples, restarts, mode, provider, max_attempts)
    }

    fn check_budget(&self) -> CheckBudget {
        let d = CheckBudget::default();
        CheckBudget {
            mode: match self.mode {
                Some(Mode::Exhaustive) => CheckMode::Exhaustive,
                Some(Mode::Sampled) => CheckMode::Sampled,
                _ => CheckMode::Auto,
            },
            exhaustive_limit: self.budget.unwrap_or(d.exhaustive_limit),
            samples: self.samples.unwrap_or(d.samples),
            adversarial_restarts: self.restarts.unwrap_or(d.adversarial_restarts),
            seed: self.seed.unwrap_or(d.seed),
        }
    }

    fn pipeline(&self, k: usize) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(k, self.c.unwrap_or(2));
        cfg.left_len_cap = self.cap;
        cfg.lambda = self.lambda.unwrap_or(1);
        cfg.alpha = self.alpha.unwrap_or(1);
        cfg.seed = self.seed.unwrap_or(0);
        cfg.budget = self.check_budget();
        if let Some(a) = self.max_attempts {
            cfg.max_attempts = a;
        }
        cfg.provider = match self.provider {
            Some(Provider::Complete) => ProviderKind::Complete,
            _ => ProviderKind::Random,
        };
        cfg
    }
}

#[derive(Args, Debug)]
struct Common {
    /// JSON file with defaults for the numeric flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    knobs: Knobs,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long, value_enum, default_value = "hk")]
    kind: Kind,
    /// Left length for `complete` and `fk`.
    #[arg(long)]
    left_len: Option<usize>,
    /// Right length for `complete`.
    #[arg(long)]
    right_len: Option<usize>,
    /// Also write an edge dump here.
    #[arg(long)]
    dump: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CertifyArgs {
    /// Pipeline manifest (JSON) or edge dump.
    #[arg(long)]
    graph: PathBuf,
    /// Subset size; defaults to ceil(K/c^2) for a pipeline manifest.
    #[arg(long)]
    size: Option<u64>,
    /// Required neighbors; defaults to K for a pipeline manifest.
    #[arg(long)]
    required: Option<u64>,
    /// Check dispersion with delta = num/den instead of expansion.
    #[arg(long, value_parser = parse_ratio)]
    delta: Option<(u64, u64)>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct MatchArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Stream files, one left label per line. Random streams when absent.
    #[arg(long = "stream")]
    streams: Vec<PathBuf>,
    /// Number of random streams.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Discards must stay below this; defaults to ceil(K/c^2).
    #[arg(long)]
    bound: Option<u64>,
    /// Distinct requests per stream; defaults to K, or to the longest
    /// given stream for edge dumps.
    #[arg(long)]
    length: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ShortlistArgs {
    #[arg(long)]
    machine: PathBuf,
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Print f(x) one program per line instead of running the corpus.
    #[arg(long)]
    emit_list: Option<String>,
    /// Highest level with a built H_k.
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    step_budget: u64,
    /// Longest program tried by the oracle; defaults to |x| + 3.
    #[arg(long)]
    max_len: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ListSizeArgs {
    #[arg(long, default_value_t = 4)]
    from: usize,
    #[arg(long, default_value_t = 64)]
    to: usize,
    #[arg(long, default_value_t = 4)]
    k_max: usize,
    #[command(flatten)]
    common: Common,
}

fn parse_ratio(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once('/').ok_or("expected num/den")?;
    let num = a.trim().parse::<u64>().map_err(|e| e.to_string())?;
    let den = b.trim().parse::<u64>().map_err(|e| e.to_string())?;
    if den == 0 || num >= den {
        return Err("delta must lie in [0, 1)".into());
    }
    Ok((num, den))
}

/// A failure with its exit code.
#[derive(Debug)]
struct Exit(i32, String);

fn usage(msg: impl Into<String>) -> Exit {
    Exit(EXIT_USAGE, msg.into())
}

fn failure(msg: impl Into<String>) -> Exit {
    Exit(EXIT_FAIL, msg.into())
}

fn read(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn knobs(common: &Common) -> Result<Knobs, Exit> {
    let file = match &common.config {
        Some(p) => serde_json::from_str::<Knobs>(&read(p)?)
            .map_err(|e| usage(format!("{}: {e}", p.display())))?,
        None => Knobs::default(),
    };
    Ok(common.knobs.merged(&file))
}

fn emit(common: &Common, text: &str, out: &mut dyn Write) -> Result<(), Exit> {
    match &common.out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| failure(format!("stdout: {e}"))),
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// A graph loaded from disk. Pipeline manifests are rebuilt from their
/// pinned config and the rebuild is checked against the recorded
/// fingerprint.
struct Loaded {
    graph: Graph,
    pipeline: Option<PipelineManifest>,
}

fn load_graph(path: &Path) -> Result<Loaded, Exit> {
    let text = read(path)?;
    if text.trim_start().starts_with('{') {
        let m: PipelineManifest = serde_json::from_str(&text)
            .map_err(|e| usage(format!("{}: not a pipeline manifest: {e}", path.display())))?;
        let p = build_hk(&m.config).map_err(|e| failure(format!("rebuild failed: {e}")))?;
        let recorded = m.hk.certificates.last().map(|c| c.fingerprint().to_string());
        let rebuilt = p.hk_certificate().fingerprint().to_string();
        if recorded.as_deref() != Some(rebuilt.as_str()) {
            return Err(failure("rebuilt graph does not match the manifest fingerprint"));
        }
        Ok(Loaded {
            graph: p.hk.graph,
            pipeline: Some(m),
        })
    } else {
        let g = ExplicitGraph::from_edge_dump(&text)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        Ok(Loaded {
            graph: Arc::new(g),
            pipeline: None,
        })
    }
}

fn cmd_build(a: &BuildArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let kn = knobs(&a.common)?;
    let write_dump = |g: &dyn BipartiteGraph| -> Result<(), Exit> {
        if let Some(p) = &a.dump {
            let d = edge_dump(g).map_err(|e| failure(e.to_string()))?;
            fs::write(p, d).map_err(|e| usage(format!("{}: {e}", p.display())))?;
        }
        Ok(())
    };
    if a.kind == Kind::Complete {
        let (Some(l), Some(r)) = (a.left_len, a.right_len) else {
            return Err(usage("build --kind complete needs --left-len and --right-len"));
        };
        let g = complete_bipartite(Universe::single(l), Universe::single(r))
            .map_err(|e| usage(e.to_string()))?;
        let d = edge_dump(&g).map_err(|e| usage(e.to_string()))?;
        write_dump(&g)?;
        emit(&a.common, &d, out)?;
        return Ok(EXIT_PASS);
    }
    let k = kn.k.ok_or_else(|| usage("missing --k"))?;
    let cfg = kn.pipeline(k);
    cfg.validate().map_err(|e| usage(e.to_string()))?;
    let fail = |e: crate::error::BuildError| failure(e.to_string());
    let text = match a.kind {
        Kind::Hk => {
            let p = build_hk(&cfg).map_err(fail)?;
            write_dump(p.hk.graph.as_ref())?;
            json(&p.manifest())
        }
        Kind::Gk => {
            let g = build_gk(&cfg).map_err(fail)?;
            write_dump(g.graph.as_ref())?;
            json(&g.manifest)
        }
        Kind::Fk => {
            let l = a.left_len.unwrap_or(k + 3);
            let g = build_fk(&cfg, l).map_err(fail)?;
            write_dump(g.graph.as_ref())?;
            json(&g.manifest)
        }
        Kind::Complete => unreachable!(),
    };
    emit(&a.common, &text, out)?;
    Ok(EXIT_PASS)
}

fn cmd_certify(a: &CertifyArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let kn = knobs(&a.common)?;
    let loaded = load_graph(&a.graph)?;
    let budget = kn.check_budget();
    let defaults = loaded.pipeline.as_ref().map(|m| (m.subset_size, m.required_neighbors));
    let size = a
        .size
        .or(defaults.map(|d| d.0))
        .ok_or_else(|| usage("missing --size"))?;
    let g = loaded.graph.as_ref();
    let cert: Certificate = match a.delta {
        Some((num, den)) => check_disperser(g, size, num, den, &budget)
            .map_err(|e| usage(e.to_string()))?
            .into(),
        None => {
            let required = a
                .required
                .or(defaults.map(|d| d.1))
                .ok_or_else(|| usage("missing --required"))?;
            check_expander(g, size, required, &budget)
                .map_err(|e| usage(e.to_string()))?
                .into()
        }
    };
    emit(&a.common, &json(&cert), out)?;
    Ok(if cert.is_pass() { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_match(a: &MatchArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let kn = knobs(&a.common)?;
    let loaded = load_graph(&a.graph)?;
    let defaults = loaded.pipeline.as_ref().map(|m| (m.subset_size, m.required_neighbors));
    let bound = a
        .bound
        .or(defaults.map(|d| d.0))
        .ok_or_else(|| usage("missing --bound"))?;
    let streams = if a.streams.is_empty() {
        let length = a
            .length
            .or(defaults.map(|d| d.1))
            .ok_or_else(|| usage("missing --length"))?;
        let pool = loaded
            .graph
            .left()
            .to_vec()
            .map_err(|e| usage(e.to_string()))?;
        let len = usize::try_from(length).unwrap_or(usize::MAX).min(pool.len());
        random_streams(&pool, len, a.count, kn.seed.unwrap_or(0))
    } else {
        a.streams
            .iter()
            .map(|p| parse_stream(&read(p)?).map_err(|e| usage(format!("{}: {e}", p.display()))))
            .collect::<Result<Vec<_>, _>>()?
    };
    let longest = streams
        .iter()
        .map(|s| s.iter().collect::<BTreeSet<_>>().len() as u64)
        .max()
        .unwrap_or(0);
    let length = a.length.or(defaults.map(|d| d.1)).unwrap_or(longest);
    let report = discard_bound_check(loaded.graph.as_ref(), bound, length, &streams)
        .map_err(|e| usage(e.to_string()))?;
    emit(&a.common, &json(&report), out)?;
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

fn machine(table: MachineTable, kn: &Knobs, k_max: usize, step_budget: u64) -> Result<StandardMachine, Exit> {
    let template = kn.pipeline(2);
    let family = match template.provider {
        ProviderKind::Complete => HkFamily::complete(template.c, k_max),
        ProviderKind::Random => HkFamily::build(&template, k_max),
    }
    .map_err(|e| failure(e.to_string()))?;
    Ok(StandardMachine::new(table, Arc::new(family), step_budget))
}

fn cmd_shortlist(a: &ShortlistArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let kn = knobs(&a.common)?;
    let text = read(&a.machine)?;
    let table = MachineTable::parse(&text)
        .map_err(|e| usage(format!("{}: {e}", a.machine.display())))?;
    let m = machine(table, &kn, a.k_max, a.step_budget)?;
    if let Some(x) = &a.emit_list {
        let x: BitLabel = x.parse().map_err(|e| usage(format!("--emit-list: {e}")))?;
        let list = m.f(&x).map_err(|e| usage(e.to_string()))?;
        let text: String = list.iter().map(|p| format!("{p}\n")).collect();
        emit(&a.common, &text, out)?;
        return Ok(EXIT_PASS);
    }
    let path = a
        .corpus
        .as_ref()
        .ok_or_else(|| usage("shortlist needs --corpus or --emit-list"))?;
    let corpus = parse_corpus(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let mut reports = Vec::new();
    for x in &corpus {
        let max_len = a.max_len.unwrap_or(x.len() + 3);
        reports.push(shortlist_report(&m, x, max_len).map_err(|e| usage(e.to_string()))?);
    }
    emit(&a.common, &json(&reports), out)?;
    Ok(if reports.iter().all(|r| r.passes()) {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn cmd_list_size(a: &ListSizeArgs, out: &mut dyn Write) -> Result<i32, Exit> {
    let kn = knobs(&a.common)?;
    if a.from == 0 || a.from > a.to {
        return Err(usage("need 1 <= --from <= --to"));
    }
    let m = machine(MachineTable::new(), &kn, a.k_max, DEFAULT_STEP_BUDGET)?;
    let audit = list_size_audit(&m, a.from..=a.to, kn.lambda.unwrap_or(1), kn.alpha.unwrap_or(1))
        .map_err(|e| usage(e.to_string()))?;
    emit(&a.common, &json(&audit), out)?;
    Ok(EXIT_PASS)
}

/// Runs the CLI and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let result = match &cli.command {
        Command::Build(a) => cmd_build(a, out),
        Command::Certify(a) => cmd_certify(a, out),
        Command::Match(a) => cmd_match(a, out),
        Command::Shortlist(a) => cmd_shortlist(a, out),
        Command::ListSize(a) => cmd_list_size(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

