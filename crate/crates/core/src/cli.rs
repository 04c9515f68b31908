//! The `tangles` command line.
//!
//! Exit codes: 0 when every check passed or a search completed, 1 when a
//! check failed, a search ran out of budget or a hunt found a
//! counterexample, 2 for usage and input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use crate::connectivity::ConnectivitySystem;
use crate::duality::{branch_width, verify_branchwidth_duality, verify_theorems, Theorem};
use crate::error::{Error, Result};
use crate::io::{self, BranchWidthDoc, EnumerationDoc, FamilyDoc, ReportDoc, VerdictsDoc};
use crate::search::{enumerate_all, hunt, random_corpus, HuntCorpus, HuntStatus, Problem, SearchBudget};
use crate::structures::{check_structure, AxiomResult, StructureKind, Variant};

/// Directory searched for relative `--system` and `--family` paths that do
/// not exist in the working directory.
pub const CORPUS_DIR_ENV: &str = "TANGLES_CORPUS_DIR";

#[derive(Parser, Debug)]
#[command(name = "tangles", version, about = "Tangles, ultrafilters and profiles of connectivity systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a family against the axioms of a structure kind.
    Check(CheckArgs),
    /// List every structure of a kind at one order.
    Enumerate(EnumerateArgs),
    /// Exact branch-width with an optimal decomposition.
    BranchWidth(BranchWidthArgs),
    /// Compare the maximum tangle order with branch-width.
    Duality(DualityArgs),
    /// Exhaustively verify the duality and existence theorems at one order.
    VerifyTheorems(TheoremArgs),
    /// Search random systems for counterexamples to an open problem.
    Hunt(HuntArgs),
}

#[derive(Args, Debug)]
struct Budget {
    /// Cap on orientation choices per search.
    #[arg(long, value_name = "N")]
    max_nodes: Option<u64>,
    /// Wall-clock cap per search.
    #[arg(long, value_name = "SECONDS")]
    max_seconds: Option<u64>,
}

impl Budget {
    fn budget(&self) -> SearchBudget {
        let mut b = SearchBudget::default();
        if let Some(n) = self.max_nodes {
            b.max_nodes = n;
        }
        b.max_time = self.max_seconds.map(Duration::from_secs);
        b
    }
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, value_name = "FILE")]
    system: PathBuf,
    #[arg(long, value_name = "FILE")]
    family: PathBuf,
    #[arg(long, value_name = "KIND")]
    kind: StructureKind,
    /// Order bound; defaults to the family file's `k`.
    #[arg(long, value_name = "N")]
    k: Option<u32>,
    #[arg(long, default_value = "corrected")]
    variant: Variant,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, value_name = "FILE")]
    system: PathBuf,
    #[arg(long, value_name = "KIND")]
    kind: StructureKind,
    #[arg(long, value_name = "N")]
    k: u32,
    /// Print and record at most this many families.
    #[arg(long, value_name = "M")]
    limit: Option<usize>,
    #[arg(long, default_value = "corrected")]
    variant: Variant,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args, Debug)]
struct BranchWidthArgs {
    #[arg(long, value_name = "FILE")]
    system: PathBuf,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DualityArgs {
    #[arg(long, value_name = "FILE")]
    system: PathBuf,
    #[arg(long, value_name = "N")]
    kmax: Option<u32>,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[arg(long, value_name = "FILE")]
    system: PathBuf,
    /// Comma-separated theorem numbers out of 11, 12, 15, 16.
    #[arg(long, value_delimiter = ',', value_parser = parse_theorem, default_value = "11,12,15,16")]
    theorems: Vec<Theorem>,
    #[arg(long, value_name = "N")]
    k: u32,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

#[derive(Args, Debug)]
struct HuntArgs {
    /// 9: triple intersections of weak ultrafilters; 10: tangle duality.
    #[arg(long, value_parser = parse_problem)]
    problem: Problem,
    /// Ground-set size of the generated systems.
    #[arg(long, value_name = "N")]
    n: usize,
    #[arg(long, value_name = "COUNT")]
    systems: usize,
    #[arg(long, value_name = "S")]
    seed: u64,
    #[arg(long, value_name = "N")]
    kmax: Option<u32>,
    /// Hyperedges per system; defaults to `n`.
    #[arg(long, value_name = "H")]
    hyperedges: Option<usize>,
    #[arg(long, value_name = "R", default_value_t = 3)]
    max_arity: usize,
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(flatten)]
    budget: Budget,
}

fn parse_theorem(s: &str) -> std::result::Result<Theorem, String> {
    let n: u32 = s.trim().parse().map_err(|_| format!("not a theorem number: {:?}", s))?;
    Theorem::try_from(n).map_err(|e| e.to_string())
}

fn parse_problem(s: &str) -> std::result::Result<Problem, String> {
    let n: u32 = s.trim().parse().map_err(|_| format!("not a problem number: {:?}", s))?;
    Problem::try_from(n).map_err(|e| e.to_string())
}

/// An error attributed to the flag whose input caused it.
struct Failure {
    flag: &'static str,
    error: Error,
}

trait Blame<T> {
    fn blame(self, flag: &'static str) -> std::result::Result<T, Failure>;
}

impl<T> Blame<T> for Result<T> {
    fn blame(self, flag: &'static str) -> std::result::Result<T, Failure> {
        self.map_err(|error| Failure { flag, error })
    }
}

fn resolve(path: &Path) -> PathBuf {
    if path.is_relative() && !path.exists() {
        if let Some(dir) = std::env::var_os(CORPUS_DIR_ENV) {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                return candidate;
            }
        }
    }
    path.to_path_buf()
}

fn load_system(path: &Path) -> std::result::Result<ConnectivitySystem, Failure> {
    let path = resolve(path);
    io::load_system(&path).map_err(|e| with_path(e, &path)).blame("--system")
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {}", path.display(), io))),
        other => other,
    }
}

fn write_json<T: io::Document>(doc: &T, path: &Option<PathBuf>) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => io::save(doc, p).blame("--json"),
        None => Ok(()),
    }
}

fn describe(r: &AxiomResult) -> String {
    let mut s = format!("  {:<14}{}", r.axiom.name(), if r.pass { "pass" } else { "FAIL" });
    if !r.witness.is_empty() {
        s.push_str("  witness");
        for w in &r.witness {
            let _ = write!(s, " {}", w.first());
        }
    }
    if let Some(e) = r.element {
        let _ = write!(s, "  element {}", e);
    }
    s
}

fn sides_text(sides: &[Vec<usize>]) -> String {
    let parts: Vec<String> = sides
        .iter()
        .map(|s| format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", parts.join(" "))
}

type Outcome = std::result::Result<(String, i32), Failure>;

fn check(a: &CheckArgs) -> Outcome {
    let system = load_system(&a.system)?;
    let family_path = resolve(&a.family);
    let doc: FamilyDoc = io::load(&family_path).map_err(|e| with_path(e, &family_path)).blame("--family")?;
    let family = doc.to_family(&system).blame("--family")?;
    let k = a.k.unwrap_or(doc.k);
    let report = check_structure(&system, k, &family, a.kind, a.variant).blame("--family")?;
    write_json(&ReportDoc::from(&report), &a.json)?;
    let mut out = format!(
        "{} k={} ({}) on {}: {}\n",
        a.kind,
        k,
        a.variant.name(),
        system.label(),
        if report.pass { "pass" } else { "FAIL" }
    );
    for r in &report.axioms {
        out.push_str(&describe(r));
        out.push('\n');
    }
    for r in &report.diagnostics {
        let _ = writeln!(out, "{}  (diagnostic)", describe(r));
    }
    Ok((out, if report.pass { 0 } else { 1 }))
}

fn enumerate(a: &EnumerateArgs) -> Outcome {
    let system = load_system(&a.system)?;
    let outcome = enumerate_all(a.kind, a.variant, &system, a.k, &a.budget.budget()).blame("--system")?;
    let doc = EnumerationDoc::new(&system, a.kind, a.variant, a.k, &outcome, a.limit);
    write_json(&doc, &a.json)?;
    let mut out = format!(
        "{} {} families of kind {} at k={} on {}\n",
        if outcome.is_complete() { "found" } else { "budget exhausted after" },
        doc.count,
        a.kind,
        a.k,
        system.label()
    );
    for f in &doc.families {
        out.push_str(&sides_text(f));
        out.push('\n');
    }
    Ok((out, if outcome.is_complete() { 0 } else { 1 }))
}

fn branch(a: &BranchWidthArgs) -> Outcome {
    let system = load_system(&a.system)?;
    let bw = branch_width(&system).blame("--system")?;
    let doc = BranchWidthDoc {
        system: system.label().to_string(),
        width: bw.width,
        witness: bw.witness.encoding(),
        trees_examined: bw.trees_examined,
    };
    write_json(&doc, &a.json)?;
    Ok((
        format!(
            "branch-width of {}: {}\nwitness: {}\ntrees examined: {}\n",
            doc.system, doc.width, doc.witness, doc.trees_examined
        ),
        0,
    ))
}

fn duality(a: &DualityArgs) -> Outcome {
    let system = load_system(&a.system)?;
    let report = verify_branchwidth_duality(&system, a.kmax, &a.budget.budget()).blame("--system")?;
    write_json(&report, &a.json)?;
    let mut out = format!("{}: branch-width {}, witness {}\n", report.system, report.bw, report.witness);
    for e in &report.per_k {
        let _ = writeln!(
            out,
            "  k={}: tangle {}{}",
            e.k,
            if e.exists { "exists" } else { "none" },
            if e.complete { "" } else { " (budget exhausted)" }
        );
    }
    match report.max_tangle_order {
        Some(o) => {
            let _ = writeln!(out, "max tangle order: {}", o);
        }
        None => out.push_str("max tangle order: unbounded\n"),
    }
    if report.degenerate {
        out.push_str("degenerate ground set (n <= 2)\n");
    }
    for m in &report.mismatches {
        let _ = writeln!(out, "mismatch: {}", m);
    }
    let _ = writeln!(out, "{}", if report.pass { "pass" } else { "FAIL" });
    Ok((out, if report.pass { 0 } else { 1 }))
}

fn theorems(a: &TheoremArgs) -> Outcome {
    let system = load_system(&a.system)?;
    let verdicts = verify_theorems(&a.theorems, &system, a.k, &a.budget.budget()).blame("--system")?;
    let mut out = String::new();
    let mut ok = true;
    for v in &verdicts {
        ok &= v.pass && v.complete;
        let counts: Vec<String> = v.counts.iter().map(|(k, c)| format!("{}={}", k, c)).collect();
        let _ = writeln!(
            out,
            "theorem {} on {} k={}: {}{}  [{}]",
            v.theorem,
            v.system,
            v.k,
            if v.pass { "pass" } else { "FAIL" },
            if v.complete { "" } else { " (incomplete)" },
            counts.join(" ")
        );
        for u in &v.unmatched {
            let _ = writeln!(out, "  unmatched {} {}", u.kind, sides_text(&u.sides));
        }
        if let Some(lit) = &v.literal {
            let bits: Vec<String> = lit.exists.iter().map(|(k, e)| format!("{}={}", k, e)).collect();
            let _ = writeln!(
                out,
                "  literal variant: {} [{}]",
                if lit.agree { "agree" } else { "disagree" },
                bits.join(" ")
            );
        }
    }
    write_json(&VerdictsDoc { verdicts }, &a.json)?;
    Ok((out, if ok { 0 } else { 1 }))
}

fn run_hunt(a: &HuntArgs) -> Outcome {
    let hyperedges = a.hyperedges.unwrap_or(a.n);
    let systems = random_corpus(a.n, a.systems, hyperedges, a.max_arity, a.seed).blame("--n")?;
    let corpus = HuntCorpus {
        label: format!("random-n{}-h{}-r{}", a.n, hyperedges, a.max_arity),
        seed: Some(a.seed),
        systems,
        k_max: a.kmax,
    };
    let verdict = hunt(a.problem, &corpus, &a.budget.budget()).blame("--n")?;
    write_json(&verdict, &a.json)?;
    let mut out = format!(
        "problem {}: {} systems, {} structures examined: {}\n",
        a.problem,
        verdict.systems_examined,
        verdict.structures_examined,
        match verdict.status {
            HuntStatus::NoCounterexampleFound => "no counterexample found",
            HuntStatus::CounterexampleFound => "counterexample found",
            HuntStatus::BudgetExhausted => "budget exhausted",
        }
    );
    for c in &verdict.counterexamples {
        let _ = writeln!(
            out,
            "  {} k={}: {} ({} fails on {})",
            c.system_label,
            c.k,
            sides_text(&c.sides),
            c.axiom,
            sides_text(&c.witness)
        );
    }
    let code = if verdict.status == HuntStatus::NoCounterexampleFound { 0 } else { 1 };
    Ok((out, code))
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check(a) => check(a),
        Command::Enumerate(a) => enumerate(a),
        Command::BranchWidth(a) => branch(a),
        Command::Duality(a) => duality(a),
        Command::VerifyTheorems(a) => theorems(a),
        Command::Hunt(a) => run_hunt(a),
    };
    match result {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure { flag, error }) => {
            let _ = writeln!(err, "error: {}: {}", flag, error);
            2
        }
    }
}
