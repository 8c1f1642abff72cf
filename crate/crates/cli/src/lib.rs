//! Command-line front end: argument parsing, commands and reports.

use clap::{Args, Parser, Subcommand};
use pathcheck_corpus::{check_file, default_root, load_manifest, run_corpus, Corpus, Outcome, STACK_SIZE};
use pathcheck_finmodel::{run_suite, suite_names, Bounds, Mode, RunOptions, SuiteReport};
use pathcheck_kernel::{print::render, Checker, Ctx, ItemKind, ReportItem, State, Status, Term};
use pathcheck_surface::{line_col, parse_str};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Version of the JSON report schema.
pub const REPORT_VERSION: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pathcheck", version, about = "Type checker and finite-model laboratory for reflexive graph lenses")]
pub struct Cli {
    /// Emit a JSON report instead of human-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for `corpus` and `finmodel`.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type-check one source file.
    Check { file: PathBuf },
    /// Print the normal form of a declaration in a source file.
    Norm {
        file: PathBuf,
        #[arg(long = "term", value_name = "NAME")]
        term: String,
    },
    /// Check the shipped corpus, or the one at PATHCHECK_CORPUS.
    Corpus,
    /// Run finite-model suites.
    Finmodel(FinmodelArgs),
    /// Render a saved JSON report.
    Report { file: PathBuf },
}

#[derive(Debug, Args)]
pub struct FinmodelArgs {
    /// Suite to run; all suites when omitted.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 2)]
    pub max_mult: usize,
    #[arg(long, default_value_t = 2)]
    pub max_fiber: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instances drawn when a space is too large to enumerate.
    #[arg(long, default_value_t = RunOptions::default().sample_size)]
    pub samples: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub name: String,
    pub kind: String,
    pub status: EntryStatus,
    pub millis: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub command: String,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
    /// Full suite reports, for `finmodel`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(command: &str, entries: Vec<ReportEntry>) -> Report {
        let pass = entries.iter().filter(|e| e.status == EntryStatus::Pass).count();
        let summary = Summary { pass, fail: entries.len() - pass };
        Report { version: REPORT_VERSION, command: command.into(), entries, summary, suites: Vec::new() }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let width = self.entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(0);
        for e in &self.entries {
            let status = match e.status {
                EntryStatus::Pass => "pass",
                EntryStatus::Fail => "FAIL",
            };
            out.push_str(&format!("{status}  {:<15} {:<width$} {:>10.3} ms", e.kind, e.name, e.millis));
            if let Some(m) = &e.message {
                out.push_str(&format!("  {}", m.replace('\n', " ")));
            }
            out.push('\n');
        }
        out.push_str(&format!("{}: {} passed, {} failed\n", self.command, self.summary.pass, self.summary.fail));
        out
    }
}

/// A usage, IO or parse error, reported on stderr with exit code 2.
#[derive(Debug)]
pub struct UsageError(pub String);

fn item_kind(k: ItemKind) -> &'static str {
    match k {
        ItemKind::Definition => "definition",
        ItemKind::Postulate => "postulate",
        ItemKind::EqAssertion => "eq-assertion",
        ItemKind::FailAssertion => "fail-assertion",
        ItemKind::Norm => "norm",
    }
}

fn millis(micros: u64) -> f64 {
    micros as f64 / 1000.0
}

/// The corpus file at `path`, if any, so that its dependencies can be
/// checked first.
fn corpus_file(path: &Path) -> Option<(Corpus, usize)> {
    let canon = path.canonicalize().ok()?;
    let corpus = load_manifest(&default_root()).ok()?;
    let i = corpus.files.iter().position(|f| f.path.canonicalize().ok().as_deref() == Some(canon.as_path()))?;
    Some((corpus, i))
}

/// Parses and checks `path`, after its corpus dependencies when it is a
/// corpus file. Failures are written to `err` with their positions.
fn check_path(path: &Path, err: &mut Vec<String>) -> Result<(State, Vec<ReportEntry>), UsageError> {
    let source = std::fs::read_to_string(path).map_err(|e| UsageError(format!("{}: error: {e}", path.display())))?;
    let decls = parse_str(&source).map_err(|e| {
        let (line, col) = line_col(&source, e.span().start);
        let message = match &e {
            pathcheck_surface::SyntaxError::Lex(l) => l.message.clone(),
            pathcheck_surface::SyntaxError::Parse(p) => {
                format!("expected {}, found {}", p.expected.join(" or "), p.found)
            }
        };
        UsageError(format!("{}:{line}:{col}: error: {message}", path.display()))
    })?;
    let mut state = State::new();
    if let Some((corpus, i)) = corpus_file(path) {
        for p in corpus.prefix_of(i) {
            let r = check_file(&mut state, &corpus, p);
            if let Some(f) = r.first_failure() {
                err.push(format!(
                    "{}:{}:{}: error: dependency `{}` failed: {}",
                    corpus.files[p].path.display(),
                    f.line,
                    f.col,
                    f.name,
                    f.message.as_deref().unwrap_or("")
                ));
            }
        }
    }
    let mut entries = Vec::with_capacity(decls.len());
    for d in &decls {
        let t = Instant::now();
        let ReportItem { name, kind, status, message, span } = state.check_declaration(d);
        let micros = t.elapsed().as_micros() as u64;
        let status = match status {
            Status::Pass => EntryStatus::Pass,
            Status::Fail => {
                let (line, col) = line_col(&source, span.start);
                err.push(format!(
                    "{}:{line}:{col}: error: `{name}`: {}",
                    path.display(),
                    message.as_deref().unwrap_or("check failed")
                ));
                EntryStatus::Fail
            }
        };
        let message = match (status, kind) {
            (EntryStatus::Fail, _) | (_, ItemKind::Norm) => message,
            _ => None,
        };
        entries.push(ReportEntry { name, kind: item_kind(kind).into(), status, millis: millis(micros), message });
    }
    Ok((state, entries))
}

/// Runs `f` on a thread with a checker-sized stack.
fn big_stack<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(STACK_SIZE)
            .spawn_scoped(s, f)
            .expect("spawn checker thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

/// Output of a command: the report (if any), text for stdout, diagnostics
/// for stderr and the exit code.
pub struct CommandOutput {
    pub report: Option<Report>,
    pub stdout: String,
    pub stderr: Vec<String>,
    pub code: i32,
}

fn finish(cli: &Cli, report: Report, human: Option<String>, stderr: Vec<String>) -> CommandOutput {
    let stdout = if cli.json { report.to_json() + "\n" } else { human.unwrap_or_else(|| report.render_human()) };
    CommandOutput { code: report.exit_code(), report: Some(report), stdout, stderr }
}

fn usage(e: UsageError) -> CommandOutput {
    CommandOutput { report: None, stdout: String::new(), stderr: vec![e.0], code: EXIT_USAGE }
}

fn workers(cli: &Cli) -> usize {
    cli.workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1)
}

fn cmd_check(cli: &Cli, file: &Path) -> CommandOutput {
    let mut err = Vec::new();
    match big_stack(|| check_path(file, &mut err).map(|(_, entries)| entries)) {
        Ok(entries) => finish(cli, Report::new("check", entries), None, err),
        Err(e) => usage(e),
    }
}

fn cmd_norm(cli: &Cli, file: &Path, name: &str) -> CommandOutput {
    let mut err = Vec::new();
    let result = big_stack(|| {
        let (state, mut entries) = check_path(file, &mut err)?;
        let g = &state.globals;
        let idx = g.lookup(name).ok_or_else(|| UsageError(format!("{}: error: no declaration `{name}`", file.display())))?;
        let t = Instant::now();
        let global = g.get(idx);
        let nf = Checker::new(g).normalize(&Ctx::new(), &Term::Const(idx), &global.ty);
        let shown = render(g, &[], &nf);
        let ty = render(g, &[], &Checker::new(g).normalize_ty(&Ctx::new(), &global.ty_term));
        let micros = t.elapsed().as_micros() as u64;
        entries.push(ReportEntry {
            name: name.into(),
            kind: "normal-form".into(),
            status: EntryStatus::Pass,
            millis: millis(micros),
            message: Some(shown.clone()),
        });
        Ok((entries, format!("{name} : {ty}\n{shown}\n")))
    });
    match result {
        Ok((entries, human)) => finish(cli, Report::new("norm", entries), Some(human), err),
        Err(e) => usage(e),
    }
}

fn cmd_corpus(cli: &Cli) -> CommandOutput {
    let root = default_root();
    let corpus = match load_manifest(&root) {
        Ok(c) => c,
        Err(e) => return usage(UsageError(format!("{}: error: {e}", root.display()))),
    };
    let report = run_corpus(&corpus, workers(cli));
    let mut err = Vec::new();
    let mut entries = Vec::new();
    for (f, file) in report.files.iter().zip(&corpus.files) {
        for e in &f.entries {
            let status = match e.status {
                Outcome::Pass => EntryStatus::Pass,
                Outcome::Fail => EntryStatus::Fail,
            };
            if status == EntryStatus::Fail {
                err.push(format!(
                    "{}:{}:{}: error: `{}`: {}",
                    file.path.display(),
                    e.line,
                    e.col,
                    e.name,
                    e.message.as_deref().unwrap_or("check failed")
                ));
            }
            entries.push(ReportEntry {
                name: e.name.clone(),
                kind: e.kind.as_str().into(),
                status,
                millis: millis(e.micros),
                message: e.message.clone(),
            });
        }
    }
    finish(cli, Report::new("corpus", entries), None, err)
}

fn suite_message(r: &SuiteReport) -> String {
    let mode = match r.mode {
        Mode::Exhaustive => format!("exhaustive over {} instances", r.instances),
        Mode::Sampled => format!("{} samples, seed {}", r.instances, r.seed),
    };
    let mut parts = vec![format!("{mode}, {} applicable", r.applicable)];
    if let Some(f) = r.failures.first() {
        parts.push(format!("{} failed, first at index {}: {}", r.failed, f.index, f.reason));
    }
    parts.extend(r.notes.iter().cloned());
    parts.join("; ")
}

fn cmd_finmodel(cli: &Cli, a: &FinmodelArgs) -> CommandOutput {
    let bounds = Bounds { max_vertices: a.max_vertices, max_mult: a.max_mult, max_fiber: a.max_fiber };
    if bounds.max_vertices == 0 || bounds.max_mult == 0 {
        return usage(UsageError("error: bounds must be at least 1".into()));
    }
    let opts = RunOptions { seed: a.seed, sample_size: a.samples, workers: workers(cli), ..RunOptions::default() };
    let names: Vec<String> = match &a.suite {
        Some(s) => vec![s.clone()],
        None => suite_names().into_iter().map(String::from).collect(),
    };
    let mut suites = Vec::new();
    for name in &names {
        match run_suite(name, &bounds, &opts) {
            Ok(r) => suites.push(r),
            Err(e) => {
                return usage(UsageError(format!("error: {e}; known suites: {}", suite_names().join(", "))));
            }
        }
    }
    let entries = suites
        .iter()
        .map(|r| ReportEntry {
            name: r.suite.clone(),
            kind: "suite".into(),
            status: if r.passed() { EntryStatus::Pass } else { EntryStatus::Fail },
            millis: r.millis as f64,
            message: Some(suite_message(r)),
        })
        .collect();
    let err = suites
        .iter()
        .filter_map(|r| r.failures.first().map(|f| format!("error: suite `{}` failed at index {}: {}", r.suite, f.index, f.reason)))
        .collect();
    let mut report = Report::new("finmodel", entries);
    report.suites = suites;
    finish(cli, report, None, err)
}

fn cmd_report(cli: &Cli, file: &Path) -> CommandOutput {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage(UsageError(format!("{}: error: {e}", file.display()))),
    };
    match serde_json::from_str::<Report>(&text) {
        Ok(r) if r.version == REPORT_VERSION => finish(cli, r, None, Vec::new()),
        Ok(r) => usage(UsageError(format!("{}: error: unsupported report version {}", file.display(), r.version))),
        Err(e) => usage(UsageError(format!("{}:{}:{}: error: {e}", file.display(), e.line(), e.column()))),
    }
}

pub fn execute(cli: &Cli) -> CommandOutput {
    match &cli.command {
        Command::Check { file } => cmd_check(cli, file),
        Command::Norm { file, term } => cmd_norm(cli, file, term),
        Command::Corpus => cmd_corpus(cli),
        Command::Finmodel(a) => cmd_finmodel(cli, a),
        Command::Report { file } => cmd_report(cli, file),
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code.
pub fn main_with(args: impl IntoIterator<Item = String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let o = execute(&cli);
    let _ = out.write_all(o.stdout.as_bytes());
    for line in &o.stderr {
        let _ = writeln!(err, "{line}");
    }
    o.code
}
