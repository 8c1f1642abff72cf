//! Checking a loaded corpus, sequentially or across worker threads.

use crate::manifest::{Corpus, EntryKind};
use pathcheck_kernel::{State, Status};
use pathcheck_surface::line_col;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

/// Stack size for checker threads; normalization recurses deeply.
pub const STACK_SIZE: usize = 1 << 29;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryResult {
    pub name: String,
    pub kind: EntryKind,
    pub status: Outcome,
    pub micros: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileReport {
    pub file: String,
    pub entries: Vec<EntryResult>,
    pub micros: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub files: Vec<FileReport>,
    pub micros: u64,
}

impl FileReport {
    pub fn first_failure(&self) -> Option<&EntryResult> {
        self.entries.iter().find(|e| e.status == Outcome::Fail)
    }
}

impl CorpusReport {
    pub fn entries(&self) -> impl Iterator<Item = &EntryResult> {
        self.files.iter().flat_map(|f| f.entries.iter())
    }

    pub fn entry(&self, name: &str) -> Option<&EntryResult> {
        self.entries().find(|e| e.name == name)
    }

    pub fn pass_count(&self) -> usize {
        self.entries().filter(|e| e.status == Outcome::Pass).count()
    }

    pub fn fail_count(&self) -> usize {
        self.entries().filter(|e| e.status == Outcome::Fail).count()
    }

    pub fn all_pass(&self) -> bool {
        self.fail_count() == 0
    }

    /// The report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> CorpusReport {
        let mut r = self.clone();
        r.micros = 0;
        for f in &mut r.files {
            f.micros = 0;
            for e in &mut f.entries {
                e.micros = 0;
            }
        }
        r
    }
}

/// Checks one file of the corpus against `state`, extending it.
pub fn check_file(state: &mut State, corpus: &Corpus, file: usize) -> FileReport {
    let f = &corpus.files[file];
    let start = Instant::now();
    let mut entries = Vec::with_capacity(f.entries.len());
    for &i in &f.entries {
        let e = &corpus.entries[i];
        let t = Instant::now();
        let item = state.check_declaration(&e.decl);
        let micros = t.elapsed().as_micros() as u64;
        let (line, col) = line_col(&f.source, item.span.start);
        let status = match item.status {
            Status::Pass => Outcome::Pass,
            Status::Fail => Outcome::Fail,
        };
        let message = match (status, e.kind) {
            (Outcome::Fail, _) | (_, EntryKind::Norm) => item.message,
            _ => None,
        };
        entries.push(EntryResult { name: e.name.clone(), kind: e.kind, status, micros, message, line, col });
    }
    FileReport { file: f.name.clone(), entries, micros: start.elapsed().as_micros() as u64 }
}

/// Checks every file in order on the current thread, returning the final
/// state alongside the report. The caller provides a large enough stack.
pub fn check_in_place(corpus: &Corpus) -> (CorpusReport, State) {
    let start = Instant::now();
    let mut state = State::new();
    let files = (0..corpus.files.len()).map(|i| check_file(&mut state, corpus, i)).collect();
    let mut report = CorpusReport { files, micros: start.elapsed().as_micros() as u64 };
    propagate_failures(corpus, &mut report);
    (report, state)
}

/// Checks the corpus with up to `workers` threads. The report lists files
/// and entries in canonical order regardless of scheduling.
pub fn run_corpus(corpus: &Corpus, workers: usize) -> CorpusReport {
    let workers = workers.max(1).min(corpus.files.len().max(1));
    if workers == 1 {
        return std::thread::scope(|s| {
            std::thread::Builder::new()
                .stack_size(STACK_SIZE)
                .spawn_scoped(s, || check_in_place(corpus).0)
                .expect("spawn checker thread")
                .join()
                .unwrap_or_else(|e| std::panic::resume_unwind(e))
        });
    }
    let start = Instant::now();
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<FileReport>>> = Mutex::new(vec![None; corpus.files.len()]);
    std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                std::thread::Builder::new()
                    .stack_size(STACK_SIZE)
                    .spawn_scoped(s, || loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= corpus.files.len() {
                            break;
                        }
                        // Checked values are not shareable across threads, so
                        // each worker re-checks the prefix its file needs.
                        let mut state = State::new();
                        for p in corpus.prefix_of(i) {
                            check_file(&mut state, corpus, p);
                        }
                        let r = check_file(&mut state, corpus, i);
                        slots.lock().unwrap()[i] = Some(r);
                    })
                    .expect("spawn checker thread")
            })
            .collect();
        for h in handles {
            h.join().unwrap_or_else(|e| std::panic::resume_unwind(e));
        }
    });
    let files = slots.into_inner().unwrap().into_iter().map(|r| r.expect("every file checked")).collect();
    let mut report = CorpusReport { files, micros: start.elapsed().as_micros() as u64 };
    propagate_failures(corpus, &mut report);
    report
}

/// Marks entries that refer to a failed constant as failed themselves. A
/// failed definition stays in scope as a postulate, so the kernel alone
/// would accept its dependents.
fn propagate_failures(corpus: &Corpus, report: &mut CorpusReport) {
    let mut failed: HashSet<String> = HashSet::new();
    for (f, file) in report.files.iter_mut().zip(&corpus.files) {
        for (r, &i) in f.entries.iter_mut().zip(&file.entries) {
            let e = &corpus.entries[i];
            if r.status == Outcome::Pass {
                if let Some(dep) = e.uses.iter().find(|u| failed.contains(u.as_str())) {
                    r.status = Outcome::Fail;
                    r.message = Some(format!("depends on failed entry `{dep}`"));
                }
            }
            if r.status == Outcome::Fail && e.kind.is_constant() {
                failed.insert(e.name.clone());
            }
        }
    }
}
