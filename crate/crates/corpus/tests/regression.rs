use pathcheck_corpus::{load_manifest, run_corpus, shipped_root, EntryKind, Outcome, REQUIRED_EQS};
use std::time::{Duration, Instant};

#[test]
fn shipped_corpus_passes_within_budget() {
    let corpus = load_manifest(&shipped_root()).unwrap();
    let start = Instant::now();
    let report = run_corpus(&corpus, 1);
    let elapsed = start.elapsed();
    for e in report.entries().filter(|e| e.status == Outcome::Fail) {
        eprintln!("FAIL {} at {}:{}: {}", e.name, e.line, e.col, e.message.as_deref().unwrap_or(""));
    }
    assert!(report.all_pass());
    assert_eq!(report.pass_count(), corpus.entries.len());
    assert!(elapsed < Duration::from_secs(120), "corpus took {elapsed:?}");
}

#[test]
fn named_assertions_are_present_and_pass() {
    let corpus = load_manifest(&shipped_root()).unwrap();
    let report = run_corpus(&corpus, 1);
    for name in REQUIRED_EQS {
        let e = report.entry(name).unwrap_or_else(|| panic!("missing `{name}`"));
        assert_eq!(e.status, Outcome::Pass, "{name}");
        assert_eq!(e.kind, EntryKind::EqAssertion, "{name}");
    }
    let eqs = report.entries().filter(|e| e.kind == EntryKind::EqAssertion).count();
    assert!(eqs >= REQUIRED_EQS.len());
}

#[test]
fn manifest_covers_the_development() {
    let corpus = load_manifest(&shipped_root()).unwrap();
    assert!(corpus.entries.len() >= 120);
    for f in ["prelude", "graphs", "univalence", "lenses", "defnlenses", "poly", "classify", "fib"] {
        let name = format!("{f}.rgl");
        assert!(corpus.file(&name).is_some_and(|f| !f.entries.is_empty()), "{name}");
    }
}

#[test]
fn parallel_run_matches_sequential() {
    let corpus = load_manifest(&shipped_root()).unwrap();
    let seq = run_corpus(&corpus, 1).without_timings();
    let par = run_corpus(&corpus, 4).without_timings();
    assert_eq!(seq, par);
}
