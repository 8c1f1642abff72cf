use pathcheck_cli::{EntryStatus, Report, ReportEntry, REPORT_VERSION};
use proptest::prelude::*;
use std::path::Path;
use std::process::{Command, Output};

fn pathcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pathcheck")).args(args).env_remove("PATHCHECK_CORPUS").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Report {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, src: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, src).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn refl_mismatch_exits_one_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.rgl", "postulate A : Type 0\ndef r : Id Nat zero (succ zero) := refl\n");
    let o = pathcheck(&["check", &f]);
    assert_eq!(code(&o), 1);
    let err = stderr(&o);
    assert!(err.contains("refl endpoints not convertible"), "{err}");
    assert!(err.contains(&format!("{f}:2:")), "{err}");
}

#[test]
fn clean_file_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ok.rgl", "def two : Nat := succ (succ zero)\n#eq [two_is_two] two 2 : Nat\n");
    let o = pathcheck(&["check", &f, "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r.version, REPORT_VERSION);
    assert_eq!(r.command, "check");
    assert_eq!(r.summary.pass, 2);
    assert_eq!(r.entries[1].name, "two_is_two");
    assert_eq!(r.entries[1].kind, "eq-assertion");
}

#[test]
fn syntax_and_io_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "syn.rgl", "def x : Nat :=\n  (succ\n");
    let o = pathcheck(&["check", &f]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).starts_with(&format!("{f}:3:1: error:")), "{}", stderr(&o));
    let missing = dir.path().join("missing.rgl");
    assert_eq!(code(&pathcheck(&["check", missing.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&pathcheck(&[])), 2);
    assert_eq!(code(&pathcheck(&["corpus", "--seed", "3"])), 2);
    assert_eq!(code(&pathcheck(&["check", "a.rgl", "--max-vertices", "2"])), 2);
    assert_eq!(code(&pathcheck(&["norm", "a.rgl"])), 2);
    assert_eq!(code(&pathcheck(&["finmodel", "--suite", "no-such-suite"])), 2);
    assert_eq!(code(&pathcheck(&["finmodel", "--suite", "disc-po", "--max-vertices", "0"])), 2);
}

#[test]
fn norm_prints_the_eta_long_normal_form() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "n.rgl",
        "postulate A : Type 0\npostulate f : A -> A\ndef twice : A -> A := λ x . f (f x)\ndef g : A -> A := twice\n",
    );
    let o = pathcheck(&["norm", &f, "--term", "g"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().last().unwrap(), "λ x . f (f x)");
    let o = pathcheck(&["norm", &f, "--term", "f", "--json"]);
    assert_eq!(json(&o).entries.last().unwrap().message.as_deref(), Some("λ x . f x"));
    assert_eq!(code(&pathcheck(&["norm", &f, "--term", "nope"])), 2);
}

#[test]
fn corpus_files_are_checked_after_their_dependencies() {
    let f = pathcheck_corpus::shipped_root().join("fib.rgl");
    let o = pathcheck(&["check", f.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
}

#[test]
fn corpus_passes_and_lists_every_entry() {
    let o = pathcheck(&["corpus", "--json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = json(&o);
    let corpus = pathcheck_corpus::load_manifest(&pathcheck_corpus::shipped_root()).unwrap();
    assert_eq!(r.entries.len(), corpus.entries.len());
    assert!(r.entries.iter().all(|e| e.status == EntryStatus::Pass));
    assert_eq!(r.summary.fail, 0);
}

#[test]
fn corpus_order_is_independent_of_workers() {
    let strip = |mut r: Report| {
        r.entries.iter_mut().for_each(|e| e.millis = 0.0);
        r
    };
    let one = strip(json(&pathcheck(&["corpus", "--json", "--workers", "1"])));
    let three = strip(json(&pathcheck(&["corpus", "--json", "--workers", "3"])));
    assert_eq!(one, three);
}

#[test]
fn corpus_root_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "manifest.toml",
        "version = 1\n\n[[file]]\nname = \"a.rgl\"\ndeps = []\n\n[[entry]]\nname = \"r\"\nkind = \"definition\"\nfile = \"a.rgl\"\nglue = true\n",
    );
    write(dir.path(), "a.rgl", "def r : Id Nat zero (succ zero) := refl\n");
    let o = Command::new(env!("CARGO_BIN_EXE_pathcheck")).arg("corpus").env("PATHCHECK_CORPUS", dir.path()).output().unwrap();
    assert_eq!(code(&o), 1, "{}", stderr(&o));
    assert!(stderr(&o).contains("a.rgl:1:"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_pathcheck"))
        .arg("corpus")
        .env("PATHCHECK_CORPUS", dir.path().join("nowhere"))
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn codisc_suite_reports_univalence_only_at_one() {
    let o = pathcheck(&["finmodel", "--suite", "codisc-po", "--max-vertices", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r.suites.len(), 1);
    let notes = &r.suites[0].notes;
    assert_eq!(notes.iter().filter(|n| n.ends_with("univalent: true")).collect::<Vec<_>>(), ["codiscrete(1) univalent: true"]);
    assert_eq!(notes.len(), 3);
}

#[test]
fn finmodel_records_seed_and_samples() {
    let o = pathcheck(&["finmodel", "--suite", "total-po", "--seed", "9", "--samples", "200", "--json"]);
    assert_eq!(code(&o), 0);
    let s = &json(&o).suites[0];
    assert_eq!(s.seed, 9);
    assert_eq!(s.sample_size, Some(200));
}

#[test]
fn saved_reports_render_with_their_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.rgl", "def r : Id Nat zero (succ zero) := refl\n");
    let saved = stdout(&pathcheck(&["check", &bad, "--json"]));
    let path = write(dir.path(), "report.json", &saved);
    let o = pathcheck(&["report", &path]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("0 passed, 1 failed"));
    let o = pathcheck(&["report", &path, "--json"]);
    assert_eq!(stdout(&o), saved);
    let junk = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(code(&pathcheck(&["report", &junk])), 2);
}

#[test]
fn emitted_reports_round_trip() {
    for args in [&["corpus", "--json"][..], &["finmodel", "--suite", "counterexample", "--json"][..]] {
        let text = stdout(&pathcheck(args));
        let r: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(r.to_json() + "\n", text);
    }
}

fn entry() -> impl Strategy<Value = ReportEntry> {
    ("[a-zA-Z_⁺†]{1,12}", "[a-z-]{1,12}", any::<bool>(), any::<f64>(), proptest::option::of(".{0,40}")).prop_map(
        |(name, kind, pass, millis, message)| ReportEntry {
            name,
            kind,
            status: if pass { EntryStatus::Pass } else { EntryStatus::Fail },
            millis: if millis.is_finite() { millis.abs() } else { 0.0 },
            message,
        },
    )
}

proptest! {
    #[test]
    fn report_json_round_trips(entries in proptest::collection::vec(entry(), 0..8)) {
        let r = Report::new("check", entries);
        prop_assert_eq!(r.summary.pass + r.summary.fail, r.entries.len());
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        prop_assert_eq!(back, r);
    }
}
