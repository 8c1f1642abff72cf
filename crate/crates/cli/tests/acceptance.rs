//! Acceptance criteria, one PASS or FAIL line each.

use pathcheck_corpus::{
    check_in_place, load_manifest, normal_form_audit, perturb_corpus, run_corpus, shipped_root, without_rext_rx,
    EntryKind, Outcome, REQUIRED_EQS, STACK_SIZE,
};
use pathcheck_finmodel::construct::codiscrete;
use pathcheck_finmodel::gaunt::{bijection_exists, monotone_bijections};
use pathcheck_finmodel::{is_cov_fibration, is_ctrv_fibration, run_suite, suite_names, Bounds, FinDispRxGraph, Mode, RunOptions};
use pathcheck_kernel::{State, Status};
use pathcheck_surface::parse_str;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

const PRELUDE: &str = "
postulate A : Type 0
postulate B : A -> Type 0
postulate a : A
postulate b : B a
postulate f : A -> A
postulate g : Π (x : A) . B x
postulate p : Σ (x : A) . B x
postulate w : Unit
postulate C : Π (x y : A) . Id A x y -> Type 0
postulate c : Π (x : A) . C x x refl
";

const RULES: &[(&str, &str)] = &[
    ("J computation", "#eq [j_refl] (J A C c a a refl) (c a) : C a a refl"),
    ("Π β", "#eq [pi_beta] ((λ x . g x) a) (g a) : B a"),
    ("Σ β", "#eq [fst_beta] (fst ((a, b) : Σ (x : A) . B x)) a : A\n#eq [snd_beta] (snd ((a, b) : Σ (x : A) . B x)) b : B a"),
    (
        "ℕ β",
        "#eq [rec_zero] (natrec (λ _ . A) a (λ _ r . f r) zero) a : A\n#eq [rec_succ] (natrec (λ _ . A) a (λ _ r . f r) 2) (f (f a)) : A",
    ),
    ("Π η on a neutral function", "#eq [pi_eta] (λ x . g x) g : Π (x : A) . B x"),
    ("Σ η on a neutral pair", "#eq [sigma_eta] (fst p, snd p) p : Σ (x : A) . B x"),
    ("Unit η on a neutral element", "#eq [unit_eta] w tt : Unit"),
    ("distinct numerals", "#fail-eq [distinct] zero (succ zero) : Nat"),
];

fn kernel_rules() -> Verdict {
    for (rule, src) in RULES {
        let decls = parse_str(&format!("{PRELUDE}\n{src}")).map_err(|e| format!("{rule}: {e}"))?;
        let mut st = State::new();
        for item in st.check_all(&decls) {
            ensure(item.status == Status::Pass, || format!("{rule}: `{}` {:?}", item.name, item.message))?;
        }
    }
    Ok(format!("{} rules", RULES.len()))
}

fn corpus_regression() -> Verdict {
    let corpus = load_manifest(&shipped_root()).map_err(|e| e.to_string())?;
    let start = Instant::now();
    let report = run_corpus(&corpus, 1);
    let elapsed = start.elapsed();
    ensure(corpus.entries.len() >= 120, || format!("only {} entries", corpus.entries.len()))?;
    let failed: Vec<&str> = report.entries().filter(|e| e.status == Outcome::Fail).map(|e| e.name.as_str()).collect();
    ensure(failed.is_empty(), || format!("failures: {failed:?}"))?;
    for name in REQUIRED_EQS {
        let e = report.entry(name).ok_or_else(|| format!("missing `{name}`"))?;
        ensure(e.kind == EntryKind::EqAssertion, || format!("`{name}` is not an #eq"))?;
    }
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} entries, {} named computations, {:.2}s",
        corpus.entries.len(),
        REQUIRED_EQS.len(),
        elapsed.as_secs_f64()
    ))
}

fn copy_dir(from: &std::path::Path, to: &std::path::Path) -> std::io::Result<()> {
    for f in std::fs::read_dir(from)? {
        let f = f?;
        std::fs::copy(f.path(), to.join(f.file_name()))?;
    }
    Ok(())
}

fn mutation_sensitivity() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    copy_dir(&shipped_root(), dir.path()).map_err(|e| e.to_string())?;
    let lenses = dir.path().join("lenses.rgl");
    let src = std::fs::read_to_string(&lenses).map_err(|e| e.to_string())?;
    std::fs::write(&lenses, without_rext_rx(&src).ok_or("unbiased lens record not found")?).map_err(|e| e.to_string())?;
    let mutated = load_manifest(dir.path()).map_err(|e| e.to_string())?;
    let broken = run_corpus(&mutated, 1).fail_count();
    ensure(broken > 0, || "removing rextRx broke nothing".into())?;

    let corpus = load_manifest(&shipped_root()).map_err(|e| e.to_string())?;
    let eqs: Vec<&str> =
        corpus.entries.iter().filter(|e| e.kind == EntryKind::EqAssertion).map(|e| e.name.as_str()).collect();
    for (k, name) in eqs.iter().enumerate() {
        let perturbed = perturb_corpus(&corpus, k).ok_or_else(|| format!("cannot perturb `{name}`"))?;
        let report = check_in_place(&perturbed).0;
        let failed: Vec<&str> = report.entries().filter(|e| e.status == Outcome::Fail).map(|e| e.name.as_str()).collect();
        ensure(failed == [*name], || format!("perturbing `{name}` failed {failed:?}"))?;
    }
    Ok(format!("rextRx removal fails {broken} entries; {} perturbations each fail exactly their assertion", eqs.len()))
}

fn finmodel_suites() -> Verdict {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let opts = RunOptions { workers, ..RunOptions::default() };
    let bounds = Bounds::default();
    let start = Instant::now();
    let mut sampled = 0;
    let names = suite_names();
    for name in &names {
        let r = run_suite(name, &bounds, &opts).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {} counterexamples, first {:?}", r.failed, r.failures.first()))?;
        if r.mode == Mode::Sampled {
            sampled += 1;
            ensure(r.sample_size == Some(opts.sample_size) && r.seed == opts.seed, || format!("{name}: sampling unrecorded"))?;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} suites at bounds (3, 2, 2), {} sampled with seed {} and {} samples, {:.1}s",
        names.len(),
        sampled,
        opts.seed,
        opts.sample_size,
        elapsed.as_secs_f64()
    ))
}

fn counterexample() -> Verdict {
    let d = FinDispRxGraph::new(codiscrete(2), vec![0, 1], |_, _, _, _, _| 1, |_, _| 0).map_err(|e| e.to_string())?;
    let (uni, cov, ctrv) = (d.is_univalent(), is_cov_fibration(&d).is_some(), is_ctrv_fibration(&d).is_some());
    ensure(uni && !cov && !ctrv, || format!("univalent {uni}, covariant {cov}, contravariant {ctrv}"))?;
    Ok("univalent: true, covariant fibration: false, contravariant fibration: false".into())
}

fn gauntness() -> Verdict {
    for m in 0..=5 {
        for n in 0..=5 {
            let found = monotone_bijections(m, n);
            ensure(found.len() <= 1, || format!("{} monotone bijections {m} -> {n}", found.len()))?;
            ensure(m == n || found.is_empty(), || format!("monotone bijection {m} -> {n}"))?;
            ensure(bijection_exists(m, n) == (m == n), || format!("bijections {m} -> {n}"))?;
        }
    }
    Ok("m, n <= 5".into())
}

fn normalization() -> Verdict {
    let corpus = load_manifest(&shipped_root()).map_err(|e| e.to_string())?;
    let (report, state) = check_in_place(&corpus);
    ensure(report.all_pass(), || "corpus does not check".into())?;
    let (count, problems) = normal_form_audit(&state);
    ensure(problems.is_empty(), || problems.join("; "))?;
    Ok(format!("{count} definition bodies"))
}

fn run(f: fn() -> Verdict) -> Verdict {
    std::thread::Builder::new()
        .stack_size(STACK_SIZE)
        .spawn(move || catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into())))
        .expect("spawn criterion thread")
        .join()
        .unwrap_or_else(|_| Err("panicked".into()))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("kernel computation and η rules", kernel_rules),
        ("corpus regression", corpus_regression),
        ("mutation sensitivity", mutation_sensitivity),
        ("finite-model suites", finmodel_suites),
        ("counterexample reproduction", counterexample),
        ("gauntness oracle", gauntness),
        ("normalization idempotence and subject preservation", normalization),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        match run(f) {
            Ok(detail) => println!("PASS criterion {}: {title} ({detail}) [{:.1}s]", i + 1, start.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
