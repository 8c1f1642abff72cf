use pathcheck_corpus::{
    check_in_place, load_manifest, perturb_corpus, run_corpus, shipped_root, without_rext_rx, Corpus, EntryKind,
    Outcome,
};
use pathcheck_kernel::with_stack;
use std::path::Path;

fn copy_corpus(to: &Path) {
    for f in std::fs::read_dir(shipped_root()).unwrap() {
        let f = f.unwrap();
        std::fs::copy(f.path(), to.join(f.file_name())).unwrap();
    }
}

fn edit(dir: &Path, file: &str, from: &str, to: &str) {
    let path = dir.join(file);
    let src = std::fs::read_to_string(&path).unwrap();
    assert!(src.contains(from), "`{from}` not found in {file}");
    std::fs::write(path, src.replacen(from, to, 1)).unwrap();
}

fn failures(corpus: &Corpus) -> Vec<String> {
    run_corpus(corpus, 1).entries().filter(|e| e.status == Outcome::Fail).map(|e| e.name.clone()).collect()
}

#[test]
fn removing_rext_rx_breaks_the_corpus() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    let path = dir.path().join("lenses.rgl");
    let src = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, without_rext_rx(&src).expect("unbiased lens record found")).unwrap();
    let corpus = load_manifest(dir.path()).unwrap();
    let failed = failures(&corpus);
    assert!(failed.iter().any(|n| n == "rextRx"), "{failed:?}");
    // The display univalence lemma needs the missing unit.
    assert!(failed.iter().any(|n| n == "unbDispPo"), "{failed:?}");
}

#[test]
fn flipping_a_fail_assertion_fails_it() {
    let dir = tempfile::tempdir().unwrap();
    copy_corpus(dir.path());
    edit(dir.path(), "fib.rgl", "#fail-eq [counter_fibres_differ]", "#eq [counter_fibres_differ]");
    edit(dir.path(), "manifest.toml", "name = \"counter_fibres_differ\"\nkind = \"fail-assertion\"", "name = \"counter_fibres_differ\"\nkind = \"eq-assertion\"");
    let corpus = load_manifest(dir.path()).unwrap();
    assert_eq!(failures(&corpus), ["counter_fibres_differ"]);
}

#[test]
fn every_perturbed_assertion_fails() {
    let sweep = with_stack(|| pathcheck_corpus::perturbation_sweep(&load_manifest(&shipped_root()).unwrap()));
    assert!(sweep.broken.is_empty(), "{:?}", sweep.broken);
    assert!(sweep.perturbed >= 100, "only {} assertions", sweep.perturbed);
    assert!(sweep.survivors.is_empty(), "perturbations not detected: {:?}", sweep.survivors);
}

#[test]
fn each_perturbation_changes_nothing_else() {
    let corpus = load_manifest(&shipped_root()).unwrap();
    let eqs: Vec<&str> =
        corpus.entries.iter().filter(|e| e.kind == EntryKind::EqAssertion).map(|e| e.name.as_str()).collect();
    let baseline = run_corpus(&corpus, 1).without_timings();
    for (k, name) in eqs.iter().enumerate() {
        let mutated = perturb_corpus(&corpus, k).unwrap();
        let report = std::thread::scope(|s| {
            std::thread::Builder::new()
                .stack_size(pathcheck_corpus::STACK_SIZE)
                .spawn_scoped(s, || check_in_place(&mutated).0.without_timings())
                .unwrap()
                .join()
                .unwrap()
        });
        for (a, b) in baseline.entries().zip(report.entries().filter(|e| !e.name.starts_with("__perturb"))) {
            assert_eq!(a.name, b.name);
            if a.name == *name {
                assert_eq!(b.status, Outcome::Fail, "{}", a.name);
            } else {
                assert_eq!(a.status, b.status, "{} changed when perturbing {}", a.name, *name);
            }
        }
        assert_eq!(report.fail_count(), 1);
    }
}
