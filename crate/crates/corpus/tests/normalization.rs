use pathcheck_corpus::{check_in_place, load_manifest, normal_form_audit, shipped_root};
use pathcheck_kernel::with_stack;

#[test]
fn normal_forms_are_idempotent_and_well_typed() {
    let (count, problems) = with_stack(|| {
        let corpus = load_manifest(&shipped_root()).unwrap();
        let (report, state) = check_in_place(&corpus);
        assert!(report.all_pass());
        normal_form_audit(&state)
    });
    assert!(count >= 200, "only {count} definitions");
    assert!(problems.is_empty(), "{problems:#?}");
}
