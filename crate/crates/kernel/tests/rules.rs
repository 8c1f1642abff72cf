use pathcheck_kernel::{print::render, Checker, Ctx, ItemKind, ReportItem, State, Status, Term};
use pathcheck_surface::{parse_str, parse_str_term};

const PRELUDE: &str = "
postulate A : Type 0
postulate B : A -> Type 0
postulate a : A
postulate a' : A
postulate b : B a
postulate f : A -> A
postulate g : Π (x : A) . B x
postulate p : Σ (x : A) . B x
postulate w : Unit
postulate C : Π (x y : A) . Id A x y -> Type 0
postulate c : Π (x : A) . C x x refl
postulate e : Id A a a'
";

fn run(src: &str) -> Vec<ReportItem> {
    let decls = parse_str(&format!("{PRELUDE}\n{src}")).expect("parse");
    let mut st = State::new();
    st.check_all(&decls)
}

fn state(src: &str) -> State {
    let decls = parse_str(&format!("{PRELUDE}\n{src}")).expect("parse");
    let mut st = State::new();
    for item in st.check_all(&decls) {
        assert_eq!(item.status, Status::Pass, "{}: {:?}", item.name, item.message);
    }
    st
}

fn assert_pass(src: &str) {
    for item in run(src) {
        assert_eq!(item.status, Status::Pass, "{}: {:?}", item.name, item.message);
    }
}

fn last(src: &str) -> ReportItem {
    run(src).pop().unwrap()
}

/// Normal form of a closed term, rendered.
fn norm(st: &State, term: &str, ty: &str) -> String {
    let (_, tyv) = st.elab_type(&parse_str_term(ty).unwrap()).unwrap();
    let t = st.elab_term(&parse_str_term(term).unwrap(), &tyv).unwrap();
    let nf = Checker::new(&st.globals).normalize(&Ctx::new(), &t, &tyv);
    render(&st.globals, &[], &nf)
}

#[test]
fn j_computes_on_refl() {
    assert_pass("#eq [j_refl] (J A C c a a refl) (c a) : C a a refl");
}

#[test]
fn j_is_stuck_on_a_postulated_identification() {
    let st = state("");
    let nf = norm(&st, "J A C c a a' e", "C a a' e");
    assert!(nf.starts_with("J A "), "{nf}");
    assert!(nf.ends_with(" e"), "{nf}");
    let item = last("#fail-eq [stuck] (J A C c a a' e) (J A C c a a' e) : C a a' e");
    assert_eq!(item.status, Status::Fail);
}

#[test]
fn beta_pi() {
    assert_pass("#eq [beta] ((λ x . f x) a) (f a) : A");
    assert_pass("#eq [beta_dep] ((λ x . g x) a) (g a) : B a");
}

#[test]
fn beta_sigma() {
    assert_pass(
        "#eq [fst_beta] (fst ((a, b) : Σ (x : A) . B x)) a : A
         #eq [snd_beta] (snd ((a, b) : Σ (x : A) . B x)) b : B a",
    );
}

#[test]
fn beta_nat() {
    assert_pass(
        "#eq [rec_zero] (natrec (λ _ . A) a (λ _ r . f r) zero) a : A
         #eq [rec_succ] (natrec (λ _ . A) a (λ _ r . f r) 2) (f (f a)) : A
         #eq [rec_three] (natrec (λ _ . Nat) 0 (λ _ r . succ r) 3) 3 : Nat",
    );
}

#[test]
fn eta_neutral_function() {
    assert_pass("#eq [eta_fun] (λ x . f x) f : A -> A");
    assert_pass("#eq [eta_dep] (λ x . g x) g : Π (x : A) . B x");
}

#[test]
fn eta_neutral_pair() {
    assert_pass("#eq [eta_pair] (fst p, snd p) p : Σ (x : A) . B x");
}

#[test]
fn eta_neutral_unit() {
    assert_pass("#eq [eta_unit] w tt : Unit");
    assert_pass("postulate h : A -> Unit\n#eq [eta_unit_fun] h (λ _ . tt) : A -> Unit");
}

#[test]
fn distinct_numerals() {
    assert_pass("#fail-eq [distinct] zero (succ zero) : Nat");
    assert_eq!(last("#eq [bad] zero (succ zero) : Nat").status, Status::Fail);
}

#[test]
fn quote_is_eta_long() {
    let st = state("");
    assert_eq!(norm(&st, "f", "A -> A"), "λ x . f x");
    assert_eq!(norm(&st, "p", "Σ (x : A) . B x"), "(fst p, snd p)");
    assert_eq!(norm(&st, "w", "Unit"), "tt");
    assert_eq!(norm(&st, "(a, b)", "Σ (x : A) . B x"), "(a, b)");
    assert_eq!(norm(&st, "fst ((a, b) : Σ (x : A) . B x)", "A"), "a");
}

#[test]
fn definitions_unfold_in_conversion() {
    assert_pass(
        "def twice : (A -> A) -> A -> A := λ h x . h (h x)
         #eq [unfold] (twice f a) (f (f a)) : A
         #eq [same_head] (twice f) (twice f) : A -> A
         #norm [show] twice f : A -> A",
    );
    let st = state("def twice : (A -> A) -> A -> A := λ h x . h (h x)");
    assert_eq!(norm(&st, "twice f", "A -> A"), "λ x . f (f x)");
}

#[test]
fn refl_checks() {
    assert_pass("def r : Id Nat zero zero := refl");
    let item = last("def r : Id Nat zero (succ zero) := refl");
    assert_eq!(item.status, Status::Fail);
    assert!(item.message.unwrap().contains("refl endpoints not convertible"));
}

#[test]
fn refl_infers_through_annotation() {
    let st = state("");
    let t = st.elab_type(&parse_str_term("Id A a a").unwrap()).unwrap().1;
    let r = parse_str_term("(refl : Id A a a)").unwrap();
    let core = st.elab_term(&r, &t).unwrap();
    let ty = Checker::new(&st.globals).infer(&Ctx::new(), &core).unwrap();
    assert!(Checker::new(&st.globals).conv_ty(&Ctx::new(), &ty, &t));
}

#[test]
fn universe_tower() {
    let st = State::new();
    let ty = Checker::new(&st.globals).infer(&Ctx::new(), &Term::Type(0)).unwrap();
    assert!(matches!(&*ty, pathcheck_kernel::Value::Type(1)));
    assert!(Checker::new(&st.globals).infer(&Ctx::new(), &Term::Type(3)).is_err());
    let item = last("def bad : Type 1 := Nat");
    assert_eq!(item.status, Status::Fail);
    assert!(item.message.unwrap().contains("universe level mismatch"));
}

#[test]
fn projection_of_non_sigma() {
    let item = last("def bad : A := fst a");
    assert_eq!(item.status, Status::Fail);
    assert!(item.message.unwrap().contains("projection of non-Σ"));
}

#[test]
fn non_function_applied() {
    let item = last("def bad : A := a a");
    assert!(item.message.unwrap().contains("non-function applied"));
}

#[test]
fn unbound_constant() {
    let item = last("def bad : A := nope");
    assert!(item.message.unwrap().contains("unbound constant `nope`"));
}

#[test]
fn lambda_against_wrong_pi_fails() {
    let item = last("def bad : Π (X : Type 0) . X := λ x . x");
    assert_eq!(item.status, Status::Fail);
    let item = last("def bad2 : A -> A := λ x y . x");
    assert!(item.message.unwrap().contains("binder count mismatch"));
}

#[test]
fn postulates_do_not_compute() {
    let src = "postulate funext : Π (h k : A -> A) . (Π (x : A) . Id A (h x) (k x)) -> Id (A -> A) h k
               #norm [n] funext f f (λ x . refl) : Id (A -> A) f f";
    let item = last(src);
    assert_eq!(item.status, Status::Pass);
    assert!(item.message.unwrap().starts_with("funext"));
    assert_eq!(run(src)[run(src).len() - 2].kind, ItemKind::Postulate);
}

#[test]
fn duplicate_names_rejected() {
    let item = last("postulate A : Type 0");
    assert_eq!(item.status, Status::Fail);
    assert!(item.message.unwrap().contains("duplicate"));
}

#[test]
fn j_motive_may_be_a_constant() {
    assert_pass("#eq [j_const_motive] (J A C c a a refl) (c a) : C a a refl");
    assert_pass("def D : Π (x y : A) . Id A x y -> Type 0 := λ x y q . B x
                 #eq [j_defn_motive] (J A D (λ x . g x) a a refl) (g a) : B a");
}

#[test]
fn diagnostics_carry_spans() {
    let src = "def bad : A := fst a";
    let decls = parse_str(src).unwrap();
    let mut st = State::new();
    let _ = st.check_all(&parse_str(PRELUDE).unwrap());
    let item = st.check_declaration(&decls[0]);
    assert_eq!(&src[item.span.start..item.span.end], "fst a");
}

#[test]
fn diagnostics_restore_names() {
    let item = last("def bad : Π (x : A) . B x := λ y . b");
    let msg = item.message.unwrap();
    assert!(msg.contains("B y"), "{msg}");
}
