use pathcheck_kernel::{Checker, Ctx, State, Status};
use pathcheck_surface::{parse_str, parse_str_term};
use proptest::prelude::*;

const ARITH: &str = "
def add : Nat -> Nat -> Nat := λ m n . natrec (λ _ . Nat) n (λ _ r . succ r) m
def mul : Nat -> Nat -> Nat := λ m n . natrec (λ _ . Nat) zero (λ _ r . add n r) m
postulate A : Type 0
postulate B : A -> Type 0
";

fn base_state(extra: &str) -> State {
    let mut st = State::new();
    for item in st.check_all(&parse_str(&format!("{ARITH}\n{extra}")).unwrap()) {
        assert_eq!(item.status, Status::Pass, "{}: {:?}", item.name, item.message);
    }
    st
}

#[derive(Clone, Debug)]
enum Expr {
    Lit(u64),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn value(&self) -> u64 {
        match self {
            Expr::Lit(n) => *n,
            Expr::Add(a, b) => a.value() + b.value(),
            Expr::Mul(a, b) => a.value() * b.value(),
        }
    }

    fn source(&self) -> String {
        match self {
            Expr::Lit(n) => n.to_string(),
            Expr::Add(a, b) => format!("(add {} {})", a.source(), b.source()),
            Expr::Mul(a, b) => format!("(mul {} {})", a.source(), b.source()),
        }
    }
}

fn expr() -> impl Strategy<Value = Expr> {
    (0u64..4).prop_map(Expr::Lit).prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

#[derive(Clone, Debug)]
enum Ty {
    A,
    Unit,
    Nat,
    Arrow(Box<Ty>, Box<Ty>),
    Prod(Box<Ty>, Box<Ty>),
}

impl Ty {
    fn source(&self) -> String {
        match self {
            Ty::A => "A".into(),
            Ty::Unit => "Unit".into(),
            Ty::Nat => "Nat".into(),
            Ty::Arrow(a, b) => format!("({} -> {})", a.source(), b.source()),
            Ty::Prod(a, b) => format!("({} × {})", a.source(), b.source()),
        }
    }

    /// Hand-written η-expansion of the term `x` at this type.
    fn eta(&self, x: &str, fresh: &mut usize) -> String {
        match self {
            Ty::A | Ty::Nat => x.to_string(),
            Ty::Unit => "tt".into(),
            Ty::Arrow(a, b) => {
                *fresh += 1;
                let y = format!("y{fresh}");
                let arg = a.eta(&y, fresh);
                format!("(λ {y} . {})", b.eta(&format!("({x} {arg})"), fresh))
            }
            Ty::Prod(a, b) => format!(
                "({}, {})",
                a.eta(&format!("(fst {x})"), fresh),
                b.eta(&format!("(snd {x})"), fresh)
            ),
        }
    }
}

fn ty() -> impl Strategy<Value = Ty> {
    prop_oneof![Just(Ty::A), Just(Ty::Unit), Just(Ty::Nat)].prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Ty::Arrow(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Ty::Prod(Box::new(a), Box::new(b))),
        ]
    })
}

fn eq_item(st: &mut State, lhs: &str, rhs: &str, ty: &str, directive: &str) -> Status {
    let src = format!("{directive} ({lhs}) ({rhs}) : {ty}");
    let d = parse_str(&src).unwrap();
    let item = st.check_declaration(&d[0]);
    item.status
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn arithmetic_matches_oracle(e in expr()) {
        let mut st = base_state("");
        let n = e.value();
        prop_assert_eq!(eq_item(&mut st, &e.source(), &n.to_string(), "Nat", "#eq"), Status::Pass);
        prop_assert_eq!(eq_item(&mut st, &e.source(), &(n + 1).to_string(), "Nat", "#fail-eq"), Status::Pass);
    }

    #[test]
    fn normalization_is_idempotent(e in expr(), t in ty()) {
        let st = base_state(&format!("postulate v : {}", t.source()));
        let checker = Checker::new(&st.globals);
        let ctx = Ctx::new();
        for (term, tysrc) in [(e.source(), "Nat".to_string()), ("v".to_string(), t.source())] {
            let (_, tyv) = st.elab_type(&parse_str_term(&tysrc).unwrap()).unwrap();
            let core = st.elab_term(&parse_str_term(&term).unwrap(), &tyv).unwrap();
            let nf = checker.normalize(&ctx, &core, &tyv);
            let nf2 = checker.normalize(&ctx, &nf, &tyv);
            prop_assert_eq!(&nf, &nf2);
            prop_assert!(checker.check(&ctx, &nf, &tyv).is_ok());
        }
    }

    #[test]
    fn eta_expansion_is_convertible(t in ty()) {
        let mut st = base_state(&format!("postulate v : {}", t.source()));
        let expanded = t.eta("v", &mut 0);
        prop_assert_eq!(eq_item(&mut st, &expanded, "v", &t.source(), "#eq"), Status::Pass);
    }

    #[test]
    fn conversion_is_symmetric(a in expr(), b in expr()) {
        let mut st = base_state("");
        let ab = eq_item(&mut st, &a.source(), &b.source(), "Nat", "#eq");
        let ba = eq_item(&mut st, &b.source(), &a.source(), "Nat", "#eq");
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab == Status::Pass, a.value() == b.value());
    }

    #[test]
    fn conversion_is_a_congruence(a in expr(), b in expr()) {
        // f t ≡ f t' whenever t ≡ t', for a neutral head f.
        let mut st = base_state("postulate h : Nat -> A");
        let same = a.value() == b.value();
        let status = eq_item(&mut st, &format!("h {}", a.source()), &format!("h {}", b.source()), "A", "#eq");
        prop_assert_eq!(status == Status::Pass, same);
    }
}

#[test]
fn natrec_three_steps() {
    let mut st = base_state("");
    assert_eq!(
        eq_item(&mut st, "natrec (λ _ . Nat) 0 (λ _ r . succ r) 3", "3", "Nat", "#eq"),
        Status::Pass
    );
}

#[test]
fn dependent_pair_eta_with_neutral_family() {
    let mut st = base_state("postulate q : Σ (x : A) . B x -> Unit");
    assert_eq!(
        eq_item(&mut st, "(fst q, λ z . tt)", "q", "Σ (x : A) . B x -> Unit", "#eq"),
        Status::Pass
    );
}
