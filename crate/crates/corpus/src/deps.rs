//! Constants referenced by surface declarations.

use pathcheck_surface::{Decl, DeclKind, Term, TermKind};
use std::collections::BTreeSet;

/// Names occurring free in `t`, in sorted order.
pub fn free_constants(t: &Term) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    collect(t, &mut Vec::new(), &mut out);
    out
}

/// Names a declaration refers to, excluding the name it declares.
pub fn decl_constants(d: &Decl) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut scope = Vec::new();
    match &d.kind {
        DeclKind::Def { ty, body, .. } => {
            collect(ty, &mut scope, &mut out);
            collect(body, &mut scope, &mut out);
        }
        DeclKind::Postulate { ty, .. } => collect(ty, &mut scope, &mut out),
        DeclKind::Eq { lhs, rhs, ty, .. } | DeclKind::FailEq { lhs, rhs, ty, .. } => {
            collect(lhs, &mut scope, &mut out);
            collect(rhs, &mut scope, &mut out);
            collect(ty, &mut scope, &mut out);
        }
        DeclKind::Norm { term, ty, .. } => {
            collect(term, &mut scope, &mut out);
            collect(ty, &mut scope, &mut out);
        }
    }
    out
}

fn under(x: &str, body: &Term, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
    scope.push(x.to_string());
    collect(body, scope, out);
    scope.pop();
}

fn collect(t: &Term, scope: &mut Vec<String>, out: &mut BTreeSet<String>) {
    match &t.kind {
        TermKind::Var(x) => {
            if !scope.iter().any(|y| y == x) {
                out.insert(x.clone());
            }
        }
        TermKind::Type(_)
        | TermKind::Refl
        | TermKind::Unit
        | TermKind::Tt
        | TermKind::Nat
        | TermKind::Zero => {}
        TermKind::Pi(x, a, b) | TermKind::Sigma(x, a, b) => {
            collect(a, scope, out);
            under(x, b, scope, out);
        }
        TermKind::Lam(x, b) => under(x, b, scope, out),
        TermKind::App(f, a) | TermKind::Pair(f, a) | TermKind::Ann(f, a) => {
            collect(f, scope, out);
            collect(a, scope, out);
        }
        TermKind::Fst(a) | TermKind::Snd(a) | TermKind::Succ(a) => collect(a, scope, out),
        TermKind::Id(a, x, y) => {
            collect(a, scope, out);
            collect(x, scope, out);
            collect(y, scope, out);
        }
        TermKind::J(j) => {
            for u in [&j.ty, &j.motive, &j.base, &j.lhs, &j.rhs, &j.path] {
                collect(u, scope, out);
            }
        }
        TermKind::NatRec(n) => {
            for u in [&n.motive, &n.zero, &n.succ, &n.target] {
                collect(u, scope, out);
            }
        }
        TermKind::Let(x, ty, v, b) => {
            collect(ty, scope, out);
            collect(v, scope, out);
            under(x, b, scope, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pathcheck_surface::{parse_str, parse_str_term};

    #[test]
    fn bound_names_are_not_constants() {
        let t = parse_str_term("λ x . f x (Π (y : A) . g y x)").unwrap();
        let names: Vec<_> = free_constants(&t).into_iter().collect();
        assert_eq!(names, ["A", "f", "g"]);
    }

    #[test]
    fn let_scopes_over_body_only() {
        let t = parse_str_term("let x : A := x in x").unwrap();
        let names: Vec<_> = free_constants(&t).into_iter().collect();
        assert_eq!(names, ["A", "x"]);
    }

    #[test]
    fn declarations_collect_type_and_body() {
        let d = &parse_str("def k : Π (A : Type 0) . A -> B := λ A a . c a").unwrap()[0];
        let names: Vec<_> = decl_constants(d).into_iter().collect();
        assert_eq!(names, ["B", "c"]);
    }
}
