//! Pretty-printing that re-parses to the same structure.

use crate::syntax::{Decl, DeclKind, Term, TermKind, ANON};

const TERM: u8 = 0;
const PROD: u8 = 1;
const APP: u8 = 2;
const ATOM: u8 = 3;

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(&mut out, t, TERM);
    out
}

pub fn print_decl(d: &Decl) -> String {
    let mut out = String::new();
    let label = |out: &mut String, l: &Option<String>| {
        if let Some(l) = l {
            out.push_str(" [");
            out.push_str(l);
            out.push(']');
        }
    };
    match &d.kind {
        DeclKind::Def { name, ty, body } => {
            out.push_str("def ");
            out.push_str(name);
            out.push_str(" : ");
            write_term(&mut out, ty, TERM);
            out.push_str(" := ");
            write_term(&mut out, body, TERM);
        }
        DeclKind::Postulate { name, ty } => {
            out.push_str("postulate ");
            out.push_str(name);
            out.push_str(" : ");
            write_term(&mut out, ty, TERM);
        }
        DeclKind::Eq { label: l, lhs, rhs, ty } | DeclKind::FailEq { label: l, lhs, rhs, ty } => {
            out.push_str(if matches!(d.kind, DeclKind::Eq { .. }) { "#eq" } else { "#fail-eq" });
            label(&mut out, l);
            out.push(' ');
            write_term(&mut out, lhs, ATOM);
            out.push(' ');
            write_term(&mut out, rhs, ATOM);
            out.push_str(" : ");
            write_term(&mut out, ty, TERM);
        }
        DeclKind::Norm { label: l, term, ty } => {
            out.push_str("#norm");
            label(&mut out, l);
            out.push(' ');
            write_term(&mut out, term, TERM);
            out.push_str(" : ");
            write_term(&mut out, ty, TERM);
        }
    }
    out
}

pub fn print_file(decls: &[Decl]) -> String {
    let mut out = String::new();
    for d in decls {
        out.push_str(&print_decl(d));
        out.push('\n');
    }
    out
}

fn open(out: &mut String, wrap: bool) {
    if wrap {
        out.push('(');
    }
}

fn close(out: &mut String, wrap: bool) {
    if wrap {
        out.push(')');
    }
}

fn write_term(out: &mut String, t: &Term, prec: u8) {
    if let Some(n) = t.as_numeral() {
        out.push_str(&n.to_string());
        return;
    }
    match &t.kind {
        TermKind::Var(x) => out.push_str(x),
        TermKind::Type(i) => {
            out.push_str("Type ");
            out.push_str(&i.to_string());
        }
        TermKind::Unit => out.push_str("Unit"),
        TermKind::Tt => out.push_str("tt"),
        TermKind::Nat => out.push_str("Nat"),
        TermKind::Zero => out.push_str("zero"),
        TermKind::Refl => out.push_str("refl"),
        TermKind::Lam(..) => {
            let wrap = prec > TERM;
            open(out, wrap);
            out.push('λ');
            let mut body = t;
            while let TermKind::Lam(x, b) = &body.kind {
                out.push(' ');
                out.push_str(x);
                body = b;
            }
            out.push_str(" . ");
            write_term(out, body, TERM);
            close(out, wrap);
        }
        TermKind::Pi(x, dom, cod) if x == ANON => {
            let wrap = prec > TERM;
            open(out, wrap);
            write_term(out, dom, PROD);
            out.push_str(" -> ");
            write_term(out, cod, TERM);
            close(out, wrap);
        }
        TermKind::Pi(x, dom, cod) | TermKind::Sigma(x, dom, cod) if x != ANON => {
            let wrap = prec > TERM;
            open(out, wrap);
            out.push(if matches!(t.kind, TermKind::Pi(..)) { 'Π' } else { 'Σ' });
            out.push_str(" (");
            out.push_str(x);
            out.push_str(" : ");
            write_term(out, dom, TERM);
            out.push_str(") . ");
            write_term(out, cod, TERM);
            close(out, wrap);
        }
        TermKind::Sigma(_, a, b) => {
            let wrap = prec > PROD;
            open(out, wrap);
            write_term(out, a, APP);
            out.push_str(" × ");
            write_term(out, b, PROD);
            close(out, wrap);
        }
        TermKind::Pi(..) => unreachable!(),
        TermKind::Let(x, ty, v, b) => {
            let wrap = prec > TERM;
            open(out, wrap);
            out.push_str("let ");
            out.push_str(x);
            out.push_str(" : ");
            write_term(out, ty, TERM);
            out.push_str(" := ");
            write_term(out, v, TERM);
            out.push_str(" in ");
            write_term(out, b, TERM);
            close(out, wrap);
        }
        TermKind::App(f, a) => {
            let wrap = prec > APP;
            open(out, wrap);
            write_term(out, f, APP);
            out.push(' ');
            write_term(out, a, ATOM);
            close(out, wrap);
        }
        TermKind::Fst(a) | TermKind::Snd(a) | TermKind::Succ(a) => {
            let wrap = prec > APP;
            open(out, wrap);
            out.push_str(match t.kind {
                TermKind::Fst(_) => "fst ",
                TermKind::Snd(_) => "snd ",
                _ => "succ ",
            });
            write_term(out, a, ATOM);
            close(out, wrap);
        }
        TermKind::Id(a, x, y) => head_app(out, prec, "Id", &[a, x, y]),
        TermKind::J(j) => head_app(
            out,
            prec,
            "J",
            &[&j.ty, &j.motive, &j.base, &j.lhs, &j.rhs, &j.path],
        ),
        TermKind::NatRec(r) => {
            head_app(out, prec, "natrec", &[&r.motive, &r.zero, &r.succ, &r.target])
        }
        TermKind::Pair(a, b) => {
            out.push('(');
            write_term(out, a, TERM);
            let mut rest = b;
            while let TermKind::Pair(x, y) = &rest.kind {
                out.push_str(", ");
                write_term(out, x, TERM);
                rest = y;
            }
            out.push_str(", ");
            write_term(out, rest, TERM);
            out.push(')');
        }
        TermKind::Ann(a, ty) => {
            out.push('(');
            write_term(out, a, TERM);
            out.push_str(" : ");
            write_term(out, ty, TERM);
            out.push(')');
        }
    }
}

fn head_app(out: &mut String, prec: u8, head: &str, args: &[&Term]) {
    let wrap = prec > APP;
    open(out, wrap);
    out.push_str(head);
    for a in args {
        out.push(' ');
        write_term(out, a, ATOM);
    }
    close(out, wrap);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{parse_str_term, parse_str};

    fn roundtrip(s: &str) {
        let t = parse_str_term(s).unwrap();
        let printed = print_term(&t);
        let again = parse_str_term(&printed).unwrap();
        assert_eq!(t, again, "printed as {printed}");
    }

    #[test]
    fn roundtrips() {
        for s in [
            "A -> B -> C",
            "(A -> B) -> C",
            "A × B × C -> D",
            "(A -> B) × C",
            "f (λ x . x) (g y)",
            "Π (x : A) . Σ (y : B x) . Id (C x) (f y) y",
            "J A (λ x y p . Type 0) (λ x . refl) u v p",
            "natrec (λ n . Nat) 0 (λ n r . succ r) 3",
            "(a, b, c)",
            "((a, b), c)",
            "(x : A) y",
            "let x : A := a in f x",
            "fst (snd p) q",
            "A × (Σ (x : B) . C)",
        ] {
            roundtrip(s);
        }
    }

    #[test]
    fn decl_roundtrip() {
        let src = "def f : A -> A := λ x . x\n#eq [e] (f a) a : A\n#norm f a : A\npostulate z : Nat\n";
        let decls = parse_str(src).unwrap();
        let printed = print_file(&decls);
        assert_eq!(parse_str(&printed).unwrap(), decls);
    }
}
