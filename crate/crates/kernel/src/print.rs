//! Conversion of core terms back to named surface syntax.

use crate::globals::Globals;
use crate::term::{Name, Term};
use pathcheck_surface::{print_term, JArgs, NatRecArgs, Term as STerm, TermKind, ANON};

/// Renders `t` under the free variable names `names` (outermost first).
pub fn render(g: &Globals, names: &[Name], t: &Term) -> String {
    print_term(&to_surface(g, names, t))
}

pub fn to_surface(g: &Globals, names: &[Name], t: &Term) -> STerm {
    let mut scope: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    Namer { g }.go(&mut scope, t)
}

struct Namer<'g> {
    g: &'g Globals,
}

impl<'g> Namer<'g> {
    /// Picks a printable binder name that cannot capture existing references.
    fn pick(&self, scope: &[String], hint: &str, used: bool, arrow_ok: bool) -> String {
        if !used && arrow_ok {
            return ANON.to_string();
        }
        let base = if hint == ANON || hint.is_empty() { "x" } else { hint };
        if !used {
            return base.to_string();
        }
        let mut name = base.to_string();
        while scope.contains(&name) || self.g.lookup(&name).is_some() {
            name.push('\'');
        }
        name
    }

    fn bind(&self, scope: &mut Vec<String>, name: String, body: &Term) -> STerm {
        scope.push(name);
        let b = self.go(scope, body);
        scope.pop();
        b
    }

    fn go(&self, scope: &mut Vec<String>, t: &Term) -> STerm {
        let s = |k| STerm::synth(k);
        let bx = Box::new;
        match t {
            Term::Var(i) => {
                let name = scope
                    .len()
                    .checked_sub(i + 1)
                    .map(|l| scope[l].clone())
                    .unwrap_or_else(|| format!("#{i}"));
                s(TermKind::Var(name))
            }
            Term::Const(c) => s(TermKind::Var(self.g.get(*c).name.to_string())),
            Term::Type(i) => s(TermKind::Type(*i)),
            Term::Pi(x, a, b) | Term::Sigma(x, a, b) => {
                let da = self.go(scope, a);
                let name = self.pick(scope, x, b.mentions(0), true);
                let db = self.bind(scope, name.clone(), b);
                if matches!(t, Term::Pi(..)) {
                    s(TermKind::Pi(name, bx(da), bx(db)))
                } else {
                    s(TermKind::Sigma(name, bx(da), bx(db)))
                }
            }
            Term::Lam(x, b) => {
                let used = b.mentions(0);
                let name = if used { self.pick(scope, x, true, false) } else { ANON.to_string() };
                let db = self.bind(scope, name.clone(), b);
                s(TermKind::Lam(name, bx(db)))
            }
            Term::App(f, a) => s(TermKind::App(bx(self.go(scope, f)), bx(self.go(scope, a)))),
            Term::Pair(a, b) => s(TermKind::Pair(bx(self.go(scope, a)), bx(self.go(scope, b)))),
            Term::Fst(a) => s(TermKind::Fst(bx(self.go(scope, a)))),
            Term::Snd(a) => s(TermKind::Snd(bx(self.go(scope, a)))),
            Term::Succ(a) => s(TermKind::Succ(bx(self.go(scope, a)))),
            Term::Id(a, x, y) => s(TermKind::Id(
                bx(self.go(scope, a)),
                bx(self.go(scope, x)),
                bx(self.go(scope, y)),
            )),
            Term::Refl => s(TermKind::Refl),
            Term::Unit => s(TermKind::Unit),
            Term::Tt => s(TermKind::Tt),
            Term::Nat => s(TermKind::Nat),
            Term::Zero => s(TermKind::Zero),
            Term::J(j) => s(TermKind::J(Box::new(JArgs {
                ty: self.go(scope, &j.ty),
                motive: self.go(scope, &j.motive),
                base: self.go(scope, &j.base),
                lhs: self.go(scope, &j.lhs),
                rhs: self.go(scope, &j.rhs),
                path: self.go(scope, &j.path),
            }))),
            Term::NatRec(r) => s(TermKind::NatRec(Box::new(NatRecArgs {
                motive: self.go(scope, &r.motive),
                zero: self.go(scope, &r.zero),
                succ: self.go(scope, &r.succ),
                target: self.go(scope, &r.target),
            }))),
            Term::Let(x, ty, v, b) => {
                let dty = self.go(scope, ty);
                let dv = self.go(scope, v);
                let name = self.pick(scope, x, true, false);
                let db = self.bind(scope, name.clone(), b);
                s(TermKind::Let(name, bx(dty), bx(dv), bx(db)))
            }
            Term::Ann(a, ty) => s(TermKind::Ann(bx(self.go(scope, a)), bx(self.go(scope, ty)))),
            Term::Loc(_, a) => self.go(scope, a),
        }
    }
}
