//! Name resolution from surface syntax to core terms.

use crate::check::TypeError;
use crate::globals::Globals;
use crate::term::{JTerm, Name, NatRecTerm, Term};
use pathcheck_surface::{Term as STerm, TermKind, ANON};
use std::rc::Rc;

/// Resolves `t` with `locals` in scope (outermost first). Every node is
/// wrapped in a `Loc` carrying its source span.
pub fn resolve(g: &Globals, locals: &mut Vec<Name>, t: &STerm) -> Result<Term, TypeError> {
    let r = |locals: &mut Vec<Name>, t: &STerm| resolve(g, locals, t).map(Rc::new);
    let under = |locals: &mut Vec<Name>, x: &str, t: &STerm| {
        locals.push(x.into());
        let out = resolve(g, locals, t).map(Rc::new);
        locals.pop();
        out
    };
    let core = match &t.kind {
        TermKind::Var(x) => {
            if x == ANON {
                return Err(TypeError::new("`_` cannot be referenced").at(t.span));
            }
            if let Some(pos) = locals.iter().rposition(|n| &**n == x.as_str()) {
                Term::Var(locals.len() - 1 - pos)
            } else if let Some(c) = g.lookup(x) {
                Term::Const(c)
            } else {
                return Err(TypeError::new(format!("unbound constant `{x}`")).at(t.span));
            }
        }
        TermKind::Type(i) => Term::Type(*i),
        TermKind::Pi(x, a, b) => Term::Pi(x.as_str().into(), r(locals, a)?, under(locals, x, b)?),
        TermKind::Sigma(x, a, b) => {
            Term::Sigma(x.as_str().into(), r(locals, a)?, under(locals, x, b)?)
        }
        TermKind::Lam(x, b) => Term::Lam(x.as_str().into(), under(locals, x, b)?),
        TermKind::App(f, a) => Term::App(r(locals, f)?, r(locals, a)?),
        TermKind::Pair(a, b) => Term::Pair(r(locals, a)?, r(locals, b)?),
        TermKind::Fst(a) => Term::Fst(r(locals, a)?),
        TermKind::Snd(a) => Term::Snd(r(locals, a)?),
        TermKind::Id(a, x, y) => Term::Id(r(locals, a)?, r(locals, x)?, r(locals, y)?),
        TermKind::Refl => Term::Refl,
        TermKind::J(j) => Term::J(Rc::new(JTerm {
            ty: resolve(g, locals, &j.ty)?,
            motive: resolve(g, locals, &j.motive)?,
            base: resolve(g, locals, &j.base)?,
            lhs: resolve(g, locals, &j.lhs)?,
            rhs: resolve(g, locals, &j.rhs)?,
            path: resolve(g, locals, &j.path)?,
        })),
        TermKind::Unit => Term::Unit,
        TermKind::Tt => Term::Tt,
        TermKind::Nat => Term::Nat,
        TermKind::Zero => Term::Zero,
        TermKind::Succ(n) => Term::Succ(r(locals, n)?),
        TermKind::NatRec(n) => Term::NatRec(Rc::new(NatRecTerm {
            motive: resolve(g, locals, &n.motive)?,
            zero: resolve(g, locals, &n.zero)?,
            succ: resolve(g, locals, &n.succ)?,
            target: resolve(g, locals, &n.target)?,
        })),
        TermKind::Let(x, ty, v, b) => Term::Let(
            x.as_str().into(),
            r(locals, ty)?,
            r(locals, v)?,
            under(locals, x, b)?,
        ),
        TermKind::Ann(a, ty) => Term::Ann(r(locals, a)?, r(locals, ty)?),
    };
    if t.span.is_empty() {
        Ok(core)
    } else {
        Ok(Term::Loc(t.span, Rc::new(core)))
    }
}
