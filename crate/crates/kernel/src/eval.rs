//! Evaluation of core terms into values.

use crate::globals::Globals;
use crate::term::{Name, Term};
use crate::value::{Closure, Elim, Env, Head, JFrame, NatRecFrame, Val, Value};
use std::rc::Rc;

impl Closure {
    pub fn apply(&self, g: &Globals, arg: Val) -> Val {
        eval(g, &self.env.push(arg), &self.body)
    }
}

pub fn eval(g: &Globals, env: &Env, t: &Term) -> Val {
    let ev = |t: &Term| eval(g, env, t);
    let close = |b: &Rc<Term>| Closure { env: env.clone(), body: b.clone() };
    match t {
        Term::Var(i) => env.lookup(*i).clone(),
        Term::Const(c) => {
            if g.get(*c).def.is_some() {
                Rc::new(Value::Flex(*c, Vec::new()))
            } else {
                Rc::new(Value::Rigid(Head::Postulate(*c), Vec::new()))
            }
        }
        Term::Type(i) => Rc::new(Value::Type(*i)),
        Term::Pi(x, a, b) => Rc::new(Value::Pi(x.clone(), ev(a), close(b))),
        Term::Lam(x, b) => Rc::new(Value::Lam(x.clone(), close(b))),
        Term::App(f, a) => apply(g, &ev(f), ev(a)),
        Term::Sigma(x, a, b) => Rc::new(Value::Sigma(x.clone(), ev(a), close(b))),
        Term::Pair(a, b) => Rc::new(Value::Pair(ev(a), ev(b))),
        Term::Fst(p) => fst(&ev(p)),
        Term::Snd(p) => snd(&ev(p)),
        Term::Id(a, x, y) => Rc::new(Value::Id(ev(a), ev(x), ev(y))),
        Term::Refl => Rc::new(Value::Refl),
        Term::J(j) => {
            let frame = JFrame {
                ty: ev(&j.ty),
                motive: ev(&j.motive),
                base: ev(&j.base),
                lhs: ev(&j.lhs),
                rhs: ev(&j.rhs),
            };
            elim_j(g, &ev(&j.path), Rc::new(frame))
        }
        Term::Unit => Rc::new(Value::Unit),
        Term::Tt => Rc::new(Value::Tt),
        Term::Nat => Rc::new(Value::Nat),
        Term::Zero => Rc::new(Value::Zero),
        Term::Succ(n) => Rc::new(Value::Succ(ev(n))),
        Term::NatRec(r) => {
            let frame = NatRecFrame { motive: ev(&r.motive), zero: ev(&r.zero), succ: ev(&r.succ) };
            natrec(g, &ev(&r.target), Rc::new(frame))
        }
        Term::Let(_, _, v, b) => eval(g, &env.push(ev(v)), b),
        Term::Ann(t, _) | Term::Loc(_, t) => ev(t),
    }
}

fn push(v: &Val, e: Elim) -> Option<Val> {
    match &**v {
        Value::Rigid(h, sp) => {
            let mut sp = sp.clone();
            sp.push(e);
            Some(Rc::new(Value::Rigid(*h, sp)))
        }
        Value::Flex(c, sp) => {
            let mut sp = sp.clone();
            sp.push(e);
            Some(Rc::new(Value::Flex(*c, sp)))
        }
        _ => None,
    }
}

pub fn apply(g: &Globals, f: &Val, a: Val) -> Val {
    match &**f {
        Value::Lam(_, c) => c.apply(g, a),
        _ => push(f, Elim::App(a)).unwrap_or_else(|| panic!("applied a non-function value {f:?}")),
    }
}

pub fn apply_many(g: &Globals, f: &Val, args: &[Val]) -> Val {
    args.iter().fold(f.clone(), |f, a| apply(g, &f, a.clone()))
}

pub fn fst(p: &Val) -> Val {
    match &**p {
        Value::Pair(a, _) => a.clone(),
        _ => push(p, Elim::Fst).unwrap_or_else(|| panic!("projected a non-pair value {p:?}")),
    }
}

pub fn snd(p: &Val) -> Val {
    match &**p {
        Value::Pair(_, b) => b.clone(),
        _ => push(p, Elim::Snd).unwrap_or_else(|| panic!("projected a non-pair value {p:?}")),
    }
}

pub fn elim_j(g: &Globals, p: &Val, frame: Rc<JFrame>) -> Val {
    match &**p {
        Value::Refl => apply(g, &frame.base, frame.lhs.clone()),
        _ => push(p, Elim::J(frame)).unwrap_or_else(|| panic!("J on a non-identification {p:?}")),
    }
}

pub fn natrec(g: &Globals, n: &Val, frame: Rc<NatRecFrame>) -> Val {
    match &**n {
        Value::Zero => frame.zero.clone(),
        Value::Succ(m) => {
            let rec = natrec(g, m, frame.clone());
            apply(g, &apply(g, &frame.succ, m.clone()), rec)
        }
        _ => push(n, Elim::NatRec(frame)).unwrap_or_else(|| panic!("natrec on a non-number {n:?}")),
    }
}

pub fn apply_elim(g: &Globals, v: &Val, e: &Elim) -> Val {
    match e {
        Elim::App(a) => apply(g, v, a.clone()),
        Elim::Fst => fst(v),
        Elim::Snd => snd(v),
        Elim::J(f) => elim_j(g, v, f.clone()),
        Elim::NatRec(f) => natrec(g, v, f.clone()),
    }
}

/// Unfolds defined constants at the head until the value is not `Flex`.
pub fn force(g: &Globals, v: &Val) -> Val {
    let mut v = v.clone();
    while let Value::Flex(c, sp) = &*v {
        let def = g.get(*c).def.as_ref().expect("flex head without definition");
        let mut w = def.value.clone();
        for e in sp {
            w = apply_elim(g, &w, e);
        }
        v = w;
    }
    v
}

/// Unfolds a single `Flex` head by one definition step.
pub fn unfold_once(g: &Globals, v: &Val) -> Option<Val> {
    match &**v {
        Value::Flex(c, sp) => {
            let def = g.get(*c).def.as_ref()?;
            let mut w = def.value.clone();
            for e in sp {
                w = apply_elim(g, &w, e);
            }
            Some(w)
        }
        _ => None,
    }
}

/// `Π (x : A) . C x x refl`, the type of the base case of `J`.
pub fn j_base_type(g: &Globals, ty: &Val, motive: &Val) -> Val {
    let env = Env::new().push(ty.clone()).push(motive.clone());
    let body = Term::apps(Term::Var(1), [Term::Var(0), Term::Var(0), Term::Refl]);
    eval(g, &env, &Term::pi("x", Term::Var(1), body))
}

/// `Π (n : Nat) . P n -> P (succ n)`, the type of the step of `natrec`.
pub fn natrec_step_type(g: &Globals, motive: &Val) -> Val {
    let env = Env::new().push(motive.clone());
    let ty = Term::pi(
        "n",
        Term::Nat,
        Term::pi(
            "_",
            Term::app(Term::Var(1), Term::Var(0)),
            Term::app(Term::Var(2), Term::Succ(Rc::new(Term::Var(1)))),
        ),
    );
    eval(g, &env, &ty)
}

/// Binder name hint carried by a λ value, if any.
pub fn lam_name(v: &Val) -> Option<Name> {
    match &**v {
        Value::Lam(x, _) => Some(x.clone()),
        _ => None,
    }
}
