//! Type-directed read-back of values into η-long β-normal terms.

use crate::eval::{apply, apply_elim, apply_many, force, fst, j_base_type, natrec_step_type, snd};
use crate::globals::Globals;
use crate::term::{JTerm, Name, NatRecTerm, Term};
use crate::value::{Elim, Head, Val, Value};
use std::rc::Rc;

/// Whether defined constants are unfolded during read-back.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Unfold {
    /// Keep constant heads; used for diagnostics.
    Never,
    /// Unfold everything; used for normal forms.
    Always,
}

pub struct Quoter<'g> {
    g: &'g Globals,
    types: Vec<Val>,
    unfold: Unfold,
}

fn hint(v: &Val, default: &str) -> Name {
    match &**v {
        Value::Lam(x, _) => x.clone(),
        _ => default.into(),
    }
}

impl<'g> Quoter<'g> {
    /// `types` are the types of the free variables, indexed by level.
    pub fn new(g: &'g Globals, types: Vec<Val>, unfold: Unfold) -> Quoter<'g> {
        Quoter { g, types, unfold }
    }

    fn fresh(&mut self, ty: Val) -> Val {
        let v = Value::var(self.types.len());
        self.types.push(ty);
        v
    }

    fn pop(&mut self, n: usize) {
        for _ in 0..n {
            self.types.pop();
        }
    }

    fn maybe_force(&self, v: &Val) -> Val {
        match self.unfold {
            Unfold::Always => force(self.g, v),
            Unfold::Never => v.clone(),
        }
    }

    /// Reads back `v` at type `ty`.
    pub fn quote(&mut self, ty: &Val, v: &Val) -> Term {
        let g = self.g;
        // Diagnostics print neutrals as written rather than η-expanded.
        if self.unfold == Unfold::Never && matches!(&**v, Value::Rigid(..) | Value::Flex(..)) {
            return self.quote_data(v);
        }
        let ty = force(g, ty);
        match &*ty {
            Value::Pi(x, dom, cod) => {
                let name = hint(v, x);
                let var = self.fresh(dom.clone());
                let body = self.quote(&cod.apply(g, var.clone()), &apply(g, v, var));
                self.pop(1);
                Term::Lam(name, Rc::new(body))
            }
            Value::Sigma(_, a, b) => {
                let p = self.maybe_force(v);
                let (x, y) = (fst(&p), snd(&p));
                let qx = self.quote(a, &x);
                let qy = self.quote(&b.apply(g, x), &y);
                Term::pair(qx, qy)
            }
            Value::Unit => Term::Tt,
            Value::Type(_) => self.quote_ty(v),
            _ => self.quote_data(v),
        }
    }

    fn quote_data(&mut self, v: &Val) -> Term {
        let v = self.maybe_force(v);
        match &*v {
            Value::Zero => Term::Zero,
            Value::Succ(n) => Term::Succ(Rc::new(self.quote(&Rc::new(Value::Nat), n))),
            Value::Refl => Term::Refl,
            Value::Tt => Term::Tt,
            Value::Rigid(h, sp) => self.quote_rigid(*h, sp),
            Value::Flex(c, sp) => self.quote_flex(*c, sp),
            _ => self.quote_ty(&v),
        }
    }

    /// Reads back a value that is itself a type.
    pub fn quote_ty(&mut self, v: &Val) -> Term {
        let g = self.g;
        let v = self.maybe_force(v);
        match &*v {
            Value::Type(i) => Term::Type(*i),
            Value::Unit => Term::Unit,
            Value::Nat => Term::Nat,
            Value::Pi(x, a, b) | Value::Sigma(x, a, b) => {
                let qa = self.quote_ty(a);
                let var = self.fresh(a.clone());
                let qb = self.quote_ty(&b.apply(g, var));
                self.pop(1);
                if matches!(&*v, Value::Pi(..)) {
                    Term::Pi(x.clone(), Rc::new(qa), Rc::new(qb))
                } else {
                    Term::Sigma(x.clone(), Rc::new(qa), Rc::new(qb))
                }
            }
            Value::Id(a, x, y) => {
                let qa = self.quote_ty(a);
                let qx = self.quote(a, x);
                let qy = self.quote(a, y);
                Term::id(qa, qx, qy)
            }
            Value::Rigid(h, sp) => self.quote_rigid(*h, sp),
            Value::Flex(c, sp) => self.quote_flex(*c, sp),
            other => panic!("read-back of a non-type as a type: {other:?}"),
        }
    }

    fn quote_rigid(&mut self, h: Head, sp: &[Elim]) -> Term {
        let (head, ty) = match h {
            Head::Var(l) => (Term::Var(self.types.len() - 1 - l), self.types[l].clone()),
            Head::Postulate(c) => (Term::Const(c), self.g.get(c).ty.clone()),
        };
        let cur = Rc::new(Value::Rigid(h, Vec::new()));
        self.quote_spine(head, ty, cur, sp)
    }

    fn quote_flex(&mut self, c: usize, sp: &[Elim]) -> Term {
        let ty = self.g.get(c).ty.clone();
        let cur = Rc::new(Value::Flex(c, Vec::new()));
        self.quote_spine(Term::Const(c), ty, cur, sp)
    }

    fn quote_spine(&mut self, head: Term, ty: Val, cur: Val, sp: &[Elim]) -> Term {
        let g = self.g;
        let mut t = head;
        let mut ty = ty;
        let mut cur = cur;
        for e in sp {
            match e {
                Elim::App(a) => {
                    let fty = force(g, &ty);
                    let Value::Pi(_, dom, cod) = &*fty else {
                        panic!("spine application at non-Π type")
                    };
                    t = Term::app(t, self.quote(dom, a));
                    ty = cod.apply(g, a.clone());
                }
                Elim::Fst => {
                    let pty = force(g, &ty);
                    let Value::Sigma(_, a, _) = &*pty else { panic!("fst at non-Σ type") };
                    t = Term::Fst(Rc::new(t));
                    ty = a.clone();
                }
                Elim::Snd => {
                    let pty = force(g, &ty);
                    let Value::Sigma(_, _, b) = &*pty else { panic!("snd at non-Σ type") };
                    t = Term::Snd(Rc::new(t));
                    ty = b.apply(g, fst(&cur));
                }
                Elim::J(f) => {
                    let motive = self.quote_j_motive(&f.ty, &f.motive);
                    let base_ty = j_base_type(g, &f.ty, &f.motive);
                    let jt = JTerm {
                        ty: self.quote_ty(&f.ty),
                        motive,
                        base: self.quote(&base_ty, &f.base),
                        lhs: self.quote(&f.ty, &f.lhs),
                        rhs: self.quote(&f.ty, &f.rhs),
                        path: t,
                    };
                    t = Term::J(Rc::new(jt));
                    ty = apply_many(g, &f.motive, &[f.lhs.clone(), f.rhs.clone(), cur.clone()]);
                }
                Elim::NatRec(f) => {
                    let motive = self.quote_nat_motive(&f.motive);
                    let zero_ty = apply(g, &f.motive, Rc::new(Value::Zero));
                    let step_ty = natrec_step_type(g, &f.motive);
                    let rt = NatRecTerm {
                        motive,
                        zero: self.quote(&zero_ty, &f.zero),
                        succ: self.quote(&step_ty, &f.succ),
                        target: t,
                    };
                    t = Term::NatRec(Rc::new(rt));
                    ty = apply(g, &f.motive, cur.clone());
                }
            }
            cur = apply_elim(g, &cur, e);
        }
        t
    }

    fn quote_j_motive(&mut self, a: &Val, c: &Val) -> Term {
        let g = self.g;
        let nx = hint(c, "x");
        let x = self.fresh(a.clone());
        let cx = apply(g, c, x.clone());
        let ny = hint(&cx, "y");
        let y = self.fresh(a.clone());
        let cxy = apply(g, &cx, y.clone());
        let np = hint(&cxy, "p");
        let p = self.fresh(Rc::new(Value::Id(a.clone(), x, y)));
        let body = self.quote_ty(&apply(g, &cxy, p));
        self.pop(3);
        Term::Lam(nx, Rc::new(Term::Lam(ny, Rc::new(Term::Lam(np, Rc::new(body))))))
    }

    fn quote_nat_motive(&mut self, p: &Val) -> Term {
        let g = self.g;
        let nn = hint(p, "n");
        let n = self.fresh(Rc::new(Value::Nat));
        let body = self.quote_ty(&apply(g, p, n));
        self.pop(1);
        Term::Lam(nn, Rc::new(body))
    }
}
