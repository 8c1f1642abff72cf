//! Type-directed conversion checking with η for Π, Σ and Unit.
//!
//! Defined constants are compared by head and spine first and unfolded only
//! when that comparison fails.

use crate::eval::{apply, apply_elim, apply_many, force, fst, j_base_type, natrec_step_type, snd, unfold_once};
use crate::globals::Globals;
use crate::value::{Elim, Head, Val, Value};
use std::rc::Rc;

pub struct Conv<'g> {
    g: &'g Globals,
    types: Vec<Val>,
}

impl<'g> Conv<'g> {
    pub fn new(g: &'g Globals, types: Vec<Val>) -> Conv<'g> {
        Conv { g, types }
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

    /// Are `a` and `b` equal as elements of `ty`?
    pub fn conv(&mut self, ty: &Val, a: &Val, b: &Val) -> bool {
        if Rc::ptr_eq(a, b) {
            return true;
        }
        let g = self.g;
        let ty = force(g, ty);
        match &*ty {
            Value::Pi(_, dom, cod) => {
                if self.same_flex(a, b) {
                    return true;
                }
                let (a, b) = (force(g, a), force(g, b));
                let x = self.fresh(dom.clone());
                let r = self.conv(&cod.apply(g, x.clone()), &apply(g, &a, x.clone()), &apply(g, &b, x));
                self.pop(1);
                r
            }
            Value::Sigma(_, dom, cod) => {
                if self.same_flex(a, b) {
                    return true;
                }
                let (a, b) = (force(g, a), force(g, b));
                let fa = fst(&a);
                self.conv(dom, &fa, &fst(&b)) && self.conv(&cod.apply(g, fa), &snd(&a), &snd(&b))
            }
            Value::Unit => true,
            _ => self.conv_struct(a, b),
        }
    }

    /// Are `a` and `b` equal as types?
    pub fn conv_ty(&mut self, a: &Val, b: &Val) -> bool {
        self.conv_struct(a, b)
    }

    /// Both sides are the same defined constant with convertible spines.
    fn same_flex(&mut self, a: &Val, b: &Val) -> bool {
        match (&**a, &**b) {
            (Value::Flex(c1, s1), Value::Flex(c2, s2)) if c1 == c2 && s1.len() == s2.len() => {
                let ty = self.g.get(*c1).ty.clone();
                let cur = Rc::new(Value::Flex(*c1, Vec::new()));
                self.conv_spines(ty, cur, s1, s2)
            }
            _ => false,
        }
    }

    /// Structural comparison at a type without η (data, types, neutrals).
    fn conv_struct(&mut self, a: &Val, b: &Val) -> bool {
        if Rc::ptr_eq(a, b) {
            return true;
        }
        let g = self.g;
        match (&**a, &**b) {
            (Value::Flex(c1, _), Value::Flex(c2, _)) => {
                if self.same_flex(a, b) {
                    return true;
                }
                if c1 > c2 {
                    self.conv_struct(&unfold_once(g, a).unwrap(), b)
                } else if c2 > c1 {
                    self.conv_struct(a, &unfold_once(g, b).unwrap())
                } else {
                    self.conv_struct(&unfold_once(g, a).unwrap(), &unfold_once(g, b).unwrap())
                }
            }
            (Value::Flex(..), _) => self.conv_struct(&unfold_once(g, a).unwrap(), b),
            (_, Value::Flex(..)) => self.conv_struct(a, &unfold_once(g, b).unwrap()),
            (Value::Type(i), Value::Type(j)) => i == j,
            (Value::Pi(_, a1, b1), Value::Pi(_, a2, b2))
            | (Value::Sigma(_, a1, b1), Value::Sigma(_, a2, b2)) => {
                if !self.conv_struct(a1, a2) {
                    return false;
                }
                let x = self.fresh(a1.clone());
                let r = self.conv_struct(&b1.apply(g, x.clone()), &b2.apply(g, x));
                self.pop(1);
                r
            }
            (Value::Id(t1, x1, y1), Value::Id(t2, x2, y2)) => {
                self.conv_struct(t1, t2) && self.conv(t1, x1, x2) && self.conv(t1, y1, y2)
            }
            (Value::Unit, Value::Unit)
            | (Value::Tt, Value::Tt)
            | (Value::Nat, Value::Nat)
            | (Value::Zero, Value::Zero)
            | (Value::Refl, Value::Refl) => true,
            (Value::Succ(m), Value::Succ(n)) => self.conv_struct(m, n),
            (Value::Rigid(h1, s1), Value::Rigid(h2, s2)) => {
                if h1 != h2 || s1.len() != s2.len() {
                    return false;
                }
                let ty = match h1 {
                    Head::Var(l) => self.types[*l].clone(),
                    Head::Postulate(c) => g.get(*c).ty.clone(),
                };
                let cur = Rc::new(Value::Rigid(*h1, Vec::new()));
                self.conv_spines(ty, cur, s1, s2)
            }
            _ => false,
        }
    }

    fn conv_spines(&mut self, mut ty: Val, mut cur: Val, s1: &[Elim], s2: &[Elim]) -> bool {
        let g = self.g;
        for (e1, e2) in s1.iter().zip(s2) {
            let ok = match (e1, e2) {
                (Elim::App(x1), Elim::App(x2)) => {
                    let fty = force(g, &ty);
                    let Value::Pi(_, dom, cod) = &*fty else { return false };
                    let ok = self.conv(dom, x1, x2);
                    ty = cod.apply(g, x1.clone());
                    ok
                }
                (Elim::Fst, Elim::Fst) => {
                    let pty = force(g, &ty);
                    let Value::Sigma(_, a, _) = &*pty else { return false };
                    ty = a.clone();
                    true
                }
                (Elim::Snd, Elim::Snd) => {
                    let pty = force(g, &ty);
                    let Value::Sigma(_, _, b) = &*pty else { return false };
                    ty = b.apply(g, fst(&cur));
                    true
                }
                (Elim::J(f1), Elim::J(f2)) => {
                    let ok = self.conv_struct(&f1.ty, &f2.ty)
                        && self.conv_j_motive(&f1.ty, &f1.motive, &f2.motive)
                        && self.conv(&j_base_type(g, &f1.ty, &f1.motive), &f1.base, &f2.base)
                        && self.conv(&f1.ty, &f1.lhs, &f2.lhs)
                        && self.conv(&f1.ty, &f1.rhs, &f2.rhs);
                    ty = apply_many(g, &f1.motive, &[f1.lhs.clone(), f1.rhs.clone(), cur.clone()]);
                    ok
                }
                (Elim::NatRec(f1), Elim::NatRec(f2)) => {
                    let ok = self.conv_nat_motive(&f1.motive, &f2.motive)
                        && self.conv(&apply(g, &f1.motive, Rc::new(Value::Zero)), &f1.zero, &f2.zero)
                        && self.conv(&natrec_step_type(g, &f1.motive), &f1.succ, &f2.succ);
                    ty = apply(g, &f1.motive, cur.clone());
                    ok
                }
                _ => false,
            };
            if !ok {
                return false;
            }
            cur = apply_elim(g, &cur, e1);
        }
        true
    }

    fn conv_j_motive(&mut self, a: &Val, c1: &Val, c2: &Val) -> bool {
        let g = self.g;
        let x = self.fresh(a.clone());
        let y = self.fresh(a.clone());
        let p = self.fresh(Rc::new(Value::Id(a.clone(), x.clone(), y.clone())));
        let args = [x, y, p];
        let r = self.conv_struct(&apply_many(g, c1, &args), &apply_many(g, c2, &args));
        self.pop(3);
        r
    }

    fn conv_nat_motive(&mut self, p1: &Val, p2: &Val) -> bool {
        let g = self.g;
        let n = self.fresh(Rc::new(Value::Nat));
        let r = self.conv_struct(&apply(g, p1, n.clone()), &apply(g, p2, n));
        self.pop(1);
        r
    }
}
