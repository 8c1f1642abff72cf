//! Core syntax with de Bruijn indices.

use pathcheck_surface::Span;
use std::rc::Rc;

pub type Name = Rc<str>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// De Bruijn index; 0 is the innermost binder.
    Var(usize),
    /// Index into the global table.
    Const(usize),
    Type(u32),
    Pi(Name, Rc<Term>, Rc<Term>),
    Lam(Name, Rc<Term>),
    App(Rc<Term>, Rc<Term>),
    Sigma(Name, Rc<Term>, Rc<Term>),
    Pair(Rc<Term>, Rc<Term>),
    Fst(Rc<Term>),
    Snd(Rc<Term>),
    Id(Rc<Term>, Rc<Term>, Rc<Term>),
    Refl,
    J(Rc<JTerm>),
    Unit,
    Tt,
    Nat,
    Zero,
    Succ(Rc<Term>),
    NatRec(Rc<NatRecTerm>),
    Let(Name, Rc<Term>, Rc<Term>, Rc<Term>),
    Ann(Rc<Term>, Rc<Term>),
    /// Source position of the wrapped term. Ignored by evaluation.
    Loc(Span, Rc<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JTerm {
    pub ty: Term,
    pub motive: Term,
    pub base: Term,
    pub lhs: Term,
    pub rhs: Term,
    pub path: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatRecTerm {
    pub motive: Term,
    pub zero: Term,
    pub succ: Term,
    pub target: Term,
}

impl Term {
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Rc::new(f), Rc::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    pub fn lam(x: &str, body: Term) -> Term {
        Term::Lam(x.into(), Rc::new(body))
    }

    pub fn pi(x: &str, dom: Term, cod: Term) -> Term {
        Term::Pi(x.into(), Rc::new(dom), Rc::new(cod))
    }

    pub fn sigma(x: &str, dom: Term, cod: Term) -> Term {
        Term::Sigma(x.into(), Rc::new(dom), Rc::new(cod))
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Rc::new(a), Rc::new(b))
    }

    pub fn id(a: Term, x: Term, y: Term) -> Term {
        Term::Id(Rc::new(a), Rc::new(x), Rc::new(y))
    }

    pub fn numeral(n: u64) -> Term {
        (0..n).fold(Term::Zero, |t, _| Term::Succ(Rc::new(t)))
    }

    /// Strips source positions.
    pub fn unloc(&self) -> &Term {
        let mut t = self;
        while let Term::Loc(_, inner) = t {
            t = inner;
        }
        t
    }

    /// True if every variable index is bound within `depth` enclosing binders.
    pub fn is_well_scoped(&self, depth: usize) -> bool {
        self.max_free(0).is_none_or(|m| m < depth)
    }

    /// Largest free index relative to `under` binders, if any.
    fn max_free(&self, under: usize) -> Option<usize> {
        let m = |t: &Term, k: usize| t.max_free(under + k);
        let opt_max = |xs: &[Option<usize>]| xs.iter().flatten().copied().max();
        match self {
            Term::Var(i) => i.checked_sub(under),
            Term::Const(_)
            | Term::Type(_)
            | Term::Refl
            | Term::Unit
            | Term::Tt
            | Term::Nat
            | Term::Zero => None,
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) => opt_max(&[m(a, 0), m(b, 1)]),
            Term::Lam(_, b) => m(b, 1),
            Term::App(a, b) | Term::Pair(a, b) | Term::Ann(a, b) => opt_max(&[m(a, 0), m(b, 0)]),
            Term::Fst(a) | Term::Snd(a) | Term::Succ(a) | Term::Loc(_, a) => m(a, 0),
            Term::Id(a, x, y) => opt_max(&[m(a, 0), m(x, 0), m(y, 0)]),
            Term::J(j) => opt_max(&[
                m(&j.ty, 0),
                m(&j.motive, 0),
                m(&j.base, 0),
                m(&j.lhs, 0),
                m(&j.rhs, 0),
                m(&j.path, 0),
            ]),
            Term::NatRec(r) => opt_max(&[
                m(&r.motive, 0),
                m(&r.zero, 0),
                m(&r.succ, 0),
                m(&r.target, 0),
            ]),
            Term::Let(_, t, v, b) => opt_max(&[m(t, 0), m(v, 0), m(b, 1)]),
        }
    }

    /// True if index `i` occurs free.
    pub fn mentions(&self, i: usize) -> bool {
        match self {
            Term::Var(j) => *j == i,
            Term::Const(_)
            | Term::Type(_)
            | Term::Refl
            | Term::Unit
            | Term::Tt
            | Term::Nat
            | Term::Zero => false,
            Term::Pi(_, a, b) | Term::Sigma(_, a, b) => a.mentions(i) || b.mentions(i + 1),
            Term::Lam(_, b) => b.mentions(i + 1),
            Term::App(a, b) | Term::Pair(a, b) | Term::Ann(a, b) => a.mentions(i) || b.mentions(i),
            Term::Fst(a) | Term::Snd(a) | Term::Succ(a) | Term::Loc(_, a) => a.mentions(i),
            Term::Id(a, x, y) => a.mentions(i) || x.mentions(i) || y.mentions(i),
            Term::J(j) => [&j.ty, &j.motive, &j.base, &j.lhs, &j.rhs, &j.path]
                .iter()
                .any(|t| t.mentions(i)),
            Term::NatRec(r) => [&r.motive, &r.zero, &r.succ, &r.target]
                .iter()
                .any(|t| t.mentions(i)),
            Term::Let(_, t, v, b) => t.mentions(i) || v.mentions(i) || b.mentions(i + 1),
        }
    }

    /// Removes every `Loc` wrapper.
    pub fn erase_locs(&self) -> Term {
        let r = |t: &Rc<Term>| Rc::new(t.erase_locs());
        match self {
            Term::Loc(_, t) => t.erase_locs(),
            Term::Var(_)
            | Term::Const(_)
            | Term::Type(_)
            | Term::Refl
            | Term::Unit
            | Term::Tt
            | Term::Nat
            | Term::Zero => self.clone(),
            Term::Pi(x, a, b) => Term::Pi(x.clone(), r(a), r(b)),
            Term::Sigma(x, a, b) => Term::Sigma(x.clone(), r(a), r(b)),
            Term::Lam(x, b) => Term::Lam(x.clone(), r(b)),
            Term::App(a, b) => Term::App(r(a), r(b)),
            Term::Pair(a, b) => Term::Pair(r(a), r(b)),
            Term::Ann(a, b) => Term::Ann(r(a), r(b)),
            Term::Fst(a) => Term::Fst(r(a)),
            Term::Snd(a) => Term::Snd(r(a)),
            Term::Succ(a) => Term::Succ(r(a)),
            Term::Id(a, x, y) => Term::Id(r(a), r(x), r(y)),
            Term::J(j) => Term::J(Rc::new(JTerm {
                ty: j.ty.erase_locs(),
                motive: j.motive.erase_locs(),
                base: j.base.erase_locs(),
                lhs: j.lhs.erase_locs(),
                rhs: j.rhs.erase_locs(),
                path: j.path.erase_locs(),
            })),
            Term::NatRec(n) => Term::NatRec(Rc::new(NatRecTerm {
                motive: n.motive.erase_locs(),
                zero: n.zero.erase_locs(),
                succ: n.succ.erase_locs(),
                target: n.target.erase_locs(),
            })),
            Term::Let(x, t, v, b) => Term::Let(x.clone(), r(t), r(v), r(b)),
        }
    }

    /// Number of nodes, for size diagnostics.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_)
            | Term::Const(_)
            | Term::Type(_)
            | Term::Refl
            | Term::Unit
            | Term::Tt
            | Term::Nat
            | Term::Zero => 1,
            Term::Pi(_, a, b)
            | Term::Sigma(_, a, b)
            | Term::App(a, b)
            | Term::Pair(a, b)
            | Term::Ann(a, b) => 1 + a.size() + b.size(),
            Term::Lam(_, a) | Term::Fst(a) | Term::Snd(a) | Term::Succ(a) | Term::Loc(_, a) => {
                1 + a.size()
            }
            Term::Id(a, x, y) => 1 + a.size() + x.size() + y.size(),
            Term::J(j) => {
                1 + j.ty.size()
                    + j.motive.size()
                    + j.base.size()
                    + j.lhs.size()
                    + j.rhs.size()
                    + j.path.size()
            }
            Term::NatRec(r) => {
                1 + r.motive.size() + r.zero.size() + r.succ.size() + r.target.size()
            }
            Term::Let(_, t, v, b) => 1 + t.size() + v.size() + b.size(),
        }
    }
}
