//! Surface syntax. Names are kept as written; scoping is resolved by the
//! kernel.

use crate::span::Span;

/// The name used for anonymous binders such as the one behind `A -> B`.
pub const ANON: &str = "_";

/// A surface term. Equality compares structure and ignores spans.
#[derive(Clone, Debug)]
pub struct Term {
    pub kind: TermKind,
    pub span: Span,
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Term {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermKind {
    /// Variable or constant reference.
    Var(String),
    Type(u32),
    Pi(String, Box<Term>, Box<Term>),
    Lam(String, Box<Term>),
    App(Box<Term>, Box<Term>),
    Sigma(String, Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Fst(Box<Term>),
    Snd(Box<Term>),
    Id(Box<Term>, Box<Term>, Box<Term>),
    Refl,
    /// `J A C c u v p` with motive `C` over `(x, y, p)` and base case `c`.
    J(Box<JArgs>),
    Unit,
    Tt,
    Nat,
    Zero,
    Succ(Box<Term>),
    /// `natrec P z s n`.
    NatRec(Box<NatRecArgs>),
    Let(String, Box<Term>, Box<Term>, Box<Term>),
    Ann(Box<Term>, Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JArgs {
    pub ty: Term,
    pub motive: Term,
    pub base: Term,
    pub lhs: Term,
    pub rhs: Term,
    pub path: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatRecArgs {
    pub motive: Term,
    pub zero: Term,
    pub succ: Term,
    pub target: Term,
}

impl Term {
    pub fn new(kind: TermKind, span: Span) -> Term {
        Term { kind, span }
    }

    /// A term with an empty span, for terms built programmatically.
    pub fn synth(kind: TermKind) -> Term {
        Term { kind, span: Span::default() }
    }

    pub fn var(name: &str) -> Term {
        Term::synth(TermKind::Var(name.to_string()))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::synth(TermKind::App(Box::new(f), Box::new(a)))
    }

    pub fn pi(name: &str, dom: Term, cod: Term) -> Term {
        Term::synth(TermKind::Pi(name.to_string(), Box::new(dom), Box::new(cod)))
    }

    pub fn lam(name: &str, body: Term) -> Term {
        Term::synth(TermKind::Lam(name.to_string(), Box::new(body)))
    }

    /// The value of a numeral `succ (... zero)`, if the term is one.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0;
        let mut t = self;
        loop {
            match &t.kind {
                TermKind::Zero => return Some(n),
                TermKind::Succ(inner) => {
                    n += 1;
                    t = inner;
                }
                _ => return None,
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: Span,
}

impl PartialEq for Decl {
    fn eq(&self, other: &Decl) -> bool {
        self.kind == other.kind
    }
}

impl Eq for Decl {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Def { name: String, ty: Term, body: Term },
    Postulate { name: String, ty: Term },
    /// `#eq [label] t u : T`
    Eq { label: Option<String>, lhs: Term, rhs: Term, ty: Term },
    /// `#fail-eq [label] t u : T`
    FailEq { label: Option<String>, lhs: Term, rhs: Term, ty: Term },
    /// `#norm [label] t : T`
    Norm { label: Option<String>, term: Term, ty: Term },
}

impl Decl {
    /// The declared name or directive label.
    pub fn name(&self) -> Option<&str> {
        match &self.kind {
            DeclKind::Def { name, .. } | DeclKind::Postulate { name, .. } => Some(name),
            DeclKind::Eq { label, .. }
            | DeclKind::FailEq { label, .. }
            | DeclKind::Norm { label, .. } => label.as_deref(),
        }
    }
}
