//! Checking of top-level declarations.

use crate::check::{Checker, Ctx, TypeError};
use crate::eval::eval;
use crate::globals::{Definition, Global, Globals};
use crate::print::render;
use crate::resolve::resolve;
use crate::term::Term;
use crate::value::{Env, Val};
use pathcheck_surface::{Decl, DeclKind, Span};
use std::collections::HashSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ItemKind {
    Definition,
    Postulate,
    EqAssertion,
    FailAssertion,
    Norm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportItem {
    pub name: String,
    pub kind: ItemKind,
    pub status: Status,
    /// Error text on failure; the printed normal form for `#norm`.
    pub message: Option<String>,
    /// Span of the failure, or of the declaration.
    pub span: Span,
}

/// Checked prefix of a development.
#[derive(Clone, Debug, Default)]
pub struct State {
    pub globals: Globals,
    labels: HashSet<String>,
}

/// Longest rendering of a term inside a diagnostic.
const MAX_RENDER: usize = 600;

fn clip(mut s: String) -> String {
    if s.chars().count() > MAX_RENDER {
        s = s.chars().take(MAX_RENDER).collect();
        s.push_str(" …");
    }
    s
}

impl State {
    pub fn new() -> State {
        State::default()
    }

    fn resolve(&self, t: &pathcheck_surface::Term) -> Result<Term, TypeError> {
        resolve(&self.globals, &mut Vec::new(), t)
    }

    /// Resolves and checks a closed type, returning it with its value.
    pub fn elab_type(&self, t: &pathcheck_surface::Term) -> Result<(Term, Val), TypeError> {
        let core = self.resolve(t)?;
        let checker = Checker::new(&self.globals);
        checker.infer_universe(&Ctx::new(), &core)?;
        let v = eval(&self.globals, &Env::new(), &core);
        Ok((core, v))
    }

    /// Resolves and checks a closed term against `ty`.
    pub fn elab_term(&self, t: &pathcheck_surface::Term, ty: &Val) -> Result<Term, TypeError> {
        let core = self.resolve(t)?;
        Checker::new(&self.globals).check(&Ctx::new(), &core, ty)?;
        Ok(core)
    }

    pub fn eval_closed(&self, t: &Term) -> Val {
        eval(&self.globals, &Env::new(), t)
    }

    fn add(&mut self, name: &str, ty_term: Term, ty: Val, body: Option<Term>) {
        let def = body.map(|body| {
            let value = eval(&self.globals, &Env::new(), &body);
            Definition { body, value }
        });
        self.globals.push(Global { name: name.into(), ty_term, ty, def });
    }

    /// Checks `d` against the current prefix and extends it. A definition
    /// whose body fails to check is still added, as a postulate, so that later
    /// declarations can be checked in isolation.
    pub fn check_declaration(&mut self, d: &Decl) -> ReportItem {
        let (name, kind) = match &d.kind {
            DeclKind::Def { name, .. } => (name.clone(), ItemKind::Definition),
            DeclKind::Postulate { name, .. } => (name.clone(), ItemKind::Postulate),
            DeclKind::Eq { label, .. } => (label_or(label, "#eq", d.span), ItemKind::EqAssertion),
            DeclKind::FailEq { label, .. } => {
                (label_or(label, "#fail-eq", d.span), ItemKind::FailAssertion)
            }
            DeclKind::Norm { label, .. } => (label_or(label, "#norm", d.span), ItemKind::Norm),
        };
        let mut item = ReportItem { name: name.clone(), kind, status: Status::Pass, message: None, span: d.span };
        let duplicate = match kind {
            ItemKind::Definition | ItemKind::Postulate => self.globals.lookup(&name).is_some(),
            _ => {
                let labelled = match &d.kind {
                    DeclKind::Eq { label, .. }
                    | DeclKind::FailEq { label, .. }
                    | DeclKind::Norm { label, .. } => label.is_some(),
                    _ => false,
                };
                labelled && !self.labels.insert(name.clone())
            }
        };
        if duplicate {
            item.status = Status::Fail;
            item.message = Some(format!("duplicate declaration `{name}`"));
            return item;
        }
        match self.check_inner(d) {
            Ok(message) => item.message = message,
            Err(e) => {
                item.status = Status::Fail;
                if let Some(span) = e.span {
                    item.span = span;
                }
                item.message = Some(e.message);
            }
        }
        item
    }

    fn check_inner(&mut self, d: &Decl) -> Result<Option<String>, TypeError> {
        match &d.kind {
            DeclKind::Def { name, ty, body } => {
                let (ty_term, tyv) = self.elab_type(ty)?;
                match self.elab_term(body, &tyv) {
                    Ok(body) => {
                        self.add(name, ty_term, tyv, Some(body));
                        Ok(None)
                    }
                    Err(e) => {
                        self.add(name, ty_term, tyv, None);
                        Err(e)
                    }
                }
            }
            DeclKind::Postulate { name, ty } => {
                let (ty_term, tyv) = self.elab_type(ty)?;
                self.add(name, ty_term, tyv, None);
                Ok(None)
            }
            DeclKind::Eq { lhs, rhs, ty, .. } | DeclKind::FailEq { lhs, rhs, ty, .. } => {
                let (_, tyv) = self.elab_type(ty)?;
                let l = self.elab_term(lhs, &tyv)?;
                let r = self.elab_term(rhs, &tyv)?;
                let (lv, rv) = (self.eval_closed(&l), self.eval_closed(&r));
                let checker = Checker::new(&self.globals);
                let same = checker.conv(&Ctx::new(), &tyv, &lv, &rv);
                let expect_same = matches!(d.kind, DeclKind::Eq { .. });
                if same == expect_same {
                    Ok(None)
                } else if expect_same {
                    let ctx = Ctx::new();
                    Err(TypeError::new(format!(
                        "sides are not definitionally equal: `{}` vs `{}`",
                        clip(render(&self.globals, &[], &checker.normalize(&ctx, &l, &tyv))),
                        clip(render(&self.globals, &[], &checker.normalize(&ctx, &r, &tyv))),
                    ))
                    .at(d.span))
                } else {
                    Err(TypeError::new("sides are definitionally equal").at(d.span))
                }
            }
            DeclKind::Norm { term, ty, .. } => {
                let (_, tyv) = self.elab_type(ty)?;
                let t = self.elab_term(term, &tyv)?;
                let checker = Checker::new(&self.globals);
                let nf = checker.normalize(&Ctx::new(), &t, &tyv);
                Ok(Some(render(&self.globals, &[], &nf)))
            }
        }
    }

    /// Checks every declaration in order.
    pub fn check_all(&mut self, decls: &[Decl]) -> Vec<ReportItem> {
        decls.iter().map(|d| self.check_declaration(d)).collect()
    }
}

fn label_or(label: &Option<String>, directive: &str, span: Span) -> String {
    label.clone().unwrap_or_else(|| format!("{directive}@{}", span.start))
}
