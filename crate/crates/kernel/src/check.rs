//! Bidirectional type checking.

use crate::conv::Conv;
use crate::eval::{apply, apply_many, eval, force, fst, j_base_type, natrec_step_type};
use crate::globals::Globals;
use crate::print::render;
use crate::quote::{Quoter, Unfold};
use crate::term::{Name, Term};
use crate::value::{Env, Val, Value};
use pathcheck_surface::Span;
use std::fmt;
use std::rc::Rc;

/// Highest universe level.
pub const TOP_LEVEL: u32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeError {
    pub span: Option<Span>,
    pub message: String,
}

impl TypeError {
    pub fn new(message: impl Into<String>) -> TypeError {
        TypeError { span: None, message: message.into() }
    }

    /// Attaches `span` unless a more precise one is already present.
    pub fn at(mut self, span: Span) -> TypeError {
        if self.span.is_none() && !span.is_empty() {
            self.span = Some(span);
        }
        self
    }
}

impl fmt::Display for TypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for TypeError {}

/// Typing context; names, types and the evaluation environment stay aligned.
#[derive(Clone, Debug, Default)]
pub struct Ctx {
    pub names: Vec<Name>,
    pub types: Vec<Val>,
    pub env: Env,
}

impl Ctx {
    pub fn new() -> Ctx {
        Ctx::default()
    }

    pub fn level(&self) -> usize {
        self.types.len()
    }

    /// Extends with a fresh variable.
    pub fn bind(&self, name: Name, ty: Val) -> Ctx {
        let v = Value::var(self.level());
        self.define(name, ty, v)
    }

    /// Extends with a variable bound to `val`.
    pub fn define(&self, name: Name, ty: Val, val: Val) -> Ctx {
        let mut names = self.names.clone();
        let mut types = self.types.clone();
        names.push(name);
        types.push(ty);
        Ctx { names, types, env: self.env.push(val) }
    }
}

pub struct Checker<'g> {
    pub g: &'g Globals,
}

type Result<T> = std::result::Result<T, TypeError>;

impl<'g> Checker<'g> {
    pub fn new(g: &'g Globals) -> Checker<'g> {
        Checker { g }
    }

    pub fn eval(&self, ctx: &Ctx, t: &Term) -> Val {
        eval(self.g, &ctx.env, t)
    }

    pub fn conv(&self, ctx: &Ctx, ty: &Val, a: &Val, b: &Val) -> bool {
        Conv::new(self.g, ctx.types.clone()).conv(ty, a, b)
    }

    pub fn conv_ty(&self, ctx: &Ctx, a: &Val, b: &Val) -> bool {
        Conv::new(self.g, ctx.types.clone()).conv_ty(a, b)
    }

    /// Renders a type for diagnostics.
    pub fn show_ty(&self, ctx: &Ctx, ty: &Val) -> String {
        let t = Quoter::new(self.g, ctx.types.clone(), Unfold::Never).quote_ty(ty);
        render(self.g, &ctx.names, &t)
    }

    /// Renders a value of type `ty` for diagnostics.
    pub fn show(&self, ctx: &Ctx, ty: &Val, v: &Val) -> String {
        let t = Quoter::new(self.g, ctx.types.clone(), Unfold::Never).quote(ty, v);
        render(self.g, &ctx.names, &t)
    }

    fn mismatch(&self, ctx: &Ctx, expected: &Val, found: &Val) -> TypeError {
        let (e, f) = (force(self.g, expected), force(self.g, found));
        let what = match (&*e, &*f) {
            (Value::Type(_), Value::Type(_)) => "universe level mismatch",
            _ => "type mismatch",
        };
        TypeError::new(format!(
            "{what}: expected `{}`, found `{}`",
            self.show_ty(ctx, expected),
            self.show_ty(ctx, found)
        ))
    }

    pub fn check(&self, ctx: &Ctx, t: &Term, ty: &Val) -> Result<()> {
        let g = self.g;
        match t {
            Term::Loc(span, inner) => self.check(ctx, inner, ty).map_err(|e| e.at(*span)),
            Term::Lam(x, body) => {
                let fty = force(g, ty);
                match &*fty {
                    Value::Pi(_, dom, cod) => {
                        let var = Value::var(ctx.level());
                        let inner = ctx.bind(x.clone(), dom.clone());
                        self.check(&inner, body, &cod.apply(g, var))
                    }
                    _ => Err(TypeError::new(format!(
                        "binder count mismatch: λ-abstraction checked against non-Π type `{}`",
                        self.show_ty(ctx, ty)
                    ))),
                }
            }
            Term::Pair(a, b) => {
                let sty = force(g, ty);
                match &*sty {
                    Value::Sigma(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        let av = self.eval(ctx, a);
                        self.check(ctx, b, &cod.apply(g, av))
                    }
                    _ => Err(TypeError::new(format!(
                        "pair checked against non-Σ type `{}`",
                        self.show_ty(ctx, ty)
                    ))),
                }
            }
            Term::Refl => {
                let ity = force(g, ty);
                match &*ity {
                    Value::Id(a, u, v) => {
                        if self.conv(ctx, a, u, v) {
                            Ok(())
                        } else {
                            Err(TypeError::new(format!(
                                "refl endpoints not convertible: `{}` and `{}`",
                                self.show(ctx, a, u),
                                self.show(ctx, a, v)
                            )))
                        }
                    }
                    _ => Err(TypeError::new(format!(
                        "refl checked against non-identity type `{}`",
                        self.show_ty(ctx, ty)
                    ))),
                }
            }
            Term::Let(x, lty, v, body) => {
                self.infer_universe(ctx, lty)?;
                let ltyv = self.eval(ctx, lty);
                self.check(ctx, v, &ltyv)?;
                let vv = self.eval(ctx, v);
                self.check(&ctx.define(x.clone(), ltyv, vv), body, ty)
            }
            _ => {
                let found = self.infer(ctx, t)?;
                if self.conv_ty(ctx, &found, ty) {
                    Ok(())
                } else {
                    Err(self.mismatch(ctx, ty, &found))
                }
            }
        }
    }

    /// Infers the universe level of a type.
    pub fn infer_universe(&self, ctx: &Ctx, t: &Term) -> Result<u32> {
        let ty = self.infer(ctx, t)?;
        match &*force(self.g, &ty) {
            Value::Type(i) => Ok(*i),
            _ => Err(TypeError::new(format!(
                "expected a type, found a term of type `{}`",
                self.show_ty(ctx, &ty)
            ))),
        }
    }

    pub fn infer(&self, ctx: &Ctx, t: &Term) -> Result<Val> {
        let g = self.g;
        match t {
            Term::Loc(span, inner) => self.infer(ctx, inner).map_err(|e| e.at(*span)),
            Term::Var(i) => {
                let l = ctx.level().checked_sub(i + 1).ok_or_else(|| TypeError::new("unbound variable"))?;
                Ok(ctx.types[l].clone())
            }
            Term::Const(c) => Ok(g.get(*c).ty.clone()),
            Term::Type(i) if *i < TOP_LEVEL => Ok(Rc::new(Value::Type(i + 1))),
            Term::Type(i) if *i == TOP_LEVEL => Err(TypeError::new(format!(
                "universe level mismatch: `Type {i}` is the top of the tower and has no type"
            ))),
            Term::Type(i) => Err(TypeError::new(format!(
                "universe level mismatch: `Type {i}` is outside the tower Type 0 .. Type {TOP_LEVEL}"
            ))),
            Term::Pi(x, a, b) | Term::Sigma(x, a, b) => {
                let i = self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                let j = self.infer_universe(&ctx.bind(x.clone(), av), b)?;
                Ok(Rc::new(Value::Type(i.max(j))))
            }
            Term::App(f, a) if matches!(f.unloc(), Term::Lam(..)) => {
                // A β-redex with an unannotated λ is checked like a `let`.
                let Term::Lam(x, body) = f.unloc() else { unreachable!() };
                let aty = self.infer(ctx, a)?;
                let av = self.eval(ctx, a);
                self.infer(&ctx.define(x.clone(), aty, av), body)
            }
            Term::App(f, a) => {
                let fty = self.infer(ctx, f)?;
                match &*force(g, &fty) {
                    Value::Pi(_, dom, cod) => {
                        self.check(ctx, a, dom)?;
                        Ok(cod.apply(g, self.eval(ctx, a)))
                    }
                    _ => Err(TypeError::new(format!(
                        "non-function applied: the head has type `{}`",
                        self.show_ty(ctx, &fty)
                    ))),
                }
            }
            Term::Fst(p) | Term::Snd(p) => {
                let pty = self.infer(ctx, p)?;
                match &*force(g, &pty) {
                    Value::Sigma(_, a, b) => {
                        if matches!(t, Term::Fst(_)) {
                            Ok(a.clone())
                        } else {
                            Ok(b.apply(g, fst(&self.eval(ctx, p))))
                        }
                    }
                    _ => Err(TypeError::new(format!(
                        "projection of non-Σ: the argument has type `{}`",
                        self.show_ty(ctx, &pty)
                    ))),
                }
            }
            Term::Id(a, x, y) => {
                let i = self.infer_universe(ctx, a)?;
                let av = self.eval(ctx, a);
                self.check(ctx, x, &av)?;
                self.check(ctx, y, &av)?;
                Ok(Rc::new(Value::Type(i)))
            }
            Term::J(j) => {
                self.infer_universe(ctx, &j.ty)?;
                let a = self.eval(ctx, &j.ty);
                let doms = |vars: &[Val]| -> Val {
                    if vars.len() < 2 {
                        a.clone()
                    } else {
                        Rc::new(Value::Id(a.clone(), vars[0].clone(), vars[1].clone()))
                    }
                };
                self.check_family(ctx, &j.motive, &doms, 3, &mut Vec::new())?;
                let c = self.eval(ctx, &j.motive);
                self.check(ctx, &j.base, &j_base_type(g, &a, &c))?;
                self.check(ctx, &j.lhs, &a)?;
                self.check(ctx, &j.rhs, &a)?;
                let (u, v) = (self.eval(ctx, &j.lhs), self.eval(ctx, &j.rhs));
                self.check(ctx, &j.path, &Rc::new(Value::Id(a.clone(), u.clone(), v.clone())))?;
                let p = self.eval(ctx, &j.path);
                Ok(apply_many(g, &c, &[u, v, p]))
            }
            Term::NatRec(r) => {
                let nat = Rc::new(Value::Nat);
                let doms = |_: &[Val]| -> Val { nat.clone() };
                self.check_family(ctx, &r.motive, &doms, 1, &mut Vec::new())?;
                let p = self.eval(ctx, &r.motive);
                self.check(ctx, &r.zero, &apply(g, &p, Rc::new(Value::Zero)))?;
                self.check(ctx, &r.succ, &natrec_step_type(g, &p))?;
                self.check(ctx, &r.target, &nat)?;
                Ok(apply(g, &p, self.eval(ctx, &r.target)))
            }
            Term::Unit | Term::Nat => Ok(Rc::new(Value::Type(0))),
            Term::Tt => Ok(Rc::new(Value::Unit)),
            Term::Zero => Ok(Rc::new(Value::Nat)),
            Term::Succ(n) => {
                let nat = Rc::new(Value::Nat);
                self.check(ctx, n, &nat)?;
                Ok(nat)
            }
            Term::Let(x, lty, v, body) => {
                self.infer_universe(ctx, lty)?;
                let ltyv = self.eval(ctx, lty);
                self.check(ctx, v, &ltyv)?;
                let vv = self.eval(ctx, v);
                self.infer(&ctx.define(x.clone(), ltyv, vv), body)
            }
            Term::Ann(inner, ty) => {
                self.infer_universe(ctx, ty)?;
                let tyv = self.eval(ctx, ty);
                self.check(ctx, inner, &tyv)?;
                Ok(tyv)
            }
            Term::Lam(..) => Err(TypeError::new(
                "cannot infer the type of a λ-abstraction; add an annotation",
            )),
            Term::Pair(..) => Err(TypeError::new("cannot infer the type of a pair; add an annotation")),
            Term::Refl => Err(TypeError::new("cannot infer the type of refl; add an annotation")),
        }
    }

    /// Checks that `t` is a type family over the telescope described by
    /// `doms` (each domain may depend on the earlier variables).
    fn check_family(
        &self,
        ctx: &Ctx,
        t: &Term,
        doms: &dyn Fn(&[Val]) -> Val,
        arity: usize,
        vars: &mut Vec<Val>,
    ) -> Result<()> {
        let g = self.g;
        if vars.len() == arity {
            return self.infer_universe(ctx, t).map(|_| ());
        }
        match t {
            Term::Loc(span, inner) => {
                self.check_family(ctx, inner, doms, arity, vars).map_err(|e| e.at(*span))
            }
            Term::Lam(x, body) => {
                let dom = doms(vars);
                let inner = ctx.bind(x.clone(), dom);
                vars.push(Value::var(ctx.level()));
                let r = self.check_family(&inner, body, doms, arity, vars);
                vars.pop();
                r
            }
            _ => {
                let start = vars.len();
                let mut ty = self.infer(ctx, t)?;
                let mut inner = ctx.clone();
                let result = loop {
                    if vars.len() == arity {
                        break match &*force(g, &ty) {
                            Value::Type(_) => Ok(()),
                            _ => Err(TypeError::new(format!(
                                "expected a type family, found a family of `{}`",
                                self.show_ty(&inner, &ty)
                            ))),
                        };
                    }
                    let dom = doms(vars);
                    let fty = force(g, &ty);
                    let Value::Pi(x, a, b) = &*fty else {
                        break Err(TypeError::new(format!(
                            "expected a type family, found `{}`",
                            self.show_ty(&inner, &ty)
                        )));
                    };
                    if !self.conv_ty(&inner, a, &dom) {
                        break Err(self.mismatch(&inner, &dom, a));
                    }
                    let v = Value::var(inner.level());
                    inner = inner.bind(x.clone(), a.clone());
                    vars.push(v.clone());
                    ty = b.apply(g, v);
                };
                vars.truncate(start);
                result
            }
        }
    }

    /// Normal form of `t` at type `ty`, unfolding all definitions.
    pub fn normalize(&self, ctx: &Ctx, t: &Term, ty: &Val) -> Term {
        let v = self.eval(ctx, t);
        Quoter::new(self.g, ctx.types.clone(), Unfold::Always).quote(ty, &v)
    }

    /// Normal form of a type.
    pub fn normalize_ty(&self, ctx: &Ctx, t: &Term) -> Term {
        let v = self.eval(ctx, t);
        Quoter::new(self.g, ctx.types.clone(), Unfold::Always).quote_ty(&v)
    }
}
