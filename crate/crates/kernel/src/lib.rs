//! Core type theory: syntax, normalization by evaluation, conversion and
//! bidirectional checking.

pub mod check;
pub mod conv;
pub mod decl;
pub mod eval;
pub mod globals;
pub mod print;
pub mod quote;
pub mod resolve;
pub mod term;
pub mod value;

pub use check::{Checker, Ctx, TypeError};
pub use decl::{ItemKind, ReportItem, State, Status};
pub use globals::Globals;
pub use quote::Unfold;
pub use term::Term;
pub use value::{Env, Val, Value};

/// Evaluates `t` in `env`.
pub fn eval(g: &Globals, env: &Env, t: &Term) -> Val {
    eval::eval(g, env, t)
}

/// Reads back `v` at type `ty` under `ctx`, unfolding all definitions.
pub fn quote(g: &Globals, ctx: &Ctx, ty: &Val, v: &Val) -> Term {
    quote::Quoter::new(g, ctx.types.clone(), Unfold::Always).quote(ty, v)
}

pub fn normalize(g: &Globals, ctx: &Ctx, t: &Term, ty: &Val) -> Term {
    Checker::new(g).normalize(ctx, t, ty)
}

pub fn convertible(g: &Globals, ctx: &Ctx, a: &Val, b: &Val, ty: &Val) -> bool {
    Checker::new(g).conv(ctx, ty, a, b)
}

pub fn infer(g: &Globals, ctx: &Ctx, t: &Term) -> Result<Val, TypeError> {
    Checker::new(g).infer(ctx, t)
}

pub fn check(g: &Globals, ctx: &Ctx, t: &Term, ty: &Val) -> Result<(), TypeError> {
    Checker::new(g).check(ctx, t, ty)
}

/// Runs `f` on a thread with a large stack; deep terms recurse deeply.
pub fn with_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new()
        .stack_size(1 << 29)
        .spawn(f)
        .expect("spawn checker thread")
        .join()
        .unwrap_or_else(|e| std::panic::resume_unwind(e))
}
