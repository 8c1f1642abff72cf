//! Consistency checks of normalization over a checked development.

use pathcheck_kernel::{Checker, Ctx, State};

/// Checks, for every definition in `state`, that the normal form of its body
/// is a fixed point of normalization, has the declared type and is
/// convertible with the body. Returns the number of definitions and the
/// problems found.
pub fn normal_form_audit(state: &State) -> (usize, Vec<String>) {
    let g = &state.globals;
    let ck = Checker::new(g);
    let ctx = Ctx::new();
    let mut count = 0;
    let mut problems = Vec::new();
    for (_, global) in g.iter() {
        let Some(def) = &global.def else { continue };
        count += 1;
        let nf = ck.normalize(&ctx, &def.body, &global.ty);
        if ck.normalize(&ctx, &nf, &global.ty) != nf {
            problems.push(format!("{}: normalization not idempotent", global.name));
        }
        if let Err(e) = ck.check(&ctx, &nf, &global.ty) {
            problems.push(format!("{}: normal form ill-typed: {e}", global.name));
        }
        if !ck.conv(&ctx, &global.ty, &ck.eval(&ctx, &nf), &def.value) {
            problems.push(format!("{}: normal form not convertible with body", global.name));
        }
    }
    (count, problems)
}
