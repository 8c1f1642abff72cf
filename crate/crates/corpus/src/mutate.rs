//! Mutations of the corpus used to show that its checks are sensitive.

use crate::deps::decl_constants;
use crate::manifest::{Corpus, CorpusEntry, EntryKind, SourceRef};
use pathcheck_kernel::{State, Status};
use pathcheck_surface::{Decl, DeclKind, Term, TermKind};

/// The last two fields of the unbiased lens record in `lenses.rgl`.
pub const UNB_TAIL: &str = "       Σ (extRx : Π (x : vrt A) (u : vrt (B x x (rx A x))) . edge (B x x (rx A x)) (lext x x (rx A x) u) (rext x x (rx A x) u)) .
       Π (x : vrt A) (u : vrt (B x x (rx A x))) . edge (B x x (rx A x)) u (rext x x (rx A x) u)
";

/// The same tail with the `rextRx` field removed.
pub const UNB_TAIL_WITHOUT_REXT_RX: &str = "       Π (x : vrt A) (u : vrt (B x x (rx A x))) . edge (B x x (rx A x)) (lext x x (rx A x) u) (rext x x (rx A x) u)
";

/// `lenses.rgl` with the `rextRx` field dropped from the unbiased lens
/// record; `None` if the record does not have the expected shape.
pub fn without_rext_rx(lenses_source: &str) -> Option<String> {
    lenses_source.contains(UNB_TAIL).then(|| lenses_source.replacen(UNB_TAIL, UNB_TAIL_WITHOUT_REXT_RX, 1))
}

fn var(name: &str, like: &Term) -> Term {
    Term { kind: TermKind::Var(name.to_string()), span: like.span }
}

/// A fresh postulate `__perturb_k` of the assertion's type, and the
/// assertion with its left endpoint replaced by that postulate. `None` for
/// declarations other than `#eq`.
pub fn perturbation(eq: &Decl, k: usize) -> Option<(Decl, Decl)> {
    let DeclKind::Eq { label, lhs, rhs, ty } = &eq.kind else { return None };
    let name = format!("__perturb_{k}");
    let post = Decl { kind: DeclKind::Postulate { name: name.clone(), ty: ty.clone() }, span: eq.span };
    let eq = Decl {
        kind: DeclKind::Eq { label: label.clone(), lhs: var(&name, lhs), rhs: rhs.clone(), ty: ty.clone() },
        span: eq.span,
    };
    Some((post, eq))
}

/// The corpus with its `k`-th `#eq` directive perturbed, the fresh
/// postulate inserted just before it.
pub fn perturb_corpus(corpus: &Corpus, k: usize) -> Option<Corpus> {
    let mut c = corpus.clone();
    let (i, _) = c.entries.iter().enumerate().filter(|(_, e)| e.kind == EntryKind::EqAssertion).nth(k)?;
    let (post, eq) = perturbation(&c.entries[i].decl, k)?;
    let file = c.entries[i].file.clone();
    c.entries[i].uses = decl_constants(&eq);
    c.entries[i].decl = eq;
    c.entries.push(CorpusEntry {
        name: format!("__perturb_{k}"),
        kind: EntryKind::Postulate,
        file: file.clone(),
        source_ref: SourceRef::Glue,
        statement_only: false,
        uses: decl_constants(&post),
        decl: post,
    });
    let fresh = c.entries.len() - 1;
    let f = c.files.iter_mut().find(|f| f.name == file)?;
    let at = f.entries.iter().position(|&j| j == i)?;
    f.entries.insert(at, fresh);
    Some(c)
}

/// Outcome of perturbing every `#eq` directive in turn.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PerturbationSweep {
    pub perturbed: usize,
    /// Assertions that still passed after perturbation.
    pub survivors: Vec<String>,
    /// Entries that failed unperturbed.
    pub broken: Vec<String>,
}

/// Perturbs each `#eq` against a copy of the state checked up to it.
/// Directives add no constants, so this decides each perturbed assertion
/// exactly as a full run would. The caller provides a large enough stack.
pub fn perturbation_sweep(corpus: &Corpus) -> PerturbationSweep {
    let mut state = State::new();
    let mut sweep = PerturbationSweep::default();
    for file in &corpus.files {
        for &i in &file.entries {
            let e = &corpus.entries[i];
            if let Some((post, eq)) = perturbation(&e.decl, sweep.perturbed) {
                let mut probe = state.clone();
                let ok = probe.check_declaration(&post).status == Status::Pass;
                if ok && probe.check_declaration(&eq).status == Status::Pass {
                    sweep.survivors.push(e.name.clone());
                }
                sweep.perturbed += 1;
            }
            if state.check_declaration(&e.decl).status != Status::Pass {
                sweep.broken.push(e.name.clone());
            }
        }
    }
    sweep
}
