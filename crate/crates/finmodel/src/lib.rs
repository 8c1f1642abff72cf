//! Finite-set semantics for reflexive graphs, displayed graphs, lenses and
//! fibrations. Types are finite sets, identifications are equalities and
//! equivalences are bijections.

pub mod construct;
pub mod disp;
pub mod enumerate;
pub mod error;
pub mod fibration;
pub mod gaunt;
pub mod graph;
pub mod lens;
pub mod suite;

pub use construct::{construct, Args, Constructed, ConstructionKind};
pub use disp::FinDispRxGraph;
pub use enumerate::enumerate_graphs;
pub use error::ModelError;
pub use fibration::{
    ctrv_underlying_lens, is_cov_fibration, is_ctrv_fibration, underlying_lens, FibVariance, FibrationWitness,
};
pub use graph::FinRxGraph;
pub use lens::{CovLens, CtrvLens, FinLens, UnbLens, Variance};
pub use suite::{run_suite, suite_names, Bounds, Mode, RunOptions, SuiteReport};

/// The displayed graph over the codiscrete graph on two points whose fibre
/// over `i` is the set of identifications `i = 1`, with one displayed edge
/// between any two displayed vertices.
pub fn counterexample() -> FinDispRxGraph {
    let base = construct::codiscrete(2);
    let fib = (0..2).map(|i| (i == 1) as usize).collect();
    FinDispRxGraph::new(base, fib, |_, _, _, _, _| 1, |_, _| 0).expect("counterexample is well formed")
}
