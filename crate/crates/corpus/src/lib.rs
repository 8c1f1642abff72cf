//! The shipped formalization corpus: manifest, loading and checking.

pub mod audit;
pub mod deps;
pub mod manifest;
pub mod mutate;
pub mod required;
pub mod run;

pub use audit::normal_form_audit;
pub use deps::{decl_constants, free_constants};
pub use manifest::{
    default_root, load_manifest, shipped_root, Corpus, CorpusEntry, CorpusFile, EntryKind, LoadError, SourceRef,
};
pub use mutate::{perturb_corpus, perturbation, perturbation_sweep, without_rext_rx, PerturbationSweep};
pub use required::REQUIRED_EQS;
pub use run::{check_file, check_in_place, run_corpus, CorpusReport, EntryResult, FileReport, Outcome, STACK_SIZE};
