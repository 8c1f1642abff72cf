//! Loading and validation of the corpus manifest.

use crate::deps::decl_constants;
use pathcheck_surface::{line_col, parse_str, Decl, DeclKind};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const MANIFEST: &str = "manifest.toml";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Definition,
    Theorem,
    Postulate,
    EqAssertion,
    FailAssertion,
    Norm,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::Definition => "definition",
            EntryKind::Theorem => "theorem",
            EntryKind::Postulate => "postulate",
            EntryKind::EqAssertion => "eq-assertion",
            EntryKind::FailAssertion => "fail-assertion",
            EntryKind::Norm => "norm",
        }
    }

    /// Whether the entry introduces a constant later entries can refer to.
    pub fn is_constant(self) -> bool {
        matches!(self, EntryKind::Definition | EntryKind::Theorem | EntryKind::Postulate)
    }

    fn admits(self, d: &DeclKind) -> bool {
        matches!(
            (self, d),
            (EntryKind::Definition | EntryKind::Theorem, DeclKind::Def { .. })
                | (EntryKind::Postulate, DeclKind::Postulate { .. })
                | (EntryKind::EqAssertion, DeclKind::Eq { .. })
                | (EntryKind::FailAssertion, DeclKind::FailEq { .. })
                | (EntryKind::Norm, DeclKind::Norm { .. })
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceRef {
    Cited { citation: String, anchor: String },
    Glue,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub file: String,
    pub source_ref: SourceRef,
    pub statement_only: bool,
    pub decl: Decl,
    /// Constants the declaration refers to directly.
    pub uses: BTreeSet<String>,
}

#[derive(Clone, Debug)]
pub struct CorpusFile {
    pub name: String,
    pub deps: Vec<String>,
    pub path: PathBuf,
    pub source: String,
    /// Indices into `Corpus::entries`, in declaration order.
    pub entries: Vec<usize>,
}

/// A loaded corpus: files in dependency order, entries in checking order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub root: PathBuf,
    pub files: Vec<CorpusFile>,
    pub entries: Vec<CorpusEntry>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read `{}`: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed manifest: {0}")]
    Manifest(String),
    #[error("missing file `{0}`")]
    MissingFile(String),
    #[error("duplicate file `{0}` in manifest")]
    DuplicateFile(String),
    #[error("file `{file}` depends on unknown file `{dep}`")]
    UnknownDep { file: String, dep: String },
    #[error("cyclic file ordering: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("{file}:{line}:{col}: {message}")]
    Syntax { file: String, line: usize, col: usize, message: String },
    #[error("duplicate entry name `{0}`")]
    DuplicateEntry(String),
    #[error("uncited entry `{0}`")]
    Uncited(String),
    #[error("entry `{name}` is both cited and glue")]
    CitedGlue { name: String },
    #[error("entry `{name}` is not declared in `{file}`")]
    Undeclared { name: String, file: String },
    #[error("{file}:{line}:{col}: declaration `{name}` has no manifest entry")]
    Unlisted { name: String, file: String, line: usize, col: usize },
    #[error("{file}:{line}:{col}: unlabelled directive cannot be cited")]
    Unlabelled { file: String, line: usize, col: usize },
    #[error("entry `{name}` is declared as {declared} but listed as {listed}")]
    KindMismatch { name: String, declared: &'static str, listed: &'static str },
    #[error("statement-only entry `{0}` must be a definition")]
    StatementOnlyKind(String),
    #[error("theorem `{theorem}` depends on statement-only entry `{statement}`")]
    StatementOnlyDependency { theorem: String, statement: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    version: u32,
    #[serde(default)]
    file: Vec<RawFile>,
    #[serde(default)]
    entry: Vec<RawEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    #[serde(default)]
    deps: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    kind: EntryKind,
    file: String,
    citation: Option<String>,
    anchor: Option<String>,
    #[serde(default)]
    glue: bool,
    #[serde(default)]
    statement_only: bool,
}

/// The shipped corpus directory, unless `PATHCHECK_CORPUS` overrides it.
pub fn default_root() -> PathBuf {
    match std::env::var_os("PATHCHECK_CORPUS") {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => shipped_root(),
    }
}

/// The corpus directory shipped with this crate.
pub fn shipped_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.to_path_buf(), source })
}

/// Reads `root/manifest.toml` and every file it lists, and cross-checks the
/// two.
pub fn load_manifest(root: &Path) -> Result<Corpus, LoadError> {
    let raw: RawManifest =
        toml::from_str(&read(&root.join(MANIFEST))?).map_err(|e| LoadError::Manifest(e.to_string()))?;
    if raw.version != 1 {
        return Err(LoadError::Manifest(format!("unsupported version {}", raw.version)));
    }
    let order = file_order(&raw.file)?;

    let mut listed: HashMap<&str, &RawEntry> = HashMap::new();
    for e in &raw.entry {
        if listed.insert(e.name.as_str(), e).is_some() {
            return Err(LoadError::DuplicateEntry(e.name.clone()));
        }
        if !raw.file.iter().any(|f| f.name == e.file) {
            return Err(LoadError::Undeclared { name: e.name.clone(), file: e.file.clone() });
        }
    }
    for e in &raw.entry {
        match (&e.citation, &e.anchor, e.glue) {
            (Some(c), Some(a), false) if !c.trim().is_empty() && !a.trim().is_empty() => {}
            (None, None, true) => {}
            (Some(_), _, true) | (_, Some(_), true) => {
                return Err(LoadError::CitedGlue { name: e.name.clone() })
            }
            _ => return Err(LoadError::Uncited(e.name.clone())),
        }
    }

    let mut corpus = Corpus { root: root.to_path_buf(), files: Vec::new(), entries: Vec::new() };
    let mut declared: HashSet<String> = HashSet::new();
    for i in order {
        let rf = &raw.file[i];
        let path = root.join(&rf.name);
        if !path.is_file() {
            return Err(LoadError::MissingFile(rf.name.clone()));
        }
        let source = read(&path)?;
        let decls = parse_str(&source).map_err(|e| {
            let (line, col) = line_col(&source, e.span().start);
            LoadError::Syntax { file: rf.name.clone(), line, col, message: e.to_string() }
        })?;
        let mut file = CorpusFile {
            name: rf.name.clone(),
            deps: rf.deps.clone(),
            path,
            source,
            entries: Vec::new(),
        };
        for d in decls {
            let (line, col) = line_col(&file.source, d.span.start);
            let Some(name) = d.name().map(str::to_string) else {
                return Err(LoadError::Unlabelled { file: file.name.clone(), line, col });
            };
            let Some(e) = listed.get(name.as_str()).filter(|e| e.file == file.name) else {
                return Err(LoadError::Unlisted { name, file: file.name.clone(), line, col });
            };
            if !declared.insert(name.clone()) {
                return Err(LoadError::DuplicateEntry(name));
            }
            if !e.kind.admits(&d.kind) {
                let declared = match d.kind {
                    DeclKind::Def { .. } => "a definition",
                    DeclKind::Postulate { .. } => "a postulate",
                    DeclKind::Eq { .. } => "an #eq directive",
                    DeclKind::FailEq { .. } => "a #fail-eq directive",
                    DeclKind::Norm { .. } => "a #norm directive",
                };
                return Err(LoadError::KindMismatch { name, declared, listed: e.kind.as_str() });
            }
            if e.statement_only && e.kind != EntryKind::Definition {
                return Err(LoadError::StatementOnlyKind(name));
            }
            let source_ref = match (&e.citation, &e.anchor) {
                (Some(citation), Some(anchor)) => {
                    SourceRef::Cited { citation: citation.clone(), anchor: anchor.clone() }
                }
                _ => SourceRef::Glue,
            };
            file.entries.push(corpus.entries.len());
            corpus.entries.push(CorpusEntry {
                name,
                kind: e.kind,
                file: file.name.clone(),
                source_ref,
                statement_only: e.statement_only,
                uses: decl_constants(&d),
                decl: d,
            });
        }
        corpus.files.push(file);
    }
    if let Some(e) = raw.entry.iter().find(|e| !declared.contains(&e.name)) {
        return Err(LoadError::Undeclared { name: e.name.clone(), file: e.file.clone() });
    }
    check_statement_only(&corpus)?;
    Ok(corpus)
}

/// Files in a dependency-respecting order, stable with respect to the
/// manifest order.
fn file_order(files: &[RawFile]) -> Result<Vec<usize>, LoadError> {
    let mut index = HashMap::new();
    for (i, f) in files.iter().enumerate() {
        if index.insert(f.name.as_str(), i).is_some() {
            return Err(LoadError::DuplicateFile(f.name.clone()));
        }
    }
    let mut deps = Vec::with_capacity(files.len());
    for f in files {
        let mut ds = Vec::new();
        for d in &f.deps {
            match index.get(d.as_str()) {
                Some(&j) => ds.push(j),
                None => return Err(LoadError::UnknownDep { file: f.name.clone(), dep: d.clone() }),
            }
        }
        deps.push(ds);
    }
    if let Some(cycle) = find_cycle(&deps) {
        return Err(LoadError::Cycle(cycle.into_iter().map(|i| files[i].name.clone()).collect()));
    }
    let mut done = vec![false; files.len()];
    let mut order = Vec::with_capacity(files.len());
    while order.len() < files.len() {
        let next = (0..files.len())
            .find(|&i| !done[i] && deps[i].iter().all(|&j| done[j]))
            .expect("acyclic graph has a ready file");
        done[next] = true;
        order.push(next);
    }
    Ok(order)
}

/// A cycle in the dependency graph, as a closed path of indices.
pub(crate) fn find_cycle(deps: &[Vec<usize>]) -> Option<Vec<usize>> {
    fn visit(i: usize, deps: &[Vec<usize>], state: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        state[i] = 1;
        stack.push(i);
        for &j in &deps[i] {
            if state[j] == 1 {
                let start = stack.iter().position(|&k| k == j).unwrap();
                let mut cycle = stack[start..].to_vec();
                cycle.push(j);
                return Some(cycle);
            }
            if state[j] == 0 {
                if let Some(c) = visit(j, deps, state, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        state[i] = 2;
        None
    }
    let mut state = vec![0u8; deps.len()];
    for i in 0..deps.len() {
        if state[i] == 0 {
            if let Some(c) = visit(i, deps, &mut state, &mut Vec::new()) {
                return Some(c);
            }
        }
    }
    None
}

/// Rejects theorems that reach a statement-only entry through the
/// transitive closure of references.
fn check_statement_only(corpus: &Corpus) -> Result<(), LoadError> {
    let by_name: HashMap<&str, &CorpusEntry> =
        corpus.entries.iter().filter(|e| e.kind.is_constant()).map(|e| (e.name.as_str(), e)).collect();
    // The statement-only entry each constant reaches, if any; entries are in
    // checking order, so every reference is already resolved.
    let mut reaches: HashMap<&str, Option<&str>> = HashMap::new();
    for e in &corpus.entries {
        let mut hit = None;
        for u in &e.uses {
            let Some(dep) = by_name.get(u.as_str()) else { continue };
            if dep.statement_only {
                hit = Some(dep.name.as_str());
            } else if let Some(Some(s)) = reaches.get(u.as_str()) {
                hit = Some(*s);
            }
            if hit.is_some() {
                break;
            }
        }
        if e.kind == EntryKind::Theorem {
            if let Some(statement) = hit {
                return Err(LoadError::StatementOnlyDependency {
                    theorem: e.name.clone(),
                    statement: statement.to_string(),
                });
            }
        }
        if e.kind.is_constant() {
            reaches.insert(e.name.as_str(), hit);
        }
    }
    Ok(())
}

impl Corpus {
    pub fn file(&self, name: &str) -> Option<&CorpusFile> {
        self.files.iter().find(|f| f.name == name)
    }

    pub fn entry(&self, name: &str) -> Option<&CorpusEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Indices of the files `file` depends on, transitively, in checking
    /// order; `file` itself is excluded.
    pub fn prefix_of(&self, file: usize) -> Vec<usize> {
        let mut need = vec![false; self.files.len()];
        let mut todo = vec![file];
        while let Some(i) = todo.pop() {
            for d in &self.files[i].deps {
                let j = self.files.iter().position(|f| &f.name == d).expect("dependency was validated");
                if !need[j] {
                    need[j] = true;
                    todo.push(j);
                }
            }
        }
        (0..self.files.len()).filter(|&i| need[i]).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_self_loop() {
        assert_eq!(find_cycle(&[vec![0]]), Some(vec![0, 0]));
    }

    #[test]
    fn finds_longer_cycle() {
        let c = find_cycle(&[vec![1], vec![2], vec![0]]).unwrap();
        assert_eq!(c.first(), c.last());
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn dag_has_no_cycle() {
        assert_eq!(find_cycle(&[vec![], vec![0], vec![0, 1]]), None);
    }
}
