//! Table of checked constants.

use crate::term::{Name, Term};
use crate::value::Val;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct Definition {
    pub body: Term,
    pub value: Val,
}

#[derive(Clone, Debug)]
pub struct Global {
    pub name: Name,
    pub ty_term: Term,
    pub ty: Val,
    /// `None` for postulates.
    pub def: Option<Definition>,
}

#[derive(Clone, Debug, Default)]
pub struct Globals {
    entries: Vec<Global>,
    by_name: HashMap<Name, usize>,
}

impl Globals {
    pub fn new() -> Globals {
        Globals::default()
    }

    pub fn get(&self, index: usize) -> &Global {
        &self.entries[index]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Global)> {
        self.entries.iter().enumerate()
    }

    /// Adds a constant and returns its index. Shadowing is not allowed; the
    /// caller checks for duplicates.
    pub fn push(&mut self, global: Global) -> usize {
        let index = self.entries.len();
        self.by_name.insert(global.name.clone(), index);
        self.entries.push(global);
        index
    }
}
