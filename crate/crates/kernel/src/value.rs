//! Semantic domain for normalization by evaluation. Variables are de Bruijn
//! levels.

use crate::term::{Name, Term};
use std::rc::Rc;

pub type Val = Rc<Value>;

#[derive(Clone, Debug)]
pub enum Value {
    Type(u32),
    Pi(Name, Val, Closure),
    Lam(Name, Closure),
    Sigma(Name, Val, Closure),
    Pair(Val, Val),
    Id(Val, Val, Val),
    Refl,
    Unit,
    Tt,
    Nat,
    Zero,
    Succ(Val),
    /// Stuck on a variable or postulate.
    Rigid(Head, Spine),
    /// A defined constant under eliminators, unfolded on demand.
    Flex(usize, Spine),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Head {
    Var(usize),
    Postulate(usize),
}

pub type Spine = Vec<Elim>;

#[derive(Clone, Debug)]
pub enum Elim {
    App(Val),
    Fst,
    Snd,
    J(Rc<JFrame>),
    NatRec(Rc<NatRecFrame>),
}

/// Arguments of `J` other than the identification being eliminated.
#[derive(Clone, Debug)]
pub struct JFrame {
    pub ty: Val,
    pub motive: Val,
    pub base: Val,
    pub lhs: Val,
    pub rhs: Val,
}

/// Arguments of `natrec` other than the number being eliminated.
#[derive(Clone, Debug)]
pub struct NatRecFrame {
    pub motive: Val,
    pub zero: Val,
    pub succ: Val,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub env: Env,
    pub body: Rc<Term>,
}

/// Persistent evaluation environment; index 0 is the most recent binding.
#[derive(Clone, Debug, Default)]
pub struct Env(Option<Rc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    val: Val,
    next: Env,
    len: usize,
}

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn len(&self) -> usize {
        self.0.as_ref().map_or(0, |n| n.len)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_none()
    }

    pub fn push(&self, val: Val) -> Env {
        Env(Some(Rc::new(EnvNode { val, next: self.clone(), len: self.len() + 1 })))
    }

    pub fn lookup(&self, index: usize) -> &Val {
        let mut node = self.0.as_ref().expect("unbound de Bruijn index");
        for _ in 0..index {
            node = node.next.0.as_ref().expect("unbound de Bruijn index");
        }
        &node.val
    }
}

impl Value {
    pub fn var(level: usize) -> Val {
        Rc::new(Value::Rigid(Head::Var(level), Vec::new()))
    }
}
