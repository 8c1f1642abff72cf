//! Finite reflexive graphs and their univalence conditions.

use crate::error::{ModelError, Result};
use serde::{Deserialize, Serialize};

/// A reflexive graph on vertices `0..n` whose edges from `x` to `y` are the
/// labels `0..e(x, y)`, with a chosen self-edge `rx(x)` at each vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinRxGraph {
    n: usize,
    /// Edge counts, row-major.
    e: Vec<usize>,
    rx: Vec<usize>,
}

/// An edge `(source, target, label)`.
pub type Edge = (usize, usize, usize);

impl FinRxGraph {
    pub fn new(n: usize, e: Vec<usize>, rx: Vec<usize>) -> Result<FinRxGraph> {
        let g = FinRxGraph { n, e, rx };
        g.validate()?;
        Ok(g)
    }

    pub fn from_fn(n: usize, e: impl Fn(usize, usize) -> usize, rx: impl Fn(usize) -> usize) -> Result<FinRxGraph> {
        let e = (0..n * n).map(|i| e(i / n.max(1), i % n.max(1))).collect();
        FinRxGraph::new(n, e, (0..n).map(rx).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.e.len() != self.n * self.n || self.rx.len() != self.n {
            return Err(ModelError::Graph(format!("tables do not match {} vertices", self.n)));
        }
        for x in 0..self.n {
            if self.rx[x] >= self.edges(x, x) {
                return Err(ModelError::Graph(format!(
                    "rx({x}) = {} but vertex {x} has {} self-edges",
                    self.rx[x],
                    self.edges(x, x)
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self, x: usize, y: usize) -> usize {
        self.e[x * self.n + y]
    }

    pub fn rx(&self, x: usize) -> usize {
        self.rx[x]
    }

    pub fn edge_total(&self) -> usize {
        self.e.iter().sum()
    }

    /// Position of the edge `(x, y, p)` in the lexicographic edge order.
    pub fn edge_id(&self, x: usize, y: usize, p: usize) -> usize {
        debug_assert!(p < self.edges(x, y));
        self.e[..x * self.n + y].iter().sum::<usize>() + p
    }

    /// Position of `rx(x)` in the edge order.
    pub fn rx_id(&self, x: usize) -> usize {
        self.edge_id(x, x, self.rx[x])
    }

    /// All edges in lexicographic order of `(source, target, label)`.
    pub fn edge_list(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_total());
        for x in 0..self.n {
            for y in 0..self.n {
                out.extend((0..self.edges(x, y)).map(|p| (x, y, p)));
            }
        }
        out
    }

    pub fn is_rx(&self, (x, y, p): Edge) -> bool {
        x == y && p == self.rx[x]
    }

    /// Elements `(y, p)` with `p : x -> y`.
    pub fn fan(&self, x: usize) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|y| (0..self.edges(x, y)).map(move |p| (y, p))).collect()
    }

    /// Elements `(y, p)` with `p : y -> x`.
    pub fn cofan(&self, x: usize) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|y| (0..self.edges(y, x)).map(move |p| (y, p))).collect()
    }

    /// The five equivalent formulations of univalence, each decided
    /// separately: fans are propositions, co-fans are propositions, fans are
    /// contractible onto `(x, rx x)`, co-fans likewise, and every
    /// `idToEdge` is a bijection.
    pub fn univalence_conditions(&self) -> [bool; 5] {
        let xs = 0..self.n;
        [
            xs.clone().all(|x| is_prop(&self.fan(x))),
            xs.clone().all(|x| is_prop(&self.cofan(x))),
            xs.clone().all(|x| contracts_onto(&self.fan(x), (x, self.rx[x]))),
            xs.clone().all(|x| contracts_onto(&self.cofan(x), (x, self.rx[x]))),
            xs.clone().all(|x| (0..self.n).all(|y| self.id_to_edge_is_bijection(x, y))),
        ]
    }

    /// Univalence, asserting that all five conditions agree.
    pub fn is_univalent(&self) -> bool {
        let c = self.univalence_conditions();
        assert!(c.iter().all(|&b| b == c[0]), "univalence conditions disagree on {self:?}: {c:?}");
        c[0]
    }

    fn id_to_edge_is_bijection(&self, x: usize, y: usize) -> bool {
        // Identifications of vertices: one if equal, none otherwise.
        let ids: &[()] = if x == y { &[()] } else { &[] };
        let image: Vec<usize> = ids.iter().map(|()| self.rx[x]).collect();
        let mut hit = vec![false; self.edges(x, y)];
        for &p in &image {
            if hit[p] {
                return false;
            }
            hit[p] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

fn is_prop<T: PartialEq>(xs: &[T]) -> bool {
    xs.iter().all(|a| xs.iter().all(|b| a == b))
}

fn contracts_onto<T: PartialEq>(xs: &[T], centre: T) -> bool {
    xs.contains(&centre) && xs.iter().all(|a| *a == centre)
}

/// Digits of `i` in mixed radix, most significant first.
pub(crate) fn decode(mut i: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (d, &r) in out.iter_mut().zip(radices).rev() {
        *d = i % r;
        i /= r;
    }
    out
}

/// Inverse of [`decode`].
pub(crate) fn encode(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| {
        debug_assert!(d < r);
        acc * r + d
    })
}

/// Maps `0..m -> 0..k` in the order of their value tables.
pub(crate) fn functions(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let count = k.pow(m as u32);
    (0..count).map(move |i| decode(i, &vec![k; m]))
}

pub(crate) fn identity(m: usize) -> Vec<usize> {
    (0..m).collect()
}
