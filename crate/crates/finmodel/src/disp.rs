//! Finite displayed reflexive graphs.

use crate::error::{ModelError, Result};
use crate::graph::FinRxGraph;
use serde::{Deserialize, Serialize};

/// A reflexive graph displayed over `base`: a fibre of `fib[x]` vertices
/// over each base vertex, displayed edge counts over each base edge, and a
/// displayed reflexivity label over each `rx`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinDispRxGraph {
    base: FinRxGraph,
    fib: Vec<usize>,
    /// Per base edge id, counts for `(u, v)` row-major.
    dedges: Vec<Vec<usize>>,
    /// Per base vertex and fibre vertex.
    drx: Vec<Vec<usize>>,
}

impl FinDispRxGraph {
    pub fn new(
        base: FinRxGraph,
        fib: Vec<usize>,
        dedge: impl Fn(usize, usize, usize, usize, usize) -> usize,
        drx: impl Fn(usize, usize) -> usize,
    ) -> Result<FinDispRxGraph> {
        if fib.len() != base.n() {
            return Err(ModelError::Disp(format!("{} fibres over {} vertices", fib.len(), base.n())));
        }
        let dedges = base
            .edge_list()
            .into_iter()
            .map(|(x, y, p)| (0..fib[x] * fib[y]).map(|i| dedge(x, y, p, i / fib[y], i % fib[y])).collect())
            .collect();
        let drx = (0..base.n()).map(|x| (0..fib[x]).map(|u| drx(x, u)).collect()).collect();
        let d = FinDispRxGraph { base, fib, dedges, drx };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate().map_err(|e| ModelError::Disp(e.to_string()))?;
        let edges = self.base.edge_list();
        if self.fib.len() != self.base.n() || self.dedges.len() != edges.len() || self.drx.len() != self.base.n() {
            return Err(ModelError::Disp("tables do not match the base".into()));
        }
        for (id, &(x, y, _)) in edges.iter().enumerate() {
            if self.dedges[id].len() != self.fib[x] * self.fib[y] {
                return Err(ModelError::Disp(format!("edge table {id} has the wrong size")));
            }
        }
        for x in 0..self.base.n() {
            if self.drx[x].len() != self.fib[x] {
                return Err(ModelError::Disp(format!("drx table over {x} has the wrong size")));
            }
            for u in 0..self.fib[x] {
                let count = self.dedges(x, x, self.base.rx(x), u, u);
                if self.drx[x][u] >= count {
                    return Err(ModelError::Disp(format!("drx({x}, {u}) out of range ({count} edges)")));
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &FinRxGraph {
        &self.base
    }

    pub fn fib(&self, x: usize) -> usize {
        self.fib[x]
    }

    pub fn fibs(&self) -> &[usize] {
        &self.fib
    }

    pub fn dedges(&self, x: usize, y: usize, p: usize, u: usize, v: usize) -> usize {
        self.dedges[self.base.edge_id(x, y, p)][u * self.fib[y] + v]
    }

    pub fn drx(&self, x: usize, u: usize) -> usize {
        self.drx[x][u]
    }

    /// The fibre over `x` with the edges lying over `rx(x)`.
    pub fn component(&self, x: usize) -> FinRxGraph {
        let r = self.base.rx(x);
        FinRxGraph::from_fn(self.fib[x], |u, v| self.dedges(x, x, r, u, v), |u| self.drx(x, u))
            .expect("components of a valid displayed graph are valid")
    }

    /// Every component is univalent.
    pub fn is_univalent(&self) -> bool {
        (0..self.base.n()).all(|x| self.component(x).is_univalent())
    }
}
