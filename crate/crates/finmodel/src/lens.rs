//! Finite oplax covariant, lax contravariant and unbiased dependent lenses.

use crate::disp::FinDispRxGraph;
use crate::error::{ModelError, Result};
use crate::graph::{identity, FinRxGraph};
use serde::{Deserialize, Serialize};

/// A family over the base vertices with pushforward along base edges and an
/// edge `push(rx x)(u) -> u` in each component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CovLens {
    pub base: FinRxGraph,
    pub fam: Vec<FinRxGraph>,
    /// Per base edge id `x -> y`, a map from `fam[x]` to `fam[y]`.
    pub push: Vec<Vec<usize>>,
    pub push_rx: Vec<Vec<usize>>,
}

/// A family over the base vertices with pullback along base edges and an
/// edge `u -> pull(rx x)(u)` in each component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CtrvLens {
    pub base: FinRxGraph,
    pub fam: Vec<FinRxGraph>,
    /// Per base edge id `x -> y`, a map from `fam[y]` to `fam[x]`.
    pub pull: Vec<Vec<usize>>,
    pub pull_rx: Vec<Vec<usize>>,
}

/// A family over the base edges with extensions from both diagonal
/// endpoints and the two unit edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnbLens {
    pub base: FinRxGraph,
    /// Per base edge id.
    pub fam: Vec<FinRxGraph>,
    /// Per base edge id `x -> y`, a map from the family at `rx x`.
    pub lext: Vec<Vec<usize>>,
    /// Per base edge id `x -> y`, a map from the family at `rx y`.
    pub rext: Vec<Vec<usize>>,
    /// Edges `lext u -> rext u` over `rx x`.
    pub ext_rx: Vec<Vec<usize>>,
    /// Edges `u -> rext u` over `rx x`.
    pub rext_rx: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variance {
    OplaxCovariant,
    LaxContravariant,
    Unbiased,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FinLens {
    Cov(CovLens),
    Ctrv(CtrvLens),
    Unb(UnbLens),
}

impl FinLens {
    pub fn variance(&self) -> Variance {
        match self {
            FinLens::Cov(_) => Variance::OplaxCovariant,
            FinLens::Ctrv(_) => Variance::LaxContravariant,
            FinLens::Unb(_) => Variance::Unbiased,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FinLens::Cov(l) => l.validate(),
            FinLens::Ctrv(l) => l.validate(),
            FinLens::Unb(l) => l.validate(),
        }
    }
}

fn check_map(map: &[usize], from: usize, to: usize, what: &str) -> Result<()> {
    if map.len() != from || map.iter().any(|&v| v >= to) {
        return Err(ModelError::Lens(format!("{what} is not a map from {from} to {to} vertices")));
    }
    Ok(())
}

fn check_label(g: &FinRxGraph, u: usize, v: usize, label: usize, what: &str) -> Result<()> {
    if label >= g.edges(u, v) {
        return Err(ModelError::Lens(format!("{what} = {label} but there are {} edges {u} -> {v}", g.edges(u, v))));
    }
    Ok(())
}

impl CovLens {
    pub fn validate(&self) -> Result<()> {
        let a = &self.base;
        let edges = a.edge_list();
        if self.fam.len() != a.n() || self.push.len() != edges.len() || self.push_rx.len() != a.n() {
            return Err(ModelError::Lens("tables do not match the base".into()));
        }
        for (id, &(x, y, p)) in edges.iter().enumerate() {
            check_map(&self.push[id], self.fam[x].n(), self.fam[y].n(), &format!("push along ({x}, {y}, {p})"))?;
        }
        for x in 0..a.n() {
            let b = &self.fam[x];
            let m = &self.push[a.rx_id(x)];
            if self.push_rx[x].len() != b.n() {
                return Err(ModelError::Lens(format!("pushRx table over {x} has the wrong size")));
            }
            for (u, (&w, &label)) in m.iter().zip(&self.push_rx[x]).enumerate() {
                check_label(b, w, u, label, &format!("pushRx({x}, {u})"))?;
            }
        }
        Ok(())
    }

    pub fn push(&self, x: usize, y: usize, p: usize, u: usize) -> usize {
        self.push[self.base.edge_id(x, y, p)][u]
    }

    /// Every fan of the form `push(p)(u)` is a proposition.
    pub fn has_universal_pushforwards(&self) -> bool {
        self.base.edge_list().iter().enumerate().all(|(id, &(_, y, _))| {
            self.push[id].iter().all(|&w| self.fam[y].fan(w).len() <= 1)
        })
    }

    pub fn components_univalent(&self) -> bool {
        self.fam.iter().all(FinRxGraph::is_univalent)
    }

    pub fn display(&self) -> FinDispRxGraph {
        let a = &self.base;
        FinDispRxGraph::new(
            a.clone(),
            self.fam.iter().map(FinRxGraph::n).collect(),
            |x, y, p, u, v| self.fam[y].edges(self.push(x, y, p, u), v),
            |x, u| self.push_rx[x][u],
        )
        .expect("display of a valid lens")
    }

    /// Identity extension on the right.
    pub fn upgrade(&self) -> UnbLens {
        let a = &self.base;
        let edges = a.edge_list();
        UnbLens {
            base: a.clone(),
            fam: edges.iter().map(|&(_, y, _)| self.fam[y].clone()).collect(),
            lext: self.push.clone(),
            rext: edges.iter().map(|&(_, y, _)| identity(self.fam[y].n())).collect(),
            ext_rx: self.push_rx.clone(),
            rext_rx: self.fam.iter().map(|b| (0..b.n()).map(|u| b.rx(u)).collect()).collect(),
        }
    }

    /// The lens on opposite components over the opposite base.
    pub fn total_opposite(&self) -> CtrvLens {
        let a = &self.base;
        let op = crate::construct::opposite(a);
        CtrvLens {
            fam: self.fam.iter().map(crate::construct::opposite).collect(),
            pull: op.edge_list().iter().map(|&(x, y, p)| self.push[a.edge_id(y, x, p)].clone()).collect(),
            pull_rx: self.push_rx.clone(),
            base: op,
        }
    }
}

impl CtrvLens {
    pub fn validate(&self) -> Result<()> {
        let a = &self.base;
        let edges = a.edge_list();
        if self.fam.len() != a.n() || self.pull.len() != edges.len() || self.pull_rx.len() != a.n() {
            return Err(ModelError::Lens("tables do not match the base".into()));
        }
        for (id, &(x, y, p)) in edges.iter().enumerate() {
            check_map(&self.pull[id], self.fam[y].n(), self.fam[x].n(), &format!("pull along ({x}, {y}, {p})"))?;
        }
        for x in 0..a.n() {
            let b = &self.fam[x];
            let m = &self.pull[a.rx_id(x)];
            if self.pull_rx[x].len() != b.n() {
                return Err(ModelError::Lens(format!("pullRx table over {x} has the wrong size")));
            }
            for (u, (&w, &label)) in m.iter().zip(&self.pull_rx[x]).enumerate() {
                check_label(b, u, w, label, &format!("pullRx({x}, {u})"))?;
            }
        }
        Ok(())
    }

    pub fn pull(&self, x: usize, y: usize, p: usize, v: usize) -> usize {
        self.pull[self.base.edge_id(x, y, p)][v]
    }

    /// Every co-fan of the form `pull(p)(v)` is a proposition.
    pub fn has_universal_pullbacks(&self) -> bool {
        self.base.edge_list().iter().enumerate().all(|(id, &(x, _, _))| {
            self.pull[id].iter().all(|&w| self.fam[x].cofan(w).len() <= 1)
        })
    }

    pub fn components_univalent(&self) -> bool {
        self.fam.iter().all(FinRxGraph::is_univalent)
    }

    pub fn display(&self) -> FinDispRxGraph {
        FinDispRxGraph::new(
            self.base.clone(),
            self.fam.iter().map(FinRxGraph::n).collect(),
            |x, y, p, u, v| self.fam[x].edges(u, self.pull(x, y, p, v)),
            |x, u| self.pull_rx[x][u],
        )
        .expect("display of a valid lens")
    }

    /// Identity extension on the left.
    pub fn upgrade(&self) -> UnbLens {
        let a = &self.base;
        let edges = a.edge_list();
        UnbLens {
            base: a.clone(),
            fam: edges.iter().map(|&(x, _, _)| self.fam[x].clone()).collect(),
            lext: edges.iter().map(|&(x, _, _)| identity(self.fam[x].n())).collect(),
            rext: self.pull.clone(),
            ext_rx: self.pull_rx.clone(),
            rext_rx: self.pull_rx.clone(),
        }
    }

    /// The lens on opposite components over the opposite base.
    pub fn total_opposite(&self) -> CovLens {
        let a = &self.base;
        let op = crate::construct::opposite(a);
        CovLens {
            fam: self.fam.iter().map(crate::construct::opposite).collect(),
            push: op.edge_list().iter().map(|&(x, y, p)| self.pull[a.edge_id(y, x, p)].clone()).collect(),
            push_rx: self.pull_rx.clone(),
            base: op,
        }
    }
}

impl UnbLens {
    pub fn validate(&self) -> Result<()> {
        let a = &self.base;
        let edges = a.edge_list();
        let n = edges.len();
        if self.fam.len() != n || self.lext.len() != n || self.rext.len() != n {
            return Err(ModelError::Lens("tables do not match the base edges".into()));
        }
        if self.ext_rx.len() != a.n() || self.rext_rx.len() != a.n() {
            return Err(ModelError::Lens("unit tables do not match the base".into()));
        }
        for (id, &(x, y, p)) in edges.iter().enumerate() {
            let to = self.fam[id].n();
            check_map(&self.lext[id], self.fam[a.rx_id(x)].n(), to, &format!("lext along ({x}, {y}, {p})"))?;
            check_map(&self.rext[id], self.fam[a.rx_id(y)].n(), to, &format!("rext along ({x}, {y}, {p})"))?;
        }
        for x in 0..a.n() {
            let r = a.rx_id(x);
            let b = &self.fam[r];
            if self.ext_rx[x].len() != b.n() || self.rext_rx[x].len() != b.n() {
                return Err(ModelError::Lens(format!("unit tables over {x} have the wrong size")));
            }
            for u in 0..b.n() {
                check_label(b, self.lext[r][u], self.rext[r][u], self.ext_rx[x][u], &format!("extRx({x}, {u})"))?;
                check_label(b, u, self.rext[r][u], self.rext_rx[x][u], &format!("rextRx({x}, {u})"))?;
            }
        }
        Ok(())
    }

    pub fn components_univalent(&self) -> bool {
        self.fam.iter().all(FinRxGraph::is_univalent)
    }

    pub fn display(&self) -> FinDispRxGraph {
        let a = &self.base;
        FinDispRxGraph::new(
            a.clone(),
            (0..a.n()).map(|x| self.fam[a.rx_id(x)].n()).collect(),
            |x, y, p, u, v| {
                let id = a.edge_id(x, y, p);
                self.fam[id].edges(self.lext[id][u], self.rext[id][v])
            },
            |x, u| self.ext_rx[x][u],
        )
        .expect("display of a valid lens")
    }
}
