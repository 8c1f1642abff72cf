//! Set-level interpretations of the graph constructions.

use crate::disp::FinDispRxGraph;
use crate::error::{ModelError, Result};
use crate::graph::{decode, encode, functions, identity, FinRxGraph};
use crate::lens::{CovLens, CtrvLens, FinLens};
use serde::{Deserialize, Serialize};

pub fn discrete(n: usize) -> FinRxGraph {
    FinRxGraph::from_fn(n, |x, y| (x == y) as usize, |_| 0).unwrap()
}

pub fn codiscrete(n: usize) -> FinRxGraph {
    FinRxGraph::from_fn(n, |_, _| 1, |_| 0).unwrap()
}

pub fn opposite(g: &FinRxGraph) -> FinRxGraph {
    FinRxGraph::from_fn(g.n(), |x, y| g.edges(y, x), |x| g.rx(x)).unwrap()
}

/// Over the opposite base, with displayed edges reversed.
pub fn total_opposite(d: &FinDispRxGraph) -> FinDispRxGraph {
    FinDispRxGraph::new(opposite(d.base()), d.fibs().to_vec(), |x, y, p, u, v| d.dedges(y, x, p, v, u), |x, u| {
        d.drx(x, u)
    })
    .unwrap()
}

/// Offsets of blocks of the given sizes.
fn offsets(sizes: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for s in sizes {
        out.push(out.last().unwrap() + s);
    }
    out
}

/// Locates `i` among blocks with the given offsets.
fn block(offsets: &[usize], i: usize) -> (usize, usize) {
    let b = offsets.partition_point(|&o| o <= i) - 1;
    (b, i - offsets[b])
}

/// Vertices `(x, u)` in lexicographic order; edges `(p, q)` likewise.
pub fn total(d: &FinDispRxGraph) -> FinRxGraph {
    let a = d.base();
    let off = offsets(d.fibs().iter().copied());
    let n = *off.last().unwrap();
    let count = |s: usize, t: usize| {
        let ((x, u), (y, v)) = (block(&off, s), block(&off, t));
        (0..a.edges(x, y)).map(|p| d.dedges(x, y, p, u, v)).sum()
    };
    let rx = |s: usize| {
        let (x, u) = block(&off, s);
        (0..a.rx(x)).map(|p| d.dedges(x, x, p, u, u)).sum::<usize>() + d.drx(x, u)
    };
    FinRxGraph::from_fn(n, count, rx).unwrap()
}

/// Index of the total edge `(p, q)` between `(x, u)` and `(y, v)`.
pub fn total_edge(d: &FinDispRxGraph, x: usize, y: usize, p: usize, u: usize, v: usize, q: usize) -> usize {
    (0..p).map(|p| d.dedges(x, y, p, u, v)).sum::<usize>() + q
}

/// Index of the total vertex `(x, u)`.
pub fn total_vertex(d: &FinDispRxGraph, x: usize, u: usize) -> usize {
    d.fibs()[..x].iter().sum::<usize>() + u
}

pub fn binary_product(a: &FinRxGraph, b: &FinRxGraph) -> FinRxGraph {
    let m = b.n();
    FinRxGraph::from_fn(
        a.n() * m,
        |s, t| a.edges(s / m, t / m) * b.edges(s % m, t % m),
        |s| a.rx(s / m) * b.edges(s % m, s % m) + b.rx(s % m),
    )
    .unwrap()
}

/// Vertices are choice functions, encoded by their value tables.
pub fn product(family: &[FinRxGraph]) -> FinRxGraph {
    let sizes: Vec<usize> = family.iter().map(FinRxGraph::n).collect();
    let n = sizes.iter().product();
    let radices = |f: &[usize], g: &[usize]| -> Vec<usize> {
        family.iter().enumerate().map(|(i, b)| b.edges(f[i], g[i])).collect()
    };
    FinRxGraph::from_fn(
        n,
        |s, t| radices(&decode(s, &sizes), &decode(t, &sizes)).iter().product(),
        |s| {
            let f = decode(s, &sizes);
            let labels: Vec<usize> = family.iter().enumerate().map(|(i, b)| b.rx(f[i])).collect();
            encode(&labels, &radices(&f, &f))
        },
    )
    .unwrap()
}

/// Vertices `(i, u)`; edges only within a summand.
pub fn coproduct(family: &[FinRxGraph]) -> FinRxGraph {
    let off = offsets(family.iter().map(FinRxGraph::n));
    FinRxGraph::from_fn(
        *off.last().unwrap(),
        |s, t| {
            let ((i, u), (j, v)) = (block(&off, s), block(&off, t));
            if i == j {
                family[i].edges(u, v)
            } else {
                0
            }
        },
        |s| {
            let (i, u) = block(&off, s);
            family[i].rx(u)
        },
    )
    .unwrap()
}

pub fn tensor(k: usize, b: &FinRxGraph) -> FinRxGraph {
    coproduct(&vec![b.clone(); k])
}

pub fn cotensor(k: usize, b: &FinRxGraph) -> FinRxGraph {
    product(&vec![b.clone(); k])
}

pub fn constant_displayed(a: &FinRxGraph, b: &FinRxGraph) -> FinDispRxGraph {
    FinDispRxGraph::new(a.clone(), vec![b.n(); a.n()], |_, _, _, u, v| b.edges(u, v), |_, u| b.rx(u)).unwrap()
}

/// Vertices `(x, w)` with `w < pred[x]`; edges are those of the base.
pub fn comprehension(a: &FinRxGraph, pred: &[usize]) -> Result<FinRxGraph> {
    if pred.len() != a.n() {
        return Err(shape("comprehension", format!("{} predicate sizes for {} vertices", pred.len(), a.n())));
    }
    let off = offsets(pred.iter().copied());
    Ok(FinRxGraph::from_fn(*off.last().unwrap(), |s, t| a.edges(block(&off, s).0, block(&off, t).0), |s| {
        a.rx(block(&off, s).0)
    })
    .unwrap())
}

/// The part of `c` over the fibre of `d` at `x`, displayed over that
/// component.
pub fn restriction(d: &FinDispRxGraph, c: &FinDispRxGraph, x: usize) -> Result<FinDispRxGraph> {
    if *c.base() != total(d) {
        return Err(shape("restriction", "the second argument is not displayed over the total graph".into()));
    }
    if x >= d.base().n() {
        return Err(shape("restriction", format!("vertex {x} out of range")));
    }
    let r = d.base().rx(x);
    let tv = |u| total_vertex(d, x, u);
    FinDispRxGraph::new(
        d.component(x),
        (0..d.fib(x)).map(|u| c.fib(tv(u))).collect(),
        |u, v, q, a, b| c.dedges(tv(u), tv(v), total_edge(d, x, x, r, u, v, q), a, b),
        |u, a| c.drx(tv(u), a),
    )
}

/// Edges `x -> y` are `(p, q, (r_u)_u)` with `r_u : push p u -> q u`.
pub fn flatten_cov(l: &CovLens) -> FinRxGraph {
    let a = &l.base;
    let labels = |x: usize, y: usize| -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        let (bx, by) = (&l.fam[x], &l.fam[y]);
        let mut out = Vec::new();
        for p in 0..a.edges(x, y) {
            for q in functions(bx.n(), by.n()) {
                let radices: Vec<usize> = (0..bx.n()).map(|u| by.edges(l.push(x, y, p, u), q[u])).collect();
                let count: usize = radices.iter().product();
                out.extend((0..count).map(|i| (p, q.clone(), decode(i, &radices))));
            }
        }
        out
    };
    FinRxGraph::from_fn(a.n(), |x, y| labels(x, y).len(), |x| {
        let centre = (a.rx(x), identity(l.fam[x].n()), l.push_rx[x].clone());
        labels(x, x).iter().position(|e| *e == centre).unwrap()
    })
    .unwrap()
}

/// Edges `x -> y` are `(p, q, (r_v)_v)` with `r_v : q v -> pull p v`.
pub fn flatten_ctrv(l: &CtrvLens) -> FinRxGraph {
    let a = &l.base;
    let labels = |x: usize, y: usize| -> Vec<(usize, Vec<usize>, Vec<usize>)> {
        let (bx, by) = (&l.fam[x], &l.fam[y]);
        let mut out = Vec::new();
        for p in 0..a.edges(x, y) {
            for q in functions(by.n(), bx.n()) {
                let radices: Vec<usize> = (0..by.n()).map(|v| bx.edges(q[v], l.pull(x, y, p, v))).collect();
                let count: usize = radices.iter().product();
                out.extend((0..count).map(|i| (p, q.clone(), decode(i, &radices))));
            }
        }
        out
    };
    FinRxGraph::from_fn(a.n(), |x, y| labels(x, y).len(), |x| {
        let centre = (a.rx(x), identity(l.fam[x].n()), l.pull_rx[x].clone());
        labels(x, x).iter().position(|e| *e == centre).unwrap()
    })
    .unwrap()
}

/// A unit witness for a precomposition lens: per base vertex `x`, map
/// `c : fam[x] -> C` (by value-table index) and vertex `u`, an edge label.
pub type Unit = Vec<Vec<Vec<usize>>>;

/// Unit witnesses `c u -> c (push rx u)`, if any exist; the first is chosen.
pub fn cov_unit(l: &CovLens, c: &FinRxGraph) -> Option<Unit> {
    let a = &l.base;
    (0..a.n())
        .map(|x| {
            let m = &l.push[a.rx_id(x)];
            functions(l.fam[x].n(), c.n())
                .map(|f| (0..l.fam[x].n()).map(|u| (c.edges(f[u], f[m[u]]) > 0).then_some(0)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Unit witnesses `c (pull rx u) -> c u`, if any exist; the first is chosen.
pub fn ctrv_unit(l: &CtrvLens, c: &FinRxGraph) -> Option<Unit> {
    let a = &l.base;
    (0..a.n())
        .map(|x| {
            let m = &l.pull[a.rx_id(x)];
            functions(l.fam[x].n(), c.n())
                .map(|f| (0..l.fam[x].n()).map(|u| (c.edges(f[m[u]], f[u]) > 0).then_some(0)).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&i| f[i]).collect()
}

fn table_index(f: &[usize], k: usize) -> usize {
    encode(f, &vec![k; f.len()])
}

/// Precomposition with pushforward, as a contravariant lens of cotensors.
pub fn pp_plus(l: &CovLens, c: &FinRxGraph, unit: &Unit) -> Result<CtrvLens> {
    let a = &l.base;
    let fam: Vec<FinRxGraph> = l.fam.iter().map(|b| cotensor(b.n(), c)).collect();
    let pull = a
        .edge_list()
        .iter()
        .enumerate()
        .map(|(id, &(_, y, _))| {
            functions(l.fam[y].n(), c.n()).map(|f| table_index(&compose(&f, &l.push[id]), c.n())).collect()
        })
        .collect();
    let pull_rx = (0..a.n())
        .map(|x| {
            let m = &l.push[a.rx_id(x)];
            functions(l.fam[x].n(), c.n())
                .enumerate()
                .map(|(i, f)| {
                    let radices: Vec<usize> = (0..f.len()).map(|u| c.edges(f[u], f[m[u]])).collect();
                    encode(&unit[x][i], &radices)
                })
                .collect()
        })
        .collect();
    let out = CtrvLens { base: a.clone(), fam, pull, pull_rx };
    out.validate().map_err(|e| shape("partial-product-cov", format!("bad unit witness: {e}")))?;
    Ok(out)
}

/// Precomposition with pullback, as a covariant lens of cotensors.
pub fn pp_minus(l: &CtrvLens, c: &FinRxGraph, unit: &Unit) -> Result<CovLens> {
    let a = &l.base;
    let fam: Vec<FinRxGraph> = l.fam.iter().map(|b| cotensor(b.n(), c)).collect();
    let push = a
        .edge_list()
        .iter()
        .enumerate()
        .map(|(id, &(x, _, _))| {
            functions(l.fam[x].n(), c.n()).map(|f| table_index(&compose(&f, &l.pull[id]), c.n())).collect()
        })
        .collect();
    let push_rx = (0..a.n())
        .map(|x| {
            let m = &l.pull[a.rx_id(x)];
            functions(l.fam[x].n(), c.n())
                .enumerate()
                .map(|(i, f)| {
                    let radices: Vec<usize> = (0..f.len()).map(|u| c.edges(f[m[u]], f[u])).collect();
                    encode(&unit[x][i], &radices)
                })
                .collect()
        })
        .collect();
    let out = CovLens { base: a.clone(), fam, push, push_rx };
    out.validate().map_err(|e| shape("partial-product-ctrv", format!("bad unit witness: {e}")))?;
    Ok(out)
}

/// The covariant partial product: total graph of the contravariant display
/// of precomposition with pushforward.
pub fn partial_product_cov(l: &CovLens, c: &FinRxGraph, unit: &Unit) -> Result<FinRxGraph> {
    Ok(total(&pp_plus(l, c, unit)?.display()))
}

pub fn partial_product_ctrv(l: &CtrvLens, c: &FinRxGraph, unit: &Unit) -> Result<FinRxGraph> {
    Ok(total(&pp_minus(l, c, unit)?.display()))
}

fn shape(kind: &'static str, message: String) -> ModelError {
    ModelError::Shape { kind, message }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Discrete,
    Codiscrete,
    Opposite,
    TotalOpposite,
    Total,
    BinaryProduct,
    Product,
    Coproduct,
    Tensor,
    Cotensor,
    ConstantDisplayed,
    Comprehension,
    Restriction,
    DisplayCov,
    DisplayCtrv,
    DisplayUnb,
    FlattenCov,
    FlattenCtrv,
    PartialProductCov,
    PartialProductCtrv,
}

impl ConstructionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConstructionKind::Discrete => "discrete",
            ConstructionKind::Codiscrete => "codiscrete",
            ConstructionKind::Opposite => "opposite",
            ConstructionKind::TotalOpposite => "total-opposite",
            ConstructionKind::Total => "total",
            ConstructionKind::BinaryProduct => "binary-product",
            ConstructionKind::Product => "product",
            ConstructionKind::Coproduct => "coproduct",
            ConstructionKind::Tensor => "tensor",
            ConstructionKind::Cotensor => "cotensor",
            ConstructionKind::ConstantDisplayed => "constant-displayed",
            ConstructionKind::Comprehension => "comprehension",
            ConstructionKind::Restriction => "restriction",
            ConstructionKind::DisplayCov => "display-cov",
            ConstructionKind::DisplayCtrv => "display-ctrv",
            ConstructionKind::DisplayUnb => "display-unb",
            ConstructionKind::FlattenCov => "flatten-cov",
            ConstructionKind::FlattenCtrv => "flatten-ctrv",
            ConstructionKind::PartialProductCov => "partial-product-cov",
            ConstructionKind::PartialProductCtrv => "partial-product-ctrv",
        }
    }
}

/// Arguments for [`construct`].
#[derive(Clone, Debug)]
pub enum Args {
    Size(usize),
    Graph(FinRxGraph),
    Graphs(Vec<FinRxGraph>),
    Pair(FinRxGraph, FinRxGraph),
    Scaled(usize, FinRxGraph),
    Disp(FinDispRxGraph),
    Predicate(FinRxGraph, Vec<usize>),
    Restrict { disp: FinDispRxGraph, over_total: FinDispRxGraph, vertex: usize },
    Lens(FinLens),
    Poly { lens: FinLens, target: FinRxGraph, unit: Unit },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Graph(FinRxGraph),
    Disp(FinDispRxGraph),
}

pub fn construct(kind: ConstructionKind, args: Args) -> Result<Constructed> {
    use ConstructionKind as K;
    use Constructed::{Disp as D, Graph as G};
    let mismatch = |needs: &str| Err(shape(kind.name(), format!("expects {needs}")));
    Ok(match (kind, args) {
        (K::Discrete, Args::Size(n)) => G(discrete(n)),
        (K::Codiscrete, Args::Size(n)) => G(codiscrete(n)),
        (K::Opposite, Args::Graph(g)) => G(opposite(&g)),
        (K::TotalOpposite, Args::Disp(d)) => D(total_opposite(&d)),
        (K::Total, Args::Disp(d)) => G(total(&d)),
        (K::BinaryProduct, Args::Pair(a, b)) => G(binary_product(&a, &b)),
        (K::Product, Args::Graphs(f)) => G(product(&f)),
        (K::Coproduct, Args::Graphs(f)) => G(coproduct(&f)),
        (K::Tensor, Args::Scaled(k, b)) => G(tensor(k, &b)),
        (K::Cotensor, Args::Scaled(k, b)) => G(cotensor(k, &b)),
        (K::ConstantDisplayed, Args::Pair(a, b)) => D(constant_displayed(&a, &b)),
        (K::Comprehension, Args::Predicate(a, p)) => G(comprehension(&a, &p)?),
        (K::Restriction, Args::Restrict { disp, over_total, vertex }) => D(restriction(&disp, &over_total, vertex)?),
        (K::DisplayCov, Args::Lens(FinLens::Cov(l))) => D(l.display()),
        (K::DisplayCtrv, Args::Lens(FinLens::Ctrv(l))) => D(l.display()),
        (K::DisplayUnb, Args::Lens(FinLens::Unb(l))) => D(l.display()),
        (K::FlattenCov, Args::Lens(FinLens::Cov(l))) => G(flatten_cov(&l)),
        (K::FlattenCtrv, Args::Lens(FinLens::Ctrv(l))) => G(flatten_ctrv(&l)),
        (K::PartialProductCov, Args::Poly { lens: FinLens::Cov(l), target, unit }) => {
            G(partial_product_cov(&l, &target, &unit)?)
        }
        (K::PartialProductCtrv, Args::Poly { lens: FinLens::Ctrv(l), target, unit }) => {
            G(partial_product_ctrv(&l, &target, &unit)?)
        }
        (K::Discrete | K::Codiscrete, _) => return mismatch("a vertex count"),
        (K::Opposite, _) => return mismatch("a reflexive graph"),
        (K::TotalOpposite | K::Total, _) => return mismatch("a displayed reflexive graph"),
        (K::BinaryProduct | K::ConstantDisplayed, _) => return mismatch("two reflexive graphs"),
        (K::Product | K::Coproduct, _) => return mismatch("a family of reflexive graphs"),
        (K::Tensor | K::Cotensor, _) => return mismatch("a set size and a reflexive graph"),
        (K::Comprehension, _) => return mismatch("a reflexive graph and predicate sizes"),
        (K::Restriction, _) => return mismatch("a displayed graph, one over its total, and a vertex"),
        (K::DisplayCov | K::FlattenCov, _) => return mismatch("an oplax covariant lens"),
        (K::DisplayCtrv | K::FlattenCtrv, _) => return mismatch("a lax contravariant lens"),
        (K::DisplayUnb, _) => return mismatch("an unbiased dependent lens"),
        (K::PartialProductCov, _) => return mismatch("an oplax covariant lens, a target graph and a unit"),
        (K::PartialProductCtrv, _) => return mismatch("a lax contravariant lens, a target graph and a unit"),
    })
}
