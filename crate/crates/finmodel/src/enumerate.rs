//! Exhaustive and sampled enumeration of finite structures.
//!
//! Generators draw every degree of freedom through a [`Chooser`]. Driving a
//! generator with an [`Odometer`] visits each choice sequence once, in
//! lexicographic order, so enumeration is canonical and duplicate-free as
//! long as distinct choices build distinct structures. A [`Sampler`] instead
//! draws each choice uniformly from a seeded stream.

use crate::construct::discrete;
use crate::disp::FinDispRxGraph;
use crate::graph::FinRxGraph;
use crate::lens::{CovLens, CtrvLens, UnbLens};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait Chooser {
    /// A choice among `n` options; `None` when there are none.
    fn choose(&mut self, n: usize) -> Option<usize>;
}

/// Enumerates choice sequences of a deterministic generator.
#[derive(Default)]
pub struct Odometer {
    digits: Vec<usize>,
    radices: Vec<usize>,
    pos: usize,
}

impl Chooser for Odometer {
    fn choose(&mut self, n: usize) -> Option<usize> {
        if self.pos == self.digits.len() {
            self.digits.push(0);
            self.radices.push(n);
        }
        debug_assert_eq!(self.radices[self.pos], n, "generator is not deterministic");
        let d = self.digits[self.pos];
        self.pos += 1;
        (n > 0).then_some(d)
    }
}

impl Odometer {
    /// Moves to the next choice sequence; false when exhausted.
    fn advance(&mut self) -> bool {
        self.digits.truncate(self.pos);
        self.radices.truncate(self.pos);
        self.pos = 0;
        while let (Some(d), Some(&r)) = (self.digits.last_mut(), self.radices.last()) {
            if *d + 1 < r {
                *d += 1;
                return true;
            }
            self.digits.pop();
            self.radices.pop();
        }
        false
    }
}

/// Every structure a generator can produce, in canonical order.
pub struct Exhaustive<F> {
    odometer: Odometer,
    gen: F,
    done: bool,
}

impl<T, F: FnMut(&mut dyn Chooser) -> Option<T>> Iterator for Exhaustive<F> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        while !self.done {
            let out = (self.gen)(&mut self.odometer);
            self.done = !self.odometer.advance();
            if out.is_some() {
                return out;
            }
        }
        None
    }
}

pub fn exhaustive<T, F: FnMut(&mut dyn Chooser) -> Option<T>>(gen: F) -> Exhaustive<F> {
    Exhaustive { odometer: Odometer::default(), gen, done: false }
}

/// Uniform choices from a seeded stream.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    /// The sampler for instance `index` of a run with `seed`; independent of
    /// how instances are split across workers.
    pub fn new(seed: u64, index: u64) -> Sampler {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Sampler { rng }
    }
}

impl Chooser for Sampler {
    fn choose(&mut self, n: usize) -> Option<usize> {
        (n > 0).then(|| self.rng.gen_range(0..n))
    }
}

/// Draws one structure, restarting on dead ends; `None` if every attempt
/// in the budget dead-ends.
pub fn sample<T>(gen: &mut impl FnMut(&mut dyn Chooser) -> Option<T>, sampler: &mut Sampler, attempts: usize) -> Option<T> {
    (0..attempts).find_map(|_| gen(sampler))
}

/// Vertex counts `min_n..=max_n`; self-edge counts `1..=k`, other counts
/// `0..=k`, row-major; then the `rx` choices.
pub fn gen_graph(c: &mut dyn Chooser, min_n: usize, max_n: usize, k: usize) -> Option<FinRxGraph> {
    let n = min_n + c.choose(max_n + 1 - min_n)?;
    let mut e = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            e.push(if x == y { 1 + c.choose(k)? } else { c.choose(k + 1)? });
        }
    }
    let mut rx = Vec::with_capacity(n);
    for x in 0..n {
        rx.push(c.choose(e[x * n + x])?);
    }
    Some(FinRxGraph::new(n, e, rx).expect("generated graph is valid"))
}

/// The univalent graphs with `min_n..=max_n` vertices: at set level, the
/// discrete ones.
pub fn gen_univalent_graph(c: &mut dyn Chooser, min_n: usize, max_n: usize) -> Option<FinRxGraph> {
    Some(discrete(min_n + c.choose(max_n + 1 - min_n)?))
}

/// All graphs within bounds, in canonical order: lexicographic in vertex
/// count, then the row-major edge-count matrix, then the `rx` choices.
pub fn enumerate_graphs(max_vertices: usize, max_mult: usize) -> impl Iterator<Item = FinRxGraph> {
    exhaustive(move |c| gen_graph(c, 1, max_vertices, max_mult))
}

/// Displayed graphs over `base` with fibres `0..=max_fib` and displayed edge
/// counts `0..=k` (`1..=k` on the diagonal over `rx`). With
/// `univalent_components`, the edges over `rx` are forced to be those of a
/// discrete graph.
pub fn gen_disp(
    c: &mut dyn Chooser,
    base: &FinRxGraph,
    max_fib: usize,
    k: usize,
    univalent_components: bool,
) -> Option<FinDispRxGraph> {
    let fib: Vec<usize> = (0..base.n()).map(|_| c.choose(max_fib + 1)).collect::<Option<_>>()?;
    let edges = base.edge_list();
    let mut counts = Vec::with_capacity(edges.len());
    for &e @ (x, y, _) in &edges {
        let mut row = Vec::with_capacity(fib[x] * fib[y]);
        for u in 0..fib[x] {
            for v in 0..fib[y] {
                row.push(match (base.is_rx(e), u == v) {
                    (true, diag) if univalent_components => diag as usize,
                    (true, true) => 1 + c.choose(k)?,
                    _ => c.choose(k + 1)?,
                });
            }
        }
        counts.push(row);
    }
    let mut drx = Vec::with_capacity(base.n());
    for x in 0..base.n() {
        let r = base.rx_id(x);
        drx.push((0..fib[x]).map(|u| c.choose(counts[r][u * fib[x] + u])).collect::<Option<Vec<_>>>()?);
    }
    Some(
        FinDispRxGraph::new(base.clone(), fib.clone(), |x, y, p, u, v| counts[base.edge_id(x, y, p)][u * fib[y] + v], |x, u| {
            drx[x][u]
        })
        .expect("generated displayed graph is valid"),
    )
}

/// A family member: any graph, or a univalent one.
pub type FamGen<'a> = &'a dyn Fn(&mut dyn Chooser) -> Option<FinRxGraph>;

fn gen_map(c: &mut dyn Chooser, from: usize, to: usize) -> Option<Vec<usize>> {
    (0..from).map(|_| c.choose(to)).collect()
}

pub fn gen_cov_lens(c: &mut dyn Chooser, base: &FinRxGraph, fam: FamGen) -> Option<CovLens> {
    let fams: Vec<FinRxGraph> = (0..base.n()).map(|_| fam(c)).collect::<Option<_>>()?;
    gen_cov_structure(c, base, fams)
}

/// Pushforwards and unit edges on a fixed family.
pub fn gen_cov_structure(c: &mut dyn Chooser, base: &FinRxGraph, fams: Vec<FinRxGraph>) -> Option<CovLens> {
    let edges = base.edge_list();
    let mut push = Vec::with_capacity(edges.len());
    for &(x, y, _) in &edges {
        push.push(gen_map(c, fams[x].n(), fams[y].n())?);
    }
    let mut push_rx = Vec::with_capacity(base.n());
    for x in 0..base.n() {
        let m = &push[base.rx_id(x)];
        push_rx.push((0..fams[x].n()).map(|u| c.choose(fams[x].edges(m[u], u))).collect::<Option<Vec<_>>>()?);
    }
    Some(CovLens { base: base.clone(), fam: fams, push, push_rx })
}

pub fn gen_ctrv_lens(c: &mut dyn Chooser, base: &FinRxGraph, fam: FamGen) -> Option<CtrvLens> {
    let fams: Vec<FinRxGraph> = (0..base.n()).map(|_| fam(c)).collect::<Option<_>>()?;
    gen_ctrv_structure(c, base, fams)
}

/// Pullbacks and unit edges on a fixed family.
pub fn gen_ctrv_structure(c: &mut dyn Chooser, base: &FinRxGraph, fams: Vec<FinRxGraph>) -> Option<CtrvLens> {
    let edges = base.edge_list();
    let mut pull = Vec::with_capacity(edges.len());
    for &(x, y, _) in &edges {
        pull.push(gen_map(c, fams[y].n(), fams[x].n())?);
    }
    let mut pull_rx = Vec::with_capacity(base.n());
    for x in 0..base.n() {
        let m = &pull[base.rx_id(x)];
        pull_rx.push((0..fams[x].n()).map(|u| c.choose(fams[x].edges(u, m[u]))).collect::<Option<Vec<_>>>()?);
    }
    Some(CtrvLens { base: base.clone(), fam: fams, pull, pull_rx })
}

/// The diagonal data is drawn first so that dead ends are met early.
pub fn gen_unb_lens(c: &mut dyn Chooser, base: &FinRxGraph, fam: FamGen) -> Option<UnbLens> {
    let edges = base.edge_list();
    let mut fams: Vec<Option<FinRxGraph>> = vec![None; edges.len()];
    let mut lext = vec![Vec::new(); edges.len()];
    let mut rext = vec![Vec::new(); edges.len()];
    let mut ext_rx = Vec::with_capacity(base.n());
    let mut rext_rx = Vec::with_capacity(base.n());
    for x in 0..base.n() {
        let r = base.rx_id(x);
        let b = fam(c)?;
        lext[r] = gen_map(c, b.n(), b.n())?;
        rext[r] = gen_map(c, b.n(), b.n())?;
        ext_rx.push((0..b.n()).map(|u| c.choose(b.edges(lext[r][u], rext[r][u]))).collect::<Option<Vec<_>>>()?);
        rext_rx.push((0..b.n()).map(|u| c.choose(b.edges(u, rext[r][u]))).collect::<Option<Vec<_>>>()?);
        fams[r] = Some(b);
    }
    for (id, &(x, y, _)) in edges.iter().enumerate() {
        if fams[id].is_some() {
            continue;
        }
        let b = fam(c)?;
        lext[id] = gen_map(c, fams[base.rx_id(x)].as_ref().unwrap().n(), b.n())?;
        rext[id] = gen_map(c, fams[base.rx_id(y)].as_ref().unwrap().n(), b.n())?;
        fams[id] = Some(b);
    }
    Some(UnbLens { base: base.clone(), fam: fams.into_iter().map(Option::unwrap).collect(), lext, rext, ext_rx, rext_rx })
}
